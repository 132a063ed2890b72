//! Modules over the constant functor: eigenspace decomposition, fixed-point
//! reconstruction, projectivity certificates and the constant box lemma.

use std::collections::BTreeMap;

use crate::algebra::CommAlgebra;
use crate::atoms::{fixed_point, orbit_action};
use crate::boxprod::{box_product, BoxProduct};
use crate::error::{usage, Error, Result};
use crate::extension::{Flavor, GaloisExtension};
use crate::field::{Field, Scalar};
use crate::green::{constant_field, constant_functor, fix_functor, GreenFunctor};
use crate::lattice::Lattice;
use crate::linalg::{unit_vector, Matrix, Subspace, Vector};
use crate::mackey::{MackeyFunctor, MackeyMorphism, Violation};

/// Whether `zeta` has multiplicative order exactly `n`.
fn is_primitive_root(k: &Field, zeta: &Scalar, n: usize) -> bool {
    if k.is_zero(zeta) || !k.is_one(&k.pow(zeta, n as u64)) {
        return false;
    }
    (1..n).all(|j| !k.is_one(&k.pow(zeta, j as u64)))
}

fn require_invertible_order(k: &Field, n: usize) -> Result<Scalar> {
    k.inv(&k.from_int(n as i64)).map_err(|_| Error::Unsupported(format!("{n} is not invertible in {k}")))
}

/// One isotypic piece: a subfunctor on which `σ` acts by `ζ^i`.
#[derive(Clone, Debug)]
pub struct EigenPiece {
    pub index: usize,
    /// Basis of the piece at each level, as columns in source coordinates.
    pub inclusion: BTreeMap<usize, Matrix>,
    pub functor: MackeyFunctor,
}

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub source: MackeyFunctor,
    pub zeta: Scalar,
    /// `projectors[i][m] = n⁻¹ Σ_j ζ^{−ij} W_m^j`.
    pub projectors: Vec<BTreeMap<usize, Matrix>>,
    pub pieces: Vec<EigenPiece>,
}

/// Split a module over the constant functor into `ζ^i`-eigenpieces.
pub fn eigen_decompose(m: &MackeyFunctor, zeta: &Scalar) -> Result<EigenDecomposition> {
    let k = m.field().clone();
    let lat = m.lattice().clone();
    let n = lat.n();
    let n_inv = require_invertible_order(&k, n)?;
    if !is_primitive_root(&k, zeta, n) {
        return Err(Error::Unsupported(format!("{} is not a primitive {n}-th root of unity", k.fmt_scalar(zeta))));
    }
    if !m.is_constant_module() {
        return usage("eigenspace decomposition needs a module over the constant functor");
    }
    let zinv = k.inv(zeta)?;
    let mut projectors = Vec::with_capacity(n);
    for i in 0..n {
        let mut per_level = BTreeMap::new();
        for &lv in lat.divisors() {
            let w = m.weyl(lv);
            let mut acc = Matrix::zeros(&k, m.dim(lv), m.dim(lv));
            let mut cur = Matrix::identity(&k, m.dim(lv));
            for j in 0..n {
                let c = k.pow(&zinv, ((i * j) % n) as u64);
                acc = acc.add(&cur.scale(&c));
                cur = cur.mul(w);
            }
            per_level.insert(lv, acc.scale(&n_inv));
        }
        projectors.push(per_level);
    }
    let mut pieces = Vec::with_capacity(n);
    for (i, proj) in projectors.iter().enumerate() {
        let mut inclusion = BTreeMap::new();
        for &lv in lat.divisors() {
            let basis = proj[&lv].column_space().basis();
            inclusion.insert(lv, Matrix::from_cols(&k, m.dim(lv), &basis));
        }
        let functor = subfunctor(m, &inclusion, &format!("χ{i}"))?;
        pieces.push(EigenPiece { index: i, inclusion, functor });
    }
    Ok(EigenDecomposition { source: m.clone(), zeta: zeta.clone(), projectors, pieces })
}

/// The subfunctor spanned levelwise by the columns of `inclusion`.
fn subfunctor(m: &MackeyFunctor, inclusion: &BTreeMap<usize, Matrix>, tag: &str) -> Result<MackeyFunctor> {
    let lat = m.lattice();
    let restrict = |target: &Matrix, image: Matrix, what: &str| {
        target.solve_matrix(&image).ok_or_else(|| Error::Internal(format!("{what} leaves the subfunctor")))
    };
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    let mut weyl = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for &lv in lat.divisors() {
        let e = &inclusion[&lv];
        weyl.insert(lv, restrict(e, m.weyl(lv).mul(e), "weyl")?);
        labels.insert(lv, (0..e.cols()).map(|j| format!("{tag}.{j}")).collect());
    }
    for &(d, lv) in lat.covering_pairs() {
        res.insert((d, lv), restrict(&inclusion[&d], m.res(d, lv).mul(&inclusion[&lv]), "res")?);
        tr.insert((d, lv), restrict(&inclusion[&lv], m.tr(d, lv).mul(&inclusion[&d]), "tr")?);
    }
    MackeyFunctor::new(m.field(), lat, labels, res, tr, weyl)
}

impl EigenDecomposition {
    /// Violations of the projector identities and the three piece
    /// properties: scalar action, vanishing off `m | i`, and
    /// `res∘tr = tr∘res = m` between the free level and level `m`.
    pub fn violations(&self) -> Vec<Violation> {
        let m = &self.source;
        let k = m.field();
        let lat = m.lattice();
        let n = lat.n();
        let mut out = Vec::new();
        for &lv in lat.divisors() {
            let dim = m.dim(lv);
            let sum = self.projectors.iter().fold(Matrix::zeros(k, dim, dim), |acc, p| acc.add(&p[&lv]));
            if !sum.is_identity() {
                out.push(Violation::new(format!("Σ P_i = id at level {lv}"), format!("{sum:?}")));
            }
            for i in 0..n {
                for j in 0..n {
                    let prod = self.projectors[i][&lv].mul(&self.projectors[j][&lv]);
                    let want = if i == j { self.projectors[i][&lv].clone() } else { Matrix::zeros(k, dim, dim) };
                    if prod != want {
                        out.push(Violation::new(format!("P_{i}·P_{j} at level {lv}"), "not orthogonal idempotents"));
                    }
                }
            }
        }
        for piece in &self.pieces {
            let i = piece.index;
            let f = &piece.functor;
            let z = k.pow(&self.zeta, i as u64);
            for &lv in lat.divisors() {
                let dim = f.dim(lv);
                if f.weyl(lv) != &Matrix::scalar(k, dim, &z) {
                    out.push(Violation::new(format!("σ acts by ζ^{i} on piece {i} at level {lv}"), format!("{:?}", f.weyl(lv))));
                }
                if i % lv != 0 && dim != 0 {
                    out.push(Violation::new(format!("piece {i} vanishes at level {lv}"), format!("dimension {dim}")));
                }
                if i % lv == 0 && lv > 1 {
                    let idx = Matrix::scalar(k, dim, &k.from_int(lv as i64));
                    let (r, t) = (f.res_map(1, lv), f.tr_map(1, lv));
                    if t.mul(&r) != idx {
                        out.push(Violation::new(format!("tr∘res = {lv} on piece {i}"), format!("{:?}", t.mul(&r))));
                    }
                    let idx1 = Matrix::scalar(k, f.dim(1), &k.from_int(lv as i64));
                    if r.mul(&t) != idx1 {
                        out.push(Violation::new(format!("res∘tr = {lv} on piece {i}"), format!("{:?}", r.mul(&t))));
                    }
                }
            }
        }
        match self.sum_morphism() {
            Ok((total, phi)) => out.extend(phi.verify_iso(&total, m)),
            Err(e) => out.push(Violation::new("⊕ pieces ≅ M", e.to_string())),
        }
        out
    }

    /// `⊕_i piece_i → M`, the sum of the inclusions.
    pub fn sum_morphism(&self) -> Result<(MackeyFunctor, MackeyMorphism)> {
        let mut total = self.pieces[0].functor.clone();
        for p in &self.pieces[1..] {
            total = total.direct_sum(&p.functor)?;
        }
        let mut comps = BTreeMap::new();
        for &lv in self.source.lattice().divisors() {
            let cols: Vec<Vector> = self.pieces.iter().flat_map(|p| p.inclusion[&lv].col_vectors()).collect();
            comps.insert(lv, Matrix::from_cols(self.source.field(), self.source.dim(lv), &cols));
        }
        Ok((total, MackeyMorphism::new(comps)))
    }

    /// Levelwise dimension table `[piece][level]`.
    pub fn dims(&self) -> Vec<Vec<usize>> {
        self.pieces.iter().map(|p| p.functor.dims()).collect()
    }
}

/// The morphism determined by its free-level component `phi1`, read back at
/// each level through the injective restriction of the target.
pub fn extend_from_free_level(src: &MackeyFunctor, tgt: &MackeyFunctor, phi1: &Matrix) -> Result<MackeyMorphism> {
    let mut comps = BTreeMap::new();
    for &lv in src.lattice().divisors() {
        let rhs = phi1.mul(&src.res_map(1, lv));
        let c = tgt
            .res_map(1, lv)
            .solve_matrix(&rhs)
            .ok_or_else(|| Error::Internal(format!("free-level map does not descend to level {lv}")))?;
        comps.insert(lv, c);
    }
    Ok(MackeyMorphism::new(comps))
}

/// `M ≅ (M(C_n/e))^fix` for a module over the constant functor with `n`
/// invertible. The free level maps identically; level `m` maps through
/// `res_{1←m}`.
pub fn fix_reconstruction(m: &MackeyFunctor) -> Result<(MackeyFunctor, MackeyMorphism)> {
    let k = m.field();
    let lat = m.lattice();
    require_invertible_order(k, lat.n())?;
    if !m.is_constant_module() {
        return usage("fixed-point reconstruction needs a module over the constant functor");
    }
    let names: Vec<String> = m.labels(1).to_vec();
    let (fix, _) = fixed_point(k, lat, m.weyl(1), &names)?;
    let phi = extend_from_free_level(m, &fix, &Matrix::identity(k, m.dim(1)))?;
    let bad = phi.verify_iso(m, &fix);
    if !bad.is_empty() {
        return Err(Error::Internal(format!("reconstruction is not an isomorphism: {}", bad[0])));
    }
    Ok((fix, phi))
}

/// Naturality square of the reconstruction for a morphism `f: M → N`.
pub fn reconstruction_is_natural(m: &MackeyFunctor, n: &MackeyFunctor, f: &MackeyMorphism) -> Result<bool> {
    let (fm, pm) = fix_reconstruction(m)?;
    let (fnn, pn) = fix_reconstruction(n)?;
    let fixed = extend_from_free_level(&fm, &fnn, f.component(1))?;
    Ok(pn.compose(f) == fixed.compose(&pm))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    EigenFree,
    NormalBasis,
    PlusMinus,
}

impl CertificateKind {
    pub fn name(&self) -> &'static str {
        match self {
            CertificateKind::EigenFree => "eigen_free",
            CertificateKind::NormalBasis => "normal_basis",
            CertificateKind::PlusMinus => "plus_minus",
        }
    }
}

/// An isomorphism claimed by a certificate, checked on demand.
#[derive(Clone, Debug)]
pub struct Witness {
    pub claim: String,
    pub source: MackeyFunctor,
    pub target: MackeyFunctor,
    pub map: MackeyMorphism,
}

#[derive(Clone, Debug)]
pub struct ProjectivityCertificate {
    pub kind: CertificateKind,
    pub witnesses: Vec<Witness>,
    /// Additional checked facts, each with its outcome.
    pub facts: Vec<(String, bool)>,
}

impl ProjectivityCertificate {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for w in &self.witnesses {
            for v in w.map.verify_iso(&w.source, &w.target) {
                out.push(format!("{}: {v}", w.claim));
            }
        }
        for (fact, ok) in &self.facts {
            if !ok {
                out.push(fact.clone());
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// The fixed-point functor of the character `σ ↦ c` on `K`.
fn character_atom(k: &Field, lat: &Lattice, c: &Scalar, name: &str) -> Result<MackeyFunctor> {
    Ok(fixed_point(k, lat, &Matrix::scalar(k, 1, c), &[name.to_string()])?.0)
}

/// First `v ∈ L` whose conjugates `v, σv, …` form a basis, searching `α`
/// first and then all vectors with small coordinates.
pub fn normal_basis_element(ext: &GaloisExtension) -> Option<Vector> {
    let k = ext.base();
    let n = ext.degree();
    let conj = |v: &Vector| {
        let mut cols = vec![v.clone()];
        for _ in 1..n {
            let next = ext.sigma().apply(cols.last().unwrap());
            cols.push(next);
        }
        Matrix::from_cols(k, n, &cols)
    };
    let mut candidates = vec![ext.alpha_power(1)];
    let range: Vec<Scalar> = match k.elements() {
        Ok(all) if all.len() <= 7 => all,
        _ => (-2..=2).map(|i| k.from_int(i)).collect(),
    };
    let mut idx = vec![0usize; n];
    'outer: loop {
        candidates.push(idx.iter().map(|&i| range[i].clone()).collect());
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < range.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    candidates.into_iter().find(|v| conj(v).is_invertible())
}

/// Explicit projectivity data for `L^fix` over `K^c`.
pub fn projectivity_certificate(ext: &GaloisExtension) -> Result<ProjectivityCertificate> {
    let (t, _) = fix_functor(ext)?;
    let lf = t.mackey().clone();
    let k = ext.base().clone();
    let lat = lf.lattice().clone();
    let n = lat.n();
    match ext.flavor() {
        Flavor::Kummer { zeta, .. } if n == 2 => {
            let dec = eigen_decompose(&lf, zeta)?;
            let (total, sum) = dec.sum_morphism()?;
            let plus = &dec.pieces[0].functor;
            let minus = &dec.pieces[1].functor;
            let kc = constant_field(&k, &lat);
            let to_const = extend_from_free_level(plus, kc.mackey(), &Matrix::identity(&k, 1))?;
            Ok(ProjectivityCertificate {
                kind: CertificateKind::PlusMinus,
                witnesses: vec![
                    Witness { claim: "(L^fix)^+ ⊕ (L^fix)^− ≅ L^fix".into(), source: total, target: lf.clone(), map: sum },
                    Witness { claim: "(L^fix)^+ ≅ K^c".into(), source: plus.clone(), target: kc.mackey().clone(), map: to_const },
                ],
                facts: vec![
                    ("(L^fix)^− vanishes at the fixed level".into(), minus.dim(2) == 0),
                    ("(L^fix)^− is one-dimensional at the free level".into(), minus.dim(1) == 1),
                    ("eigen decomposition identities".into(), dec.violations().is_empty()),
                ],
            })
        }
        Flavor::Kummer { zeta, .. } => {
            let dec = eigen_decompose(&lf, zeta)?;
            let (total, sum) = dec.sum_morphism()?;
            let mut witnesses = vec![Witness { claim: "⊕ pieces ≅ L^fix".into(), source: total, target: lf.clone(), map: sum }];
            let mut facts = vec![("eigen decomposition identities".to_string(), dec.violations().is_empty())];
            for p in &dec.pieces {
                let f = &p.functor;
                let c = k.pow(zeta, p.index as u64);
                let atom = character_atom(&k, &lat, &c, &format!("χ{}", p.index))?;
                facts.push((format!("piece {} has rank one at the free level", p.index), f.dim(1) == 1));
                if f.dim(1) == 1 {
                    let phi = extend_from_free_level(f, &atom, &Matrix::identity(&k, 1))?;
                    witnesses.push(Witness { claim: format!("piece {} ≅ rank-one atom", p.index), source: f.clone(), target: atom, map: phi });
                }
            }
            Ok(ProjectivityCertificate { kind: CertificateKind::EigenFree, witnesses, facts })
        }
        _ => {
            let v = normal_basis_element(ext).ok_or_else(|| Error::Internal("no normal basis element found".into()))?;
            let names: Vec<String> = (0..n).map(|j| format!("σ^{j}")).collect();
            let (free, _) = fixed_point(&k, &lat, &orbit_action(&k, n), &names)?;
            let mut cols = vec![v.clone()];
            for _ in 1..n {
                let next = ext.sigma().apply(cols.last().unwrap());
                cols.push(next);
            }
            let phi1 = Matrix::from_cols(&k, n, &cols);
            let phi = extend_from_free_level(&free, &lf, &phi1)?;
            Ok(ProjectivityCertificate {
                kind: CertificateKind::NormalBasis,
                witnesses: vec![Witness { claim: "K[C_n]^fix ≅ L^fix".into(), source: free, target: lf, map: phi }],
                facts: vec![("conjugates of the normal element form a basis".into(), phi1.is_invertible())],
            })
        }
    }
}

/// Levelwise map `A^c □ B^c → (A ⊗ B)^c` or its relative analogue:
/// `x ⊗ y ↦ xy` on pure tensors and `[x ⊗ y]_d ↦ (m/d)·xy` on classes.
pub fn constant_box_map(b: &BoxProduct) -> Result<MackeyMorphism> {
    let k = b.field().clone();
    let mut comps = BTreeMap::new();
    for &m in b.lattice().divisors() {
        let lay = b.engine().layout(m);
        let lev = b.level(m);
        let chunks = lay.components();
        let size = chunks[0].2;
        let mut amb = Matrix::zeros(&k, size, lay.total());
        for (d, off, sz) in chunks {
            if sz != size {
                return usage("factors are not constant functors");
            }
            let c = k.from_int((m / d) as i64);
            for i in 0..sz {
                amb.set(i, off + i, c.clone());
            }
        }
        for row in lev.relation_rows() {
            if !crate::linalg::is_zero_vector(&k, &amb.apply(&row)) {
                return Err(Error::Descent(format!("constant box map does not descend at level {m}")));
            }
        }
        comps.insert(m, amb.mul(&lev.lift_matrix()));
    }
    Ok(MackeyMorphism::new(comps))
}

/// Violations of the constant box map being an isomorphism of Green
/// functors onto `target`.
pub fn constant_box_violations(b: &BoxProduct, target: &GreenFunctor) -> Result<Vec<String>> {
    let phi = constant_box_map(b)?;
    let mut out: Vec<String> = phi.verify_iso(b.functor(), target.mackey()).iter().map(|v| v.to_string()).collect();
    let g = b.green().ok_or_else(|| Error::Usage("box has no ring structure".into()))?;
    let k = b.field();
    for &m in b.lattice().divisors() {
        let f = phi.component(m);
        if &f.apply(g.unit(m)) != target.unit(m) {
            out.push(format!("level {m}: unit not preserved"));
        }
        let d = g.dim(m);
        for i in 0..d {
            for j in 0..d {
                let (x, y) = (unit_vector(k, d, i), unit_vector(k, d, j));
                if f.apply(&g.mul(m, &x, &y)) != target.mul(m, &f.apply(&x), &f.apply(&y)) {
                    out.push(format!("level {m}: not multiplicative on e{i}, e{j}"));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ConstantBoxVerdict {
    pub n: usize,
    pub dims: Vec<usize>,
    pub target_dim: usize,
    pub violations: Vec<String>,
}

impl ConstantBoxVerdict {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.dims.iter().all(|&d| d == self.target_dim)
    }
}

fn algebra_names(prefix: &str, dim: usize) -> Vec<String> {
    (0..dim).map(|i| if i == 0 { "1".to_string() } else { format!("{prefix}{i}") }).collect()
}

/// `A^c □ B^c ≅ (A ⊗ B)^c` over `C_n`, for algebras over a prime field.
pub fn constant_box_lemma_check(a: &CommAlgebra, b: &CommAlgebra, n: usize) -> Result<ConstantBoxVerdict> {
    let lat = Lattice::new(n)?;
    let (ac, _) = constant_functor(a, &algebra_names("a", a.dim()), &lat)?;
    let (bc, _) = constant_functor(b, &algebra_names("b", b.dim()), &lat)?;
    let bx = box_product(&ac, &bc)?;
    let ab = a.tensor(b);
    let (target, _) = constant_functor(&ab, &algebra_names("t", ab.dim()), &lat)?;
    let violations = constant_box_violations(&bx, &target)?;
    Ok(ConstantBoxVerdict { n, dims: bx.functor().dims(), target_dim: ab.dim(), violations })
}

/// Basis of `ker(res_{1←m})` at level `m`.
pub fn res_kernel(f: &MackeyFunctor, m: usize) -> Subspace {
    Subspace::spanned_by(f.field(), f.dim(m), &f.res_map(1, m).kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{build_extension, ExtensionSpec};
    use crate::random::random_constant_module;

    fn kummer(p: u64, n: usize, a: i64, z: i64) -> GaloisExtension {
        let k = Field::prime(p).unwrap();
        build_extension(&k, &ExtensionSpec::Kummer { n, a: k.from_int(a), zeta: k.from_int(z) }).unwrap()
    }

    #[test]
    fn kummer_order_four_table() {
        let ext = kummer(5, 4, 2, 2);
        let lf = fix_functor(&ext).unwrap().0.mackey().clone();
        let k = ext.base().clone();
        let dec = eigen_decompose(&lf, &k.from_int(2)).unwrap();
        assert!(dec.violations().is_empty());
        // levels in divisor order 1, 2, 4
        assert_eq!(dec.dims(), vec![vec![1, 1, 1], vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 0]]);
        for p in &dec.pieces {
            let inc = &p.inclusion[&1];
            assert_eq!(Subspace::spanned_by(&k, 4, &inc.col_vectors()), Subspace::spanned_by(&k, 4, &[ext.alpha_power(p.index)]));
        }
    }

    #[test]
    fn constant_functor_is_one_piece() {
        let k = Field::prime(7).unwrap();
        let c = constant_field(&k, &Lattice::new(3).unwrap());
        let dec = eigen_decompose(c.mackey(), &k.from_int(2)).unwrap();
        assert_eq!(dec.dims(), vec![vec![1, 1], vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn decomposition_needs_invertible_order() {
        let k = Field::prime(2).unwrap();
        let c = constant_field(&k, &Lattice::new(2).unwrap());
        assert!(matches!(eigen_decompose(c.mackey(), &k.one()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn reconstruction_of_random_modules() {
        let k = Field::prime(7).unwrap();
        for n in [3, 6] {
            let lat = Lattice::new(n).unwrap();
            for seed in 0..5 {
                let m = random_constant_module(&k, &lat, 3, seed).unwrap();
                let (fix, phi) = fix_reconstruction(&m).unwrap();
                assert!(phi.verify_iso(&m, &fix).is_empty());
                let other = random_constant_module(&k, &lat, 2, seed + 100).unwrap();
                for f in m.hom_space(&other).unwrap().iter().take(3) {
                    assert!(reconstruction_is_natural(&m, &other, f).unwrap());
                }
            }
        }
    }

    #[test]
    fn certificates() {
        let k2 = Field::prime(2).unwrap();
        let asx = build_extension(&k2, &ExtensionSpec::ArtinSchreier { a: k2.one() }).unwrap();
        let c = projectivity_certificate(&asx).unwrap();
        assert_eq!(c.kind, CertificateKind::NormalBasis);
        assert!(c.is_valid(), "{:?}", c.violations());
        let c = projectivity_certificate(&kummer(5, 2, 2, 4)).unwrap();
        assert_eq!(c.kind, CertificateKind::PlusMinus);
        assert!(c.is_valid(), "{:?}", c.violations());
        for ext in [kummer(7, 3, 3, 2), kummer(5, 4, 2, 2)] {
            let c = projectivity_certificate(&ext).unwrap();
            assert_eq!(c.kind, CertificateKind::EigenFree);
            assert!(c.is_valid(), "{:?}", c.violations());
        }
    }

    #[test]
    fn broken_witness_is_rejected() {
        let c = projectivity_certificate(&kummer(7, 3, 3, 2)).unwrap();
        let mut bad = c.clone();
        let w = &mut bad.witnesses[1];
        let k = w.source.field().clone();
        let mut comps = BTreeMap::new();
        for &m in w.source.lattice().divisors() {
            comps.insert(m, Matrix::zeros(&k, w.target.dim(m), w.source.dim(m)));
        }
        w.map = MackeyMorphism::new(comps);
        assert!(!bad.is_valid());
    }

    #[test]
    fn constant_box_lemma() {
        let f2 = Field::prime(2).unwrap();
        let f4 = CommAlgebra::monogenic(&f2, &[f2.one(), f2.one(), f2.one()]).unwrap();
        for n in [2, 4] {
            let v = constant_box_lemma_check(&f4, &f4, n).unwrap();
            assert!(v.holds(), "{v:?}");
            assert!(v.dims.iter().all(|&d| d == 4));
        }
        let g = CommAlgebra::ground(&f2);
        assert!(constant_box_lemma_check(&g, &g, 6).unwrap().holds());
        let f3 = Field::prime(3).unwrap();
        let f9 = CommAlgebra::monogenic(&f3, &[f3.one(), f3.zero(), f3.one()]).unwrap();
        let dual = CommAlgebra::monogenic(&f3, &[f3.zero(), f3.zero(), f3.one()]).unwrap();
        assert!(constant_box_lemma_check(&f9, &dual, 3).unwrap().holds());
    }
}
