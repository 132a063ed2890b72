//! The multiplication map of `T □ T`, its kernel `I`, the square `I²`, Green
//! Kähler differentials `I/I²` and étale verdicts.

use std::collections::BTreeMap;

use crate::algebra::CommAlgebra;
use crate::boxprod::{relative_box, BoxProduct};
use crate::error::{usage, Error, Result};
use crate::extension::{Flavor, GaloisExtension};
use crate::field::{Field, Scalar};
use crate::green::{constant_field, constant_functor, fix_functor, GreenFunctor};
use crate::lattice::Lattice;
use crate::linalg::{is_zero_vector, unit_vector, vec_scale, vec_sub, Matrix, Subspace, Vector};
use crate::mackey::MackeyMorphism;
use crate::modules::{constant_box_violations, projectivity_certificate, res_kernel, ProjectivityCertificate};

fn factor(b: &BoxProduct) -> Result<&GreenFunctor> {
    match (&b.left().green, &b.right().green) {
        (Some(l), Some(r)) if l == r => Ok(l),
        _ => usage("multiplication needs a box of a Green functor with itself"),
    }
}

/// `mult: T □ T → T`, `x ⊗ y ↦ xy` and `[z]_d ↦ tr_{m←d}(mult_d z)`.
pub fn mult_map(b: &BoxProduct) -> Result<MackeyMorphism> {
    let t = factor(b)?;
    let k = b.field().clone();
    let mut comps = BTreeMap::new();
    for &m in b.lattice().divisors() {
        let lay = b.engine().layout(m);
        let mut cols = Vec::with_capacity(lay.total());
        for (d, _, size) in lay.components() {
            let alg = t.algebra(d);
            let dd = t.dim(d);
            let tr = t.mackey().tr_map(d, m);
            for z in 0..size {
                let prod = alg.basis_product(z / dd, z % dd);
                cols.push(tr.apply(&prod));
            }
        }
        let amb = Matrix::from_cols(&k, t.dim(m), &cols);
        let lev = b.level(m);
        for (r, row) in lev.relation_rows().iter().enumerate() {
            if !is_zero_vector(&k, &amb.apply(row)) {
                return Err(Error::Descent(format!("multiplication sends relation {r} of level {m} to a nonzero element")));
            }
        }
        comps.insert(m, amb.mul(&lev.lift_matrix()));
    }
    Ok(MackeyMorphism::new(comps))
}

/// Violations of `mult` being a morphism of Green functors.
pub fn mult_violations(b: &BoxProduct, mult: &MackeyMorphism) -> Result<Vec<String>> {
    let t = factor(b)?;
    let g = b.green().ok_or_else(|| Error::Usage("box has no ring structure".into()))?;
    let k = b.field();
    let mut out: Vec<String> = mult.verify(b.functor(), t.mackey()).iter().map(|v| v.to_string()).collect();
    for &m in b.lattice().divisors() {
        let f = mult.component(m);
        if &f.apply(g.unit(m)) != t.unit(m) {
            out.push(format!("mult(1⊗1) = 1 at level {m}"));
        }
        let d = g.dim(m);
        for i in 0..d {
            for j in i..d {
                let (x, y) = (unit_vector(k, d, i), unit_vector(k, d, j));
                if f.apply(&g.mul(m, &x, &y)) != t.mul(m, &f.apply(&x), &f.apply(&y)) {
                    out.push(format!("mult is multiplicative at level {m} on e{i}, e{j}"));
                }
            }
        }
    }
    Ok(out)
}

/// `I = ker(mult)` and `I² = span{x·y}` over a basis of `I`, per level.
#[derive(Clone, Debug)]
pub struct IdealData {
    pub ideal: BTreeMap<usize, Subspace>,
    pub square: BTreeMap<usize, Subspace>,
}

pub fn ideal_and_square(b: &BoxProduct, mult: &MackeyMorphism) -> Result<IdealData> {
    let g = b.green().ok_or_else(|| Error::Usage("box has no ring structure".into()))?;
    let k = b.field();
    let mut ideal = BTreeMap::new();
    let mut square = BTreeMap::new();
    for &m in b.lattice().divisors() {
        let basis = mult.component(m).kernel();
        let mut prods = Vec::new();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                prods.push(g.mul(m, &basis[i], &basis[j]));
            }
        }
        ideal.insert(m, Subspace::spanned_by(k, b.dim(m), &basis));
        square.insert(m, Subspace::spanned_by(k, b.dim(m), &prods));
    }
    Ok(IdealData { ideal, square })
}

impl IdealData {
    /// `dim I/I²` per level.
    pub fn kahler_dims(&self) -> BTreeMap<usize, usize> {
        self.ideal.iter().map(|(&m, i)| (m, i.dim() - self.square[&m].intersection(i).dim())).collect()
    }

    /// The same ideal with `I²` replaced by zero, for negative controls.
    pub fn with_empty_square(&self) -> IdealData {
        let square = self.ideal.iter().map(|(&m, i)| (m, Subspace::zero(i.field(), i.ambient()))).collect();
        IdealData { ideal: self.ideal.clone(), square }
    }

    /// Ideal-property violations: `I² ⊆ I`, `I·B ⊆ I`, and `I` closed under
    /// restriction, transfer and the Weyl action.
    pub fn violations(&self, b: &BoxProduct) -> Vec<String> {
        let mut out = Vec::new();
        let f = b.functor();
        let k = b.field();
        for (&m, i) in &self.ideal {
            if !self.square[&m].is_subspace_of(i) {
                out.push(format!("I² ⊆ I at level {m}"));
            }
            if let Some(g) = b.green() {
                for x in i.basis() {
                    for j in 0..b.dim(m) {
                        if !i.contains(&g.mul(m, &x, &unit_vector(k, b.dim(m), j))) {
                            out.push(format!("I is an ideal at level {m}"));
                        }
                    }
                }
            }
            for x in i.basis() {
                if !i.contains(&f.weyl(m).apply(&x)) {
                    out.push(format!("I is Weyl-stable at level {m}"));
                }
            }
        }
        for &(d, m) in b.lattice().covering_pairs() {
            for x in self.ideal[&m].basis() {
                if !self.ideal[&d].contains(&f.res(d, m).apply(&x)) {
                    out.push(format!("res[{d}←{m}] preserves I"));
                }
            }
            for x in self.ideal[&d].basis() {
                if !self.ideal[&m].contains(&f.tr(d, m).apply(&x)) {
                    out.push(format!("tr[{m}←{d}] preserves I"));
                }
            }
        }
        out
    }
}

/// Green Kähler differentials: `dim I/I²` at every level.
pub fn green_kahler(data: &IdealData) -> BTreeMap<usize, usize> {
    data.kahler_dims()
}

/// Classical data of `A ⊗_K A → A`.
#[derive(Clone, Debug)]
pub struct ClassicalEtale {
    pub degree: usize,
    pub tensor_dim: usize,
    pub ideal_dim: usize,
    pub square_dim: usize,
    /// Separability idempotent `e` with `mult(e) = 1` and `(x⊗1 − 1⊗x)e = 0`.
    pub separability: Option<Vector>,
    pub witness_ok: bool,
}

impl ClassicalEtale {
    pub fn holds(&self) -> bool {
        self.ideal_dim == self.square_dim && self.witness_ok
    }
}

/// The nonequivariant étale check for a finite commutative algebra.
pub fn classical_oracle(a: &CommAlgebra) -> ClassicalEtale {
    let k = a.field();
    let n = a.dim();
    let t = a.tensor(a);
    let mult = Matrix::from_cols(k, n, &(0..n * n).map(|z| a.basis_product(z / n, z % n)).collect::<Vec<_>>());
    let ideal = mult.kernel();
    let mut prods = Vec::new();
    for i in 0..ideal.len() {
        for j in i..ideal.len() {
            prods.push(t.mul(&ideal[i], &ideal[j]));
        }
    }
    let square = Subspace::spanned_by(k, n * n, &prods);
    // mult(e) = 1, (x_i ⊗ 1 − 1 ⊗ x_i)·e = 0
    let mut system = mult.clone();
    let mut rhs = a.unit().clone();
    for i in 0..n {
        let x = unit_vector(k, n, i);
        let d = vec_sub(k, &crate::linalg::vec_kron(k, &x, a.unit()), &crate::linalg::vec_kron(k, a.unit(), &x));
        system = system.vstack(&t.mul_matrix(&d));
        rhs.extend(std::iter::repeat_n(k.zero(), n * n));
    }
    let separability = system.solve(&rhs);
    let witness_ok = match &separability {
        Some(e) => {
            let one = t.unit().clone();
            let u = vec_sub(k, &one, e);
            &t.mul(e, e) == e && ideal.iter().all(|x| &t.mul(&u, x) == x)
        }
        None => false,
    };
    ClassicalEtale { degree: n, tensor_dim: n * n, ideal_dim: ideal.len(), square_dim: square.dim(), separability, witness_ok }
}

pub fn classical_etale_oracle(ext: &GaloisExtension) -> ClassicalEtale {
    classical_oracle(ext.algebra())
}

#[derive(Clone, Debug)]
pub struct LevelVerdict {
    pub level: usize,
    pub box_dim: usize,
    pub ideal_dim: usize,
    pub square_dim: usize,
    pub kahler_dim: usize,
}

impl LevelVerdict {
    pub fn ideal_eq_square(&self) -> bool {
        self.kahler_dim == 0
    }
}

#[derive(Clone, Debug)]
pub struct EtaleVerdict {
    pub levels: Vec<LevelVerdict>,
    pub classical: ClassicalEtale,
    pub certificate: ProjectivityCertificate,
    pub certificate_valid: bool,
    pub overall: bool,
}

pub fn level_verdicts(b: &BoxProduct, data: &IdealData) -> Vec<LevelVerdict> {
    let kd = data.kahler_dims();
    b.lattice()
        .divisors()
        .iter()
        .map(|&m| LevelVerdict {
            level: m,
            box_dim: b.dim(m),
            ideal_dim: data.ideal[&m].dim(),
            square_dim: data.square[&m].dim(),
            kahler_dim: kd[&m],
        })
        .collect()
}

/// Everything computed for `K^c → L^fix`.
#[derive(Clone, Debug)]
pub struct EtaleAnalysis {
    pub fix: GreenFunctor,
    pub boxed: BoxProduct,
    pub mult: MackeyMorphism,
    pub ideals: IdealData,
    pub verdict: EtaleVerdict,
}

pub fn analyze_extension(ext: &GaloisExtension) -> Result<EtaleAnalysis> {
    let (fix, _) = fix_functor(ext)?;
    let base = constant_field(ext.base(), fix.lattice());
    let boxed = relative_box(&fix, &base)?;
    let mult = mult_map(&boxed)?;
    let bad = mult_violations(&boxed, &mult)?;
    if !bad.is_empty() {
        return Err(Error::Internal(format!("multiplication is not a Green morphism: {}", bad[0])));
    }
    let ideals = ideal_and_square(&boxed, &mult)?;
    let levels = level_verdicts(&boxed, &ideals);
    let classical = classical_etale_oracle(ext);
    let certificate = projectivity_certificate(ext)?;
    let certificate_valid = certificate.is_valid();
    let overall = levels.iter().all(|l| l.ideal_eq_square()) && certificate_valid;
    let verdict = EtaleVerdict { levels, classical, certificate, certificate_valid, overall };
    Ok(EtaleAnalysis { fix, boxed, mult, ideals, verdict })
}

fn kummer_data(ext: &GaloisExtension) -> Result<Scalar> {
    match ext.flavor() {
        Flavor::Kummer { a, .. } => Ok(a.clone()),
        _ => usage("generators x_{i,t} are defined for Kummer extensions"),
    }
}

/// Coordinates of `α^j` at level `m` of `L^fix`.
fn alpha_at(ext: &GaloisExtension, m: usize, j: usize) -> Result<Vector> {
    let k = ext.base();
    let n = ext.degree();
    let basis = ext.sigma().pow(n / m).sub(&Matrix::identity(k, n)).kernel();
    Matrix::from_cols(k, n, &basis)
        .solve(&ext.alpha_power(j))
        .ok_or_else(|| Error::Usage(format!("α^{j} is not fixed by C_{m}")))
}

/// `x_{i,t} = q·(1 ⊗ α^{td}) − [α^{id} ⊗ α^{(t−i)d}]_d` at level `m`, with
/// `q = m/d`.
pub fn x_generator(b: &BoxProduct, ext: &GaloisExtension, i: usize, t: usize, d: usize, m: usize) -> Result<Vector> {
    kummer_data(ext)?;
    let n = ext.degree();
    if m == 0 || d == 0 || !n.is_multiple_of(m) || !m.is_multiple_of(d) {
        return usage(format!("need d | m | n, got d = {d}, m = {m}, n = {n}"));
    }
    let q = m / d;
    if !t.is_multiple_of(q) || i > t {
        return usage(format!("need q | t and i ≤ t, got q = {q}, i = {i}, t = {t}"));
    }
    let k = b.field();
    let one = alpha_at(ext, m, 0)?;
    let top = b.pure(m, &one, &alpha_at(ext, m, t * d)?);
    let cls = b.class(m, d, &alpha_at(ext, d, i * d)?, &alpha_at(ext, d, (t - i) * d)?);
    Ok(vec_sub(k, &vec_scale(k, &k.from_int(q as i64), &top), &cls))
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub level: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Default)]
pub struct GeneratorReport {
    pub checks: Vec<Check>,
}

impl GeneratorReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, name: String, level: usize, passed: bool) {
        self.checks.push(Check { name, level, passed });
    }
}

/// Membership and congruence tests for the generators `x_{i,t}` at every
/// level: `x_{i,t} ∈ I`, `x_{i,t} ≡ x_{i+q,t}` and `x_{i,t} ≡ i·x_{1,t}`
/// modulo `I²`, `ker(res_{1←m}) ⊆ I²`, the element `ma − [α ⊗ α^{n−1}]_1`
/// in `I` acting as `ma` on that kernel, and the generator identities.
pub fn generator_checks(b: &BoxProduct, ext: &GaloisExtension, data: &IdealData) -> Result<GeneratorReport> {
    let a = kummer_data(ext)?;
    let k = b.field().clone();
    let n = ext.degree();
    let g = b.green().ok_or_else(|| Error::Usage("box has no ring structure".into()))?;
    let mut rep = GeneratorReport::default();
    for &m in b.lattice().divisors() {
        let (ideal, square) = (&data.ideal[&m], &data.square[&m]);
        let sq_mod = |v: &Vector| square.contains(v);
        for d in b.lattice().divisors_of(m) {
            let q = m / d;
            let ts: Vec<usize> = (1..=2 * n / d).filter(|t| t % q == 0).collect();
            for &t in &ts {
                let xs: Vec<Vector> = (0..=t).map(|i| x_generator(b, ext, i, t, d, m)).collect::<Result<_>>()?;
                rep.push(format!("x_{{i,{t}}} ∈ I for d = {d}"), m, xs.iter().all(|x| ideal.contains(x)));
                rep.push(format!("x_{{0,{t}}} = 0 for d = {d}"), m, is_zero_vector(&k, &xs[0]));
                let step = n / d;
                let periodic = (0..=t).filter(|i| i + step <= t).all(|i| xs[i] == xs[i + step]);
                rep.push(format!("x_{{i+n/d,{t}}} = x_{{i,{t}}} for d = {d}"), m, periodic);
                let shift = (0..=t).all(|i| {
                    x_generator(b, ext, i + step, t + step, d, m).map(|y| y == vec_scale(&k, &a, &xs[i])).unwrap_or(false)
                });
                rep.push(format!("x_{{i+n/d,{t}+n/d}} = a·x_{{i,{t}}} for d = {d}"), m, shift);
                let shifted = (0..=t).filter(|i| i + q <= t).all(|i| sq_mod(&vec_sub(&k, &xs[i], &xs[i + q])));
                rep.push(format!("x_{{i,{t}}} ≡ x_{{i+q,{t}}} mod I² for d = {d}"), m, shifted);
                let linear = (0..=t).all(|i| sq_mod(&vec_sub(&k, &xs[i], &vec_scale(&k, &k.from_int(i as i64), &xs[1]))));
                rep.push(format!("x_{{i,{t}}} ≡ i·x_{{1,{t}}} mod I² for d = {d}"), m, linear);
            }
            for &t in ts.iter().take(2) {
                for &t2 in ts.iter().take(2) {
                    let big = t + t2;
                    let mut ok = true;
                    for i in 0..=t {
                        for i2 in 0..=t2 {
                            let lhs = g.mul(m, &x_generator(b, ext, i, t, d, m)?, &x_generator(b, ext, i2, t2, d, m)?);
                            let s = crate::linalg::vec_add(&k, &x_generator(b, ext, i, big, d, m)?, &x_generator(b, ext, i2, big, d, m)?);
                            let s = vec_sub(&k, &s, &x_generator(b, ext, i + i2, big, d, m)?);
                            ok &= lhs == vec_scale(&k, &k.from_int(q as i64), &s);
                        }
                    }
                    rep.push(format!("x_{{i,{t}}}·x_{{i',{t2}}} = q(x_{{i,T}} + x_{{i',T}} − x_{{i+i',T}}) for d = {d}"), m, ok);
                }
            }
        }
        let kernel = res_kernel(b.functor(), m);
        rep.push("ker(res to the free level) ⊆ I²".into(), m, kernel.is_subspace_of(square));
        let w = x_generator(b, ext, 1, n, 1, m)?;
        rep.push(format!("{m}a − [α⊗α^{}]_1 ∈ I", n - 1), m, ideal.contains(&w));
        let ma = k.mul(&k.from_int(m as i64), &a);
        let acts = kernel.basis().iter().all(|z| g.mul(m, z, &w) == vec_scale(&k, &ma, z));
        rep.push(format!("z·({m}a − [α⊗α^{}]_1) = {m}a·z on ker res", n - 1), m, acts);
    }
    Ok(rep)
}

#[derive(Clone, Debug)]
pub struct ConstantEtaleVerdict {
    pub n: usize,
    pub box_dims: Vec<usize>,
    pub tensor_dim: usize,
    pub iso_violations: Vec<String>,
    pub levels: Vec<LevelVerdict>,
    pub classical: ClassicalEtale,
}

impl ConstantEtaleVerdict {
    pub fn holds(&self) -> bool {
        self.iso_violations.is_empty()
            && self.box_dims.iter().all(|&d| d == self.tensor_dim)
            && self.levels.iter().all(|l| l.ideal_eq_square() && l.ideal_dim == self.classical.ideal_dim)
            && self.classical.holds()
    }
}

/// `K^c → L^c` for a finite étale `K`-algebra `L` and the group `C_n`.
pub fn constant_etale_check(k: &Field, l: &CommAlgebra, n: usize) -> Result<ConstantEtaleVerdict> {
    if l.field() != k {
        return usage("algebra must be defined over the base field");
    }
    let lat = Lattice::new(n)?;
    let names: Vec<String> = (0..l.dim()).map(|i| if i == 0 { "1".into() } else { format!("l{i}") }).collect();
    let (lc, _) = constant_functor(l, &names, &lat)?;
    let base = constant_field(k, &lat);
    let boxed = relative_box(&lc, &base)?;
    let ll = l.tensor(l);
    let tnames: Vec<String> = (0..ll.dim()).map(|i| format!("t{i}")).collect();
    let (target, _) = constant_functor(&ll, &tnames, &lat)?;
    let iso_violations = constant_box_violations(&boxed, &target)?;
    let mult = mult_map(&boxed)?;
    let ideals = ideal_and_square(&boxed, &mult)?;
    Ok(ConstantEtaleVerdict {
        n,
        box_dims: boxed.functor().dims(),
        tensor_dim: ll.dim(),
        iso_violations,
        levels: level_verdicts(&boxed, &ideals),
        classical: classical_oracle(l),
    })
}
