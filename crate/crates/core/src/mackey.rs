//! Mackey functors for `C_n` with finite-dimensional levels.
//!
//! Level `m` is the value at the orbit `C_n/C_m`, where `C_m` is generated by
//! `σ^{n/m}`. Restrictions and transfers are stored on covering pairs only;
//! other structure maps are composed along chains.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{usage, Error, Result};
use crate::field::Field;
use crate::lattice::{gcd, Lattice};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Res,
    Tr,
}

/// A failed identity together with the data that exhibits the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub witness: String,
}

impl Violation {
    pub fn new(identity: impl Into<String>, witness: impl Into<String>) -> Violation {
        Violation { identity: identity.into(), witness: witness.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.identity, self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyFunctor {
    field: Field,
    lattice: Lattice,
    labels: BTreeMap<usize, Vec<String>>,
    /// `(d, m)` maps level `m` to level `d`.
    res: BTreeMap<(usize, usize), Matrix>,
    /// `(d, m)` maps level `d` to level `m`.
    tr: BTreeMap<(usize, usize), Matrix>,
    weyl: BTreeMap<usize, Matrix>,
}

fn shape_check(name: &str, m: &Matrix, rows: usize, cols: usize) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return usage(format!("{name} has shape {}x{}, expected {rows}x{cols}", m.rows(), m.cols()));
    }
    Ok(())
}

impl MackeyFunctor {
    /// Assemble a functor from covering-pair data; only shapes are validated.
    pub fn new(
        field: &Field,
        lattice: &Lattice,
        labels: BTreeMap<usize, Vec<String>>,
        res: BTreeMap<(usize, usize), Matrix>,
        tr: BTreeMap<(usize, usize), Matrix>,
        weyl: BTreeMap<usize, Matrix>,
    ) -> Result<MackeyFunctor> {
        for &m in lattice.divisors() {
            if !labels.contains_key(&m) || !weyl.contains_key(&m) {
                return usage(format!("level {m} is missing"));
            }
            let d = labels[&m].len();
            shape_check(&format!("weyl[{m}]"), &weyl[&m], d, d)?;
        }
        for &(d, m) in lattice.covering_pairs() {
            let (rd, rm) = (labels[&d].len(), labels[&m].len());
            let r = res.get(&(d, m)).ok_or_else(|| Error::Usage(format!("res[{d}←{m}] missing")))?;
            let t = tr.get(&(d, m)).ok_or_else(|| Error::Usage(format!("tr[{m}←{d}] missing")))?;
            shape_check(&format!("res[{d}←{m}]"), r, rd, rm)?;
            shape_check(&format!("tr[{m}←{d}]"), t, rm, rd)?;
        }
        Ok(MackeyFunctor {
            field: field.clone(),
            lattice: lattice.clone(),
            labels,
            res,
            tr,
            weyl,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    pub fn dim(&self, m: usize) -> usize {
        self.labels[&m].len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.lattice.divisors().iter().map(|&m| self.dim(m)).collect()
    }

    pub fn labels(&self, m: usize) -> &[String] {
        &self.labels[&m]
    }

    pub fn relabel(&mut self, m: usize, labels: Vec<String>) {
        assert_eq!(labels.len(), self.dim(m));
        self.labels.insert(m, labels);
    }

    /// Covering-pair restriction, level `m` to level `d`.
    pub fn res(&self, d: usize, m: usize) -> &Matrix {
        &self.res[&(d, m)]
    }

    /// Covering-pair transfer, level `d` to level `m`.
    pub fn tr(&self, d: usize, m: usize) -> &Matrix {
        &self.tr[&(d, m)]
    }

    pub fn weyl(&self, m: usize) -> &Matrix {
        &self.weyl[&m]
    }

    pub fn weyl_pow(&self, m: usize, j: usize) -> Matrix {
        self.weyl[&m].pow(j % self.n().max(1))
    }

    pub fn set_res(&mut self, d: usize, m: usize, mat: Matrix) {
        assert_eq!((mat.rows(), mat.cols()), (self.dim(d), self.dim(m)));
        self.res.insert((d, m), mat);
    }

    pub fn set_tr(&mut self, d: usize, m: usize, mat: Matrix) {
        assert_eq!((mat.rows(), mat.cols()), (self.dim(m), self.dim(d)));
        self.tr.insert((d, m), mat);
    }

    pub fn set_weyl(&mut self, m: usize, mat: Matrix) {
        assert_eq!((mat.rows(), mat.cols()), (self.dim(m), self.dim(m)));
        self.weyl.insert(m, mat);
    }

    fn along(&self, kind: MapKind, chain: &[usize]) -> Matrix {
        let start = chain[0];
        let mut acc = Matrix::identity(&self.field, self.dim(start));
        for w in chain.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            acc = match kind {
                MapKind::Res => acc.mul(self.res(lo, hi)),
                MapKind::Tr => self.tr(lo, hi).mul(&acc),
            };
        }
        acc
    }

    /// Composite restriction from level `m` down to level `d` along the
    /// canonical chain.
    pub fn res_map(&self, d: usize, m: usize) -> Matrix {
        let chain = self.lattice.chain(d, m).expect("levels related by divisibility");
        // chain runs d → m; restriction composes from the top
        let mut acc = Matrix::identity(&self.field, self.dim(d));
        for w in chain.windows(2) {
            acc = acc.mul(self.res(w[0], w[1]));
        }
        acc
    }

    /// Composite transfer from level `d` up to level `m` along the canonical chain.
    pub fn tr_map(&self, d: usize, m: usize) -> Matrix {
        let chain = self.lattice.chain(d, m).expect("levels related by divisibility");
        self.along(MapKind::Tr, &chain)
    }

    /// Structure map between two levels, checked to be independent of the
    /// covering chain used to compose it.
    pub fn compose_structure(&self, kind: MapKind, from: usize, to: usize) -> Result<Matrix> {
        let (lo, hi) = match kind {
            MapKind::Res => (to, from),
            MapKind::Tr => (from, to),
        };
        let chains = self.lattice.chains(lo, hi)?;
        let mats: Vec<Matrix> = chains
            .iter()
            .map(|c| match kind {
                MapKind::Res => {
                    let mut acc = Matrix::identity(&self.field, self.dim(lo));
                    for w in c.windows(2) {
                        acc = acc.mul(self.res(w[0], w[1]));
                    }
                    acc
                }
                MapKind::Tr => self.along(MapKind::Tr, c),
            })
            .collect();
        for (c, m) in chains.iter().zip(&mats).skip(1) {
            if *m != mats[0] {
                return Err(Error::Internal(format!(
                    "{kind:?} from {from} to {to} depends on the chain: {:?} vs {:?}",
                    chains[0], c
                )));
            }
        }
        Ok(mats.into_iter().next().unwrap())
    }

    /// Every violated Mackey identity, checked on all basis vectors.
    pub fn check_axioms(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.n();
        let k = &self.field;
        for &m in self.lattice.divisors() {
            let w = self.weyl(m);
            if !w.pow(n / m).is_identity() {
                out.push(Violation::new(
                    format!("weyl[{m}]^{} = 1", n / m),
                    format!("{:?}", w.pow(n / m)),
                ));
            }
        }
        for &(d, m) in self.lattice.covering_pairs() {
            let (r, t) = (self.res(d, m), self.tr(d, m));
            if self.weyl(d).mul(r) != r.mul(self.weyl(m)) {
                out.push(Violation::new(format!("weyl·res[{d}←{m}] = res·weyl"), format!("{r:?}")));
            }
            if t.mul(self.weyl(d)) != self.weyl(m).mul(t) {
                out.push(Violation::new(format!("tr[{m}←{d}]·weyl = weyl·tr"), format!("{t:?}")));
            }
            let inner = self.weyl_pow(d, n / m);
            if inner.mul(r) != *r {
                out.push(Violation::new(
                    format!("res[{d}←{m}] lands in C_{m}/C_{d}-invariants"),
                    format!("{r:?}"),
                ));
            }
            if t.mul(&inner) != *t {
                out.push(Violation::new(
                    format!("tr[{m}←{d}] is C_{m}/C_{d}-coinvariant"),
                    format!("{t:?}"),
                ));
            }
        }
        let divs = self.lattice.divisors().to_vec();
        for &lo in &divs {
            for &hi in &divs {
                if hi % lo != 0 || self.lattice.is_covering(lo, hi) || lo == hi {
                    continue;
                }
                for kind in [MapKind::Res, MapKind::Tr] {
                    let (from, to) = match kind {
                        MapKind::Res => (hi, lo),
                        MapKind::Tr => (lo, hi),
                    };
                    if let Err(e) = self.compose_structure(kind, from, to) {
                        out.push(Violation::new("transitivity", e.to_string()));
                    }
                }
            }
        }
        for &top in &divs {
            for &d in self.lattice.divisors_of(top).iter() {
                for &m in self.lattice.divisors_of(top).iter() {
                    let g = gcd(d, m);
                    let c = top * g / (d * m);
                    let lhs = self.res_map(d, top).mul(&self.tr_map(m, top));
                    let mut rhs = Matrix::zeros(k, self.dim(d), self.dim(m));
                    let down = self.res_map(g, m);
                    let up = self.tr_map(g, d);
                    for j in 0..c {
                        let conj = self.weyl_pow(g, (n / top) * j);
                        rhs = rhs.add(&up.mul(&conj).mul(&down));
                    }
                    if lhs != rhs {
                        out.push(Violation::new(
                            format!("double coset res[{d}←{top}]·tr[{top}←{m}]"),
                            format!("lhs {lhs:?} rhs {rhs:?}"),
                        ));
                    }
                }
            }
        }
        out
    }

    /// Identity on every level.
    pub fn identity_morphism(&self) -> MackeyMorphism {
        let components = self
            .lattice
            .divisors()
            .iter()
            .map(|&m| (m, Matrix::identity(&self.field, self.dim(m))))
            .collect();
        MackeyMorphism { components }
    }

    /// Levelwise direct sum, with the basis of `self` first.
    pub fn direct_sum(&self, other: &MackeyFunctor) -> Result<MackeyFunctor> {
        if self.field != other.field || self.lattice != other.lattice {
            return usage("direct sum of functors over different fields or groups");
        }
        let mut labels = BTreeMap::new();
        let mut weyl = BTreeMap::new();
        for &m in self.lattice.divisors() {
            let mut l = self.labels[&m].clone();
            l.extend(other.labels[&m].iter().cloned());
            labels.insert(m, l);
            weyl.insert(m, self.weyl(m).block_diag(other.weyl(m)));
        }
        let mut res = BTreeMap::new();
        let mut tr = BTreeMap::new();
        for &(d, m) in self.lattice.covering_pairs() {
            res.insert((d, m), self.res(d, m).block_diag(other.res(d, m)));
            tr.insert((d, m), self.tr(d, m).block_diag(other.tr(d, m)));
        }
        MackeyFunctor::new(&self.field, &self.lattice, labels, res, tr, weyl)
    }

    /// The isomorphic functor in new coordinates `y = P_m·x` at each level.
    pub fn transport(&self, p: &BTreeMap<usize, Matrix>) -> Result<MackeyFunctor> {
        let mut inv = BTreeMap::new();
        for &m in self.lattice.divisors() {
            inv.insert(m, p[&m].inverse()?);
        }
        let weyl = self.lattice.divisors().iter().map(|&m| (m, p[&m].mul(self.weyl(m)).mul(&inv[&m]))).collect();
        let mut res = BTreeMap::new();
        let mut tr = BTreeMap::new();
        for &(d, m) in self.lattice.covering_pairs() {
            res.insert((d, m), p[&d].mul(self.res(d, m)).mul(&inv[&m]));
            tr.insert((d, m), p[&m].mul(self.tr(d, m)).mul(&inv[&d]));
        }
        let labels = self
            .lattice
            .divisors()
            .iter()
            .map(|&m| (m, (0..self.dim(m)).map(|i| format!("b{i}")).collect()))
            .collect();
        MackeyFunctor::new(&self.field, &self.lattice, labels, res, tr, weyl)
    }

    /// Violations of `tr∘res = index` on covering pairs; empty exactly when
    /// the functor is a module over the constant functor.
    pub fn constant_module_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for &(d, m) in self.lattice.covering_pairs() {
            let lhs = self.tr(d, m).mul(self.res(d, m));
            let rhs = Matrix::scalar(&self.field, self.dim(m), &self.field.from_int((m / d) as i64));
            if lhs != rhs {
                out.push(Violation::new(format!("tr[{m}←{d}]·res[{d}←{m}] = {}", m / d), format!("{lhs:?}")));
            }
        }
        out
    }

    pub fn is_constant_module(&self) -> bool {
        self.constant_module_violations().is_empty()
    }

    /// Basis of all morphisms `self → other`.
    pub fn hom_space(&self, other: &MackeyFunctor) -> Result<Vec<MackeyMorphism>> {
        if self.field != other.field || self.lattice != other.lattice {
            return usage("morphisms between functors over different fields or groups");
        }
        let k = &self.field;
        let divs = self.lattice.divisors().to_vec();
        let mut offset = BTreeMap::new();
        let mut total = 0;
        for &m in &divs {
            offset.insert(m, total);
            total += other.dim(m) * self.dim(m);
        }
        let var = |m: usize, i: usize, j: usize| offset[&m] + i * self.dim(m) + j;
        let mut rows: Vec<Vec<crate::field::Scalar>> = Vec::new();
        // f_a·A = B·f_b for A: self level b → a, B: other level b → a
        let mut add_square = |a: usize, b: usize, sa: &Matrix, ob: &Matrix| {
            for i in 0..other.dim(a) {
                for j in 0..self.dim(b) {
                    let mut row = vec![k.zero(); total];
                    for l in 0..self.dim(a) {
                        let v = var(a, i, l);
                        row[v] = k.add(&row[v], sa.get(l, j));
                    }
                    for l in 0..other.dim(b) {
                        let v = var(b, l, j);
                        row[v] = k.sub(&row[v], ob.get(i, l));
                    }
                    rows.push(row);
                }
            }
        };
        for &m in &divs {
            add_square(m, m, self.weyl(m), other.weyl(m));
        }
        for &(d, m) in self.lattice.covering_pairs() {
            add_square(d, m, self.res(d, m), other.res(d, m));
            add_square(m, d, self.tr(d, m), other.tr(d, m));
        }
        let sys = Matrix::from_rows(k, total, &rows);
        let sols = sys.kernel();
        Ok(sols
            .iter()
            .map(|v| {
                let components = divs
                    .iter()
                    .map(|&m| {
                        let mat = Matrix::from_fn(k, other.dim(m), self.dim(m), |i, j| v[var(m, i, j)].clone());
                        (m, mat)
                    })
                    .collect();
                MackeyMorphism { components }
            })
            .collect())
    }
}

/// A levelwise linear map between Mackey functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyMorphism {
    pub components: BTreeMap<usize, Matrix>,
}

impl MackeyMorphism {
    pub fn new(components: BTreeMap<usize, Matrix>) -> MackeyMorphism {
        MackeyMorphism { components }
    }

    pub fn component(&self, m: usize) -> &Matrix {
        &self.components[&m]
    }

    /// Violations of compatibility with res, tr and weyl.
    pub fn verify(&self, source: &MackeyFunctor, target: &MackeyFunctor) -> Vec<Violation> {
        let mut out = Vec::new();
        let lat = source.lattice();
        for &m in lat.divisors() {
            let Some(f) = self.components.get(&m) else {
                out.push(Violation::new(format!("component at level {m}"), "missing"));
                continue;
            };
            if f.rows() != target.dim(m) || f.cols() != source.dim(m) {
                out.push(Violation::new(format!("component at level {m}"), "wrong shape"));
                return out;
            }
            if f.mul(source.weyl(m)) != target.weyl(m).mul(f) {
                out.push(Violation::new(format!("f·weyl = weyl·f at level {m}"), format!("{f:?}")));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for &(d, m) in lat.covering_pairs() {
            let (fd, fm) = (self.component(d), self.component(m));
            if fd.mul(source.res(d, m)) != target.res(d, m).mul(fm) {
                out.push(Violation::new(format!("f·res[{d}←{m}] = res·f"), format!("{fd:?}")));
            }
            if fm.mul(source.tr(d, m)) != target.tr(d, m).mul(fd) {
                out.push(Violation::new(format!("f·tr[{m}←{d}] = tr·f"), format!("{fm:?}")));
            }
        }
        out
    }

    pub fn is_iso(&self) -> bool {
        self.components.values().all(|m| m.is_invertible())
    }

    pub fn inverse(&self) -> Result<MackeyMorphism> {
        let mut components = BTreeMap::new();
        for (&m, f) in &self.components {
            components.insert(m, f.inverse()?);
        }
        Ok(MackeyMorphism { components })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MackeyMorphism) -> MackeyMorphism {
        let components = self.components.iter().map(|(&m, f)| (m, f.mul(&other.components[&m]))).collect();
        MackeyMorphism { components }
    }

    pub fn is_identity(&self) -> bool {
        self.components.values().all(|m| m.is_identity())
    }

    /// Verified two-sided isomorphism `source ≅ target`: both composites of
    /// `self` with its inverse are identities and both maps are morphisms.
    pub fn verify_iso(&self, source: &MackeyFunctor, target: &MackeyFunctor) -> Vec<Violation> {
        let mut out = self.verify(source, target);
        match self.inverse() {
            Ok(inv) => {
                out.extend(inv.verify(target, source));
                if !inv.compose(self).is_identity() || !self.compose(&inv).is_identity() {
                    out.push(Violation::new("two-sided inverse", "composites are not identities"));
                }
            }
            Err(_) => out.push(Violation::new("invertibility", "some component is singular")),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(k: &Field, n: usize) -> MackeyFunctor {
        let lat = Lattice::new(n).unwrap();
        let one = Matrix::identity(k, 1);
        let labels = lat.divisors().iter().map(|&m| (m, vec!["1".to_string()])).collect();
        let weyl = lat.divisors().iter().map(|&m| (m, one.clone())).collect();
        let res = lat.covering_pairs().iter().map(|&p| (p, one.clone())).collect();
        let tr = lat
            .covering_pairs()
            .iter()
            .map(|&(d, m)| ((d, m), Matrix::scalar(k, 1, &k.from_int((m / d) as i64))))
            .collect();
        MackeyFunctor::new(k, &lat, labels, res, tr, weyl).unwrap()
    }

    #[test]
    fn constant_functor_passes() {
        let k = Field::prime(5).unwrap();
        for n in [1, 2, 3, 4, 6, 12] {
            let m = constant(&k, n);
            assert!(m.check_axioms().is_empty(), "n = {n}");
            assert!(m.is_constant_module());
        }
    }

    #[test]
    fn res_to_same_level_is_identity() {
        let k = Field::prime(3).unwrap();
        let m = constant(&k, 6);
        assert!(m.compose_structure(MapKind::Res, 6, 6).unwrap().is_identity());
        assert_eq!(m.compose_structure(MapKind::Tr, 1, 6).unwrap(), Matrix::scalar(&k, 1, &k.zero()));
        assert!(m.compose_structure(MapKind::Tr, 6, 1).is_err());
    }

    #[test]
    fn corrupted_transfer_breaks_double_coset() {
        let k = Field::prime(5).unwrap();
        let mut m = constant(&k, 2);
        m.set_tr(1, 2, Matrix::scalar(&k, 1, &k.from_int(3)));
        let v = m.check_axioms();
        assert!(v.iter().any(|x| x.identity.starts_with("double coset")));
    }

    #[test]
    fn hom_space_of_constant_functor() {
        let k = Field::prime(7).unwrap();
        let m = constant(&k, 4);
        let homs = m.hom_space(&m).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].verify(&m, &m).is_empty());
        let id = m.identity_morphism();
        assert!(id.verify_iso(&m, &m).is_empty());
    }
}
