//! Green functors (levelwise commutative algebras compatible with the Mackey
//! structure) and Tambara norms for constant and fixed-point functors.

use std::collections::BTreeMap;

use crate::algebra::CommAlgebra;
use crate::atoms::fixed_point_green;
use crate::error::{usage, Error, Result};
use crate::extension::GaloisExtension;
use crate::field::{Field, Scalar};
use crate::lattice::Lattice;
use crate::linalg::{unit_vector, Matrix, Vector};
use crate::mackey::{MackeyFunctor, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenFunctor {
    mackey: MackeyFunctor,
    algebras: BTreeMap<usize, CommAlgebra>,
}

impl GreenFunctor {
    pub fn new(mackey: MackeyFunctor, algebras: BTreeMap<usize, CommAlgebra>) -> Result<GreenFunctor> {
        for &m in mackey.lattice().divisors() {
            match algebras.get(&m) {
                Some(a) if a.dim() == mackey.dim(m) => {}
                _ => return usage(format!("algebra at level {m} missing or of the wrong dimension")),
            }
        }
        Ok(GreenFunctor { mackey, algebras })
    }

    pub fn mackey(&self) -> &MackeyFunctor {
        &self.mackey
    }

    pub fn mackey_mut(&mut self) -> &mut MackeyFunctor {
        &mut self.mackey
    }

    pub fn field(&self) -> &Field {
        self.mackey.field()
    }

    pub fn lattice(&self) -> &Lattice {
        self.mackey.lattice()
    }

    pub fn n(&self) -> usize {
        self.mackey.n()
    }

    pub fn dim(&self, m: usize) -> usize {
        self.mackey.dim(m)
    }

    pub fn algebra(&self, m: usize) -> &CommAlgebra {
        &self.algebras[&m]
    }

    pub fn set_algebra(&mut self, m: usize, a: CommAlgebra) {
        assert_eq!(a.dim(), self.dim(m));
        self.algebras.insert(m, a);
    }

    pub fn mul(&self, m: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.algebras[&m].mul(x, y)
    }

    pub fn unit(&self, m: usize) -> &Vector {
        self.algebras[&m].unit()
    }

    /// Violations of the Green functor identities on basis elements: ring
    /// axioms per level, restriction and Weyl action are unital ring maps,
    /// and Frobenius reciprocity on both sides for every covering pair.
    pub fn check_green(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = self.field();
        let lat = self.lattice();
        for &m in lat.divisors() {
            for v in self.algebras[&m].check() {
                out.push(Violation::new(format!("ring axioms at level {m}"), v));
            }
            if !self.algebras[&m].is_ring_map(self.mackey.weyl(m)) {
                out.push(Violation::new(format!("weyl[{m}] is a ring automorphism"), format!("{:?}", self.mackey.weyl(m))));
            }
        }
        for &(d, m) in lat.covering_pairs() {
            let r = self.mackey.res(d, m);
            let t = self.mackey.tr(d, m);
            if r.apply(self.unit(m)) != *self.unit(d) {
                out.push(Violation::new(format!("res[{d}←{m}](1) = 1"), format!("{:?}", r.apply(self.unit(m)))));
            }
            for i in 0..self.dim(m) {
                let ei = unit_vector(k, self.dim(m), i);
                for j in 0..self.dim(m) {
                    let ej = unit_vector(k, self.dim(m), j);
                    let lhs = r.apply(&self.mul(m, &ei, &ej));
                    let rhs = self.mul(d, &r.apply(&ei), &r.apply(&ej));
                    if lhs != rhs {
                        out.push(Violation::new(format!("res[{d}←{m}] is multiplicative"), format!("basis pair ({i}, {j})")));
                    }
                }
            }
            for i in 0..self.dim(d) {
                let x = unit_vector(k, self.dim(d), i);
                for j in 0..self.dim(m) {
                    let y = unit_vector(k, self.dim(m), j);
                    let lhs = self.mul(m, &t.apply(&x), &y);
                    let rhs = t.apply(&self.mul(d, &x, &r.apply(&y)));
                    if lhs != rhs {
                        out.push(Violation::new(
                            format!("Frobenius reciprocity tr[{m}←{d}](x)·y = tr(x·res y)"),
                            format!("x = e{i} at level {d}, y = e{j} at level {m}: {lhs:?} vs {rhs:?}"),
                        ));
                    }
                    let lhs2 = self.mul(m, &y, &t.apply(&x));
                    let rhs2 = t.apply(&self.mul(d, &r.apply(&y), &x));
                    if lhs2 != rhs2 {
                        out.push(Violation::new(
                            format!("Frobenius reciprocity y·tr[{m}←{d}](x) = tr(res y·x)"),
                            format!("x = e{i} at level {d}, y = e{j} at level {m}"),
                        ));
                    }
                }
            }
        }
        out
    }

    /// Levelwise base change `y = P_m·x` of both the Mackey and ring structure.
    pub fn transport(&self, p: &BTreeMap<usize, Matrix>) -> Result<GreenFunctor> {
        let mackey = self.mackey.transport(p)?;
        let mut algebras = BTreeMap::new();
        for (&m, a) in &self.algebras {
            algebras.insert(m, a.transport(&p[&m])?);
        }
        GreenFunctor::new(mackey, algebras)
    }

    /// Levelwise direct product of rings.
    pub fn product(&self, other: &GreenFunctor) -> Result<GreenFunctor> {
        let mackey = self.mackey.direct_sum(&other.mackey)?;
        let algebras = self.algebras.iter().map(|(&m, a)| (m, a.product(&other.algebras[&m]))).collect();
        GreenFunctor::new(mackey, algebras)
    }
}

/// Norm maps of a Tambara structure, evaluated on level vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormRule {
    /// `norm_{m←d}(x) = x^{m/d}` on a constant functor.
    Constant,
    /// Product of the `C_m/C_d`-conjugates of `x`, read back at level `m`
    /// through the injective restriction of a fixed-point functor.
    FixedPoint,
}

impl NormRule {
    pub fn evaluate(&self, g: &GreenFunctor, d: usize, m: usize, x: &[Scalar]) -> Result<Vector> {
        let lat = g.lattice();
        if !lat.contains(d) || !lat.contains(m) || !m.is_multiple_of(d) {
            return usage(format!("no norm from level {d} to level {m}"));
        }
        let n = g.n();
        let alg = g.algebra(d);
        let prod = match self {
            NormRule::Constant => alg.pow(x, m / d),
            NormRule::FixedPoint => {
                let mut acc = alg.unit().clone();
                for j in 0..m / d {
                    let conj = g.mackey().weyl_pow(d, (n / m) * j).apply(x);
                    acc = alg.mul(&acc, &conj);
                }
                acc
            }
        };
        g.mackey()
            .res_map(d, m)
            .solve(&prod)
            .ok_or_else(|| Error::Internal(format!("norm from level {d} is not restricted from level {m}")))
    }

    /// Violations of multiplicativity, unitality and `norm(res x) = x^{m/d}`
    /// on basis elements and their pairwise sums.
    pub fn check(&self, g: &GreenFunctor) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = g.field();
        let lat = g.lattice();
        for &m in lat.divisors() {
            for d in lat.divisors_of(m) {
                if d == m {
                    continue;
                }
                let one = self.evaluate(g, d, m, g.unit(d));
                if one.as_ref().ok() != Some(g.unit(m)) {
                    out.push(Violation::new(format!("norm[{m}←{d}](1) = 1"), format!("{one:?}")));
                }
                let dd = g.dim(d);
                let mut samples: Vec<Vector> = (0..dd).map(|i| unit_vector(k, dd, i)).collect();
                for i in 0..dd {
                    for j in i + 1..dd {
                        samples.push(crate::linalg::vec_add(k, &samples[i], &samples[j]));
                    }
                }
                for x in &samples {
                    for y in &samples {
                        let lhs = self.evaluate(g, d, m, &g.mul(d, x, y));
                        let rhs = self
                            .evaluate(g, d, m, x)
                            .and_then(|a| self.evaluate(g, d, m, y).map(|b| g.mul(m, &a, &b)));
                        if lhs.is_err() || lhs != rhs {
                            out.push(Violation::new(format!("norm[{m}←{d}] is multiplicative"), format!("{x:?}, {y:?}")));
                        }
                    }
                }
                let r = g.mackey().res_map(d, m);
                for i in 0..g.dim(m) {
                    let x = unit_vector(k, g.dim(m), i);
                    let lhs = self.evaluate(g, d, m, &r.apply(&x));
                    if lhs.as_ref().ok() != Some(&g.algebra(m).pow(&x, m / d)) {
                        out.push(Violation::new(format!("norm[{m}←{d}](res x) = x^{}", m / d), format!("e{i}")));
                    }
                }
            }
        }
        out
    }
}

/// The constant Green functor of an algebra: every level is `A`, restriction
/// is the identity, transfer multiplies by the index, the action is trivial.
pub fn constant_functor(algebra: &CommAlgebra, names: &[String], lattice: &Lattice) -> Result<(GreenFunctor, NormRule)> {
    let k = algebra.field();
    let dim = algebra.dim();
    if names.len() != dim {
        return usage("one name per algebra basis vector");
    }
    let id = Matrix::identity(k, dim);
    let labels = lattice.divisors().iter().map(|&m| (m, names.to_vec())).collect();
    let weyl = lattice.divisors().iter().map(|&m| (m, id.clone())).collect();
    let res = lattice.covering_pairs().iter().map(|&p| (p, id.clone())).collect();
    let tr = lattice
        .covering_pairs()
        .iter()
        .map(|&(d, m)| ((d, m), Matrix::scalar(k, dim, &k.from_int((m / d) as i64))))
        .collect();
    let mackey = MackeyFunctor::new(k, lattice, labels, res, tr, weyl)?;
    let algebras = lattice.divisors().iter().map(|&m| (m, algebra.clone())).collect();
    Ok((GreenFunctor::new(mackey, algebras)?, NormRule::Constant))
}

/// `K^c` for the ground field.
pub fn constant_field(field: &Field, lattice: &Lattice) -> GreenFunctor {
    constant_functor(&CommAlgebra::ground(field), &["1".to_string()], lattice)
        .expect("ground field is a valid algebra")
        .0
}

/// `L^fix`: level `m` is `L^{C_m}` with inclusions, coset-sum transfers and
/// coset-product norms.
pub fn fix_functor(ext: &GaloisExtension) -> Result<(GreenFunctor, NormRule)> {
    let lat = Lattice::new(ext.degree())?;
    let (g, _) = fixed_point_green(&lat, ext.algebra(), ext.sigma(), &ext.labels())?;
    Ok((g, NormRule::FixedPoint))
}
