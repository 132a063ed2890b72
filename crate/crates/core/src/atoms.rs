//! Standard building blocks: fixed-point and fixed-quotient functors of a
//! `C_n`-representation, and the Burnside functor.

use std::collections::BTreeMap;

use crate::algebra::CommAlgebra;
use crate::display::render;
use crate::error::{usage, Error, Result};
use crate::field::Field;
use crate::green::GreenFunctor;
use crate::lattice::{gcd, Lattice};
use crate::linalg::{unit_vector, Matrix, Quotient};
use crate::mackey::MackeyFunctor;

fn check_action(lattice: &Lattice, s: &Matrix) -> Result<()> {
    if s.rows() != s.cols() {
        return usage("group action must be square");
    }
    if !s.pow(lattice.n()).is_identity() {
        return usage(format!("action does not have order dividing {}", lattice.n()));
    }
    Ok(())
}

/// Sum of `S^{(n/m)j}` over `j < m/d`: the coset sum for `C_m/C_d`.
fn coset_sum(s: &Matrix, n: usize, d: usize, m: usize) -> Matrix {
    let step = s.pow(n / m);
    let mut acc = Matrix::zeros(s.field(), s.rows(), s.cols());
    let mut cur = Matrix::identity(s.field(), s.rows());
    for _ in 0..m / d {
        acc = acc.add(&cur);
        cur = cur.mul(&step);
    }
    acc
}

/// The fixed-point functor of `(V, S)`: level `m` is `V^{C_m}` with inclusion
/// as restriction and the coset sum as transfer.
///
/// Returns the functor and, for each level, the matrix embedding it into `V`.
pub fn fixed_point(field: &Field, lattice: &Lattice, s: &Matrix, names: &[String]) -> Result<(MackeyFunctor, BTreeMap<usize, Matrix>)> {
    check_action(lattice, s)?;
    let n = lattice.n();
    let dim = s.rows();
    let mut emb = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let mut weyl = BTreeMap::new();
    for &m in lattice.divisors() {
        let basis = s.pow(n / m).sub(&Matrix::identity(field, dim)).kernel();
        let e = Matrix::from_cols(field, dim, &basis);
        labels.insert(m, basis.iter().map(|b| render(field, b, names)).collect());
        let w = e.solve_matrix(&s.mul(&e)).ok_or_else(|| Error::Internal("σ does not preserve fixed points".into()))?;
        weyl.insert(m, w);
        emb.insert(m, e);
    }
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for &(d, m) in lattice.covering_pairs() {
        let r = emb[&d].solve_matrix(&emb[&m]).ok_or_else(|| Error::Internal("fixed points not nested".into()))?;
        let t = emb[&m]
            .solve_matrix(&coset_sum(s, n, d, m).mul(&emb[&d]))
            .ok_or_else(|| Error::Internal("coset sum not fixed".into()))?;
        res.insert((d, m), r);
        tr.insert((d, m), t);
    }
    Ok((MackeyFunctor::new(field, lattice, labels, res, tr, weyl)?, emb))
}

/// Fixed-point Green functor of a `C_n`-algebra: `S` must act by ring
/// automorphisms of `algebra`.
pub fn fixed_point_green(lattice: &Lattice, algebra: &CommAlgebra, s: &Matrix, names: &[String]) -> Result<(GreenFunctor, BTreeMap<usize, Matrix>)> {
    if !algebra.is_ring_map(s) {
        return usage("group action is not by ring automorphisms");
    }
    let (mackey, emb) = fixed_point(algebra.field(), lattice, s, names)?;
    let mut algebras = BTreeMap::new();
    for (&m, e) in &emb {
        algebras.insert(m, algebra.restrict(e)?);
    }
    Ok((GreenFunctor::new(mackey, algebras)?, emb))
}

/// The fixed-quotient functor of `(V, S)`: level `m` is the coinvariants
/// `V_{C_m}`, restriction is the coset sum and transfer is the projection.
pub fn fixed_quotient(field: &Field, lattice: &Lattice, s: &Matrix, names: &[String]) -> Result<MackeyFunctor> {
    check_action(lattice, s)?;
    let n = lattice.n();
    let dim = s.rows();
    let mut quo = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let mut weyl = BTreeMap::new();
    for &m in lattice.divisors() {
        let g = s.pow(n / m).sub(&Matrix::identity(field, dim));
        let q = Quotient::new(field, dim, &g.col_vectors(), &(0..dim).collect::<Vec<_>>());
        labels.insert(
            m,
            q.representatives().iter().map(|&i| render(field, &unit_vector(field, dim, i), names)).collect(),
        );
        weyl.insert(m, q.canonicalize_matrix().mul(s).mul(&q.lift_matrix()));
        quo.insert(m, q);
    }
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for &(d, m) in lattice.covering_pairs() {
        res.insert((d, m), quo[&d].canonicalize_matrix().mul(&coset_sum(s, n, d, m)).mul(&quo[&m].lift_matrix()));
        tr.insert((d, m), quo[&m].canonicalize_matrix().mul(&quo[&d].lift_matrix()));
    }
    MackeyFunctor::new(field, lattice, labels, res, tr, weyl)
}

/// The cyclic shift on `K[C_n/C_k]`, a permutation of `n/k` points.
pub fn orbit_action(field: &Field, size: usize) -> Matrix {
    Matrix::from_fn(field, size, size, |i, j| if i == (j + 1) % size { field.one() } else { field.zero() })
}

/// Burnside Green functor with basis `[C_m/C_k]`, `k | m`, at level `m`.
pub fn burnside(field: &Field, lattice: &Lattice) -> Result<GreenFunctor> {
    let k = field;
    let subs = |m: usize| lattice.divisors_of(m);
    let mut labels = BTreeMap::new();
    let mut weyl = BTreeMap::new();
    let mut algebras = BTreeMap::new();
    for &m in lattice.divisors() {
        let s = subs(m);
        labels.insert(m, s.iter().map(|&c| format!("[C{m}/C{c}]")).collect::<Vec<_>>());
        weyl.insert(m, Matrix::identity(k, s.len()));
        let pos = |c: usize| s.iter().position(|&x| x == c).unwrap();
        let unit = unit_vector(k, s.len(), pos(m));
        let alg = CommAlgebra::from_products(k, s.len(), unit, |i, j| {
            let (a, b) = (s[i], s[j]);
            let g = gcd(a, b);
            let mut v = vec![k.zero(); s.len()];
            v[pos(g)] = k.from_int((m * g / (a * b)) as i64);
            v
        });
        algebras.insert(m, alg);
    }
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for &(d, m) in lattice.covering_pairs() {
        let (sm, sd) = (subs(m), subs(d));
        let r = Matrix::from_fn(k, sd.len(), sm.len(), |i, j| {
            let c = sm[j];
            let g = gcd(d, c);
            if sd[i] == g {
                k.from_int((m * g / (c * d)) as i64)
            } else {
                k.zero()
            }
        });
        let t = Matrix::from_fn(k, sm.len(), sd.len(), |i, j| if sm[i] == sd[j] { k.one() } else { k.zero() });
        res.insert((d, m), r);
        tr.insert((d, m), t);
    }
    let mackey = MackeyFunctor::new(k, lattice, labels, res, tr, weyl)?;
    GreenFunctor::new(mackey, algebras)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn regular_representation_atoms_satisfy_axioms() {
        let k = Field::prime(5).unwrap();
        for n in [2, 3, 4, 6] {
            let lat = Lattice::new(n).unwrap();
            let s = orbit_action(&k, n);
            let (fp, _) = fixed_point(&k, &lat, &s, &names(n)).unwrap();
            assert!(fp.check_axioms().is_empty(), "FP n = {n}");
            let fq = fixed_quotient(&k, &lat, &s, &names(n)).unwrap();
            assert!(fq.check_axioms().is_empty(), "FQ n = {n}");
            assert!(fp.is_constant_module() && fq.is_constant_module());
            for &m in lat.divisors() {
                assert_eq!(fp.dim(m), n / m);
                assert_eq!(fq.dim(m), n / m);
            }
        }
    }

    #[test]
    fn modular_atoms_through_a_quotient_group() {
        // C_4 acting on K[C_2] in characteristic 2
        let k = Field::prime(2).unwrap();
        let lat = Lattice::new(4).unwrap();
        let s = orbit_action(&k, 2);
        let (fp, _) = fixed_point(&k, &lat, &s, &names(2)).unwrap();
        let fq = fixed_quotient(&k, &lat, &s, &names(2)).unwrap();
        assert!(fp.check_axioms().is_empty());
        assert!(fq.check_axioms().is_empty());
        assert_eq!(fp.dims(), vec![2, 2, 1]);
        assert_eq!(fq.dims(), vec![2, 2, 1]);
        assert!(fp.tr(2, 4).mul(fp.res(2, 4)).is_zero());
    }

    #[test]
    fn burnside_functor() {
        let k = Field::prime(7).unwrap();
        for n in [2, 3, 4, 6] {
            let lat = Lattice::new(n).unwrap();
            let b = burnside(&k, &lat).unwrap();
            assert!(b.mackey().check_axioms().is_empty(), "n = {n}");
            assert!(b.check_green().is_empty(), "n = {n}");
            assert!(!b.mackey().is_constant_module());
        }
    }
}
