//! Seeded random Mackey and Green functors, and targeted corruptions for
//! negative controls.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::CommAlgebra;
use crate::atoms::{burnside, fixed_point, fixed_point_green, fixed_quotient, orbit_action};
use crate::error::{usage, Result};
use crate::field::{Field, FieldKind, Scalar};
use crate::green::{constant_functor, GreenFunctor};
use crate::lattice::Lattice;
use crate::linalg::{is_zero_vector, Matrix};
use crate::mackey::MackeyFunctor;

/// Building blocks for random functors. Orbits are `C_n/C_k`, given by `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    FixedPoint { orbit: usize },
    FixedQuotient { orbit: usize },
    Burnside,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(field: &Field, rng: &mut impl Rng) -> Scalar {
    match field.kind() {
        FieldKind::Prime { p } => field.from_int(rng.gen_range(0..*p) as i64),
        FieldKind::Extension { p, .. } => {
            let coeffs: Vec<u64> = (0..field.degree()).map(|_| rng.gen_range(0..*p)).collect();
            field.from_coeffs(&coeffs).expect("coefficients in range")
        }
        FieldKind::Rationals => field.from_int(rng.gen_range(-3..=3)),
    }
}

pub fn random_invertible(field: &Field, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let m = Matrix::from_fn(field, n, n, |_, _| random_scalar(field, rng));
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_base_change(lattice: &Lattice, field: &Field, dims: &[usize], rng: &mut impl Rng) -> BTreeMap<usize, Matrix> {
    lattice.divisors().iter().zip(dims).map(|(&m, &d)| (m, random_invertible(field, d, rng))).collect()
}

/// A permutation module `K[C_n/C_k]` in random coordinates.
fn conjugated_orbit(field: &Field, lattice: &Lattice, orbit: usize, rng: &mut impl Rng) -> Matrix {
    let size = lattice.n() / orbit;
    let s = orbit_action(field, size);
    let p = random_invertible(field, size, rng);
    p.mul(&s).mul(&p.inverse().expect("invertible"))
}

fn names(size: usize) -> Vec<String> {
    (0..size).map(|i| format!("e{i}")).collect()
}

pub fn atom_functor(field: &Field, lattice: &Lattice, atom: Atom, rng: &mut impl Rng) -> Result<MackeyFunctor> {
    match atom {
        Atom::FixedPoint { orbit } | Atom::FixedQuotient { orbit } => {
            if !lattice.contains(orbit) {
                return usage(format!("{orbit} does not divide {}", lattice.n()));
            }
            let s = conjugated_orbit(field, lattice, orbit, rng);
            let nm = names(s.rows());
            if matches!(atom, Atom::FixedPoint { .. }) {
                Ok(fixed_point(field, lattice, &s, &nm)?.0)
            } else {
                fixed_quotient(field, lattice, &s, &nm)
            }
        }
        Atom::Burnside => Ok(burnside(field, lattice)?.mackey().clone()),
    }
}

/// Direct sum of the given atoms, followed by a random levelwise base change
/// when `base_change` is set.
pub fn random_mackey_from_atoms(field: &Field, lattice: &Lattice, atoms: &[Atom], base_change: bool, seed: u64) -> Result<MackeyFunctor> {
    if atoms.is_empty() {
        return usage("at least one atom is needed");
    }
    let mut rng = rng(seed);
    let mut acc = atom_functor(field, lattice, atoms[0], &mut rng)?;
    for &a in &atoms[1..] {
        acc = acc.direct_sum(&atom_functor(field, lattice, a, &mut rng)?)?;
    }
    if base_change {
        let p = random_base_change(lattice, field, &acc.dims(), &mut rng);
        acc = acc.transport(&p)?;
    }
    Ok(acc)
}

fn random_atoms(lattice: &Lattice, count: usize, with_burnside: bool, rng: &mut impl Rng) -> Vec<Atom> {
    let divs = lattice.divisors();
    (0..count)
        .map(|_| {
            let orbit = *divs.choose(rng).expect("nonempty");
            match rng.gen_range(0..if with_burnside { 5 } else { 2 }) {
                0 => Atom::FixedPoint { orbit },
                1 => Atom::FixedQuotient { orbit },
                _ if with_burnside => Atom::Burnside,
                _ => Atom::FixedPoint { orbit },
            }
        })
        .collect()
}

/// A random Mackey functor with between 1 and `max_atoms` summands.
pub fn random_mackey(field: &Field, lattice: &Lattice, max_atoms: usize, seed: u64) -> Result<MackeyFunctor> {
    let mut r = rng(seed);
    let count = r.gen_range(1..=max_atoms.max(1));
    let atoms = random_atoms(lattice, count, true, &mut r);
    random_mackey_from_atoms(field, lattice, &atoms, true, r.gen())
}

/// A random module over the constant functor: fixed-point and fixed-quotient
/// atoms only.
pub fn random_constant_module(field: &Field, lattice: &Lattice, max_atoms: usize, seed: u64) -> Result<MackeyFunctor> {
    let mut r = rng(seed);
    let count = r.gen_range(1..=max_atoms.max(1));
    let atoms = random_atoms(lattice, count, false, &mut r);
    random_mackey_from_atoms(field, lattice, &atoms, true, r.gen())
}

/// Dual numbers `K[ε]/ε²`.
fn dual_numbers(field: &Field) -> CommAlgebra {
    let k = field;
    CommAlgebra::from_products(k, 2, vec![k.one(), k.zero()], |i, j| match (i, j) {
        (0, 0) => vec![k.one(), k.zero()],
        (0, 1) | (1, 0) => vec![k.zero(), k.one()],
        _ => vec![k.zero(), k.zero()],
    })
}

fn random_green_atom(field: &Field, lattice: &Lattice, rng: &mut impl Rng) -> Result<GreenFunctor> {
    let divs = lattice.divisors();
    match rng.gen_range(0..4) {
        0 => {
            let orbit = *divs.choose(rng).expect("nonempty");
            let size = lattice.n() / orbit;
            let alg = CommAlgebra::split(field, size);
            Ok(fixed_point_green(lattice, &alg, &orbit_action(field, size), &names(size))?.0)
        }
        1 => {
            let orbit = *divs.choose(rng).expect("nonempty");
            let size = lattice.n() / orbit;
            let alg = dual_numbers(field).tensor(&CommAlgebra::split(field, size));
            let s = Matrix::identity(field, 2).kron(&orbit_action(field, size));
            Ok(fixed_point_green(lattice, &alg, &s, &names(2 * size))?.0)
        }
        2 => Ok(burnside(field, lattice)?),
        _ => {
            let alg = if rng.gen_bool(0.5) { dual_numbers(field) } else { CommAlgebra::split(field, rng.gen_range(1..=2)) };
            Ok(constant_functor(&alg, &names(alg.dim()), lattice)?.0)
        }
    }
}

/// A random Green functor: a product of one or two ring atoms in random
/// levelwise coordinates.
pub fn random_green(field: &Field, lattice: &Lattice, seed: u64) -> Result<GreenFunctor> {
    random_green_with(field, lattice, 2, seed)
}

/// As [`random_green`] with at most `max_factors` ring atoms.
pub fn random_green_with(field: &Field, lattice: &Lattice, max_factors: usize, seed: u64) -> Result<GreenFunctor> {
    let mut r = rng(seed);
    let mut g = random_green_atom(field, lattice, &mut r)?;
    for _ in 1..max_factors.max(1) {
        if r.gen_bool(0.5) {
            g = g.product(&random_green_atom(field, lattice, &mut r)?)?;
        }
    }
    let p = random_base_change(lattice, field, &g.mackey().dims(), &mut r);
    g.transport(&p)
}

fn perturb(field: &Field, m: &mut Matrix, i: usize, j: usize, rng: &mut impl Rng) {
    let mut c = random_scalar(field, rng);
    while field.is_zero(&c) {
        c = random_scalar(field, rng);
    }
    let v = field.add(m.get(i, j), &c);
    m.set(i, j, v);
}

/// Perturb one structure map so that some Mackey axiom fails; returns the
/// corrupted functor and a description of the change.
///
/// A transfer entry is preferred whose row meets a nonzero column of the
/// restriction, so the double coset identity sees it. Next comes a
/// restriction entry, and as a last resort the top Weyl action is changed.
pub fn corrupt_mackey(f: &MackeyFunctor, seed: u64) -> Result<(MackeyFunctor, String)> {
    let mut r = rng(seed);
    let k = f.field().clone();
    let mut pairs = f.lattice().covering_pairs().to_vec();
    pairs.shuffle(&mut r);
    for &(d, m) in &pairs {
        let res = f.res(d, m);
        let cols: Vec<usize> = (0..res.cols()).filter(|&i| !is_zero_vector(&k, &res.col(i))).collect();
        if let Some(&i) = cols.choose(&mut r) {
            let j = r.gen_range(0..f.dim(d));
            let mut g = f.clone();
            let mut t = f.tr(d, m).clone();
            perturb(&k, &mut t, i, j, &mut r);
            g.set_tr(d, m, t);
            return Ok((g, format!("tr[{m}←{d}] entry ({i}, {j})")));
        }
    }
    for &(d, m) in &pairs {
        let tr = f.tr(d, m);
        let rows: Vec<usize> = (0..tr.rows()).filter(|&j| !is_zero_vector(&k, tr.row(j))).collect();
        if let Some(&j) = rows.choose(&mut r) {
            let i = r.gen_range(0..f.dim(d));
            let mut g = f.clone();
            let mut res = f.res(d, m).clone();
            perturb(&k, &mut res, i, j, &mut r);
            g.set_res(d, m, res);
            return Ok((g, format!("res[{d}←{m}] entry ({i}, {j})")));
        }
    }
    let n = f.n();
    if f.dim(n) == 0 {
        return usage("functor is zero at the top level; nothing to corrupt");
    }
    let mut g = f.clone();
    let mut w = f.weyl(n).clone();
    perturb(&k, &mut w, 0, 0, &mut r);
    g.set_weyl(n, w);
    Ok((g, format!("weyl[{n}] entry (0, 0)")))
}

/// Corrupt the ring structure of a Green functor: scale the product at a
/// level with nonzero restriction when a scalar `c ∉ {0, 1}` exists, or else
/// make one product asymmetric.
pub fn corrupt_green(g: &GreenFunctor, seed: u64) -> Result<(GreenFunctor, String)> {
    let mut r = rng(seed);
    let k = g.field().clone();
    let lat = g.lattice().clone();
    let scalable: Vec<usize> = lat
        .covering_pairs()
        .iter()
        .filter(|&&(d, m)| !g.mackey().res(d, m).is_zero() && g.dim(m) > 0 && g.dim(d) > 0)
        .map(|&(_, m)| m)
        .collect();
    let has_scalar = k.cardinality().is_none_or(|q| q > 2);
    if has_scalar {
        if let Some(&m) = scalable.choose(&mut r) {
            let c = loop {
                let c = random_scalar(&k, &mut r);
                if !k.is_zero(&c) && !k.is_one(&c) {
                    break c;
                }
            };
            let a = g.algebra(m);
            let left = (0..a.dim()).map(|i| a.left(i).scale(&c)).collect();
            let mut out = g.clone();
            out.set_algebra(m, CommAlgebra::new(&k, left, a.unit().clone()));
            return Ok((out, format!("level {m} product scaled by {}", k.fmt_scalar(&c))));
        }
    }
    let levels: Vec<usize> = lat.divisors().iter().copied().filter(|&m| g.dim(m) > 0).collect();
    let m = *levels.choose(&mut r).ok_or_else(|| crate::Error::Usage("zero functor".into()))?;
    let a = g.algebra(m);
    let dim = a.dim();
    let mut left: Vec<Matrix> = (0..dim).map(|i| a.left(i).clone()).collect();
    let what = if dim >= 2 {
        let i = r.gen_range(0..dim);
        let j = (i + 1 + r.gen_range(0..dim - 1)) % dim;
        perturb(&k, &mut left[i], 0, j, &mut r);
        format!("level {m}: product e{i}·e{j} changed but not e{j}·e{i}")
    } else {
        left[0] = Matrix::zeros(&k, 1, 1);
        format!("level {m}: product set to zero")
    };
    let mut out = g.clone();
    out.set_algebra(m, CommAlgebra::new(&k, left, a.unit().clone()));
    Ok((out, what))
}
