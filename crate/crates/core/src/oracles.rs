//! Independent constructions of box products used to cross-check the
//! general engine.

use std::collections::BTreeMap;

use crate::algebra::CommAlgebra;
use crate::boxprod::{box3, BoxFactor, BoxProduct, Engine};
use crate::error::{usage, Error, Result};
use crate::field::Scalar;
use crate::green::GreenFunctor;
use crate::linalg::{unit_vector, vec_add, Matrix, Vector};
use crate::mackey::MackeyFunctor;
use crate::presented::PresentedLevel;

/// Lewis's presentation for a group of prime order `p`:
///
/// `(M □ N)(C_p/C_p) = (M_p ⊗ N_p ⊕ (M_1 ⊗ N_1)_{C_p}) / FR`
///
/// written down directly with Kronecker products of the factor matrices.
pub fn lewis_oracle(left: &BoxFactor, right: &BoxFactor) -> Result<BoxProduct> {
    let (a, b) = (&left.mackey, &right.mackey);
    let lat = a.lattice();
    if !lat.is_prime_order() {
        return usage("the closed form applies to groups of prime order");
    }
    let engine = Engine::new(left, right)?;
    let k = a.field().clone();
    let p = lat.n();
    let (ap, a1, bp, b1) = (a.dim(p), a.dim(1), b.dim(p), b.dim(1));
    let pure = ap * bp;
    let free = a1 * b1;
    let w1 = a.weyl(1).kron(b.weyl(1));
    let orbit_sum = (1..p).fold(Matrix::identity(&k, free), |acc, j| acc.add(&w1.pow(j)));

    // relation columns: Weyl coinvariance, then both Frobenius reciprocities
    let weyl_rel = Matrix::zeros(&k, pure, free).vstack(&w1.sub(&Matrix::identity(&k, free)));
    let fr_left = a.tr(1, p).kron(&Matrix::identity(&k, bp)).vstack(&Matrix::identity(&k, a1).kron(b.res(1, p)).scale(&k.from_int(-1)));
    let fr_right = Matrix::identity(&k, ap).kron(b.tr(1, p)).vstack(&a.res(1, p).kron(&Matrix::identity(&k, b1)).scale(&k.from_int(-1)));
    let rel = weyl_rel.hstack(&fr_left).hstack(&fr_right);

    let mut levels = BTreeMap::new();
    levels.insert(1, PresentedLevel::new(1, &k, engine.labels(1), engine.names(1), &[]));
    levels.insert(p, PresentedLevel::new(p, &k, engine.labels(p), engine.names(p), &rel.col_vectors()));

    let res_amb = a.res(1, p).kron(b.res(1, p)).hstack(&orbit_sum);
    let tr_amb = Matrix::zeros(&k, pure, free).vstack(&Matrix::identity(&k, free));
    let weyl_amb = a.weyl(p).kron(b.weyl(p)).block_diag(&w1);

    let (l1, lp) = (&levels[&1], &levels[&p]);
    for row in lp.relation_rows() {
        if !l1.vanishes(&res_amb.apply(&row)) || !lp.vanishes(&weyl_amb.apply(&row)) {
            return Err(Error::Descent("structure map does not respect the prime-order relations".into()));
        }
    }
    let res = lp_reduce(l1, &res_amb, lp);
    let tr = lp_reduce(lp, &tr_amb, l1);
    let weyl_p = lp.canonicalize_matrix().mul(&weyl_amb).mul(&lp.lift_matrix());
    let labels = BTreeMap::from([(1, l1.basis_names()), (p, lp.basis_names())]);
    let mackey = MackeyFunctor::new(
        &k,
        lat,
        labels,
        BTreeMap::from([((1, p), res)]),
        BTreeMap::from([((1, p), tr)]),
        BTreeMap::from([(1, w1.clone()), (p, weyl_p)]),
    )?;

    let green = match (&left.green, &right.green) {
        (Some(g), Some(h)) => {
            let t1 = g.algebra(1).tensor(h.algebra(1));
            let tp = g.algebra(p).tensor(h.algebra(p));
            let rr = a.res(1, p).kron(b.res(1, p));
            let split = |v: &[Scalar]| (v[..pure].to_vec(), v[pure..].to_vec());
            let mul = |u: &[Scalar], v: &[Scalar]| -> Vector {
                let (up, uc) = split(u);
                let (vp, vc) = split(v);
                let top = tp.mul(&up, &vp);
                let mut cls = t1.mul(&rr.apply(&up), &vc);
                cls = vec_add(&k, &cls, &t1.mul(&uc, &rr.apply(&vp)));
                cls = vec_add(&k, &cls, &t1.mul(&uc, &orbit_sum.apply(&vc)));
                top.into_iter().chain(cls).collect()
            };
            let mut alg = BTreeMap::new();
            alg.insert(1, t1.clone());
            let total = pure + free;
            for row in lp.relation_rows() {
                for i in 0..total {
                    let e = unit_vector(&k, total, i);
                    if !lp.vanishes(&mul(&row, &e)) || !lp.vanishes(&mul(&e, &row)) {
                        return Err(Error::Descent("prime-order multiplication does not descend".into()));
                    }
                }
            }
            let reps: Vec<Vector> = (0..lp.dim()).map(|i| lp.lift(&unit_vector(&k, lp.dim(), i))).collect();
            let left_mats = reps
                .iter()
                .map(|x| Matrix::from_cols(&k, lp.dim(), &reps.iter().map(|y| lp.canonicalize(&mul(x, y))).collect::<Vec<_>>()))
                .collect();
            let mut unit = tp.unit().clone();
            unit.extend(std::iter::repeat_n(k.zero(), free));
            alg.insert(p, CommAlgebra::new(&k, left_mats, lp.canonicalize(&unit)));
            Some(GreenFunctor::new(mackey.clone(), alg)?)
        }
        _ => None,
    };
    Ok(BoxProduct::from_parts(engine, levels, mackey, green, false))
}

fn lp_reduce(target: &PresentedLevel, amb: &Matrix, source: &PresentedLevel) -> Matrix {
    target.canonicalize_matrix().mul(amb).mul(&source.lift_matrix())
}

/// `T □ T` as the coequalizer of the two actions
/// `T □ K^c □ T ⇉ T □ T` of the constant functor.
///
/// Scalars must form a prime field, where tensoring over `K` and over the
/// prime field agree.
pub fn coequalizer_oracle(t: &GreenFunctor, base: &GreenFunctor) -> Result<BoxProduct> {
    let k = t.field().clone();
    if !k.is_prime_field() {
        return usage("coequalizer presentation needs prime-field scalars");
    }
    if base.field() != &k || base.lattice() != t.lattice() || base.mackey().dims().iter().any(|&d| d != 1) {
        return usage("base must be the constant functor of the scalar field");
    }
    let lat = t.lattice().clone();
    let tm = t.mackey();
    let engine = Engine::new(&BoxFactor::green(t), &BoxFactor::green(t))?;
    let triple = box3(t, base, t)?;
    let inner_box = crate::boxprod::box_product(t, base)?;
    let outer = triple.engine();
    let base_one = |e: usize| base.unit(e)[0].clone();

    let mut levels = BTreeMap::new();
    for &m in lat.divisors() {
        let total = engine.layout(m).total();
        let olay = outer.layout(m);
        let mut lam_cols = Vec::new();
        let mut rho_cols = Vec::new();
        for (d, _, size) in olay.components() {
            let ib = inner_box.dim(d);
            let td = tm.dim(d);
            debug_assert_eq!(size, ib * td);
            let ilev = inner_box.level(d);
            let ilay = inner_box.engine().layout(d);
            for bi in 0..ib {
                let u = ilev.lift(&unit_vector(&k, ib, bi));
                for j in 0..td {
                    let y = unit_vector(&k, td, j);
                    let mut lam = vec![k.zero(); total];
                    let mut rho = vec![k.zero(); total];
                    for (e, off, _) in ilay.components() {
                        let te = tm.dim(e);
                        for i in 0..te {
                            let c = &u[off + i];
                            if k.is_zero(c) {
                                continue;
                            }
                            // coefficient of [e_i ⊗ r]_e, with r the unit of K^c(e)
                            let c = k.mul(c, &base_one(e));
                            let x = crate::linalg::vec_scale(&k, &c, &unit_vector(&k, te, i));
                            let mx = tm.tr_map(e, d).apply(&x);
                            lam = vec_add(&k, &lam, &engine.ambient_tensor(m, d, &mx, &y));
                            let ry = tm.res_map(e, d).apply(&y);
                            rho = vec_add(&k, &rho, &engine.ambient_tensor(m, e, &x, &ry));
                        }
                    }
                    lam_cols.push(lam);
                    rho_cols.push(rho);
                }
            }
        }
        let lam = Matrix::from_cols(&k, total, &lam_cols);
        let rho = Matrix::from_cols(&k, total, &rho_cols);
        let plain = PresentedLevel::new(m, &k, engine.labels(m), engine.names(m), &engine.relations(m));
        for row in triple.level(m).relation_rows() {
            if !plain.vanishes(&lam.apply(&row)) || !plain.vanishes(&rho.apply(&row)) {
                return Err(Error::Descent(format!("constant action does not descend at level {m}")));
            }
        }
        let mut rel = engine.relations(m);
        rel.extend(lam.sub(&rho).col_vectors());
        levels.insert(m, PresentedLevel::new(m, &k, engine.labels(m), engine.names(m), &rel));
    }
    let (functor, green) = engine.reduce(&levels)?;
    Ok(BoxProduct::from_parts(engine, levels, functor, green, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxprod::{box_mackey, box_product, compare, relative_box};
    use crate::extension::{build_extension, ExtensionSpec};
    use crate::field::Field;
    use crate::green::{constant_field, fix_functor};
    use crate::lattice::Lattice;

    fn kummer_fix(p: u64, n: usize, a: i64, z: i64) -> GreenFunctor {
        let k = Field::prime(p).unwrap();
        let ext = build_extension(&k, &ExtensionSpec::Kummer { n, a: k.from_int(a), zeta: k.from_int(z) }).unwrap();
        fix_functor(&ext).unwrap().0
    }

    #[test]
    fn lewis_matches_engine_on_green_functors() {
        let k2 = Field::prime(2).unwrap();
        let ascii = fix_functor(&build_extension(&k2, &ExtensionSpec::ArtinSchreier { a: k2.one() }).unwrap()).unwrap().0;
        for t in [ascii, kummer_fix(5, 2, 2, 4), kummer_fix(7, 3, 3, 2)] {
            let b = box_product(&t, &t).unwrap();
            let l = lewis_oracle(&BoxFactor::green(&t), &BoxFactor::green(&t)).unwrap();
            assert_eq!(compare(&b, &l), Vec::<String>::new());
        }
    }

    #[test]
    fn lewis_matches_engine_on_mackey_functors() {
        let k = Field::prime(3).unwrap();
        let lat = Lattice::new(3).unwrap();
        let names: Vec<String> = (0..3).map(|i| format!("e{i}")).collect();
        let s = crate::atoms::orbit_action(&k, 3);
        let fp = crate::atoms::fixed_point(&k, &lat, &s, &names).unwrap().0;
        let fq = crate::atoms::fixed_quotient(&k, &lat, &s, &names).unwrap();
        let b = box_mackey(&fp, &fq).unwrap();
        let l = lewis_oracle(&BoxFactor::mackey(&fp), &BoxFactor::mackey(&fq)).unwrap();
        assert_eq!(compare(&b, &l), Vec::<String>::new());
    }

    #[test]
    fn coequalizer_matches_relative_box() {
        for t in [kummer_fix(5, 2, 2, 4), kummer_fix(5, 4, 2, 2), kummer_fix(7, 3, 3, 2)] {
            let base = constant_field(t.field(), t.lattice());
            let r = relative_box(&t, &base).unwrap();
            let c = coequalizer_oracle(&t, &base).unwrap();
            assert_eq!(compare(&r, &c), Vec::<String>::new());
        }
    }
}
