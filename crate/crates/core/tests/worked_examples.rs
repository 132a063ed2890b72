use green_etale::boxprod::{box_product, relative_box};
use green_etale::etale::analyze_extension;
use green_etale::extension::{build_extension, ExtensionSpec, GaloisExtension};
use green_etale::green::{constant_field, fix_functor, NormRule};
use green_etale::linalg::unit_vector;
use green_etale::Field;

fn kummer(p: u64, n: usize, a: i64, z: i64) -> GaloisExtension {
    let k = Field::prime(p).unwrap();
    build_extension(&k, &ExtensionSpec::Kummer { n, a: k.from_int(a), zeta: k.from_int(z) }).unwrap()
}

#[test]
fn fixed_point_transfers_order_four() {
    let ext = kummer(5, 4, 2, 2);
    let (t, rule) = fix_functor(&ext).unwrap();
    let k = ext.base().clone();
    // level 2 has basis 1, α²; tr_{4←2}(α²) = α² + ζ²α² = 0
    let alpha2 = unit_vector(&k, 2, 1);
    assert!(t.mackey().tr(2, 4).apply(&alpha2).iter().all(|c| k.is_zero(c)));
    assert_eq!(t.mackey().tr_map(1, 4).apply(&unit_vector(&k, 4, 0)), vec![k.from_int(4)]);
    assert!(rule.check(&t).is_empty());
    assert_eq!(rule.evaluate(&t, 2, 4, &alpha2).unwrap(), vec![k.from_int(-2)]);
}

#[test]
fn relative_and_absolute_boxes_agree_over_prime_fields() {
    for ext in [kummer(5, 2, 2, 4), kummer(7, 3, 3, 2)] {
        let (t, _) = fix_functor(&ext).unwrap();
        let base = constant_field(ext.base(), t.lattice());
        let a = box_product(&t, &t).unwrap();
        let r = relative_box(&t, &base).unwrap();
        assert!(green_etale::boxprod::compare(&a, &r).is_empty());
    }
}

#[test]
fn norm_route_independence() {
    let ext = kummer(5, 2, 2, 4);
    let (t, _) = fix_functor(&ext).unwrap();
    let b = box_product(&t, &t).unwrap();
    let k = b.field().clone();
    for x in [vec![1, 2, 0, 3], vec![0, 1, 1, 0], vec![4, 0, 0, 1]] {
        let x: Vec<_> = x.into_iter().map(|c| k.from_int(c)).collect();
        let nx = green_etale::boxprod::norm_on_c2_box(&b, (NormRule::FixedPoint, NormRule::FixedPoint), &x).unwrap();
        let tau = b.functor().weyl(1).apply(&x);
        assert_eq!(b.res(1, 2, &nx), b.mul(1, &x, &tau).unwrap());
    }
}

#[test]
fn order_three_has_two_levels() {
    let an = analyze_extension(&kummer(7, 3, 3, 2)).unwrap();
    assert_eq!(an.verdict.levels.len(), 2);
    assert!(an.verdict.overall);
}
