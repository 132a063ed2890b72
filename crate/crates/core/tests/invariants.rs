use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use green_etale::boxprod::{box_mackey, box_product, compare, symmetry_violations, BoxFactor};
use green_etale::lattice::Lattice;
use green_etale::linalg::{Matrix, Quotient};
use green_etale::modules::{eigen_decompose, fix_reconstruction};
use green_etale::oracles::lewis_oracle;
use green_etale::random::{random_constant_module, random_green, random_green_with, random_mackey};
use green_etale::Field;

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn order() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![2usize, 3, 4, 6])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, rng_seed: RngSeed::Fixed(0x6e7e_a1e5), ..ProptestConfig::default() })]

    #[test]
    fn prime_field_axioms(p in small_prime(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let k = Field::prime(p).unwrap();
        let (a, b, c) = (k.from_int(a), k.from_int(b), k.from_int(c));
        prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
        prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
        if !k.is_zero(&a) {
            prop_assert!(k.is_one(&k.mul(&a, &k.inv(&a).unwrap())));
        }
    }

    #[test]
    fn rank_nullity_and_canonical_forms(p in small_prime(), entries in prop::collection::vec(-5i64..5, 20)) {
        let k = Field::prime(p).unwrap();
        let m = Matrix::from_fn(&k, 4, 5, |i, j| k.from_int(entries[i * 5 + j]));
        prop_assert_eq!(m.rank() + m.kernel().len(), 5);
        let q = Quotient::keep_early(&k, 5, &m.row_vectors());
        prop_assert_eq!(q.dim(), 5 - m.rank());
        for row in m.row_vectors() {
            prop_assert!(q.is_zero(&row));
        }
        let v: Vec<_> = (0..5).map(|i| k.from_int(entries[i] + 1)).collect();
        let c = q.canonicalize(&v);
        prop_assert_eq!(q.canonicalize(&q.lift(&c)), c);
    }

    #[test]
    fn random_functors_are_valid(p in small_prime(), n in order(), seed in any::<u64>()) {
        let k = Field::prime(p).unwrap();
        let lat = Lattice::new(n).unwrap();
        prop_assert!(random_mackey(&k, &lat, 3, seed).unwrap().check_axioms().is_empty());
        prop_assert!(random_green(&k, &lat, seed).unwrap().check_green().is_empty());
    }

    #[test]
    fn boxes_of_random_functors(p in small_prime(), n in prop::sample::select(vec![2usize, 3, 4]), seed in any::<u64>()) {
        let k = Field::prime(p).unwrap();
        let lat = Lattice::new(n).unwrap();
        let a = random_green_with(&k, &lat, 1, seed).unwrap();
        let b = random_green_with(&k, &lat, 1, seed.wrapping_add(1)).unwrap();
        let bx = box_product(&a, &b).unwrap();
        prop_assert!(bx.functor().check_axioms().is_empty());
        prop_assert!(bx.green().unwrap().check_green().is_empty());
        prop_assert!(symmetry_violations(&bx).unwrap().is_empty());
    }

    #[test]
    fn lewis_agrees_for_prime_order(p in small_prime(), n in prop::sample::select(vec![2usize, 3, 5]), seed in any::<u64>()) {
        let k = Field::prime(p).unwrap();
        let lat = Lattice::new(n).unwrap();
        let a = random_mackey(&k, &lat, 2, seed).unwrap();
        let b = random_mackey(&k, &lat, 2, seed ^ 0x5555).unwrap();
        let engine = box_mackey(&a, &b).unwrap();
        let closed = lewis_oracle(&BoxFactor::mackey(&a), &BoxFactor::mackey(&b)).unwrap();
        prop_assert!(compare(&engine, &closed).is_empty());
    }

    #[test]
    fn eigen_projectors_and_reconstruction(n in prop::sample::select(vec![2usize, 3, 6]), seed in any::<u64>()) {
        // 3 generates F_7^×, so 3^{6/n} is a primitive n-th root
        let k = Field::prime(7).unwrap();
        let lat = Lattice::new(n).unwrap();
        let m = random_constant_module(&k, &lat, 3, seed).unwrap();
        let zeta = k.pow(&k.from_int(3), (6 / n) as u64);
        let dec = eigen_decompose(&m, &zeta).unwrap();
        prop_assert!(dec.violations().is_empty());
        let (fix, phi) = fix_reconstruction(&m).unwrap();
        prop_assert!(phi.verify_iso(&m, &fix).is_empty());
    }
}
