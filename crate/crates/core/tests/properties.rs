use aschbacher::classical::{standard_form, ClassicalSpec, Family};
use aschbacher::forms::OrthType;
use aschbacher::gf::{make_field, Felt, Mat};
use proptest::prelude::*;
use rand::SeedableRng;

fn field_params() -> impl Strategy<Value = (u32, u32)> {
    prop::sample::select(vec![(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (5, 2), (2, 8), (7, 3)])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms((p, e) in field_params(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = make_field(p, e).unwrap();
        let q = f.q();
        let (a, b, c) = (Felt((a % q) as u16), Felt((b % q) as u16), Felt((c % q) as u16));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.pow(a, q as u64), a);
    }

    #[test]
    fn matrix_laws((p, e) in field_params(), n in 1usize..5, seed in any::<u64>()) {
        let f = make_field(p, e).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = Mat::random(&f, n, n, &mut rng);
        let b = Mat::random(&f, n, n, &mut rng);
        let x = Mat::random_invertible(&f, n, &mut rng);
        prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        prop_assert_eq!(x.inverse().unwrap().mul(&a).mul(&x).trace(), a.trace());
        prop_assert_eq!(a.frobenius(1).mul(&b.frobenius(1)), a.mul(&b).frobenius(1));
    }

    #[test]
    fn witt_index_is_a_basis_invariant(idx in 0usize..6, seed in any::<u64>()) {
        let spec = [
            ClassicalSpec::new(Family::GO, 2, 3, 1).with_sign(OrthType::Plus),
            ClassicalSpec::new(Family::GO, 2, 3, 1).with_sign(OrthType::Minus),
            ClassicalSpec::new(Family::GO, 4, 2, 1).with_sign(OrthType::Minus),
            ClassicalSpec::new(Family::GO, 3, 5, 1),
            ClassicalSpec::new(Family::Sp, 4, 2, 1),
            ClassicalSpec::new(Family::GU, 2, 3, 2),
        ][idx].clone();
        let form = standard_form(&spec).unwrap().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = Mat::random_invertible(form.field(), form.dim(), &mut rng);
        let moved = form.change_basis(&x).unwrap();
        prop_assert_eq!(moved.witt_index().unwrap(), form.witt_index().unwrap());
        prop_assert!(moved.is_nondegenerate());
    }
}
