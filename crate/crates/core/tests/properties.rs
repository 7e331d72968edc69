use std::sync::Arc;

use proptest::prelude::*;

use kmdual_core::algebra::Algebra;
use kmdual_core::algebra::{product, validate_algebra, AlgebraRef};
use kmdual_core::bar::{compare_structure, hochschild_direct, reduced_bar};
use kmdual_core::certify::algebra_cohomology;
use kmdual_core::graded::{betti_numbers, dual_complex, truncate_complex};
use kmdual_core::linalg::{eliminate, Matrix};
use kmdual_core::module::{left_regular, validate_module};
use kmdual_core::morita::{count_simples, ext_dims, gamma, injective_cogenerator, opposite_to_gamma, unit_map};
use kmdual_core::morphism::is_isomorphism;
use kmdual_core::random::{
    degree_one_element, invertible_matrix, random_basis_change, random_complex, random_graded_algebra,
    random_module_basis_change, random_ordinary_module, rng, scalar,
};
use kmdual_core::twisting::Twisted;
use kmdual_core::{Field, Scalar};

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::prime(5).unwrap()),
        Just(Field::prime(101).unwrap())
    ]
}

fn ordinary() -> impl Strategy<Value = &'static str> {
    prop_oneof![
        Just("k"),
        Just("kxk"),
        Just("dual_numbers"),
        Just("upper_tri_2"),
        Just("mat2")
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(seed in any::<u64>(), field in fields()) {
        let mut r = rng(seed);
        let (a, b, c) = (scalar(&mut r, field), scalar(&mut r, field), scalar(&mut r, field));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn rank_nullity(seed in any::<u64>(), field in fields(), rows in 0usize..5, cols in 0usize..5) {
        let mut r = rng(seed);
        let entries: Vec<Vec<Scalar>> = (0..rows).map(|_| (0..cols).map(|_| scalar(&mut r, field)).collect()).collect();
        let m = Matrix::from_rows(field, entries, cols).unwrap();
        let e = eliminate(&m);
        prop_assert_eq!(e.kernel_basis.len() + m.rank(), cols);
        for v in &e.kernel_basis {
            prop_assert!(m.apply(v).unwrap().iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), field in fields(), n in 0usize..5) {
        let m = invertible_matrix(&mut rng(seed), field, n);
        let inv = m.inverse().unwrap();
        prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(field, n));
        prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(field, n));
    }

    #[test]
    fn basis_change_preserves_cohomology(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_graded_algebra(&mut r, Field::Rational).unwrap();
        let b = random_basis_change(&mut r, &a).unwrap();
        prop_assert!(validate_algebra(&b).is_ok());
        let ha = algebra_cohomology(a.into_ref(), -3, 3).unwrap();
        let hb = algebra_cohomology(b.into_ref(), -3, 3).unwrap();
        prop_assert_eq!(ha, hb);
    }

    #[test]
    fn twists_undo(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_graded_algebra(&mut r, Field::Rational).unwrap().into_ref();
        let b = reduced_bar(a, 2).as_ref();
        let xi = degree_one_element(&mut r, b.as_ref());
        let there: AlgebraRef = Arc::new(Twisted::new(b.clone(), xi.clone()).unwrap());
        prop_assert!(validate_algebra(there.as_ref()).is_ok());
        let back = Twisted::new(there, xi.neg()).unwrap();
        prop_assert!(compare_structure(&back, b.as_ref()).is_ok());
    }

    #[test]
    fn truncation_dualizes(seed in any::<u64>(), n in -2i32..2, len in 1i32..4) {
        let c = random_complex(&mut rng(seed), Field::Rational, -2, 2).unwrap();
        let m = n + len;
        let left = dual_complex(&truncate_complex(&c, n, m).unwrap());
        let right = truncate_complex(&dual_complex(&c), -m, -n).unwrap();
        prop_assert_eq!(betti_numbers(&left, -4, 4), betti_numbers(&right, -4, 4));
        let inside = betti_numbers(&c, n + 1, m - 1);
        let trunc = betti_numbers(&truncate_complex(&c, n, m).unwrap(), n + 1, m - 1);
        prop_assert_eq!(inside, trunc);
    }

    #[test]
    fn simples_are_additive(x in ordinary(), y in ordinary(), seed in any::<u64>()) {
        let q = Field::Rational;
        let a = kmdual_core::algebra::builtin(x, q).unwrap();
        let b = kmdual_core::algebra::builtin(y, q).unwrap();
        let p = product(&a, &b).unwrap();
        let p = random_basis_change(&mut rng(seed), &p).unwrap();
        prop_assert_eq!(count_simples(&p).unwrap(), count_simples(&a).unwrap() + count_simples(&b).unwrap());
    }

    #[test]
    fn ext_is_basis_independent(name in ordinary(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = kmdual_core::algebra::builtin(name, Field::Rational).unwrap().into_ref();
        let m = random_ordinary_module(&mut r, a.clone(), 3).unwrap();
        let n = random_module_basis_change(&mut r, &m).unwrap();
        prop_assert!(validate_module(&n).is_ok());
        prop_assert_eq!(ext_dims(a.as_ref(), &m, &m, 2).unwrap(), ext_dims(a.as_ref(), &n, &n, 2).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn koszul_dual_cohomology_is_basis_independent(name in ordinary(), seed in any::<u64>()) {
        let q = Field::Rational;
        let a = kmdual_core::algebra::builtin(name, q).unwrap();
        let b = random_basis_change(&mut rng(seed), &a).unwrap();
        let ea = hochschild_direct(&left_regular(a.into_ref()), 2).unwrap();
        let eb = hochschild_direct(&left_regular(b.into_ref()), 2).unwrap();
        prop_assert_eq!(ea.dim(), eb.dim());
        let ha = algebra_cohomology(Arc::new(ea), 0, 1).unwrap();
        let hb = algebra_cohomology(Arc::new(eb), 0, 1).unwrap();
        prop_assert_eq!(ha, hb);
    }

    #[test]
    fn morita_unit_after_basis_change(name in prop_oneof![Just("upper_tri_2"), Just("kxk"), Just("mat2")], seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = kmdual_core::algebra::builtin(name, Field::Rational).unwrap();
        let a = random_basis_change(&mut r, &a).unwrap().into_ref();
        let g = gamma(Arc::new(injective_cogenerator(a.clone()).unwrap())).unwrap();
        prop_assert!(is_isomorphism(&opposite_to_gamma(&g).unwrap()));
        let n = random_ordinary_module(&mut r, a, 4).unwrap();
        let (_, _, report) = unit_map(&g, &n).unwrap();
        prop_assert!(report.is_ok(), "{}", report);
    }
}

#[test]
fn matrix_block_in_a_random_basis_splits() {
    let q = Field::Rational;
    let a = kmdual_core::algebra::builtin("kxk", q).unwrap();
    let b = kmdual_core::algebra::builtin("mat2", q).unwrap();
    let p = random_basis_change(&mut rng(11078669231129683119), &product(&a, &b).unwrap()).unwrap();
    assert_eq!(count_simples(&p).unwrap(), 3);
}
