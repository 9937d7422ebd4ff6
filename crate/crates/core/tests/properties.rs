//! Randomized invariants: field axioms for the cyclotomic arithmetic,
//! root-of-unity integer identities, Weyl-group facts, and agreement of the
//! two quantum-dimension evaluation paths on random dominant weights.

use hilbqdim_core::cyclo::{cyclotomic_polynomial, CycloField, CycloNum};
use hilbqdim_core::fock::z_coefficient;
use hilbqdim_core::qdim::{quantum_dimension, quantum_dimension_via_character, weyl_dimension};
use hilbqdim_core::rootsys::{RootSystem, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn small_labels() -> impl Strategy<Value = RootSystem> {
    prop::sample::select(vec!["A1", "A2", "A3", "A4", "D4", "D5", "E6"])
        .prop_map(|s| RootSystem::from_label(s).unwrap())
}

/// A random element of Q(ζ_m) with small integer coordinates.
fn cyclo_in(field: &CycloField, coords: &[i64]) -> CycloNum {
    let mut acc = field.zero();
    for (i, &c) in coords.iter().enumerate() {
        field.add_assign(
            &mut acc,
            &field.mul_int(&field.zeta_pow(i as i64), &BigInt::from(c)),
        );
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(
        m in prop::sample::select(vec![6u64, 8, 14, 26]),
        a in prop::collection::vec(-4i64..=4, 4),
        b in prop::collection::vec(-4i64..=4, 4),
        c in prop::collection::vec(-4i64..=4, 4),
    ) {
        let field = CycloField::new(m);
        let (x, y, z) = (cyclo_in(&field, &a), cyclo_in(&field, &b), cyclo_in(&field, &c));
        // Associativity and distributivity.
        prop_assert_eq!(
            field.mul(&field.mul(&x, &y), &z),
            field.mul(&x, &field.mul(&y, &z))
        );
        prop_assert_eq!(
            field.mul(&x, &field.add(&y, &z)),
            field.add(&field.mul(&x, &y), &field.mul(&x, &z))
        );
        // Inverses of nonzero elements.
        if !x.is_zero() {
            let inv = field.inv(&x).expect("nonzero element is invertible");
            prop_assert_eq!(field.mul(&x, &inv), field.one());
        }
        // Canonical form stays below the degree of the minimal polynomial.
        prop_assert!(field.mul(&x, &y).coeffs().len() <= field.degree());
    }

    #[test]
    fn root_of_unity_integer_identities(rs in small_labels(), k in 1i64..40) {
        let m = rs.conductor() as i64;
        let l = rs.dual_coxeter() as i64 + 1;
        let field = CycloField::new(rs.conductor());
        prop_assert_eq!(field.q_integer(k + m), field.q_integer(k));
        prop_assert_eq!(field.q_integer(l - k), field.q_integer(k));
        prop_assert_eq!(field.q_integer(-k), field.neg(&field.q_integer(k)));
        prop_assert!(field.q_integer(l).is_zero());
    }

    #[test]
    fn minimal_polynomial_annihilates_the_generator(
        m in prop::sample::select(vec![6u64, 10, 12, 16, 26, 38]),
    ) {
        let field = CycloField::new(m);
        let phi = cyclotomic_polynomial(m);
        let mut acc = field.zero();
        for (i, c) in phi.iter().enumerate() {
            field.add_assign(&mut acc, &field.mul_int(&field.zeta_pow(i as i64), c));
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn dominant_representative_is_dominant_and_idempotent(
        rs in small_labels(),
        coords in prop::collection::vec(-6i64..=6, 8),
    ) {
        let w = Weight(coords[..rs.rank()].to_vec());
        let d = rs.dominant_representative(&w);
        prop_assert!(rs.is_dominant(&d));
        prop_assert_eq!(rs.dominant_representative(&d), d);
    }

    #[test]
    fn cartan_form_is_positive_definite(
        rs in small_labels(),
        coords in prop::collection::vec(-8i64..=8, 8),
    ) {
        let x = &coords[..rs.rank()];
        let q = rs.q_norm(x);
        prop_assert!(q >= 0);
        prop_assert_eq!(q == 0, x.iter().all(|&c| c == 0));
    }

    #[test]
    fn both_quantum_dimension_paths_agree(
        rs in small_labels(),
        coords in prop::collection::vec(0i64..=2, 8),
    ) {
        let lambda = Weight(coords[..rs.rank()].to_vec());
        // Keep the character path affordable.
        if weyl_dimension(&rs, &lambda).unwrap() <= BigInt::from(20_000) {
            let field = hilbqdim_core::qdim::field_for(&rs);
            let direct = quantum_dimension(&rs, &field, &lambda).unwrap();
            let via = quantum_dimension_via_character(&rs, &field, &lambda, 1_000_000).unwrap();
            prop_assert_eq!(direct, via);
        }
    }

    #[test]
    fn fock_coefficients_are_nonnegative_integers(
        rs in small_labels(),
        v0 in 0i64..=4,
        tail in prop::collection::vec(-2i64..=6, 8),
    ) {
        let mut v = vec![v0];
        v.extend_from_slice(&tail[..rs.rank()]);
        let z = z_coefficient(&rs, &v).unwrap();
        prop_assert!(z >= BigInt::zero());
    }

    #[test]
    fn quantum_dimensions_are_rational_integers_on_dominants(
        rs in small_labels(),
        coords in prop::collection::vec(0i64..=3, 8),
    ) {
        // At this root of unity every quantum dimension lands in Z.
        let lambda = Weight(coords[..rs.rank()].to_vec());
        let field = hilbqdim_core::qdim::field_for(&rs);
        let d = quantum_dimension(&rs, &field, &lambda).unwrap();
        let r: BigRational = d.as_rational().expect("rational value");
        prop_assert!(r.is_integer(), "got {}", r);
    }
}
