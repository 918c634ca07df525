//! Property tests for the arithmetic kernel: field axioms, ring axioms,
//! substitution, the Euler identity, and the text-format round trip.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use aracert::field::{Field, PrimeField, Rationals};
use aracert::groebner::{radical_equal, GbConfig, Ideal};
use aracert::poly::{MonomialOrder, Polynomial, Ring};
use aracert::segre::{CaseRecipe, CaseKind, CurveSpec};
use aracert::textform;

fn qring3() -> Arc<Ring<Rationals>> {
    Ring::new(
        Rationals,
        vec!["x0".into(), "x1".into(), "x2".into()],
        MonomialOrder::GrevLex,
    )
    .unwrap()
}

fn arb_rational() -> impl Strategy<Value = num::BigRational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rationals.from_fraction(n, d).unwrap())
}

fn arb_poly() -> impl Strategy<Value = Polynomial<Rationals>> {
    // Up to four terms of degree at most three each.
    let term = (0u16..=3, 0u16..=2, 0u16..=2, -9i64..=9);
    prop::collection::vec(term, 0..4).prop_map(|terms| {
        let ring = qring3();
        let terms = terms
            .into_iter()
            .map(|(a, b, c, k)| {
                (aracert::poly::Monomial(vec![a, b, c]), Rationals.from_i64(k))
            })
            .collect();
        Polynomial::from_terms(&ring, terms)
    })
}

proptest! {
    #[test]
    fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
        let q = Rationals;
        prop_assert_eq!(q.add(&a, &b), q.add(&b, &a));
        prop_assert_eq!(q.mul(&a, &b), q.mul(&b, &a));
        prop_assert_eq!(q.add(&q.add(&a, &b), &c), q.add(&a, &q.add(&b, &c)));
        prop_assert_eq!(q.mul(&q.mul(&a, &b), &c), q.mul(&a, &q.mul(&b, &c)));
        prop_assert_eq!(q.mul(&a, &q.add(&b, &c)), q.add(&q.mul(&a, &b), &q.mul(&a, &c)));
        prop_assert_eq!(q.add(&a, &q.neg(&a)), q.zero());
        if !q.is_zero(&a) {
            prop_assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
        }
    }

    #[test]
    fn prime_field_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
        let f = PrimeField::new(101).unwrap();
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn polynomial_ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(f.sub(&f).unwrap(), Polynomial::zero(f.ring()));
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(f in arb_poly(), g in arb_poly()) {
        let ring = qring3();
        let images = vec![
            textform::parse(&ring, "x1 + x2").unwrap(),
            textform::parse(&ring, "x0*x2").unwrap(),
            textform::parse(&ring, "x0 - 2*x1").unwrap(),
        ];
        let sum = f.add(&g).unwrap().substitute(&ring, &images).unwrap();
        prop_assert_eq!(
            sum,
            f.substitute(&ring, &images).unwrap().add(&g.substitute(&ring, &images).unwrap()).unwrap()
        );
        let prod = f.mul(&g).unwrap().substitute(&ring, &images).unwrap();
        prop_assert_eq!(
            prod,
            f.substitute(&ring, &images).unwrap().mul(&g.substitute(&ring, &images).unwrap()).unwrap()
        );
    }

    #[test]
    fn print_parse_round_trip(f in arb_poly()) {
        let ring = qring3();
        let text = textform::print(&f);
        let back = textform::parse(&ring, &text).unwrap();
        prop_assert_eq!(back, f);
    }

    // The Euler identity sum_k x_k dF/dx_k = d*F on random homogeneous forms.
    #[test]
    fn euler_identity(seed in 0u64..100, d in 1u16..=4) {
        use rand::SeedableRng;
        let ring = qring3();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_homogeneous(&ring, d, &mut rng);
        let mut euler = Polynomial::zero(&ring);
        for k in 0..3 {
            let xk = Polynomial::var(&ring, k).unwrap();
            euler = euler.add(&xk.mul(&f.partial_derivative(k).unwrap()).unwrap()).unwrap();
        }
        prop_assert_eq!(euler, f.scale(&Rationals.from_i64(d as i64)));
    }
}

#[test]
fn radical_equality_is_monotone_under_target_generators() {
    // Adding generators of the target to the candidate keeps radical
    // equality: checked on the conic case for every target generator.
    let recipe = CaseRecipe {
        kind: CaseKind::Conic,
        n: 2,
        m: 1,
        curve: CurveSpec::ConicStandard,
    };
    let case = recipe.build(PrimeField::new(32003).unwrap()).unwrap();
    let cfg = GbConfig::default();
    assert!(radical_equal(&case.target, &case.candidate, &cfg).unwrap());
    for extra in case.target.generators() {
        let mut gens = case.candidate.generators().to_vec();
        gens.push(extra.clone());
        let enlarged = Ideal::new(case.candidate.ring(), gens).unwrap();
        assert!(radical_equal(&case.target, &enlarged, &cfg).unwrap());
    }
}
