use std::cmp::Ordering;

use equimilnor::doubling::{check_reality, double_action, double_germ};
use equimilnor::equivariant::graded_milnor;
use equimilnor::group::{
    is_invariant, is_real, monomial_weight, orbit_length_oracle, shortest_orbit_length, AbelianGroup, ActionSpec,
    Character,
};
use equimilnor::poly::{default_names, jacobian_generators, parse_polynomial, LocalOrder, Monomial, Polynomial};
use equimilnor::standard_basis::{
    brute_force_mu_oracle, jacobian_standard_basis, milnor_number, mora_normal_form, Mu, Staircase,
    StandardBasisConfig,
};
use equimilnor::verification::invariant_monomials;
use equimilnor::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, n).prop_map(Monomial::new)
}

fn poly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(n, max_exp), -4i64..=4, 1i64..=3), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(n, terms.into_iter().map(|(m, a, b)| (m, rat(a, b))))
    })
}

/// Germs of order at least 3 with small integer coefficients.
fn germ(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(n, 5), -3i64..=3), 1..=5).prop_map(move |terms| {
        Polynomial::from_terms(
            n,
            terms
                .into_iter()
                .filter(|(m, _)| (3..=6).contains(&m.degree()))
                .map(|(m, c)| (m, rat(c, 1))),
        )
    })
}

fn triple<S: Strategy>(make: impl Fn() -> S) -> (S, S, S) {
    (make(), make(), make())
}

fn group() -> impl Strategy<Value = AbelianGroup> {
    prop::collection::vec(1u32..=6, 1..=2).prop_map(|o| AbelianGroup::new(o).unwrap())
}

fn action(n: usize) -> impl Strategy<Value = ActionSpec> {
    group().prop_flat_map(move |g| {
        let k = g.orders().len();
        prop::collection::vec(prop::collection::vec(0i64..12, k), n)
            .prop_map(move |rows| ActionSpec::from_rows(g.clone(), &rows).unwrap())
    })
}

/// An action together with an invariant germ built from its invariant
/// monomials.
fn invariant_pair(n: usize) -> impl Strategy<Value = (ActionSpec, Polynomial)> {
    action(n).prop_flat_map(move |a| {
        let monos = invariant_monomials(&a, 5);
        let len = monos.len().max(1);
        prop::collection::vec((0..len, -3i64..=3), 1..=4).prop_map(move |picks| {
            let f = Polynomial::from_terms(
                n,
                picks
                    .into_iter()
                    .filter(|_| !monos.is_empty())
                    .map(|(i, c)| (monos[i].clone(), rat(c, 1))),
            );
            (a.clone(), f)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms((a, b, c) in triple(|| poly(2, 3, 4))) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), Polynomial::zero(2));
        prop_assert_eq!(&a * &Polynomial::constant(2, rat(1, 1)), a.clone());
    }

    #[test]
    fn print_parse_round_trip(p in poly(3, 4, 6)) {
        let names = default_names(3);
        prop_assert_eq!(parse_polynomial(&p.format(&names), &names).unwrap(), p.clone());
        let custom: Vec<String> = ["u", "v1", "w_2"].iter().map(|s| s.to_string()).collect();
        prop_assert_eq!(parse_polynomial(&p.format(&custom), &custom).unwrap(), p);
    }

    #[test]
    fn local_order_is_a_multiplicative_total_order((a, b, c) in triple(|| monomial(3, 4))) {
        let o = LocalOrder::new(3);
        let ab = o.compare(&a, &b).unwrap();
        prop_assert_eq!(ab, o.compare(&b, &a).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)).unwrap(), ab);
        // Anti-graded: lower degree is greater.
        if a.degree() < b.degree() {
            prop_assert_eq!(ab, Ordering::Greater);
        }
        // A proper multiple is smaller.
        if !c.is_one() {
            prop_assert_eq!(o.compare(&a, &a.mul(&c)).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn leibniz_rule((f, g) in (poly(3, 3, 4), poly(3, 3, 4)), i in 0usize..3) {
        let lhs = (&f * &g).derivative(i);
        let rhs = &(&f.derivative(i) * &g) + &(&f * &g.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn character_group_laws(g in group(), seeds in prop::collection::vec(0i64..100, 6)) {
        let k = g.orders().len();
        let ch = |s: &[i64]| g.character_reduced(s).unwrap();
        let (a, b, c) = (ch(&seeds[0..k]), ch(&seeds[2..2 + k]), ch(&seeds[4..4 + k]));
        prop_assert_eq!(g.add(&a, &b), g.add(&b, &a));
        prop_assert_eq!(g.add(&g.add(&a, &b), &c), g.add(&a, &g.add(&b, &c)));
        prop_assert!(g.is_trivial_char(&g.add(&a, &g.neg(&a))));
        prop_assert_eq!(g.add(&a, &g.trivial_character()), a.clone());
        let ord = g.char_order(&a);
        prop_assert!(g.is_trivial_char(&g.scale(&a, ord)));
        prop_assert_eq!(g.order() % ord, 0);
        for d in 1..ord {
            prop_assert!(!g.is_trivial_char(&g.scale(&a, d)));
        }
    }

    #[test]
    fn weight_is_a_morphism(a in action(3), (m1, m2) in (monomial(3, 6), monomial(3, 6))) {
        let w = |m: &Monomial| monomial_weight(m, &a).unwrap();
        prop_assert_eq!(w(&m1.mul(&m2)), a.group().add(&w(&m1), &w(&m2)));
        prop_assert!(a.group().is_trivial_char(&w(&Monomial::one(3))));
    }

    #[test]
    fn orbit_formula_matches_oracle(a in action(3)) {
        prop_assert_eq!(shortest_orbit_length(&a), orbit_length_oracle(&a));
    }

    #[test]
    fn inverse_action_is_conjugate(a in action(3)) {
        let inv = a.inverse();
        prop_assert_eq!(shortest_orbit_length(&inv), shortest_orbit_length(&a));
        prop_assert_eq!(is_real(&inv), is_real(&a));
        prop_assert_eq!(inv.inverse(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn staircase_counts_the_quotient(f in germ(2)) {
        let Ok(sb) = jacobian_standard_basis(&f, &StandardBasisConfig::default()) else {
            return Ok(());
        };
        match (&sb.mu, &sb.standard_monomials) {
            (Mu::Finite(mu), Staircase::Finite(std)) => {
                prop_assert_eq!(*mu, std.len());
                prop_assert_eq!(brute_force_mu_oracle(&f, 40).unwrap(), *mu);
                // Standard monomials are exactly those outside the leading ideal.
                for m in std {
                    prop_assert!(sb.leading_monomials.iter().all(|lm| !lm.divides(m)));
                }
            }
            (Mu::NotIsolated, Staircase::Infinite) => {
                let oracle = brute_force_mu_oracle(&f, 14);
                prop_assert!(matches!(oracle, Err(Error::OracleInconclusive { .. })), "oracle gave {:?}", oracle);
            }
            other => prop_assert!(false, "inconsistent result {:?}", other),
        }
    }

    #[test]
    fn standard_basis_is_confluent(f in germ(2)) {
        let Ok(sb) = jacobian_standard_basis(&f, &StandardBasisConfig::default()) else {
            return Ok(());
        };
        let order = LocalOrder::new(2);
        for g in jacobian_generators(&f) {
            prop_assert!(mora_normal_form(&g, &sb.generators, &order).unwrap().is_zero());
        }
        for (i, gi) in sb.generators.iter().enumerate() {
            for gj in &sb.generators[i + 1..] {
                let prod = gi * gj;
                prop_assert!(mora_normal_form(&prod, &sb.generators, &order).unwrap().is_zero());
            }
        }
        if let Staircase::Finite(std) = &sb.standard_monomials {
            for m in std {
                let p = Polynomial::monomial(m.clone(), rat(1, 1));
                prop_assert!(!mora_normal_form(&p, &sb.generators, &order).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn mu_is_a_coordinate_invariant(f in germ(3), perm in Just(vec![0usize, 1, 2]).prop_shuffle(), c in 1i64..=5, lambda in prop::collection::vec(1i64..=3, 3)) {
        let Ok(mu) = milnor_number(&f) else {
            return Ok(());
        };
        prop_assert_eq!(milnor_number(&f.permute(&perm)).unwrap(), mu);
        prop_assert_eq!(milnor_number(&f.scale(&rat(-c, 2))).unwrap(), mu);
        // x_i -> lambda_i x_i
        let scaled = Polynomial::from_terms(3, f.terms().map(|(m, coeff)| {
            let factor: i64 = m.exponents().iter().zip(&lambda).map(|(&e, &l)| l.pow(e)).product();
            (m.clone(), coeff * rat(factor, 1))
        }));
        prop_assert_eq!(milnor_number(&scaled).unwrap(), mu);
    }

    #[test]
    fn graded_tally_is_consistent((a, f) in invariant_pair(2)) {
        prop_assume!(!f.is_zero());
        prop_assert!(is_invariant(&f, &a).unwrap());
        let Ok(g) = graded_milnor(&f, &a) else {
            return Ok(());
        };
        prop_assert_eq!(g.multiplicities.values().sum::<usize>(), g.total);
        prop_assert_eq!(g.total, milnor_number(&f).unwrap());
        prop_assert!(g.nu() >= 1);
        prop_assert!(g.nu() <= g.total);
        let trivial: Character = a.group().trivial_character();
        prop_assert_eq!(g.multiplicity(&trivial), g.nu());
        // The tally does not depend on the sign convention of the weights.
        let h = graded_milnor(&f, &a.inverse()).unwrap();
        prop_assert_eq!(h.nu(), g.nu());
    }

    #[test]
    fn doubling_invariants((a, f) in invariant_pair(1)) {
        let da = double_action(&a);
        prop_assert!(check_reality(&da));
        prop_assert!(is_real(&da.doubled));
        prop_assert_eq!(shortest_orbit_length(&da.doubled), shortest_orbit_length(&a));
        prop_assume!(!f.is_zero());
        let Ok(mu) = milnor_number(&f) else {
            return Ok(());
        };
        prop_assume!(mu <= 6);
        let d = double_germ(&f);
        prop_assert_eq!(milnor_number(&d.doubled).unwrap(), mu * mu);
        prop_assert!(is_invariant(&d.doubled, &da.doubled).unwrap());
        prop_assert!(graded_milnor(&d.doubled, &da.doubled).unwrap().nu() >= mu);
    }
}

#[test]
fn orbit_formula_exhaustive_small() {
    for orders in [vec![2], vec![6], vec![2, 2], vec![2, 4], vec![3, 3]] {
        let g = AbelianGroup::new(orders).unwrap();
        let chars = g.characters();
        for a in &chars {
            for b in &chars {
                let act = ActionSpec::new(g.clone(), vec![a.clone(), b.clone()]).unwrap();
                assert_eq!(shortest_orbit_length(&act), orbit_length_oracle(&act));
            }
        }
    }
}
