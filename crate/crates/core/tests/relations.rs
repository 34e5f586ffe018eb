use fqzeta::combinatorics::{FpCoeff, IndexProfile};
use fqzeta::relations::{
    closed_formula_general, closed_formula_symmetric, recursion_increment, solve_initial, Method, RelationEngine,
    RelationSet,
};
use fqzeta::{Limits, RatFunc};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn engine(q: u64) -> RelationEngine {
    RelationEngine::new(q, &Limits::default()).unwrap()
}

#[test]
fn methods_agree_for_small_pairs() {
    for q in [2u64, 3, 4, 5] {
        let e = engine(q);
        for a in 1..=12u64 {
            for b in 1..=12u64 {
                let all = e.all_relations(a, b).unwrap();
                let reference = &all[0].1;
                for (m, set) in &all {
                    assert_eq!(set, reference, "q={q} a={a} b={b} method={}", m.name());
                }
            }
        }
    }
}

#[test]
fn relation_sets_are_symmetric_in_a_and_b() {
    for q in [2u64, 3, 5] {
        let e = engine(q);
        for a in 1..=10u64 {
            for b in 1..a {
                assert_eq!(
                    e.solve_initial(a, b).unwrap(),
                    e.solve_initial(b, a).unwrap().swapped(),
                    "q={q} a={a} b={b}"
                );
            }
        }
    }
}

#[test]
fn one_recursion_step_extends_the_initial_solution() {
    for q in [2u64, 3, 4] {
        let e = engine(q);
        for a in 1..=20u64 {
            let r_a = IndexProfile::new(a, q).unwrap().r_a;
            for b in 1..=2 * r_a {
                if a == b && q % 2 == 0 {
                    continue;
                }
                let base = e.solve_initial(a, b).unwrap();
                let increment = recursion_increment(a, q, b).unwrap();
                let extended = base.disjoint_union(&increment).unwrap();
                let expected = e.solve_initial(a, b + r_a).unwrap();
                let normalized =
                    RelationSet::accumulate(q, a, b + r_a, extended.terms().iter().map(|t| (t.index, t.coeff)))
                        .unwrap();
                assert_eq!(normalized, expected, "q={q} a={a} b={b}");
            }
        }
    }
}

#[test]
fn increment_size_is_t_a() {
    for q in [2u64, 3, 4, 5, 9] {
        for a in 1..=100u64 {
            let profile = IndexProfile::new(a, q).unwrap();
            assert_eq!(recursion_increment(a, q, 1).unwrap().len() as u64, profile.t_a, "q={q} a={a}");
        }
    }
}

#[test]
fn increment_in_phi_form_does_not_depend_on_b() {
    for q in [2u64, 3, 4, 9] {
        for a in 1..=40u64 {
            let profile = IndexProfile::new(a, q).unwrap();
            let phi_form = |b: u64| -> Vec<(u32, u64)> {
                let mut v: Vec<(u32, u64)> = recursion_increment(a, q, b)
                    .unwrap()
                    .iter()
                    .map(|t| (t.coeff.value(), b + profile.r_a - t.index))
                    .collect();
                v.sort_unstable();
                v
            };
            let reference = phi_form(1);
            for (_, phi) in &reference {
                let l = (profile.r_a - a - phi) / (q - 1);
                assert_eq!(profile.phi(l).unwrap(), *phi, "q={q} a={a}");
            }
            for b in [2u64, 7, 31, 100] {
                assert_eq!(phi_form(b), reference, "q={q} a={a} b={b}");
            }
        }
    }
}

// Δ_d(q^n, q^n - 1) has the depth-two reading -S_d(q^n, q^n - 1); the depth-one
// expression -S_d(q^n) agrees only at d = 1.
#[test]
fn prime_power_family_lifts_with_depth_two_sums() {
    for (q, n) in [(2u64, 2u32), (2, 3), (3, 1), (3, 2), (4, 1), (5, 1)] {
        let e = engine(q);
        let a = q.pow(n);
        let sums = e.sums();
        let field = e.field();
        let minus_one = field.neg(field.one());
        let depth_one = |d: usize| sums.s_d(d, a).unwrap().scale(minus_one);
        let depth_two = |d: usize| sums.s_d_depth(d, &[a, a - 1]).unwrap().scale(minus_one);
        assert_eq!(sums.delta(1, a, a - 1).unwrap(), depth_one(1), "q={q} n={n}");
        assert_eq!(sums.delta(1, a, a - 1).unwrap(), depth_two(1), "q={q} n={n}");
        let delta2 = sums.delta(2, a, a - 1).unwrap();
        assert_eq!(delta2, depth_two(2), "q={q} n={n}");
        assert_ne!(delta2, depth_one(2), "q={q} n={n}");
    }
}

#[test]
fn the_twenty_nineteen_pair_lifts_to_degrees_two_and_three() {
    let e = engine(2);
    let set = e.solve_initial(19, 20).unwrap();
    assert_eq!(set.pairs(), vec![(1, 20), (1, 16), (1, 12), (1, 8)]);
    for d in 1..=3 {
        assert!(e.verify_depth(&set, d).unwrap(), "d={d}");
    }
    assert!(e.verify_depth_exact(&set, 2).unwrap());
}

#[test]
fn certificate_matches_exact_check_on_random_perturbations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..12 {
        let q = [2u64, 3, 4][rng.gen_range(0..3)];
        let e = engine(q);
        let a = rng.gen_range(1..=7u64);
        let b = rng.gen_range(1..=7u64);
        let good = e.solve_initial(a, b).unwrap();
        let p = good.p() as u32;
        let index = rng.gen_range(1..a + b);
        let old = good.terms().iter().find(|t| t.index == index).map_or(FpCoeff::zero(p), |t| t.coeff);
        let bad = good.with_coefficient(index, old.add(FpCoeff::new(rng.gen_range(1..p as i64 + 1), p)));
        let d = if q == 4 { 1 } else { 2 };
        for set in [&good, &bad] {
            assert_eq!(
                e.verify_depth(set, d).unwrap(),
                e.verify_depth_exact(set, d).unwrap(),
                "q={q} a={a} b={b} set={set}"
            );
        }
    }
}

#[test]
fn general_formula_handles_swapped_arguments() {
    for q in [3u64, 4] {
        for (a, b) in [(2u64, 7u64), (3, 11), (1, 5)] {
            assert_eq!(closed_formula_general(a, b, q).unwrap(), solve_initial(a, b, q).unwrap());
        }
    }
}

#[test]
fn symmetric_formula_on_the_odd_diagonal_matches_the_solver() {
    for q in [3u64, 5] {
        for a in 1..=8u64 {
            assert_eq!(closed_formula_symmetric(a, a, q).unwrap(), solve_initial(a, a, q).unwrap(), "q={q} a={a}");
        }
    }
}

#[test]
fn delta_equals_the_relation_at_degree_one() {
    let e = engine(3);
    let field = e.field();
    for (a, b) in [(5u64, 4u64), (7, 2), (6, 6)] {
        let set = e.solve_initial(a, b).unwrap();
        let mut rhs = RatFunc::zero(field);
        for t in set.terms() {
            rhs = &rhs + &e.sums().s_d(1, t.index).unwrap().scale(field.from_int(t.coeff.value() as i64));
        }
        assert_eq!(e.sums().delta(1, a, b).unwrap(), rhs);
    }
}

#[test]
fn method_names_round_trip() {
    for m in Method::ALL {
        assert_eq!(Method::from_name(m.name()), Some(m));
    }
    assert_eq!(Method::from_name("fast"), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn indices_satisfy_the_parity_condition(qi in 0usize..4, a in 1u64..25, b in 1u64..25) {
        let q = [2u64, 3, 4, 5][qi];
        let set = solve_initial(a, b, q).unwrap();
        prop_assert!(set.parity_violations().is_empty(), "{}", set);
        for w in set.terms().windows(2) {
            prop_assert!(w[0].index > w[1].index);
        }
        for t in set.terms() {
            prop_assert!(!t.coeff.is_zero());
            prop_assert!(t.index >= 1 && t.index < a + b);
        }
    }

    #[test]
    fn recursion_matches_the_solver(qi in 0usize..3, a in 1u64..16, b in 1u64..80) {
        let q = [2u64, 3, 4][qi];
        let e = engine(q);
        prop_assert_eq!(e.relation_by_recursion(a, b).unwrap(), e.solve_initial(a, b).unwrap());
    }
}
