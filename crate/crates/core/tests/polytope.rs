mod common;

use common::{is_symmetric, moves_along, profiles, Census};
use micromacro::numeric::{q, qi, Q};
use micromacro::polytope::*;
use micromacro::properties::{check_l2, check_l3, check_l4, macro_edges};
use micromacro::reversible::make_ir;
use micromacro::system::{Partition, ZoneProfile};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn grid() -> Vec<Q> {
    vec![q(0, 1), q(1, 4), q(1, 2), q(1, 1)]
}

fn path(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

#[test]
fn lambda_families_match_census() {
    for sizes in profiles(7) {
        let p = Partition::from_sizes(&sizes);
        let zp = ZoneProfile::of(&p);
        let census = Census::of(&p);
        let mut total = Q::zero();
        for d in 0..=p.n() {
            let w = evaluate(&zp, &Family::Lambda { d }).unwrap();
            let oracle = census.fraction(|_| true, |s| s.dic_counts().0 == d);
            assert_eq!(w.probability, oracle, "{sizes:?} d = {d}");
            total += w.probability;
            for e in 0..=p.n() {
                let w = evaluate(&zp, &Family::LambdaDe { d, e }).unwrap();
                let oracle = census.fraction(
                    |_| true,
                    |s| {
                        let (nd, ni, _) = s.dic_counts();
                        (nd, ni) == (d, e)
                    },
                );
                assert_eq!(w.probability, oracle, "{sizes:?} d = {d} e = {e}");
            }
            let zero_jump = evaluate(&zp, &Family::Upsilon { d }).unwrap();
            let oracle = census.fraction(|s| s.is_zero_jump(), |s| s.dic_counts().0 == d);
            assert_eq!(zero_jump.probability, oracle, "{sizes:?} zero jump d = {d}");
        }
        assert!(total.is_one());
    }
}

#[test]
fn property_families_match_census() {
    for sizes in profiles(7) {
        let p = Partition::from_sizes(&sizes);
        let zp = ZoneProfile::of(&p);
        let census = Census::of(&p);
        let edges = path(p.n());
        let medges: Vec<(usize, usize)> = macro_edges(&p, &edges).unwrap().into_iter().collect();
        let graph = Property::L4Graph {
            block_sizes: p.block_sizes(),
            macro_edges: medges.clone(),
        };
        for e1 in grid() {
            for e2 in grid() {
                let prob = |prop: &Property| {
                    probability_of_property(&zp, prop, &e1, &e2)
                        .unwrap()
                        .probability()
                        .clone()
                };
                let tag = format!("{sizes:?} e1 = {e1} e2 = {e2}");
                assert_eq!(
                    prob(&Property::L2),
                    census.fraction(|_| true, |s| check_l2(s, &e1, &e2).holds),
                    "L2 {tag}"
                );
                assert_eq!(
                    prob(&Property::L3),
                    census.fraction(|_| true, |s| check_l3(s, &e1, &e2).holds),
                    "L3 {tag}"
                );
                assert_eq!(
                    prob(&Property::L3ZeroJump),
                    census.fraction(|s| s.is_zero_jump(), |s| check_l3(s, &e1, &e2).holds),
                    "zero jump {tag}"
                );
                assert_eq!(
                    prob(&Property::L3Symmetric),
                    census.fraction(is_symmetric, |s| check_l3(s, &e1, &e2).holds),
                    "symmetric {tag}"
                );
                let ir =
                    census.fraction(|_| true, |s| check_l2(&make_ir(s).unwrap(), &e1, &e2).holds);
                assert_eq!(prob(&Property::IrL2), ir, "IR {tag}");
                assert_eq!(
                    prob(&graph),
                    census.fraction(|s| moves_along(s, &medges), |s| check_l4(s, &e1, &e2).holds),
                    "graph {tag}"
                );
                match probability_of_property(&zp, &Property::RL2Bounds, &e1, &e2).unwrap() {
                    PropertyProbability::Bracket {
                        lower,
                        upper,
                        hypothesis,
                    } => {
                        assert!(ir <= upper.probability, "upper {tag}");
                        if hypothesis {
                            assert!(lower.probability <= ir, "lower {tag}");
                        }
                    }
                    other => panic!("expected a bracket, got {other:?}"),
                }
            }
        }
    }
}

#[test]
fn eight_point_profiles_match_census() {
    let e = [q(0, 1), q(1, 2)];
    for sizes in profiles(8)
        .into_iter()
        .filter(|s| s.iter().sum::<usize>() == 8)
    {
        let p = Partition::from_sizes(&sizes);
        let zp = ZoneProfile::of(&p);
        let census = Census::of(&p);
        for d in 0..=8 {
            let w = evaluate(&zp, &Family::Lambda { d }).unwrap();
            assert_eq!(
                w.probability,
                census.fraction(|_| true, |s| s.dic_counts().0 == d),
                "{sizes:?} d = {d}"
            );
        }
        for e1 in &e {
            for e2 in &e {
                let w = probability_of_property(&zp, &Property::L3Symmetric, e1, e2).unwrap();
                let oracle = census.fraction(is_symmetric, |s| check_l3(s, e1, e2).holds);
                assert_eq!(w.probability(), &oracle, "{sizes:?}");
            }
        }
    }
}

#[test]
fn normalizers_count_permutation_classes() {
    for sizes in profiles(7) {
        let p = Partition::from_sizes(&sizes);
        let zp = ZoneProfile::of(&p);
        let census = Census::of(&p);
        let fact: BigUint = zp
            .zone_card
            .iter()
            .map(|&c| micromacro::numeric::factorial(c))
            .product();
        let zero = normalizer(&zp, &Family::Upsilon { d: 0 }).unwrap();
        assert_eq!(zero, census.count(|s| s.is_zero_jump()), "{sizes:?}");
        let sym = normalizer(
            &zp,
            &Family::Sigma {
                e1: Q::one(),
                e2: Q::one(),
            },
        )
        .unwrap();
        assert_eq!(sym * &fact, census.count(is_symmetric), "{sizes:?}");
        let medges: Vec<_> = macro_edges(&p, &path(p.n())).unwrap().into_iter().collect();
        let g = Family::Gamma {
            e1: Q::one(),
            e2: Q::one(),
            block_sizes: p.block_sizes(),
            macro_edges: medges.clone(),
        };
        let block_fact: BigUint = p
            .block_sizes()
            .iter()
            .map(|&c| micromacro::numeric::factorial(c))
            .product();
        assert_eq!(
            normalizer(&zp, &g).unwrap() * block_fact,
            census.count(|s| moves_along(s, &medges)),
            "{sizes:?}"
        );
    }
}

#[test]
fn two_zone_closed_forms() {
    for s2 in 2..=7 {
        for s1 in 1..s2 {
            let zp = ZoneProfile::from_counts(&[(1, s1), (s2, 1)]);
            let dist = two_zone_distribution(s1, s2);
            for (d, pd) in dist.iter().enumerate() {
                assert_eq!(
                    &evaluate(&zp, &Family::Lambda { d }).unwrap().probability,
                    pd
                );
            }
            for e1 in grid() {
                for e2 in grid() {
                    let w = probability_of_property(&zp, &Property::IrL2, &e1, &e2).unwrap();
                    assert_eq!(
                        w.probability(),
                        &two_zone_ir_l2(s1, s2, &e1, &e2),
                        "({s1}, {s2}) {e1} {e2}"
                    );
                }
            }
        }
    }
}

#[test]
fn two_zone_modes() {
    let table = two_zone_mode_table(40);
    assert_eq!(table.len(), 40 * 39 / 2);
    // the closed form lands in the argmax set for 56 of 780 pairs, 17 of them ties
    assert_eq!(table.iter().filter(|r| r.holds).count(), 56);
    assert_eq!(table.iter().filter(|r| r.argmax.len() == 2).count(), 17);
    for row in &table {
        let off = row.argmax.iter().all(|&m| m != row.formula);
        assert!(
            !off || row.argmax.last() == Some(&(row.formula + 1)),
            "{row:?}"
        );
    }
    let trend = two_zone_trend(3, &[10, 100, 1000]);
    let gaps: Vec<f64> = trend.iter().map(|r| (r.ratio - r.limit).abs()).collect();
    assert!(gaps[2] < gaps[0] && gaps[2] < 1e-3);
}

#[test]
fn empty_phi_is_reported() {
    let zp = ZoneProfile::from_counts(&[(1, 2), (2, 1)]);
    let w = evaluate(
        &zp,
        &Family::Phi {
            e1: q(0, 1),
            e2: q(0, 1),
        },
    )
    .unwrap();
    // Σ x_ii ≥ 4 and Σ x_ii ≤ 2·2 - 4 = 0
    assert!(w.is_empty());
    assert!(w.probability.is_zero());
    let relaxed = evaluate(
        &zp,
        &Family::Phi {
            e1: Q::one(),
            e2: Q::one(),
        },
    )
    .unwrap();
    assert!(relaxed.probability.is_one());
}

#[test]
fn gamma_rejects_bad_edges() {
    let zp = ZoneProfile::from_counts(&[(1, 1), (2, 1)]);
    let g = Family::Gamma {
        e1: Q::one(),
        e2: Q::one(),
        block_sizes: vec![1, 2],
        macro_edges: vec![(0, 5)],
    };
    assert!(evaluate(&zp, &g).is_err());
    let mismatched = Family::Gamma {
        e1: Q::one(),
        e2: Q::one(),
        block_sizes: vec![1, 1],
        macro_edges: vec![],
    };
    assert!(evaluate(&zp, &mismatched).is_err());
}

fn reorder(spec: &PolytopeSpec, perm: &[usize]) -> PolytopeSpec {
    let remap = |c: &Constraint| Constraint {
        terms: c.terms.iter().map(|&(v, k)| (perm[v], k)).collect(),
        rhs: c.rhs,
    };
    let cols = |cs: &[Column]| {
        cs.iter()
            .map(|c| Column {
                vars: c.vars.iter().map(|&v| perm[v]).collect(),
                ..c.clone()
            })
            .collect()
    };
    let mut names = spec.var_names.clone();
    for (v, name) in spec.var_names.iter().enumerate() {
        names[perm[v]] = name.clone();
    }
    PolytopeSpec {
        num_vars: spec.num_vars,
        var_names: names,
        eq_constraints: spec.eq_constraints.iter().map(remap).collect(),
        le_constraints: spec.le_constraints.iter().map(remap).collect(),
        ge_constraints: spec.ge_constraints.iter().map(remap).collect(),
        weight_rule: match &spec.weight_rule {
            WeightRule::MultinomialProduct(c) => WeightRule::MultinomialProduct(cols(c)),
            WeightRule::InverseFactorialProduct(c) => WeightRule::InverseFactorialProduct(cols(c)),
            WeightRule::PlainCount => WeightRule::PlainCount,
        },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn variable_order_is_irrelevant(
        counts in proptest::collection::vec(0usize..3, 3),
        d in 0usize..5,
        seed in any::<u64>(),
    ) {
        let spec: Vec<(usize, usize)> = counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(k, &c)| (k + 1, c)).collect();
        prop_assume!(!spec.is_empty());
        let zp = ZoneProfile::from_counts(&spec);
        for family in [Family::Lambda { d }, Family::Theta { e1: q(1, 3), e2: q(1, 2) }, Family::Upsilon { d }] {
            let s = build_polytope(&zp, &family).unwrap();
            let mut perm: Vec<usize> = (0..s.num_vars).collect();
            let mut rng = micromacro::random::rng_from_seed(seed);
            rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
            prop_assert_eq!(s.enumerate().unwrap(), reorder(&s, &perm).enumerate().unwrap());
        }
    }

    #[test]
    fn lambda_refines_and_sums_to_one(counts in proptest::collection::vec(0usize..3, 3)) {
        let spec: Vec<(usize, usize)> = counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(k, &c)| (k + 1, c)).collect();
        prop_assume!(!spec.is_empty());
        let zp = ZoneProfile::from_counts(&spec);
        let n = zp.n();
        let mut total = Q::zero();
        for d in 0..=n {
            let w = evaluate(&zp, &Family::Lambda { d }).unwrap();
            let parts: BigUint = (0..=n).map(|e| evaluate(&zp, &Family::LambdaDe { d, e }).unwrap().weighted_sum).sum();
            prop_assert_eq!(&w.weighted_sum, &parts);
            total += w.probability;
        }
        prop_assert_eq!(total, qi(1));
    }
}
