use micromacro::numeric::{q, Q};
use micromacro::random::rng_from_seed;
use micromacro::system::{build_system, Partition, System};
use micromacro::thermo::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

fn random_simplex(o: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng_from_seed(seed);
    let raw: Vec<f64> = (0..o).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut p: Vec<f64> = raw.iter().map(|v| v / total).collect();
    let drift: f64 = 1.0 - p.iter().sum::<f64>();
    p[o - 1] += drift;
    p
}

/// Symmetric feasible directions on the support: the null space of the row
/// sums and, when present, the jump constraint.
fn feasible_directions(prop: &Proportions, with_jump: bool) -> Vec<Vec<Vec<f64>>> {
    let o = prop.o;
    let vars: Vec<(usize, usize)> = (0..o)
        .flat_map(|i| (i..o).map(move |j| (i, j)))
        .filter(|&(i, j)| prop.lambda[i][j] > 0.0)
        .collect();
    let rows = o + usize::from(with_jump);
    let a = DMatrix::from_fn(rows.max(vars.len()), vars.len(), |r, c| {
        let (i, j) = vars[c];
        if r < o {
            f64::from(u8::from(r == i || r == j))
        } else if r == o && with_jump {
            2.0 * jump(i, j) as f64
        } else {
            0.0
        }
    });
    let svd = a.svd(false, true);
    let vt = svd.v_t.unwrap();
    let mut out = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s < 1e-10 {
            let mut d = vec![vec![0.0; o]; o];
            for (c, &(i, j)) in vars.iter().enumerate() {
                d[i][j] = vt[(k, c)];
                d[j][i] = vt[(k, c)];
            }
            out.push(d);
        }
    }
    out
}

fn concavity_spot_check(prop: &Proportions, with_jump: bool) {
    let h0 = prop.entropy();
    for d in feasible_directions(prop, with_jump) {
        for sign in [1.0, -1.0] {
            let moved: Vec<Vec<f64>> = prop
                .lambda
                .iter()
                .zip(&d)
                .map(|(r, dr)| r.iter().zip(dr).map(|(x, y)| x + sign * 1e-4 * y).collect())
                .collect();
            if moved.iter().flatten().all(|&x| x >= 0.0) {
                assert!(entropy(&moved) <= h0 + 1e-9, "{:?}", prop.model);
            }
        }
    }
}

#[test]
fn solvers_satisfy_constraints() {
    for seed in 0..40u64 {
        let o = 2 + (seed as usize % 6);
        let p = random_simplex(o, seed);
        let free = maxent_free(&p).unwrap();
        assert!((free.entropy() - 2.0 * entropy(std::slice::from_ref(&p))).abs() < 1e-12);
        for k in 1..=o {
            let b = maxent_bounded_jump(&p, k).unwrap();
            assert!(b.marginal_error() <= 1e-10, "seed {seed} k {k}");
            assert!(b.is_symmetric(1e-15));
            for i in 0..o {
                for j in 0..o {
                    if i.abs_diff(j) > k {
                        assert_eq!(b.lambda[i][j], 0.0);
                    }
                }
            }
            concavity_spot_check(&b, false);
        }
        let max = max_average_jump(&p).unwrap();
        if o >= 3 {
            for frac in [0.05, 0.3, 0.6, 0.9] {
                let f = maxent_fixed_jump(&p, frac * max).unwrap();
                assert!(f.marginal_error() <= 1e-10);
                assert!((f.average_jump() - frac * max).abs() <= 1e-10);
                assert!(f.is_symmetric(1e-15));
                concavity_spot_check(&f, true);
            }
        }
    }
}

#[test]
fn full_band_matches_free() {
    for seed in 0..20u64 {
        let o = 1 + (seed as usize % 7);
        let p = random_simplex(o, seed + 100);
        let free = maxent_free(&p).unwrap();
        let band = maxent_bounded_jump(&p, o).unwrap();
        for (a, b) in free
            .lambda
            .iter()
            .flatten()
            .zip(band.lambda.iter().flatten())
        {
            assert!((a - b).abs() <= 1e-10);
        }
    }
}

#[test]
fn fixed_jump_limits() {
    let p = [0.1, 0.15, 0.2, 0.25, 0.3];
    let band = maxent_bounded_jump(&p, 1).unwrap();
    let zero = maxent_fixed_jump(&p, 0.0).unwrap();
    assert_eq!(zero.multipliers.c, Some(0.0));
    for (a, b) in band
        .lambda
        .iter()
        .flatten()
        .zip(zero.lambda.iter().flatten())
    {
        assert!((a - b).abs() <= 1e-12);
    }
    // small jumps approach the band, the free jump gives μ = 0
    let tiny = maxent_fixed_jump(&p, 1e-6).unwrap();
    for (a, b) in band
        .lambda
        .iter()
        .flatten()
        .zip(tiny.lambda.iter().flatten())
    {
        assert!((a - b).abs() <= 1e-4);
    }
    let free = maxent_free(&p).unwrap();
    let same = maxent_fixed_jump(&p, free.average_jump()).unwrap();
    assert!(same.multipliers.mu.unwrap().abs() < 1e-8);
    let max = max_average_jump(&p).unwrap();
    assert!(maxent_fixed_jump(&p, max * 1.01).is_err());
    assert!(maxent_fixed_jump(&p, -0.1).is_err());
    assert!(maxent_fixed_jump(&p, max).is_err());
}

#[test]
fn uniform_is_one_over_o_squared() {
    for o in 1..=6 {
        let f = maxent_free(&vec![1.0 / o as f64; o]).unwrap();
        let want = 1.0 / (o * o) as f64;
        assert!(f.lambda.iter().flatten().all(|&x| (x - want).abs() < 1e-15));
        let report = limit_properties(&f, 0.2, 0.2);
        assert_eq!(report.get("L1").unwrap().holds, o == 1);
    }
}

#[test]
fn free_model_closed_forms() {
    for seed in 0..30u64 {
        let o = 2 + (seed as usize % 4);
        let mut p = random_simplex(o, seed + 7);
        p.sort_by(f64::total_cmp);
        let f = maxent_free(&p).unwrap();
        let eps = 0.3;
        let r = limit_properties(&f, eps, eps);
        assert!(r.applicable);
        let l1: f64 = (0..o)
            .flat_map(|i| (i + 1..o).map(move |j| (i, j)))
            .map(|(i, j)| p[i] * p[j])
            .sum();
        assert!((r.get("L1").unwrap().value - l1).abs() < 1e-14);
        let top = p[o - 1];
        let gat: f64 = (0..o - 1)
            .flat_map(|j| (0..=j).map(move |i| (i, j)))
            .map(|(i, j)| p[i] * p[j])
            .sum::<f64>()
            / (1.0 - top);
        assert!((r.get("GAT").unwrap().value - gat).abs() < 1e-12);
        // ZAT(ε) ⇔ p_o ≥ 1 - ε in the free model
        assert_eq!(r.get("ZAT").unwrap().holds, top >= 1.0 - eps);
        assert_eq!(
            r.get("equilibrium-decrease-share").unwrap().holds,
            top >= 1.0 - eps - 1e-12
        );
        assert!(r.implications.iter().all(|(_, h)| *h));
    }
}

#[test]
fn dominant_top_zone_gives_l3() {
    // s(1) > ... > s(o) > 0 with Σ e^{-s(i)} = 1 and s(o) ≤ -ln(1 - ε)
    let eps: f64 = 0.1;
    for seed in 0..20u64 {
        let o = 2 + (seed as usize % 4);
        let rest = random_simplex(o - 1, seed);
        let top = 0.93;
        let mut p: Vec<f64> = rest.iter().map(|v| v * (1.0 - top)).collect();
        p.sort_by(f64::total_cmp);
        p.push(top);
        let s: Vec<f64> = p.iter().map(|v| -v.ln()).collect();
        assert!(s[o - 1] <= -(1.0 - eps).ln());
        let r = limit_properties(&maxent_free(&p).unwrap(), eps, eps);
        assert!(r.l3, "{p:?}");
    }
}

#[test]
fn geometric_stated_verdicts() {
    let mut failed = Vec::new();
    for q in [10.0, 100.0] {
        for o in 2..=4 {
            for k in 1..=2 {
                for eps in [0.5 / (q * q), 0.5 / q, 2.0 / q] {
                    for c in geometric_predictions(o, k, q, eps).unwrap() {
                        if !c.holds {
                            failed.push((c.item, k, o));
                        }
                    }
                }
            }
        }
    }
    assert!(failed.iter().all(
        |(item, k, _)| item == "GAT" || (*k == 2 && (item == "ZAT" || item == "average jump"))
    ));
    assert_eq!(failed.iter().filter(|f| f.0 == "GAT").count(), 12);
    assert!(failed
        .iter()
        .all(|f| f.0 != "L1" && f.0 != "L3" && f.0 != "b1 squared"));
}

#[test]
fn geometric_average_jump_is_twice_stated() {
    let g = geometric_band(3, 2, 1000.0).unwrap();
    assert!((g.average_jump() * 1e6 - 2.0).abs() < 0.01);
}

fn zones(sizes_counts: &[(usize, usize)]) -> System {
    let sizes: Vec<usize> = sizes_counts
        .iter()
        .flat_map(|&(s, c)| std::iter::repeat_n(s, c))
        .collect();
    let p = Partition::from_sizes(&sizes);
    let n = p.n();
    // one cycle through all microstates
    build_system(
        p.blocks().to_vec(),
        (0..n).map(|i| (i + 1) % n).collect(),
        None,
    )
    .unwrap()
}

#[test]
fn sequence_ratios() {
    let seq: Vec<System> = (1..=4)
        .map(|m| zones(&[(1, 1), (2, 2 * m), (3, 9 * m * m)]))
        .collect();
    let r = check_sequence_l3(&seq, &q(1, 2), &q(1, 2)).unwrap();
    assert_eq!(r.o, 3);
    assert_eq!(r.rows[0].growth, vec![q(1, 4), q(5, 27)]);
    assert!(r.growth_nonincreasing.iter().all(|&b| b));
    let same = vec![seq[3].clone(); 3];
    let r = check_sequence_l3(&same, &q(1, 2), &q(1, 2)).unwrap();
    assert!(r.rows.iter().all(|row| row.l3 == r.rows[0].l3));
    let single: Vec<System> = (1..=3).map(|m| zones(&[(m, 2)])).collect();
    assert!(
        check_sequence_l3(&single, &Q::from_integer(0.into()), &q(0, 1))
            .unwrap()
            .vacuous
    );
    assert!(check_sequence_l3(&[seq[0].clone(), single[0].clone()], &q(1, 2), &q(1, 2)).is_err());
    assert!(check_sequence_l3(&[], &q(1, 2), &q(1, 2)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn band_solution_is_fixed_point(seed in any::<u64>(), o in 2usize..7, k in 1usize..4) {
        let p = random_simplex(o, seed);
        let b = maxent_bounded_jump(&p, k).unwrap();
        for j in 0..o {
            let s: f64 = (0..o).filter(|&i| i.abs_diff(j) <= k).map(|i| b.multipliers.b[i]).sum();
            prop_assert!((b.multipliers.b[j] * s - p[j]).abs() <= 1e-10);
        }
    }
}
