use serde::Serialize;

use super::model::{Model, Multipliers, Proportions};
use crate::error::{Error, Result};

/// Slack for real comparisons.
const SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitVerdict {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    /// `value ≤ bound`, except for the equilibrium fractions where it is
    /// `value ≥ bound`.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    /// The ordering `p_1 < ... < p_o` (free model) or `b_1 < ... < b_o`
    /// under which the closed forms characterize the properties.
    pub applicable: bool,
    pub verdicts: Vec<LimitVerdict>,
    /// `L1(ε1) ∧ GAT(ε2)` and `L1(ε1) ∧ ZAT(ε2)`.
    pub l2: bool,
    pub l3: bool,
    /// `(name, premise ⇒ conclusion)` for the model's stated implications.
    pub implications: Vec<(String, bool)>,
}

impl LimitReport {
    pub fn get(&self, name: &str) -> Option<&LimitVerdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

fn at_most(name: &str, value: f64, bound: f64) -> LimitVerdict {
    LimitVerdict {
        name: name.into(),
        value,
        bound,
        holds: value <= bound + SLACK,
    }
}

fn at_least(name: &str, value: f64, bound: f64) -> LimitVerdict {
    LimitVerdict {
        name: name.into(),
        value,
        bound,
        holds: value >= bound - SLACK,
    }
}

fn increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// Decreases, non-increases out of each zone, and equilibrium shares computed
/// from `λ`, with zones ordered by increasing block size.
fn raw(prop: &Proportions, e1: f64, e2: f64) -> Vec<LimitVerdict> {
    let o = prop.o;
    let lam = &prop.lambda;
    let l1: f64 = (0..o)
        .flat_map(|i| (i + 1..o).map(move |j| lam[i][j]))
        .sum();
    let stay = |j: usize| -> f64 { (0..=j).map(|i| lam[i][j]).sum() };
    let neq: f64 = prop.p[..o - 1].iter().sum();
    let gat = if o > 1 {
        (0..o - 1).map(stay).sum::<f64>() / neq
    } else {
        0.0
    };
    let zat = (0..o - 1).map(|j| stay(j) / prop.p[j]).fold(0.0, f64::max);
    let top = prop.p[o - 1];
    let out_of_top: f64 = (0..o - 1).map(|i| lam[i][o - 1]).sum();
    let eq_decrease = if o > 1 { out_of_top / neq } else { 1.0 };
    vec![
        at_most("L1", l1, e1),
        at_most("GAT", gat, e2),
        at_most("ZAT", zat, e2),
        at_least("equilibrium-share", top, 1.0 - e1),
        at_least("equilibrium-decrease-share", eq_decrease, 1.0 - e1),
    ]
}

/// Evaluates `L1`, `GAT`, `ZAT`, `L2`, `L3` and the equilibrium shares on
/// proportion data.
pub fn limit_properties(prop: &Proportions, e1: f64, e2: f64) -> LimitReport {
    let verdicts = raw(prop, e1, e2);
    let holds = |name: &str| verdicts.iter().find(|v| v.name == name).unwrap().holds;
    let (l1, gat, zat) = (holds("L1"), holds("GAT"), holds("ZAT"));
    let applicable = match prop.model {
        Model::Free => increasing(&prop.p),
        _ => increasing(&prop.multipliers.b),
    };
    let mut implications = Vec::new();
    let top = prop.p[prop.o - 1];
    if prop.model == Model::Free {
        let l3_eps = raw(prop, e1, e1);
        let l3 = l3_eps[0].holds && l3_eps[2].holds;
        implications.push((
            "L1 implies p_o(1 - p_o) <= eps".into(),
            !l1 || top * (1.0 - top) <= e1 + SLACK,
        ));
        implications.push((
            "p_o >= 1 - eps implies L3(eps, eps)".into(),
            top < 1.0 - e1 - SLACK || l3,
        ));
    }
    LimitReport {
        applicable,
        verdicts,
        l2: l1 && gat,
        l3: l1 && zat,
        implications,
    }
}

/// The bounded-jump model with `b_j ∝ q^{j-1}`: `p_j = b_j Σ_{|i-j|≤k} b_i`,
/// scaled so that `Σ p = 1`.
pub fn geometric_band(o: usize, k: usize, q: f64) -> Result<Proportions> {
    if o == 0 || k == 0 || !(q > 0.0) {
        return Err(Error::InvalidArgument(
            "geometric band needs o ≥ 1, k ≥ 1 and q > 0".into(),
        ));
    }
    let raw_b: Vec<f64> = (0..o).map(|j| q.powi(j as i32)).collect();
    let mass: f64 = (0..o)
        .map(|j| {
            raw_b[j]
                * (0..o)
                    .filter(|&i| i.abs_diff(j) <= k)
                    .map(|i| raw_b[i])
                    .sum::<f64>()
        })
        .sum();
    let b: Vec<f64> = raw_b.iter().map(|v| v / mass.sqrt()).collect();
    let lambda: Vec<Vec<f64>> = (0..o)
        .map(|i| {
            (0..o)
                .map(|j| if i.abs_diff(j) <= k { b[i] * b[j] } else { 0.0 })
                .collect()
        })
        .collect();
    let p: Vec<f64> = (0..o).map(|j| lambda[j].iter().sum()).collect();
    let mut out = Proportions {
        o,
        p,
        lambda,
        model: Model::BoundedJump { k },
        multipliers: Multipliers {
            b,
            c: None,
            mu: None,
        },
        iterations: 0,
        residual: 0.0,
        degenerate: false,
    };
    out.residual = out.marginal_error();
    Ok(out)
}

/// One stated verdict for geometric `b` against the computed one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometricCheck {
    pub item: String,
    pub predicted: f64,
    pub computed: f64,
    pub holds: bool,
}

/// Relative tolerance for the stated asymptotic values.
const APPROX: f64 = 0.25;

/// The stated large-`q` verdicts for geometric `b`: `L1 ⇔ 1/q ≤ ε`,
/// `GAT ⇔ 1/q² ≤ ε`, `ZAT ⇔ 1/q^k ≤ ε`, `1/q ≤ ε ⇒ L3(ε, ε)`,
/// `b_1² ≈ q^{2-2o}` and average jump `0` (`k = 1` or `o = 2`) or `1/q²`.
/// Boolean items store `1.0` for true.
pub fn geometric_predictions(o: usize, k: usize, q: f64, eps: f64) -> Result<Vec<GeometricCheck>> {
    if o < 2 || !(q > 1.0) {
        return Err(Error::InvalidArgument(
            "geometric predictions need o ≥ 2 and q > 1".into(),
        ));
    }
    let prop = geometric_band(o, k, q)?;
    let report = limit_properties(&prop, eps, eps);
    let flag = |b: bool| if b { 1.0 } else { 0.0 };
    let verdict = |item: &str, predicted: bool, computed: bool| GeometricCheck {
        item: item.into(),
        predicted: flag(predicted),
        computed: flag(computed),
        holds: predicted == computed,
    };
    let approx = |item: &str, predicted: f64, computed: f64| GeometricCheck {
        item: item.into(),
        predicted,
        computed,
        holds: (computed - predicted).abs() <= APPROX * predicted.abs().max(1e-300)
            || (predicted == 0.0 && computed.abs() <= SLACK),
    };
    let holds = |name: &str| report.get(name).unwrap().holds;
    let mut out = vec![
        approx(
            "b1 squared",
            q.powi(2 - 2 * o as i32),
            prop.multipliers.b[0].powi(2),
        ),
        verdict("L1", 1.0 / q <= eps, holds("L1")),
        verdict("GAT", 1.0 / (q * q) <= eps, holds("GAT")),
        verdict("ZAT", q.powi(-(k as i32)) <= eps, holds("ZAT")),
    ];
    if 1.0 / q <= eps {
        out.push(verdict("L3", true, report.l3));
    }
    let jump = if k == 1 || o == 2 { 0.0 } else { 1.0 / (q * q) };
    out.push(approx("average jump", jump, prop.average_jump()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::solve::{maxent_bounded_jump, maxent_free};
    use super::*;

    #[test]
    fn uniform_l1_only_for_one_zone() {
        for o in 1..=6 {
            let p = vec![1.0 / o as f64; o];
            let r = limit_properties(&maxent_free(&p).unwrap(), 0.2, 0.2);
            assert_eq!(r.get("L1").unwrap().holds, o == 1, "o = {o}");
        }
    }

    #[test]
    fn geometric_band_is_a_fixed_point() {
        let g = geometric_band(4, 2, 3.0).unwrap();
        let solved = maxent_bounded_jump(&g.p, 2).unwrap();
        for (a, b) in g.multipliers.b.iter().zip(&solved.multipliers.b) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn large_q_example() {
        let g = geometric_band(3, 1, 100.0).unwrap();
        let r = limit_properties(&g, 0.1, 0.1);
        assert!(
            r.get("L1").unwrap().holds
                && r.get("GAT").unwrap().holds
                && r.get("ZAT").unwrap().holds
        );
    }
}
