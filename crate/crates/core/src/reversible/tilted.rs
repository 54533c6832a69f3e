use serde::Serialize;

use crate::error::{Error, Result};
use crate::system::System;

/// Maximum-entropy block distribution `p_a ∝ e^{λ σ̄_n(a)}` with a
/// prescribed mean production rate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tilted {
    /// `None` when the target is an endpoint of the attainable interval and
    /// `λ` diverges.
    pub lambda: Option<f64>,
    pub diverges: bool,
    /// `σ̄_n(a)`: mean of `σ_n` over block `a`.
    pub sigma_block: Vec<f64>,
    pub block_probs: Vec<f64>,
    /// `t(i) = p_a / |a|`.
    pub micro_probs: Vec<f64>,
    pub achieved_mean: f64,
}

const TOL: f64 = 1e-12;

/// Block probabilities and mean at `λ`, computed with a shifted exponent.
fn tilt(sig: &[f64], lambda: f64) -> (Vec<f64>, f64) {
    let top = sig
        .iter()
        .map(|s| lambda * s)
        .fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = sig.iter().map(|s| (lambda * s - top).exp()).collect();
    let z: f64 = w.iter().sum();
    let p: Vec<f64> = w.iter().map(|x| x / z).collect();
    let mean = p.iter().zip(sig).map(|(p, s)| p * s).sum();
    (p, mean)
}

fn variance(sig: &[f64], p: &[f64], mean: f64) -> f64 {
    p.iter()
        .zip(sig)
        .map(|(p, s)| p * (s - mean) * (s - mean))
        .sum()
}

/// Solves `Σ σ̄_n(a) p_a(λ) = target` by bracketed bisection with Newton
/// steps. `σ̄_n(a)` includes the `1/n` of `σ_n`.
pub fn tilted_distribution(sys: &System, n_steps: usize, target: f64) -> Result<Tilted> {
    if n_steps == 0 {
        return Err(Error::InvalidArgument(
            "the number of steps must be at least 1".into(),
        ));
    }
    if sys.n() == 0 {
        return Err(Error::InvalidArgument("empty phase space".into()));
    }
    if !target.is_finite() {
        return Err(Error::InvalidArgument("target mean must be finite".into()));
    }
    let p = sys.partition();
    let map = sys.dynamics().power(n_steps);
    let sigma_block: Vec<f64> = p
        .blocks()
        .iter()
        .map(|b| {
            let s: f64 = b
                .iter()
                .map(|&i| (sys.size(map.apply(i)) as f64).ln() - (b.len() as f64).ln())
                .sum();
            s / (b.len() as f64 * n_steps as f64)
        })
        .collect();
    let lo = sigma_block.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = sigma_block
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let slack = TOL * (1.0 + lo.abs().max(hi.abs()));
    if target < lo - slack || target > hi + slack {
        return Err(Error::InvalidArgument(format!(
            "target {target} is outside [{lo}, {hi}]"
        )));
    }
    let finish = |lambda: Option<f64>, block_probs: Vec<f64>| {
        let achieved_mean = block_probs
            .iter()
            .zip(&sigma_block)
            .map(|(p, s)| p * s)
            .sum();
        let micro_probs = (0..sys.n())
            .map(|i| block_probs[p.block_of(i)] / sys.size(i) as f64)
            .collect();
        Tilted {
            diverges: lambda.is_none(),
            lambda,
            sigma_block: sigma_block.clone(),
            block_probs,
            micro_probs,
            achieved_mean,
        }
    };
    if hi - lo <= slack {
        return Ok(finish(Some(0.0), tilt(&sigma_block, 0.0).0));
    }
    for (edge, is_edge) in [(hi, target >= hi - slack), (lo, target <= lo + slack)] {
        if is_edge {
            let k = sigma_block
                .iter()
                .filter(|&&s| (s - edge).abs() <= slack)
                .count() as f64;
            let probs = sigma_block
                .iter()
                .map(|&s| {
                    if (s - edge).abs() <= slack {
                        1.0 / k
                    } else {
                        0.0
                    }
                })
                .collect();
            return Ok(finish(None, probs));
        }
    }
    let (mut a, mut b) = (-1.0f64, 1.0f64);
    while tilt(&sigma_block, a).1 > target {
        a *= 2.0;
        if a < -1e300 {
            return Ok(finish(None, tilt(&sigma_block, a).0));
        }
    }
    while tilt(&sigma_block, b).1 < target {
        b *= 2.0;
        if b > 1e300 {
            return Ok(finish(None, tilt(&sigma_block, b).0));
        }
    }
    let mut x = 0.0f64.clamp(a, b);
    for _ in 0..400 {
        let (probs, m) = tilt(&sigma_block, x);
        let f = m - target;
        if f.abs() <= TOL {
            break;
        }
        if f > 0.0 {
            b = x;
        } else {
            a = x;
        }
        let v = variance(&sigma_block, &probs, m);
        let newton = x - f / v;
        x = if v > 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        if b - a <= f64::EPSILON * (1.0 + x.abs()) {
            break;
        }
    }
    Ok(finish(Some(x), tilt(&sigma_block, x).0))
}
