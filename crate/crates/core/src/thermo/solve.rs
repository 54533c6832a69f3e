use nalgebra::{DMatrix, DVector};

use super::model::{check_simplex, jump, Model, Multipliers, Proportions};
use crate::error::{Error, Result};

/// Target for the constraint residual.
pub const RESIDUAL_TOL: f64 = 1e-12;
const MAX_ITER: usize = 200;
const MAX_HALVINGS: usize = 40;
const RESTARTS: usize = 5;
/// Largest zone count for the exact vertex scan of `Δ`.
const VERTEX_SCAN_LIMIT: usize = 6;

/// `λ_ij = p_i p_j`.
pub fn maxent_free(p: &[f64]) -> Result<Proportions> {
    check_simplex(p)?;
    let o = p.len();
    let lambda: Vec<Vec<f64>> = (0..o)
        .map(|i| (0..o).map(|j| p[i] * p[j]).collect())
        .collect();
    let mut out = Proportions {
        o,
        p: p.to_vec(),
        lambda,
        model: Model::Free,
        multipliers: Multipliers {
            b: p.to_vec(),
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

/// `λ_ij = b_i b_j` for `|i - j| ≤ k`, with `b_j Σ_{|i-j|≤k} b_i = p_j`.
pub fn maxent_bounded_jump(p: &[f64], k: usize) -> Result<Proportions> {
    check_simplex(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "the jump bound k must be at least 1".into(),
        ));
    }
    let o = p.len();
    let dual = Dual {
        p,
        support: band(o, k),
        delta: None,
    };
    let x0: Vec<f64> = p.iter().map(|v| 0.5 * v.ln()).collect();
    let sol = dual.solve(&x0, 0.0)?;
    Ok(dual.finish(sol, Model::BoundedJump { k }))
}

/// Largest average jump `Δ = max Σ J(i, j) λ_ij` over nonnegative `λ` with
/// row and column sums `p`.
pub fn max_average_jump(p: &[f64]) -> Result<f64> {
    check_simplex(p)?;
    let o = p.len();
    if o <= VERTEX_SCAN_LIMIT {
        Ok(vertex_scan(p))
    } else {
        lp_max_jump(p)
    }
}

/// `λ_ij = b_i b_j c^{J(i,j)}`, symmetric, with row sums `p` and average jump
/// `delta`.
pub fn maxent_fixed_jump(p: &[f64], delta: f64) -> Result<Proportions> {
    check_simplex(p)?;
    let o = p.len();
    let max = max_average_jump(p)?;
    if !(delta >= 0.0) || delta > max + RESIDUAL_TOL {
        return Err(Error::InvalidArgument(format!(
            "average jump {delta} is outside [0, {max}]"
        )));
    }
    let model = Model::FixedJump { delta };
    if max <= RESIDUAL_TOL {
        // every pair has J = 0, so the jump constraint is vacuous
        let mut free = maxent_free(p)?;
        free.model = model;
        free.multipliers.c = Some(1.0);
        free.multipliers.mu = Some(0.0);
        free.degenerate = true;
        return Ok(free);
    }
    if delta <= RESIDUAL_TOL {
        let mut banded = maxent_bounded_jump(p, 1)?;
        banded.model = model;
        banded.multipliers.c = Some(0.0);
        banded.multipliers.mu = Some(f64::INFINITY);
        return Ok(banded);
    }
    if delta >= max - RESIDUAL_TOL {
        return Err(Error::InvalidArgument(format!(
            "average jump {delta} is the maximum {max}; the maximizer is not of exponential form"
        )));
    }
    let dual = Dual {
        p,
        support: vec![vec![true; o]; o],
        delta: Some(delta),
    };
    let x0: Vec<f64> = p.iter().map(|v| v.ln()).collect();
    let sol = dual.solve(&x0, 0.0)?;
    Ok(dual.finish(sol, model))
}

fn band(o: usize, k: usize) -> Vec<Vec<bool>> {
    (0..o)
        .map(|i| (0..o).map(|j| i.abs_diff(j) <= k).collect())
        .collect()
}

struct Solution {
    x: Vec<f64>,
    t: f64,
    iterations: usize,
    residual: f64,
}

/// Convex dual `φ(x, t) = Σ_support e^{x_i + x_j + t J(i,j)} - 2 Σ p_j x_j - δ t`,
/// whose stationary points satisfy the row sums and the jump constraint.
struct Dual<'a> {
    p: &'a [f64],
    support: Vec<Vec<bool>>,
    delta: Option<f64>,
}

impl Dual<'_> {
    fn o(&self) -> usize {
        self.p.len()
    }

    fn dim(&self) -> usize {
        self.o() + usize::from(self.delta.is_some())
    }

    fn lambda(&self, x: &[f64], t: f64) -> Vec<Vec<f64>> {
        let o = self.o();
        (0..o)
            .map(|i| {
                (0..o)
                    .map(|j| {
                        if self.support[i][j] {
                            (x[i] + x[j] + t * jump(i, j) as f64).exp()
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn objective(&self, x: &[f64], t: f64) -> f64 {
        let total: f64 = self.lambda(x, t).iter().flatten().sum();
        let lin: f64 = x.iter().zip(self.p).map(|(a, b)| a * b).sum();
        total - 2.0 * lin - self.delta.unwrap_or(0.0) * t
    }

    /// Gradient, Hessian and constraint residual.
    fn derivatives(&self, x: &[f64], t: f64) -> (DVector<f64>, DMatrix<f64>, f64) {
        let o = self.o();
        let lam = self.lambda(x, t);
        let m = self.dim();
        let mut g = DVector::zeros(m);
        let mut h = DMatrix::zeros(m, m);
        let mut residual: f64 = 0.0;
        for l in 0..o {
            let row: f64 = lam[l].iter().sum();
            g[l] = 2.0 * (row - self.p[l]);
            residual = residual.max((row - self.p[l]).abs());
            for j in 0..o {
                h[(l, j)] += 2.0 * lam[l][j];
            }
            h[(l, l)] += 2.0 * row;
        }
        if let Some(delta) = self.delta {
            let mut mean = 0.0;
            let mut second = 0.0;
            for l in 0..o {
                let mut cross = 0.0;
                for j in 0..o {
                    let jj = jump(l, j) as f64;
                    mean += jj * lam[l][j];
                    second += jj * jj * lam[l][j];
                    cross += jj * lam[l][j];
                }
                h[(l, o)] = 2.0 * cross;
                h[(o, l)] = 2.0 * cross;
            }
            g[o] = mean - delta;
            h[(o, o)] = second;
            residual = residual.max((mean - delta).abs());
        }
        (g, h, residual)
    }

    fn solve(&self, x0: &[f64], t0: f64) -> Result<Solution> {
        let mut last = String::new();
        for restart in 0..RESTARTS {
            let x: Vec<f64> = x0
                .iter()
                .enumerate()
                .map(|(j, v)| v + 0.05 * restart as f64 * ((j % 3) as f64 - 1.0))
                .collect();
            match self.newton(x, t0) {
                Ok(s) => return Ok(s),
                Err(e) => last = e,
            }
        }
        Err(Error::Solver(format!(
            "Newton did not converge after {RESTARTS} starts: {last}"
        )))
    }

    fn newton(&self, mut x: Vec<f64>, mut t: f64) -> std::result::Result<Solution, String> {
        let o = self.o();
        for it in 0..MAX_ITER {
            let (g, h, residual) = self.derivatives(&x, t);
            if residual <= RESIDUAL_TOL / 8.0 {
                return Ok(Solution {
                    x,
                    t,
                    iterations: it,
                    residual,
                });
            }
            let step = match h.clone().cholesky() {
                Some(c) => c.solve(&(-&g)),
                None => h.lu().solve(&(-&g)).ok_or("singular Hessian")?,
            };
            let slope = g.dot(&step);
            let f0 = self.objective(&x, t);
            let mut s = 1.0;
            let mut accepted = false;
            for _ in 0..MAX_HALVINGS {
                let nx: Vec<f64> = (0..o).map(|j| x[j] + s * step[j]).collect();
                let nt = if self.delta.is_some() {
                    t + s * step[o]
                } else {
                    t
                };
                let f1 = self.objective(&nx, nt);
                if f1.is_finite() && f1 <= f0 + 1e-4 * s * slope {
                    x = nx;
                    t = nt;
                    accepted = true;
                    break;
                }
                s *= 0.5;
            }
            if !accepted {
                // no further decrease is representable; accept if already tight
                return if residual <= RESIDUAL_TOL {
                    Ok(Solution {
                        x,
                        t,
                        iterations: it,
                        residual,
                    })
                } else {
                    Err(format!("line search failed at residual {residual:e}"))
                };
            }
        }
        let (_, _, residual) = self.derivatives(&x, t);
        if residual <= RESIDUAL_TOL {
            Ok(Solution {
                x,
                t,
                iterations: MAX_ITER,
                residual,
            })
        } else {
            Err(format!("residual {residual:e} after {MAX_ITER} iterations"))
        }
    }

    fn finish(&self, sol: Solution, model: Model) -> Proportions {
        let lambda = self.lambda(&sol.x, sol.t);
        let b = sol.x.iter().map(|v| v.exp()).collect();
        let (c, mu) = if self.delta.is_some() {
            (Some(sol.t.exp()), Some(-sol.t))
        } else {
            (None, None)
        };
        Proportions {
            o: self.o(),
            p: self.p.to_vec(),
            lambda,
            model,
            multipliers: Multipliers { b, c, mu },
            iterations: sol.iterations,
            residual: sol.residual,
            degenerate: false,
        }
    }
}

/// Symmetric variables `y_ij`, `i ≤ j`, with `Σ_j y_{ij} = p_i`. A symmetric
/// optimum exists because averaging `λ` with its transpose keeps the
/// objective.
fn symmetric_vars(o: usize) -> Vec<(usize, usize)> {
    (0..o).flat_map(|i| (i..o).map(move |j| (i, j))).collect()
}

/// Best basic feasible solution over all bases of `o` symmetric variables.
fn vertex_scan(p: &[f64]) -> f64 {
    let o = p.len();
    let vars = symmetric_vars(o);
    let mut best: f64 = 0.0;
    let mut basis: Vec<usize> = (0..o).collect();
    let rhs = DVector::from_column_slice(p);
    loop {
        let a = DMatrix::from_fn(o, o, |r, c| {
            let (i, j) = vars[basis[c]];
            f64::from(u8::from(r == i || r == j))
        });
        if let Some(y) = a.lu().solve(&rhs) {
            if y.iter().all(|&v| v.is_finite() && v >= -1e-12) {
                let value: f64 = basis
                    .iter()
                    .zip(y.iter())
                    .map(|(&v, &yv)| 2.0 * jump(vars[v].0, vars[v].1) as f64 * yv)
                    .sum();
                best = best.max(value);
            }
        }
        // next combination in lexicographic order
        let m = vars.len();
        let Some(pos) = (0..o).rev().find(|&r| basis[r] < m - o + r) else {
            return best;
        };
        basis[pos] += 1;
        for r in pos + 1..o {
            basis[r] = basis[r - 1] + 1;
        }
    }
}

fn lp_max_jump(p: &[f64]) -> Result<f64> {
    use minilp::{ComparisonOp, OptimizationDirection, Problem};
    let o = p.len();
    let vars = symmetric_vars(o);
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let ids: Vec<_> = vars
        .iter()
        .map(|&(i, j)| lp.add_var(2.0 * jump(i, j) as f64, (0.0, f64::INFINITY)))
        .collect();
    for r in 0..o {
        let terms: Vec<_> = vars
            .iter()
            .zip(&ids)
            .filter(|((i, j), _)| *i == r || *j == r)
            .map(|(_, &v)| (v, 1.0))
            .collect();
        lp.add_constraint(&terms, ComparisonOp::Eq, p[r]);
    }
    lp.solve()
        .map(|s| s.objective())
        .map_err(|e| Error::Solver(format!("linear program failed: {e}")))
}
