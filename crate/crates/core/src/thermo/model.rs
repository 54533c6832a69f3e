use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on `Σ p_i = 1`.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Which maximum-entropy model produced a set of proportions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Model {
    Free,
    /// Transitions only between zones at distance at most `k`.
    BoundedJump {
        k: usize,
    },
    /// Average jump fixed to `delta`.
    FixedJump {
        delta: f64,
    },
}

/// Solver outputs: `λ_ij = b_i b_j c^{J(i,j)}` on the model's support.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Multipliers {
    pub b: Vec<f64>,
    /// `c = e^{-μ}`; `None` outside the fixed-jump model.
    pub c: Option<f64>,
    /// The jump multiplier `μ`; infinite when `c = 0`.
    pub mu: Option<f64>,
}

/// Zone proportions `p_i` and transition proportions `λ_ij` (target `i`,
/// source `j`) of a thermodynamic limit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Proportions {
    pub o: usize,
    pub p: Vec<f64>,
    pub lambda: Vec<Vec<f64>>,
    pub model: Model,
    pub multipliers: Multipliers,
    pub iterations: usize,
    /// Largest violation of the row sums and, for the fixed-jump model, the
    /// jump constraint.
    pub residual: f64,
    /// The jump constraint carries no information (every supported pair has
    /// `J = 0`), so the free model was returned.
    pub degenerate: bool,
}

/// `J(i, j) = |i - j| + δ_ij - 1`, which is 0 on the diagonal and between
/// neighbours.
pub fn jump(i: usize, j: usize) -> usize {
    (i.abs_diff(j) + usize::from(i == j)).saturating_sub(1)
}

/// `-Σ x ln x` over positive entries.
pub fn entropy(lambda: &[Vec<f64>]) -> f64 {
    lambda
        .iter()
        .flatten()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .sum()
}

pub fn check_simplex(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidArgument("no zone proportions".into()));
    }
    if let Some(x) = p.iter().find(|&&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "zone proportion {x} is not positive"
        )));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > SIMPLEX_TOL * p.len() as f64 {
        return Err(Error::InvalidArgument(format!(
            "zone proportions sum to {total}, not 1"
        )));
    }
    Ok(())
}

impl Proportions {
    pub fn entropy(&self) -> f64 {
        entropy(&self.lambda)
    }

    /// `Σ J(i, j) λ_ij`.
    pub fn average_jump(&self) -> f64 {
        let o = self.o;
        (0..o)
            .flat_map(|i| (0..o).map(move |j| (i, j)))
            .map(|(i, j)| jump(i, j) as f64 * self.lambda[i][j])
            .sum()
    }

    /// Largest `|Σ_i λ_ij - p_j|` or `|Σ_j λ_ij - p_i|`.
    pub fn marginal_error(&self) -> f64 {
        let o = self.o;
        (0..o)
            .map(|j| {
                let col: f64 = (0..o).map(|i| self.lambda[i][j]).sum();
                let row: f64 = self.lambda[j].iter().sum();
                (col - self.p[j]).abs().max((row - self.p[j]).abs())
            })
            .fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let o = self.o;
        (0..o).all(|i| (0..o).all(|j| (self.lambda[i][j] - self.lambda[j][i]).abs() <= tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jump_values() {
        assert_eq!(
            (jump(0, 0), jump(0, 1), jump(0, 2), jump(3, 0)),
            (0, 0, 1, 2)
        );
    }

    #[test]
    fn simplex_checks() {
        assert!(check_simplex(&[0.1, 0.2, 0.7]).is_ok());
        assert!(check_simplex(&[0.5, 0.6]).is_err());
        assert!(check_simplex(&[0.0, 1.0]).is_err());
        assert!(check_simplex(&[]).is_err());
    }
}
