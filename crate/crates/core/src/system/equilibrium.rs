use serde::Serialize;

use super::{Partition, System};
use crate::error::{Error, Result};

/// Equilibrium reaching times `e(i)` and their maximum `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReachingTime {
    pub e: Vec<usize>,
    pub max: usize,
}

/// The system `(X, [0, E], e, alpha)` with its hypothesis check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedTime {
    pub system: System,
    pub time: ReachingTime,
    /// Whether `alpha X^eq` meets every level set `e^{-1}(k)`, `k ∈ [0, E]`.
    pub hypothesis_holds: bool,
}

impl System {
    /// Least `k ≥ 0` with `alpha^k(i) ∈ X^eq`, for every `i`.
    pub fn equilibrium_reaching_time(&self) -> Result<ReachingTime> {
        let n = self.n();
        const UNKNOWN: usize = usize::MAX;
        let mut e = vec![UNKNOWN; n];
        for i in 0..n {
            if self.is_eq(i) {
                e[i] = 0;
            }
        }
        let mut path = Vec::new();
        let mut on_path = vec![false; n];
        for start in 0..n {
            if e[start] != UNKNOWN {
                continue;
            }
            path.clear();
            let mut i = start;
            while e[i] == UNKNOWN {
                if on_path[i] {
                    let pos = path.iter().position(|&p| p == i).unwrap();
                    let orbit = path[pos..].to_vec();
                    return Err(Error::NotEquilibriumBound { orbit });
                }
                on_path[i] = true;
                path.push(i);
                i = self.alpha(i);
            }
            let mut t = e[i];
            for &p in path.iter().rev() {
                t += 1;
                e[p] = t;
                on_path[p] = false;
            }
        }
        let max = e.iter().copied().max().unwrap_or(0);
        Ok(ReachingTime { e, max })
    }

    /// Whether every orbit meets the equilibrium set.
    pub fn is_equilibrium_bound(&self) -> bool {
        self.equilibrium_reaching_time().is_ok()
    }

    pub fn derived_time_system(&self) -> Result<DerivedTime> {
        if !self.invertible() {
            return Err(Error::NotInvertible);
        }
        let time = self.equilibrium_reaching_time()?;
        let partition = Partition::from_labels(&time.e);
        let system = System::new(partition, self.dynamics().clone(), None)?;
        let mut hit = vec![false; time.max + 1];
        for i in self.xeq() {
            hit[time.e[self.alpha(i)]] = true;
        }
        let hypothesis_holds = hit.iter().all(|&h| h);
        Ok(DerivedTime {
            system,
            time,
            hypothesis_holds,
        })
    }
}
