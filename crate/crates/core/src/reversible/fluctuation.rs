use serde::Serialize;

use crate::error::{Error, Result};
use crate::system::System;

/// Integer forms of the fluctuation identities for one-step macro
/// transitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FluctuationReport {
    /// `N_ab(alpha)`, target `a`, source `b`.
    pub forward: Vec<Vec<usize>>,
    /// `N_ab(alpha^{-1})`.
    pub backward: Vec<Vec<usize>>,
    /// `N_ab(alpha) = N_ba(alpha^{-1})` for all blocks.
    pub item1: bool,
    /// `N_ab(alpha) = |{j ∈ r(a) : alpha(j) ∈ r(b)}|` for all blocks, when a
    /// reversion is present.
    pub item2: Option<bool>,
    /// Block pairs `(a, b)` where an identity fails.
    pub mismatches: Vec<(usize, usize)>,
}

/// Checks both fluctuation identities exactly. `e^{S(a) - S(b)}` never
/// appears: the identities are compared as counts.
pub fn fluctuation_check(sys: &System) -> Result<FluctuationReport> {
    if !sys.invertible() {
        return Err(Error::NotInvertible);
    }
    let forward = sys.transition_counts(1).counts;
    let backward = sys.inverse()?.transition_counts(1).counts;
    let m = forward.len();
    let mut mismatches = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if forward[a][b] != backward[b][a] {
                mismatches.push((a, b));
            }
        }
    }
    let item1 = mismatches.is_empty();
    let item2 = sys.reversion().map(|r| {
        let p = sys.partition();
        // conj[a][b] = |{j ∈ r(a) : alpha(j) ∈ r(b)}|, scanned from j
        let mut conj = vec![vec![0usize; m]; m];
        for j in 0..sys.n() {
            conj[p.block_of(r[j])][p.block_of(r[sys.alpha(j)])] += 1;
        }
        let mut ok = true;
        for a in 0..m {
            for b in 0..m {
                if forward[a][b] != conj[a][b] {
                    ok = false;
                    mismatches.push((a, b));
                }
            }
        }
        ok
    });
    mismatches.sort_unstable();
    mismatches.dedup();
    Ok(FluctuationReport {
        forward,
        backward,
        item1,
        item2,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::build_system;

    #[test]
    fn identity_is_diagonal() {
        let s = build_system(
            vec![vec![0], vec![1, 2]],
            vec![0, 1, 2],
            Some(vec![0, 1, 2]),
        )
        .unwrap();
        let f = fluctuation_check(&s).unwrap();
        assert_eq!(f.forward, vec![vec![1, 0], vec![0, 2]]);
        assert!(f.item1 && f.item2 == Some(true));
    }

    #[test]
    fn staircase_counts() {
        let s = build_system(vec![vec![0], vec![1, 2]], vec![1, 2, 0], None).unwrap();
        let f = fluctuation_check(&s).unwrap();
        assert!(f.item1);
        assert_eq!(f.item2, None);
        assert_eq!(f.backward, vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn needs_invertible() {
        let s = build_system(vec![vec![0, 1]], vec![0, 0], None).unwrap();
        assert!(fluctuation_check(&s).is_err());
    }
}
