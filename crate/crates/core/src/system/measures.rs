use serde::Serialize;

use super::{Partition, System};
use crate::numeric::{qu, shannon, Q};

/// Entropies and the `D`/`I`/`C` and equilibrium sets of a system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyReport {
    /// `ln|a|` per block id.
    pub s_block: Vec<f64>,
    /// Mean Boltzmann entropy `S(A) = Σ |a| ln|a| / n`.
    pub s_a: f64,
    /// Shannon entropy of `p_a = |a| / n`.
    pub h_p: f64,
    /// Shannon entropy `-Σ ln(T_ab) T_ab p_b` of the macro transitions.
    pub h_t: f64,
    pub d: Vec<usize>,
    pub i: Vec<usize>,
    pub c: Vec<usize>,
    pub xeq: Vec<usize>,
    pub xneq: Vec<usize>,
}

/// Exact macro transition counts `N_ab = |{i ∈ b : alpha^k(i) ∈ a}|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionCounts {
    /// `counts[a][b]`, target block `a`, source block `b`.
    pub counts: Vec<Vec<usize>>,
    pub block_sizes: Vec<usize>,
}

/// Zones: unions of all blocks with a common size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZoneProfile {
    /// Realized block sizes `k_1 < ... < k_o`.
    pub sizes: Vec<usize>,
    /// `|π̂_{k_j}|` per zone.
    pub zone_card: Vec<usize>,
    /// Sorted microstates per zone.
    pub zone_members: Vec<Vec<usize>>,
}

/// Per-microstate jumps and their total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpSet {
    pub per_state: Vec<usize>,
    pub total: usize,
}

impl TransitionCounts {
    /// `T_ab = N_ab / |b|` as an exact rational.
    pub fn t(&self, a: usize, b: usize) -> Q {
        qu(self.counts[a][b], self.block_sizes[b])
    }

    pub fn num_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    /// `Σ_a N_ab = |b|` for every `b`.
    pub fn is_column_stochastic(&self) -> bool {
        (0..self.num_blocks()).all(|b| {
            (0..self.num_blocks())
                .map(|a| self.counts[a][b])
                .sum::<usize>()
                == self.block_sizes[b]
        })
    }

    /// Transposed counts.
    pub fn transpose(&self) -> Vec<Vec<usize>> {
        let m = self.num_blocks();
        (0..m)
            .map(|a| (0..m).map(|b| self.counts[b][a]).collect())
            .collect()
    }
}

impl ZoneProfile {
    pub fn of(p: &Partition) -> Self {
        let mut sizes: Vec<usize> = p.block_sizes();
        sizes.sort_unstable();
        sizes.dedup();
        let mut zone_members = vec![Vec::new(); sizes.len()];
        for i in 0..p.n() {
            let z = sizes.binary_search(&p.size_of(i)).unwrap();
            zone_members[z].push(i);
        }
        let zone_card = zone_members.iter().map(Vec::len).collect();
        Self {
            sizes,
            zone_card,
            zone_members,
        }
    }

    /// Builds the profile of consecutive blocks with the given
    /// `(block size, block count)` pairs.
    pub fn from_counts(spec: &[(usize, usize)]) -> Self {
        let sizes: Vec<usize> = spec
            .iter()
            .flat_map(|&(s, c)| std::iter::repeat_n(s, c))
            .collect();
        Self::of(&Partition::from_sizes(&sizes))
    }

    /// Number of zones `o`.
    pub fn o(&self) -> usize {
        self.sizes.len()
    }

    pub fn n(&self) -> usize {
        self.zone_card.iter().sum()
    }

    /// Zone index of a block size.
    pub fn zone_of_size(&self, size: usize) -> Option<usize> {
        self.sizes.binary_search(&size).ok()
    }

    /// Number of blocks in zone `j`.
    pub fn block_count(&self, j: usize) -> usize {
        self.zone_card[j] / self.sizes[j]
    }

    /// `|X^neq|`, the cardinality of all but the top zone.
    pub fn neq_card(&self) -> usize {
        self.n() - self.zone_card.last().copied().unwrap_or(0)
    }
}

impl System {
    pub fn entropy_report(&self) -> EntropyReport {
        let p = self.partition();
        let n = self.n() as f64;
        let s_block: Vec<f64> = p.blocks().iter().map(|b| (b.len() as f64).ln()).collect();
        let s_a = p.mean_entropy();
        let h_p = shannon(p.blocks().iter().map(|b| b.len() as f64 / n));
        let tc = self.transition_counts(1);
        let mut h_t = 0.0;
        for a in 0..tc.num_blocks() {
            for b in 0..tc.num_blocks() {
                let nab = tc.counts[a][b];
                if nab > 0 {
                    let t = nab as f64 / tc.block_sizes[b] as f64;
                    h_t -= t.ln() * t * (tc.block_sizes[b] as f64 / n);
                }
            }
        }
        let (d, i, c) = self.dic();
        EntropyReport {
            s_block,
            s_a,
            h_p,
            h_t,
            d,
            i,
            c,
            xeq: self.xeq(),
            xneq: self.xneq(),
        }
    }

    /// Counts for `alpha^steps`, computed from the iterated map itself.
    pub fn transition_counts(&self, steps: usize) -> TransitionCounts {
        let p = self.partition();
        let m = p.num_blocks();
        let mut counts = vec![vec![0; m]; m];
        let map = self.dynamics().power(steps);
        for i in 0..self.n() {
            counts[p.block_of(map.apply(i))][p.block_of(i)] += 1;
        }
        TransitionCounts {
            counts,
            block_sizes: p.block_sizes(),
        }
    }

    pub fn zone_profile(&self) -> ZoneProfile {
        ZoneProfile::of(self.partition())
    }

    /// `J_alpha(i)`: realized block sizes strictly between `|i|` and `|alpha(i)|`.
    pub fn jump_set(&self) -> JumpSet {
        let zp = self.zone_profile();
        let per_state: Vec<usize> = (0..self.n())
            .map(|i| {
                let a = zp.zone_of_size(self.size(i)).unwrap();
                let b = zp.zone_of_size(self.size(self.alpha(i))).unwrap();
                a.abs_diff(b).saturating_sub(1)
            })
            .collect();
        let total = per_state.iter().sum();
        JumpSet { per_state, total }
    }

    /// Whether every step moves at most between adjacent zones.
    pub fn is_zero_jump(&self) -> bool {
        self.jump_set().total == 0
    }
}
