use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::checks::{check_gat, check_l1, check_l2, check_l3, check_l4};
use super::verdict::{PropertyVerdict, Relation};
use crate::error::{Error, Result};
use crate::numeric::{qu, Q};
use crate::system::{Partition, System, Trend};

/// Sufficient conditions for the second-law properties. Each variant names
/// the hypothesis that is checked and the property it concludes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sufficient {
    /// `|X^neq| ≤ ε|X|` (the optimal choice of the bounds `δ1 ≤ δ2`);
    /// concludes `L1(ε)` for every permutation.
    DominantEquilibrium { eps: Q },
    /// `T_ab ≤ ε/|A_{<b}|` whenever `|a| < |b|`; concludes `L1(ε)`.
    TransitionBoundL1 { eps: Q },
    /// `T_ab ≤ ε/|A_{≤b}|` whenever `|a| ≤ |b|`, `b ∈ A^neq`; concludes
    /// `GAT(ε)`.
    TransitionBoundGat { eps: Q },
    /// `|X^eq| ≥ (1-ε1)|X|` and `|D X^eq| ≥ (1-ε2)|X^neq|` for a permutation;
    /// concludes `L2(ε1, ε2)`.
    EquilibriumOutflowL2 { e1: Q, e2: Q },
    /// Dominant equilibrium plus `(Σ_{i ≤ o-2}|π̂_i| + |C X^neq|) ≤ ε2|X^neq|`
    /// for a permutation; concludes `L2(ε1, ε2)`.
    ZoneBoundL2 { e1: Q, e2: Q },
    /// Dominant equilibrium plus zone growth `γ_i = Σ_{j<i}|π̂_j|/|π̂_i|` and
    /// `|C π̂_i| ≤ (ε2 - γ_i)|π̂_i|`; concludes `L3(ε1, ε2)`.
    ZonalL3 { e1: Q, e2: Q },
    /// As [`Sufficient::ZonalL3`] for zero-jump permutations with
    /// `γ_i = |π̂_{i-1}|/|π̂_i|`.
    ZeroJumpL3 { e1: Q, e2: Q },
    /// Dominant equilibrium, an edge-Lipschitz permutation whose decreases
    /// follow macro edges, and `|Ca| + |Ba| ≤ ε2|a|`; concludes
    /// `L4(ε1, ε2)`.
    LipschitzL4 {
        e1: Q,
        e2: Q,
        edges: Vec<(usize, usize)>,
    },
    /// As [`Sufficient::LipschitzL4`] for zero-jump permutations, with `Fa`
    /// in place of `Ba`.
    LipschitzZeroJumpL4 {
        e1: Q,
        e2: Q,
        edges: Vec<(usize, usize)>,
    },
}

impl Sufficient {
    pub fn name(&self) -> &'static str {
        match self {
            Sufficient::DominantEquilibrium { .. } => "dominant-equilibrium",
            Sufficient::TransitionBoundL1 { .. } => "transition-bound-l1",
            Sufficient::TransitionBoundGat { .. } => "transition-bound-gat",
            Sufficient::EquilibriumOutflowL2 { .. } => "equilibrium-outflow-l2",
            Sufficient::ZoneBoundL2 { .. } => "zone-bound-l2",
            Sufficient::ZonalL3 { .. } => "zonal-l3",
            Sufficient::ZeroJumpL3 { .. } => "zero-jump-l3",
            Sufficient::LipschitzL4 { .. } => "lipschitz-l4",
            Sufficient::LipschitzZeroJumpL4 { .. } => "lipschitz-zero-jump-l4",
        }
    }
}

/// Hypothesis and conclusion of a sufficient condition on one system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SufficientVerdict {
    pub condition: String,
    pub hypothesis: PropertyVerdict,
    pub conclusion: PropertyVerdict,
    /// `false` only when the hypothesis holds and the conclusion fails.
    pub consistent: bool,
}

/// Evaluates the hypothesis exactly and checks the concluded property.
pub fn sufficient_conditions(sys: &System, which: &Sufficient) -> Result<SufficientVerdict> {
    use Sufficient::*;
    let (hypothesis, conclusion) = match which {
        DominantEquilibrium { eps } => (
            PropertyVerdict::conjunction("hypothesis", vec![permutation(sys), dominant(sys, eps)]),
            check_l1(sys, eps),
        ),
        TransitionBoundL1 { eps } => (transition_bound(sys, eps, false), check_l1(sys, eps)),
        TransitionBoundGat { eps } => (transition_bound(sys, eps, true), check_gat(sys, eps)),
        EquilibriumOutflowL2 { e1, e2 } => {
            let xeq = sys.xeq();
            let eq_part = PropertyVerdict::ratio(
                "equilibrium-fraction",
                qu(xeq.len(), sys.n().max(1)),
                Relation::AtLeast,
                Q::one() - e1,
                Vec::new(),
            );
            let neq = sys.n() - xeq.len();
            let bound = Q::one() - e2;
            let out = if neq == 0 {
                PropertyVerdict::vacuous("equilibrium-outflow", Relation::AtLeast, bound)
            } else {
                let d_eq = xeq
                    .iter()
                    .filter(|&&i| sys.trend(i) == Trend::Decrease)
                    .count();
                PropertyVerdict::ratio(
                    "equilibrium-outflow",
                    qu(d_eq, neq),
                    Relation::AtLeast,
                    bound,
                    Vec::new(),
                )
            };
            (
                PropertyVerdict::conjunction("hypothesis", vec![permutation(sys), eq_part, out]),
                check_l2(sys, e1, e2),
            )
        }
        ZoneBoundL2 { e1, e2 } => {
            let zp = sys.zone_profile();
            let neq = zp.neq_card();
            let part = if neq == 0 {
                PropertyVerdict::vacuous("lower-zones-and-constant", Relation::AtMost, e2.clone())
            } else {
                let lower: usize = zp.zone_card.iter().take(zp.o().saturating_sub(2)).sum();
                let c_neq = sys
                    .xneq()
                    .into_iter()
                    .filter(|&i| sys.trend(i) == Trend::Constant)
                    .count();
                PropertyVerdict::ratio(
                    "lower-zones-and-constant",
                    qu(lower + c_neq, neq),
                    Relation::AtMost,
                    e2.clone(),
                    Vec::new(),
                )
            };
            (
                PropertyVerdict::conjunction(
                    "hypothesis",
                    vec![permutation(sys), dominant(sys, e1), part],
                ),
                check_l2(sys, e1, e2),
            )
        }
        ZonalL3 { e1, e2 } => (zonal(sys, e1, e2, false), check_l3(sys, e1, e2)),
        ZeroJumpL3 { e1, e2 } => (zonal(sys, e1, e2, true), check_l3(sys, e1, e2)),
        LipschitzL4 { e1, e2, edges } => {
            (lipschitz(sys, e1, e2, edges, false)?, check_l4(sys, e1, e2))
        }
        LipschitzZeroJumpL4 { e1, e2, edges } => {
            (lipschitz(sys, e1, e2, edges, true)?, check_l4(sys, e1, e2))
        }
    };
    let consistent = !hypothesis.holds || conclusion.holds;
    Ok(SufficientVerdict {
        condition: which.name().into(),
        hypothesis,
        conclusion,
        consistent,
    })
}

fn permutation(sys: &System) -> PropertyVerdict {
    PropertyVerdict::flag("permutation", sys.invertible())
}

/// `|X^neq|/|X| ≤ ε`.
fn dominant(sys: &System, eps: &Q) -> PropertyVerdict {
    PropertyVerdict::ratio(
        "dominant-equilibrium",
        qu(sys.xneq().len(), sys.n().max(1)),
        Relation::AtMost,
        eps.clone(),
        Vec::new(),
    )
}

/// Largest `T_ab |A_{<b}|` over `|a| < |b|` (or `T_ab |A_{≤b}|` over
/// `|a| ≤ |b|`, `b` nonequilibrium, when `gat`); witnesses are source blocks.
fn transition_bound(sys: &System, eps: &Q, gat: bool) -> PropertyVerdict {
    let tc = sys.transition_counts(1);
    let sizes = &tc.block_sizes;
    let top = sizes.iter().copied().max().unwrap_or(0);
    let m = sizes.len();
    let mut worst: Option<Q> = None;
    let mut bad = Vec::new();
    for b in 0..m {
        if gat && sizes[b] == top {
            continue;
        }
        let below = sizes
            .iter()
            .filter(|&&s| if gat { s <= sizes[b] } else { s < sizes[b] })
            .count();
        for a in 0..m {
            let relevant = if gat {
                sizes[a] <= sizes[b]
            } else {
                sizes[a] < sizes[b]
            };
            if !relevant {
                continue;
            }
            let x = tc.t(a, b) * Q::from_integer(below.into());
            if x > *eps && bad.last() != Some(&b) {
                bad.push(b);
            }
            if worst.as_ref().is_none_or(|w| x > *w) {
                worst = Some(x);
            }
        }
    }
    let name = if gat {
        "transition-bound-gat"
    } else {
        "transition-bound-l1"
    };
    match worst {
        Some(lhs) => PropertyVerdict::ratio(name, lhs, Relation::AtMost, eps.clone(), bad),
        None => PropertyVerdict::vacuous(name, Relation::AtMost, eps.clone()),
    }
}

fn zonal(sys: &System, e1: &Q, e2: &Q, zero_jump: bool) -> PropertyVerdict {
    let zp = sys.zone_profile();
    let below = zp.o().saturating_sub(1);
    let card = |j: usize| zp.zone_card[j];
    let gamma = |j: usize| -> Q {
        if j == 0 {
            Q::zero()
        } else if zero_jump {
            qu(card(j - 1), card(j))
        } else {
            qu((0..j).map(card).sum(), card(j))
        }
    };
    let growth = worst_of(
        "zone-growth",
        (1..below).map(|j| (j, gamma(j))),
        Relation::AtMost,
        e2.clone(),
    );
    let constant = |j: usize| {
        zp.zone_members[j]
            .iter()
            .filter(|&&i| sys.trend(i) == Trend::Constant)
            .count()
    };
    let budget = worst_of(
        "constant-budget",
        (0..below).map(|j| (j, qu(constant(j), card(j)) + gamma(j))),
        Relation::AtMost,
        e2.clone(),
    );
    let mut parts = vec![permutation(sys)];
    if zero_jump {
        parts.push(PropertyVerdict::flag("zero-jump", sys.is_zero_jump()));
    }
    parts.extend([dominant(sys, e1), growth, budget]);
    PropertyVerdict::conjunction("hypothesis", parts)
}

/// Undirected edges as normalized pairs, validated against `n`.
fn edge_set(n: usize, edges: &[(usize, usize)]) -> Result<BTreeSet<(usize, usize)>> {
    let mut set = BTreeSet::new();
    for &(i, j) in edges {
        if i >= n || j >= n {
            return Err(Error::InvalidArgument(format!(
                "edge ({i}, {j}) out of range"
            )));
        }
        if i == j {
            return Err(Error::InvalidArgument(format!(
                "loop at {i} in a simple graph"
            )));
        }
        set.insert((i.min(j), i.max(j)));
    }
    Ok(set)
}

/// Whether `alpha` maps every edge to an edge or collapses it.
pub fn is_edge_lipschitz(sys: &System, edges: &[(usize, usize)]) -> Result<bool> {
    let set = edge_set(sys.n(), edges)?;
    Ok(set.iter().all(|&(i, j)| {
        let (x, y) = (sys.alpha(i), sys.alpha(j));
        x == y || set.contains(&(x.min(y), x.max(y)))
    }))
}

/// Block adjacency induced by the microstate graph.
pub fn macro_edges(p: &Partition, edges: &[(usize, usize)]) -> Result<BTreeSet<(usize, usize)>> {
    let set = edge_set(p.n(), edges)?;
    Ok(set
        .into_iter()
        .map(|(i, j)| (p.block_of(i), p.block_of(j)))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect())
}

fn lipschitz(
    sys: &System,
    e1: &Q,
    e2: &Q,
    edges: &[(usize, usize)],
    zero_jump: bool,
) -> Result<PropertyVerdict> {
    let p = sys.partition();
    let medges = macro_edges(p, edges)?;
    let adjacent = |a: usize, b: usize| medges.contains(&(a.min(b), a.max(b)));
    let zp = sys.zone_profile();
    let zone = |a: usize| zp.zone_of_size(p.block(a).len()).unwrap();
    let top = p.max_block_size();
    // decreases must land in a block adjacent to the source block
    let step_continuous = (0..sys.n()).all(|i| {
        let (a, b) = (p.block_of(i), p.block_of(sys.alpha(i)));
        sys.trend(i) != Trend::Decrease || adjacent(a, b)
    });
    let neq_blocks: Vec<usize> = (0..p.num_blocks())
        .filter(|&a| p.block(a).len() < top)
        .collect();
    let neighbour_mass = |a: usize| -> usize {
        (0..p.num_blocks())
            .filter(|&b| p.block(b).len() < p.block(a).len() && adjacent(a, b))
            .filter(|&b| !zero_jump || zone(b) + 1 == zone(a))
            .map(|b| p.block(b).len())
            .sum()
    };
    let gamma = |a: usize| qu(neighbour_mass(a), p.block(a).len());
    let constant = |a: usize| {
        p.block(a)
            .iter()
            .filter(|&&i| sys.trend(i) == Trend::Constant)
            .count()
    };
    let mass = worst_of(
        "neighbour-mass",
        neq_blocks.iter().map(|&a| (a, gamma(a))),
        Relation::AtMost,
        e2.clone(),
    );
    let budget = worst_of(
        "constant-budget",
        neq_blocks
            .iter()
            .map(|&a| (a, qu(constant(a), p.block(a).len()) + gamma(a))),
        Relation::AtMost,
        e2.clone(),
    );
    let mut parts = vec![
        permutation(sys),
        PropertyVerdict::flag("edge-lipschitz", is_edge_lipschitz(sys, edges)?),
        PropertyVerdict::flag("step-continuous", step_continuous),
    ];
    if zero_jump {
        parts.push(PropertyVerdict::flag("zero-jump", sys.is_zero_jump()));
    }
    parts.extend([dominant(sys, e1), mass, budget]);
    Ok(PropertyVerdict::conjunction("hypothesis", parts))
}

fn worst_of(
    name: &str,
    items: impl Iterator<Item = (usize, Q)>,
    rel: Relation,
    bound: Q,
) -> PropertyVerdict {
    let mut worst: Option<Q> = None;
    let mut bad = Vec::new();
    for (label, x) in items {
        if !rel.test(&x, &bound) {
            bad.push(label);
        }
        let replace = match (&worst, rel) {
            (None, _) => true,
            (Some(w), Relation::AtMost) => x > *w,
            (Some(w), Relation::AtLeast) => x < *w,
        };
        if replace {
            worst = Some(x);
        }
    }
    match worst {
        Some(lhs) => PropertyVerdict::ratio(name, lhs, rel, bound, bad),
        None => PropertyVerdict::vacuous(name, rel, bound),
    }
}
