use serde::{Deserialize, Serialize};

use super::chains::{build_not, ChainSpec, Colored, NotKind};
use crate::error::{Error, Result};
use crate::system::{Dynamics, Partition, System};

/// Which kind of reversion the decomposition expects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReversionKind {
    /// `f r = f`.
    Invariant,
    /// `r` descends to an involution of the blocks.
    Equivariant,
}

/// The four parts of a reversible system and the certificate that their
/// union is isomorphic to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub mode: ReversionKind,
    /// Involution on block ids induced by the reversion.
    pub rho: Vec<usize>,
    /// Part 1 before doubling: one cycle from each pair `c ≠ r(c)`.
    pub base: System,
    /// Block id of every microstate of `base`.
    pub base_labels: Vec<usize>,
    /// Part 1 after doubling; the mirrored sheet is colored through `rho`.
    pub doubled: Colored,
    pub n_chains: Vec<ChainSpec>,
    pub o_chains: Vec<ChainSpec>,
    pub t_chains: Vec<ChainSpec>,
    pub n_part: Colored,
    pub o_part: Colored,
    pub t_part: Colored,
    /// Union of the four parts in the order doubled, n, o, t.
    pub assembled: Colored,
    /// `phi[i]` is the microstate of `assembled` that `i` maps to.
    pub certificate: Vec<usize>,
    pub verified: bool,
}

impl Decomposition {
    /// Microstates in parts 1 to 4.
    pub fn part_sizes(&self) -> [usize; 4] {
        [
            self.doubled.n(),
            self.n_part.n(),
            self.o_part.n(),
            self.t_part.n(),
        ]
    }
}

/// Doubles `base` into sheets `(k, +1) ↦ k` and `(k, -1) ↦ n + k` with
/// `alpha^{-1}` on the mirrored sheet, coloring `(k, -1)` by `rho(label)`.
pub fn double_colored(base: &System, labels: &[usize], rho: &[usize]) -> Result<Colored> {
    let inv = base.dynamics().inverse().ok_or(Error::NotInvertible)?;
    let n = base.n();
    let image = (0..n)
        .map(|i| base.alpha(i))
        .chain((0..n).map(|i| n + inv.apply(i)))
        .collect();
    let rev = (0..n).map(|i| n + i).chain(0..n).collect();
    let all = labels
        .iter()
        .copied()
        .chain(labels.iter().map(|&a| rho[a]))
        .collect();
    Colored::new(image, rev, all)
}

/// Splits a reversible system into a doubled part and the `n`, `o` and `t`
/// constructions, with an explicit isomorphism.
///
/// Each cycle `c` with `r(c) ≠ c` is paired with `r(c)`; the member with the
/// smallest microstate goes to part 1. On a cycle with `r(c) = c` the
/// reversion is a reflection with 0, 1 or 2 fixed points, giving an `n`, `o`
/// or `t` chain. Chains start at the smallest admissible microstate.
pub fn decompose_reversible(sys: &System, mode: ReversionKind) -> Result<Decomposition> {
    let r = sys
        .reversion()
        .ok_or_else(|| Error::InvalidReversion("system has no reversion".into()))?
        .to_vec();
    let ok = match mode {
        ReversionKind::Invariant => sys.is_invariant(),
        ReversionKind::Equivariant => sys.is_equivariant(),
    };
    if !ok {
        return Err(Error::InvalidReversion(
            format!("reversion is not {mode:?}").to_lowercase(),
        ));
    }
    let rho = sys.block_involution().expect("checked above");
    let p = sys.partition();
    let a = |i: usize| sys.alpha(i);
    let color = |i: usize| p.block_of(i);
    let cycles = sys.dynamics().orbits().cycles;
    let n = sys.n();
    let mut cycle_of = vec![0; n];
    for (k, c) in cycles.iter().enumerate() {
        for &i in c {
            cycle_of[i] = k;
        }
    }
    let mut base_states = Vec::new();
    let mut n_chains = Vec::new();
    let mut o_chains = Vec::new();
    let mut t_chains = Vec::new();
    // chain microstates in chain order, then o, then t, per kind
    let mut n_seq: Vec<Vec<usize>> = Vec::new();
    let mut o_seq: Vec<Vec<usize>> = Vec::new();
    let mut t_seq: Vec<Vec<usize>> = Vec::new();
    for (k, c) in cycles.iter().enumerate() {
        let partner = cycle_of[r[c[0]]];
        if partner != k {
            // cycles start at their smallest element, so compare heads
            if c[0] < cycles[partner][0] {
                base_states.extend_from_slice(c);
            }
            continue;
        }
        let fixed: Vec<usize> = c.iter().copied().filter(|&i| r[i] == i).collect();
        let len = c.len();
        match fixed.len() {
            0 => {
                let l0 = c
                    .iter()
                    .copied()
                    .filter(|&u| a(u) == r[u])
                    .map(|u| r[u])
                    .min()
                    .expect("reflection without fixed points has an axis edge");
                let chain: Vec<usize> = std::iter::successors(Some(l0), |&x| Some(a(x)))
                    .take(len / 2)
                    .collect();
                n_chains.push(ChainSpec {
                    colors: chain.iter().map(|&x| color(x)).collect(),
                    g: None,
                    h: None,
                });
                n_seq.push(chain);
            }
            1 => {
                let o = fixed[0];
                let chain: Vec<usize> = std::iter::successors(Some(a(o)), |&x| Some(a(x)))
                    .take(len / 2)
                    .collect();
                o_chains.push(ChainSpec {
                    colors: chain.iter().map(|&x| color(x)).collect(),
                    g: Some(color(o)),
                    h: None,
                });
                let mut seq = chain;
                seq.push(o);
                o_seq.push(seq);
            }
            2 => {
                let o = fixed[0].min(fixed[1]);
                let half = (len - 2) / 2;
                let chain: Vec<usize> = std::iter::successors(Some(a(o)), |&x| Some(a(x)))
                    .take(half)
                    .collect();
                let t = sys.dynamics().power(half + 1).apply(o);
                t_chains.push(ChainSpec {
                    colors: chain.iter().map(|&x| color(x)).collect(),
                    g: Some(color(o)),
                    h: Some(color(t)),
                });
                let mut seq = chain;
                seq.push(o);
                seq.push(t);
                t_seq.push(seq);
            }
            _ => {
                return Err(Error::InvalidReversion(
                    "reversion has more than two fixed points on a cycle".into(),
                ))
            }
        }
    }
    base_states.sort_unstable();
    let mut base_index = vec![usize::MAX; n];
    for (k, &i) in base_states.iter().enumerate() {
        base_index[i] = k;
    }
    let base_image: Vec<usize> = base_states.iter().map(|&i| base_index[a(i)]).collect();
    let base_labels: Vec<usize> = base_states.iter().map(|&i| color(i)).collect();
    let base = System::new(
        Partition::from_labels(&base_labels),
        Dynamics::new(base_image)?,
        None,
    )?;
    let doubled = double_colored(&base, &base_labels, &rho)?;
    let n_part = build_not(NotKind::N, &n_chains, Some(&rho))?;
    let o_part = build_not(NotKind::O, &o_chains, Some(&rho))?;
    let t_part = build_not(NotKind::T, &t_chains, Some(&rho))?;
    let assembled = Colored::concat(&[&doubled, &n_part, &o_part, &t_part])?;

    let mut phi = vec![usize::MAX; n];
    let n1 = base_states.len();
    for (k, &i) in base_states.iter().enumerate() {
        phi[i] = k;
        phi[r[i]] = n1 + k;
    }
    let mut off = 2 * n1;
    for (seqs, kind) in [
        (&n_seq, NotKind::N),
        (&o_seq, NotKind::O),
        (&t_seq, NotKind::T),
    ] {
        for seq in seqs {
            let extra = match kind {
                NotKind::N => 0,
                NotKind::O => 1,
                NotKind::T => 2,
            };
            let len = seq.len() - extra;
            for (l, &x) in seq[..len].iter().enumerate() {
                phi[x] = off + l;
                phi[r[x]] = off + len + l;
            }
            for (e, &x) in seq[len..].iter().enumerate() {
                phi[x] = off + 2 * len + e;
            }
            off += 2 * len + extra;
        }
    }
    let expected: Vec<usize> = (0..n).map(color).collect();
    let verified = verify_certificate(sys, &expected, &assembled, &phi);
    Ok(Decomposition {
        mode,
        rho,
        base,
        base_labels,
        doubled,
        n_chains,
        o_chains,
        t_chains,
        n_part,
        o_part,
        t_part,
        assembled,
        certificate: phi,
        verified,
    })
}

/// Whether `phi` is a bijection onto `target` commuting with the dynamics and
/// the reversions, and carrying `labels[i]` to `target.labels[phi(i)]`.
pub fn verify_certificate(sys: &System, labels: &[usize], target: &Colored, phi: &[usize]) -> bool {
    let n = sys.n();
    if phi.len() != n || target.n() != n || labels.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &j in phi {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return false;
        }
    }
    let (Some(r), Some(r2)) = (sys.reversion(), target.system.reversion()) else {
        return false;
    };
    (0..n).all(|i| {
        phi[sys.alpha(i)] == target.system.alpha(phi[i])
            && phi[r[i]] == r2[phi[i]]
            && target.labels[phi[i]] == labels[i]
    })
}
