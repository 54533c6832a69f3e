use super::{Dynamics, Partition, System};
use crate::error::{Error, Result};

/// Result of a coarse-graining together with its entropy checks.
#[derive(Clone, Debug, PartialEq)]
pub struct CoarseGrained {
    pub system: System,
    /// `S(B) ≥ S(A)`.
    pub boltzmann_nondecreasing: bool,
    /// `H(p_B) + H(T_B) ≤ H(p_A) + H(T_A)` within `1e-9`.
    pub shannon_nonincreasing: bool,
}

/// Product system on pairs `(i1, i2) ↦ i1 * n2 + i2`.
pub fn product(s1: &System, s2: &System) -> System {
    let (n1, n2) = (s1.n(), s2.n());
    let (p1, p2) = (s1.partition(), s2.partition());
    let labels: Vec<usize> = (0..n1 * n2)
        .map(|k| p1.block_of(k / n2) * p2.num_blocks() + p2.block_of(k % n2))
        .collect();
    let image = (0..n1 * n2)
        .map(|k| s1.alpha(k / n2) * n2 + s2.alpha(k % n2))
        .collect();
    let reversion = match (s1.reversion(), s2.reversion()) {
        (Some(r1), Some(r2)) => Some((0..n1 * n2).map(|k| r1[k / n2] * n2 + r2[k % n2]).collect()),
        _ => None,
    };
    System::new(
        Partition::from_labels(&labels),
        Dynamics::new(image).unwrap(),
        reversion,
    )
    .expect("product of valid systems is valid")
}

/// Disjoint union; indices of `s2` are shifted by `s1.n()`.
pub fn disjoint_union(s1: &System, s2: &System) -> System {
    let (n1, n2) = (s1.n(), s2.n());
    let nb1 = s1.partition().num_blocks();
    let labels: Vec<usize> = (0..n1)
        .map(|i| s1.partition().block_of(i))
        .chain((0..n2).map(|i| nb1 + s2.partition().block_of(i)))
        .collect();
    let image = s1
        .dynamics()
        .image()
        .iter()
        .copied()
        .chain(s2.dynamics().image().iter().map(|&j| j + n1))
        .collect();
    let reversion = match (s1.reversion(), s2.reversion()) {
        (Some(r1), Some(r2)) => Some(
            r1.iter()
                .copied()
                .chain(r2.iter().map(|&j| j + n1))
                .collect(),
        ),
        (Some(r1), None) if n2 == 0 => Some(r1.to_vec()),
        (None, Some(r2)) if n1 == 0 => Some(r2.to_vec()),
        _ => None,
    };
    System::new(
        Partition::from_labels(&labels),
        Dynamics::new(image).unwrap(),
        reversion,
    )
    .expect("disjoint union of valid systems is valid")
}

/// First-return restriction to `z`; microstate `k` of the result is the
/// `k`-th smallest element of `z`.
pub fn restrict(sys: &System, z: &[usize]) -> Result<System> {
    if !sys.invertible() {
        return Err(Error::NotInvertible);
    }
    let n = sys.n();
    let mut index = vec![usize::MAX; n];
    let mut members: Vec<usize> = z.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.is_empty() {
        return Err(Error::InvalidArgument("restriction to an empty set".into()));
    }
    if let Some(&bad) = members.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidArgument(format!(
            "microstate {bad} out of range"
        )));
    }
    for (k, &i) in members.iter().enumerate() {
        index[i] = k;
    }
    if let Some(r) = sys.reversion() {
        if members.iter().any(|&i| index[r[i]] == usize::MAX) {
            return Err(Error::InvalidArgument(
                "restriction set is not closed under the reversion".into(),
            ));
        }
    }
    let image = members
        .iter()
        .map(|&i| {
            let mut j = sys.alpha(i);
            while index[j] == usize::MAX {
                j = sys.alpha(j);
            }
            index[j]
        })
        .collect();
    let labels: Vec<usize> = members
        .iter()
        .map(|&i| sys.partition().block_of(i))
        .collect();
    let reversion = sys
        .reversion()
        .map(|r| members.iter().map(|&i| index[r[i]]).collect());
    System::new(
        Partition::from_labels(&labels),
        Dynamics::new(image)?,
        reversion,
    )
}

/// Merges blocks along `g: block id -> new block id` (onto `0..m`).
pub fn coarse_grain(sys: &System, g: &[usize]) -> Result<CoarseGrained> {
    let p = sys.partition();
    if g.len() != p.num_blocks() {
        return Err(Error::InvalidArgument(format!(
            "coarse-graining map has {} entries for {} blocks",
            g.len(),
            p.num_blocks()
        )));
    }
    let m = g.iter().copied().max().map_or(0, |x| x + 1);
    let mut hit = vec![false; m];
    for &t in g {
        hit[t] = true;
    }
    if hit.iter().any(|&h| !h) {
        return Err(Error::InvalidArgument(
            "coarse-graining map is not surjective".into(),
        ));
    }
    let labels: Vec<usize> = (0..sys.n()).map(|i| g[p.block_of(i)]).collect();
    let system = System::new(
        Partition::from_labels(&labels),
        sys.dynamics().clone(),
        None,
    )?;
    let (before, after) = (sys.entropy_report(), system.entropy_report());
    Ok(CoarseGrained {
        boltzmann_nondecreasing: system.partition().mean_entropy() >= p.mean_entropy() - 1e-12,
        shannon_nonincreasing: after.h_p + after.h_t <= before.h_p + before.h_t + 1e-9,
        system,
    })
}

/// Map merging all equilibrium blocks into one macrostate `e`.
pub fn unique_equilibrium_map(p: &Partition) -> Vec<usize> {
    let top = p.max_block_size();
    let neq: Vec<usize> = (0..p.num_blocks())
        .filter(|&b| p.block(b).len() < top)
        .collect();
    let e = neq.len();
    let mut g = vec![e; p.num_blocks()];
    for (k, &b) in neq.iter().enumerate() {
        g[b] = k;
    }
    g
}

/// Map collapsing to the two macrostates `{n, e}` (non-equilibrium, equilibrium).
pub fn two_state_map(p: &Partition) -> Vec<usize> {
    let top = p.max_block_size();
    let has_neq = p.blocks().iter().any(|b| b.len() < top);
    p.blocks()
        .iter()
        .map(|b| if b.len() == top && has_neq { 1 } else { 0 })
        .collect()
}

/// Common refinement: blocks are the nonempty intersections.
pub fn meet(p1: &Partition, p2: &Partition) -> Result<Partition> {
    same_n(p1, p2)?;
    let m = p2.num_blocks();
    let labels: Vec<usize> = (0..p1.n())
        .map(|i| p1.block_of(i) * m + p2.block_of(i))
        .collect();
    Ok(Partition::from_labels(&labels))
}

/// Finest common coarsening: connected components of block overlaps.
pub fn joint(p1: &Partition, p2: &Partition) -> Result<Partition> {
    same_n(p1, p2)?;
    let (m1, m2) = (p1.num_blocks(), p2.num_blocks());
    let mut parent: Vec<usize> = (0..m1 + m2).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..p1.n() {
        let (a, b) = (
            find(&mut parent, p1.block_of(i)),
            find(&mut parent, m1 + p2.block_of(i)),
        );
        if a != b {
            parent[a] = b;
        }
    }
    let labels: Vec<usize> = (0..p1.n())
        .map(|i| find(&mut parent, p1.block_of(i)))
        .collect();
    Ok(Partition::from_labels(&labels))
}

fn same_n(p1: &Partition, p2: &Partition) -> Result<()> {
    if p1.n() != p2.n() {
        return Err(Error::InvalidArgument(format!(
            "partitions of {} and {} microstates",
            p1.n(),
            p2.n()
        )));
    }
    Ok(())
}
