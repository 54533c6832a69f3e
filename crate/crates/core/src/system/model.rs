use serde::{Deserialize, Serialize};

use super::{Dynamics, Partition};
use crate::error::{Error, Result};

/// A micro-macro dynamical system `(X, A, f, alpha)` with an optional
/// reversion `r` (an involution with `r alpha r = alpha^{-1}`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct System {
    partition: Partition,
    dynamics: Dynamics,
    reversion: Option<Vec<usize>>,
}

/// Direction of entropy change along one step of the dynamics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Trend {
    Decrease,
    Constant,
    Increase,
}

/// The on-disk JSON form of a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
    pub alpha: Vec<usize>,
    #[serde(default)]
    pub reversion: Option<Vec<usize>>,
}

/// Validates and builds a system from raw blocks, image and reversion.
pub fn build_system(
    blocks: Vec<Vec<usize>>,
    image: Vec<usize>,
    reversion: Option<Vec<usize>>,
) -> Result<System> {
    let partition = Partition::new(blocks)?;
    let dynamics = Dynamics::new(image)?;
    System::new(partition, dynamics, reversion)
}

impl System {
    pub fn new(
        partition: Partition,
        dynamics: Dynamics,
        reversion: Option<Vec<usize>>,
    ) -> Result<Self> {
        if partition.n() != dynamics.n() {
            return Err(Error::InvalidDynamics(format!(
                "partition covers {} microstates but the image has length {}",
                partition.n(),
                dynamics.n()
            )));
        }
        if let Some(r) = &reversion {
            check_reversion(&dynamics, r)?;
        }
        Ok(Self {
            partition,
            dynamics,
            reversion,
        })
    }

    /// The empty system, the neutral element of disjoint union.
    pub fn empty() -> Self {
        Self {
            partition: Partition::discrete(0),
            dynamics: Dynamics::identity(0),
            reversion: None,
        }
    }

    pub fn from_file(file: SystemFile) -> Result<Self> {
        let sys = build_system(file.blocks, file.alpha, file.reversion)?;
        if sys.n() != file.n {
            return Err(Error::InvalidPartition(format!(
                "declared n = {} but the blocks cover {} microstates",
                file.n,
                sys.n()
            )));
        }
        if sys.n() == 0 {
            return Err(Error::InvalidPartition(
                "a system needs at least one microstate".into(),
            ));
        }
        Ok(sys)
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile {
            n: self.n(),
            blocks: self.partition.blocks().to_vec(),
            alpha: self.dynamics.image().to_vec(),
            reversion: self.reversion.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn dynamics(&self) -> &Dynamics {
        &self.dynamics
    }

    pub fn reversion(&self) -> Option<&[usize]> {
        self.reversion.as_deref()
    }

    pub fn alpha(&self, i: usize) -> usize {
        self.dynamics.apply(i)
    }

    pub fn invertible(&self) -> bool {
        self.dynamics.invertible()
    }

    /// Size `|i|` of the block containing `i`.
    pub fn size(&self, i: usize) -> usize {
        self.partition.size_of(i)
    }

    /// Same partition and reversion with new dynamics.
    pub fn with_dynamics(&self, dynamics: Dynamics) -> Result<Self> {
        Self::new(self.partition.clone(), dynamics, self.reversion.clone())
    }

    /// Same data with the reversion dropped.
    pub fn without_reversion(&self) -> Self {
        Self {
            reversion: None,
            ..self.clone()
        }
    }

    /// Attaches (and validates) a reversion.
    pub fn with_reversion(&self, r: Vec<usize>) -> Result<Self> {
        Self::new(self.partition.clone(), self.dynamics.clone(), Some(r))
    }

    /// The system `(X, A, f, alpha^{-1})`; the reversion, if any, is kept.
    pub fn inverse(&self) -> Result<Self> {
        let inv = self.dynamics.inverse().ok_or(Error::NotInvertible)?;
        Self::new(self.partition.clone(), inv, self.reversion.clone())
    }

    /// The system `(X, A, f, alpha^k)`; the reversion is kept.
    pub fn power(&self, k: usize) -> Self {
        Self {
            dynamics: self.dynamics.power(k),
            ..self.clone()
        }
    }

    /// Entropy trend at `i`, by exact comparison of block sizes.
    pub fn trend(&self, i: usize) -> Trend {
        use std::cmp::Ordering::*;
        match self.size(self.alpha(i)).cmp(&self.size(i)) {
            Less => Trend::Decrease,
            Equal => Trend::Constant,
            Greater => Trend::Increase,
        }
    }

    /// The sets `D`, `I`, `C` of strictly decreasing, strictly increasing and
    /// constant entropy microstates.
    pub fn dic(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let (mut d, mut inc, mut c) = (Vec::new(), Vec::new(), Vec::new());
        for i in 0..self.n() {
            match self.trend(i) {
                Trend::Decrease => d.push(i),
                Trend::Increase => inc.push(i),
                Trend::Constant => c.push(i),
            }
        }
        (d, inc, c)
    }

    /// Counts `(|D|, |I|, |C|)`.
    pub fn dic_counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for i in 0..self.n() {
            match self.trend(i) {
                Trend::Decrease => counts.0 += 1,
                Trend::Increase => counts.1 += 1,
                Trend::Constant => counts.2 += 1,
            }
        }
        counts
    }

    /// Whether `i` lies in an equilibrium block (a block of maximal size).
    pub fn is_eq(&self, i: usize) -> bool {
        self.size(i) == self.partition.max_block_size()
    }

    pub fn xeq(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.is_eq(i)).collect()
    }

    pub fn xneq(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.is_eq(i)).collect()
    }

    /// Whether the reversion maps blocks onto themselves (`f r = f`).
    pub fn is_invariant(&self) -> bool {
        match &self.reversion {
            Some(r) => {
                (0..self.n()).all(|i| self.partition.block_of(r[i]) == self.partition.block_of(i))
            }
            None => false,
        }
    }

    /// The involution `rho` on block ids induced by the reversion, if the
    /// reversion maps blocks to blocks.
    pub fn block_involution(&self) -> Option<Vec<usize>> {
        let r = self.reversion.as_ref()?;
        let p = &self.partition;
        let mut rho = vec![usize::MAX; p.num_blocks()];
        for i in 0..self.n() {
            let (a, b) = (p.block_of(i), p.block_of(r[i]));
            if rho[a] == usize::MAX {
                rho[a] = b;
            } else if rho[a] != b {
                return None;
            }
        }
        Some(rho)
    }

    /// Whether the reversion descends to an involution on blocks.
    pub fn is_equivariant(&self) -> bool {
        self.block_involution().is_some()
    }

    /// Whether the reversion preserves entropy (`|r(i)| = |i|`).
    pub fn is_entropy_preserving(&self) -> bool {
        match &self.reversion {
            Some(r) => (0..self.n()).all(|i| self.size(r[i]) == self.size(i)),
            None => false,
        }
    }
}

fn check_reversion(d: &Dynamics, r: &[usize]) -> Result<()> {
    let n = d.n();
    if r.len() != n {
        return Err(Error::InvalidReversion(format!(
            "length {} differs from n = {n}",
            r.len()
        )));
    }
    if let Some(&bad) = r.iter().find(|&&j| j >= n) {
        return Err(Error::InvalidReversion(format!("entry {bad} out of range")));
    }
    if let Some(i) = (0..n).find(|&i| r[r[i]] != i) {
        return Err(Error::InvalidReversion(format!(
            "r(r({i})) = {} is not {i}",
            r[r[i]]
        )));
    }
    if !d.invertible() {
        return Err(Error::InvalidReversion(
            "a reversion requires invertible dynamics".into(),
        ));
    }
    // r alpha r = alpha^{-1}  <=>  alpha(r(alpha(r(i)))) = i
    if let Some(i) = (0..n).find(|&i| d.apply(r[d.apply(r[i])]) != i) {
        return Err(Error::InvalidReversion(format!(
            "r alpha r differs from alpha^-1 at {i}"
        )));
    }
    Ok(())
}
