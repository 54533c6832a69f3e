use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of `X = {0..n-1}` into nonempty blocks (macrostates).
///
/// Blocks are stored sorted and in canonical order: by size, then by first
/// element. Block ids are positions in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Validates and canonicalizes a list of blocks covering `{0..n-1}`.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &i in b {
                if i >= n {
                    return Err(Error::InvalidPartition(format!(
                        "element {i} out of range for {n} microstates"
                    )));
                }
                if seen[i] {
                    return Err(Error::InvalidPartition(format!(
                        "element {i} appears twice"
                    )));
                }
                seen[i] = true;
            }
        }
        Ok(Self::canonical(n, blocks))
    }

    /// Partition whose blocks are the fibers of `labels` (any label values).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut ids = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            let id = *ids.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[id].push(i);
        }
        Self::canonical(labels.len(), blocks)
    }

    /// All microstates in one block.
    pub fn indiscrete(n: usize) -> Self {
        Self::canonical(
            n,
            if n == 0 {
                vec![]
            } else {
                vec![(0..n).collect()]
            },
        )
    }

    /// Every microstate its own block.
    pub fn discrete(n: usize) -> Self {
        Self::canonical(n, (0..n).map(|i| vec![i]).collect())
    }

    /// Partition with blocks of the given sizes laid out consecutively.
    pub fn from_sizes(sizes: &[usize]) -> Self {
        let mut next = 0;
        let blocks = sizes
            .iter()
            .filter(|&&s| s > 0)
            .map(|&s| {
                let b: Vec<usize> = (next..next + s).collect();
                next += s;
                b
            })
            .collect();
        Self::canonical(next, blocks)
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| (b.len(), b[0]));
        let mut block_of = vec![0; n];
        for (id, b) in blocks.iter().enumerate() {
            for &i in b {
                block_of[i] = id;
            }
        }
        Self {
            n,
            blocks,
            block_of,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, id: usize) -> &[usize] {
        &self.blocks[id]
    }

    /// Block id of microstate `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    /// The full microstate to block id map.
    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    /// Size of the block containing `i`.
    pub fn size_of(&self, i: usize) -> usize {
        self.blocks[self.block_of[i]].len()
    }

    /// Sizes of all blocks in block-id order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Largest block size (zero for the empty partition).
    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Mean Boltzmann entropy `Σ |a| ln|a| / n`.
    pub fn mean_entropy(&self) -> f64 {
        let n = self.n as f64;
        self.blocks
            .iter()
            .map(|b| b.len() as f64 * (b.len() as f64).ln())
            .sum::<f64>()
            / n
    }
}

impl TryFrom<Vec<Vec<usize>>> for Partition {
    type Error = Error;
    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(blocks)
    }
}

impl From<Partition> for Vec<Vec<usize>> {
    fn from(p: Partition) -> Self {
        p.blocks
    }
}
