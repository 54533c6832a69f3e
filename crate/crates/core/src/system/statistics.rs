use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Partition;
use crate::error::{Error, Result};

/// Occupancy statistics families: allowed maps `P -> B` and symmetry groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StatisticsFamily {
    MaxwellBoltzmann,
    LyndenBell,
    BoseEinstein,
    Gentile(usize),
    FermiDirac,
    /// Distinguishable particles, indistinguishable boxes.
    DI,
    /// Indistinguishable particles and boxes.
    II,
}

/// Phase space `(M(P,B) / G_P × G_B, N^B / G_B, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatisticsSpace {
    pub partition: Partition,
    /// Representative map (particle -> box) per microstate.
    pub microstates: Vec<Vec<usize>>,
    /// Occupancy measure per block id (sorted decreasingly when boxes are
    /// indistinguishable).
    pub macrostates: Vec<Vec<usize>>,
}

/// Largest number of raw maps `|B|^|P|` scanned.
const MAX_MAPS: u128 = 1 << 24;

impl StatisticsFamily {
    fn particles_symmetric(self) -> bool {
        matches!(
            self,
            Self::BoseEinstein | Self::Gentile(_) | Self::FermiDirac | Self::II
        )
    }

    fn boxes_symmetric(self) -> bool {
        matches!(self, Self::DI | Self::II)
    }

    fn allows(self, occupancy: &[usize]) -> bool {
        match self {
            Self::LyndenBell | Self::FermiDirac => occupancy.iter().all(|&c| c <= 1),
            Self::Gentile(m) => occupancy.iter().all(|&c| c <= m),
            _ => true,
        }
    }
}

pub fn statistics_space(
    particles: usize,
    boxes: usize,
    family: StatisticsFamily,
) -> Result<StatisticsSpace> {
    use StatisticsFamily::*;
    if boxes == 0 {
        return Err(Error::InvalidArgument(
            "at least one box is required".into(),
        ));
    }
    if matches!(family, FermiDirac | LyndenBell) && particles > boxes {
        return Err(Error::InvalidArgument(format!(
            "{particles} particles do not fit injectively into {boxes} boxes"
        )));
    }
    if let Gentile(m) = family {
        if m * boxes < particles {
            return Err(Error::InvalidArgument(format!(
                "{particles} particles exceed capacity {m} x {boxes}"
            )));
        }
    }
    let raw = (boxes as u128)
        .checked_pow(particles as u32)
        .unwrap_or(u128::MAX);
    if raw > MAX_MAPS {
        return Err(Error::TooLarge(format!(
            "{boxes}^{particles} maps exceed the scan limit"
        )));
    }
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut f = vec![0usize; particles];
    loop {
        let mut occupancy = vec![0usize; boxes];
        for &b in &f {
            occupancy[b] += 1;
        }
        if family.allows(&occupancy) {
            let key = canonical(&f, &occupancy, family);
            let mut label = occupancy;
            if family.boxes_symmetric() {
                label.sort_unstable_by(|a, b| b.cmp(a));
            }
            classes.entry(key).or_insert(label);
        }
        // next map in lexicographic order
        let mut k = particles;
        loop {
            if k == 0 {
                return Ok(assemble(classes));
            }
            k -= 1;
            f[k] += 1;
            if f[k] < boxes {
                break;
            }
            f[k] = 0;
        }
        if particles == 0 {
            return Ok(assemble(classes));
        }
    }
}

fn canonical(f: &[usize], occupancy: &[usize], family: StatisticsFamily) -> Vec<usize> {
    match (family.particles_symmetric(), family.boxes_symmetric()) {
        (false, false) => f.to_vec(),
        (true, false) => {
            let mut g = f.to_vec();
            g.sort_unstable();
            g
        }
        (false, true) => {
            let mut relabel = vec![usize::MAX; occupancy.len()];
            let mut next = 0;
            f.iter()
                .map(|&b| {
                    if relabel[b] == usize::MAX {
                        relabel[b] = next;
                        next += 1;
                    }
                    relabel[b]
                })
                .collect()
        }
        (true, true) => {
            let mut o: Vec<usize> = occupancy.iter().copied().filter(|&c| c > 0).collect();
            o.sort_unstable_by(|a, b| b.cmp(a));
            o
        }
    }
}

fn assemble(classes: BTreeMap<Vec<usize>, Vec<usize>>) -> StatisticsSpace {
    let mut label_ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut labels = Vec::with_capacity(classes.len());
    let mut microstates = Vec::with_capacity(classes.len());
    for (key, occ) in classes {
        let next = label_ids.len();
        labels.push(*label_ids.entry(occ).or_insert(next));
        microstates.push(key);
    }
    let partition = Partition::from_labels(&labels);
    let mut by_label = vec![Vec::new(); label_ids.len()];
    for (occ, id) in label_ids {
        by_label[id] = occ;
    }
    let macrostates = partition
        .blocks()
        .iter()
        .map(|b| by_label[labels[b[0]]].clone())
        .collect();
    StatisticsSpace {
        partition,
        microstates,
        macrostates,
    }
}

#[cfg(test)]
mod tests {
    use super::StatisticsFamily::*;
    use super::*;

    #[test]
    fn maxwell_boltzmann_two_two() {
        let s = statistics_space(2, 2, MaxwellBoltzmann).unwrap();
        assert_eq!(s.partition.n(), 4);
        let mut sizes = s.partition.block_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2]);
    }

    #[test]
    fn small_families() {
        assert_eq!(statistics_space(2, 2, FermiDirac).unwrap().partition.n(), 1);
        let be = statistics_space(2, 2, BoseEinstein).unwrap();
        assert_eq!(be.partition.n(), 3);
        assert!(be.partition.block_sizes().iter().all(|&s| s == 1));
        assert_eq!(
            statistics_space(2, 2, LyndenBell)
                .unwrap()
                .partition
                .block_sizes(),
            vec![2]
        );
        // set partitions of 3 particles into at most 2 unlabeled boxes: 1 + 3
        let di = statistics_space(3, 2, DI).unwrap();
        assert_eq!(di.partition.n(), 4);
        assert_eq!(statistics_space(4, 3, II).unwrap().partition.n(), 4);
        assert_eq!(statistics_space(3, 3, Gentile(1)).unwrap().partition.n(), 1);
        assert!(statistics_space(3, 2, FermiDirac).is_err());
    }
}
