//! Brute-force census shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use micromacro::enumerate::for_each_permutation;
use micromacro::numeric::{factorial, qb, Q};
use micromacro::system::{Dynamics, Partition, System};
use num_bigint::BigUint;

/// Permutations of a phase space grouped by their block transition matrix.
pub struct Census {
    pub partition: Partition,
    /// One representative system per class and the class size.
    pub classes: Vec<(System, u64)>,
}

impl Census {
    pub fn of(p: &Partition) -> Self {
        let n = p.n();
        let m = p.num_blocks();
        let mut groups: BTreeMap<Vec<u8>, (Vec<usize>, u64)> = BTreeMap::new();
        for_each_permutation(n, |a, _| {
            let mut key = vec![0u8; m * m];
            for (i, &j) in a.iter().enumerate() {
                key[p.block_of(j) * m + p.block_of(i)] += 1;
            }
            groups.entry(key).or_insert_with(|| (a.to_vec(), 0)).1 += 1;
        });
        let classes = groups
            .into_values()
            .map(|(a, c)| {
                (
                    System::new(p.clone(), Dynamics::new(a).unwrap(), None).unwrap(),
                    c,
                )
            })
            .collect();
        Self {
            partition: p.clone(),
            classes,
        }
    }

    pub fn total(&self) -> BigUint {
        factorial(self.partition.n())
    }

    /// Mass of the permutations satisfying `pred`.
    pub fn count(&self, mut pred: impl FnMut(&System) -> bool) -> BigUint {
        self.classes
            .iter()
            .filter(|(s, _)| pred(s))
            .map(|(_, c)| BigUint::from(*c))
            .sum()
    }

    /// Fraction of `within` whose members satisfy `pred`.
    pub fn fraction(
        &self,
        mut within: impl FnMut(&System) -> bool,
        mut pred: impl FnMut(&System) -> bool,
    ) -> Q {
        let den = self.count(&mut within);
        let num = self.count(|s| within(s) && pred(s));
        qb(&num, &den)
    }
}

/// `a[i][j]` over zones: microstates of zone `j` sent into zone `i`.
pub fn zone_matrix(s: &System) -> Vec<Vec<usize>> {
    let zp = s.zone_profile();
    let mut a = vec![vec![0; zp.o()]; zp.o()];
    for i in 0..s.n() {
        let from = zp.zone_of_size(s.size(i)).unwrap();
        let to = zp.zone_of_size(s.size(s.alpha(i))).unwrap();
        a[to][from] += 1;
    }
    a
}

pub fn is_symmetric(s: &System) -> bool {
    let a = zone_matrix(s);
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i][j] == a[j][i]))
}

/// Every step stays in its block or crosses a macro edge.
pub fn moves_along(s: &System, edges: &[(usize, usize)]) -> bool {
    let p = s.partition();
    (0..s.n()).all(|i| {
        let (a, b) = (p.block_of(i), p.block_of(s.alpha(i)));
        a == b || edges.contains(&(a.min(b), a.max(b)))
    })
}

/// Every multiset of block sizes summing to at most `max`.
pub fn profiles(max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for n in 1..=max {
        micromacro::enumerate::for_each_numerical_partition(n, |l| {
            out.push(
                l.iter()
                    .enumerate()
                    .flat_map(|(k, &c)| std::iter::repeat_n(k, c))
                    .collect(),
            );
        });
    }
    out
}
