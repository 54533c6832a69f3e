use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{factorial, qb, ser_big, ser_q, Q};

/// Largest `n` accepted by the full scan.
pub const SCAN_LIMIT: usize = 8;

/// Counts of `|D|` and `|I|` over all pairs `(π, α) ∈ Par(X) × S_X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountLedger {
    pub n: usize,
    /// `n! · B_n`.
    #[serde(serialize_with = "ser_big")]
    pub total_pairs: BigUint,
    /// `histogram[d]`: number of pairs with `|D| = d`.
    #[serde(serialize_with = "ser_big_vec")]
    pub histogram: Vec<BigUint>,
    /// `joint[d][i]`: number of pairs with `|D| = d` and `|I| = i`.
    pub joint: Vec<Vec<u64>>,
    /// `B_0 .. B_n`.
    #[serde(serialize_with = "ser_big_vec")]
    pub bell: Vec<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub sum_d: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub sum_i: BigUint,
    /// Mean of `|D| / |X|`.
    #[serde(serialize_with = "ser_q")]
    pub mean_d_fraction: Q,
}

fn ser_big_vec<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl CountLedger {
    /// Largest `d` realized by some pair.
    pub fn max_d(&self) -> usize {
        self.histogram
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// `Σ|D| = Σ|I|`.
    pub fn means_agree(&self) -> bool {
        self.sum_d == self.sum_i
    }

    /// The joint histogram is symmetric under `|D| ↔ |I|`.
    pub fn exchange_symmetric(&self) -> bool {
        let m = self.joint.len();
        (0..m).all(|d| (0..m).all(|i| self.joint[d][i] == self.joint[i][d]))
    }

    /// `d,count` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,count\n");
        for (d, c) in self.histogram.iter().enumerate() {
            out.push_str(&format!("{d},{c}\n"));
        }
        out
    }
}

/// All restricted-growth strings of length `n` in lexicographic order.
pub fn restricted_growth_strings(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut s = vec![0usize; n];
    fn rec(k: usize, max: usize, s: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == s.len() {
            out.push(s.clone());
            return;
        }
        for v in 0..=max + 1 {
            s[k] = v;
            rec(k + 1, max.max(v), s, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    rec(1, 0, &mut s, &mut out);
    out
}

/// Block size of every microstate for a restricted-growth string.
pub fn sizes_of_rgs(rgs: &[usize]) -> Vec<usize> {
    let mut counts = vec![0usize; rgs.len() + 1];
    for &b in rgs {
        counts[b] += 1;
    }
    rgs.iter().map(|&b| counts[b]).collect()
}

/// Visits every permutation of `0..n` in Heap's order. The callback gets the
/// image and the two positions swapped since the previous call (`None` for
/// the first).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], Option<(usize, usize)>)) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&a, None);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            let j = if i % 2 == 0 { 0 } else { c[i] };
            a.swap(j, i);
            f(&a, Some((j, i)));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Joint `(|D|, |I|)` counts over all permutations for fixed block sizes.
fn scan_partition(sizes: &[usize]) -> Vec<Vec<u64>> {
    let n = sizes.len();
    let mut joint = vec![vec![0u64; n + 1]; n + 1];
    let (mut d, mut inc) = (0usize, 0usize);
    let at = |p: usize, v: usize| {
        (
            usize::from(sizes[v] < sizes[p]),
            usize::from(sizes[v] > sizes[p]),
        )
    };
    for_each_permutation(n, |a, swap| {
        match swap {
            // before the swap position x held a[y] and y held a[x]
            Some((x, y)) => {
                for (p, old) in [(x, a[y]), (y, a[x])] {
                    let (od, oi) = at(p, old);
                    let (nd, ni) = at(p, a[p]);
                    d = d - od + nd;
                    inc = inc - oi + ni;
                }
            }
            None => {
                for p in 0..n {
                    let (nd, ni) = at(p, a[p]);
                    d += nd;
                    inc += ni;
                }
            }
        }
        joint[d][inc] += 1;
    });
    joint
}

/// Scans every pair `(π, α)` for `n ≤ 8`, split across threads by partition.
pub fn scan_all(n: usize) -> Result<CountLedger> {
    if n > SCAN_LIMIT {
        return Err(Error::TooLarge(format!(
            "full scan is limited to n <= {SCAN_LIMIT}"
        )));
    }
    let parts = restricted_growth_strings(n);
    let joint = parts
        .par_iter()
        .map(|rgs| scan_partition(&sizes_of_rgs(rgs)))
        .reduce(
            || vec![vec![0u64; n + 1]; n + 1],
            |mut acc, j| {
                for (ra, rj) in acc.iter_mut().zip(j) {
                    for (x, y) in ra.iter_mut().zip(rj) {
                        *x += y;
                    }
                }
                acc
            },
        );
    let histogram: Vec<BigUint> = joint
        .iter()
        .map(|row| BigUint::from(row.iter().sum::<u64>()))
        .collect();
    let mut sum_d = BigUint::zero();
    let mut sum_i = BigUint::zero();
    for (d, row) in joint.iter().enumerate() {
        for (i, &c) in row.iter().enumerate() {
            sum_d += BigUint::from(c) * d;
            sum_i += BigUint::from(c) * i;
        }
    }
    let bell = super::bell_numbers(n);
    let total_pairs = factorial(n) * &bell[n];
    let mean_d_fraction = if n == 0 {
        Q::zero()
    } else {
        qb(&sum_d, &(&total_pairs * n))
    };
    Ok(CountLedger {
        n,
        total_pairs,
        histogram,
        joint,
        bell,
        sum_d,
        sum_i,
        mean_d_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    #[test]
    fn three_point_example() {
        let l = scan_all(3).unwrap();
        assert_eq!(l.mean_d_fraction, q(12, 90));
        assert_eq!(l.histogram[1], BigUint::from(12u32));
        assert_eq!(l.histogram[0], BigUint::from(18u32));
        assert!(l.means_agree() && l.exchange_symmetric());
        assert_eq!(l.sum_d, BigUint::from(12u32));
    }

    #[test]
    fn trivial_sizes() {
        let one = scan_all(1).unwrap();
        assert_eq!(one.histogram, vec![BigUint::from(1u32), BigUint::zero()]);
        let two = scan_all(2).unwrap();
        assert!(two.sum_d.is_zero() && two.sum_i.is_zero());
        assert!(scan_all(9).is_err());
    }

    #[test]
    fn heap_visits_every_permutation_once() {
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(5, |a, _| {
            assert!(seen.insert(a.to_vec()));
        });
        assert_eq!(seen.len(), 120);
        assert_eq!(restricted_growth_strings(5).len(), 52);
    }
}
