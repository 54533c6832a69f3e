use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::numeric::binomial;
use crate::system::{Dynamics, Partition, System, ZoneProfile};

/// `B_0 .. B_n` from `B_{m+1} = Σ_k C(m, k) B_k`.
pub fn bell_numbers(n: usize) -> Vec<BigUint> {
    let mut b = vec![BigUint::one()];
    for m in 0..n {
        let next = (0..=m).map(|k| binomial(m, k) * &b[k]).sum();
        b.push(next);
    }
    b
}

/// The largest number of strict entropy decreases over all permutations and
/// a permutation attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxDecreases {
    /// `|X| - max_k |π̂_k|`.
    pub count: usize,
    pub witness: Dynamics,
    /// The witness has exactly `count` decreases.
    pub verified: bool,
}

/// Lists microstates by decreasing block size and sends each one `M`
/// places further down the list, `M` being the largest zone cardinality.
/// Every step that does not wrap around leaves its zone for a lower one.
pub fn max_decreases(p: &Partition) -> MaxDecreases {
    let n = p.n();
    let zp = ZoneProfile::of(p);
    let top = zp.zone_card.iter().copied().max().unwrap_or(0);
    let count = n - top;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(p.size_of(i)), i));
    let mut image = vec![0; n];
    for (j, &x) in order.iter().enumerate() {
        image[x] = order[(j + top) % n.max(1)];
    }
    let witness = Dynamics::new(image).expect("a shift of a listing is a permutation");
    let sys = System::new(p.clone(), witness.clone(), None).expect("sizes match");
    let verified = sys.dic_counts().0 == count;
    MaxDecreases {
        count,
        witness,
        verified,
    }
}

/// Numerical partitions of `n` as multiplicity vectors `l[k]`, `k = 1..=n`.
pub fn for_each_numerical_partition(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(rest: usize, max_part: usize, l: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if rest == 0 {
            f(l);
            return;
        }
        for k in (1..=max_part.min(rest)).rev() {
            l[k] += 1;
            rec(rest - k, k, l, f);
            l[k] -= 1;
        }
    }
    let mut l = vec![0; n + 1];
    rec(n, n, &mut l, &mut f);
}

/// `d_X = |X| - min_{l ⊢ |X|} max_k k l_k`, the largest number of strict
/// decreases over all partitions and permutations of an `n`-set.
pub fn d_x(n: usize) -> usize {
    let mut best = n;
    for_each_numerical_partition(n, |l| {
        let m = l.iter().enumerate().map(|(k, &c)| k * c).max().unwrap_or(0);
        best = best.min(m);
    });
    n - best
}

/// `d_1 .. d_n`.
pub fn dx_sequence(n: usize) -> Vec<usize> {
    (1..=n).map(d_x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::scan::{for_each_permutation, restricted_growth_strings};

    #[test]
    fn bell_recurrence() {
        let b = bell_numbers(5);
        let want: Vec<BigUint> = [1u32, 1, 2, 5, 15, 52]
            .into_iter()
            .map(BigUint::from)
            .collect();
        assert_eq!(b, want);
        assert_eq!(BigUint::from(restricted_growth_strings(5).len()), b[5]);
    }

    #[test]
    fn staircase_zones() {
        let p = Partition::from_sizes(&[1, 2, 3]);
        let m = max_decreases(&p);
        assert_eq!(m.count, 3);
        assert!(m.verified);
        assert_eq!(max_decreases(&Partition::indiscrete(4)).count, 0);
    }

    #[test]
    fn witness_matches_brute_force() {
        for rgs in restricted_growth_strings(6) {
            let p = Partition::from_labels(&rgs);
            let m = max_decreases(&p);
            assert!(m.verified);
            let mut best = 0;
            for_each_permutation(6, |a, _| {
                best = best.max((0..6).filter(|&i| p.size_of(a[i]) < p.size_of(i)).count());
            });
            assert_eq!(best, m.count);
        }
    }

    #[test]
    fn first_terms() {
        assert_eq!(dx_sequence(6), vec![0, 0, 1, 2, 2, 3]);
    }
}
