use num_traits::{One, Zero};

use super::checks::{check_l1, check_l2, check_l3, check_l4};
use super::verdict::{PropertyVerdict, Relation};
use crate::error::{Error, Result};
use crate::numeric::{qu, Q};
use crate::system::{System, Trend};

/// Orbit properties `G0(ε1)`, `G1(ε1)` and `G2..G4(ε1, ε2)` over the cycles
/// of an invertible system; witnesses are the least elements of violating
/// cycles.
pub fn check_g(sys: &System, level: u8, e1: &Q, e2: &Q) -> Result<PropertyVerdict> {
    if !sys.invertible() {
        return Err(Error::NotInvertible);
    }
    let cycles = sys.dynamics().orbits().cycles;
    let mut v = match level {
        0 => g0(sys, &cycles, e1),
        1 => g1(sys, &cycles, e1),
        2 => {
            let inc = per_cycle_min(sys, &cycles, "orbit-increase", e2, |c| vec![neq_of(sys, c)]);
            PropertyVerdict::conjunction("G2", vec![g0(sys, &cycles, e1), inc])
        }
        3 => {
            let zp = sys.zone_profile();
            let below = zp.o().saturating_sub(1);
            let zone = |i: usize| zp.zone_of_size(sys.size(i)).unwrap();
            let inc = per_cycle_min(sys, &cycles, "orbit-zone-increase", e2, |c| {
                (0..below)
                    .map(|z| c.iter().copied().filter(|&i| zone(i) == z).collect())
                    .collect()
            });
            PropertyVerdict::conjunction("G3", vec![g0(sys, &cycles, e1), inc])
        }
        4 => {
            let p = sys.partition();
            let top = p.max_block_size();
            let inc = per_cycle_min(sys, &cycles, "orbit-block-increase", e2, |c| {
                let mut by_block: Vec<Vec<usize>> = vec![Vec::new(); p.num_blocks()];
                for &i in c.iter().filter(|&&i| sys.size(i) < top) {
                    by_block[p.block_of(i)].push(i);
                }
                by_block
            });
            PropertyVerdict::conjunction("G4", vec![g0(sys, &cycles, e1), inc])
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "orbit property level {level} is not in 0..=4"
            )))
        }
    };
    if v.holds {
        match level {
            0 => {
                v.imply("G1", g1(sys, &cycles, e1).holds);
                v.imply("L1", check_l1(sys, e1).holds);
                v.imply(
                    "equilibrium-fraction",
                    qu(sys.xeq().len(), sys.n()) >= Q::one() - e1,
                );
                if let Ok(m) = mean_reaching_over_return(sys) {
                    v.imply("mean-reaching-over-return", m <= *e1);
                }
            }
            1 => v.imply("L1", check_l1(sys, e1).holds),
            2 => v.imply("L2", check_l2(sys, e1, e2).holds),
            3 => v.imply("L3", check_l3(sys, e1, e2).holds),
            _ => v.imply("L4", check_l4(sys, e1, e2).holds),
        }
    }
    Ok(v)
}

fn neq_of(sys: &System, c: &[usize]) -> Vec<usize> {
    c.iter().copied().filter(|&i| !sys.is_eq(i)).collect()
}

fn g0(sys: &System, cycles: &[Vec<usize>], e1: &Q) -> PropertyVerdict {
    let bound = Q::one() - e1;
    extreme(
        "G0",
        cycles
            .iter()
            .map(|c| (c[0], qu(c.len() - neq_of(sys, c).len(), c.len()))),
        Relation::AtLeast,
        bound,
    )
}

fn g1(sys: &System, cycles: &[Vec<usize>], e1: &Q) -> PropertyVerdict {
    let dec = |c: &Vec<usize>| {
        c.iter()
            .filter(|&&i| sys.trend(i) == Trend::Decrease)
            .count()
    };
    extreme(
        "G1",
        cycles.iter().map(|c| (c[0], qu(dec(c), c.len()))),
        Relation::AtMost,
        e1.clone(),
    )
}

/// `|I g| ≥ (1 - ε)|g|` for every nonempty group `g` produced from a cycle.
fn per_cycle_min(
    sys: &System,
    cycles: &[Vec<usize>],
    name: &str,
    eps: &Q,
    groups: impl Fn(&[usize]) -> Vec<Vec<usize>>,
) -> PropertyVerdict {
    let ratios = cycles.iter().flat_map(|c| {
        groups(c)
            .into_iter()
            .filter(|g| !g.is_empty())
            .map(|g| {
                let up = g
                    .iter()
                    .filter(|&&i| sys.trend(i) == Trend::Increase)
                    .count();
                (c[0], qu(up, g.len()))
            })
            .collect::<Vec<_>>()
    });
    extreme(name, ratios, Relation::AtLeast, Q::one() - eps)
}

/// Worst ratio over labelled ratios; labels of violations become witnesses
/// (deduplicated, in order of first violation).
fn extreme(
    name: &str,
    ratios: impl Iterator<Item = (usize, Q)>,
    rel: Relation,
    bound: Q,
) -> PropertyVerdict {
    let mut worst: Option<Q> = None;
    let mut bad: Vec<usize> = Vec::new();
    for (label, r) in ratios {
        if !rel.test(&r, &bound) && bad.last() != Some(&label) {
            bad.push(label);
        }
        let better = match (&worst, rel) {
            (None, _) => true,
            (Some(w), Relation::AtLeast) => r < *w,
            (Some(w), Relation::AtMost) => r > *w,
        };
        if better {
            worst = Some(r);
        }
    }
    match worst {
        Some(lhs) => PropertyVerdict::ratio(name, lhs, rel, bound, bad),
        None => PropertyVerdict::vacuous(name, rel, bound),
    }
}

/// Mean of `e(i)/r(i)` over `X`, with `e` the equilibrium reaching time and
/// `r` the first return time.
pub fn mean_reaching_over_return(sys: &System) -> Result<Q> {
    if !sys.invertible() {
        return Err(Error::NotInvertible);
    }
    let e = sys.equilibrium_reaching_time()?.e;
    let mut total = Q::zero();
    for c in sys.dynamics().orbits().cycles {
        let s: usize = c.iter().map(|&i| e[i]).sum();
        total += qu(s, c.len());
    }
    Ok(total / Q::from_integer(sys.n().into()))
}
