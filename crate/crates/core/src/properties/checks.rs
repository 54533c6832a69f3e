use num_traits::{One, Zero};

use super::orbit::check_g;
use super::verdict::{Property, PropertyVerdict, Relation};
use crate::error::{Error, Result};
use crate::numeric::{qu, Q};
use crate::system::{System, Trend};

/// `|D|/|X| ≤ ε`.
pub fn check_l1(sys: &System, eps: &Q) -> PropertyVerdict {
    let (d, inc, c) = sys.dic();
    if sys.n() == 0 {
        return PropertyVerdict::vacuous("L1", Relation::AtMost, eps.clone());
    }
    let n = sys.n();
    let mut v = PropertyVerdict::ratio(
        "L1",
        qu(d.len(), n),
        Relation::AtMost,
        eps.clone(),
        d.clone(),
    );
    if sys.invertible() && d.len() == inc.len() {
        // with |I| = |D|: L1(ε) iff |C|/|X| ≥ 1 - 2ε
        let c_side = qu(c.len(), n) >= Q::one() - eps * Q::from_integer(2.into());
        v.imply("constant-fraction-equivalence", c_side == v.holds);
    }
    v
}

/// `|I X^neq| / |X^neq| ≥ 1 - ε`, vacuous when `X^neq` is empty.
pub fn check_gat(sys: &System, eps: &Q) -> PropertyVerdict {
    let bound = Q::one() - eps;
    let neq = sys.xneq();
    if neq.is_empty() {
        return PropertyVerdict::vacuous("GAT", Relation::AtLeast, bound);
    }
    let bad: Vec<usize> = neq
        .iter()
        .copied()
        .filter(|&i| sys.trend(i) != Trend::Increase)
        .collect();
    PropertyVerdict::ratio(
        "GAT",
        qu(neq.len() - bad.len(), neq.len()),
        Relation::AtLeast,
        bound,
        bad,
    )
}

/// Minimum of `|I π̂_i| / |π̂_i|` over the zones below the top one must be at
/// least `1 - ε`; witnesses are zone indices.
pub fn check_zat(sys: &System, eps: &Q) -> PropertyVerdict {
    let zp = sys.zone_profile();
    let groups: Vec<&[usize]> = zp
        .zone_members
        .iter()
        .take(zp.o().saturating_sub(1))
        .map(Vec::as_slice)
        .collect();
    let mut v = min_increase_ratio(sys, "ZAT", &groups, eps);
    if v.holds {
        let gat = check_gat(sys, eps);
        v.imply("GAT", gat.holds);
    }
    v
}

/// Minimum of `|Ia| / |a|` over nonequilibrium blocks must be at least
/// `1 - ε`; witnesses are block ids.
pub fn check_bat(sys: &System, eps: &Q) -> PropertyVerdict {
    let p = sys.partition();
    let top = p.max_block_size();
    let ids: Vec<usize> = (0..p.num_blocks())
        .filter(|&b| p.block(b).len() < top)
        .collect();
    let groups: Vec<&[usize]> = ids.iter().map(|&b| p.block(b)).collect();
    let mut v = min_increase_ratio(sys, "BAT", &groups, eps);
    v.witnesses = v.witnesses.iter().map(|&k| ids[k]).collect();
    if v.holds {
        v.imply("ZAT", check_zat(sys, eps).holds);
        v.imply("GAT", check_gat(sys, eps).holds);
    }
    v
}

/// Shared by ZAT and BAT: the witnesses are positions in `groups`.
fn min_increase_ratio(sys: &System, name: &str, groups: &[&[usize]], eps: &Q) -> PropertyVerdict {
    let bound = Q::one() - eps;
    if groups.is_empty() {
        return PropertyVerdict::vacuous(name, Relation::AtLeast, bound);
    }
    let mut lhs: Option<Q> = None;
    let mut bad = Vec::new();
    for (k, g) in groups.iter().enumerate() {
        let up = g
            .iter()
            .filter(|&&i| sys.trend(i) == Trend::Increase)
            .count();
        let r = qu(up, g.len());
        if r < bound {
            bad.push(k);
        }
        if lhs.as_ref().is_none_or(|m| r < *m) {
            lhs = Some(r);
        }
    }
    PropertyVerdict::ratio(name, lhs.unwrap(), Relation::AtLeast, bound, bad)
}

/// `L1(ε1) ∧ GAT(ε2)`; for invertible systems with `|D| = |I|` the
/// consequences on the equilibrium set are attached.
pub fn check_l2(sys: &System, e1: &Q, e2: &Q) -> PropertyVerdict {
    let mut v = PropertyVerdict::conjunction("L2", vec![check_l1(sys, e1), check_gat(sys, e2)]);
    if v.holds {
        if let Some(items) = equilibrium_consequences(sys, e1, e2) {
            for (k, ok) in items.into_iter().enumerate() {
                if let Some(ok) = ok {
                    v.imply(format!("equilibrium-consequence-{}", k + 1), ok);
                }
            }
        }
    }
    v
}

/// `L1(ε1) ∧ ZAT(ε2)`.
pub fn check_l3(sys: &System, e1: &Q, e2: &Q) -> PropertyVerdict {
    let mut v = PropertyVerdict::conjunction("L3", vec![check_l1(sys, e1), check_zat(sys, e2)]);
    if v.holds {
        v.imply("L2", check_l2(sys, e1, e2).holds);
    }
    v
}

/// `L1(ε1) ∧ BAT(ε2)`.
pub fn check_l4(sys: &System, e1: &Q, e2: &Q) -> PropertyVerdict {
    let mut v = PropertyVerdict::conjunction("L4", vec![check_l1(sys, e1), check_bat(sys, e2)]);
    if v.holds {
        v.imply("L3", check_l3(sys, e1, e2).holds);
    }
    v
}

/// Consequences for invertible systems with `|D| = |I|` in `L2(ε1, ε2)`:
/// 1. `|X^eq|/|X| ≥ 1 - ε1/(1-ε2)`,
/// 2. `|C X^eq|/|X| ≥ 1 - ε1(2-ε2)/(1-ε2)`,
/// 3. `(1-2ε2)|X^neq| ≤ |D X^eq| ≤ |X^neq|`,
/// 4. the same bounds for `|{i ∈ X^neq : alpha(i) ∈ X^eq}|`.
///
/// Returns `None` when the preconditions fail; items 1 and 2 are `None` when
/// `ε2 ≥ 1`.
pub fn equilibrium_consequences(sys: &System, e1: &Q, e2: &Q) -> Option<[Option<bool>; 4]> {
    let (nd, ni, _) = sys.dic_counts();
    if !sys.invertible() || nd != ni || sys.n() == 0 || !check_l2_plain(sys, e1, e2) {
        return None;
    }
    let n = sys.n();
    let xeq = sys.xeq();
    let neq = n - xeq.len();
    let d_eq = xeq
        .iter()
        .filter(|&&i| sys.trend(i) == Trend::Decrease)
        .count();
    let c_eq = xeq
        .iter()
        .filter(|&&i| sys.trend(i) == Trend::Constant)
        .count();
    let into_eq = sys
        .xneq()
        .into_iter()
        .filter(|&i| sys.is_eq(sys.alpha(i)))
        .count();
    let one = Q::one();
    let two = Q::from_integer(2.into());
    let (item1, item2) = if *e2 < one {
        let k = &one - e2;
        (
            Some(qu(xeq.len(), n) >= &one - e1 / &k),
            Some(qu(c_eq, n) >= &one - e1 * (&two - e2) / &k),
        )
    } else {
        (None, None)
    };
    let low = (&one - &two * e2) * Q::from_integer(neq.into());
    let within = |x: usize| Q::from_integer(x.into()) >= low && x <= neq;
    Some([item1, item2, Some(within(d_eq)), Some(within(into_eq))])
}

fn check_l2_plain(sys: &System, e1: &Q, e2: &Q) -> bool {
    check_l1(sys, e1).holds && check_gat(sys, e2).holds
}

/// Dispatches on a property name; `e2` is required by the two-parameter
/// properties and ignored otherwise.
pub fn check(sys: &System, property: Property, e1: &Q, e2: Option<&Q>) -> Result<PropertyVerdict> {
    let need = || {
        e2.ok_or_else(|| {
            Error::InvalidArgument(format!("property {property} needs a second parameter"))
        })
    };
    Ok(match property {
        Property::L1 => check_l1(sys, e1),
        Property::Gat => check_gat(sys, e1),
        Property::Zat => check_zat(sys, e1),
        Property::Bat => check_bat(sys, e1),
        Property::L2 => check_l2(sys, e1, need()?),
        Property::L3 => check_l3(sys, e1, need()?),
        Property::L4 => check_l4(sys, e1, need()?),
        Property::G0 => check_g(sys, 0, e1, &Q::zero())?,
        Property::G1 => check_g(sys, 1, e1, &Q::zero())?,
        Property::G2 => check_g(sys, 2, e1, need()?)?,
        Property::G3 => check_g(sys, 3, e1, need()?)?,
        Property::G4 => check_g(sys, 4, e1, need()?)?,
    })
}
