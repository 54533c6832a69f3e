use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{fmt_q, qu, Q};
use crate::properties::{check_l3, sufficient_conditions, Sufficient};
use crate::system::{System, Trend};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SequenceRow {
    pub n: usize,
    /// `Σ_{j<i}|π̂_j| / |π̂_i|` for the zones above the first.
    #[serde(serialize_with = "ser_qs")]
    pub growth: Vec<Q>,
    /// `|C π̂_i| / |π̂_i|` for the zones below the top one.
    #[serde(serialize_with = "ser_qs")]
    pub constant: Vec<Q>,
    pub l3: bool,
    /// The zone-growth sufficient condition for `L3` holds.
    pub sufficient: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SequenceReport {
    pub o: usize,
    pub rows: Vec<SequenceRow>,
    /// Per ratio index, whether it never increases along the sequence.
    pub growth_nonincreasing: Vec<bool>,
    pub constant_nonincreasing: Vec<bool>,
    /// Every system has a single zone.
    pub vacuous: bool,
    pub final_l3: bool,
}

fn ser_qs<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&fmt_q(x))?;
    }
    seq.end()
}

/// Exact zone-growth and constant-fraction ratios along a sequence of systems
/// with a common number of zones, and their `L3(ε1, ε2)` verdicts.
pub fn check_sequence_l3(systems: &[System], e1: &Q, e2: &Q) -> Result<SequenceReport> {
    let first = systems
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty sequence".into()))?;
    let o = first.zone_profile().o();
    let mut rows = Vec::with_capacity(systems.len());
    for (k, sys) in systems.iter().enumerate() {
        let zp = sys.zone_profile();
        if zp.o() != o {
            return Err(Error::InvalidArgument(format!(
                "system {k} has {} zones, expected {o}",
                zp.o()
            )));
        }
        let growth = (1..o)
            .map(|i| qu(zp.zone_card[..i].iter().sum(), zp.zone_card[i]))
            .collect();
        let constant = (0..o.saturating_sub(1))
            .map(|i| {
                let c = zp.zone_members[i]
                    .iter()
                    .filter(|&&x| sys.trend(x) == Trend::Constant)
                    .count();
                qu(c, zp.zone_card[i])
            })
            .collect();
        let sufficient = sufficient_conditions(
            sys,
            &Sufficient::ZonalL3 {
                e1: e1.clone(),
                e2: e2.clone(),
            },
        )?
        .hypothesis
        .holds;
        rows.push(SequenceRow {
            n: sys.n(),
            growth,
            constant,
            l3: check_l3(sys, e1, e2).holds,
            sufficient,
        });
    }
    let nonincreasing = |pick: &dyn Fn(&SequenceRow) -> &Vec<Q>, len: usize| -> Vec<bool> {
        (0..len)
            .map(|i| rows.windows(2).all(|w| pick(&w[1])[i] <= pick(&w[0])[i]))
            .collect()
    };
    let growth_nonincreasing = nonincreasing(&|r| &r.growth, o.saturating_sub(1));
    let constant_nonincreasing = nonincreasing(&|r| &r.constant, o.saturating_sub(1));
    let final_l3 = rows.last().unwrap().l3;
    Ok(SequenceReport {
        o,
        rows,
        growth_nonincreasing,
        constant_nonincreasing,
        vacuous: o == 1,
        final_l3,
    })
}
