//! `polytope`: exact probabilities through weighted lattice-point sums.

use clap::{ArgGroup, Args, ValueEnum};
use micromacro::numeric::{fmt_q, q_to_f64};
use micromacro::polytope::{
    evaluate, probability_of_property, two_zone_distribution, two_zone_mode, two_zone_mostlikely,
    Family, Property, PropertyProbability, WeightedSum,
};
use micromacro::ZoneProfile;
use serde_json::{json, Value};

use crate::io::{self, Failure, Outcome, Report};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyName {
    /// Exactly `d` strict decreases.
    Lambda,
    /// Exactly `d` strict decreases and `e` strict increases.
    LambdaDe,
    /// Zero-jump permutations with `d` strict decreases.
    Upsilon,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PropertyName {
    L2,
    L3,
    /// L3 among zero-jump permutations.
    L3ZeroJump,
    /// L3 among symmetric permutations.
    L3Symmetric,
    /// L2 of the invariant doubling.
    IrL2,
    /// Bounds for L2 of the doubling.
    #[value(name = "r-l2")]
    RL2,
    /// L4 among permutations moving along the `--edges` block graph.
    L4,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("what").required(true).args(["family", "property", "two_zone"])))]
pub struct PolytopeArgs {
    #[arg(long, value_enum, requires_all = ["zones", "counts"])]
    pub family: Option<FamilyName>,
    #[arg(long, value_enum, requires_all = ["zones", "counts"])]
    pub property: Option<PropertyName>,
    /// Zone cardinalities `s1,s2` of a two-zone phase space.
    #[arg(long, value_name = "S1,S2")]
    pub two_zone: Option<String>,
    /// Block sizes, e.g. `1,2,3`.
    #[arg(long)]
    pub zones: Option<String>,
    /// Number of blocks of each size, e.g. `2,1,1`.
    #[arg(long)]
    pub counts: Option<String>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub e: Option<usize>,
    #[arg(long, default_value = "1/10")]
    pub eps1: String,
    #[arg(long, default_value = "1/10")]
    pub eps2: String,
    /// Macro edges between block ids for `--property l4`, e.g. `0-1,1-2`.
    #[arg(long, default_value = "")]
    pub edges: String,
}

fn weighted(w: &WeightedSum) -> Value {
    json!({
        "points": w.lattice_points.to_string(),
        "weighted_sum": w.weighted_sum.to_string(),
        "normalizer": w.normalizer.to_string(),
        "probability": fmt_q(&w.probability),
    })
}

/// `(size, count)` pairs in input order, and the block sizes they spell out.
fn profile(a: &PolytopeArgs) -> Outcome<(ZoneProfile, Vec<usize>)> {
    let sizes = io::usize_list(a.zones.as_deref().unwrap_or_default())?;
    let counts = io::usize_list(a.counts.as_deref().unwrap_or_default())?;
    if sizes.len() != counts.len() {
        return Err(Failure::usage(
            "--zones and --counts must have the same length",
        ));
    }
    if sizes.iter().chain(&counts).any(|&x| x == 0) {
        return Err(Failure::usage("zone sizes and counts must be positive"));
    }
    let mut sorted = sizes.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Failure::usage("zone sizes must be distinct"));
    }
    let spec: Vec<(usize, usize)> = sizes.into_iter().zip(counts).collect();
    let blocks = spec
        .iter()
        .flat_map(|&(s, c)| std::iter::repeat_n(s, c))
        .collect();
    Ok((ZoneProfile::from_counts(&spec), blocks))
}

pub fn run(a: &PolytopeArgs) -> Outcome<Report> {
    if let Some(pair) = &a.two_zone {
        let v = io::usize_list(pair)?;
        let [s1, s2] = v[..] else {
            return Err(Failure::usage("--two-zone takes exactly two cardinalities"));
        };
        let dist = two_zone_distribution(s1, s2);
        let out = json!({
            "s1": s1,
            "s2": s2,
            "distribution": dist.iter().map(fmt_q).collect::<Vec<_>>(),
            "distribution_real": dist.iter().map(q_to_f64).collect::<Vec<_>>(),
            "mostlikely_formula": two_zone_mostlikely(s1, s2),
            "argmax": two_zone_mode(s1, s2),
        });
        return Report::json(&out);
    }
    let (zp, blocks) = profile(a)?;
    if let Some(f) = a.family {
        let d = a.d.ok_or_else(|| Failure::usage("--family needs --d"))?;
        let family = match f {
            FamilyName::Lambda => Family::Lambda { d },
            FamilyName::Upsilon => Family::Upsilon { d },
            FamilyName::LambdaDe => Family::LambdaDe {
                d,
                e: a.e.ok_or_else(|| Failure::usage("lambda-de needs --e"))?,
            },
        };
        return Report::json(&weighted(&evaluate(&zp, &family)?));
    }
    let (e1, e2) = (io::rational(&a.eps1)?, io::rational(&a.eps2)?);
    let property = match a.property.expect("clap requires one mode") {
        PropertyName::L2 => Property::L2,
        PropertyName::L3 => Property::L3,
        PropertyName::L3ZeroJump => Property::L3ZeroJump,
        PropertyName::L3Symmetric => Property::L3Symmetric,
        PropertyName::IrL2 => Property::IrL2,
        PropertyName::RL2 => Property::RL2Bounds,
        PropertyName::L4 => Property::L4Graph {
            block_sizes: blocks,
            macro_edges: io::edge_list(&a.edges)?,
        },
    };
    let out = match probability_of_property(&zp, &property, &e1, &e2)? {
        PropertyProbability::Exact(w) => weighted(&w),
        PropertyProbability::Bracket {
            lower,
            upper,
            hypothesis,
        } => {
            json!({ "lower": weighted(&lower), "upper": weighted(&upper), "hypothesis": hypothesis })
        }
    };
    Report::json(&out)
}
