//! `random`, `analyze` and `check`.

use std::collections::BTreeMap;

use clap::{Args, ValueEnum};
use micromacro::properties::{
    self, arrow_of_time_at, check_l2, loschmidt_counts, Property, PropertyVerdict,
};
use micromacro::random::{
    parse_zone_spec, random_reversible, random_system, random_system_with_profile, rng_from_seed,
    ReversionMode,
};
use micromacro::{Error, System, Q};
use num_traits::Zero;
use serde::Serialize;

use crate::io::{self, Failure, Outcome, Report};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Reversion {
    Plain,
    Invariant,
    Equivariant,
}

#[derive(Args, Debug)]
pub struct RandomArgs {
    /// Number of microstates.
    #[arg(long)]
    pub n: Option<usize>,
    /// Zone profile as `size x count` pairs, e.g. `1x2,3x1`.
    #[arg(long, conflicts_with = "reversible")]
    pub zones: Option<String>,
    /// Build a random reversible system (`alpha = r s` for involutions).
    #[arg(long, value_enum)]
    pub reversible: Option<Reversion>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn random(a: &RandomArgs) -> Outcome<Report> {
    let mut rng = rng_from_seed(a.seed);
    let sys = match (&a.zones, a.reversible) {
        (Some(spec), _) => {
            let spec = parse_zone_spec(spec).map_err(|e| Failure::usage(e.to_string()))?;
            let total: usize = spec.iter().map(|&(s, c)| s * c).sum();
            if let Some(n) = a.n.filter(|&n| n != total) {
                return Err(Failure::usage(format!(
                    "zone spec covers {total} microstates, not {n}"
                )));
            }
            random_system_with_profile(&spec, &mut rng)?
        }
        (None, mode) => {
            let n =
                a.n.ok_or_else(|| Failure::usage("either --n or --zones is required"))?;
            if n == 0 {
                return Err(Failure::usage("--n must be at least 1"));
            }
            match mode {
                None => random_system(n, &mut rng),
                Some(m) => {
                    let m = match m {
                        Reversion::Plain => ReversionMode::Plain,
                        Reversion::Invariant => ReversionMode::Invariant,
                        Reversion::Equivariant => ReversionMode::Equivariant,
                    };
                    random_reversible(n, m, &mut rng)
                }
            }
        }
    };
    eprintln!("seed: {}", a.seed);
    Ok(Report::ok(io::system_json(&sys)?))
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// System JSON file, or `-` for stdin.
    #[arg(long)]
    pub input: String,
    #[arg(long, default_value = "1/10")]
    pub eps1: String,
    #[arg(long, default_value = "1/10")]
    pub eps2: String,
    /// Steps before each microstate in the arrow-of-time windows.
    #[arg(long, default_value_t = 1)]
    pub back: usize,
    /// Steps after each microstate in the arrow-of-time windows.
    #[arg(long, default_value_t = 1)]
    pub fwd: usize,
}

#[derive(Serialize)]
pub struct Equilibrium {
    pub bound: bool,
    pub reaching_time: Option<micromacro::system::ReachingTime>,
    /// Whether `alpha X^eq` meets every level of the reaching time.
    pub derived_hypothesis: Option<bool>,
    /// `L2(ε1, 0)` of the derived time system.
    pub derived_l2: Option<bool>,
}

#[derive(Serialize)]
pub struct Arrows {
    pub back: usize,
    pub fwd: usize,
    /// Microstates around which the `(ε1, back, fwd)` arrow exists.
    pub holding: Vec<usize>,
    pub loschmidt: Option<properties::LoschmidtCounts>,
}

#[derive(Serialize)]
pub struct Analysis {
    pub n: usize,
    pub invertible: bool,
    #[serde(serialize_with = "micromacro::numeric::ser_q")]
    pub eps1: Q,
    #[serde(serialize_with = "micromacro::numeric::ser_q")]
    pub eps2: Q,
    pub entropy: micromacro::EntropyReport,
    pub transitions: micromacro::TransitionCounts,
    pub zones: micromacro::ZoneProfile,
    pub jumps: micromacro::system::JumpSet,
    pub equilibrium: Equilibrium,
    pub properties: BTreeMap<String, Option<PropertyVerdict>>,
    pub arrows: Option<Arrows>,
}

fn cap_verdict(v: PropertyVerdict, cap: Option<usize>) -> PropertyVerdict {
    match cap {
        Some(c) => v.capped(c),
        None => v,
    }
}

pub fn analyze(a: &AnalyzeArgs, cap: Option<usize>) -> Outcome<Report> {
    let sys = io::load_system(&a.input)?;
    let (e1, e2) = (io::rational(&a.eps1)?, io::rational(&a.eps2)?);
    Report::json(&analysis(&sys, e1, e2, a.back, a.fwd, cap)?)
}

/// Every report the analyzer produces for one system.
pub fn analysis(
    sys: &System,
    e1: Q,
    e2: Q,
    back: usize,
    fwd: usize,
    cap: Option<usize>,
) -> Outcome<Analysis> {
    let mut verdicts = BTreeMap::new();
    for p in Property::ALL {
        let v = match properties::check(sys, p, &e1, Some(&e2)) {
            Ok(v) => Some(cap_verdict(v, cap)),
            Err(Error::NotInvertible) => None,
            Err(e) => return Err(e.into()),
        };
        verdicts.insert(p.name().to_string(), v);
    }
    let reaching = sys.equilibrium_reaching_time().ok();
    let derived = sys.derived_time_system().ok();
    let equilibrium = Equilibrium {
        bound: reaching.is_some(),
        reaching_time: reaching,
        derived_hypothesis: derived.as_ref().map(|d| d.hypothesis_holds),
        derived_l2: derived
            .as_ref()
            .map(|d| check_l2(&d.system, &e1, &Q::zero()).holds),
    };
    let arrows = if sys.invertible() {
        let mut holding = Vec::new();
        for i in 0..sys.n() {
            if arrow_of_time_at(sys, i, back, fwd, &e1)?.holds {
                holding.push(i);
            }
        }
        let loschmidt = match sys.reversion() {
            Some(_) if sys.is_entropy_preserving() => Some(loschmidt_counts(sys, back, fwd, &e1)?),
            _ => None,
        };
        Some(Arrows {
            back,
            fwd,
            holding,
            loschmidt,
        })
    } else {
        None
    };
    Ok(Analysis {
        n: sys.n(),
        invertible: sys.invertible(),
        eps1: e1,
        eps2: e2,
        entropy: sys.entropy_report(),
        transitions: sys.transition_counts(1),
        zones: sys.zone_profile(),
        jumps: sys.jump_set(),
        equilibrium,
        properties: verdicts,
        arrows,
    })
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// One of l1, l2, l3, l4, gat, zat, bat, g0 .. g4.
    #[arg(long)]
    pub property: Property,
    #[arg(long)]
    pub eps: String,
    /// Second parameter for l2, l3, l4, g2, g3 and g4.
    #[arg(long)]
    pub eps2: Option<String>,
    /// System JSON file, or `-` for stdin.
    #[arg(long)]
    pub input: String,
}

pub fn check(a: &CheckArgs, cap: Option<usize>) -> Outcome<Report> {
    if a.property.two_parameters() && a.eps2.is_none() {
        return Err(Failure::usage(format!(
            "property {} needs --eps2",
            a.property
        )));
    }
    let sys: System = io::load_system(&a.input)?;
    let e1 = io::rational(&a.eps)?;
    let e2 = a.eps2.as_deref().map(io::rational).transpose()?;
    let v = cap_verdict(properties::check(&sys, a.property, &e1, e2.as_ref())?, cap);
    let holds = v.holds;
    Ok(Report::json(&v)?.with_verdict(holds))
}
