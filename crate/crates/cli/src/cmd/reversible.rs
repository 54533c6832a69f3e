//! `reversible`: doublings, decomposition, fluctuation identities,
//! entropy production and the tilted distribution.

use clap::{ArgGroup, Args, ValueEnum};
use micromacro::reversible::{
    decompose_reversible, default_grid, er_contract, fluctuation_check, make_er, make_ir,
    production_profile, tilted_distribution, Colored, ReversionKind,
};
use serde_json::{json, Value};

use crate::io::{self, Outcome, Report};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Doubling {
    Ir,
    Er,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Invariant,
    Equivariant,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("op").required(true).args(
    ["make", "decompose", "fluctuation", "production", "contract", "tilted"]
)))]
pub struct ReversibleArgs {
    /// System JSON file, or `-` for stdin.
    #[arg(long)]
    pub input: String,
    /// Print the invariant (`ir`) or equivariant (`er`) doubling.
    #[arg(long, value_enum)]
    pub make: Option<Doubling>,
    /// Split a reversible system into its four parts.
    #[arg(long, value_enum)]
    pub decompose: Option<Kind>,
    /// Check both fluctuation identities as counts.
    #[arg(long)]
    pub fluctuation: bool,
    /// Entropy production profile over `--steps` steps.
    #[arg(long)]
    pub production: bool,
    /// Verify the doubling contract on the default ε grid.
    #[arg(long, value_enum)]
    pub contract: Option<Doubling>,
    /// Maximum-entropy distribution with this mean production rate.
    #[arg(long, value_name = "TARGET", allow_negative_numbers = true)]
    pub tilted: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
}

fn colored(c: &Colored) -> Value {
    json!({ "system": c.system.to_file(), "labels": c.labels })
}

pub fn run(a: &ReversibleArgs) -> Outcome<Report> {
    let sys = io::load_system(&a.input)?;
    if let Some(d) = a.make {
        let out = match d {
            Doubling::Ir => make_ir(&sys)?,
            Doubling::Er => make_er(&sys)?,
        };
        return Ok(Report::ok(io::system_json(&out)?));
    }
    if let Some(k) = a.decompose {
        let kind = match k {
            Kind::Invariant => ReversionKind::Invariant,
            Kind::Equivariant => ReversionKind::Equivariant,
        };
        let d = decompose_reversible(&sys, kind)?;
        let out = json!({
            "mode": d.mode,
            "rho": d.rho,
            "part_sizes": d.part_sizes(),
            "base": d.base.to_file(),
            "base_labels": d.base_labels,
            "n_chains": d.n_chains,
            "o_chains": d.o_chains,
            "t_chains": d.t_chains,
            "doubled": colored(&d.doubled),
            "n_part": colored(&d.n_part),
            "o_part": colored(&d.o_part),
            "t_part": colored(&d.t_part),
            "certificate": d.certificate,
            "verified": d.verified,
        });
        return Ok(Report::json(&out)?.with_verdict(d.verified));
    }
    if a.fluctuation {
        let r = fluctuation_check(&sys)?;
        let holds = r.item1 && r.item2.unwrap_or(true);
        return Ok(Report::json(&r)?.with_verdict(holds));
    }
    if a.production {
        let p = production_profile(&sys, a.steps)?;
        let holds = p.all_hold();
        return Ok(Report::json(&p)?.with_verdict(holds));
    }
    if let Some(d) = a.contract {
        let c = match d {
            Doubling::Ir => micromacro::reversible::ir_contract(&sys, &default_grid())?,
            Doubling::Er => er_contract(&sys, &default_grid())?,
        };
        let holds = c.all_hold();
        return Ok(Report::json(&c)?.with_verdict(holds));
    }
    let target = a.tilted.expect("clap requires one operation");
    Report::json(&tilted_distribution(&sys, a.steps, target)?)
}
