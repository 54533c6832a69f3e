//! `thermo`: maximum-entropy transition proportions between zones.

use clap::{Args, ValueEnum};
use micromacro::thermo::{
    limit_properties, max_average_jump, maxent_bounded_jump, maxent_fixed_jump, maxent_free,
};
use serde_json::json;

use crate::io::{self, real, Failure, Outcome, Report};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModelName {
    /// Only the zone marginals are fixed.
    Free,
    /// Transitions jump over fewer than `--k` zones.
    Band,
    /// The average jump is fixed to `--delta`.
    Jump,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct ThermoArgs {
    /// Zone proportions `p_1,...,p_o`, by increasing block size.
    #[arg(long)]
    pub p: String,
    #[arg(long, value_enum, default_value = "free")]
    pub model: ModelName,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Report L1, GAT, ZAT and the equilibrium shares of the solution.
    #[arg(long)]
    pub check_limits: bool,
    /// ε1 for the limit checks.
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// ε2 for the limit checks; defaults to `--eps`.
    #[arg(long)]
    pub eps2: Option<f64>,
    /// Print the largest admissible average jump instead of solving.
    #[arg(long)]
    pub max_jump: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

pub fn run(a: &ThermoArgs) -> Outcome<Report> {
    let p = io::f64_list(&a.p)?;
    if a.max_jump {
        let delta = max_average_jump(&p)?;
        let text = match a.format {
            Format::Csv => format!("max_average_jump\n{}\n", real(delta)),
            Format::Json => io::to_json(&json!({ "max_average_jump": delta }))?,
        };
        return Ok(Report::ok(text));
    }
    let prop = match a.model {
        ModelName::Free => maxent_free(&p)?,
        ModelName::Band => maxent_bounded_jump(
            &p,
            a.k.ok_or_else(|| Failure::usage("--model band needs --k"))?,
        )?,
        ModelName::Jump => maxent_fixed_jump(
            &p,
            a.delta
                .ok_or_else(|| Failure::usage("--model jump needs --delta"))?,
        )?,
    };
    if a.check_limits {
        let r = limit_properties(&prop, a.eps, a.eps2.unwrap_or(a.eps));
        let text = match a.format {
            Format::Json => io::to_json(&r)?,
            Format::Csv => {
                let mut out = String::from("name,value,bound,holds\n");
                for v in &r.verdicts {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        v.name,
                        real(v.value),
                        real(v.bound),
                        v.holds
                    ));
                }
                out
            }
        };
        return Ok(Report::ok(text));
    }
    let text = match a.format {
        Format::Json => io::to_json(&prop)?,
        Format::Csv => prop
            .lambda
            .iter()
            .map(|row| row.iter().map(|&x| real(x)).collect::<Vec<_>>().join(",") + "\n")
            .collect(),
    };
    Ok(Report::ok(text))
}
