//! `enumerate`: exhaustive scans and the closed forms they confirm.

use clap::{ArgGroup, Args, ValueEnum};
use micromacro::enumerate::{
    count_always_increasing_by_partition, count_always_increasing_by_permutation, duality_identity,
    dx_sequence, scan_all,
};

use crate::io::{self, Failure, Outcome, Report};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Side {
    Partition,
    Permutation,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["scan", "dx", "always_increasing", "duality"])))]
pub struct EnumerateArgs {
    /// Histogram of `|D|` over all partitions and permutations of `n` points.
    #[arg(long, value_name = "N")]
    pub scan: Option<usize>,
    /// `d_X` for `|X| = 1..=N`.
    #[arg(long, value_name = "N")]
    pub dx: Option<usize>,
    /// Count the always-increasing completions of the input system.
    #[arg(long, requires = "input")]
    pub always_increasing: bool,
    /// Keep the partition or the permutation of the input fixed.
    #[arg(long, value_enum, default_value = "partition")]
    pub side: Side,
    /// System JSON file, or `-` for stdin.
    #[arg(long)]
    pub input: Option<String>,
    /// Both sides of the duality identity for `|X| = N`.
    #[arg(long, value_name = "N")]
    pub duality: Option<usize>,
}

pub fn run(a: &EnumerateArgs) -> Outcome<Report> {
    if let Some(n) = a.scan {
        return Ok(Report::ok(scan_all(n)?.to_csv()));
    }
    if let Some(n) = a.dx {
        let mut out = String::from("n,d\n");
        for (k, d) in dx_sequence(n).iter().enumerate() {
            out.push_str(&format!("{},{d}\n", k + 1));
        }
        return Ok(Report::ok(out));
    }
    if let Some(n) = a.duality {
        let d = duality_identity(n)?;
        let out = format!(
            "n,by_partition,by_permutation,equal\n{n},{},{},{}\n",
            d.by_partition, d.by_permutation, d.equal
        );
        return Ok(Report::ok(out).with_verdict(d.equal));
    }
    let path = a
        .input
        .as_deref()
        .ok_or_else(|| Failure::usage("--always-increasing needs --input"))?;
    let sys = io::load_system(path)?;
    let out = match a.side {
        Side::Partition => {
            let c = count_always_increasing_by_partition(sys.partition());
            format!(
                "side,count,probability\npartition,{},{}\n",
                c.count,
                micromacro::numeric::fmt_q(&c.probability)
            )
        }
        Side::Permutation => {
            let c = count_always_increasing_by_permutation(sys.dynamics())?;
            format!("side,count\npermutation,{c}\n")
        }
    };
    Ok(Report::ok(out))
}
