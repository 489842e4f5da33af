//! `sseq`: batch front end for the spectral-sequence and power-operation
//! toolkit. Every verb prints `{"schema":"v1","verb":…,"result":…}` in json
//! mode; `--format human` renders the same result as indented text.

mod error;
mod group;
mod kone;
mod render;
mod ss;
mod transport;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "sseq", version, about = "Spectral sequences of towers, representation rings and K(1)-local power operations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// p-adic precision (digits).
    #[arg(long, global = true, env = "SSEQ_PADIC_PRECISION", default_value_t = 12)]
    precision: u32,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Human,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Finite permutation groups.
    #[command(subcommand)]
    Group(GroupVerb),
    /// Euler class of the reduced permutation representation of G/K.
    Euler {
        /// `G/K`: G a group JSON file or name, K a subgroup (`e`, `G`, a JSON
        /// file, or generators in cycle notation separated by `;`).
        #[arg(long)]
        gset: String,
    },
    /// Norm of the Bott class modulo 2, as a class in the rational representation ring.
    NormEps {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
    },
    /// KU-allowability of a group.
    Allowable {
        #[arg(long)]
        group: String,
    },
    /// Spectral sequences of towers.
    #[command(subcommand)]
    Ss(SsVerb),
    /// Transport of cycles, boundaries and differentials along power operations.
    Transport {
        /// `ku` or `synthetic:FILE.json`.
        #[arg(long)]
        system: String,
        #[arg(long)]
        r: u32,
        /// `s,t,alpha`.
        #[arg(long, allow_hyphen_values = true)]
        pos: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// The K(1)-local sphere.
    #[command(subcommand)]
    K1(K1Verb),
    /// The bigraded ring of the Borel construction on KU_p.
    #[command(subcommand)]
    Bku(BkuVerb),
}

#[derive(Subcommand, Debug)]
enum GroupVerb {
    /// Order, conjugacy classes and rational character table.
    Info {
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand, Debug)]
enum SsVerb {
    /// Pages E_2 … E_rmax of a tower, optionally compared with a limit.
    Run {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long, default_value_t = 5)]
        rmax: u32,
        #[arg(long)]
        limit: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum K1Verb {
    /// Homotopy groups over a range of stems.
    Pi {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: Option<i128>,
        /// `lo..hi`, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        /// Fix the weight and list the Borel groups instead.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<i64>,
    },
    /// P([β^n]) at an odd prime.
    Power {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        k: Option<i128>,
    },
    /// Power operation on a class at p = 2.
    Power2 {
        /// rho, eta-rho, eta2-rho, mu, eta-mu, xi or eta.
        #[arg(long)]
        class: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        n: i64,
        #[arg(long)]
        k: Option<i128>,
    },
    /// θ on the class ε at p = 2.
    Theta {
        #[arg(long)]
        k: Option<i128>,
    },
}

#[derive(Subcommand, Debug)]
enum BkuVerb {
    /// Evaluate an expression in beta, tau2, a, d, h, psi(k, …).
    Eval {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Serialize)]
struct Envelope {
    schema: &'static str,
    verb: &'static str,
    result: Value,
}

fn dispatch(cli: &Cli) -> Result<(&'static str, Value), CliError> {
    let prec = cli.precision;
    if prec == 0 || prec > 60 {
        return Err(CliError::schema(format!("Schema: precision {prec} is outside 1..=60")));
    }
    Ok(match &cli.verb {
        Verb::Group(GroupVerb::Info { group }) => ("group info", group::info(group)?),
        Verb::Euler { gset } => ("euler", group::euler(gset)?),
        Verb::NormEps { group, subgroup } => ("norm-eps", group::norm_eps(group, subgroup)?),
        Verb::Allowable { group } => ("allowable", group::allowable(group)?),
        Verb::Ss(SsVerb::Run { tower, rmax, limit }) => ("ss run", ss::run(tower, *rmax, limit.as_deref())?),
        Verb::Transport { system, r, pos, input } => {
            ("transport", transport::run(system, *r, transport::parse_pos(pos)?, input, prec)?)
        }
        Verb::K1(K1Verb::Pi { p, k, range, weight }) => ("k1 pi", kone::pi(*p, *k, kone::parse_range(range)?, *weight, prec)?),
        Verb::K1(K1Verb::Power { p, n, k }) => ("k1 power", kone::power(*p, *n, *k, prec)?),
        Verb::K1(K1Verb::Power2 { class, n, k }) => ("k1 power2", kone::power2(class, *n, *k, prec)?),
        Verb::K1(K1Verb::Theta { k }) => ("k1 theta", kone::theta(*k, prec)?),
        Verb::Bku(BkuVerb::Eval { p, expr }) => ("bku eval", kone::bku_eval(*p, expr, prec)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((verb, result)) => {
            match cli.format {
                Format::Json => {
                    let envelope = Envelope { schema: "v1", verb, result };
                    println!("{}", serde_json::to_string(&envelope).expect("serializable"));
                }
                Format::Human => print!("{}", render::human(verb, &result)),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
