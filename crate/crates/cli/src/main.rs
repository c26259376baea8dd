//! `ecnc`: command-line access to the continued-fraction, curve, torus and
//! rewriting routines of `ecnc-core`.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use ecnc_core::curves::DEFAULT_SHELLS;
use ecnc_core::nctori::DEFAULT_EVALUATOR;

use commands::Settings;
use output::{emit, Format};

#[derive(Parser, Debug)]
#[command(name = "ecnc", version, about = "Elliptic curves, noncommutative tori and their invariants")]
#[command(group(ArgGroup::new("format").args(["json", "markdown", "csv"])))]
struct Cli {
    /// Machine-readable output: {"command", "status", "payload", "diagnostics"}
    #[arg(long, global = true)]
    json: bool,
    /// Markdown tables (table, verify-table)
    #[arg(long, global = true)]
    markdown: bool,
    /// CSV tables (table, verify-table)
    #[arg(long, global = true)]
    csv: bool,
    /// Square shells for lattice sums
    #[arg(long, global = true, default_value_t = DEFAULT_SHELLS, value_name = "N")]
    shells: u32,
    /// Working precision in bits for printed decimals (64..=106)
    #[arg(long, global = true, default_value_t = commands::MAX_PRECISION, value_name = "BITS")]
    precision: u32,
    /// Complexity evaluator: period-length-class or symmetric-half
    #[arg(long, global = true, default_value = DEFAULT_EVALUATOR, value_name = "NAME")]
    evaluator: String,
    /// Rank/complexity table to use instead of the built-in one
    #[arg(long, global = true, value_name = "PATH")]
    table_file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Continued fraction of sqrt(D), or of an exact number such as (1+sqrt(5))/2
    Cf { x: String },
    /// Reduce tau to the fundamental domain
    Reduce {
        #[arg(allow_hyphen_values = true)]
        tau: String,
    },
    /// j-invariant from tau or from a Legendre parameter
    #[command(group(ArgGroup::new("input").args(["tau", "lambda"]).required(true)))]
    J {
        #[arg(allow_hyphen_values = true)]
        tau: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Complex multiplication field of an exact tau
    Cm {
        #[arg(allow_hyphen_values = true)]
        tau: String,
    },
    /// Real multiplication field of theta
    Rm {
        #[arg(allow_hyphen_values = true)]
        theta: String,
    },
    /// Morita equivalence of two tori with an explicit SL2(Z) witness
    Morita {
        #[arg(allow_hyphen_values = true)]
        theta1: String,
        #[arg(allow_hyphen_values = true)]
        theta2: String,
    },
    /// Arithmetic complexity c of the torus with theta = sqrt(D)
    Complexity { d: i64 },
    /// Rank predicted as c - 1
    Rank { d: i64 },
    /// Print the rank/complexity table
    Table,
    /// Recompute every row of the rank/complexity table
    VerifyTable,
    /// Derive the commutation system from the easy relations and back
    VerifyLemma,
    /// Check the Weierstrass differential equation and evenness at sample points
    WpCheck {
        #[arg(allow_hyphen_values = true)]
        tau: String,
        /// Extra sample point, repeatable
        #[arg(long = "z", allow_hyphen_values = true)]
        z: Vec<String>,
    },
    /// P + Q on y^2 = x^3 + a x^2 + b x + c; CURVE is "a,b,c", points "x,y" or O
    GroupLaw {
        #[arg(allow_hyphen_values = true)]
        curve: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else if cli.markdown {
        Format::Markdown
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Human
    };
    let s = Settings {
        shells: cli.shells,
        precision: cli.precision,
        evaluator: cli.evaluator,
        table_file: cli.table_file,
    };
    let (name, result) = match &cli.command {
        Command::Cf { x } => ("cf", commands::cf(x)),
        Command::Reduce { tau } => ("reduce", commands::reduce(tau, &s)),
        Command::J { tau, lambda } => ("j", commands::j(tau.as_deref(), lambda.as_deref(), &s)),
        Command::Cm { tau } => ("cm", commands::cm(tau)),
        Command::Rm { theta } => ("rm", commands::rm(theta)),
        Command::Morita { theta1, theta2 } => ("morita", commands::morita(theta1, theta2)),
        Command::Complexity { d } => ("complexity", commands::complexity(*d, &s)),
        Command::Rank { d } => ("rank", commands::rank(*d, &s)),
        Command::Table => ("table", commands::table(&s)),
        Command::VerifyTable => ("verify-table", commands::verify_table(&s)),
        Command::VerifyLemma => ("verify-lemma", commands::verify_lemma()),
        Command::WpCheck { tau, z } => ("wp-check", commands::wp_check(tau, z, &s)),
        Command::GroupLaw { curve, p, q } => ("group-law", commands::group_law(curve, p, q)),
    };
    emit(name, result, format)
}
