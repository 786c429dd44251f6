//! The `ennea` command line: argument parsing, JSON documents and reports.

pub mod docs;
mod error;
mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ennea_core::Scalar;

pub use error::CliError;
pub use report::{Report, Status};

pub const DEFAULT_SEED: u64 = 20241018;

#[derive(Debug, Parser)]
#[command(name = "ennea", version, about = "Exact checks and constructions for splittings of associativity")]
pub struct Cli {
    /// Also write the structured report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Seed for randomized property runs.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check axioms of a structure given in JSON.
    #[command(subcommand)]
    Verify(Verify),
    /// Build structures from algebras, operators, coproducts and graphs.
    #[command(subcommand)]
    Construct(Construct),
    /// Degree-3 dimensions of operad presentations.
    #[command(subcommand)]
    Operad(Operad),
    /// Degree-one deformation systems and Baxter-operator deformations.
    #[command(subcommand)]
    Deform(Deform),
    /// Recompute the published values and compare.
    Demo,
}

fn scalar(s: &str) -> Result<Scalar, String> {
    s.parse::<Scalar>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoproductKind {
    Weighted,
    Hat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RulesArg {
    Default,
    Zz,
    Zz1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LabelingArg {
    /// Every operation gets an order-one copy.
    Full,
    /// As `full`, with the base `∘` set to zero.
    CircFree,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Seven dendriform trialgebra relations.
    Trialgebra {
        #[arg(long)]
        input: PathBuf,
    },
    /// The 49 relations of a t-ennea-algebra.
    Ennea {
        #[arg(long)]
        input: PathBuf,
    },
    /// β(x)β(y) = β(xβ(y) + β(x)y + t xy).
    Baxter {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        op: PathBuf,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        t: Scalar,
    },
    /// The dual identity for a map on a coalgebra.
    Cobaxter {
        #[arg(long)]
        coproduct: PathBuf,
        #[arg(long)]
        op: PathBuf,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        t: Scalar,
    },
    /// Coassociativity and the ε(t) compatibility.
    Bialgebra {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        coproduct: PathBuf,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        t: Scalar,
    },
    /// A path-algebra coproduct as an ε(t)-bialgebra (t defaults to 0 for weighted, -1 for hat).
    GraphBialgebra {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        coproduct: CoproductKind,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        t: Option<Scalar>,
    },
    /// The four mixed coassociativity identities of the weighted and hat coproducts.
    Hypercubic {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Relations on the augmented space with a formal unit.
    UnitAction(UnitActionArgs),
    /// Relations on the tensor construction of two augmented enneas.
    Coherence {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct UnitActionArgs {
    /// An ennea document.
    #[arg(long, conflicts_with_all = ["data", "system"], required_unless_present = "data")]
    pub ennea: Option<PathBuf>,
    /// A deformation document; the instance is built from it.
    #[arg(long, requires = "system")]
    pub data: Option<PathBuf>,
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long, value_enum, default_value_t = RulesArg::Default)]
    pub rules: RulesArg,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Path algebra of an acyclic graph (or truncated at --max-len).
    PathAlgebra {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted or hat coproduct on a path algebra.
    Coproduct {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: CoproductKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The nine operations on End(A) from an ε(t)-bialgebra.
    EndEnnea {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        coproduct: PathBuf,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        t: Scalar,
        #[arg(long)]
        out: PathBuf,
    },
    /// (xβ(y), β(x)y, t xy) from a t-Baxter operator.
    Trialgebra {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        op: PathBuf,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        t: Scalar,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Operad {
    /// dim P'(3) and the rank of the relation matrix.
    Dim3 {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        preset: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true, default_value = "1")]
        t: Scalar,
    },
    /// Write a built-in presentation as JSON.
    Export {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Deform {
    /// Print the order-h^d conditions of the cross-term system.
    Derive {
        #[arg(long)]
        preset: String,
        #[arg(long, value_enum, default_value_t = LabelingArg::Full)]
        labeling: LabelingArg,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Hypotheses, operator identity, degree-one system and truncated axioms for a deformation document.
    Check {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 3)]
        truncation: usize,
    },
}

/// Parses `args` (program name first), runs the command, prints the text
/// report and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = execute(&cli);
    if report.status == Status::Error {
        eprint!("{}", report.render());
    } else {
        print!("{}", report.render());
    }
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("cannot write {}: {e}", path.display());
            return 2;
        }
    }
    report.exit_code()
}

pub fn execute(cli: &Cli) -> Report {
    let name = commands::name(&cli.command);
    match commands::dispatch(cli) {
        Ok(r) => r,
        Err(e) => {
            let mut r = Report::error(&name, e.to_string());
            if e.exit_code() == 1 {
                r.status = Status::Fail;
            }
            r
        }
    }
}
