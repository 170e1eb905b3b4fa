use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sympwitt::commands::{self, Cmd, ErrorInfo, PredicateKind, Report};
use sympwitt::document::{self, Document};
use sympwitt::steinberg::SymbolKind;
use sympwitt::Error;

#[derive(Parser)]
#[command(
    name = "sympwitt",
    version,
    about = "Exact symplectic generator calculus over commutative rings"
)]
struct Cli {
    /// Document with ring and bindings; omit or pass '-' to read standard input
    #[arg(long, global = true, value_name = "FILE")]
    doc: Option<PathBuf>,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    cmd: CliCmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PredArg {
    Alternating,
    Identity,
    Invertible,
    Special,
    Symplectic,
    Relative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    Sl,
    Sp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Sw,
    Sh,
    Curly,
    Square,
}

#[derive(Subcommand)]
enum CliCmd {
    /// Pfaffian of a bound alternating matrix
    Pfaffian { name: String },
    /// Determinant of a bound matrix
    Det { name: String },
    /// Test a matrix predicate; exits 1 when it fails
    Predicate {
        name: String,
        #[arg(value_enum)]
        predicate: PredArg,
        /// Ideal binding, required for the relative predicate
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Evaluate a bound word to its matrix
    Eval { name: String },
    /// Lift a relative unimodular row to the excision algebra
    LiftRow {
        name: String,
        /// Vaserstein witness deviations as a vector literal, e.g. "[4, 0, 0]";
        /// solved for automatically over Euclidean domains when omitted
        #[arg(long)]
        vaserstein: Option<String>,
    },
    /// Lift a relative matrix to the excision algebra
    LiftMatrix {
        name: String,
        #[arg(long)]
        ideal: String,
        /// Which group the matrix sits in
        #[arg(long, value_enum, default_value_t = GroupArg::Sl)]
        group: GroupArg,
    },
    /// Project a matrix over an excision algebra down to the base ring
    Project { name: String },
    /// Factor an invertible matrix pair through elementary generators
    Whitehead { name: String },
    /// Interpolating word over R[X]: trivial at zero, the input at one
    Homotopy { name: String },
    /// Carry a unimodular row to one with principal-generated tail
    ReducePrincipal { name: String },
    /// Complete a unimodular row to an invertible matrix
    Complete {
        name: String,
        #[arg(long, default_value_t = 4096)]
        budget: u64,
    },
    /// Reassemble a matrix from its two localizations
    Patch {
        a1: String,
        a2: String,
        /// First denominator, as an element literal over the base ring
        #[arg(long)]
        s: String,
        /// Second denominator
        #[arg(long)]
        t: String,
        #[arg(long)]
        ideal: String,
    },
    /// Block sum of two alternating representatives
    WittPerp {
        a: String,
        b: String,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Representative of the inverse class
    WittInv {
        name: String,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Pfaffian invariant of a representative
    WittPf {
        name: String,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Push an invertible matrix through the hyperbolic map
    Hyperbolic {
        name: String,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Verify an equivalence certificate between two representatives
    CheckEquiv {
        a: String,
        b: String,
        cert: String,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Search for an equivalence certificate
    SearchEquiv {
        a: String,
        b: String,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 1024)]
        budget: u64,
    },
    /// Recover the block a conjugation carries one form to the other by
    ExtractBlock {
        delta: String,
        theta1: String,
        theta2: String,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Build a formal symbol word from bound elements
    Symbol {
        #[arg(value_enum)]
        kind: KindArg,
        r: String,
        s: Option<String>,
        #[arg(long, default_value_t = 3)]
        half: usize,
    },
    /// Evaluate a formal generator word to its matrix
    Phi { name: String },
    /// Check that a formal generator word evaluates to the identity
    KernelCheck { name: String },
    /// Run a named property suite (or "all")
    Suite {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Parse the document and print its canonical form
    Parse,
}

fn build_cmd(c: &CliCmd) -> Cmd {
    match c {
        CliCmd::Pfaffian { name } => Cmd::Pfaffian { name: name.clone() },
        CliCmd::Det { name } => Cmd::Det { name: name.clone() },
        CliCmd::Predicate { name, predicate, ideal } => Cmd::Predicate {
            name: name.clone(),
            predicate: match predicate {
                PredArg::Alternating => PredicateKind::Alternating,
                PredArg::Identity => PredicateKind::Identity,
                PredArg::Invertible => PredicateKind::Invertible,
                PredArg::Special => PredicateKind::Special,
                PredArg::Symplectic => PredicateKind::Symplectic,
                PredArg::Relative => PredicateKind::Relative,
            },
            ideal: ideal.clone(),
        },
        CliCmd::Eval { name } => Cmd::Eval { name: name.clone() },
        CliCmd::LiftRow { name, vaserstein } => {
            Cmd::LiftRow { name: name.clone(), vaserstein: vaserstein.clone() }
        }
        CliCmd::LiftMatrix { name, ideal, group } => Cmd::LiftMatrix {
            name: name.clone(),
            ideal: ideal.clone(),
            symplectic: *group == GroupArg::Sp,
        },
        CliCmd::Project { name } => Cmd::Project { name: name.clone() },
        CliCmd::Whitehead { name } => Cmd::Whitehead { name: name.clone() },
        CliCmd::Homotopy { name } => Cmd::Homotopy { name: name.clone() },
        CliCmd::ReducePrincipal { name } => Cmd::ReducePrincipal { name: name.clone() },
        CliCmd::Complete { name, budget } => {
            Cmd::Complete { name: name.clone(), budget: *budget }
        }
        CliCmd::Patch { a1, a2, s, t, ideal } => Cmd::Patch {
            s: s.clone(),
            t: t.clone(),
            a1: a1.clone(),
            a2: a2.clone(),
            ideal: ideal.clone(),
        },
        CliCmd::WittPerp { a, b, ideal } => {
            Cmd::WittPerp { a: a.clone(), b: b.clone(), ideal: ideal.clone() }
        }
        CliCmd::WittInv { name, ideal } => {
            Cmd::WittInv { name: name.clone(), ideal: ideal.clone() }
        }
        CliCmd::WittPf { name, ideal } => {
            Cmd::WittPf { name: name.clone(), ideal: ideal.clone() }
        }
        CliCmd::Hyperbolic { name, ideal } => {
            Cmd::Hyperbolic { name: name.clone(), ideal: ideal.clone() }
        }
        CliCmd::CheckEquiv { a, b, cert, ideal } => Cmd::CheckEquiv {
            a: a.clone(),
            b: b.clone(),
            cert: cert.clone(),
            ideal: ideal.clone(),
        },
        CliCmd::SearchEquiv { a, b, ideal, budget } => Cmd::SearchEquiv {
            a: a.clone(),
            b: b.clone(),
            ideal: ideal.clone(),
            budget: *budget,
        },
        CliCmd::ExtractBlock { delta, theta1, theta2, ideal } => Cmd::ExtractBlock {
            delta: delta.clone(),
            theta1: theta1.clone(),
            theta2: theta2.clone(),
            ideal: ideal.clone(),
        },
        CliCmd::Symbol { kind, r, s, half } => Cmd::Symbol {
            kind: match kind {
                KindArg::Sw => SymbolKind::Sw,
                KindArg::Sh => SymbolKind::Sh,
                KindArg::Curly => SymbolKind::Curly,
                KindArg::Square => SymbolKind::Square,
            },
            r: r.clone(),
            s: s.clone(),
            half: *half,
        },
        CliCmd::Phi { name } => Cmd::Phi { name: name.clone() },
        CliCmd::KernelCheck { name } => Cmd::KernelCheck { name: name.clone() },
        CliCmd::Suite { name, seed, trials } => {
            Cmd::Suite { name: name.clone(), seed: *seed, trials: *trials }
        }
        CliCmd::Parse => Cmd::Parse,
    }
}

fn load_document(path: Option<&Path>) -> Result<Document, Error> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Error::Unsupported(format!("cannot read {}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Unsupported(format!("cannot read standard input: {e}")))?;
        }
    }
    document::parse_document(&text)
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Plain => print!("{}", report.render_plain()),
        Format::Json => println!("{}", serde_json::to_string(report).expect("report serializes")),
    }
    ExitCode::from(commands::exit_code(report) as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd = build_cmd(&cli.cmd);

    let doc = if matches!(cmd, Cmd::Suite { .. }) {
        Document::default()
    } else {
        match load_document(cli.doc.as_deref()) {
            Ok(d) => d,
            Err(e) => {
                let report = Report {
                    command: cmd.name(),
                    ok: false,
                    result: None,
                    checks: Vec::new(),
                    error: Some(ErrorInfo { code: e.code().into(), message: e.to_string() }),
                    elapsed_ms: None,
                };
                emit(&report, cli.format);
                return ExitCode::from(2);
            }
        }
    };

    let report = commands::run_command(&cmd, &doc);
    emit(&report, cli.format)
}
