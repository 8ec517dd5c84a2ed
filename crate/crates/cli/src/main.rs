//! `lineal`: exact generating functions for lineal classes from the command line.

mod fixtures;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lineal::combid::{point_config_process, vector_config_process, ConfigProcess, TypeIndex};
use lineal::commclass::{burnside_gf, commuting_branching};
use lineal::exactalg::{Poly, RatFun};
use lineal::grouper::named::by_name;
use lineal::matalg::{module_process, Scale};
use lineal::orbit::budget_from_env;
use lineal::treegen::{build_branching, gf_class, gf_total, BranchingMatrix};
use lineal::Error;

use output::{series_strings, Format, Out};

#[derive(Parser, Debug)]
#[command(
    name = "lineal",
    version,
    about = "Exact generating functions for rooted trees with finitely many lineal classes"
)]
struct Cli {
    /// Output format. `structured` emits JSON Lines.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupKind {
    /// Conjugacy classes of commuting n-tuples.
    Commuting,
    /// Orbits of the group on n-tuples (Burnside count).
    Burnside,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConfigArg {
    Point,
    Vector,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    /// Recompute the tabulated generating functions and branching matrices.
    #[value(name = "paper-tables")]
    Tables,
    /// Compare series coefficients with brute-force orbit counts.
    Oracles,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generating function for a named permutation group (S4, A5, C6, D4, C2xS3, C2wrS2, ...).
    Group {
        #[arg(long)]
        name: String,
        #[arg(long, value_enum, default_value_t = GroupKind::Commuting)]
        kind: GroupKind,
        /// Also print this many series coefficients (t^0 .. t^{N-1}).
        #[arg(long)]
        terms: Option<usize>,
        /// Print the branching matrix (commuting kind only).
        #[arg(long)]
        matrix: bool,
        /// Print the class graph in Graphviz format (commuting kind only).
        #[arg(long)]
        dot: bool,
    },
    /// Generating function for n-tuples in M_m(F_q) up to simultaneous conjugation.
    MatrixAlg {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        terms: Option<usize>,
        /// Admit root rings up to 512 elements instead of 81.
        #[arg(long)]
        stretch: bool,
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Point or vector configurations, with per-type generating functions.
    Configs {
        #[arg(long, value_enum)]
        kind: ConfigArg,
        #[arg(long)]
        m: usize,
        /// Field order, required for `--kind vector`.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Run a verification suite. Exits 1 on any mismatch.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Work budget for brute-force enumeration (default: LINEAL_WORK_BUDGET or 10^7).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Expand num/den as a power series. Polynomials are comma-separated
    /// coefficient lists (constant term first) or expressions in t.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long, allow_hyphen_values = true)]
        den: String,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
}

pub enum Failure {
    Usage(String),
    Lib(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out::new(cli.format);
    let r = match cli.command {
        Command::Group { name, kind, terms, matrix, dot } => group(&mut out, &name, kind, terms, matrix, dot),
        Command::MatrixAlg { q, m, terms, stretch, matrix, dot } => {
            matrix_alg(&mut out, q, m, terms, stretch, matrix, dot)
        }
        Command::Configs { kind, m, q, terms } => configs(&mut out, kind, m, q, terms),
        Command::Verify { suite, budget } => {
            let budget = budget.unwrap_or_else(budget_from_env);
            match suite {
                Suite::Tables => verify::tables(&mut out),
                Suite::Oracles => verify::oracles(&mut out, budget),
            }
        }
        Command::Expand { num, den, terms } => expand(&mut out, &num, &den, terms),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            let code = match e {
                Error::StateExplosion { .. }
                | Error::OrderLimitExceeded { .. }
                | Error::SizeLimitExceeded { .. }
                | Error::WorkBudgetExceeded { .. } => {
                    eprintln!("limit exceeded: {e}");
                    3
                }
                Error::Parse(_)
                | Error::InvalidFieldOrder(_)
                | Error::InvalidPermutation(_)
                | Error::ZeroDenominator
                | Error::NonUnitConstantTerm => {
                    eprintln!("error: {e}");
                    2
                }
                _ => {
                    eprintln!("error: {e}");
                    1
                }
            };
            ExitCode::from(code)
        }
    }
}

fn tree_report(
    out: &mut Out,
    name: &str,
    bm: &BranchingMatrix,
    terms: Option<usize>,
    matrix: bool,
    dot: bool,
) -> CliResult {
    let gf = gf_total(bm)?;
    out.gf(name, &gf);
    if let Some(n) = terms {
        out.series(name, &series_strings(&gf, n.saturating_sub(1)));
    }
    if matrix {
        out.matrix(name, bm);
    }
    if dot {
        out.dot(bm);
    }
    Ok(())
}

fn group(out: &mut Out, name: &str, kind: GroupKind, terms: Option<usize>, matrix: bool, dot: bool) -> CliResult {
    let g = by_name(name)?;
    match kind {
        GroupKind::Commuting => tree_report(out, name, &commuting_branching(&g)?, terms, matrix, dot),
        GroupKind::Burnside => {
            if matrix || dot {
                return Err(Failure::Usage("--matrix and --dot need --kind commuting".into()));
            }
            let f = burnside_gf(&g);
            out.gf(name, &f);
            if let Some(n) = terms {
                out.series(name, &series_strings(&f, n.saturating_sub(1)));
            }
            Ok(())
        }
    }
}

fn matrix_alg(
    out: &mut Out,
    q: u64,
    m: usize,
    terms: Option<usize>,
    stretch: bool,
    matrix: bool,
    dot: bool,
) -> CliResult {
    let scale = if stretch { Scale::Stretch } else { Scale::Desk };
    let bm = build_branching(&mut module_process(q, m, scale)?)?;
    tree_report(out, &format!("M{m}(F{q})"), &bm, terms, matrix, dot)
}

fn configs(out: &mut Out, kind: ConfigArg, m: usize, q: Option<u64>, terms: Option<usize>) -> CliResult {
    let (mut p, name): (ConfigProcess, String) = match (kind, q) {
        (ConfigArg::Point, _) => (point_config_process(m), format!("points m={m}")),
        (ConfigArg::Vector, Some(q)) => (vector_config_process(q, m)?, format!("vectors q={q} m={m}")),
        (ConfigArg::Vector, None) => return Err(Failure::Usage("--kind vector needs --q".into())),
    };
    let bm = build_branching(&mut p)?;
    let gf = gf_total(&bm)?;
    out.gf(&name, &gf);
    if let Some(n) = terms {
        out.series(&name, &series_strings(&gf, n.saturating_sub(1)));
    }
    let mut types: Vec<(usize, usize)> =
        bm.keys().iter().enumerate().filter_map(|(j, k)| TypeIndex::from_key(k).map(|TypeIndex(i)| (i, j))).collect();
    types.sort();
    for (i, j) in types {
        let f = gf_class(&bm, j)?;
        let s = terms.map(|n| series_strings(&f, n.saturating_sub(1)));
        out.class_gf(&name, &format!("type {i}"), &f, s.as_deref());
    }
    Ok(())
}

fn parse_poly(s: &str, what: &str) -> Result<Poly, Failure> {
    s.parse::<Poly>().map_err(|e| Failure::Usage(format!("--{what}: {e}")))
}

fn expand(out: &mut Out, num: &str, den: &str, terms: usize) -> CliResult {
    let f = RatFun::new(parse_poly(num, "num")?, parse_poly(den, "den")?)?;
    out.gf("expand", &f);
    out.series("expand", &series_strings(&f, terms.saturating_sub(1)));
    Ok(())
}
