pub mod parse;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde_json::json;

use qspecies::oracle;
use qspecies::render::{self, Format};
use qspecies::species::{cycle_index, gen_series, type_series, weighted_gen_series};
use qspecies::verify::{self, any_failed, Check, Status};
use qspecies::{
    enumerate_classes, monic_irreducibles, Budget, ClassKind, FieldSpec, SpeciesExpr, TPoly,
};

pub use parse::{parse, ParseError};

#[derive(Parser, Debug)]
#[command(
    name = "qspecies",
    version,
    about = "Exact series for species over finite fields"
)]
pub struct Cli {
    /// Field order, or the characteristic when --ext-k exceeds 1.
    #[arg(long, default_value_t = 2, global = true)]
    pub q: u32,
    /// Extension degree over the prime field.
    #[arg(long = "ext-k", default_value_t = 1, global = true)]
    pub ext_k: u32,
    /// Truncation order of the series.
    #[arg(long, default_value_t = 8, global = true)]
    pub order: usize,
    #[arg(long, default_value = "text", global = true)]
    pub format: Format,
    /// Cap on the size of any exhaustive enumeration.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generating series sum f_n x^n / |GL_n|.
    Gen { expr: String },
    /// Type generating series (isomorphism classes).
    Type { expr: String },
    /// Cycle index series.
    Zindex { expr: String },
    /// Generating series weighted by the marks.
    Wgen { expr: String },
    /// Conjugacy classes of GL_n, or of all n x n matrices with --all.
    Classes {
        n: usize,
        #[arg(long)]
        all: bool,
    },
    /// Monic irreducible polynomials of degree D.
    Irreducibles { d: usize },
    /// Brute-force enumeration on F_q^n.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Check every closed form against enumeration.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Structure counts in dimensions 0..=N.
    Count { expr: String, n: usize },
    /// Fixed points of one automorphism per conjugacy class of GL_N.
    Fix { expr: String, n: usize },
    /// The orbits of GL_N on the structures.
    Orbits { expr: String, n: usize },
    /// Cycle index as a literal sum over GL_n, n <= N.
    Zindex { expr: String, n: usize },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<qspecies::Error> for Failure {
    fn from(e: qspecies::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub fn field(q: u32, ext_k: u32) -> qspecies::Result<FieldSpec> {
    if ext_k > 1 {
        FieldSpec::new(q, ext_k)
    } else if ext_k == 0 {
        Err(qspecies::Error::BadExtensionDegree)
    } else {
        FieldSpec::from_order(q)
    }
}

/// `parse` inverts rendering on the verification corpus.
pub fn parse_round_trip() -> Result<(), String> {
    for e in verify::corpus() {
        let text = e.to_string();
        match parse(&text) {
            Ok(back) if back == e => {}
            Ok(back) => return Err(format!("{text} reparsed as {back}")),
            Err(err) => return Err(format!("{text}: {err}")),
        }
    }
    Ok(())
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    stderr: text,
                    code: 2,
                    ..Output::default()
                }
            } else {
                Output {
                    stdout: text,
                    ..Output::default()
                }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Output {
            stdout,
            ..Output::default()
        },
        Err(Failure::Verification(stdout)) => Output {
            stdout,
            code: 1,
            ..Output::default()
        },
        Err(Failure::Usage(msg)) => Output {
            stderr: format!("error: {msg}\n"),
            code: 2,
            ..Output::default()
        },
    }
}

fn check_report(checks: &[Check], format: Format) -> Result<String, Failure> {
    let out = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&verify::report_json(checks)).unwrap()
        ),
        Format::Text => {
            let mut out = String::new();
            for c in checks {
                match c.status {
                    Status::Pass => writeln!(out, "PASS {}", c.identity),
                    Status::Fail => writeln!(out, "FAIL {}: {}", c.identity, c.detail),
                    Status::Skipped => writeln!(out, "SKIP {}: {}", c.identity, c.detail),
                }
                .unwrap();
            }
            let count = |s| checks.iter().filter(|c| c.status == s).count();
            writeln!(
                out,
                "{} passed, {} failed, {} skipped",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Skipped)
            )
            .unwrap();
            out
        }
        Format::Csv => {
            let rows: Vec<(String, String)> = checks
                .iter()
                .map(|c| (c.identity.clone(), c.status.to_string()))
                .collect();
            render::table(("identity", "status"), &rows, Format::Csv)
        }
    };
    if any_failed(checks) {
        Err(Failure::Verification(out))
    } else {
        Ok(out)
    }
}

fn parse_expr(src: &str) -> Result<SpeciesExpr, Failure> {
    Ok(parse(src)?)
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let field = field(cli.q, cli.ext_k)?;
    let q = field.q();
    let budget = match cli.budget {
        Some(b) => Budget {
            enumeration: b,
            structures: b,
        },
        None => Budget::default(),
    };
    let (order, format) = (cli.order, cli.format);
    Ok(match &cli.command {
        Command::Gen { expr } => {
            let e = parse_expr(expr)?;
            if e.has_mark() {
                return Err(Failure::Usage(
                    "expression carries weight marks; use `wgen`".into(),
                ));
            }
            let s: qspecies::series::RationalSeries = gen_series(&e, &field, order, &budget)?;
            render::series(&s, q, format)
        }
        Command::Wgen { expr } => {
            let e = parse_expr(expr)?;
            render::series(&weighted_gen_series(&e, &field, order, &budget)?, q, format)
        }
        Command::Type { expr } => {
            let e = parse_expr(expr)?;
            if e.has_mark() {
                let s: qspecies::PowerSeries<TPoly> = type_series(&e, &field, order, &budget)?;
                render::series(&s, q, format)
            } else {
                let s: qspecies::series::RationalSeries = type_series(&e, &field, order, &budget)?;
                render::series(&s, q, format)
            }
        }
        Command::Zindex { expr } => {
            let e = parse_expr(expr)?;
            render::cycle_index(&cycle_index(&e, &field, order, &budget)?, format)
        }
        Command::Classes { n, all } => {
            let kind = if *all { ClassKind::End } else { ClassKind::Aut };
            render::classes(&enumerate_classes(&field, *n, kind), q, format)
        }
        Command::Irreducibles { d } => {
            render::polys(&monic_irreducibles(&field, *d, false), q, format)
        }
        Command::Oracle(cmd) => oracle_command(cmd, &field, &budget, format)?,
        Command::Verify { max_dim } => {
            check_report(&verify::verify(&field, *max_dim, &budget), format)?
        }
        Command::Selftest => check_report(&verify::selftest(&budget, &parse_round_trip), format)?,
    })
}

fn oracle_command(
    cmd: &OracleCommand,
    field: &FieldSpec,
    budget: &Budget,
    format: Format,
) -> Result<String, Failure> {
    let q = field.q();
    Ok(match cmd {
        OracleCommand::Count { expr, n } => {
            let e = parse_expr(expr)?;
            let mut rows = Vec::new();
            for d in 0..=*n {
                let value = if e.has_mark() {
                    oracle::inventory(&e, field, d, budget)?.to_string()
                } else {
                    oracle::count_bf(&e, field, d, budget)?.to_string()
                };
                rows.push((d.to_string(), value));
            }
            render::table(("n", "count"), &rows, format)
        }
        OracleCommand::Fix { expr, n } => {
            let e = parse_expr(expr)?;
            let structures = oracle::enumerate_structures(&e, field, *n, budget)?;
            let mut rows = Vec::new();
            for c in enumerate_classes(field, *n, ClassKind::Aut) {
                let fixed = oracle::fixed_count(&e, &structures, &c.representative, field)?;
                rows.push((c.invariant.to_string(), fixed.to_string()));
            }
            render::table(("class", "fixed"), &rows, format)
        }
        OracleCommand::Orbits { expr, n } => {
            let e = parse_expr(expr)?;
            let orbits = oracle::orbit_classes_bf(&e, field, *n, budget)?;
            let burnside = oracle::burnside_count_bf(&e, field, *n, budget)?;
            if burnside != orbits.len() as u64 {
                return Err(Failure::Verification(format!(
                    "{} orbits found but Burnside gives {burnside}\n",
                    orbits.len()
                )));
            }
            match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&json!({
                        "q": q,
                        "n": n,
                        "orbits": orbits.iter().map(|o| json!({
                            "representative": o.representative.to_string(),
                            "size": o.size,
                            "weight": o.weight.to_string(),
                        })).collect::<Vec<_>>(),
                    }))
                    .unwrap()
                ),
                _ => {
                    let rows: Vec<(String, String)> = orbits
                        .iter()
                        .map(|o| (o.representative.to_string(), o.size.to_string()))
                        .collect();
                    let mut out = render::table(("representative", "size"), &rows, format);
                    if format == Format::Text {
                        writeln!(out, "{} orbits", orbits.len()).unwrap();
                    }
                    out
                }
            }
        }
        OracleCommand::Zindex { expr, n } => {
            let e = parse_expr(expr)?;
            render::cycle_index(&oracle::zindex_bf(&e, field, *n, budget)?, format)
        }
    })
}
