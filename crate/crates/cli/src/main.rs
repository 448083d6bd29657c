//! `stci`: runs the verification suites from the command line.
//!
//! Exit status: 0 all checks true, 1 some check false, 2 some check
//! inconclusive (a cap was hit), 3 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stci::exec::Execution;
use stci::field::{FieldSpec, Rationals};
use stci::groebner::IdealGens;
use stci::polyring::{parse, MonomialOrder, Ring, VariableSet};
use stci::report::{VerificationReport, Verdict};
use stci::run::{self, Bundle, Caps, CheckId, ExampleName, RunConfig};
use stci::schmitt_vogel::SvFile;
use stci::scroll::BarredMatrix;
use stci::monomial_curve::ToricFixture;
use stci::varieties;
use stci::Error;

const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "stci", version, about = "Certify radical equalities for barred-matrix ideals")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Options {
    /// Coefficient field: `q` (modular pre-check, then exact rationals) or `gf:<p>`.
    #[arg(long, global = true, default_value = "q")]
    field: FieldSpec,
    /// Monomial order: `degrevlex` or `lex`.
    #[arg(long, global = true, default_value = "degrevlex")]
    order: MonomialOrder,
    /// S-pairs processed per Groebner basis [default: 100000]
    #[arg(long, global = true, value_name = "N")]
    cap_spairs: Option<u64>,
    /// Largest S-polynomial degree [default: 60]
    #[arg(long, global = true, value_name = "N")]
    cap_degree: Option<u32>,
    /// Largest exponent tried in radical power searches [default: 16]
    #[arg(long, global = true, value_name = "N")]
    cap_power: Option<u32>,
    /// Largest number of products tested for ideal powers [default: 10000]
    #[arg(long, global = true, value_name = "N")]
    cap_products: Option<u64>,
    /// Largest number of points enumerated per field.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,
    /// Emit the report bundle as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = stci::random::DEFAULT_SEED)]
    seed: u64,
    /// Run only this check; repeatable.
    #[arg(long = "check", global = true, value_name = "ID")]
    checks: Vec<CheckId>,
    /// Disable the worker pool.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in scenario: ex1, ex3, ex4, ex4prime, ex5, scroll-c.
    Example {
        name: String,
        /// Block width for scroll-c.
        #[arg(long, default_value_t = 3)]
        c: usize,
    },
    /// Check a barred matrix given as JSON.
    Verify { matrix: PathBuf },
    /// Check a layered system given as JSON.
    Sv { system: PathBuf },
    /// Enumerate the zero set of the polynomials in a text file.
    Points {
        ideal: PathBuf,
        #[arg(short, long)]
        p: u64,
        /// Compare with the zero set of a second file.
        #[arg(long)]
        against: Option<PathBuf>,
        /// Write the points, one per line, to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Check binomials against a monomial parametrization.
    Toric { fixture: PathBuf },
}

impl Options {
    fn config(&self) -> RunConfig {
        let d = Caps::default();
        RunConfig {
            field: self.field,
            order: self.order.clone(),
            caps: Caps {
                spairs: self.cap_spairs.unwrap_or(d.spairs),
                degree: self.cap_degree.unwrap_or(d.degree),
                power: self.cap_power.unwrap_or(d.power),
                products: self.cap_products.unwrap_or(d.products),
                points_budget: self.budget.unwrap_or(d.points_budget),
            },
            checks: self.checks.clone(),
            seed: self.seed,
            execution: if self.sequential {
                Execution::Sequential
            } else {
                Execution::default()
            },
        }
    }
}

fn read(path: &Path) -> stci::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// Polynomials one per line; `#` starts a comment. A `# vars: a, b, c`
/// line fixes the variables, otherwise they are collected in natural order.
fn read_ideal(path: &Path, label: &str, vars: Option<&VariableSet>) -> stci::Result<IdealGens<Rationals>> {
    let text = read(path)?;
    let mut declared = None;
    let mut polys = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(list) = comment.trim().strip_prefix("vars:") {
                let names: Vec<String> = list
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect();
                declared = Some(VariableSet::new(names)?);
            }
        } else if !line.is_empty() {
            polys.push(line);
        }
    }
    let vars = match (declared, vars) {
        (Some(v), _) => v,
        (None, Some(v)) => v.clone(),
        (None, None) => VariableSet::new(parse::infer_variables(&polys)?)?,
    };
    let ring = Ring::new(Rationals, vars, MonomialOrder::DegRevLex)?;
    IdealGens::parse(&ring, label, &polys)
}

fn points(cfg: &RunConfig, ideal: &Path, p: u64, against: Option<&Path>, dump: Option<&Path>) -> stci::Result<Bundle> {
    let a = read_ideal(ideal, "I", None)?;
    let set = varieties::enumerate_points(&a, p, cfg.caps.points_budget, cfg.execution)?;
    if let Some(path) = dump {
        fs::write(path, set.to_text()).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    let mut listing = VerificationReport::new(format!("zero set of I over GF({p})"), Verdict::True)
        .note(format!("{} of {}^{} points", set.len(), p, set.dim()));
    if dump.is_none() && set.len() <= 64 {
        listing.notes.extend(set.to_text().lines().map(String::from));
    }
    let mut reports = vec![(CheckId::Points, listing)];
    if let Some(b) = against {
        let b = read_ideal(b, "I'", Some(a.ring().vars()))?;
        let gens = b.gens().iter().map(|g| g.embed(a.ring())).collect::<stci::Result<_>>()?;
        let b = IdealGens::new(a.ring(), "I'", gens)?;
        let cmp = varieties::same_vanishing_set(&a, &b, p, cfg.caps.points_budget, cfg.execution)?;
        reports.push((CheckId::Points, cmp));
    }
    Ok(run::bundle(format!("points of {}", ideal.display()), reports))
}

fn execute(cli: &Cli) -> stci::Result<Bundle> {
    let cfg = cli.opts.config();
    match &cli.command {
        Command::Example { name, c } => run::run_example(ExampleName::parse(name, *c)?, &cfg),
        Command::Verify { matrix } => {
            let m = BarredMatrix::from_json(&read(matrix)?)?;
            run::run_matrix(&m, &matrix.display().to_string(), &cfg)
        }
        Command::Sv { system } => {
            let sys = SvFile::from_json(&read(system)?)?.load()?;
            run::run_sv(&sys, &system.display().to_string(), &cfg)
        }
        Command::Points { ideal, p, against, dump } => {
            cfg.validate()?;
            points(&cfg, ideal, *p, against.as_deref(), dump.as_deref())
        }
        Command::Toric { fixture } => {
            let report = ToricFixture::from_json(&read(fixture)?)?.check()?;
            Ok(run::bundle(
                format!("toric fixture {}", fixture.display()),
                vec![(CheckId::Toric, report)],
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(bundle) => {
            if cli.opts.json {
                println!("{}", bundle.to_json());
            } else {
                println!("{bundle}");
            }
            ExitCode::from(bundle.exit_code() as u8)
        }
        Err(e) if e.is_cap() => {
            eprintln!("stci: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("stci: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
