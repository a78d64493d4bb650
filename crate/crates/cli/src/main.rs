//! `lindstrom`: valuated matroids of prime ideals and integer matrices in
//! characteristic p.

mod cache;
mod document;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lindstrom::flock::{self, box_points, default_box_radius};
use lindstrom::pipeline::{self, Options, Problem, ProblemInput, Solution};
use lindstrom::report::Report;
use lindstrom::set::ElementSet;
use lindstrom::valmat::{self, SeedBasis};
use sha2::{Digest, Sha256};
use thiserror::Error;

use cache::DiskStore;
use document::{labels, plain_circuits, valued_bases, BasisEntry, CircuitEntry, Document, SliceEntry};

#[derive(Parser)]
#[command(name = "lindstrom", version, about = "Lindström valuated matroids in characteristic p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for persisted elimination results.
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Basis at which exchange propagation starts.
    #[arg(long, global = true, value_enum, default_value_t = SeedMode::Lex)]
    seed_basis: SeedMode,
    /// Seed basis for `--seed-basis given`, e.g. `1,2,3`.
    #[arg(long, global = true, value_name = "LIST")]
    seed: Option<String>,
    /// Print `inf` instead of `∞` in text output.
    #[arg(long, global = true)]
    ascii: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeedMode {
    Lex,
    Given,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical valuated circuits with their circuit polynomials.
    Circuits { input: PathBuf },
    /// Bases of the underlying matroid.
    Bases { input: PathBuf },
    /// Basis valuation, circuits and cocircuits.
    Valuation { input: PathBuf },
    /// Canonical valuated cocircuits.
    Cocircuits { input: PathBuf },
    /// Valuation of the minor obtained by deleting and contracting elements.
    Minor {
        input: PathBuf,
        #[arg(long, value_name = "LIST", default_value = "")]
        delete: String,
        #[arg(long, value_name = "LIST", default_value = "")]
        contract: String,
    },
    /// Flock slice and g at one weight vector.
    Flock {
        input: PathBuf,
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        alpha: String,
    },
    /// Run every axiom check; exits 2 if any fails.
    Verify {
        input: PathBuf,
        /// Flock axioms are checked on [-R, R]^n.
        #[arg(long = "box", value_name = "R")]
        radius: Option<i64>,
    },
    /// Compare the determinant path with the Gröbner path (matrix input).
    CrossCheck { input: PathBuf },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Inconsistent(String),
}

impl From<pipeline::PipelineError> for CliError {
    fn from(e: pipeline::PipelineError) -> Self {
        if e.is_inconsistency() {
            CliError::Inconsistent(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

/// Output plus whether every verification passed.
struct Outcome {
    document: Document,
    verified: bool,
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Input(format!("bad {what} entry {s:?}"))))
        .collect()
}

fn parse_set(text: &str, n: usize, what: &str) -> Result<ElementSet, CliError> {
    let labels: Vec<usize> = parse_list(text, what)?;
    ElementSet::from_labels(&labels)
        .filter(|s| s.is_subset(ElementSet::full(n)))
        .ok_or_else(|| CliError::Input(format!("{what} must list elements between 1 and {n}")))
}

struct Session {
    input_hash: String,
    problem: Problem,
    cache: Option<PathBuf>,
    seed: SeedBasis,
}

impl Session {
    fn open(path: &Path, cli: &Cli) -> Result<Self, CliError> {
        let raw = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let input: ProblemInput =
            serde_json::from_slice(&raw).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        // hash the normalized input so formatting differences share a cache
        let canonical = serde_json::to_vec(&input).expect("inputs serialize");
        let input_hash = hex::encode(Sha256::digest(&canonical));
        let problem = input.prepare()?;
        let seed = match (cli.seed_basis, &cli.seed) {
            (SeedMode::Lex, None) => SeedBasis::Lex,
            (SeedMode::Lex, Some(_)) => return Err(CliError::Input("--seed needs --seed-basis given".into())),
            (SeedMode::Given, None) => return Err(CliError::Input("--seed-basis given needs --seed".into())),
            (SeedMode::Given, Some(list)) => SeedBasis::Given(parse_set(list, problem.n(), "--seed")?),
        };
        Ok(Session {
            input_hash,
            problem,
            cache: cli.cache.clone(),
            seed,
        })
    }

    fn solve(&self) -> Result<Solution, CliError> {
        let store = match &self.cache {
            Some(root) => Some(Box::new(
                DiskStore::open(root.clone(), &self.input_hash)
                    .map_err(|e| CliError::Input(format!("cache {}: {e}", root.display())))?,
            ) as Box<dyn lindstrom::algmat::EliminationStore>),
            None => None,
        };
        let solution = self.problem.solve(Options { seed: self.seed, store })?;
        if let SeedBasis::Given(b) = self.seed {
            if !solution.valuation.matroid().is_basis(b) {
                return Err(CliError::Input(format!("seed {b} is not a basis")));
            }
        }
        Ok(solution)
    }

    fn header(&self, solution: &Solution) -> Document {
        Document {
            input_hash: self.input_hash.clone(),
            n: solution.valuation.n(),
            rank: solution.valuation.rank(),
            p: solution.p,
            ..Document::default()
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let done = |document: Document| Ok(Outcome { document, verified: true });
    match &cli.command {
        Command::Circuits { input } => {
            let s = Session::open(input, cli)?;
            let sol = s.solve()?;
            let circuits = sol
                .circuits
                .iter()
                .zip(&sol.polynomials)
                .map(|(c, f)| CircuitEntry {
                    vector: c.clone(),
                    polynomial: Some(f.to_string()),
                })
                .collect();
            done(Document {
                circuits: Some(circuits),
                ..s.header(&sol)
            })
        }
        Command::Bases { input } => {
            let s = Session::open(input, cli)?;
            let sol = s.solve()?;
            let bases = sol
                .valuation
                .matroid()
                .bases()
                .iter()
                .map(|&b| BasisEntry {
                    set: labels(b),
                    value: None,
                })
                .collect();
            done(Document {
                bases: Some(bases),
                ..s.header(&sol)
            })
        }
        Command::Valuation { input } => {
            let s = Session::open(input, cli)?;
            let sol = s.solve()?;
            done(Document {
                bases: Some(valued_bases(&sol.valuation)),
                circuits: Some(plain_circuits(&sol.circuits)),
                cocircuits: Some(plain_circuits(&valmat::cocircuits(&sol.valuation))),
                ..s.header(&sol)
            })
        }
        Command::Cocircuits { input } => {
            let s = Session::open(input, cli)?;
            let sol = s.solve()?;
            done(Document {
                cocircuits: Some(plain_circuits(&valmat::cocircuits(&sol.valuation))),
                ..s.header(&sol)
            })
        }
        Command::Minor {
            input,
            delete,
            contract,
        } => {
            let s = Session::open(input, cli)?;
            let n = s.problem.n();
            let g = parse_set(delete, n, "--delete")?;
            let f = parse_set(contract, n, "--contract")?;
            if !g.is_disjoint(f) {
                return Err(CliError::Input("--delete and --contract overlap".into()));
            }
            let sol = s.solve()?;
            let minor = valmat::minor(&sol.valuation, g, f).map_err(|e| CliError::Input(e.to_string()))?;
            let ground = valmat::minor_ground(n, g, f);
            let circuits = valmat::circuits_of_valuation(&minor);
            done(Document {
                n: minor.n(),
                rank: minor.rank(),
                ground: Some(labels(ground)),
                bases: Some(valued_bases(&minor)),
                circuits: Some(plain_circuits(&circuits)),
                cocircuits: Some(plain_circuits(&valmat::cocircuits(&minor))),
                ..s.header(&sol)
            })
        }
        Command::Flock { input, alpha } => {
            let s = Session::open(input, cli)?;
            let alpha: Vec<i64> = parse_list(alpha, "--alpha")?;
            if alpha.len() != s.problem.n() {
                return Err(CliError::Input(format!(
                    "--alpha has {} entries, expected {}",
                    alpha.len(),
                    s.problem.n()
                )));
            }
            let sol = s.solve()?;
            let slice =
                flock::flock_slice(&sol.valuation, &alpha).map_err(|e| CliError::Inconsistent(e.to_string()))?;
            done(Document {
                slice: Some(SliceEntry {
                    alpha,
                    g: slice.g_value,
                    bases: slice.matroid.bases().iter().map(|&b| labels(b)).collect(),
                }),
                ..s.header(&sol)
            })
        }
        Command::Verify { input, radius } => {
            let s = Session::open(input, cli)?;
            let sol = s.solve()?;
            let reports = verify(&sol, *radius);
            let verified = reports.iter().all(Report::passed);
            Ok(Outcome {
                document: Document {
                    reports: Some(reports),
                    ..s.header(&sol)
                },
                verified,
            })
        }
        Command::CrossCheck { input } => {
            let s = Session::open(input, cli)?;
            let Problem::Matrix { p, matrix } = &s.problem else {
                return Err(CliError::Input("cross-check needs a matrix input".into()));
            };
            let linear = pipeline::matrix_path(matrix, *p)?;
            let ideal = lindstrom::toric::toric_ideal(matrix, *p).map_err(pipeline::PipelineError::from)?;
            let algebraic = pipeline::groebner_path(&ideal, *p, Options { seed: s.seed, store: None })?;
            let report = pipeline::compare(&linear, &algebraic);
            let verified = report.agrees();
            Ok(Outcome {
                document: Document {
                    bases: Some(valued_bases(&linear.valuation)),
                    cross_check: Some(report),
                    ..s.header(&linear)
                },
                verified,
            })
        }
    }
}

fn verify(sol: &Solution, radius: Option<i64>) -> Vec<Report> {
    let nu = &sol.valuation;
    let cocircuits = valmat::cocircuits(nu);
    let mut duality = Report::new("dual is an involution");
    duality.checked = 1;
    if valmat::dual(&valmat::dual(nu)) != *nu {
        duality.violations.push("dual(dual(nu)) != nu".into());
    }
    let r = radius.unwrap_or_else(|| default_box_radius(nu));
    vec![
        valmat::check_circuit_axioms(&sol.circuits, nu.matroid()),
        valmat::check_exchange_relation(nu, &sol.circuits),
        duality,
        valmat::check_orthogonality(&sol.circuits, &cocircuits),
        valmat::check_cocircuit_supports(nu, &cocircuits),
        flock::check_flock_axioms(nu, box_points(nu.n(), -r, r)),
    ]
}

/// 0 success, 1 input error, 2 failed verification, 3 inconsistent mathematics.
fn exit_status(result: &Result<Outcome, CliError>) -> u8 {
    match result {
        Ok(outcome) if outcome.verified => 0,
        Ok(_) => 2,
        Err(CliError::Input(_)) => 1,
        Err(CliError::Inconsistent(_)) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    match &result {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => outcome.document.to_json(),
                Format::Text => outcome.document.to_text(cli.ascii),
            };
            print!("{text}");
            if !outcome.verified {
                eprintln!("verification failed");
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_status(&result))
}
