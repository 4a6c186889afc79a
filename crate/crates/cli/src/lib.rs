//! Command-line front end: reads lattices and quadratic functions as JSON files and prints one
//! compact JSON document per invocation.
//!
//! Exit codes: 0 on a completed computation (negative verdicts included), 1 on invalid input,
//! 2 when a size bound is exceeded.

pub mod format;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use torquad_core::classify::{
    decide_isomorphism, enumerate_refinements, gauss_sum_bounded, Bounds, InvariantBundle, IsoDecision,
};
use torquad_core::discriminant::discriminant_with_group;
use torquad_core::embedding::solve_char;
use torquad_core::stable::stably_equivalent_with;
use torquad_core::{CyclotomicNumber, Error};

use format::{ints, matrix_rows, rationals, read_lattice, read_quad, IntOut, QuadOut};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    SizeBound(String),
    Failure(String),
}

impl CliError {
    pub fn input(field: &str, msg: String) -> Self {
        CliError::Input(format!("{field}: {msg}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Failure(_) => 1,
            CliError::SizeBound(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::SizeBound(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_size_bound() {
            CliError::SizeBound(e.to_string())
        } else {
            match e {
                Error::PairingMismatch(_) => CliError::Input(e.to_string()),
                other => CliError::Failure(other.to_string()),
            }
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "torquad", version, about = "Quadratic functions on torsion groups")]
struct Cli {
    /// Largest group order for searches and element-by-element evaluation.
    #[arg(long, global = true, value_name = "N")]
    max_group_order: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Discriminant quadratic function of a lattice with a characteristic form.
    Discriminant { lattice: String },
    /// Gauss sum of the torsion part.
    Gauss { quad: String },
    /// Normalized group, pairing, defect, radical and Gauss sum.
    Invariants { quad: String },
    /// Decide whether two quadratic functions are isomorphic.
    Isomorphic {
        first: String,
        second: String,
        #[arg(long)]
        witness: bool,
    },
    /// Decide stable equivalence of two lattices with characteristic forms.
    StableEquivalent { first: String, second: String },
    /// Find a characteristic form presenting a quadratic function.
    SolveChar { lattice: String, quad: String },
    /// List every quadratic refinement of a pairing.
    Refinements { quad: String },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(doc) => Outcome { code: 0, stdout: doc + "\n", stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {}\n", e.message()) },
    }
}

fn emit<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string(value).map_err(|e| CliError::Failure(e.to_string()))
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let OutputFormat::Json = cli.format;
    let bounds = cli.max_group_order.map(Bounds::uniform).unwrap_or_default();
    match &cli.command {
        Command::Discriminant { lattice } => discriminant(lattice),
        Command::Gauss { quad } => {
            let q = read_quad(quad)?.to_quadratic()?;
            emit(&GaussOut::from(&gauss_sum_bounded(&q, bounds.max_eval_order)?))
        }
        Command::Invariants { quad } => invariants(quad, bounds),
        Command::Isomorphic { first, second, witness } => isomorphic(first, second, *witness, bounds),
        Command::StableEquivalent { first, second } => {
            let t = read_lattice(first)?;
            let t2 = read_lattice(second)?;
            let c = stably_equivalent_with(&t, &t2, bounds)?;
            emit(&StableOut {
                stably_equivalent: c.verdict,
                left_signs: c.left_signs,
                right_signs: c.right_signs,
                reason: c.reason.map(|r| r.as_str()),
            })
        }
        Command::SolveChar { lattice, quad } => {
            let t = read_lattice(lattice)?;
            let q = read_quad(quad)?.to_quadratic()?;
            let c = solve_char(&t.lattice, &q)?;
            emit(&SolveOut { solvable: c.is_some(), char: c.map(|c| ints(c.coeffs())) })
        }
        Command::Refinements { quad } => {
            let b = read_quad(quad)?.to_pairing()?;
            let all = enumerate_refinements(&b, bounds.max_eval_order)?;
            emit(&RefinementsOut { count: all.len(), q: all.iter().map(|q| rationals(q.gen_values())).collect() })
        }
    }
}

#[derive(Serialize)]
struct DiscriminantOut {
    #[serde(flatten)]
    quad: QuadOut,
    /// Generator representatives in the dual lattice.
    generators: Vec<Vec<String>>,
    kernel_basis: Vec<Vec<IntOut>>,
}

fn discriminant(path: &str) -> Result<String, CliError> {
    let t = read_lattice(path)?;
    let (q, g) = discriminant_with_group(&t)?;
    let generators = g.lifted_gen_reps().iter().map(|x| x.iter().map(ToString::to_string).collect()).collect();
    let kernel_basis = (0..g.divisible_rank()).map(|j| ints(&g.kernel_basis().column(j))).collect();
    emit(&DiscriminantOut { quad: QuadOut::from(&q), generators, kernel_basis })
}

#[derive(Serialize)]
struct GaussOut {
    level: u64,
    coeffs: Vec<IntOut>,
    norm_square: IntOut,
}

impl From<&CyclotomicNumber> for GaussOut {
    fn from(s: &CyclotomicNumber) -> Self {
        GaussOut { level: s.level(), coeffs: ints(s.coeffs()), norm_square: s.norm_square().into() }
    }
}

#[derive(Serialize)]
struct RadicalOut {
    orders: Vec<u64>,
    generators: Vec<Vec<u64>>,
    values: Vec<String>,
    divisible_rank: usize,
    kernel_hom: Vec<IntOut>,
}

#[derive(Serialize)]
struct InvariantsOut {
    orders: Vec<u64>,
    normalized: QuadOut,
    defect: Vec<String>,
    radical: RadicalOut,
    kernel_content: IntOut,
    nondegenerate: bool,
    homogeneous: bool,
    gauss: GaussOut,
}

fn invariants(path: &str, bounds: Bounds) -> Result<String, CliError> {
    let q = read_quad(path)?.to_quadratic()?;
    let bundle = InvariantBundle::new(&q, bounds)?;
    let r = bundle.radical();
    emit(&InvariantsOut {
        orders: bundle.orders().to_vec(),
        normalized: QuadOut::from(bundle.normalized()),
        defect: rationals(&bundle.defect()),
        radical: RadicalOut {
            orders: r.orders.clone(),
            generators: r.generators.clone(),
            values: rationals(&r.values),
            divisible_rank: r.divisible_rank,
            kernel_hom: ints(&r.kernel_hom),
        },
        kernel_content: bundle.kernel_content().into(),
        nondegenerate: q.is_nondegenerate(),
        homogeneous: q.is_homogeneous(),
        gauss: GaussOut::from(bundle.gauss()),
    })
}

#[derive(Serialize)]
struct WitnessOut {
    matrix: Vec<Vec<IntOut>>,
    kernel_matrix: Vec<Vec<IntOut>>,
    mixing: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct IsomorphicOut {
    isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessOut>,
}

fn isomorphic(first: &str, second: &str, witness: bool, bounds: Bounds) -> Result<String, CliError> {
    let q = read_quad(first)?.to_quadratic()?;
    let q2 = read_quad(second)?.to_quadratic()?;
    let out = match decide_isomorphism(&q, &q2, bounds)? {
        IsoDecision::NotIsomorphic(ob) => IsomorphicOut { isomorphic: false, reason: Some(ob.as_str()), witness: None },
        IsoDecision::Isomorphic(psi) => IsomorphicOut {
            isomorphic: true,
            reason: None,
            witness: witness.then(|| WitnessOut {
                matrix: matrix_rows(psi.matrix()),
                kernel_matrix: matrix_rows(psi.kernel_matrix()),
                mixing: psi.mixing().iter().map(|r| rationals(r)).collect(),
            }),
        },
    };
    emit(&out)
}

#[derive(Serialize)]
struct StableOut {
    stably_equivalent: bool,
    left_signs: Vec<i8>,
    right_signs: Vec<i8>,
    reason: Option<&'static str>,
}

#[derive(Serialize)]
struct SolveOut {
    solvable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    char: Option<Vec<IntOut>>,
}

#[derive(Serialize)]
struct RefinementsOut {
    count: usize,
    q: Vec<Vec<String>>,
}
