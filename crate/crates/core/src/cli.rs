//! Command-line surface.
//!
//! Exit codes: 0 success, 1 numerical or I/O failure, 2 invalid input,
//! 3 an axiom check failed, 4 no non-uniqueness witness found.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::axioms::{
    run_suite, search_nonuniqueness, NonuniquenessSearch, NonuniquenessWitness, ProductUnderTest, SuiteReport, Thresholds,
    TrialPlan, WITNESS_GAP,
};
use crate::channels::{choi_certificate, phased_channel, EffectDecomposition};
use crate::document::{to_json_string, DocumentError, MatrixDocument, HERMITIAN_INPUT_TOL};
use crate::effects::{luders_product, phased_product, DensityOperator, Effect, EffectError, PhaseParameter};
use crate::linalg::LinalgError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NUMERICAL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_AXIOM_FAILURE: u8 = 3;
pub const EXIT_NO_WITNESS: u8 = 4;

/// Environment variable that takes precedence over `--seed`.
pub const SEED_ENV: &str = "SEQPROD_SEED";
pub const DEFAULT_SEED: u64 = 20_240_601;

const TOLERANCE_NAMES: [&str; 6] = [
    "defect_ceiling",
    "zero_product",
    "converse_gap",
    "comm_floor",
    "witness_gap",
    "hermitian_input",
];

#[derive(Parser, Debug, Clone)]
#[command(name = "seqprod", version, about = "Lüders and phased sequential products on quantum effects")]
pub struct Cli {
    /// Base seed for all random trials.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Trials per dimension (and per t value).
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Comma-separated dimensions.
    #[arg(long, global = true, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    /// Comma-separated phase parameters.
    #[arg(long = "t", global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Option<Vec<f64>>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol", global = true, value_parser = parse_tolerance)]
    pub tol: Vec<(String, f64)>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Sequential product of two effects read from JSON documents.
    Product {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Form::Phased)]
        form: Form,
    },
    /// Run the axiom suite against a product.
    Axioms {
        #[arg(long, value_enum, default_value_t = ProductKind::Phased)]
        product: ProductKind,
    },
    /// Search for effects where the phased and Lüders products differ.
    Nonuniqueness {
        /// Restrict the search to commuting pairs.
        #[arg(long)]
        commuting: bool,
    },
    /// Apply the phased channel of an effect decomposition to a state.
    Channel {
        #[arg(long)]
        decomposition: PathBuf,
        #[arg(long)]
        rho: PathBuf,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Luders,
    Phased,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    Luders,
    Phased,
    /// Plain matrix product `AB`; a deliberately broken product.
    MatrixProduct,
}

fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let value: f64 = value.trim().parse().map_err(|e| format!("bad tolerance value {value:?}: {e}"))?;
    if !value.is_finite() || value < 0.0 {
        return Err(format!("tolerance {name} must be finite and non-negative"));
    }
    Ok((name.trim().to_owned(), value))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub t_values: Vec<f64>,
    pub tolerance_overrides: BTreeMap<String, f64>,
}

impl RunConfig {
    fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerance_overrides.get(name).copied().unwrap_or(default)
    }

    fn thresholds(&self) -> Thresholds {
        let d = Thresholds::default();
        Thresholds {
            defect_ceiling: self.tolerance("defect_ceiling", d.defect_ceiling),
            zero_product: self.tolerance("zero_product", d.zero_product),
            converse_gap: self.tolerance("converse_gap", d.converse_gap),
            comm_floor: self.tolerance("comm_floor", d.comm_floor),
        }
    }
}

/// Result of one command: exit code, JSON for stdout, diagnostics for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub json: Option<String>,
    pub message: Option<String>,
}

impl Outcome {
    fn report(code: u8, value: &impl Serialize) -> Self {
        Self {
            code,
            json: Some(to_json_string(value)),
            message: None,
        }
    }

    fn error(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            json: None,
            message: Some(message.into()),
        }
    }
}

struct Defaults {
    dims: &'static [usize],
    trials: usize,
    t_values: &'static [f64],
}

fn resolve_config(cli: &Cli, defaults: Defaults, env_seed: Option<&str>) -> Result<RunConfig, Outcome> {
    let seed = match env_seed {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Outcome::error(EXIT_INPUT, format!("{SEED_ENV}={s:?} is not a u64")))?,
        None => cli.seed.unwrap_or(DEFAULT_SEED),
    };
    let trials = cli.trials.unwrap_or(defaults.trials);
    if trials < 1 {
        return Err(Outcome::error(EXIT_INPUT, "trials must be at least 1"));
    }
    let dims = cli.dims.clone().unwrap_or_else(|| defaults.dims.to_vec());
    if dims.is_empty() || dims.contains(&0) {
        return Err(Outcome::error(EXIT_INPUT, "dims must be a non-empty list of positive integers"));
    }
    let t_values = cli.t.clone().unwrap_or_else(|| defaults.t_values.to_vec());
    if t_values.is_empty() || t_values.iter().any(|t| !t.is_finite()) {
        return Err(Outcome::error(EXIT_INPUT, "t values must be finite"));
    }
    let mut tolerance_overrides = BTreeMap::new();
    for (name, value) in &cli.tol {
        if !TOLERANCE_NAMES.contains(&name.as_str()) {
            return Err(Outcome::error(
                EXIT_INPUT,
                format!("unknown tolerance {name:?}; known: {}", TOLERANCE_NAMES.join(", ")),
            ));
        }
        tolerance_overrides.insert(name.clone(), *value);
    }
    Ok(RunConfig {
        dims,
        trials,
        seed,
        t_values,
        tolerance_overrides,
    })
}

fn read_document(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| Outcome::error(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))
}

fn input_error(what: &str, err: impl std::fmt::Display) -> Outcome {
    Outcome::error(EXIT_INPUT, format!("invalid {what}: {err}"))
}

fn is_numerical(err: &DocumentError) -> bool {
    matches!(
        err,
        DocumentError::Linalg(LinalgError::NonConvergence { .. })
            | DocumentError::Effect(EffectError::Linalg(LinalgError::NonConvergence { .. }))
    )
}

fn load_effect(path: &Path, what: &str, tol: f64) -> Result<Effect, Outcome> {
    let text = read_document(path)?;
    let doc = MatrixDocument::parse(&text).map_err(|e| input_error(what, e))?;
    doc.to_hermitian(tol)
        .and_then(|h| Effect::new(h).map_err(DocumentError::from))
        .map_err(|e| {
            if is_numerical(&e) {
                Outcome::error(EXIT_NUMERICAL, format!("{what}: {e}"))
            } else {
                input_error(what, e)
            }
        })
}

pub fn cmd_product(cli: &Cli, a: &Path, b: &Path, form: Form, env_seed: Option<&str>) -> Outcome {
    let config = match resolve_config(cli, Defaults { dims: &[2], trials: 1, t_values: &[1.0] }, env_seed) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let tol = config.tolerance("hermitian_input", HERMITIAN_INPUT_TOL);
    let (a, b) = match (load_effect(a, "effect A", tol), load_effect(b, "effect B", tol)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    if a.dim() != b.dim() {
        return Outcome::error(EXIT_INPUT, format!("dimension mismatch: A is {}, B is {}", a.dim(), b.dim()));
    }
    let result = match form {
        Form::Luders => luders_product(&a, &b),
        Form::Phased => PhaseParameter::new(config.t_values[0]).and_then(|t| phased_product(&a, &b, t)),
    };
    match result {
        Ok(e) => Outcome::report(EXIT_OK, &MatrixDocument::from_matrix(e.matrix())),
        Err(e) => Outcome::error(EXIT_NUMERICAL, e.to_string()),
    }
}

#[derive(Serialize)]
struct AxiomsOutput<'a> {
    config: &'a RunConfig,
    product: &'static str,
    thresholds: Thresholds,
    suites: Vec<SuiteReport>,
    passed: bool,
}

pub fn cmd_axioms(cli: &Cli, kind: ProductKind, env_seed: Option<&str>) -> Outcome {
    let config = match resolve_config(
        cli,
        Defaults {
            dims: &[2, 3, 4, 6],
            trials: 1000,
            t_values: &[1.0],
        },
        env_seed,
    ) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let thresholds = config.thresholds();
    let plan = TrialPlan::new(config.trials, &config.dims, config.seed).with_thresholds(thresholds);
    let (name, products): (&'static str, Vec<ProductUnderTest>) = match kind {
        ProductKind::Luders => ("luders", vec![ProductUnderTest::luders()]),
        ProductKind::MatrixProduct => ("matrix-product", vec![ProductUnderTest::matrix_product()]),
        ProductKind::Phased => (
            "phased",
            config
                .t_values
                .iter()
                .map(|&t| ProductUnderTest::phased(PhaseParameter::new(t).expect("validated t")))
                .collect(),
        ),
    };
    let mut suites = Vec::with_capacity(products.len());
    for p in &products {
        match run_suite(p, &plan) {
            Ok(s) => suites.push(s),
            Err(e) => return Outcome::error(EXIT_NUMERICAL, format!("{}: {e}", p.label())),
        }
    }
    let passed = suites.iter().all(|s| s.passed);
    let out = AxiomsOutput {
        config: &config,
        product: name,
        thresholds,
        suites,
        passed,
    };
    Outcome::report(if passed { EXIT_OK } else { EXIT_AXIOM_FAILURE }, &out)
}

#[derive(Serialize)]
struct NonuniquenessOutput<'a> {
    config: &'a RunConfig,
    commuting_only: bool,
    threshold: f64,
    found: bool,
    witness: Option<NonuniquenessWitness>,
}

pub fn cmd_nonuniqueness(cli: &Cli, commuting: bool, env_seed: Option<&str>) -> Outcome {
    let config = match resolve_config(
        cli,
        Defaults {
            dims: &[2],
            trials: 100,
            t_values: &[1.0],
        },
        env_seed,
    ) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let threshold = config.tolerance("witness_gap", WITNESS_GAP);
    let mut search = NonuniquenessSearch::new(config.trials, &config.dims, &config.t_values, config.seed);
    search.commuting_only = commuting;
    let witness = search_nonuniqueness(&search);
    let found = witness.as_ref().is_some_and(|w| w.gap > threshold);
    let out = NonuniquenessOutput {
        config: &config,
        commuting_only: commuting,
        threshold,
        found,
        witness,
    };
    Outcome::report(if found { EXIT_OK } else { EXIT_NO_WITNESS }, &out)
}

#[derive(Serialize)]
struct ChannelOutput {
    t: f64,
    kraus_count: usize,
    output: MatrixDocument,
    trace: f64,
    min_choi_eigenvalue: f64,
    choi_trace_defect: f64,
}

pub fn cmd_channel(cli: &Cli, decomposition: &Path, rho: &Path, env_seed: Option<&str>) -> Outcome {
    let config = match resolve_config(cli, Defaults { dims: &[2], trials: 1, t_values: &[1.0] }, env_seed) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let tol = config.tolerance("hermitian_input", HERMITIAN_INPUT_TOL);
    let text = match read_document(decomposition) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let docs = match MatrixDocument::parse_list(&text) {
        Ok(d) => d,
        Err(e) => return input_error("decomposition", e),
    };
    let mut effects = Vec::with_capacity(docs.len());
    for (i, doc) in docs.iter().enumerate() {
        match doc.to_hermitian(tol).and_then(|h| Effect::new(h).map_err(DocumentError::from)) {
            Ok(e) => effects.push(e),
            Err(e) => return input_error(&format!("decomposition element {i}"), e),
        }
    }
    let decomposition = match EffectDecomposition::new(effects) {
        Ok(d) => d,
        Err(e) => return input_error("decomposition", e),
    };
    let rho_text = match read_document(rho) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let rho = match MatrixDocument::parse(&rho_text)
        .and_then(|d| d.to_hermitian(tol))
        .and_then(|h| DensityOperator::new(h).map_err(DocumentError::from))
    {
        Ok(r) => r,
        Err(e) => return input_error("density operator", e),
    };
    if rho.dim() != decomposition.dim() {
        return Outcome::error(
            EXIT_INPUT,
            format!("dimension mismatch: decomposition is {}, rho is {}", decomposition.dim(), rho.dim()),
        );
    }

    let t = config.t_values[0];
    let run = || -> Result<ChannelOutput, crate::channels::ChannelError> {
        let channel = phased_channel(&decomposition, t)?;
        let output = channel.apply(rho.matrix())?;
        let cert = choi_certificate(&channel)?;
        Ok(ChannelOutput {
            t,
            kraus_count: channel.kraus().len(),
            trace: output.real_trace(),
            output: MatrixDocument::from_matrix(&output),
            min_choi_eigenvalue: cert.min_eigenvalue,
            choi_trace_defect: cert.trace_defect,
        })
    };
    match run() {
        Ok(out) => Outcome::report(EXIT_OK, &out),
        Err(e) => Outcome::error(EXIT_NUMERICAL, e.to_string()),
    }
}

/// Dispatches a parsed command line without touching stdout.
pub fn execute(cli: &Cli, env_seed: Option<&str>) -> Outcome {
    match &cli.command {
        Command::Product { a, b, form } => cmd_product(cli, a, b, *form, env_seed),
        Command::Axioms { product } => cmd_axioms(cli, *product, env_seed),
        Command::Nonuniqueness { commuting } => cmd_nonuniqueness(cli, *commuting, env_seed),
        Command::Channel { decomposition, rho } => cmd_channel(cli, decomposition, rho, env_seed),
    }
}

/// Runs a command, prints its JSON to stdout and returns the exit code.
pub fn run(cli: Cli) -> u8 {
    let env_seed = std::env::var(SEED_ENV).ok();
    let outcome = execute(&cli, env_seed.as_deref());
    if let Some(msg) = &outcome.message {
        eprintln!("seqprod: {msg}");
    }
    if let Some(json) = &outcome.json {
        println!("{json}");
        if let Some(path) = &cli.json_out {
            if let Err(e) = fs::write(path, format!("{json}\n")) {
                eprintln!("seqprod: cannot write {}: {e}", path.display());
                return EXIT_NUMERICAL;
            }
        }
    }
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("seqprod").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn global_flags_parse_after_subcommand() {
        let cli = parse(&["axioms", "--product", "luders", "--dims", "2,3", "--t=-1,0.5", "--tol", "comm_floor=0.05"]);
        assert_eq!(cli.dims, Some(vec![2, 3]));
        assert_eq!(cli.t, Some(vec![-1.0, 0.5]));
        assert_eq!(cli.tol, vec![("comm_floor".to_owned(), 0.05)]);
    }

    #[test]
    fn env_seed_overrides_flag() {
        let cli = parse(&["nonuniqueness", "--seed", "5"]);
        let d = || Defaults { dims: &[2], trials: 1, t_values: &[1.0] };
        assert_eq!(resolve_config(&cli, d(), None).unwrap().seed, 5);
        assert_eq!(resolve_config(&cli, d(), Some("77")).unwrap().seed, 77);
        assert_eq!(resolve_config(&cli, d(), Some("x")).unwrap_err().code, EXIT_INPUT);
    }

    #[test]
    fn rejects_bad_config() {
        let d = || Defaults { dims: &[2], trials: 1, t_values: &[1.0] };
        assert_eq!(resolve_config(&parse(&["axioms", "--trials", "0"]), d(), None).unwrap_err().code, EXIT_INPUT);
        assert_eq!(resolve_config(&parse(&["axioms", "--dims", "0"]), d(), None).unwrap_err().code, EXIT_INPUT);
        assert_eq!(resolve_config(&parse(&["axioms", "--tol", "bogus=1"]), d(), None).unwrap_err().code, EXIT_INPUT);
        assert!(Cli::try_parse_from(["seqprod", "axioms", "--tol", "nonsense"]).is_err());
    }

    #[test]
    fn tiny_axiom_run_passes() {
        let out = execute(&parse(&["axioms", "--trials", "1", "--dims", "1"]), None);
        assert_eq!(out.code, EXIT_OK, "{:?}", out.message);
    }
}
