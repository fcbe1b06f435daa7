//! Command-line runner: one subcommand per experiment family, each producing
//! a [`Report`] of named checks.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on a
//! usage or input error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::f64::consts::SQRT_2;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::chsh::{self, AliceSetting, BobSetting, PhaseDomain};
use crate::ghz::{self, GhzCondition};
use crate::oracle;
use crate::quaternion::{Q8Element, Sign};
use crate::qubit::{self, Axis, BlochVector, EvolutionMode, Lambda, Permutation, SignFunction};
use crate::report::{Check, Report};

const TSIRELSON: f64 = 2.0 * SQRT_2;

/// Largest Bloch-vector norm accepted on the command line.
pub const BLOCH_PARSE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(name = "fieldlhv", version, about = "Field-extended hidden-variable model checks")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the command's data (model, intersection or distribution) as JSON.
    #[arg(long, global = true)]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Randomized bound checks for complex- and real-valued CHSH models.
    ChshVerify(ChshVerifyArgs),
    /// Bell expression of the single-point model at (7π/4, 0, π/4, π/2).
    ChshAchieve,
    /// Grid search plus coordinate descent over the Bob phases.
    ChshOptimize(ChshOptimizeArgs),
    /// Enumerate quaternionic GHZ assignments and condition sets.
    GhzEnumerate,
    /// Check the intersection of the GHZ condition sets and its x-product.
    GhzVerify,
    /// Signed hidden-variable distribution of a Bloch vector.
    QubitDist(BlochArgs),
    /// Axis (and optional direction) expectations against the quantum oracle.
    QubitExpect(QubitExpectArgs),
    /// Exhaustive search for a sign function reproducing n·r.
    QubitSearchSign(DirArgs),
    /// Permutation evolution of a state distribution.
    QubitEvolve(QubitEvolveArgs),
    /// Quantum-mechanics cross-checks: GHZ eigenrelations and Tsirelson.
    OracleCheck(OracleCheckArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ChshVerify(_) => "chsh-verify",
            Command::ChshAchieve => "chsh-achieve",
            Command::ChshOptimize(_) => "chsh-optimize",
            Command::GhzEnumerate => "ghz-enumerate",
            Command::GhzVerify => "ghz-verify",
            Command::QubitDist(_) => "qubit-dist",
            Command::QubitExpect(_) => "qubit-expect",
            Command::QubitSearchSign(_) => "qubit-search-sign",
            Command::QubitEvolve(_) => "qubit-evolve",
            Command::OracleCheck(_) => "oracle-check",
        }
    }

    fn params(&self) -> Value {
        let v = match self {
            Command::ChshVerify(a) => serde_json::to_value(a),
            Command::ChshOptimize(a) => serde_json::to_value(a),
            Command::QubitDist(a) => serde_json::to_value(a),
            Command::QubitExpect(a) => serde_json::to_value(a),
            Command::QubitSearchSign(a) => serde_json::to_value(a),
            Command::QubitEvolve(a) => serde_json::to_value(a),
            Command::OracleCheck(a) => serde_json::to_value(a),
            Command::ChshAchieve | Command::GhzEnumerate | Command::GhzVerify => Ok(Value::Object(Default::default())),
        };
        v.expect("arguments serialize")
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChshVerifyArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChshOptimizeArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub grid: usize,
    /// Coordinate-descent iterations after the grid search.
    #[arg(long, default_value_t = 50)]
    pub refine: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BlochArgs {
    /// Comma-separated Bloch components, e.g. 0.6,0,0.8
    #[arg(long, value_parser = parse_bloch, allow_hyphen_values = true)]
    pub bloch: BlochVector,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DirArgs {
    /// Comma-separated unit direction, e.g. 0,0,-1
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub dir: [f64; 3],
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QubitExpectArgs {
    #[arg(long, value_parser = parse_bloch, allow_hyphen_values = true)]
    pub bloch: BlochVector,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub dir: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QubitEvolveArgs {
    #[arg(long, value_parser = parse_bloch, allow_hyphen_values = true)]
    pub bloch: BlochVector,
    /// Cycle notation over 1..8, e.g. "(1 5)(2 6)(3 7)(4 8)"
    #[arg(long, default_value = "", value_parser = parse_permutation_arg)]
    #[serde(serialize_with = "serialize_display")]
    pub perm: Permutation,
    /// Reject permutations that break the antipodal constraint (default).
    #[arg(long, conflicts_with = "permissive")]
    #[serde(skip)]
    pub strict: bool,
    /// Apply such permutations with a warning instead.
    #[arg(long)]
    #[serde(skip)]
    pub permissive: bool,
}

impl QubitEvolveArgs {
    pub fn mode(&self) -> EvolutionMode {
        if self.permissive {
            EvolutionMode::Permissive
        } else {
            EvolutionMode::Strict
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleCheckArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1_000)]
    pub samples: usize,
}

fn serialize_display<S: serde::Serializer>(p: &Permutation, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got {s:?}"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"))?;
        if !o.is_finite() {
            return Err(format!("{p:?} is not finite"));
        }
    }
    Ok(out)
}

/// Parses `x,y,z`, rejecting norms above `1 + 1e-9` and rescaling norms just
/// above 1 onto the sphere.
pub fn parse_bloch(s: &str) -> Result<BlochVector, String> {
    let v = parse_vec3(s)?;
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if n > 1.0 + BLOCH_PARSE_TOL {
        return Err(format!("outside Bloch ball: |r| = {n}"));
    }
    let v = if n > 1.0 { v.map(|c| c / n) } else { v };
    BlochVector::from_array(v).map_err(|e| e.to_string())
}

/// Cycle notation to a permutation of `{1..8}`.
pub fn parse_permutation(text: &str) -> Result<Permutation, crate::Error> {
    text.parse()
}

fn parse_permutation_arg(text: &str) -> Result<Permutation, String> {
    parse_permutation(text).map_err(|e| e.to_string())
}

/// Output of a run: the report plus any exported data.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: Report,
    pub export: Option<Value>,
}

impl RunOutput {
    pub fn exit_code(&self) -> i32 {
        if self.report.pass() {
            0
        } else {
            1
        }
    }
}

/// Runs one command and returns its report.
pub fn run(config: &RunConfig) -> Result<RunOutput, CliError> {
    let start = Instant::now();
    let mut params = match config.command.params() {
        Value::Object(m) => m.into_iter().collect::<BTreeMap<_, _>>(),
        _ => BTreeMap::new(),
    };
    params.insert("format".into(), serde_json::to_value(config.format).expect("format"));
    if let Command::QubitEvolve(a) = &config.command {
        params.insert("mode".into(), serde_json::to_value(a.mode()).expect("mode"));
    }
    let mut report = Report::new(config.command.name(), params);
    log::info!("running {}", config.command.name());

    let export = match &config.command {
        Command::ChshVerify(a) => chsh_verify(&mut report, a)?,
        Command::ChshAchieve => chsh_achieve(&mut report)?,
        Command::ChshOptimize(a) => chsh_optimize(&mut report, a)?,
        Command::GhzEnumerate => ghz_enumerate(&mut report),
        Command::GhzVerify => ghz_verify(&mut report)?,
        Command::QubitDist(a) => qubit_dist(&mut report, &a.bloch),
        Command::QubitExpect(a) => qubit_expect(&mut report, a)?,
        Command::QubitSearchSign(a) => qubit_search_sign(&mut report, a)?,
        Command::QubitEvolve(a) => qubit_evolve(&mut report, a)?,
        Command::OracleCheck(a) => oracle_check(&mut report, a)?,
    };
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    log::info!(
        "{}: {} checks, {} failed, {:.3} ms",
        report.command,
        report.checks.len(),
        report.failures().count(),
        report.elapsed_ms
    );
    Ok(RunOutput { report, export })
}

fn chsh_verify(report: &mut Report, args: &ChshVerifyArgs) -> Result<Option<Value>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut max_complex = f64::NEG_INFINITY;
    let mut dominance_violations = 0usize;
    for _ in 0..args.samples {
        let m = chsh::random_model(&mut rng, 16, PhaseDomain::Circle);
        let v = chsh::bell_expression(&m)?;
        let t = m.thetas();
        if v > chsh::analytic_bound(t[1], t[3]) + 1e-9 {
            dominance_violations += 1;
        }
        max_complex = max_complex.max(v);
    }
    let mut max_real = f64::NEG_INFINITY;
    for _ in 0..args.samples {
        let m = chsh::random_model(&mut rng, 16, PhaseDomain::Real);
        max_real = max_real.max(chsh::bell_expression(&m)?);
    }
    report.push(Check::at_most("max_bell_expression_complex", TSIRELSON, max_complex, 1e-9));
    report.push(Check::at_most("max_bell_expression_real", 2.0, max_real, 1e-9));
    report.push(Check::exact("analytic_bound_violations", 0usize, dominance_violations));
    Ok(None)
}

fn complex_pair(z: num_complex::Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn chsh_achieve(report: &mut Report) -> Result<Option<Value>, CliError> {
    use std::f64::consts::FRAC_PI_4;
    let model = chsh::make_achieving_model();
    let expected = [
        ("E(a,b)", AliceSetting::A, BobSetting::B, 7.0 * FRAC_PI_4),
        ("E(a,b')", AliceSetting::A, BobSetting::BPrime, FRAC_PI_4),
        ("E(a',b)", AliceSetting::APrime, BobSetting::B, FRAC_PI_4),
        ("E(a',b')", AliceSetting::APrime, BobSetting::BPrime, 3.0 * FRAC_PI_4),
    ];
    for (name, a, b, angle) in expected {
        let want = num_complex::Complex64::from_polar(1.0, angle);
        let got = chsh::correlation(&model, a, b)?;
        report.push(Check::custom(
            name,
            complex_pair(want),
            complex_pair(got),
            Some(1e-12),
            (want - got).norm() <= 1e-12,
        ));
    }
    report.push(Check::approx("bell_expression", TSIRELSON, chsh::bell_expression(&model)?, 1e-9));
    let t = model.thetas();
    report.push(Check::approx("analytic_bound", TSIRELSON, chsh::analytic_bound(t[1], t[3]), 1e-12));
    Ok(Some(serde_json::to_value(&model).expect("model serializes")))
}

fn chsh_optimize(report: &mut Report, args: &ChshOptimizeArgs) -> Result<Option<Value>, CliError> {
    let (model, value) = chsh::maximize_bell(args.grid, args.refine, args.seed)?;
    report.push(Check::custom(
        "optimized_bell_expression",
        TSIRELSON,
        value,
        Some(1e-6),
        (TSIRELSON - 1e-6..=TSIRELSON + 1e-9).contains(&value),
    ));
    report.push(Check::approx(
        "model_bell_expression",
        value,
        chsh::bell_expression(&model)?,
        1e-12,
    ));
    Ok(Some(serde_json::to_value(&model).expect("model serializes")))
}

fn ghz_enumerate(report: &mut Report) -> Option<Value> {
    report.push(Check::exact("assignments", 512, ghz::enumerate_assignments().len()));
    for cond in GhzCondition::ALL {
        let set = ghz::condition_set(cond);
        report.push(Check::exact(format!("condition_set_{cond}"), 256, set.len()));
        let rotated: ghz::AssignmentSet = set.iter().map(ghz::GhzAssignment::rotate).collect();
        report.push(Check::exact(
            format!("rotation_{cond}_to_{}", cond.rotated()),
            true,
            rotated == ghz::condition_set(cond.rotated()),
        ));
    }
    let inter = ghz::ghz_intersection();
    report.push(Check::info("intersection_size", inter.len()));
    Some(serde_json::to_value(&inter).expect("assignments serialize"))
}

fn ghz_verify(report: &mut Report) -> Result<Option<Value>, CliError> {
    let inter = ghz::ghz_intersection();
    let listed = ghz::listed_intersection_families();
    report.push(Check::exact("intersection_size", 32, inter.len()));
    report.push(Check::exact("intersection_equals_listed_families", true, inter == listed));
    report.push(Check::exact("listed_families_within_intersection", true, listed.is_subset(&inter)));

    let products: std::collections::BTreeSet<Q8Element> = inter.iter().map(ghz::xxx_product).collect();
    let constant = match products.len() {
        1 => products.first().map(Q8Element::to_string),
        _ => None,
    };
    report.push(Check::exact("xxx_product_constant", Some("-i".to_string()), constant));

    let proof = ghz::classical_parity_check();
    report.push(Check::exact("classical_product_constant", Some(1i8), proof.constant_product));
    report.push(Check::info("classical_satisfying_count", proof.satisfying));

    let psi = oracle::ghz_state();
    let xxx = oracle::pauli_string([Axis::X; 3]);
    report.push(Check::at_most(
        "quantum_xxx_eigenvalue_minus_one_residual",
        0.0,
        oracle::eigen_residual(&xxx, &psi, -1.0)?,
        oracle::ORACLE_TOL,
    ));
    Ok(Some(serde_json::to_value(&inter).expect("assignments serialize")))
}

fn qubit_dist(report: &mut Report, r: &BlochVector) -> Option<Value> {
    let dist = qubit::state_distribution(r);
    let reference = qubit::eigenstate_combination(r);
    for lam in Lambda::all() {
        report.push(Check::approx(
            format!("p({lam})"),
            reference[usize::from(lam.index() - 1)],
            dist.get(lam),
            1e-12,
        ));
    }
    report.push(Check::approx("total", 1.0, dist.total(), 1e-12));
    report.push(Check::exact("retroaction", true, qubit::retroaction_check(&dist)));
    report.push(Check::custom(
        "min_weight_above_floor",
        (1.0 - 3f64.sqrt()) / 8.0,
        dist.min_weight(),
        Some(1e-12),
        dist.min_weight() >= (1.0 - 3f64.sqrt()) / 8.0 - 1e-12,
    ));
    report.push(Check::info("has_negative_weight", !dist.is_nonnegative()));
    Some(serde_json::to_value(dist).expect("distribution serializes"))
}

fn qubit_expect(report: &mut Report, args: &QubitExpectArgs) -> Result<Option<Value>, CliError> {
    let r = &args.bloch;
    let dist = qubit::state_distribution(r);
    for axis in Axis::ALL {
        let hv = qubit::axis_expectation(&dist, axis);
        report.push(Check::approx(format!("{axis}_vs_bloch"), r.component(axis), hv, 1e-12));
        report.push(Check::approx(
            format!("{axis}_vs_quantum"),
            oracle::axis_expectation(r, axis),
            hv,
            1e-12,
        ));
    }
    if let Some(n) = args.dir {
        let dot: f64 = n.iter().zip(r.components()).map(|(a, b)| a * b).sum();
        report.push(Check::approx("dir_quantum", dot, oracle::qubit_expectation(r, n)?, 1e-12));
        match qubit::sign_function_search(n)? {
            Some(g) => report.push(Check::approx("dir_hidden_variable", dot, g.expectation(&dist), 1e-12)),
            None => report.push(Check::info("dir_hidden_variable", Value::Null)),
        }
    }
    Ok(None)
}

/// The signed axis direction `n` is (within 1e-9), if any.
fn signed_axis(n: [f64; 3]) -> Option<(Axis, Sign)> {
    Axis::ALL.iter().find_map(|&axis| {
        [Sign::Plus, Sign::Minus].into_iter().find_map(|sign| {
            let target = axis.unit_vector().map(|c| c * sign.as_f64());
            let close = n.iter().zip(target).all(|(a, b)| (a - b).abs() <= 1e-9);
            close.then_some((axis, sign))
        })
    })
}

fn qubit_search_sign(report: &mut Report, args: &DirArgs) -> Result<Option<Value>, CliError> {
    let found = qubit::sign_function_search(args.dir)?;
    let axis = signed_axis(args.dir);
    report.push(Check::exact("sign_function_found", axis.is_some(), found.is_some()));
    if let (Some((axis, sign)), Some(g)) = (axis, found) {
        report.push(Check::exact("sign_function", SignFunction::axis(axis, sign).0, g.0));
    }
    Ok(found.map(|g| serde_json::to_value(g.0).expect("signs serialize")))
}

fn qubit_evolve(report: &mut Report, args: &QubitEvolveArgs) -> Result<Option<Value>, CliError> {
    let dist = qubit::state_distribution(&args.bloch);
    let moved = qubit::evolve_permutation(&dist, &args.perm, args.mode())?;
    report.push(Check::approx("total", 1.0, moved.total(), 1e-12));
    let commutes = args.perm.commutes_with_antipode();
    report.push(Check::info("commutes_with_antipode", commutes));
    if commutes {
        report.push(Check::exact("retroaction_preserved", true, qubit::retroaction_check(&moved)));
    } else {
        report.push(Check::info("retroaction_preserved", qubit::retroaction_check(&moved)));
    }
    if args.perm == Permutation::x_flip() {
        let r = args.bloch;
        let flipped = qubit::state_distribution(&BlochVector::new(-r.rx, r.ry, r.rz)?);
        report.push(Check::exact("matches_x_flipped_state", flipped.weights(), moved.weights()));
    }
    Ok(Some(serde_json::to_value(moved).expect("distribution serializes")))
}

fn oracle_check(report: &mut Report, args: &OracleCheckArgs) -> Result<Option<Value>, CliError> {
    let psi = oracle::ghz_state();
    let ops = oracle::ghz_operators();
    for (k, op) in ops.iter().enumerate() {
        report.push(Check::at_most(
            format!("O{}_eigenvalue_plus_one_residual", k + 1),
            0.0,
            oracle::eigen_residual(op, &psi, 1.0)?,
            oracle::ORACLE_TOL,
        ));
        report.push(Check::exact(format!("O{}_hermitian", k + 1), true, op.is_hermitian(oracle::ORACLE_TOL)));
    }
    let commute = ops.iter().all(|a| {
        ops.iter()
            .all(|b| a.matmul(b).expect("8x8").approx_eq(&b.matmul(a).expect("8x8"), oracle::ORACLE_TOL))
    });
    report.push(Check::exact("stabilizers_commute", true, commute));
    let xxx = oracle::pauli_string([Axis::X; 3]);
    report.push(Check::at_most(
        "xxx_eigenvalue_minus_one_residual",
        0.0,
        oracle::eigen_residual(&xxx, &psi, -1.0)?,
        oracle::ORACLE_TOL,
    ));

    let (x, y) = ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let optimal = oracle::chsh_quantum_value(x, y, [h, h, 0.0], [h, -h, 0.0])?;
    report.push(Check::approx("tsirelson_optimal_settings", TSIRELSON, optimal, 1e-6));
    report.push(Check::approx("chsh_degenerate_settings", 2.0, oracle::chsh_quantum_value(x, x, x, x)?, 1e-9));

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut max_q = f64::NEG_INFINITY;
    let mut max_gap = 0.0f64;
    for _ in 0..args.samples {
        let mut unit = || BlochVector::random(&mut rng, true).components();
        let (a, ap, b, bp) = (unit(), unit(), unit(), unit());
        max_q = max_q.max(oracle::chsh_quantum_value(a, ap, b, bp)?);

        let r = BlochVector::random(&mut rng, false);
        let dist = qubit::state_distribution(&r);
        for axis in Axis::ALL {
            let gap = (qubit::axis_expectation(&dist, axis) - oracle::axis_expectation(&r, axis)).abs();
            max_gap = max_gap.max(gap);
        }
    }
    report.push(Check::at_most("max_random_chsh_quantum_value", TSIRELSON, max_q, 1e-9));
    report.push(Check::at_most("max_axis_expectation_gap", 0.0, max_gap, 1e-12));
    Ok(None)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses `args` (including the program name), runs the command, writes the
/// report, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(config: &RunConfig) -> Result<i32, CliError> {
    let output = run(config)?;
    let rendered = match config.format {
        Format::Json => output.report.to_json(),
        Format::Csv => output.report.to_csv(),
    };
    match &config.out {
        Some(path) => write_file(path, &rendered)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(rendered.as_bytes());
        }
    }
    if let Some(path) = &config.export {
        let data = output.export.clone().unwrap_or(Value::Null);
        let mut text = serde_json::to_string_pretty(&data).expect("export serializes");
        text.push('\n');
        write_file(path, &text)?;
    }
    for check in output.report.failures() {
        eprintln!(
            "FAIL {}: expected {}, got {}",
            check.name, check.expected, check.actual
        );
    }
    Ok(output.exit_code())
}
