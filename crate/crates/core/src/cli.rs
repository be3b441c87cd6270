//! Command-line front end: `check`, `solve`, `shorted`, `examples` and
//! `sampling-demo`.
//!
//! Every command builds a [`Report`] holding a human-readable text part and a
//! JSON value; the JSON alone carries every number the text mentions.
//! Exit codes: 0 success, 2 input error, 3 uncharacterised regime, 4 internal
//! assertion.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::generate::{example1, example3, example3_candidate};
use crate::io::{FileError, InstanceFile, MatrixJson};
use crate::linalg::{CMatrix, SubspaceBasis, TolerancePolicy};
use crate::sampling::{run_sampling_demo, SamplingDemoConfig};
use crate::schatten::schatten_norm;
use crate::shorted::{shorted_infimum_witness, shorted_kernel_range_check, shorted_operator};
use crate::solver::{
    critical_residual, descent_check_fp, normal_residual_full, normal_residual_p2,
    operator_order_min, schatten_min, OrderStatus, ProblemInstance, SchattenOutcome,
};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    InputError = 2,
    Uncharacterized = 3,
    InternalAssertion = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_status(&self) -> ExitStatus {
        match self {
            CliError::Library(Error::InternalAssertion(_))
            | CliError::Library(Error::DecompositionFailed(_)) => ExitStatus::InternalAssertion,
            _ => ExitStatus::InputError,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub status: ExitStatus,
}

#[derive(Debug, Parser)]
#[command(
    name = "weighted-axb",
    version,
    about = "Weighted approximation of AXB ≈ C"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Relative singular-value cutoff for rank decisions.
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,
    /// Absolute residual threshold for condition checks.
    #[arg(long, global = true)]
    pub tol_residual: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print only the JSON block.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the range and kernel conditions of an instance.
    Check { path: PathBuf },
    /// Minimise in the Loewner order or in a weighted Schatten norm.
    Solve(SolveArgs),
    /// Shorted operator of W to the span of the given columns.
    Shorted(ShortedArgs),
    /// Rebuild a worked example and assert its claims.
    Examples(ExamplesArgs),
    /// Filter design for consistent sampling with random frames.
    SamplingDemo(SamplingArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub path: PathBuf,
    /// Override the file's exponent.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, conflicts_with = "schatten")]
    pub order: bool,
    /// Default mode.
    #[arg(long)]
    pub schatten: bool,
    /// Include the particular solution and both projection factors.
    #[arg(long)]
    pub emit_manifold: bool,
    /// Matrix file with a candidate X to evaluate.
    #[arg(long)]
    pub candidate: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ShortedArgs {
    pub path: PathBuf,
    /// Matrix file, or inline matrix JSON, whose columns span S.
    #[arg(long)]
    pub subspace: String,
    /// Random oblique projections compared against the shorted operator.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Ex1,
    Ex3,
}

#[derive(Debug, Args)]
pub struct ExamplesArgs {
    pub which: Example,
    #[arg(long, default_value_t = 2.0)]
    pub a: f64,
    #[arg(long, default_value_t = 3.0)]
    pub p: f64,
}

#[derive(Debug, Args)]
pub struct SamplingArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub sampling_rank: usize,
    #[arg(long)]
    pub recon_rank: usize,
    /// Sample with the reconstruction frame.
    #[arg(long)]
    pub same_frames: bool,
    #[arg(long, default_value_t = 5)]
    pub signals: usize,
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out`. Returns the process exit code.
pub fn run_from<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render().ansi());
            return code;
        }
    };
    let json_only = cli.global.json;
    match execute(&cli) {
        Ok(report) => {
            let block = serde_json::to_string_pretty(&report.json).expect("report serialises");
            let _ = if json_only {
                writeln!(out, "{block}")
            } else {
                writeln!(out, "{}\n{block}", report.text.trim_end())
            };
            report.status.code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_status().code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    let base = tolerance(g, TolerancePolicy::default())?;
    match &cli.command {
        Command::Check { path } => cmd_check(path, g),
        Command::Solve(args) => cmd_solve(args, g),
        Command::Shorted(args) => cmd_shorted(args, g),
        Command::Examples(args) => cmd_examples(args, &base, g.seed),
        Command::SamplingDemo(args) => cmd_sampling_demo(args, &base, g.seed),
    }
}

/// Command-line flags take precedence over `base`.
fn tolerance(g: &GlobalArgs, base: TolerancePolicy) -> Result<TolerancePolicy, CliError> {
    let tol = TolerancePolicy {
        rank_rel: g.tol_rank.unwrap_or(base.rank_rel),
        residual_abs: g.tol_residual.unwrap_or(base.residual_abs),
        ..base
    };
    tol.validate()?;
    Ok(tol)
}

/// Loads an instance file; its own tolerance overrides sit below the flags.
fn load(path: &PathBuf, g: &GlobalArgs) -> Result<(InstanceFile, TolerancePolicy), CliError> {
    let file = InstanceFile::load(path)?;
    let tol = tolerance(g, file.tolerance(TolerancePolicy::default()))?;
    Ok((file, tol))
}

fn load_matrix(arg: &str) -> Result<CMatrix, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        std::fs::read_to_string(arg).map_err(|source| FileError::Io {
            path: arg.to_owned(),
            source,
        })?
    };
    let m: MatrixJson = serde_json::from_str(&text).map_err(FileError::from)?;
    Ok(m.to_matrix()?)
}

fn mat(m: &CMatrix) -> Value {
    serde_json::to_value(MatrixJson::from_matrix(m)).expect("matrix serialises")
}

fn fmt_matrix(m: &CMatrix) -> String {
    if m.is_empty() {
        return format!("    ({}x{} empty)\n", m.nrows(), m.ncols());
    }
    let mut s = String::new();
    for i in 0..m.nrows() {
        s.push_str("    [");
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            let im = if z.im.abs() < 5e-7 { 0.0 } else { z.im };
            s.push_str(&format!(" {:>10.6}{:+.6}i", clean(z.re), im));
        }
        s.push_str(" ]\n");
    }
    s
}

/// Prints round-off zeros without a sign.
fn clean(x: f64) -> f64 {
    if x.abs() < 5e-7 {
        0.0
    } else {
        x
    }
}

fn conditions_text(c: &crate::ConditionReport) -> String {
    format!(
        "range condition  R(C) ⊆ R(A) + R(A)^⊥W : {} (residual {:.3e})\n\
         kernel condition N(B) ⊆ N(A*WC)       : {} (residual {:.3e})\n",
        c.range_condition, c.range_residual, c.kernel_condition, c.kernel_residual
    )
}

fn order_status_name(s: OrderStatus) -> &'static str {
    match s {
        OrderStatus::MinimumExists => "MinimumExists",
        OrderStatus::InfimumOnly => "InfimumOnly",
        OrderStatus::InfimumUnknown => "InfimumUnknown",
    }
}

fn cmd_check(path: &PathBuf, g: &GlobalArgs) -> Result<Report, CliError> {
    let (file, tol) = load(path, g)?;
    let inst = file.instance(&tol)?;
    let order = operator_order_min(&inst, &tol)?;
    let c = order.conditions;
    let schatten_regime = if c.kernel_condition {
        if c.range_condition {
            "minimum exists for every p"
        } else {
            "no minimum"
        }
    } else {
        "characterised only for p = 2"
    };
    let mut text = format!("instance {}\n", path.display());
    text += &conditions_text(&c);
    text += &format!(
        "operator-order status: {}\n",
        order_status_name(order.status)
    );
    text += &format!("Schatten regime: {schatten_regime}\n");
    let json = json!({
        "command": "check",
        "conditions": c,
        "order_status": order.status,
        "schatten_regime": schatten_regime,
    });
    Ok(Report {
        text,
        json,
        status: ExitStatus::Success,
    })
}

fn manifold_json(m: &crate::SolutionManifold) -> Value {
    json!({
        "particular": mat(m.particular()),
        "left_factor": mat(m.left_factor()),
        "right_factor": mat(m.right_factor()),
    })
}

fn candidate_report(
    inst: &ProblemInstance,
    x: &CMatrix,
    tol: &TolerancePolicy,
    text: &mut String,
) -> Result<Value, CliError> {
    let objective = inst.objective(x)?;
    let p2 = normal_residual_p2(inst, x)?.norm();
    *text += &format!("candidate X:\n{}", fmt_matrix(x));
    *text += &format!("  ‖AXB - C‖_(p,W) = {objective:.12}\n");
    *text += &format!("  ‖A*W(AXB - C)B*‖ = {p2:.6e}\n");
    let critical = if inst.p() > 1.0 {
        let r = critical_residual(inst, x, tol)?.norm();
        *text += &format!("  critical residual ‖B|R|^(p-1)U*W^1/2 A‖ = {r:.6e}\n");
        Some(r)
    } else {
        *text += "  critical residual: not defined for p = 1\n";
        None
    };
    Ok(json!({
        "x": mat(x),
        "objective": objective,
        "normal_residual_p2_norm": p2,
        "critical_residual_norm": critical,
    }))
}

fn cmd_solve(args: &SolveArgs, g: &GlobalArgs) -> Result<Report, CliError> {
    let (file, tol) = load(&args.path, g)?;
    let mut inst = file.instance(&tol)?;
    if let Some(p) = args.p {
        inst = inst.with_p(p)?;
    }
    let candidate = args
        .candidate
        .as_ref()
        .map(|p| load_matrix(&p.to_string_lossy()))
        .transpose()?;
    if let Some(x) = &candidate {
        if x.shape() != inst.x_shape() {
            return Err(CliError::Usage(format!(
                "candidate is {}x{}, expected {}x{}",
                x.nrows(),
                x.ncols(),
                inst.x_shape().0,
                inst.x_shape().1
            )));
        }
    }
    let mut text = format!("instance {}\n", args.path.display());
    let mut json = if args.order {
        solve_order(&inst, &tol, args.emit_manifold, &mut text)?
    } else {
        solve_schatten(&inst, &tol, args.emit_manifold, &mut text)?
    };
    if let Some(x) = &candidate {
        json["candidate"] = candidate_report(&inst, x, &tol, &mut text)?;
    }
    let status = if json["characterised"] == Value::Bool(false) {
        ExitStatus::Uncharacterized
    } else {
        ExitStatus::Success
    };
    Ok(Report { text, json, status })
}

fn solve_order(
    inst: &ProblemInstance,
    tol: &TolerancePolicy,
    emit: bool,
    text: &mut String,
) -> Result<Value, CliError> {
    let res = operator_order_min(inst, tol)?;
    *text += "mode: Loewner order, minimise H(X) = (AXB - C)*W(AXB - C)\n";
    *text += &conditions_text(&res.conditions);
    *text += &format!("status: {}\n", order_status_name(res.status));
    let mut json = json!({
        "command": "solve",
        "mode": "order",
        "status": res.status,
        "characterised": res.status != OrderStatus::InfimumUnknown,
        "conditions": res.conditions,
    });
    if let Some(v) = &res.inf_value {
        *text += &format!("infimum C*W_/R(A) C:\n{}", fmt_matrix(v));
        json["inf_value"] = mat(v);
    }
    if let Some(m) = &res.manifold {
        let x0 = m.particular();
        let normal = normal_residual_full(inst, x0)?.norm();
        *text += &format!("minimiser X₀ = map(0):\n{}", fmt_matrix(x0));
        *text += &format!("normal equation residual ‖A*W(AX₀B - C)‖ = {normal:.3e}\n");
        json["minimizer"] = mat(x0);
        json["normal_residual_norm"] = json!(normal);
        if emit {
            json["manifold"] = manifold_json(m);
        }
    }
    if res.status == OrderStatus::InfimumUnknown {
        *text += "the kernel condition fails: neither existence nor the value of the infimum is determined\n";
    }
    Ok(json)
}

fn solve_schatten(
    inst: &ProblemInstance,
    tol: &TolerancePolicy,
    emit: bool,
    text: &mut String,
) -> Result<Value, CliError> {
    let p = inst.p();
    *text += &format!("mode: Schatten, minimise ‖AXB - C‖_(p,W) at p = {p}\n");
    let outcome = schatten_min(inst, tol)?;
    let json = match outcome {
        SchattenOutcome::Minimum(min) => {
            *text += &conditions_text(&min.conditions);
            *text += &format!("route: {:?}\n", min.route);
            *text += &format!("minimiser X₀ = map(0):\n{}", fmt_matrix(min.minimizer()));
            *text += &format!(
                "direct value  ‖AX₀B - C‖_(p,W) = {:.12}\n",
                min.direct_value
            );
            *text += &format!(
                "formula value ‖W_/R(A)^1/2 C‖_p = {:.12}\n",
                min.formula_value
            );
            if !min.formula_agrees {
                *text += "DISAGREEMENT: the formula value does not equal the attained minimum\n";
            }
            *text += &format!(
                "normal equation residual = {:.3e}\n",
                min.normal_residual_norm
            );
            let mut j = json!({
                "command": "solve",
                "mode": "schatten",
                "p": p,
                "status": "Minimum",
                "characterised": true,
                "route": min.route,
                "conditions": min.conditions,
                "minimizer": mat(min.minimizer()),
                "direct_value": min.direct_value,
                "formula_value": min.formula_value,
                "formula_agrees": min.formula_agrees,
                "disagreement": !min.formula_agrees,
                "normal_residual_norm": min.normal_residual_norm,
            });
            if emit {
                j["manifold"] = manifold_json(&min.manifold);
            }
            j
        }
        SchattenOutcome::NoMinimum { conditions } => {
            *text += &conditions_text(&conditions);
            *text += "status: NoMinimum (the relevant range condition fails)\n";
            json!({
                "command": "solve", "mode": "schatten", "p": p,
                "status": "NoMinimum", "characterised": true, "conditions": conditions,
            })
        }
        SchattenOutcome::NotCharacterized { conditions } => {
            *text += &conditions_text(&conditions);
            *text += "status: NotCharacterized (p ≠ 2 and the kernel condition fails)\n";
            json!({
                "command": "solve", "mode": "schatten", "p": p,
                "status": "NotCharacterized", "characterised": false, "conditions": conditions,
            })
        }
    };
    Ok(json)
}

fn cmd_shorted(args: &ShortedArgs, g: &GlobalArgs) -> Result<Report, CliError> {
    let (file, tol) = load(&args.path, g)?;
    let w = file.weight(&tol)?;
    let columns = load_matrix(&args.subspace)?;
    if columns.nrows() != w.dim() {
        return Err(CliError::Usage(format!(
            "subspace columns have {} rows, W is {}x{}",
            columns.nrows(),
            w.dim(),
            w.dim()
        )));
    }
    let s = SubspaceBasis::span_of(&columns, &tol)?;
    let pair = shorted_operator(&w, &s, &tol)?;
    let kr = shorted_kernel_range_check(&w, &s, &tol)?;
    let witness = shorted_infimum_witness(&w, &s, args.trials, g.seed, &tol)?;
    let mut text = format!("W from {}, dim S = {}\n", args.path.display(), s.dim());
    text += &format!("shorted operator W_/S:\n{}", fmt_matrix(&pair.shorted));
    text += &format!(
        "compression W_S = W - W_/S:\n{}",
        fmt_matrix(&pair.compression)
    );
    text += &format!(
        "W_/S ≤ E*WE over {} projections with N(E) = S: {} (min margin {:.3e})\n",
        witness.trials, witness.all_hold, witness.min_margin
    );
    text += &format!("kernel and range properties: {}\n", kr.all_pass);
    let all_pass = witness.all_hold && kr.all_pass;
    let json = json!({
        "command": "shorted",
        "subspace_dim": s.dim(),
        "shorted": mat(&pair.shorted),
        "compression": mat(&pair.compression),
        "infimum_witness": witness,
        "kernel_range": kr,
        "all_pass": all_pass,
    });
    let status = if all_pass {
        ExitStatus::Success
    } else {
        ExitStatus::InternalAssertion
    };
    Ok(Report { text, json, status })
}

struct Claims {
    list: Vec<Value>,
    text: String,
    ok: bool,
}

impl Claims {
    fn new() -> Self {
        Self {
            list: Vec::new(),
            text: String::new(),
            ok: true,
        }
    }

    fn add(&mut self, name: &str, value: Value, pass: bool) {
        self.ok &= pass;
        self.text += &format!("[{}] {name}: {value}\n", if pass { "ok" } else { "FAILED" });
        self.list
            .push(json!({ "claim": name, "value": value, "pass": pass }));
    }
}

fn cmd_examples(args: &ExamplesArgs, tol: &TolerancePolicy, seed: u64) -> Result<Report, CliError> {
    let mut claims = Claims::new();
    let (name, extra) = match args.which {
        Example::Ex1 => ("ex1", example1_claims(tol, &mut claims)?),
        Example::Ex3 => {
            if !(args.a > 1.0 && args.p > 1.0 && args.a.is_finite() && args.p.is_finite()) {
                return Err(CliError::Usage(format!(
                    "ex3 needs a > 1 and p > 1 (got a = {}, p = {})",
                    args.a, args.p
                )));
            }
            (
                "ex3",
                example3_claims(args.a, args.p, tol, seed, &mut claims)?,
            )
        }
    };
    let text = format!("example {name}\n{}", claims.text);
    let json = json!({
        "command": "examples",
        "example": name,
        "claims": claims.list,
        "all_pass": claims.ok,
        "data": extra,
    });
    let status = if claims.ok {
        ExitStatus::Success
    } else {
        ExitStatus::InternalAssertion
    };
    Ok(Report { text, json, status })
}

fn example1_claims(tol: &TolerancePolicy, claims: &mut Claims) -> Result<Value, CliError> {
    let inst = example1();
    let order = operator_order_min(&inst, tol)?;
    let c = order.conditions;
    claims.add(
        "kernel condition fails",
        json!(c.kernel_residual),
        !c.kernel_condition,
    );
    claims.add(
        "operator-order status is InfimumUnknown",
        json!(order.status),
        order.status == OrderStatus::InfimumUnknown,
    );
    let shorted = inst.shorted_value(tol)?.norm();
    claims.add("C*W_/R(A) C = 0", json!(shorted), shorted <= 1e-10);
    let SchattenOutcome::Minimum(min) = schatten_min(&inst, tol)? else {
        claims.add("p = 2 normal equation solvable", json!(false), false);
        return Ok(Value::Null);
    };
    claims.add(
        "p = 2 normal equation solvable",
        json!(min.normal_residual_norm),
        min.normal_residual_norm <= tol.residual_abs,
    );
    claims.add(
        "p = 2 minimum is 1",
        json!(min.direct_value),
        (min.direct_value - 1.0).abs() <= 1e-8,
    );
    let x0 = min.minimizer().norm();
    claims.add("minimiser is x = 0", json!(x0), x0 <= 1e-10);
    claims.add(
        "formula value ‖W_/R(A)^1/2 C‖_2 differs from the minimum",
        json!({ "direct": min.direct_value, "formula": min.formula_value }),
        !min.formula_agrees,
    );
    Ok(
        json!({ "minimizer": mat(min.minimizer()), "direct_value": min.direct_value, "formula_value": min.formula_value }),
    )
}

fn example3_claims(
    a: f64,
    p: f64,
    tol: &TolerancePolicy,
    seed: u64,
    claims: &mut Claims,
) -> Result<Value, CliError> {
    let inst = example3(a, p);
    let x0 = example3_candidate();
    let axb = (inst.a() * &x0 * inst.b()).norm();
    claims.add("A X₀ B = 0", json!(axb), axb <= 1e-12);
    let critical = critical_residual(&inst, &x0, tol)?.norm();
    claims.add(
        "critical residual at X₀ vanishes",
        json!(critical),
        critical <= 1e-10,
    );
    let p2 = normal_residual_p2(&inst, &x0)?.norm();
    let expected = (a * a - a.powf(2.0 / (p - 1.0))).abs() * 2.0_f64.sqrt();
    if p == 2.0 {
        claims.add("p = 2 normal residual vanishes", json!(p2), p2 <= 1e-10);
    } else {
        claims.add(
            "X₀ does not solve the p = 2 normal equation",
            json!({ "norm": p2, "expected": expected }),
            (p2 - expected).abs() <= 1e-8 && p2 > tol.residual_abs,
        );
    }
    let value = inst.objective(&x0)?;
    let norm_c = schatten_norm(inst.c(), p)?;
    claims.add(
        "‖AX₀B - C‖_p = ‖C‖_p",
        json!(value),
        (value - norm_c).abs() <= 1e-8,
    );
    let descent = descent_check_fp(&inst, &x0, 200, seed, tol)?;
    claims.add(
        "no descent direction at X₀",
        json!(descent.min_derivative),
        descent.all_nonnegative,
    );
    let c = inst.conditions(tol)?;
    claims.add(
        "kernel condition fails",
        json!(c.kernel_residual),
        !c.kernel_condition,
    );
    Ok(json!({
        "a": a,
        "p": p,
        "candidate": mat(&x0),
        "critical_residual_norm": critical,
        "normal_residual_p2_norm": p2,
        "objective": value,
        "descent": descent,
    }))
}

fn cmd_sampling_demo(
    args: &SamplingArgs,
    tol: &TolerancePolicy,
    seed: u64,
) -> Result<Report, CliError> {
    let cfg = SamplingDemoConfig {
        dim: args.dim,
        sampling_rank: args.sampling_rank,
        recon_rank: args.recon_rank,
        same_frames: args.same_frames,
        signals: args.signals,
        seed,
    };
    let rep = run_sampling_demo(&cfg, tol)?;
    let max = |v: &[f64]| v.iter().copied().fold(0.0_f64, f64::max);
    let mut text = format!(
        "dimension {}, sampling rank {}, reconstruction rank {}{}\n",
        cfg.dim,
        cfg.sampling_rank,
        cfg.recon_rank,
        if cfg.same_frames {
            ", identical frames"
        } else {
            ""
        }
    );
    text += &format!("filter X:\n{}", fmt_matrix(&rep.filter));
    text += &format!(
        "‖AXB* - P_R(A)‖_2 = {:.12} (oracle {:.12})\n",
        rep.min_value, rep.oracle_value
    );
    text += &format!(
        "largest error for signals in R(A): {:.3e}\n",
        max(&rep.in_range_errors)
    );
    text += &format!(
        "largest error for generic signals: {:.3e}\n",
        max(&rep.generic_errors)
    );
    text += &format!(
        "best achievable (‖f - P_R(A) f‖): {:.3e}\n",
        max(&rep.best_errors)
    );
    let json = json!({
        "command": "sampling-demo",
        "config": {
            "dim": cfg.dim, "sampling_rank": cfg.sampling_rank, "recon_rank": cfg.recon_rank,
            "same_frames": cfg.same_frames, "signals": cfg.signals, "seed": cfg.seed,
        },
        "route": rep.route,
        "filter": mat(&rep.filter),
        "min_value": rep.min_value,
        "oracle_value": rep.oracle_value,
        "oracle_agrees": rep.oracle_agrees,
        "in_range_errors": rep.in_range_errors,
        "generic_errors": rep.generic_errors,
        "best_errors": rep.best_errors,
    });
    let status = if rep.oracle_agrees {
        ExitStatus::Success
    } else {
        ExitStatus::InternalAssertion
    };
    Ok(Report { text, json, status })
}
