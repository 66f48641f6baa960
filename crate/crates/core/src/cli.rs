//! The `su3corr` command-line front end.
//!
//! Every subcommand produces one report with the top-level keys
//! `command`, `inputs`, `results`, `diagnostics` and
//! `paper_reference_values`. Checks that fail turn the exit code to 1 and
//! are named on stderr; usage errors exit with 2.
//!
//! A config file (`--config path`) holds `key = value` lines whose keys are
//! the long flag names of the chosen subcommand. Flags on the command line
//! win over the file. The thread count is taken from `--threads`, then
//! `SU3CORR_THREADS`, then the file, then all cores; it never changes a
//! result.

use crate::integrable::{identity_suite, sample_params};
use crate::lattice_ed::{self, ChainSpec, Observable};
use crate::reference::{self, FINITE_CHAINS};
use crate::singlet_basis::{a_matrix_from_args, build_basis, permutation_operator};
use crate::three_site::{self, ThreeSiteProblem, SPLITS};
use crate::{c64, linalg, two_site, Error, C64};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use std::io::Write;
use std::time::Instant;

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "SU3CORR_THREADS";

#[derive(Parser, Debug)]
#[command(name = "su3corr", version, about = "Short-range correlators of the integrable SU(3) chain")]
struct Cli {
    /// Plain-text `key = value` file mirroring the long flags.
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Yang–Baxter, unitarity, fusion and ε/δ identities at random points.
    VerifyAlgebra {
        /// Random complex samples per identity, on top of the edge points.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Gram matrices and the matrices A^[2], A^[3] against the printed ones.
    VerifyMatrices {
        /// Random points per matrix.
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Two-site functions at one spectral parameter.
    TwoSite {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lambda: f64,
        /// Imaginary part of λ.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lambda_im: f64,
        /// Highest order of the Hurwitz-zeta expansion of G.
        #[arg(long, default_value_t = 5)]
        zeta_terms: usize,
        #[command(flatten)]
        common: Common,
    },
    /// ⟨P12 P23⟩ and D3 in the thermodynamic limit.
    ThreeSite {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Skip the D3 construction and its checks.
        #[arg(long)]
        no_density: bool,
        /// Skip the grid-doubling self-convergence run.
        #[arg(long)]
        no_refine: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Exact diagonalization of a periodic chain.
    Ed {
        /// Chain length, 3 to 12.
        #[arg(long, default_value_t = 9)]
        length: usize,
        /// Comma-separated subset of p12, p12p23, rdm2, rdm3.
        #[arg(long, default_value = "p12,p12p23,rdm2")]
        observables: String,
        #[command(flatten)]
        common: Common,
    },
    /// Finite chains L = 3, 6, 9 and the thermodynamic values side by side.
    ReportTable1 {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct ProblemArgs {
    /// Contour offset δ, the contour being Re μ = −δ.
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Trapezoid spacing in τ, Im μ = sinh τ.
    #[arg(long, default_value_t = 0.05)]
    grid_spacing: f64,
    /// Truncation Λ of |Im μ|.
    #[arg(long, default_value_t = 1e12)]
    cutoff: f64,
    /// Number of splits in the D3 extrapolation (2 to 4).
    #[arg(long, default_value_t = 4)]
    extrapolation_depth: usize,
}

impl ProblemArgs {
    fn problem(&self) -> ThreeSiteProblem {
        ThreeSiteProblem { delta: self.delta, step: self.grid_spacing, half_width: self.cutoff }
    }

    fn inputs(&self, m: &mut Map<String, Value>) {
        m.insert("delta".into(), json!(self.delta));
        m.insert("grid_spacing".into(), json!(self.grid_spacing));
        m.insert("cutoff".into(), json!(self.cutoff));
        m.insert("extrapolation_depth".into(), json!(self.extrapolation_depth));
    }
}

/// Output format.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

struct Check {
    name: String,
    value: f64,
    tolerance: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.value <= self.tolerance
    }
}

/// Everything one subcommand prints.
struct Report {
    command: &'static str,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
    diagnostics: Map<String, Value>,
    references: Map<String, Value>,
    comparisons: Map<String, Value>,
    checks: Vec<Check>,
}

fn num(x: C64, real: bool) -> Value {
    if real {
        json!(x.re)
    } else {
        json!({"re": x.re, "im": x.im})
    }
}

fn real_matrix(m: &nalgebra::DMatrix<f64>) -> Value {
    Value::Array((0..m.nrows()).map(|i| json!(m.row(i).iter().copied().collect::<Vec<f64>>())).collect())
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report {
            command,
            inputs: Map::new(),
            results: Map::new(),
            diagnostics: Map::new(),
            references: Map::new(),
            comparisons: Map::new(),
            checks: Vec::new(),
        }
    }

    fn result(&mut self, name: &str, v: Value) {
        self.results.insert(name.into(), v);
    }

    fn diag(&mut self, name: &str, v: Value) {
        self.diagnostics.insert(name.into(), v);
    }

    fn check(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.checks.push(Check { name: name.into(), value, tolerance });
    }

    /// Records a computed number next to its printed value.
    fn compare(&mut self, name: &str, computed: f64, paper: f64, citation: &str, error: Option<f64>, tol: f64) {
        self.result(name, json!(computed));
        self.references.insert(name.into(), json!({"value": paper, "citation": citation}));
        let delta = computed - paper;
        self.comparisons.insert(
            name.into(),
            json!({"computed": computed, "paper": paper, "delta": delta, "error_estimate": error, "tolerance": tol}),
        );
        self.check(format!("{name} vs printed value"), delta.abs(), tol);
    }

    fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    fn to_json(&self) -> Value {
        let mut diagnostics = self.diagnostics.clone();
        diagnostics.insert("comparisons".into(), Value::Object(self.comparisons.clone()));
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "value": c.value, "tolerance": c.tolerance, "pass": c.passed()}))
            .collect();
        diagnostics.insert("checks".into(), Value::Array(checks));
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "diagnostics": diagnostics,
            "paper_reference_values": self.references,
        })
    }

    fn scalar_rows(&self) -> Vec<(String, String)> {
        let mut rows = Vec::new();
        for (k, v) in &self.results {
            flatten(k, v, &mut rows);
        }
        rows
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("kind,name,value,reference,tolerance,status\n");
                for (k, v) in self.scalar_rows() {
                    let reference = self.references.get(&k).and_then(|r| r.get("value")).map_or(String::new(), |x| x.to_string());
                    s += &format!("result,{},{},{},,\n", csv_field(&k), csv_field(&v), reference);
                }
                for c in &self.checks {
                    let status = if c.passed() { "pass" } else { "fail" };
                    s += &format!("check,{},{:e},,{:e},{status}\n", csv_field(&c.name), c.value, c.tolerance);
                }
                s
            }
            Format::Text => {
                let mut s = format!("{}\n", self.command);
                for (k, v) in self.scalar_rows() {
                    match self.references.get(&k).and_then(|r| r.get("value")) {
                        Some(p) => s += &format!("  {k} = {v}  (printed {p})\n"),
                        None => s += &format!("  {k} = {v}\n"),
                    }
                }
                for c in &self.checks {
                    let status = if c.passed() { "ok  " } else { "FAIL" };
                    s += &format!("  [{status}] {}: {:.3e} (tol {:.1e})\n", c.name, c.value, c.tolerance);
                }
                s
            }
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Scalars of a result value as `name → text`; matrices are left to JSON.
fn flatten(name: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Number(_) | Value::String(_) | Value::Bool(_) => rows.push((name.into(), v.to_string())),
        Value::Object(m) if m.len() == 2 && m.contains_key("re") && m.contains_key("im") => {
            rows.push((name.into(), format!("{}{:+}i", m["re"], m["im"].as_f64().unwrap_or(f64::NAN))));
        }
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&format!("{name}.{k}"), x, rows);
            }
        }
        Value::Array(a) if a.iter().all(|x| x.is_number()) => {
            for (i, x) in a.iter().enumerate() {
                rows.push((format!("{name}[{i}]"), x.to_string()));
            }
        }
        _ => {}
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::SizeOverflow(_) | Error::PoleProximity { .. } | Error::Singular(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Compute(other),
        }
    }
}

type CmdResult = std::result::Result<Report, Failure>;

fn verify_algebra(samples: usize, seed: u64) -> CmdResult {
    let mut r = Report::new("verify-algebra");
    r.inputs.insert("samples".into(), json!(samples));
    r.inputs.insert("seed".into(), json!(seed));
    for rec in identity_suite(seed, samples)? {
        r.result(&rec.name, json!({"max_residual": rec.max_residual, "samples": rec.samples}));
        r.check(rec.name.clone(), rec.max_residual, 1e-12);
    }
    Ok(r)
}

fn verify_matrices(points: usize, seed: u64) -> CmdResult {
    let mut r = Report::new("verify-matrices");
    r.inputs.insert("points".into(), json!(points));
    r.inputs.insert("seed".into(), json!(seed));
    let printed2: Vec<Vec<i64>> = reference::GRAM2.iter().map(|x| x.to_vec()).collect();
    let printed3: Vec<Vec<i64>> = reference::GRAM3.iter().map(|x| x.to_vec()).collect();
    for (m, printed) in [(2, printed2), (3, printed3)] {
        let basis = build_basis(m)?;
        let gram = basis.gram();
        let wrong = gram.iter().flatten().zip(printed.iter().flatten()).filter(|(a, b)| a != b).count();
        r.result(&format!("gram{m}"), json!(gram));
        let inv: Vec<Vec<String>> =
            basis.gram_inverse().iter().map(|row| row.iter().map(|q| q.to_string()).collect()).collect();
        r.result(&format!("gram{m}_inverse"), json!(inv));
        r.references.insert(format!("gram{m}"), json!({"value": printed, "citation": "printed transformation matrix"}));
        r.check(format!("gram{m} entries differing from printed"), wrong as f64, 0.0);
    }

    let ls = sample_params(seed, points);
    let mut worst2 = 0.0f64;
    let mut defect = 0.0f64;
    let mut zero2 = 0.0f64;
    for &l in &ls {
        let a = a_matrix_from_args(2, &[l])?;
        let p = reference::a2_printed(l);
        worst2 = worst2.max(linalg::max_abs(&(&a.matrix - &p)));
        defect = defect.max(a.eigen_defect);
        zero2 = zero2.max(zero_entry_defect(&a.matrix, &p));
    }
    let xy = sample_params(seed.wrapping_add(1), 2 * points);
    let mut worst3 = 0.0f64;
    let mut zero3 = 0.0f64;
    for k in 0..points {
        let (x, y) = (xy[2 * k], xy[2 * k + 1]);
        let a = a_matrix_from_args(3, &[x, y])?;
        let p = reference::a3_printed(x, y);
        worst3 = worst3.max(linalg::max_abs(&(&a.matrix - &p)));
        defect = defect.max(a.eigen_defect);
        zero3 = zero3.max(zero_entry_defect(&a.matrix, &p));
    }
    r.result("a2_max_deviation", json!(worst2));
    r.result("a3_max_deviation", json!(worst3));
    r.diag("a2_zero_entries_max_abs", json!(zero2));
    r.diag("a3_zero_entries_max_abs", json!(zero3));
    r.diag("normalization_row_defect", json!(defect));
    r.check("A^[2] vs printed formula", worst2, 1e-10);
    r.check("A^[3] vs printed formula", worst3, 1e-10);
    r.check("A^[2] printed zeros", zero2, 1e-10);
    r.check("A^[3] printed zeros", zero3, 1e-10);
    r.check("normalization row eigenvector", defect, 1e-10);
    Ok(r)
}

fn zero_entry_defect(a: &nalgebra::DMatrix<C64>, printed: &nalgebra::DMatrix<C64>) -> f64 {
    a.iter().zip(printed.iter()).filter(|(_, p)| p.norm() == 0.0).map(|(x, _)| x.norm()).fold(0.0, f64::max)
}

fn two_site_cmd(re: f64, im: f64, terms: usize) -> CmdResult {
    let mut r = Report::new("two-site");
    r.inputs.insert("lambda".into(), json!(re));
    r.inputs.insert("lambda_im".into(), json!(im));
    r.inputs.insert("zeta_terms".into(), json!(terms));
    let l = c64(re, im);
    let real = im == 0.0;
    let v = two_site::evaluate(l)?;
    if l == c64(0.0, 0.0) {
        let exact = 1.0 - std::f64::consts::PI / (3.0 * 3f64.sqrt()) - 3f64.ln();
        r.compare("omega33", v.omega.re, reference::OMEGA_HOMOGENEOUS, "homogeneous two-site value", Some((v.omega.re - exact).abs()), 1e-12);
        r.compare("alpha33", v.alpha.re, reference::ALPHA_HOMOGENEOUS, "homogeneous two-site value", None, 1e-12);
        r.diag("omega33_closed_form", json!(exact));
    } else {
        r.result("omega33", num(v.omega, real));
        r.result("alpha33", num(v.alpha, real));
    }
    r.result("g", num(v.g, real));
    if let Some(w) = v.omega_bar {
        r.result("omega33_bar", num(w, real));
    }
    if let Some(s) = v.sigma {
        r.result("sigma", num(s, real));
    }
    r.result("zeta_coefficients", json!(two_site::zeta_expansion(terms)?));

    // The functional equations are checked at λ, or next to it when λ sits
    // on one of their poles.
    let probe = if two_site::check_qkz_two_site(l).is_ok() && two_site::three_term_residual(l).is_ok() && l.norm() > 1e-6 {
        l
    } else {
        l + c64(0.3, 0.2)
    };
    let (q1, q2) = two_site::check_qkz_two_site(probe)?;
    let t = two_site::three_term_residual(probe)?;
    r.diag("equation_probe", json!({"re": probe.re, "im": probe.im}));
    r.check("two-site qKZ, first equation", q1, 1e-11);
    r.check("two-site qKZ, second equation", q2, 1e-11);
    r.check("three-term relation for sigma", t, 1e-11);
    Ok(r)
}

fn problem_checked(args: &ProblemArgs) -> std::result::Result<ThreeSiteProblem, Failure> {
    let p = args.problem();
    p.validate()?;
    if !(2..=SPLITS.len()).contains(&args.extrapolation_depth) {
        return Err(Failure::Usage(format!("extrapolation depth must be 2 to {}", SPLITS.len())));
    }
    Ok(p)
}

fn three_site_cmd(args: &ProblemArgs, density: bool, refine: bool) -> CmdResult {
    let mut r = Report::new("three-site");
    args.inputs(&mut r.inputs);
    r.inputs.insert("density".into(), json!(density));
    r.inputs.insert("refine".into(), json!(refine));
    let problem = problem_checked(args)?;
    let sol = three_site::three_site_correlator(&problem)?;
    let d = &sol.diagnostics;
    let drift = if refine {
        let fine = three_site::three_site_correlator(&problem.refined())?;
        let drift = (fine.p12p23 - sol.p12p23).abs();
        r.diag("refined_p12p23", json!(fine.p12p23));
        r.check("self-convergence under grid doubling", drift, 1e-7);
        Some(drift)
    } else {
        None
    };
    r.compare("p12p23", sol.p12p23, reference::P12P23_INFINITE, "homogeneous three-site value", drift, 1e-6);
    r.result("f1", json!(sol.f1));
    r.result("f2", json!(sol.f2));
    r.result("f3", json!(sol.f3));
    r.diag("g0_constant", json!({"re": d.g0_constant.re, "im": d.g0_constant.im}));
    r.diag("quadrature_error", json!(d.quadrature_error));
    r.diag("extrapolation_gap", json!(d.extrapolation_gap));
    r.diag("extrapolation_error", json!(d.extrapolation_error));
    r.diag("naive_g1_over_lambda2", json!(d.naive_g1_over_lambda2));
    r.diag("convolution_g1_over_lambda2", json!(d.convolution_g1_over_lambda2));
    r.diag("node_count", json!(d.node_count));
    r.check("imaginary part of F_k", d.imaginary_leakage, 1e-10);
    r.check("G1'(0)", d.g1_slope, 1e-10);
    r.check("lambda -> 0 limit of F_k", d.extrapolation_gap.iter().copied().fold(0.0, f64::max), 1e-6);

    if density {
        let d2 = two_site::density2(c64(0.0, 0.0))?;
        let c2 = three_site::density_checks(&d2);
        r.result("density2_p12", json!((&d2 * permutation_operator(&[1, 0])).trace().re));
        r.check("D2 trace", (c2.trace - 1.0).norm(), 1e-10);
        r.check("D2 hermiticity", c2.hermiticity, 1e-10);
        r.check("D2 positivity", (-c2.min_eigenvalue).max(0.0), 1e-8);

        let d3 = three_site::density3_with_splits(&problem, &SPLITS[..args.extrapolation_depth])?;
        let c3 = three_site::density_checks(&d3.matrix);
        let (g_last, g_first) = three_site::partial_trace_gaps(&d3.matrix)?;
        let p123 = permutation_operator(&[1, 2, 0]);
        r.result("density3_p12p23", json!((&d3.matrix * p123).trace().re));
        r.result("density3_min_eigenvalue", json!(c3.min_eigenvalue));
        r.diag("density3_extrapolation_error", json!(d3.extrapolation_error));
        r.diag("density3_constant_mismatch", json!(d3.constant_mismatch));
        r.diag("density3_odd_part", json!(d3.odd_part));
        r.check("D3 trace", (c3.trace - 1.0).norm(), 1e-8);
        r.check("D3 hermiticity", c3.hermiticity, 1e-8);
        r.check("D3 positivity", (-c3.min_eigenvalue).max(0.0), 1e-8);
        r.check("tr_3 D3 = D2", g_last, 1e-5);
        r.check("tr_1 D3 = D2", g_first, 1e-5);
    }
    Ok(r)
}

fn finite_tolerance(length: usize) -> f64 {
    match length {
        3 => 1e-13,
        6 => 1e-10,
        _ => 1e-8,
    }
}

fn parse_observables(s: &str) -> std::result::Result<Vec<Observable>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| match x {
            "p12" => Ok(Observable::P12),
            "p12p23" => Ok(Observable::P12P23),
            "rdm2" => Ok(Observable::Rdm2),
            "rdm3" => Ok(Observable::Rdm3),
            other => Err(Failure::Usage(format!("unknown observable `{other}`"))),
        })
        .collect()
}

/// Runs ED at one length and records energies, observables and checks under
/// `prefix`.
fn ed_into(r: &mut Report, length: usize, seed: u64, which: &[Observable], prefix: &str) -> std::result::Result<(), Failure> {
    let spec = ChainSpec::new(length)?;
    let gs = lattice_ed::ground_state_seeded(spec, seed)?;
    let obs = lattice_ed::observables(&gs, which);
    let key = |k: &str| format!("{prefix}{k}");
    let row = FINITE_CHAINS.iter().find(|c| c.0 == length);
    let tol = finite_tolerance(length);
    let citation = format!("finite-chain table, L = {length}");
    match row {
        Some(&(_, e, _)) => r.compare(&key("omega33"), gs.energy_per_site(), e, &citation, Some(gs.residual), tol),
        None => r.result(&key("omega33"), json!(gs.energy_per_site())),
    }
    if let Some(p) = obs.p12p23 {
        match row {
            Some(&(_, _, pp)) => r.compare(&key("p12p23"), p, pp, &citation, Some(gs.residual), tol),
            None => r.result(&key("p12p23"), json!(p)),
        }
        r.result(&key("p13"), json!(obs.p13.unwrap_or(f64::NAN)));
    }
    if let Some(p) = obs.p12 {
        r.result(&key("p12"), json!(p));
    }
    r.diag(
        &key("ground_state"),
        json!({
            "energy": gs.energy,
            "method": format!("{:?}", gs.method).to_lowercase(),
            "sector_dim": gs.sector.dim(),
            "degeneracy": gs.vectors.len(),
            "iterations": gs.iterations,
            "residual": gs.residual,
            "global_gap": gs.global_gap,
        }),
    );
    r.check(format!("{prefix}eigen-residual"), gs.residual, 1e-10);
    if let Some(gap) = gs.global_gap {
        r.check(format!("{prefix}balanced sector holds the global minimum"), (-gap).max(0.0), 1e-10);
    }
    if let Some(t) = obs.translation_defect {
        r.check(format!("{prefix}<P12> = E0/L"), t, 1e-12);
    }
    for (k, rho) in [(2, &obs.rdm2), (3, &obs.rdm3)] {
        let Some(rho) = rho else { continue };
        r.result(&key(&format!("rdm{k}")), real_matrix(rho));
        let ev = rho.clone().symmetric_eigenvalues();
        let min = ev.iter().copied().fold(f64::INFINITY, f64::min);
        r.diag(&key(&format!("rdm{k}_min_eigenvalue")), json!(min));
        r.check(format!("{prefix}rdm{k} trace"), (rho.trace() - 1.0).abs(), 1e-12);
        r.check(format!("{prefix}rdm{k} positivity"), (-min).max(0.0), 1e-10);
        if k == 2 {
            let p = permutation_operator(&[1, 0]).map(|z| z.re);
            let tp = (rho * p).trace();
            let p12 = obs.p12.unwrap_or(gs.energy_per_site());
            r.check(format!("{prefix}tr(P rdm2) = <P12>"), (tp - p12).abs(), 1e-12);
        }
    }
    Ok(())
}

fn ed_cmd(length: usize, observables: &str, seed: u64) -> CmdResult {
    let mut r = Report::new("ed");
    r.inputs.insert("length".into(), json!(length));
    r.inputs.insert("observables".into(), json!(observables));
    r.inputs.insert("seed".into(), json!(seed));
    let which = parse_observables(observables)?;
    ed_into(&mut r, length, seed, &which, "")?;
    Ok(r)
}

fn report_table1(args: &ProblemArgs, seed: u64) -> CmdResult {
    let mut r = Report::new("report-table1");
    args.inputs(&mut r.inputs);
    r.inputs.insert("seed".into(), json!(seed));
    let problem = problem_checked(args)?;
    for (length, _, _) in FINITE_CHAINS {
        ed_into(&mut r, length, seed, &[Observable::P12, Observable::P12P23], &format!("l{length}_"))?;
    }
    let w = two_site::omega(c64(0.0, 0.0))?;
    r.compare("infinite_omega33", w.re, reference::OMEGA_HOMOGENEOUS, "homogeneous two-site value", None, 1e-12);
    let sol = three_site::three_site_correlator(&problem)?;
    r.compare(
        "infinite_p12p23",
        sol.p12p23,
        reference::P12P23_INFINITE,
        "homogeneous three-site value",
        Some(sol.diagnostics.quadrature_error),
        1e-6,
    );
    let col = |k: &str| [3usize, 6, 9].map(|l| r.results[&format!("l{l}_{k}")].as_f64().unwrap_or(f64::NAN));
    let (w_rows, p_rows) = (col("omega33"), col("p12p23"));
    // finite-size values approach the thermodynamic ones monotonically
    let w_ok = w_rows[0] < w_rows[1] && w_rows[1] < w_rows[2] && w_rows[2] < w.re;
    let p_ok = sol.p12p23 < p_rows[2] && p_rows[2] < p_rows[1] && p_rows[1] < p_rows[0];
    r.check("omega33 increasing in L toward the limit", if w_ok { 0.0 } else { 1.0 }, 0.0);
    r.check("p12p23 decreasing in L toward the limit", if p_ok { 0.0 } else { 1.0 }, 0.0);
    Ok(r)
}

fn execute(cmd: &Command) -> CmdResult {
    match cmd {
        Command::VerifyAlgebra { samples, common } => verify_algebra(*samples, common.seed),
        Command::VerifyMatrices { points, common } => verify_matrices(*points, common.seed),
        Command::TwoSite { lambda, lambda_im, zeta_terms, .. } => two_site_cmd(*lambda, *lambda_im, *zeta_terms),
        Command::ThreeSite { problem, no_density, no_refine, .. } => three_site_cmd(problem, !no_density, !no_refine),
        Command::Ed { length, observables, common } => ed_cmd(*length, observables, common.seed),
        Command::ReportTable1 { problem, common } => report_table1(problem, common.seed),
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::VerifyAlgebra { common, .. }
        | Command::VerifyMatrices { common, .. }
        | Command::TwoSite { common, .. }
        | Command::ThreeSite { common, .. }
        | Command::Ed { common, .. }
        | Command::ReportTable1 { common, .. } => common,
    }
}

fn flag_name(arg: &str) -> Option<&str> {
    arg.strip_prefix("--").map(|s| s.split('=').next().unwrap_or(s))
}

/// Pulls `--config` out of `argv`, reads the file and appends its entries
/// as flags that the command line does not already set.
fn merge_config(argv: Vec<String>) -> std::result::Result<(Vec<String>, bool), String> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut it = argv.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or("--config needs a path")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok((rest, false)) };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let Some(sub_name) = rest.iter().skip(1).find(|a| !a.starts_with('-')).cloned() else {
        return Ok((rest, false));
    };
    let cmd = Cli::command();
    let Some(sub) = cmd.find_subcommand(&sub_name) else { return Ok((rest, false)) };
    let given: Vec<String> = rest.iter().filter_map(|a| flag_name(a)).map(str::to_string).collect();
    let mut threads_in_file = false;
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(format!("{path}:{}: expected `key = value`", n + 1))?;
        let (k, v) = (k.trim().replace('_', "-"), v.trim());
        let arg = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(k.as_str()))
            .ok_or(format!("{path}:{}: `{k}` is not an option of {sub_name}", n + 1))?;
        if given.contains(&k) {
            continue;
        }
        threads_in_file |= k == "threads";
        if arg.get_action().takes_values() {
            rest.push(format!("--{k}={v}"));
        } else {
            match v {
                "true" => rest.push(format!("--{k}")),
                "false" => {}
                _ => return Err(format!("{path}:{}: `{k}` expects true or false", n + 1)),
            }
        }
    }
    Ok((rest, threads_in_file))
}

fn thread_count(flag: Option<usize>, from_file: bool) -> std::result::Result<usize, String> {
    let env = match std::env::var(THREADS_ENV) {
        Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| format!("{THREADS_ENV} must be a positive integer"))?),
        Err(_) => None,
    };
    let n = match (flag, from_file, env) {
        (Some(n), false, _) => n,
        (_, _, Some(e)) => e,
        (Some(n), true, None) => n,
        (None, _, None) => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    if n == 0 {
        return Err("thread count must be positive".into());
    }
    Ok(n)
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run_with(argv: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (argv, threads_in_file) = match merge_config(argv) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            return 2;
        }
    };
    let common = common(&cli.command).clone();
    let threads = match thread_count(common.threads, threads_in_file) {
        Ok(n) => n,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return 2;
        }
    };
    let start = Instant::now();
    let report = pool.install(|| execute(&cli.command));
    let _ = writeln!(err, "{} threads, {:.2} s", threads, start.elapsed().as_secs_f64());
    match report {
        Ok(mut report) => {
            report.inputs.insert("format".into(), json!(format!("{:?}", common.format).to_lowercase()));
            let _ = out.write_all(report.render(common.format).as_bytes());
            let failures = report.failures();
            for f in &failures {
                let _ = writeln!(err, "verification failed: {} ({:e} > {:e})", f.name, f.value, f.tolerance);
            }
            if failures.is_empty() {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "verification failed: {e}");
            1
        }
    }
}

/// [`run_with`] on the process's stdout and stderr.
pub fn run<I: IntoIterator<Item = String>>(argv: I) -> i32 {
    let out = std::io::stdout();
    let err = std::io::stderr();
    run_with(argv.into_iter().collect(), &mut out.lock(), &mut err.lock())
}
