// Copyright 2026 The memverify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 when the two-copy
//! formula's hypotheses fail (the report is still written).

use std::f64::consts::FRAC_PI_4;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DVector;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ghz::{n_de_k, GhzSpec};
use crate::graph_strategy::{omega_graph, GraphStrategy};
use crate::graphs::Graph;
use crate::montecarlo::{
    fidelity_experiment, simulate_protocol, FidelityResult, SimulationResult, Source, TrialConfig,
};
use crate::qcore::{c64, gates, Ket};
use crate::strategy::{
    lambda2, single_copy_complexity, two_copy_analysis, two_copy_complexity, ComplexityReport,
    InsuranceInfidelity, Strategy, TwoCopyAnalysis, TwoCopyOperator,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Tolerance for the symmetry and Hermiticity checks of `analyze`.
const ANALYSIS_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "memverify",
    version,
    about = "Sample complexity and simulation of memory-assisted state verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral analysis and copy count for a graph or strategy file.
    Analyze(AnalyzeArgs),
    /// Copy-count tables for the Bell and GHZ-like comparisons.
    Curves(CurvesArgs),
    /// Sample protocol runs.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
#[group(id = "input", required = true, multiple = false)]
pub struct InputArgs {
    /// Edge-list graph file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Strategy JSON file.
    #[arg(long)]
    pub strategy: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 1e-3)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub delta: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Bell state: graph, Pauli and globally optimal strategies against ε.
    Fig3,
    /// Two-qubit GHZ-like states: dimension expansion against θ.
    Fig4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `A:B:N`, `N >= 2` evenly spaced points from `A` to `B` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl ThetaGrid {
    pub fn points(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        (0..self.steps)
            .map(|i| self.start + span * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

impl Default for ThetaGrid {
    fn default() -> Self {
        ThetaGrid {
            start: FRAC_PI_4 / 50.0,
            stop: FRAC_PI_4,
            steps: 50,
        }
    }
}

impl FromStr for ThetaGrid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(format!("expected A:B:N, got `{s}`"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
        let (start, stop) = (num(a)?, num(b)?);
        let steps: usize = n.trim().parse().map_err(|e| format!("`{n}`: {e}"))?;
        if steps < 2 {
            return Err("grid needs at least 2 steps".into());
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(format!("need finite A < B, got {start}:{stop}"));
        }
        Ok(ThetaGrid { start, stop, steps })
    }
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    #[arg(long, value_enum)]
    pub figure: Figure,
    /// Angle grid for fig4, in radians within [0, π/4].
    #[arg(long)]
    pub theta_grid: Option<ThetaGrid>,
    /// Largest stored-copy count for fig4.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draw each copy from `F|ψ><ψ| + (1-F)|ψ⊥><ψ⊥|` instead of `|ψ>`, and
    /// report the fidelity estimate for graph inputs. For graphs `ψ⊥` is
    /// `Z` on vertex 1 applied to `|G>`.
    #[arg(long)]
    pub fidelity: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Formats with 10 significant digits, no exponent for moderate values.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let exp = v.abs().log10().floor() as i32;
    let sci = format!("{v:.9e}");
    // Rounding can push the mantissa to 10.0; read the exponent back.
    let exp = sci
        .split('e')
        .nth(1)
        .and_then(|e| e.parse::<i32>().ok())
        .unwrap_or(exp);
    if (-5..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let (mant, e) = sci.split_once('e').expect("scientific format");
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{e}")
    }
}

/// A table with named columns and an optional leading comment.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub comment: Option<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(c) = &self.comment {
            for line in c.lines() {
                let _ = writeln!(out, "# {line}");
            }
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_sig(v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<Value>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| number(v)).collect())
            .collect();
        let mut doc = json!({ "columns": self.columns, "rows": rows });
        if let Some(c) = &self.comment {
            doc["note"] = json!(c);
        }
        pretty(&doc)
    }
}

/// A JSON number rounded to 10 significant digits, or a string for
/// non-finite values.
fn number(v: f64) -> Value {
    let s = format_sig(v);
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => json!(x),
        _ => json!(s),
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

/// Log-spaced ε in `[1e-4, 1e-1]`.
fn fig3_epsilons() -> Vec<f64> {
    let m = 30;
    (0..m)
        .map(|i| 10f64.powf(-4.0 + 3.0 * i as f64 / (m - 1) as f64))
        .collect()
}

pub fn fig3_table() -> Result<Table> {
    let delta = 1e-3;
    let graph = TwoCopyAnalysis::from_parts(0.0, 0.0, 0.0, 0.0);
    let mut rows = Vec::new();
    for eps in fig3_epsilons() {
        rows.push(vec![
            eps,
            two_copy_complexity(&graph, eps, delta)?.exact_n.as_f64(),
            single_copy_complexity(1.0 / 3.0, eps, delta)?
                .exact_n
                .as_f64(),
            single_copy_complexity(0.0, eps, delta)?.exact_n.as_f64(),
        ]);
    }
    Ok(Table {
        comment: None,
        columns: ["epsilon", "N_graph", "N_PLM", "N_glob"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

pub fn fig4_table(grid: &ThetaGrid, kmax: usize) -> Result<Table> {
    if kmax == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let (eps, delta) = (1e-3, 1e-3);
    let glob = single_copy_complexity(0.0, eps, delta)?.approx_n.as_f64();
    let mut rows = Vec::new();
    for theta in grid.points() {
        if !(0.0..=FRAC_PI_4 + 1e-12).contains(&theta) {
            return Err(Error::OutOfRange(format!(
                "theta {theta} is outside [0, pi/4]"
            )));
        }
        let spec = GhzSpec::bipartite(theta.min(FRAC_PI_4))?;
        let mut row = vec![theta];
        for k in 1..=kmax {
            row.push(n_de_k(&spec, k, eps, delta)?.approx_n.as_f64());
        }
        row.push(glob);
        rows.push(row);
    }
    let mut columns = vec!["theta".to_string()];
    columns.extend((1..=kmax).map(|k| format!("N_de_{k}")));
    columns.push("N_glob".into());
    Ok(Table {
        comment: Some(
            "epsilon = delta = 0.001; first-order copy counts.\nN_WH1 and N_WH2 are not included."
                .into(),
        ),
        columns,
        rows,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub exit: i32,
    /// Shown on stderr.
    pub message: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            exit: EXIT_OK,
            message: None,
        }
    }
}

fn eps_max_fields(a: &TwoCopyAnalysis, eps: f64) -> (Value, &'static str) {
    match a.eps_max(eps) {
        InsuranceInfidelity::Bounded(v) => (number(v), "bounded"),
        InsuranceInfidelity::Ambiguous { case1 } => (number(case1), "ambiguous"),
        InsuranceInfidelity::Unbounded => (json!("unbounded"), "unbounded"),
    }
}

fn copies_value(c: &ComplexityReport) -> (Value, Value) {
    let v = |x: crate::strategy::Copies| match x.value() {
        Some(f) => number(f),
        None => json!("unbounded"),
    };
    (v(c.exact_n), v(c.approx_n))
}

fn analyze_two_copy<T: TwoCopyOperator + ?Sized>(s: &T, eps: f64, delta: f64) -> Result<Outcome> {
    let analysis = match two_copy_analysis(s, ANALYSIS_TOL) {
        Ok(a) => a,
        Err(Error::LambdaStarAtLeastOne { analysis }) => *analysis,
        Err(e @ Error::NotSymmetric { .. }) => {
            let doc =
                json!({ "kind": "two_copy", "formula_applies": false, "reason": e.to_string() });
            return Ok(Outcome {
                text: pretty(&doc),
                exit: EXIT_PRECONDITION,
                message: Some(e.to_string()),
            });
        }
        Err(e) => return Err(e),
    };
    let (eps_max, regime) = eps_max_fields(&analysis, eps);
    let mut doc = json!({
        "kind": "two_copy",
        "epsilon": number(eps),
        "delta": number(delta),
        "lambda_star": number(analysis.lambda_star),
        "gamma_star": number(analysis.gamma_star),
        "xi_star": number(analysis.xi_star),
        "local_max_ok": analysis.local_max_ok,
        "eps_max": eps_max,
        "eps_max_regime": regime,
    });
    match two_copy_complexity(&analysis, eps, delta) {
        Ok(c) => {
            let (exact, approx) = copies_value(&c);
            doc["exact_N"] = exact;
            doc["approx_N"] = approx;
            doc["formula_applies"] = json!(true);
            Ok(Outcome::ok(pretty(&doc)))
        }
        Err(e @ (Error::HypothesisViolated(_) | Error::OutOfRange(_))) => {
            doc["formula_applies"] = json!(false);
            doc["reason"] = json!(e.to_string());
            Ok(Outcome {
                text: pretty(&doc),
                exit: EXIT_PRECONDITION,
                message: Some(e.to_string()),
            })
        }
        Err(e) => Err(e),
    }
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<Outcome> {
    crate::strategy::check_unit_interval("epsilon", args.epsilon)?;
    crate::strategy::check_unit_interval("delta", args.delta)?;
    if let Some(path) = &args.input.graph {
        let gs = omega_graph(&Graph::from_file(path)?)?;
        return analyze_two_copy(&gs, args.epsilon, args.delta);
    }
    let path = args
        .input
        .strategy
        .as_ref()
        .expect("clap enforces one input");
    let s = Strategy::from_file(path)?;
    match s.copies() {
        1 => {
            let l2 = lambda2(&s)?;
            let c = single_copy_complexity(l2, args.epsilon, args.delta)?;
            let (exact, approx) = copies_value(&c);
            let doc = json!({
                "kind": "single_copy",
                "epsilon": number(args.epsilon),
                "delta": number(args.delta),
                "lambda2": number(l2),
                "exact_N": exact,
                "approx_N": approx,
            });
            Ok(Outcome::ok(pretty(&doc)))
        }
        2 => analyze_two_copy(&s, args.epsilon, args.delta),
        k => Err(Error::InvalidStrategy(format!(
            "analyze supports 1 or 2 copies, got {k}"
        ))),
    }
}

pub fn cmd_curves(args: &CurvesArgs) -> Result<Outcome> {
    let table = match args.figure {
        Figure::Fig3 => fig3_table()?,
        Figure::Fig4 => fig4_table(&args.theta_grid.unwrap_or_default(), args.k)?,
    };
    Ok(Outcome::ok(match args.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }))
}

/// Normalized `|e_j> - <ψ|e_j>|ψ>` for the basis vector with the largest
/// remainder.
fn orthogonal_partner(psi: &Ket) -> Result<Ket> {
    let amps = psi.amplitudes();
    let j = (0..amps.len())
        .min_by(|&a, &b| amps[a].norm().total_cmp(&amps[b].norm()))
        .expect("nonempty ket");
    let mut e = DVector::zeros(amps.len());
    e[j] = c64(1.0);
    let rest = &e - amps * amps[j].conj();
    let norm = rest.norm();
    Ket::new(rest / c64(norm), psi.dims().to_vec())
}

fn z_on_first(g: &Graph, psi: &Ket) -> Result<Ket> {
    let z = gates::embed(&gates::pauli_z(), 0, g.n())?;
    Ket::new(z.apply(psi.amplitudes()), psi.dims().to_vec())
}

fn source(psi: &Ket, partner: Ket, fidelity: Option<f64>) -> Result<Source> {
    Ok(match fidelity {
        None => Source::Pure(psi.clone()),
        Some(f) if (0.0..=1.0).contains(&f) => {
            Source::Mixture(vec![(f, psi.clone()), (1.0 - f, partner)])
        }
        Some(f) => return Err(Error::OutOfRange(format!("fidelity {f} is outside [0, 1]"))),
    })
}

#[derive(Serialize)]
struct SimulateReport {
    #[serde(flatten)]
    simulation: SimulationResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    fidelity: Option<Value>,
}

fn fidelity_fields(f: &FidelityResult) -> Value {
    json!({ "f_hat": number(f.f_hat), "f_true": number(f.f_true), "f_stderr": number(f.f_stderr) })
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<Outcome> {
    let report = if let Some(path) = &args.input.graph {
        let g = Graph::from_file(path)?;
        let gs: GraphStrategy = omega_graph(&g)?;
        let psi = gs.target().clone();
        let src = source(&psi, z_on_first(&g, &psi)?, args.fidelity)?;
        let cfg = TrialConfig::new(args.trials, args.seed, src)?;
        if args.fidelity.is_some() {
            let f = fidelity_experiment(&gs, &cfg)?;
            SimulateReport {
                fidelity: Some(fidelity_fields(&f)),
                simulation: f.simulation,
            }
        } else {
            SimulateReport {
                simulation: simulate_protocol(&gs, &cfg)?,
                fidelity: None,
            }
        }
    } else {
        let path = args
            .input
            .strategy
            .as_ref()
            .expect("clap enforces one input");
        let s = Strategy::from_file(path)?;
        let psi = s.target().clone();
        let src = source(&psi, orthogonal_partner(&psi)?, args.fidelity)?;
        let cfg = TrialConfig::new(args.trials, args.seed, src)?;
        SimulateReport {
            simulation: simulate_protocol(&s, &cfg)?,
            fidelity: None,
        }
    };
    Ok(Outcome::ok(pretty(&report)))
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Curves(c) => cmd_curves(c),
        Command::Simulate(s) => cmd_simulate(s),
    }
}

fn out_path(cli: &Cli) -> Option<&Path> {
    match &cli.command {
        Command::Analyze(a) => a.out.as_deref(),
        Command::Curves(c) => c.out.as_deref(),
        Command::Simulate(s) => s.out.as_deref(),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    if let Err(e) = emit(out_path(&cli), &outcome.text) {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    if let Some(m) = &outcome.message {
        eprintln!("warning: {m}");
    }
    outcome.exit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(6907.755278982137), "6907.755279");
        assert_eq!(format_sig(1e-4), "0.0001");
        assert_eq!(format_sig(0.1), "0.1");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(69077552.78982137), "69077552.79");
        assert_eq!(format_sig(1.23456789012e12), "1.23456789e12");
        assert_eq!(format_sig(9.9999999999), "10");
        assert_eq!(format_sig(-2.5e-7), "-2.5e-7");
    }

    #[test]
    fn theta_grid_parsing() {
        let g: ThetaGrid = "0.1:0.7:4".parse().unwrap();
        assert_eq!(g.points().len(), 4);
        assert!((g.points()[3] - 0.7).abs() < 1e-15);
        assert!("0.1:0.7:1".parse::<ThetaGrid>().is_err());
        assert!("0.7:0.1:3".parse::<ThetaGrid>().is_err());
        assert!("0.1:0.7".parse::<ThetaGrid>().is_err());
        assert_eq!(
            ThetaGrid::default().points().last().copied(),
            Some(FRAC_PI_4)
        );
    }

    #[test]
    fn fig3_reference_row() {
        let t = fig3_table().unwrap();
        assert_eq!(t.rows.len(), 30);
        assert!((t.rows[0][0] - 1e-4).abs() < 1e-18);
        assert!((t.rows[29][0] - 1e-1).abs() < 1e-15);
        let ln_d = 1e-3f64.ln();
        for r in &t.rows {
            assert!((r[3] - ln_d / (-r[0]).ln_1p()).abs() < 1e-9 * r[3]);
            assert!((r[2] - ln_d / (-2.0 * r[0] / 3.0).ln_1p()).abs() < 1e-9 * r[2]);
            assert!((r[1] - 2.0 * ln_d / (-2.0 * r[0]).ln_1p()).abs() < 1e-9 * r[1]);
        }
        assert!(t.to_csv().starts_with("epsilon,N_graph,N_PLM,N_glob\n"));
    }

    #[test]
    fn fig4_shape() {
        let t = fig4_table(&ThetaGrid::default(), 4).unwrap();
        assert_eq!(
            t.columns,
            ["theta", "N_de_1", "N_de_2", "N_de_3", "N_de_4", "N_glob"]
        );
        let last = t.rows.last().unwrap();
        assert!((last[2] / (1250.0 * 1000f64.ln()) - 1.0).abs() < 1e-12);
        let csv = t.to_csv();
        assert!(csv.starts_with("# "));
        assert!(csv.ends_with('\n'));
        let bad = ThetaGrid {
            start: 0.1,
            stop: 1.0,
            steps: 3,
        };
        assert!(fig4_table(&bad, 4).is_err());
    }

    #[test]
    fn partner_is_orthogonal() {
        let psi = crate::qcore::bell_ket(0, 0);
        let p = orthogonal_partner(&psi).unwrap();
        assert!(psi.inner(&p).norm() < 1e-12);
    }
}
