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

//! Protocol-level Monte Carlo and a brute-force worst-case fake oracle.
//!
//! Trial `t` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `t`, so
//! pass counts do not depend on how trials are scheduled across threads.

mod oracle;

pub use oracle::{worst_case_oracle, OracleOptions, WorstCaseReport};

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_strategy::{
    bell_outcome_probabilities, decide_parity_pass, fidelity_from_passrate, split_outcome,
    GraphStrategy,
};
use crate::graphs::GraphCode;
use crate::qcore::{Ket, C64, TOL};
use crate::strategy::Strategy;

/// Where each copy comes from.
#[derive(Clone, Debug)]
pub enum Source {
    /// Every copy is the same pure state.
    Pure(Ket),
    /// Two-copy protocols only: first copy `σ`, second copy `σ'`.
    PurePair(Ket, Ket),
    /// Every copy is drawn independently from a weighted list of pure states.
    Mixture(Vec<(f64, Ket)>),
}

impl Source {
    fn is_iid(&self) -> bool {
        !matches!(self, Source::PurePair(..))
    }

    /// Components and weights available to copy `c`.
    fn components(&self, c: usize) -> Vec<(f64, &Ket)> {
        match self {
            Source::Pure(k) => vec![(1.0, k)],
            Source::PurePair(a, b) => vec![(1.0, if c == 0 { a } else { b })],
            Source::Mixture(items) => items.iter().map(|(w, k)| (*w, k)).collect(),
        }
    }

    /// `Σ_i w_i |<ψ|σ_i>|²` over the i.i.d. components.
    pub fn fidelity_with(&self, psi: &Ket) -> Result<f64> {
        if !self.is_iid() {
            return Err(Error::InvalidTrialConfig(
                "fidelity needs an i.i.d. source".into(),
            ));
        }
        Ok(self
            .components(0)
            .iter()
            .map(|(w, k)| w * psi.inner(k).norm_sqr())
            .sum::<f64>()
            .clamp(0.0, 1.0))
    }
}

#[derive(Clone, Debug)]
pub struct TrialConfig {
    pub trials: u64,
    pub seed: u64,
    pub source: Source,
}

impl TrialConfig {
    pub fn new(trials: u64, seed: u64, source: Source) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidTrialConfig("trials must be positive".into()));
        }
        let cfg = TrialConfig {
            trials,
            seed,
            source,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if let Source::Mixture(items) = &self.source {
            if items.is_empty() {
                return Err(Error::InvalidTrialConfig("empty mixture".into()));
            }
            let total: f64 = items.iter().map(|(w, _)| w).sum();
            if (total - 1.0).abs() > 1e-12 || items.iter().any(|(w, _)| *w < 0.0) {
                return Err(Error::InvalidTrialConfig(format!(
                    "mixture weights must be nonnegative and sum to 1, got {total}"
                )));
            }
        }
        for c in 0..2 {
            for (_, k) in self.source.components(c) {
                k.ensure_normalized(TOL)?;
            }
        }
        Ok(())
    }
}

/// A verifier that can be run trial by trial.
#[derive(Clone, Copy, Debug)]
pub enum Verifier<'a> {
    /// Pick a test by its probability and accept with its Born probability.
    Tests(&'a Strategy),
    /// Per-pair Bell measurements followed by the parity decision.
    Graph(&'a GraphStrategy),
}

impl<'a> From<&'a Strategy> for Verifier<'a> {
    fn from(s: &'a Strategy) -> Self {
        Verifier::Tests(s)
    }
}

impl<'a> From<&'a GraphStrategy> for Verifier<'a> {
    fn from(g: &'a GraphStrategy) -> Self {
        Verifier::Graph(g)
    }
}

impl Verifier<'_> {
    fn copies(&self) -> usize {
        match self {
            Verifier::Tests(s) => s.copies(),
            Verifier::Graph(_) => 2,
        }
    }

    fn single_dim(&self) -> usize {
        match self {
            Verifier::Tests(s) => s.target().dim(),
            Verifier::Graph(g) => g.target().dim(),
        }
    }

    /// `<x|Ω|x>` for a product input.
    fn omega_expectation(&self, x: &DVector<C64>) -> f64 {
        match self {
            Verifier::Tests(s) => s.omega().expectation(x).re,
            Verifier::Graph(g) => g.expectation(x),
        }
    }
}

/// Outcome of a simulated run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationResult {
    pub passes: u64,
    pub trials: u64,
    pub p_emp: f64,
    pub stderr: f64,
    pub seed: u64,
}

/// All component tuples, one per copy, with their joint weight and product
/// state.
fn product_inputs(source: &Source, copies: usize) -> Vec<(f64, Vec<usize>, DVector<C64>)> {
    let comps: Vec<Vec<(f64, &Ket)>> = (0..copies).map(|c| source.components(c)).collect();
    let mut out = vec![(
        1.0,
        Vec::new(),
        DVector::from_element(1, C64::new(1.0, 0.0)),
    )];
    for list in &comps {
        let mut next = Vec::new();
        for (w, idx, v) in &out {
            for (i, (wi, k)) in list.iter().enumerate() {
                let mut idx = idx.clone();
                idx.push(i);
                next.push((w * wi, idx, v.kronecker(k.amplitudes())));
            }
        }
        out = next;
    }
    out
}

fn check_source(v: &Verifier, cfg: &TrialConfig) -> Result<()> {
    cfg.validate()?;
    if matches!(cfg.source, Source::PurePair(..)) && v.copies() != 2 {
        return Err(Error::InvalidTrialConfig(
            "a state pair needs a two-copy protocol".into(),
        ));
    }
    for c in 0..v.copies().min(2) {
        for (_, k) in cfg.source.components(c) {
            if k.dim() != v.single_dim() {
                return Err(Error::DimensionMismatch(format!(
                    "source state has dimension {}, protocol expects {}",
                    k.dim(),
                    v.single_dim()
                )));
            }
        }
    }
    Ok(())
}

/// Exact pass probability `E[<x|Ω|x>]` over the source's product inputs.
pub fn exact_pass_probability<'a>(v: impl Into<Verifier<'a>>, source: &Source) -> Result<f64> {
    let v = v.into();
    let cfg = TrialConfig {
        trials: 1,
        seed: 0,
        source: source.clone(),
    };
    check_source(&v, &cfg)?;
    Ok(product_inputs(source, v.copies())
        .iter()
        .map(|(w, _, x)| w * v.omega_expectation(x))
        .sum())
}

/// One trial: RNG and input index in, decision out.
type TrialFn = dyn Fn(&mut ChaCha8Rng, usize) -> bool + Sync;

fn sample_index<R: Rng>(rng: &mut R, cdf: &[f64]) -> usize {
    let u: f64 = rng.random::<f64>() * cdf[cdf.len() - 1];
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
}

fn cumulative(weights: impl Iterator<Item = f64>) -> Vec<f64> {
    weights
        .scan(0.0, |acc, w| {
            *acc += w;
            Some(*acc)
        })
        .collect()
}

/// Run `cfg.trials` independent protocol rounds.
pub fn simulate_protocol<'a>(
    v: impl Into<Verifier<'a>>,
    cfg: &TrialConfig,
) -> Result<SimulationResult> {
    let v = v.into();
    check_source(&v, cfg)?;
    let copies = v.copies();
    let comps: Vec<Vec<(f64, &Ket)>> = (0..copies).map(|c| cfg.source.components(c)).collect();
    let comp_cdfs: Vec<Vec<f64>> = comps
        .iter()
        .map(|list| cumulative(list.iter().map(|(w, _)| *w)))
        .collect();
    let inputs = product_inputs(&cfg.source, copies);
    // Row-major position of a component tuple inside `inputs`.
    let position = |idx: &[usize]| -> usize {
        idx.iter()
            .zip(&comps)
            .fold(0, |acc, (&i, list)| acc * list.len() + i)
    };

    let trial_pass: Box<TrialFn> = match v {
        Verifier::Tests(s) => {
            let tests = s.decomposition().ok_or(Error::NoProtocol)?;
            let test_cdf = cumulative(tests.iter().map(|t| t.p));
            let table: Vec<Vec<f64>> = inputs
                .iter()
                .map(|(_, _, x)| {
                    tests
                        .iter()
                        .map(|t| t.op.expectation(x).re.clamp(0.0, 1.0))
                        .collect()
                })
                .collect();
            Box::new(move |rng: &mut ChaCha8Rng, input: usize| {
                let l = sample_index(rng, &test_cdf);
                rng.random::<f64>() < table[input][l]
            })
        }
        Verifier::Graph(g) => {
            let n = g.graph().n();
            let graph = g.graph().clone();
            let cdfs: Vec<Vec<f64>> = inputs
                .iter()
                .map(|(_, _, x)| cumulative(bell_outcome_probabilities(n, x).into_iter()))
                .collect();
            Box::new(move |rng: &mut ChaCha8Rng, input: usize| {
                let outcome = sample_index(rng, &cdfs[input]);
                let (b, b_prime) = split_outcome(n, outcome);
                decide_parity_pass(
                    &graph,
                    &GraphCode::from_index(b, n),
                    &GraphCode::from_index(b_prime, n),
                )
                .expect("codes match the graph")
            })
        }
    };

    let passes: u64 = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(t);
            let idx: Vec<usize> = comp_cdfs
                .iter()
                .map(|cdf| sample_index(&mut rng, cdf))
                .collect();
            u64::from(trial_pass(&mut rng, position(&idx)))
        })
        .sum();
    let p_emp = passes as f64 / cfg.trials as f64;
    Ok(SimulationResult {
        passes,
        trials: cfg.trials,
        p_emp,
        stderr: (p_emp * (1.0 - p_emp) / cfg.trials as f64).sqrt(),
        seed: cfg.seed,
    })
}

/// Estimated and true fidelity of an i.i.d. source.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelityResult {
    pub f_hat: f64,
    pub f_true: f64,
    /// Standard error of `f_hat`, propagated from the pass rate.
    pub f_stderr: f64,
    pub simulation: SimulationResult,
}

pub fn fidelity_experiment(gs: &GraphStrategy, ensemble: &TrialConfig) -> Result<FidelityResult> {
    if !ensemble.source.is_iid() {
        return Err(Error::InvalidTrialConfig(
            "fidelity estimation needs both copies from the same source".into(),
        ));
    }
    let simulation = simulate_protocol(gs, ensemble)?;
    let f_hat = fidelity_from_passrate(simulation.p_emp)?;
    let f_stderr = if f_hat > 0.0 {
        simulation.stderr / (2.0 * f_hat)
    } else {
        f64::INFINITY
    };
    Ok(FidelityResult {
        f_hat,
        f_true: ensemble.source.fidelity_with(gs.target())?,
        f_stderr,
        simulation,
    })
}
