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

use thiserror::Error;

use crate::strategy::TwoCopyAnalysis;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("empty factor list")]
    EmptyFactors,

    #[error("dense dimension {dim} exceeds the cap of {cap}; use a matrix-free form or force dense construction")]
    DenseCapExceeded { dim: usize, cap: usize },

    #[error("operator is not Hermitian (max |A - A^dagger| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("iterative eigensolver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph file line {line}: {message}")]
    GraphParse { line: usize, message: String },

    #[error("code length {got} does not match graph size {expected}")]
    CodeLength { expected: usize, got: usize },

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("target state is not fixed by the strategy (residual {residual:.3e})")]
    TargetNotFixed { residual: f64 },

    #[error("two-copy strategy is not symmetric under copy exchange (deviation {deviation:.3e})")]
    NotSymmetric { deviation: f64 },

    #[error("lambda_star = {} >= 1: two-copy formula does not apply", .analysis.lambda_star)]
    LambdaStarAtLeastOne { analysis: Box<TwoCopyAnalysis> },

    #[error("two-copy hypotheses violated: {0}")]
    HypothesisViolated(String),

    #[error("channel is not trace preserving (max deviation {deviation:.3e})")]
    NotTracePreserving { deviation: f64 },

    #[error(
        "Kraus operator {index} does not map the target onto |0...0> (residual {residual:.3e})"
    )]
    KrausCondition { index: usize, residual: f64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid GHZ-like specification: {0}")]
    InvalidGhz(String),

    #[error("invalid trial configuration: {0}")]
    InvalidTrialConfig(String),

    #[error("strategy has neither a test decomposition nor a protocol form")]
    NoProtocol,

    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),
}
