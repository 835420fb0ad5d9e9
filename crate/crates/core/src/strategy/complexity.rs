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

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{InsuranceInfidelity, TwoCopyAnalysis};
use crate::error::{Error, Result};

/// A copy count that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Copies {
    Finite(f64),
    Unbounded,
}

impl Copies {
    pub fn value(self) -> Option<f64> {
        match self {
            Copies::Finite(v) => Some(v),
            Copies::Unbounded => None,
        }
    }

    /// `f64::INFINITY` for the unbounded case.
    pub fn as_f64(self) -> f64 {
        self.value().unwrap_or(f64::INFINITY)
    }

    fn from_f64(v: f64) -> Copies {
        if v.is_finite() {
            Copies::Finite(v)
        } else {
            Copies::Unbounded
        }
    }
}

impl Serialize for Copies {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Copies::Finite(v) => s.serialize_f64(*v),
            Copies::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for Copies {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Copies::Finite(v)),
            Raw::Text(t) if t == "unbounded" => Ok(Copies::Unbounded),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("unexpected `{t}`"))),
        }
    }
}

/// Which formula produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    SingleCopy,
    TwoCopy,
    DimensionExpansion,
}

/// Number of copies needed to reject fakes with infidelity `epsilon` at
/// confidence `1 - delta`. `exact_n` is the log-ratio form before rounding up.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub epsilon: f64,
    pub delta: f64,
    pub exact_n: Copies,
    pub approx_n: Copies,
    pub formula: FormulaId,
}

pub(crate) fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::OutOfRange(format!(
            "{name} must lie in (0, 1), got {v}"
        )));
    }
    Ok(())
}

/// `N = ln δ / ln[1 - (1-λ₂)ε]`, with the first-order form
/// `ln(1/δ) / ((1-λ₂)ε)`.
pub fn single_copy_complexity(lambda2: f64, epsilon: f64, delta: f64) -> Result<ComplexityReport> {
    check_unit_interval("epsilon", epsilon)?;
    check_unit_interval("delta", delta)?;
    if !(-1e-9..=1.0 + 1e-9).contains(&lambda2) {
        return Err(Error::OutOfRange(format!(
            "lambda2 must lie in [0, 1], got {lambda2}"
        )));
    }
    let gap = 1.0 - lambda2.clamp(0.0, 1.0);
    let (exact_n, approx_n) = if gap <= 0.0 {
        (Copies::Unbounded, Copies::Unbounded)
    } else {
        (
            Copies::from_f64(delta.ln() / (-gap * epsilon).ln_1p()),
            Copies::from_f64((1.0 / delta).ln() / (gap * epsilon)),
        )
    };
    Ok(ComplexityReport {
        epsilon,
        delta,
        exact_n,
        approx_n,
        formula: FormulaId::SingleCopy,
    })
}

/// Two-copy complexity from the leading-order pass probability
/// `p = 1 - 2(1-λ⋆)ε`: `exact_n = 2 ln δ / ln p` and
/// `approx_n = ln(1/δ) / ((1-λ⋆)ε)`.
pub fn two_copy_complexity(
    analysis: &TwoCopyAnalysis,
    epsilon: f64,
    delta: f64,
) -> Result<ComplexityReport> {
    check_unit_interval("epsilon", epsilon)?;
    check_unit_interval("delta", delta)?;
    if !analysis.local_max_ok {
        return Err(Error::HypothesisViolated(format!(
            "local maximum condition fails: xi* + gamma*/2 = {} >= 1",
            analysis.xi_star + analysis.gamma_star / 2.0
        )));
    }
    if analysis.lambda_star >= 1.0 {
        return Err(Error::HypothesisViolated(format!(
            "lambda* = {} is not below 1",
            analysis.lambda_star
        )));
    }
    let bound = match analysis.eps_max(epsilon) {
        InsuranceInfidelity::Bounded(v) => Some(v),
        InsuranceInfidelity::Ambiguous { case1 } => Some(case1),
        InsuranceInfidelity::Unbounded => None,
    };
    if let Some(b) = bound {
        if epsilon > b {
            return Err(Error::HypothesisViolated(format!(
                "epsilon = {epsilon} exceeds the insurance infidelity {b}"
            )));
        }
    }
    let gap = 1.0 - analysis.lambda_star.max(0.0);
    let p = 1.0 - 2.0 * gap * epsilon;
    if p <= 0.0 {
        return Err(Error::OutOfRange(format!(
            "leading-order pass probability {p} is not positive"
        )));
    }
    Ok(ComplexityReport {
        epsilon,
        delta,
        exact_n: Copies::from_f64(2.0 * delta.ln() / p.ln()),
        approx_n: Copies::from_f64((1.0 / delta).ln() / (gap * epsilon)),
        formula: FormulaId::TwoCopy,
    })
}
