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

//! GHZ-like states, dimension expansion and the four-dimensional MUB strategy.

mod mub;

pub use mub::{mub_bases, mub_strategy_d4, MubBasis};

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::qcore::{c64, Ket, DENSE_CAP};
use crate::strategy::{check_unit_interval, ComplexityReport, Copies, FormulaId};

/// `Σ_j s_j |j>^{⊗n}` over `n` parties of local dimension `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct GhzSpec {
    n: usize,
    d: usize,
    coeffs: Vec<f64>,
}

impl GhzSpec {
    /// Coefficients must be nonnegative, sorted descending and of unit
    /// square-sum.
    pub fn new(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        let d = coeffs.len();
        if n < 2 {
            return Err(Error::InvalidGhz(format!(
                "need at least 2 parties, got {n}"
            )));
        }
        if d < 2 {
            return Err(Error::InvalidGhz(format!(
                "need local dimension >= 2, got {d}"
            )));
        }
        if coeffs.iter().any(|&s| s.is_nan() || s < 0.0) {
            return Err(Error::InvalidGhz("coefficients must be nonnegative".into()));
        }
        if coeffs.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidGhz(
                "coefficients must be sorted descending".into(),
            ));
        }
        let norm: f64 = coeffs.iter().map(|s| s * s).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidGhz(format!("square-sum is {norm}, not 1")));
        }
        Ok(GhzSpec { n, d, coeffs })
    }

    /// `cos θ|00> + sin θ|11>` for `θ ∈ [0, π/4]`.
    pub fn bipartite(theta: f64) -> Result<Self> {
        GhzSpec::new(2, vec![theta.cos(), theta.sin()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

pub fn ghz_ket(spec: &GhzSpec) -> Result<Ket> {
    let dim = spec
        .d
        .checked_pow(spec.n as u32)
        .filter(|&dim| dim <= DENSE_CAP)
        .ok_or(Error::DenseCapExceeded {
            dim: usize::MAX,
            cap: DENSE_CAP,
        })?;
    // |j...j> sits at j (d^{n-1} + ... + 1).
    let stride: usize = (0..spec.n).map(|p| spec.d.pow(p as u32)).sum();
    let mut v = DVector::zeros(dim);
    for (j, &s) in spec.coeffs.iter().enumerate() {
        v[j * stride] = c64(s);
    }
    Ket::new(v, vec![spec.d; spec.n])
}

/// The spec of `k` copies viewed as one GHZ-like state of local dimension
/// `d^k`, plus the map from each sorted level to its product index
/// `j_1 d^{k-1} + ... + j_k`. Ties keep product-index order.
pub fn tensor_power_with_map(spec: &GhzSpec, k: usize) -> Result<(GhzSpec, Vec<usize>)> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let dk = spec
        .d
        .checked_pow(k as u32)
        .filter(|&dk| dk <= DENSE_CAP)
        .ok_or(Error::DenseCapExceeded {
            dim: usize::MAX,
            cap: DENSE_CAP,
        })?;
    let products: Vec<f64> = (0..dk)
        .map(|idx| {
            (0..k)
                .map(|p| spec.coeffs[(idx / spec.d.pow((k - 1 - p) as u32)) % spec.d])
                .product()
        })
        .collect();
    let mut order: Vec<usize> = (0..dk).collect();
    order.sort_by(|&a, &b| products[b].total_cmp(&products[a]));
    let coeffs: Vec<f64> = order.iter().map(|&i| products[i]).collect();
    // Renormalize away rounding so the spec validates.
    let norm: f64 = coeffs.iter().map(|s| s * s).sum::<f64>().sqrt();
    let coeffs = coeffs.into_iter().map(|s| s / norm).collect();
    Ok((GhzSpec::new(spec.n, coeffs)?, order))
}

pub fn tensor_power_spec(spec: &GhzSpec, k: usize) -> Result<GhzSpec> {
    tensor_power_with_map(spec, k).map(|(s, _)| s)
}

fn lambda2_parts(n: usize, t0: f64, t1: f64) -> f64 {
    let top = (n - 1) as f64 * t0 * t0 + t1 * t1;
    top / (n as f64 + top)
}

/// `((n-1)s₀² + s₁²) / (n + (n-1)s₀² + s₁²)`.
pub fn lambda2_lhz(spec: &GhzSpec) -> f64 {
    lambda2_parts(spec.n, spec.coeffs[0], spec.coeffs[1])
}

/// Copies needed by dimension expansion over `k` stored copies.
///
/// `approx_n = (n + (n-1)s₀^{2k} + s₀^{2k-2}s₁²) / (nε) · ln(1/δ)` and
/// `exact_n = k ln δ / ln(1 - (1-λ₂)ε')` with `ε' = 1 - (1-ε)^k` and `λ₂`
/// the value for the `k`-fold spec, whose two largest coefficients are
/// `s₀^k` and `s₀^{k-1}s₁`.
pub fn n_de_k(spec: &GhzSpec, k: usize, epsilon: f64, delta: f64) -> Result<ComplexityReport> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    check_unit_interval("epsilon", epsilon)?;
    check_unit_interval("delta", delta)?;
    let n = spec.n as f64;
    let (s0, s1) = (spec.coeffs[0], spec.coeffs[1]);
    let kk = k as i32;
    let approx = (n + (n - 1.0) * s0.powi(2 * kk) + s0.powi(2 * kk - 2) * s1 * s1) / (n * epsilon)
        * (1.0 / delta).ln();
    let lambda2 = lambda2_parts(spec.n, s0.powi(kk), s0.powi(kk - 1) * s1);
    let eps_k = -(k as f64 * (-epsilon).ln_1p()).exp_m1();
    let exact = k as f64 * delta.ln() / (-(1.0 - lambda2) * eps_k).ln_1p();
    Ok(ComplexityReport {
        epsilon,
        delta,
        exact_n: Copies::Finite(exact),
        approx_n: Copies::Finite(approx),
        formula: FormulaId::DimensionExpansion,
    })
}
