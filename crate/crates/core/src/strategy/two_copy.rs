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

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use super::{swap_conjugate, swap_vector, Strategy, Test};
use crate::error::{Error, Result};
use crate::qcore::{c64, eigvalsh, max_abs_diff, Ket, Operator, C64};

/// Anything that acts as a two-copy verification operator.
pub trait TwoCopyOperator: Sync {
    /// Single-copy target `ψ`; the operator acts on `ψ ⊗ ψ`'s space.
    fn single_target(&self) -> &Ket;

    /// `Ω v` for a vector on two copies.
    fn apply_two_copy(&self, v: &DVector<C64>) -> DVector<C64>;

    /// `max|Ω - FΩF|`.
    fn swap_asymmetry(&self) -> f64;

    fn check_two_copy(&self) -> Result<()> {
        Ok(())
    }
}

impl TwoCopyOperator for Strategy {
    fn single_target(&self) -> &Ket {
        self.target()
    }

    fn apply_two_copy(&self, v: &DVector<C64>) -> DVector<C64> {
        self.omega().apply(v)
    }

    fn swap_asymmetry(&self) -> f64 {
        let m = self.omega().entries();
        max_abs_diff(m, &swap_conjugate(m, self.target().dim()))
    }

    fn check_two_copy(&self) -> Result<()> {
        if self.copies() != 2 {
            return Err(Error::InvalidStrategy(format!(
                "expected a two-copy strategy, got {} copies",
                self.copies()
            )));
        }
        Ok(())
    }
}

/// Insurance infidelity for a given `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "regime", content = "value", rename_all = "snake_case")]
pub enum InsuranceInfidelity {
    /// `γ⋆ >= 10√ε`: the case-1 expression.
    Bounded(f64),
    /// `γ⋆ <= 0.1√ε`: far above `ε`.
    Unbounded,
    /// In between; the case-1 value is reported but not trusted.
    Ambiguous { case1: f64 },
}

/// The extremal eigenvalues that govern a symmetric two-copy strategy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwoCopyAnalysis {
    pub lambda_star: f64,
    pub gamma_star: f64,
    pub xi_star: f64,
    /// `ξ⋆ + γ⋆/2 < 1`.
    pub local_max_ok: bool,
    pub symmetric_ok: bool,
    pub swap_asymmetry: f64,
}

impl TwoCopyAnalysis {
    pub fn from_parts(
        lambda_star: f64,
        gamma_star: f64,
        xi_star: f64,
        swap_asymmetry: f64,
    ) -> Self {
        TwoCopyAnalysis {
            lambda_star,
            gamma_star,
            xi_star,
            local_max_ok: xi_star + gamma_star / 2.0 < 1.0,
            symmetric_ok: true,
            swap_asymmetry,
        }
    }

    /// `0.5ε + 0.5ε[(1 - ξ⋆ + γ⋆/2)/γ⋆]²`, or `None` when `γ⋆ = 0`.
    pub fn eps_max_case1(&self, epsilon: f64) -> Option<f64> {
        if self.gamma_star <= 0.0 {
            return None;
        }
        let r = (1.0 - self.xi_star + 0.5 * self.gamma_star) / self.gamma_star;
        Some(0.5 * epsilon + 0.5 * epsilon * r * r)
    }

    pub fn eps_max(&self, epsilon: f64) -> InsuranceInfidelity {
        let root = epsilon.sqrt();
        match self.eps_max_case1(epsilon) {
            None => InsuranceInfidelity::Unbounded,
            Some(_) if self.gamma_star <= 0.1 * root => InsuranceInfidelity::Unbounded,
            Some(v) if self.gamma_star >= 10.0 * root => InsuranceInfidelity::Bounded(v),
            Some(v) => InsuranceInfidelity::Ambiguous { case1: v },
        }
    }
}

/// `(Ω + FΩF)/2`. Each test `T` of a decomposition is replaced by `T` and
/// `FTF` at half weight, unless it is already swap-invariant.
pub fn symmetrize_two_copy(s: &Strategy) -> Result<Strategy> {
    s.check_two_copy()?;
    let d = s.target().dim();
    let m = s.omega().entries();
    let sym = (m + swap_conjugate(m, d)) * c64(0.5);
    let omega = Operator::hermitian(sym, s.omega().dims().to_vec())?;
    let decomposition = s.decomposition().map(|tests| {
        let mut out = Vec::new();
        for t in tests {
            let swapped = swap_conjugate(t.op.entries(), d);
            if max_abs_diff(&swapped, t.op.entries()) <= 1e-12 {
                out.push(t.clone());
            } else {
                let op =
                    Operator::hermitian(swapped, t.op.dims().to_vec()).expect("Hermitian input");
                out.push(Test {
                    p: t.p / 2.0,
                    op: t.op.clone(),
                });
                out.push(Test { p: t.p / 2.0, op });
            }
        }
        out
    });
    Strategy::trusted(omega, s.target().clone(), 2, decomposition)
}

/// Compressions of `Ω` onto `ψ ⊗ e_k` needed for all three eigenvalues.
///
/// With `w_k = Ω(ψ ⊗ e_k)`, returns `A[j,k] = <ψ ⊗ e_j|w_k>` and
/// `B[j,k] = <e_j ⊗ ψ|w_k>`. The range of `P_ψ` is `ψ ⊗ ψ⊥`, so
/// `λmax(P_ψ X P_ψ)` for `X ∈ {Ω, FΩ}` is `λmax(Q W Q)` with `Q = 1 - ψψ†`
/// and `W = A` or `B` respectively.
fn compressions<T: TwoCopyOperator + ?Sized>(s: &T) -> (DMatrix<C64>, DMatrix<C64>) {
    let psi = s.single_target().amplitudes();
    let d = psi.len();
    let columns: Vec<(DVector<C64>, DVector<C64>)> = (0..d)
        .into_par_iter()
        .map(|k| {
            let mut e = DVector::zeros(d);
            e[k] = c64(1.0);
            let w = s.apply_two_copy(&psi.kronecker(&e));
            let fw = swap_vector(&w, d);
            let a = DVector::from_fn(d, |j, _| (0..d).map(|i| psi[i].conj() * w[i * d + j]).sum());
            let b = DVector::from_fn(d, |j, _| {
                (0..d).map(|i| psi[i].conj() * fw[i * d + j]).sum()
            });
            (a, b)
        })
        .collect();
    let a = DMatrix::from_fn(d, d, |j, k| columns[k].0[j]);
    let b = DMatrix::from_fn(d, d, |j, k| columns[k].1[j]);
    (a, b)
}

/// `λ⋆ = λmax(2 P_ψ P_s Ω P_s P_ψ)`, `γ⋆ = λmax(P_ψ F Ω P_ψ)` and
/// `ξ⋆ = λmax(P_ψ (F/2 + 1) Ω P_ψ)` for a swap-symmetric `Ω`.
///
/// For symmetric `Ω` the first operator equals `P_ψ (F + 1) Ω P_ψ`. All three
/// are evaluated on the `D`-dimensional range of `P_ψ`.
pub fn two_copy_analysis<T: TwoCopyOperator + ?Sized>(s: &T, tol: f64) -> Result<TwoCopyAnalysis> {
    s.check_two_copy()?;
    let asym = s.swap_asymmetry();
    if asym > tol {
        return Err(Error::NotSymmetric { deviation: asym });
    }
    let psi = s.single_target().amplitudes();
    let d = psi.len();
    let q = DMatrix::<C64>::identity(d, d) - psi * psi.adjoint();
    let (a, b) = compressions(s);
    let top = |w: DMatrix<C64>| -> Result<f64> {
        let m = &q * w * &q;
        let deviation = max_abs_diff(&m, &m.adjoint());
        if deviation > 10.0 * tol + 1e-12 {
            return Err(Error::NotHermitian { deviation });
        }
        // The kernel of P_ψ contributes zero eigenvalues on the full space.
        Ok(eigvalsh(&m)[0].max(0.0))
    };
    let lambda_star = top(&a + &b)?;
    let gamma_star = top(b.clone())?;
    let xi_star = top(&b * c64(0.5) + &a)?;
    let analysis = TwoCopyAnalysis::from_parts(lambda_star, gamma_star, xi_star, asym);
    if lambda_star >= 1.0 - tol {
        return Err(Error::LambdaStarAtLeastOne {
            analysis: Box::new(analysis),
        });
    }
    Ok(analysis)
}
