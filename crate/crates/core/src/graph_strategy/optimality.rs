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
use serde::Serialize;

use super::GraphStrategy;
use crate::error::Result;
use crate::qcore::{c64, max_eigenvalue_matfree, C64};
use crate::strategy::swap_vector;

/// Residuals of the optimality conditions for `Ω_g`.
#[derive(Clone, Debug, Serialize)]
pub struct OptimalityReport {
    pub lambda_star: f64,
    pub gamma_star: f64,
    pub xi_star: f64,
    /// `max_k |Ω_g P_s (ψ ⊗ Q e_k)|`, a basis of the range of `P_ψ`.
    pub projection_residual: f64,
    pub tol: f64,
}

impl OptimalityReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.lambda_star.abs(),
            self.gamma_star.abs(),
            self.xi_star.abs(),
            self.projection_residual,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_residual() <= self.tol
    }
}

/// `P_ψ v` with `P_ψ = ψψ† ⊗ (1 - ψψ†)`, acting on the `D x D` reshaping
/// `V[a, b] = v[a D + b]` as `V ↦ ψψ† V (1 - ψψ†)ᵀ`.
fn project(psi: &DVector<C64>, v: &DVector<C64>) -> DVector<C64> {
    let d = psi.len();
    let m = DMatrix::from_row_iterator(d, d, v.iter().copied());
    let left = psi * (psi.adjoint() * &m);
    let right = &left - (&left * psi.conjugate()) * psi.transpose();
    DVector::from_iterator(d * d, right.transpose().iter().copied())
}

/// Extremal eigenvalues of the full-space maps `P_ψ X Ω P_ψ` for
/// `X ∈ {F + 1, F, F/2 + 1}`, computed matrix-free by Lanczos, and the
/// projection residual of `Ω_g P_s P_ψ`.
pub fn verify_graph_optimality(gs: &GraphStrategy, tol: f64) -> Result<OptimalityReport> {
    let psi = gs.target().amplitudes().clone();
    let d = psi.len();
    let dim = d * d;
    let max_iters = 4000;
    let map = |f_weight: f64, id_weight: f64| {
        let psi = psi.clone();
        move |v: &DVector<C64>| {
            let p = project(&psi, v);
            let w = gs.apply(&p);
            let x = swap_vector(&w, d) * c64(f_weight) + w * c64(id_weight);
            project(&psi, &x)
        }
    };
    let lambda_star = max_eigenvalue_matfree(map(1.0, 1.0), dim, tol, max_iters)?;
    let gamma_star = max_eigenvalue_matfree(map(1.0, 0.0), dim, tol, max_iters)?;
    let xi_star = max_eigenvalue_matfree(map(0.5, 1.0), dim, tol, max_iters)?;

    let mut projection_residual: f64 = 0.0;
    for k in 0..d {
        let mut e = DVector::zeros(d);
        e[k] = c64(1.0);
        let perp = &e - &psi * psi[k].conj();
        let v = psi.kronecker(&perp);
        let sym = (&v + swap_vector(&v, d)) * c64(0.5);
        projection_residual = projection_residual.max(gs.apply(&sym).camax());
    }
    Ok(OptimalityReport {
        lambda_star,
        gamma_star,
        xi_star,
        projection_residual,
        tol,
    })
}
