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

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{random_unit_vector, Operator, C64};
use crate::error::{Error, Result};

/// Eigenvalues sorted in descending order, with optional eigenvector columns
/// in the same order.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<DMatrix<C64>>,
}

impl Spectrum {
    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Second largest eigenvalue counted with multiplicity.
    pub fn second(&self) -> Option<f64> {
        self.eigenvalues.get(1).copied()
    }

    /// `max|V diag(λ) V† - A| / max(1, max|A|)`, if eigenvectors are present.
    pub fn reconstruction_error(&self, op: &Operator) -> Option<f64> {
        let v = self.eigenvectors.as_ref()?;
        let diag = DMatrix::from_diagonal(&DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&x| C64::new(x, 0.0)),
        ));
        let rebuilt = v * diag * v.adjoint();
        let scale = op.entries().iter().map(|z| z.norm()).fold(1.0, f64::max);
        Some(super::operator::max_abs_diff(&rebuilt, op.entries()) / scale)
    }
}

/// Full spectrum of a Hermitian-tagged operator.
pub fn hermitian_spectrum(op: &Operator, with_vectors: bool) -> Result<Spectrum> {
    if !op.is_hermitian() {
        return Err(Error::NotHermitian {
            deviation: op.hermitian_deviation(),
        });
    }
    if with_vectors {
        let (values, vectors) = eigh(op.entries());
        Ok(Spectrum {
            eigenvalues: values,
            eigenvectors: Some(vectors),
        })
    } else {
        Ok(Spectrum {
            eigenvalues: eigvalsh(op.entries()),
            eigenvectors: None,
        })
    }
}

/// Eigen-decomposition of a Hermitian matrix, descending.
pub(crate) fn eigh(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let h = hermitize(m);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

/// Eigenvalues of a Hermitian matrix, descending.
pub(crate) fn eigvalsh(m: &DMatrix<C64>) -> Vec<f64> {
    let mut values: Vec<f64> = hermitize(m)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

pub(crate) fn max_eigvalsh(m: &DMatrix<C64>) -> f64 {
    eigvalsh(m)[0]
}

fn hermitize(m: &DMatrix<C64>) -> DMatrix<C64> {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Result of an extremal eigenvalue iteration.
#[derive(Clone, Debug)]
pub struct TopEigen {
    pub value: f64,
    pub vector: DVector<C64>,
    pub iterations: usize,
    pub residual: f64,
}

const LANCZOS_SEED: u64 = 0x5eed_1a2c;
const KRYLOV_CAP: usize = 96;

/// Largest eigenvalue of a Hermitian map given only by its action.
pub fn max_eigenvalue_matfree<F>(apply: F, dim: usize, tol: f64, max_iters: usize) -> Result<f64>
where
    F: Fn(&DVector<C64>) -> DVector<C64>,
{
    top_eigenpair_matfree(apply, dim, tol, max_iters).map(|t| t.value)
}

/// Lanczos with full reorthogonalization. When the Krylov basis reaches its
/// cap without converging, the iteration restarts from the current best Ritz
/// vector.
pub fn top_eigenpair_matfree<F>(
    apply: F,
    dim: usize,
    tol: f64,
    max_iters: usize,
) -> Result<TopEigen>
where
    F: Fn(&DVector<C64>) -> DVector<C64>,
{
    if dim == 0 {
        return Err(Error::DimensionMismatch("empty map".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(LANCZOS_SEED);
    let mut start = random_unit_vector(dim, &mut rng);
    let cap = KRYLOV_CAP.min(dim);
    let mut total = 0usize;
    let mut last_residual = f64::INFINITY;

    loop {
        let mut basis: Vec<DVector<C64>> = vec![start.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let mut best: Option<(f64, DVector<f64>)> = None;

        for j in 0..cap {
            let mut w = apply(&basis[j]);
            total += 1;
            if w.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "map returned length {} for dimension {dim}",
                    w.len()
                )));
            }
            let alpha = basis[j].dotc(&w).re;
            alphas.push(alpha);
            for _ in 0..2 {
                for v in &basis {
                    let c = v.dotc(&w);
                    w.axpy(-c, v, C64::new(1.0, 0.0));
                }
            }
            let beta = w.norm();

            let (theta, y) = tridiagonal_top(&alphas, &betas);
            let residual = beta * y[y.len() - 1].abs();
            last_residual = residual;
            let scale = theta.abs().max(1.0);
            let exhausted = basis.len() == dim || beta <= 1e-13 * scale;
            if residual <= tol * scale || exhausted {
                let vector = ritz_vector(&basis, &y);
                return Ok(TopEigen {
                    value: theta,
                    vector,
                    iterations: total,
                    residual,
                });
            }
            best = Some((theta, y));
            if total >= max_iters {
                return Err(Error::NoConvergence {
                    iterations: total,
                    residual,
                });
            }
            if j + 1 < cap {
                betas.push(beta);
                basis.push(w / C64::new(beta, 0.0));
            }
        }

        let (_, y) = best.expect("at least one Lanczos step");
        start = ritz_vector(&basis, &y);
        let n = start.norm();
        start /= C64::new(n, 0.0);
        if total >= max_iters {
            return Err(Error::NoConvergence {
                iterations: total,
                residual: last_residual,
            });
        }
    }
}

fn tridiagonal_top(alphas: &[f64], betas: &[f64]) -> (f64, DVector<f64>) {
    let k = alphas.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let top = eig.eigenvalues.imax();
    (
        eig.eigenvalues[top],
        eig.eigenvectors.column(top).into_owned(),
    )
}

fn ritz_vector(basis: &[DVector<C64>], y: &DVector<f64>) -> DVector<C64> {
    let mut v = DVector::zeros(basis[0].len());
    for (b, &c) in basis.iter().zip(y.iter()) {
        v.axpy(C64::new(c, 0.0), b, C64::new(1.0, 0.0));
    }
    v
}
