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

//! Direct maximization of `<σσ'|Ω|σσ'>` over pure product fakes
//! `σ = √(1-ε_r) ψ + √ε_r φ`, `σ' = √(1-ε_r') ψ + √ε_r' φ'`, with `φ, φ' ⊥ ψ`.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{c64, eigh, random_unit_vector, C64};
use crate::strategy::TwoCopyOperator;

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Random starting points per infidelity pair.
    pub starts: usize,
    /// Points of the geometric infidelity grid per copy.
    pub grid_points: usize,
    /// Upper end of the grid, capped at 0.5.
    pub probe: f64,
    /// Stop when one sweep changes the objective by less than this.
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            starts: 8,
            grid_points: 9,
            probe: 0.5,
            tol: 1e-10,
            max_iters: 500,
            seed: 0,
        }
    }
}

/// Best fake found.
#[derive(Clone, Debug, Serialize)]
pub struct WorstCaseReport {
    pub p_hat: f64,
    pub eps_r: f64,
    pub eps_r_prime: f64,
    #[serde(skip)]
    pub perp: DVector<C64>,
    #[serde(skip)]
    pub perp_prime: DVector<C64>,
    pub start: usize,
    pub iterations: usize,
    /// Every run reached the tolerance before the iteration cap.
    pub converged: bool,
}

/// Orthonormal basis of `ψ⊥` as columns.
fn complement_basis(psi: &DVector<C64>) -> DMatrix<C64> {
    let d = psi.len();
    let q = DMatrix::<C64>::identity(d, d) - psi * psi.adjoint();
    // Eigenvalues are 1 (D-1 times) then 0.
    let (_, vecs) = eigh(&q);
    vecs.columns(0, d - 1).into_owned()
}

/// `max y†Ay + 2 Re(c†y)` over unit `y`, for Hermitian `A`.
///
/// The maximizer solves `(μ - A) y = c` with `μ >= λmax(A)`; `μ` is found
/// by bisection on `|y(μ)| = 1`. When `c` has no weight on the top
/// eigenspace and the remaining solution is short, the top eigenvector
/// fills the norm.
pub(crate) fn sphere_quadratic_max(a: &DMatrix<C64>, c: &DVector<C64>) -> DVector<C64> {
    let (vals, vecs) = eigh(a);
    let top = vals[0];
    let ct: DVector<C64> = vecs.adjoint() * c;
    let cnorm = c.norm();
    let scale = top.abs().max(1.0);
    let degenerate: Vec<bool> = vals.iter().map(|&v| top - v <= 1e-12 * scale).collect();
    let top_weight: f64 = ct
        .iter()
        .zip(&degenerate)
        .filter(|(_, &d)| d)
        .map(|(z, _)| z.norm_sqr())
        .sum();
    let norm_sq = |mu: f64| -> f64 {
        ct.iter()
            .zip(&vals)
            .map(|(z, &l)| z.norm_sqr() / ((mu - l) * (mu - l)))
            .sum()
    };
    let solve = |mu: f64| -> DVector<C64> {
        let coeffs = DVector::from_fn(vals.len(), |i, _| ct[i] / c64(mu - vals[i]));
        &vecs * coeffs
    };

    if cnorm <= 1e-300 {
        return vecs.column(0).into_owned();
    }
    if top_weight <= 1e-24 * cnorm * cnorm {
        let rest: f64 = ct
            .iter()
            .zip(&vals)
            .zip(&degenerate)
            .filter(|(_, &d)| !d)
            .map(|((z, &l), _)| z.norm_sqr() / ((top - l) * (top - l)))
            .sum();
        if rest <= 1.0 {
            let mut y = DVector::zeros(vals.len());
            for i in 0..vals.len() {
                if !degenerate[i] {
                    y += vecs.column(i) * (ct[i] / c64(top - vals[i]));
                }
            }
            let fill = (1.0 - rest).max(0.0).sqrt();
            let k = degenerate
                .iter()
                .position(|&d| d)
                .expect("top is degenerate with itself");
            return y + vecs.column(k) * c64(fill);
        }
    }
    let (mut lo, mut hi) = (top, top + cnorm);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if norm_sq(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let y = solve(hi);
    let n = y.norm();
    y / c64(n)
}

/// `K[i, j] = <e_i ⊗ s|Ω|e_j ⊗ s>` if `second`, else `<s ⊗ e_i|Ω|s ⊗ e_j>`.
fn effective<T: TwoCopyOperator + ?Sized>(
    s: &T,
    fixed: &DVector<C64>,
    second: bool,
) -> DMatrix<C64> {
    let d = fixed.len();
    let basis = |j: usize| {
        let mut e = DVector::zeros(d);
        e[j] = c64(1.0);
        if second {
            e.kronecker(fixed)
        } else {
            fixed.kronecker(&e)
        }
    };
    let cols: Vec<DVector<C64>> = (0..d).map(basis).collect();
    let images: Vec<DVector<C64>> = cols.iter().map(|v| s.apply_two_copy(v)).collect();
    let k = DMatrix::from_fn(d, d, |i, j| cols[i].dotc(&images[j]));
    (&k + k.adjoint()) * c64(0.5)
}

struct Run {
    value: f64,
    phi: DVector<C64>,
    phi_prime: DVector<C64>,
    iterations: usize,
    converged: bool,
}

fn alternate<T: TwoCopyOperator + ?Sized>(
    s: &T,
    psi: &DVector<C64>,
    basis: &DMatrix<C64>,
    (er, er_p): (f64, f64),
    mut y: DVector<C64>,
    mut y_p: DVector<C64>,
    opts: &OracleOptions,
) -> Run {
    let (a, b) = ((1.0 - er).sqrt(), er.sqrt());
    let (a_p, b_p) = ((1.0 - er_p).sqrt(), er_p.sqrt());
    let sigma = |y: &DVector<C64>, a: f64, b: f64| psi * c64(a) + basis * y * c64(b);
    let objective = |y: &DVector<C64>, y_p: &DVector<C64>| {
        let x = sigma(y, a, b).kronecker(&sigma(y_p, a_p, b_p));
        x.dotc(&s.apply_two_copy(&x)).re
    };
    let step = |k: DMatrix<C64>, a: f64, b: f64| {
        let quad = basis.adjoint() * &k * basis * c64(b * b);
        let lin = basis.adjoint() * (&k * psi) * c64(a * b);
        sphere_quadratic_max(&quad, &lin)
    };
    let mut value = objective(&y, &y_p);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iters {
        iterations += 1;
        y = step(effective(s, &sigma(&y_p, a_p, b_p), true), a, b);
        y_p = step(effective(s, &sigma(&y, a, b), false), a_p, b_p);
        let next = objective(&y, &y_p);
        let change = (next - value).abs();
        value = value.max(next);
        if change < opts.tol {
            converged = true;
            break;
        }
    }
    Run {
        value,
        phi: basis * &y,
        phi_prime: basis * &y_p,
        iterations,
        converged,
    }
}

/// Largest pass probability over product fakes whose infidelities both lie
/// on a geometric grid from `ε` to `min(0.5, probe)`.
pub fn worst_case_oracle<T: TwoCopyOperator + ?Sized>(
    s: &T,
    epsilon: f64,
    opts: &OracleOptions,
) -> Result<WorstCaseReport> {
    s.check_two_copy()?;
    let asym = s.swap_asymmetry();
    if asym > 1e-10 {
        return Err(Error::NotSymmetric { deviation: asym });
    }
    let hi = opts.probe.min(0.5);
    if !(epsilon > 0.0 && epsilon <= hi) {
        return Err(Error::OutOfRange(format!(
            "epsilon must lie in (0, {hi}], got {epsilon}"
        )));
    }
    if opts.starts == 0 || opts.grid_points == 0 {
        return Err(Error::OutOfRange(
            "oracle needs at least one start and grid point".into(),
        ));
    }
    let psi = s.single_target().amplitudes().clone();
    let d = psi.len();
    if d < 2 {
        return Err(Error::DimensionMismatch(
            "target space must have dimension >= 2".into(),
        ));
    }
    let basis = complement_basis(&psi);
    let m = opts.grid_points;
    let grid: Vec<f64> = (0..m)
        .map(|i| {
            if m == 1 {
                epsilon
            } else {
                epsilon * (hi / epsilon).powf(i as f64 / (m - 1) as f64)
            }
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let starts: Vec<(DVector<C64>, DVector<C64>)> = (0..opts.starts)
        .map(|_| {
            (
                random_unit_vector(d - 1, &mut rng),
                random_unit_vector(d - 1, &mut rng),
            )
        })
        .collect();

    let mut best: Option<WorstCaseReport> = None;
    let mut all_converged = true;
    for &er in &grid {
        for &er_p in &grid {
            for (idx, (y0, y0p)) in starts.iter().enumerate() {
                let run = alternate(s, &psi, &basis, (er, er_p), y0.clone(), y0p.clone(), opts);
                all_converged &= run.converged;
                let better = match &best {
                    None => true,
                    Some(b) => run.value > b.p_hat,
                };
                if better {
                    best = Some(WorstCaseReport {
                        p_hat: run.value.clamp(0.0, 1.0),
                        eps_r: er,
                        eps_r_prime: er_p,
                        perp: run.phi,
                        perp_prime: run.phi_prime,
                        start: idx,
                        iterations: run.iterations,
                        converged: run.converged,
                    });
                }
            }
        }
    }
    let mut report = best.expect("grid and starts are nonempty");
    report.converged = all_converged;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn objective(a: &DMatrix<C64>, c: &DVector<C64>, y: &DVector<C64>) -> f64 {
        y.dotc(&(a * y)).re + 2.0 * c.dotc(y).re
    }

    #[test]
    fn sphere_solution_beats_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let r = DMatrix::from_fn(4, 4, |_, _| {
                C64::new(
                    rand::Rng::random::<f64>(&mut rng) - 0.5,
                    rand::Rng::random::<f64>(&mut rng) - 0.5,
                )
            });
            let a = &r + r.adjoint();
            let c = random_unit_vector(4, &mut rng) * c64(0.3);
            let y = sphere_quadratic_max(&a, &c);
            assert!((y.norm() - 1.0).abs() < 1e-10);
            let best = objective(&a, &c, &y);
            for _ in 0..200 {
                let z = random_unit_vector(4, &mut rng);
                assert!(objective(&a, &c, &z) <= best + 1e-9);
            }
        }
    }

    #[test]
    fn hard_case_uses_top_eigenvector() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![c64(2.0), c64(0.0), c64(0.0)]));
        let c = DVector::from_vec(vec![c64(0.0), c64(0.5), c64(0.0)]);
        let y = sphere_quadratic_max(&a, &c);
        // y = (√(1 - 1/16), 1/4, 0) up to the top component's sign.
        assert!((y[1].re - 0.25).abs() < 1e-10);
        assert!((objective(&a, &c, &y) - (2.0 * (1.0 - 1.0 / 16.0) + 0.25)).abs() < 1e-10);
    }
}
