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

use super::{ghz_ket, tensor_power_spec, GhzSpec};
use crate::error::{Error, Result};
use crate::qcore::{c64, Ket, Operator, C64};
use crate::strategy::{swap_conjugate, Strategy};

/// One of the five mutually unbiased bases of two qubits.
#[derive(Clone, Debug)]
pub struct MubBasis {
    pub label: usize,
    pub vectors: Vec<Ket>,
}

/// Rows are basis vectors over `|00>, |01>, |10>, |11>`, scaled by 2.
fn rows(label: usize) -> [[C64; 4]; 4] {
    let o = c64(1.0);
    let m = c64(-1.0);
    let i = C64::new(0.0, 1.0);
    let z = c64(0.0);
    match label {
        0 => [
            [o * 2.0, z, z, z],
            [z, o * 2.0, z, z],
            [z, z, o * 2.0, z],
            [z, z, z, o * 2.0],
        ],
        1 => [[o, o, o, o], [o, o, m, m], [o, m, m, o], [o, m, o, m]],
        2 => [[o, m, -i, -i], [o, m, i, i], [o, o, i, -i], [o, o, -i, i]],
        3 => [[o, -i, -i, m], [o, -i, i, o], [o, i, i, m], [o, i, -i, o]],
        _ => [[o, -i, m, -i], [o, -i, o, i], [o, i, m, i], [o, i, o, -i]],
    }
}

pub fn mub_bases() -> Vec<MubBasis> {
    (0..5)
        .map(|label| MubBasis {
            label,
            vectors: rows(label)
                .iter()
                .map(|r| {
                    Ket::from_vec(r.iter().map(|a| a * 0.5).collect(), vec![2, 2])
                        .expect("four amplitudes")
                })
                .collect(),
        })
        .collect()
}

/// Half of the strategy with the first party initiating, for the state
/// whose coefficient matrix is `m[a, b]`.
fn initiated_half(m: &DMatrix<C64>, weights: &[f64; 5]) -> DMatrix<C64> {
    let mut out = DMatrix::zeros(16, 16);
    for basis in mub_bases() {
        for u in &basis.vectors {
            let u = u.amplitudes();
            // <u|_A Ψ as a vector on B.
            let v: DVector<C64> = (m.transpose() * u.conjugate()).into_owned();
            let norm = v.norm();
            if norm < 1e-14 {
                continue;
            }
            let v = v / c64(norm);
            let t = (u * u.adjoint()).kronecker(&(&v * v.adjoint()));
            out += t * c64(weights[basis.label]);
        }
    }
    out
}

/// The two-party strategy for `cos²θ|00> + cosθ sinθ(|11> + |22>) + sin²θ|33>`
/// built from the five bases: the initiating party measures basis 0 with
/// probability `p₀ = (s₀² + s₁²)/(2 + s₀² + s₁²)` and each other basis with
/// `(1 - p₀)/4`, and the other party checks the reduced state. Both parties
/// initiate with probability 1/2.
pub fn mub_strategy_d4(theta: f64) -> Result<Strategy> {
    if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_4) {
        return Err(Error::OutOfRange(format!(
            "theta must lie in (0, pi/4), got {theta}"
        )));
    }
    let spec = tensor_power_spec(&GhzSpec::bipartite(theta)?, 2)?;
    let target = ghz_ket(&spec)?;
    let (s0, s1) = (spec.coeffs()[0], spec.coeffs()[1]);
    let p0 = (s0 * s0 + s1 * s1) / (2.0 + s0 * s0 + s1 * s1);
    let rest = (1.0 - p0) / 4.0;
    let weights = [p0, rest, rest, rest, rest];
    let m = DMatrix::from_row_iterator(4, 4, target.amplitudes().iter().copied());
    let a_half = initiated_half(&m, &weights);
    let b_half = swap_conjugate(&initiated_half(&m.transpose(), &weights), 4);
    let omega = Operator::hermitian((a_half + b_half) * c64(0.5), vec![4, 4])?;
    Strategy::new(omega, target, 1, None)
}
