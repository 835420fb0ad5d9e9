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

use super::code::check_len;
use super::{graph_state, Graph, GraphCode};
use crate::error::{Error, Result};
use crate::qcore::{c64, phase_aligned_distance, Ket, Operator, C64, TOL};

/// The gate family attached to a graph and a code `a`.
///
/// `a_g` acts on the `2n`-qubit register in block layout
/// `(O_1..O_n, O'_1..O'_n)`; the other three act on the `O` register alone.
#[derive(Clone, Debug)]
pub struct DisentangleOperators {
    pub a_g: Operator,
    pub l_g: Operator,
    pub b_g: Operator,
    pub q_g: Operator,
}

fn sign(parity: usize) -> f64 {
    if parity & 1 == 1 {
        -1.0
    } else {
        1.0
    }
}

fn dot(a: usize, b: usize) -> usize {
    (a & b).count_ones() as usize
}

pub fn disentangle_operators(g: &Graph, a: &GraphCode) -> Result<DisentangleOperators> {
    check_len(g, a)?;
    let n = g.n();
    let d = 1usize << n;
    let norm = (d as f64).sqrt().recip();
    let a_bits = a.index();

    // H_i CX_{i -> i'} on every pair: |x, y> -> 2^{-n/2} sum_z (-1)^{x.z} |z, y ^ x>.
    let mut am = DMatrix::zeros(d * d, d * d);
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                am[((z << n) | (y ^ x), (x << n) | y)] = c64(sign(dot(x, z)) * norm);
            }
        }
    }

    // Each edge contributes X_m^{a_n} X_n^{a_m}, so vertex m is flipped by
    // c_m(a) in total; the scalar phases multiply to (-1)^{edges inside a}.
    let flip = g.parity_bits(a_bits);
    let l_sign = sign(g.edge_parity(a_bits));
    let mut lm = DMatrix::zeros(d, d);
    for x in 0..d {
        lm[(x ^ flip, x)] = c64(l_sign);
    }

    let bm = DMatrix::from_fn(d, d, |z, x| c64(sign(dot(z, x) + g.edge_parity(x)) * norm));
    let qm = DMatrix::from_fn(d, d, |r, c| {
        if r == c {
            c64(sign(dot(a_bits, c)))
        } else {
            c64(0.0)
        }
    });

    Ok(DisentangleOperators {
        a_g: Operator::new(am, vec![2; 2 * n])?,
        l_g: Operator::hermitian(lm, vec![2; n])?,
        b_g: Operator::new(bm, vec![2; n])?,
        q_g: Operator::hermitian(qm, vec![2; n])?,
    })
}

/// Apply `A_g` to a `2n`-qubit block-layout vector without building it.
pub fn apply_a_g(n: usize, v: &DVector<C64>) -> DVector<C64> {
    let d = 1usize << n;
    let mut out = DVector::zeros(d * d);
    for x in 0..d {
        for y in 0..d {
            out[(x << n) | (y ^ x)] = v[(x << n) | y];
        }
    }
    // Walsh-Hadamard transform over the O register.
    let mut h = 1usize;
    while h < d {
        for x in (0..d).step_by(2 * h) {
            for x0 in x..x + h {
                for y in 0..d {
                    let i = (x0 << n) | y;
                    let j = ((x0 + h) << n) | y;
                    let (p, q) = (out[i], out[j]);
                    out[i] = p + q;
                    out[j] = p - q;
                }
            }
        }
        h <<= 1;
    }
    out * c64((d as f64).sqrt().recip())
}

/// Largest deviations found by [`check_disentangled_equations`].
#[derive(Clone, Debug)]
pub struct DisentangleReport {
    pub forward_deviation: f64,
    pub inverse_deviation: f64,
    /// `sum_a |<a| A_g (ω ⊗ G)|^2`; equals one for normalized `ω`.
    pub total_probability: f64,
    pub tol: f64,
}

impl DisentangleReport {
    pub fn passed(&self) -> bool {
        self.forward_deviation <= self.tol && self.inverse_deviation <= self.tol
    }
}

/// Compare both sides of the forward identity
/// `<a|_{O'} A_g (ω ⊗ G) = 2^{-n/2} L_g(a) B_g ω` and the inverse identity
/// `<a|_{O'} A_g (G ⊗ ω) = 2^{-n/2} L_g(a) Q_g(a) B_g ω` for every `a`.
///
/// Each side is stacked over all `a` and the stacks are compared up to one
/// global phase.
pub fn check_disentangled_equations(g: &Graph, omega: &Ket, tol: f64) -> Result<DisentangleReport> {
    let n = g.n();
    let d = 1usize << n;
    if omega.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "omega has dimension {}, graph needs {d}",
            omega.dim()
        )));
    }
    omega.ensure_normalized(TOL)?;
    let gk = graph_state(g)?;
    let w = omega.amplitudes();
    let fwd = apply_a_g(n, &w.kronecker(gk.amplitudes()));
    let inv = apply_a_g(n, &gk.amplitudes().kronecker(w));
    let norm = c64((d as f64).sqrt().recip());

    let mut lhs_f = Vec::with_capacity(d * d);
    let mut rhs_f = Vec::with_capacity(d * d);
    let mut lhs_i = Vec::with_capacity(d * d);
    let mut rhs_i = Vec::with_capacity(d * d);
    let mut total = 0.0;
    for a in GraphCode::all(n) {
        let ops = disentangle_operators(g, &a)?;
        let bw = ops.b_g.apply(w);
        let rf = ops.l_g.apply(&bw) * norm;
        let ri = ops.l_g.apply(&ops.q_g.apply(&bw)) * norm;
        for o in 0..d {
            let idx = (o << n) | a.index();
            lhs_f.push(fwd[idx]);
            lhs_i.push(inv[idx]);
            total += fwd[idx].norm_sqr();
        }
        rhs_f.extend(rf.iter());
        rhs_i.extend(ri.iter());
    }
    Ok(DisentangleReport {
        forward_deviation: phase_aligned_distance(
            &DVector::from_vec(lhs_f),
            &DVector::from_vec(rhs_f),
        ),
        inverse_deviation: phase_aligned_distance(
            &DVector::from_vec(lhs_i),
            &DVector::from_vec(rhs_i),
        ),
        total_probability: total,
        tol,
    })
}
