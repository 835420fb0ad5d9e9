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

//! Per-pair Bell-basis change on block-layout two-copy vectors.
//!
//! After [`bell_transform`] the amplitude at pair slot `(O_j, O'_j) = (z, x)`
//! is the coefficient of `|Φ_zx>`, so the first `n` bits of an index are the
//! `z` outcomes and the last `n` bits the `x` outcomes.

use nalgebra::DVector;

use crate::qcore::{bell_ket, C64};

fn table() -> [[f64; 4]; 4] {
    let mut t = [[0.0; 4]; 4];
    for (zx, row) in t.iter_mut().enumerate() {
        let phi = bell_ket((zx >> 1) as u8, (zx & 1) as u8);
        for (pq, slot) in row.iter_mut().enumerate() {
            *slot = phi.amplitudes()[pq].re;
        }
    }
    t
}

fn pair_map(n: usize, v: &DVector<C64>, transpose: bool) -> DVector<C64> {
    let t = table();
    let mut out = v.clone();
    for j in 0..n {
        let hi = 1usize << (2 * n - 1 - j);
        let lo = 1usize << (n - 1 - j);
        for base in 0..out.len() {
            if base & (hi | lo) != 0 {
                continue;
            }
            let idx = [base, base | lo, base | hi, base | hi | lo];
            let a = idx.map(|i| out[i]);
            for r in 0..4 {
                let mut acc = C64::new(0.0, 0.0);
                for (c, amp) in a.iter().enumerate() {
                    let w = if transpose { t[c][r] } else { t[r][c] };
                    acc += amp * w;
                }
                out[idx[r]] = acc;
            }
        }
    }
    out
}

/// Bell-basis coefficients of every pair.
pub fn bell_transform(n: usize, v: &DVector<C64>) -> DVector<C64> {
    pair_map(n, v, false)
}

pub fn inverse_bell_transform(n: usize, v: &DVector<C64>) -> DVector<C64> {
    pair_map(n, v, true)
}

/// Born probabilities of the `4^n` joint Bell outcomes.
pub fn bell_outcome_probabilities(n: usize, v: &DVector<C64>) -> Vec<f64> {
    bell_transform(n, v).iter().map(|a| a.norm_sqr()).collect()
}

/// `(b, b')` packed codes recorded for an outcome index: `b` collects the
/// `x` outcomes and `b'` the `z` outcomes.
pub fn split_outcome(n: usize, outcome: usize) -> (usize, usize) {
    (outcome & ((1 << n) - 1), outcome >> n)
}
