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

//! Reference implementations written directly from the definitions, sharing
//! no code paths with the library beyond its public types.

#![allow(dead_code)]

use memverify::graphs::Graph;
use memverify::qcore::{Ket, Operator};
use memverify::strategy::Strategy;
use memverify::C64;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cx(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn gaussian_vector(d: usize, rng: &mut impl Rng) -> DVector<C64> {
    DVector::from_fn(d, |_, _| {
        C64::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    })
}

pub fn random_unit(d: usize, rng: &mut impl Rng) -> DVector<C64> {
    let v = gaussian_vector(d, rng);
    let n = v.norm();
    v / cx(n)
}

pub fn random_ket(qubits: usize, rng: &mut impl Rng) -> Ket {
    Ket::new(random_unit(1 << qubits, rng), vec![2; qubits]).unwrap()
}

/// Orthonormal columns: QR of a Gaussian matrix.
pub fn random_isometry(d: usize, k: usize, rng: &mut impl Rng) -> DMatrix<C64> {
    let m = DMatrix::from_fn(d, k, |_, _| {
        C64::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    });
    m.qr().q()
}

/// `|ψ><ψ| + Σ_i μ_i |u_i><u_i|` with `u_i` an orthonormal basis of `ψ⊥`
/// and `μ_i` uniform in `[0, 0.95]`.
pub fn random_single_copy(qubits: usize, rng: &mut impl Rng) -> Strategy {
    let d = 1usize << qubits;
    let psi = random_unit(d, rng);
    let mut basis = DMatrix::<C64>::zeros(d, d);
    basis.set_column(0, &psi);
    let raw = random_isometry(d, d, rng);
    for j in 1..d {
        let mut v = raw.column(j).into_owned();
        for k in 0..j {
            let c = basis.column(k).dotc(&v);
            v -= basis.column(k) * c;
        }
        let n = v.norm();
        basis.set_column(j, &(v / cx(n)));
    }
    let mut diag = DVector::from_element(d, cx(0.0));
    diag[0] = cx(1.0);
    for i in 1..d {
        diag[i] = cx(0.95 * rng.random::<f64>());
    }
    let m = &basis * DMatrix::from_diagonal(&diag) * basis.adjoint();
    let m = (&m + m.adjoint()) * cx(0.5);
    Strategy::new(
        Operator::hermitian(m, vec![2; qubits]).unwrap(),
        Ket::new(psi, vec![2; qubits]).unwrap(),
        1,
        None,
    )
    .unwrap()
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn top_eigenvalue(m: &DMatrix<C64>) -> f64 {
    let h = (m + m.adjoint()) * cx(0.5);
    h.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Second largest eigenvalue.
pub fn second_eigenvalue(m: &DMatrix<C64>) -> f64 {
    let h = (m + m.adjoint()) * cx(0.5);
    let mut v: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v[1]
}

/// Copy exchange on `C^d ⊗ C^d`.
pub fn swap_matrix(d: usize) -> DMatrix<C64> {
    let mut f = DMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            f[(b * d + a, a * d + b)] = cx(1.0);
        }
    }
    f
}

/// `(λ⋆, γ⋆, ξ⋆)` from the full `D² x D²` operators
/// `2 P_ψ P_s Ω P_s P_ψ`, `P_ψ F Ω P_ψ` and `P_ψ (F/2 + 1) Ω P_ψ`.
pub fn literal_two_copy(omega: &DMatrix<C64>, psi: &DVector<C64>) -> [f64; 3] {
    let d = psi.len();
    let id = DMatrix::<C64>::identity(d * d, d * d);
    let f = swap_matrix(d);
    let ps = (&f + &id) * cx(0.5);
    let proj = psi * psi.adjoint();
    let pp = proj.kronecker(&(DMatrix::identity(d, d) - &proj));
    let star = &pp * &ps * omega * &ps * &pp * cx(2.0);
    let gamma = &pp * &f * omega * &pp;
    let xi = &pp * (&f * cx(0.5) + &id) * omega * &pp;
    [
        top_eigenvalue(&star),
        top_eigenvalue(&gamma),
        top_eigenvalue(&xi),
    ]
}

/// Vertex `v` (1-based) as a bit of an `n`-bit string, vertex 1 leftmost.
pub fn vbit(n: usize, v: usize) -> usize {
    1 << (n - v)
}

/// `c(x)_v = Σ_{u ~ v} x_u mod 2`.
pub fn parity_of(g: &Graph, x: usize) -> usize {
    let n = g.n();
    let mut out = 0;
    for v in 1..=n {
        let s = g
            .neighbors(v)
            .iter()
            .filter(|&&u| x & vbit(n, u) != 0)
            .count();
        if s % 2 == 1 {
            out |= vbit(n, v);
        }
    }
    out
}

/// `K_v = X_v Π_{u~v} Z_u` applied to a state.
pub fn stabilizer(g: &Graph, v: usize, psi: &DVector<C64>) -> DVector<C64> {
    let n = g.n();
    let nb = g.neighbors(v);
    let mut out = DVector::zeros(psi.len());
    for x in 0..psi.len() {
        let sign = nb.iter().filter(|&&u| x & vbit(n, u) != 0).count() % 2;
        let amp = if sign == 1 { -psi[x] } else { psi[x] };
        out[x ^ vbit(n, v)] += amp;
    }
    out
}

/// CNOT from qubit `c` to `t` on a `q`-qubit register, qubit 0 leftmost.
fn cnot_inplace(v: &mut DVector<C64>, q: usize, c: usize, t: usize) {
    let (mc, mt) = (1 << (q - 1 - c), 1 << (q - 1 - t));
    for i in 0..v.len() {
        if i & mc != 0 && i & mt == 0 {
            v.swap_rows(i, i | mt);
        }
    }
}

fn hadamard_inplace(v: &mut DVector<C64>, q: usize, k: usize) {
    let m = 1 << (q - 1 - k);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..v.len() {
        if i & m == 0 {
            let (a, b) = (v[i], v[i | m]);
            v[i] = (a + b) * r;
            v[i | m] = (a - b) * r;
        }
    }
}

/// The Bell-measurement circuit on pairs `(O_j, O'_j)` of the block layout
/// `O_1..O_n O'_1..O'_n`: CNOT from `O_j` to `O'_j`, then `H` on `O_j`.
/// Afterwards `O` holds the phase bits `z` and `O'` the parity bits `x`.
pub fn bell_circuit(n: usize, v: &DVector<C64>) -> DVector<C64> {
    let mut w = v.clone();
    for j in 0..n {
        cnot_inplace(&mut w, 2 * n, j, n + j);
        hadamard_inplace(&mut w, 2 * n, j);
    }
    w
}

/// Acceptance probability of the protocol on a block-layout input: run the
/// circuit and keep outcomes with `z = c(x)`.
pub fn circuit_accept(g: &Graph, v: &DVector<C64>) -> f64 {
    let n = g.n();
    let w = bell_circuit(n, v);
    (0..1usize << n)
        .map(|x| w[(parity_of(g, x) << n) | x].norm_sqr())
        .sum()
}

/// `Ω_g` as a dense matrix, column by column through the circuit.
pub fn circuit_omega(g: &Graph) -> DMatrix<C64> {
    let n = g.n();
    let dim = 1usize << (2 * n);
    // Ω = U† Π U, with U the circuit and Π the accepted outcomes.
    let mut u = DMatrix::<C64>::zeros(dim, dim);
    for i in 0..dim {
        let mut e = DVector::zeros(dim);
        e[i] = cx(1.0);
        u.set_column(i, &bell_circuit(n, &e));
    }
    let mut pi = DMatrix::<C64>::zeros(dim, dim);
    for x in 0..1usize << n {
        let k = (parity_of(g, x) << n) | x;
        pi[(k, k)] = cx(1.0);
    }
    u.adjoint() * pi * u
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
