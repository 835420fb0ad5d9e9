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

//! The two-copy Bell-measurement strategy for graph states.
//!
//! Two-copy vectors use block layout: the first `n` qubits are the first
//! copy `O_1..O_n`, the last `n` the second copy `O'_1..O'_n`. Verifier `j`
//! holds the pair `(O_j, O'_j)`; [`GraphStrategy::layout`] maps block indices
//! to the interleaved per-verifier order.

mod bell;
mod optimality;

pub use bell::{bell_outcome_probabilities, bell_transform, inverse_bell_transform, split_outcome};
pub use optimality::{verify_graph_optimality, OptimalityReport};

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{disentangle_operators, graph_state, parity_code, Graph, GraphCode};
use crate::qcore::{
    bell_ket, c64, max_abs_diff, random_unit_vector, Ket, Operator, C64, DENSE_CAP, TOL,
};
use crate::strategy::{swap_vector, KrausChannel, Strategy, TwoCopyOperator};

/// How `Ω_g` is held.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    /// Dense up to 4 vertices, matrix-free above.
    Auto,
    Dense,
    MatrixFree,
}

/// `Ω_g` for a graph, dense or matrix-free.
#[derive(Clone, Debug)]
pub struct GraphStrategy {
    graph: Graph,
    target: Ket,
    strategy: Option<Strategy>,
    layout: Vec<usize>,
}

/// `Ω_g` with the default representation.
pub fn omega_graph(g: &Graph) -> Result<GraphStrategy> {
    omega_graph_with(g, Representation::Auto)
}

pub fn omega_graph_with(g: &Graph, repr: Representation) -> Result<GraphStrategy> {
    let n = g.n();
    let dense = match repr {
        Representation::Auto => n <= 4,
        Representation::Dense => true,
        Representation::MatrixFree => false,
    };
    let target = if dense || 1usize << n <= DENSE_CAP {
        graph_state(g)?
    } else {
        crate::graphs::graph_state_forced(g)?
    };
    let dim = 1usize << (2 * n);
    let strategy = if dense {
        if dim > DENSE_CAP {
            return Err(Error::DenseCapExceeded {
                dim,
                cap: DENSE_CAP,
            });
        }
        let omega = Operator::hermitian(omega_graph_term_sum(g), vec![2; 2 * n])?;
        Some(Strategy::trusted(omega, target.clone(), 2, None)?)
    } else {
        None
    };
    Ok(GraphStrategy {
        graph: g.clone(),
        layout: (0..dim).map(|i| block_to_pair(n, i)).collect(),
        target,
        strategy,
    })
}

/// Dense `Σ_b ⊗_j |Φ_{c_j(b) b_j}><Φ_{c_j(b) b_j}|`, one rank-one term per
/// code `b`, assembled in block layout.
pub fn omega_graph_term_sum(g: &Graph) -> DMatrix<C64> {
    let n = g.n();
    let dim = 1usize << (2 * n);
    let mut out = DMatrix::zeros(dim, dim);
    for b in GraphCode::all(n) {
        let v = term_vector(g, &b);
        out += &v * v.adjoint();
    }
    out
}

/// `⊗_j |Φ_{c_j(b) b_j}>` in block layout.
pub fn term_vector(g: &Graph, b: &GraphCode) -> DVector<C64> {
    let n = g.n();
    let c = parity_code(g, b).expect("length matches");
    let mut pair = DVector::from_element(1, c64(1.0));
    for j in 0..n {
        let phi = bell_ket(c.bits()[j], b.bits()[j]);
        pair = pair.kronecker(phi.amplitudes());
    }
    DVector::from_fn(pair.len(), |i, _| pair[block_to_pair(n, i)])
}

/// Pair-layout index of a block-layout basis index.
pub fn block_to_pair(n: usize, block: usize) -> usize {
    let mut out = 0;
    for j in 0..n {
        let o = (block >> (2 * n - 1 - j)) & 1;
        let op = (block >> (n - 1 - j)) & 1;
        out |= o << (2 * n - 1 - 2 * j);
        out |= op << (2 * n - 2 - 2 * j);
    }
    out
}

/// Inverse of [`block_to_pair`].
pub fn pair_to_block(n: usize, pair: usize) -> usize {
    let mut out = 0;
    for j in 0..n {
        let o = (pair >> (2 * n - 1 - 2 * j)) & 1;
        let op = (pair >> (2 * n - 2 - 2 * j)) & 1;
        out |= o << (2 * n - 1 - j);
        out |= op << (n - 1 - j);
    }
    out
}

impl GraphStrategy {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `|G>`, single copy.
    pub fn target(&self) -> &Ket {
        &self.target
    }

    /// The dense strategy, when built.
    pub fn strategy(&self) -> Option<&Strategy> {
        self.strategy.as_ref()
    }

    pub fn is_dense(&self) -> bool {
        self.strategy.is_some()
    }

    /// `layout[block_index] = pair_index`.
    pub fn layout(&self) -> &[usize] {
        &self.layout
    }

    /// Permute a block-layout vector into pair layout.
    pub fn to_pair_layout(&self, v: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(v.len());
        for (block, &pair) in self.layout.iter().enumerate() {
            out[pair] = v[block];
        }
        out
    }

    /// `Ω_g v`: keep the Bell components whose outcome passes the parity test.
    pub fn apply_matrix_free(&self, v: &DVector<C64>) -> DVector<C64> {
        let n = self.graph.n();
        let mut w = bell_transform(n, v);
        for (idx, amp) in w.iter_mut().enumerate() {
            let (b, b_prime) = split_outcome(n, idx);
            if self.graph.parity_bits(b) != b_prime {
                *amp = c64(0.0);
            }
        }
        inverse_bell_transform(n, &w)
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        match &self.strategy {
            Some(s) => s.omega().apply(v),
            None => self.apply_matrix_free(v),
        }
    }

    /// `<v|Ω_g|v>`.
    pub fn expectation(&self, v: &DVector<C64>) -> f64 {
        v.dotc(&self.apply(v)).re
    }
}

impl TwoCopyOperator for GraphStrategy {
    fn single_target(&self) -> &Ket {
        &self.target
    }

    fn apply_two_copy(&self, v: &DVector<C64>) -> DVector<C64> {
        self.apply(v)
    }

    /// Exact for the dense form; for the matrix-free form, the largest entry
    /// of `ΩFv - FΩv` over four seeded random probes.
    fn swap_asymmetry(&self) -> f64 {
        match &self.strategy {
            Some(s) => s.swap_asymmetry(),
            None => {
                let d = self.target.dim();
                let mut rng = ChaCha8Rng::seed_from_u64(17);
                (0..4)
                    .map(|_| {
                        let v = random_unit_vector(d * d, &mut rng);
                        let lhs = self.apply(&swap_vector(&v, d));
                        let rhs = swap_vector(&self.apply(&v), d);
                        (lhs - rhs).camax()
                    })
                    .fold(0.0, f64::max)
            }
        }
    }
}

fn check_code(g: &Graph, b: &GraphCode) -> Result<()> {
    if b.len() != g.n() {
        return Err(Error::CodeLength {
            expected: g.n(),
            got: b.len(),
        });
    }
    Ok(())
}

/// Acceptance rule for the per-verifier outcomes: verifier `j` reads Bell
/// outcome `(z, x)` and records `b_j = x`, `b'_j = z`. The test passes iff
/// `b' = c(b)`.
pub fn decide_parity_pass(g: &Graph, b: &GraphCode, b_prime: &GraphCode) -> Result<bool> {
    check_code(g, b)?;
    check_code(g, b_prime)?;
    Ok(parity_code(g, b)? == *b_prime)
}

/// Exact and decomposed passing probabilities of a product fake.
#[derive(Clone, Debug, Serialize)]
pub struct PassProbability {
    pub exact: f64,
    pub analytic: f64,
    pub eps_r: f64,
    pub eps_r_prime: f64,
    /// `<G⊥ G'⊥|Ω_g|G⊥ G'⊥>`, zero when either fake equals the target.
    pub q: f64,
}

/// Splits `σ = α|G> + β|G⊥>`; returns `(1 - |α|², G⊥)` with `G⊥ = None`
/// when `σ` is the target up to phase.
pub(crate) fn split_against(target: &Ket, sigma: &Ket) -> (f64, Option<DVector<C64>>) {
    let alpha = target.inner(sigma);
    let rest = sigma.amplitudes() - target.amplitudes() * alpha;
    let norm = rest.norm();
    let eps = (1.0 - alpha.norm_sqr()).clamp(0.0, 1.0);
    if norm < 1e-12 {
        (eps, None)
    } else {
        (eps, Some(rest / c64(norm)))
    }
}

pub fn graph_pass_probability(
    gs: &GraphStrategy,
    sigma: &Ket,
    sigma_prime: &Ket,
) -> Result<PassProbability> {
    let d = gs.target.dim();
    for s in [sigma, sigma_prime] {
        if s.dim() != d {
            return Err(Error::DimensionMismatch(
                "fake state has the wrong size".into(),
            ));
        }
        s.ensure_normalized(TOL)?;
    }
    let pair = sigma.amplitudes().kronecker(sigma_prime.amplitudes());
    let exact = gs.expectation(&pair);
    let (eps_r, perp) = split_against(&gs.target, sigma);
    let (eps_r_prime, perp_prime) = split_against(&gs.target, sigma_prime);
    let q = match (perp, perp_prime) {
        (Some(a), Some(b)) => gs.expectation(&a.kronecker(&b)),
        _ => 0.0,
    };
    let analytic = (1.0 - eps_r) * (1.0 - eps_r_prime) + eps_r * eps_r_prime * q;
    Ok(PassProbability {
        exact,
        analytic,
        eps_r,
        eps_r_prime,
        q,
    })
}

/// `F = √p_s`.
pub fn fidelity_from_passrate(p_s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_s) {
        return Err(Error::OutOfRange(format!(
            "pass rate {p_s} is outside [0, 1]"
        )));
    }
    Ok(p_s.sqrt())
}

/// Kraus maps `M_b = [L_g(b)† ⊗ |0><b|] A_g`, one per code `b`, on the
/// block-layout two-copy register.
pub fn graph_channel(g: &Graph) -> Result<KrausChannel> {
    let n = g.n();
    let d = 1usize << n;
    if d * d > DENSE_CAP {
        return Err(Error::DenseCapExceeded {
            dim: d * d,
            cap: DENSE_CAP,
        });
    }
    let a_g = disentangle_operators(g, &GraphCode::zeros(n))?
        .a_g
        .into_entries();
    let mut ops = Vec::with_capacity(d);
    for b in GraphCode::all(n) {
        let l = disentangle_operators(g, &b)?.l_g.into_entries();
        let mut proj = DMatrix::<C64>::zeros(d, d);
        proj[(0, b.index())] = c64(1.0);
        ops.push(l.adjoint().kronecker(&proj) * &a_g);
    }
    KrausChannel::new(ops, vec![2; 2 * n], vec![2; 2 * n])
}

/// Largest `|<t_b|t_b'>|` over distinct codes, for the term vectors of
/// [`omega_graph_term_sum`].
pub fn term_overlap(g: &Graph) -> f64 {
    let terms: Vec<DVector<C64>> = GraphCode::all(g.n()).map(|b| term_vector(g, &b)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            worst = worst.max(terms[i].dotc(&terms[j]).norm());
        }
    }
    worst
}

/// `max|Ω_g(dense) - Ω_g(matrix-free)|` over the columns of the identity.
pub fn matrix_free_deviation(gs: &GraphStrategy) -> Option<f64> {
    let s = gs.strategy.as_ref()?;
    let dim = s.omega().dim();
    let mut cols = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        let mut e = DVector::zeros(dim);
        e[k] = c64(1.0);
        cols.set_column(k, &gs.apply_matrix_free(&e));
    }
    Some(max_abs_diff(&cols, s.omega().entries()))
}
