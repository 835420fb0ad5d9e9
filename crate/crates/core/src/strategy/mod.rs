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

//! Verification strategies and their efficiency quantities.

mod channel;
mod complexity;
mod json;
mod two_copy;

pub use channel::{reference_bell_artifacts, strategy_from_channel, KrausChannel};
pub(crate) use complexity::check_unit_interval;
pub use complexity::{
    single_copy_complexity, two_copy_complexity, ComplexityReport, Copies, FormulaId,
};
pub use two_copy::{
    symmetrize_two_copy, two_copy_analysis, InsuranceInfidelity, TwoCopyAnalysis, TwoCopyOperator,
};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::qcore::{
    c64, eigvalsh, max_abs_diff, max_eigvalsh, tensor_product, Ket, Operator, C64, TOL,
};

/// One binary test `T` chosen with probability `p`.
#[derive(Clone, Debug)]
pub struct Test {
    pub p: f64,
    pub op: Operator,
}

/// A verification operator `Ω` for `k` copies of a target state.
#[derive(Clone, Debug)]
pub struct Strategy {
    omega: Operator,
    target: Ket,
    copies: usize,
    decomposition: Option<Vec<Test>>,
}

impl Strategy {
    /// Validates `0 <= Ω <= 1`, `Ω ψ^{⊗k} = ψ^{⊗k}` and, when given, that the
    /// tests are projectors whose weighted sum is `Ω`.
    pub fn new(
        omega: Operator,
        target: Ket,
        copies: usize,
        decomposition: Option<Vec<Test>>,
    ) -> Result<Self> {
        let s = Strategy::trusted(omega, target, copies, decomposition)?;
        let eig = eigvalsh(s.omega.entries());
        let (hi, lo) = (eig[0], eig[eig.len() - 1]);
        if lo < -TOL || hi > 1.0 + TOL {
            return Err(Error::InvalidStrategy(format!(
                "spectrum [{lo}, {hi}] is outside [0, 1]"
            )));
        }
        if let Some(tests) = &s.decomposition {
            check_decomposition(tests, &s.omega)?;
        }
        Ok(s)
    }

    /// Skips the spectral and decomposition checks, keeping the shape,
    /// Hermiticity and fixed-point checks. For operators whose spectrum is
    /// known by construction.
    pub(crate) fn trusted(
        omega: Operator,
        target: Ket,
        copies: usize,
        decomposition: Option<Vec<Test>>,
    ) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidStrategy("copies must be at least 1".into()));
        }
        target.ensure_normalized(TOL)?;
        let omega = if omega.is_hermitian() {
            omega
        } else {
            omega.into_hermitian()?
        };
        let full = target.dim().checked_pow(copies as u32);
        if full != Some(omega.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "omega has dimension {}, target^{copies} has {:?}",
                omega.dim(),
                full
            )));
        }
        let s = Strategy {
            omega,
            target,
            copies,
            decomposition,
        };
        let t = s.full_target()?.into_amplitudes();
        let residual = (s.omega.apply(&t) - &t).camax();
        if residual > TOL {
            return Err(Error::TargetNotFixed { residual });
        }
        Ok(s)
    }

    pub fn omega(&self) -> &Operator {
        &self.omega
    }

    /// Single-copy target `ψ`.
    pub fn target(&self) -> &Ket {
        &self.target
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn decomposition(&self) -> Option<&[Test]> {
        self.decomposition.as_deref()
    }

    /// `ψ^{⊗k}`.
    pub fn full_target(&self) -> Result<Ket> {
        tensor_product(&vec![self.target.clone(); self.copies])
    }

    /// `Ω ⊗ Ω` as a two-copy strategy, with the product decomposition.
    pub fn tensor_square(&self) -> Result<Strategy> {
        if self.copies != 1 {
            return Err(Error::InvalidStrategy(
                "tensor_square needs a single-copy strategy".into(),
            ));
        }
        let omega = tensor_product(&[self.omega.clone(), self.omega.clone()])?;
        let decomposition = self.decomposition.as_ref().map(|tests| {
            let mut out = Vec::with_capacity(tests.len() * tests.len());
            for a in tests {
                for b in tests {
                    out.push(Test {
                        p: a.p * b.p,
                        op: tensor_product(&[a.op.clone(), b.op.clone()]).expect("within cap"),
                    });
                }
            }
            out
        });
        Strategy::trusted(omega, self.target.clone(), 2, decomposition)
    }
}

fn check_decomposition(tests: &[Test], omega: &Operator) -> Result<()> {
    if tests.is_empty() {
        return Err(Error::InvalidStrategy("empty decomposition".into()));
    }
    let total: f64 = tests.iter().map(|t| t.p).sum();
    if (total - 1.0).abs() > TOL || tests.iter().any(|t| t.p < 0.0) {
        return Err(Error::InvalidStrategy(format!(
            "test probabilities must be nonnegative and sum to 1, got {total}"
        )));
    }
    let mut sum = DMatrix::<C64>::zeros(omega.dim(), omega.dim());
    for (i, t) in tests.iter().enumerate() {
        if t.op.dim() != omega.dim() {
            return Err(Error::DimensionMismatch(format!(
                "test {i} has the wrong size"
            )));
        }
        let e = t.op.entries();
        let dev = max_abs_diff(&(e * e), e).max(t.op.hermitian_deviation());
        if dev > TOL {
            return Err(Error::InvalidStrategy(format!(
                "test {i} is not a projector (deviation {dev:e})"
            )));
        }
        sum += e * c64(t.p);
    }
    let dev = max_abs_diff(&sum, omega.entries());
    if dev > TOL {
        return Err(Error::InvalidStrategy(format!(
            "weighted tests differ from omega by {dev:e}"
        )));
    }
    Ok(())
}

/// Second largest eigenvalue of a single-copy strategy, obtained by
/// deflating the target eigenvector only.
pub fn lambda2(s: &Strategy) -> Result<f64> {
    if s.copies != 1 {
        return Err(Error::InvalidStrategy(format!(
            "lambda2 needs a single-copy strategy, got {} copies",
            s.copies
        )));
    }
    let psi = s.target.amplitudes();
    let d = psi.len();
    let q = DMatrix::<C64>::identity(d, d) - psi * psi.adjoint();
    let deflated = &q * s.omega.entries() * &q;
    Ok(max_eigvalsh(&deflated))
}

/// `F Ω F` for an operator on two copies of a `d`-dimensional space.
pub fn swap_conjugate(m: &DMatrix<C64>, d: usize) -> DMatrix<C64> {
    DMatrix::from_fn(d * d, d * d, |r, c| {
        let (a, b) = (r / d, r % d);
        let (x, y) = (c / d, c % d);
        m[(b * d + a, y * d + x)]
    })
}

/// `F v` for a vector on two copies of a `d`-dimensional space.
pub fn swap_vector(v: &DVector<C64>, d: usize) -> DVector<C64> {
    DVector::from_fn(d * d, |r, _| v[(r % d) * d + r / d])
}
