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

use super::{check_dims, Kron, C64, DENSE_CAP};
use crate::error::{Error, Result};

/// One term `weight * (F_1 ⊗ F_2 ⊗ ... ⊗ F_m)` of a factored operator.
#[derive(Clone, Debug)]
pub struct FactoredTerm {
    pub weight: C64,
    pub factors: Vec<DMatrix<C64>>,
}

/// Dense square operator with subsystem metadata.
///
/// `hermitian` is a checked tag: constructors that set it verify the matrix.
/// An optional factored form allows applying the operator without touching
/// the dense entries; [`Operator::factored_deviation`] compares the two.
#[derive(Clone, Debug)]
pub struct Operator {
    entries: DMatrix<C64>,
    dims: Vec<usize>,
    hermitian: bool,
    factored: Option<Vec<FactoredTerm>>,
}

const HERMITIAN_TOL: f64 = 1e-12;

impl Operator {
    pub fn new(entries: DMatrix<C64>, dims: Vec<usize>) -> Result<Self> {
        let dim = entries.nrows();
        if dim > DENSE_CAP {
            return Err(Error::DenseCapExceeded {
                dim,
                cap: DENSE_CAP,
            });
        }
        Operator::new_forced(entries, dims)
    }

    /// Like [`Operator::new`] without the dense-size cap.
    pub fn new_forced(entries: DMatrix<C64>, dims: Vec<usize>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "operator must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        check_dims(&dims, entries.nrows())?;
        Ok(Operator {
            entries,
            dims,
            hermitian: false,
            factored: None,
        })
    }

    /// Construct and tag as Hermitian; fails if `max|A - A†|` is too large.
    pub fn hermitian(entries: DMatrix<C64>, dims: Vec<usize>) -> Result<Self> {
        Operator::new(entries, dims)?.into_hermitian()
    }

    pub fn identity(dims: Vec<usize>) -> Result<Self> {
        let dim: usize = dims.iter().product();
        Operator::hermitian(DMatrix::identity(dim, dim), dims)
    }

    /// Operator given as a sum of weighted tensor-product terms. The dense
    /// entries are expanded once; the factored form is kept for
    /// matrix-free application.
    pub fn from_factored(terms: Vec<FactoredTerm>, dims: Vec<usize>) -> Result<Self> {
        let dim: usize = dims.iter().product();
        let mut entries = DMatrix::zeros(dim, dim);
        for term in &terms {
            if term.factors.len() != dims.len()
                || term
                    .factors
                    .iter()
                    .zip(&dims)
                    .any(|(f, &d)| f.nrows() != d || f.ncols() != d)
            {
                return Err(Error::DimensionMismatch(
                    "factor shapes do not match subsystem dims".into(),
                ));
            }
            entries += expand_term(term) * term.weight;
        }
        let mut op = Operator::new(entries, dims)?;
        op.factored = Some(terms);
        Ok(op)
    }

    /// Re-tag as Hermitian after checking.
    pub fn into_hermitian(mut self) -> Result<Self> {
        let deviation = self.hermitian_deviation();
        let scale = self.entries.iter().map(|z| z.norm()).fold(1.0, f64::max);
        if deviation > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian { deviation });
        }
        self.hermitian = true;
        Ok(self)
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<C64> {
        self.entries
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn factored_form(&self) -> Option<&[FactoredTerm]> {
        self.factored.as_deref()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        max_abs_diff(&self.entries, &self.entries.adjoint())
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.entries * v
    }

    /// Matrix-free application through the factored form, if present.
    pub fn apply_factored(&self, v: &DVector<C64>) -> Option<DVector<C64>> {
        let terms = self.factored.as_ref()?;
        let mut out = DVector::zeros(v.len());
        for term in terms {
            let mut w = v.clone();
            for (k, f) in term.factors.iter().enumerate() {
                w = apply_on_subsystem(f, &w, &self.dims, k);
            }
            out += w * term.weight;
        }
        Some(out)
    }

    /// Max-entry deviation between the factored form and the dense entries.
    pub fn factored_deviation(&self) -> Option<f64> {
        let terms = self.factored.as_ref()?;
        let dim = self.dim();
        let mut dense = DMatrix::zeros(dim, dim);
        for term in terms {
            dense += expand_term(term) * term.weight;
        }
        Some(max_abs_diff(&dense, &self.entries))
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            entries: self.entries.adjoint(),
            dims: self.dims.clone(),
            hermitian: self.hermitian,
            factored: None,
        }
    }

    /// `self * other`.
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}-dim and {}-dim operators",
                self.dim(),
                other.dim()
            )));
        }
        Operator::new_forced(&self.entries * &other.entries, self.dims.clone())
    }

    pub fn scaled(&self, c: C64) -> Operator {
        Operator {
            entries: &self.entries * c,
            dims: self.dims.clone(),
            hermitian: self.hermitian && c.im == 0.0,
            factored: None,
        }
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch("operator sizes differ".into()));
        }
        Ok(Operator {
            entries: &self.entries + &other.entries,
            dims: self.dims.clone(),
            hermitian: self.hermitian && other.hermitian,
            factored: None,
        })
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    /// `<v|A|v>` for a vector of matching dimension.
    pub fn expectation(&self, v: &DVector<C64>) -> C64 {
        v.dotc(&(&self.entries * v))
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        max_abs_diff(&self.entries, &other.entries)
    }
}

impl Kron for Operator {
    fn kron(&self, other: &Self) -> Result<Self> {
        let dim = self.dim() * other.dim();
        if dim > DENSE_CAP {
            return Err(Error::DenseCapExceeded {
                dim,
                cap: DENSE_CAP,
            });
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Ok(Operator {
            entries: self.entries.kronecker(&other.entries),
            dims,
            hermitian: self.hermitian && other.hermitian,
            factored: None,
        })
    }
}

pub(crate) fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn expand_term(term: &FactoredTerm) -> DMatrix<C64> {
    let mut it = term.factors.iter();
    let first = it
        .next()
        .cloned()
        .unwrap_or_else(|| DMatrix::identity(1, 1));
    it.fold(first, |acc, f| acc.kronecker(f))
}

/// Apply `gate` to subsystem `k` of a vector laid out by `dims`.
pub(crate) fn apply_on_subsystem(
    gate: &DMatrix<C64>,
    v: &DVector<C64>,
    dims: &[usize],
    k: usize,
) -> DVector<C64> {
    let d = dims[k];
    let inner: usize = dims[k + 1..].iter().product();
    let outer: usize = dims[..k].iter().product();
    let mut out = DVector::zeros(v.len());
    for o in 0..outer {
        for i in 0..inner {
            let base = o * d * inner + i;
            for r in 0..d {
                let mut acc = C64::new(0.0, 0.0);
                for c in 0..d {
                    acc += gate[(r, c)] * v[base + c * inner];
                }
                out[base + r * inner] = acc;
            }
        }
    }
    out
}
