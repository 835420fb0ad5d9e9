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

use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{Kron, Operator, C64};
use crate::error::{Error, Result};

/// A pure state over an ordered list of subsystems.
///
/// The leftmost subsystem is the most significant digit of the basis index,
/// so `|b1 b2 ... bn>` sits at index `sum_j b_j * d^(n-j)` for uniform `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    amplitudes: DVector<C64>,
    dims: Vec<usize>,
}

impl Ket {
    pub fn new(amplitudes: DVector<C64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        Ok(Ket { amplitudes, dims })
    }

    pub fn from_vec(amplitudes: Vec<C64>, dims: Vec<usize>) -> Result<Self> {
        Ket::new(DVector::from_vec(amplitudes), dims)
    }

    /// Real amplitudes, convenient for hand-written states.
    pub fn from_real(amplitudes: &[f64], dims: Vec<usize>) -> Result<Self> {
        Ket::from_vec(amplitudes.iter().map(|&a| C64::new(a, 0.0)).collect(), dims)
    }

    /// Computational basis state `|index>`.
    pub fn basis(index: usize, dims: Vec<usize>) -> Result<Self> {
        let dim: usize = dims.iter().product();
        if index >= dim {
            return Err(Error::DimensionMismatch(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amps = DVector::zeros(dim);
        amps[index] = C64::new(1.0, 0.0);
        Ket::new(amps, dims)
    }

    /// Haar-random pure state.
    pub fn random<R: Rng + ?Sized>(dims: Vec<usize>, rng: &mut R) -> Self {
        let dim: usize = dims.iter().product();
        let v = random_unit_vector(dim, rng);
        Ket {
            amplitudes: v,
            dims,
        }
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<C64> {
        self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::NotNormalized { norm: n });
        }
        self.amplitudes /= C64::new(n, 0.0);
        Ok(self)
    }

    pub fn ensure_normalized(&self, tol: f64) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Ket) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|self><self|`, tagged Hermitian.
    pub fn projector(&self) -> Result<Operator> {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        Operator::hermitian(m, self.dims.clone())
    }

    /// Largest entrywise deviation after removing the relative global phase.
    ///
    /// The phase is fixed on the largest-magnitude amplitude of `self`.
    pub fn phase_aligned_distance(&self, other: &Ket) -> f64 {
        phase_aligned_distance(&self.amplitudes, &other.amplitudes)
    }
}

impl Kron for Ket {
    fn kron(&self, other: &Self) -> Result<Self> {
        let amplitudes = self.amplitudes.kronecker(&other.amplitudes);
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Ok(Ket { amplitudes, dims })
    }
}

pub(crate) fn check_dims(dims: &[usize], len: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dimensions must be positive, got {dims:?}"
        )));
    }
    let prod: usize = dims.iter().product();
    if prod != len {
        return Err(Error::DimensionMismatch(format!(
            "dims {dims:?} have product {prod}, vector has length {len}"
        )));
    }
    Ok(())
}

pub(crate) fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<C64> {
    let mut v = DVector::from_fn(dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let n = v.norm();
    v /= C64::new(n, 0.0);
    v
}

pub(crate) fn phase_aligned_distance(a: &DVector<C64>, b: &DVector<C64>) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let pivot = a.icamax();
    let phase = if b[pivot].norm() > 1e-300 && a[pivot].norm() > 1e-300 {
        let r = a[pivot] / b[pivot];
        r / r.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y * phase).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::tensor_product;

    #[test]
    fn rejects_inconsistent_dims() {
        assert!(Ket::from_real(&[1.0, 0.0, 0.0], vec![2, 2]).is_err());
        assert!(Ket::from_real(&[1.0, 0.0], vec![0, 2]).is_err());
    }

    #[test]
    fn zero_with_bell_state() {
        let zero = Ket::basis(0, vec![2]).unwrap();
        let bell = crate::qcore::bell_ket(0, 0);
        let v = tensor_product(&[zero, bell]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [h, 0.0, 0.0, h, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(v.dims(), &[2, 2, 2]);
        for (a, e) in v.amplitudes().iter().zip(expect) {
            assert!((a - C64::new(e, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn phase_alignment_ignores_global_phase() {
        let mut rng = rand::rng();
        let k = Ket::random(vec![2, 2], &mut rng);
        let rotated = Ket::new(k.amplitudes() * C64::from_polar(1.0, 0.7), vec![2, 2]).unwrap();
        assert!(k.phase_aligned_distance(&rotated) < 1e-14);
    }
}
