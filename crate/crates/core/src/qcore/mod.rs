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

//! Dense complex linear algebra and quantum primitives.

mod ket;
mod operator;
mod projectors;
mod spectrum;

pub mod gates;

pub use ket::Ket;
pub use operator::{FactoredTerm, Operator};
pub use projectors::{
    bell_ket, overlap_fidelity, swap_operator, symmetric_projectors, Density, SymmetricProjectors,
};
pub use spectrum::{
    hermitian_spectrum, max_eigenvalue_matfree, top_eigenpair_matfree, Spectrum, TopEigen,
};

pub(crate) use ket::{check_dims, phase_aligned_distance, random_unit_vector};
pub(crate) use operator::max_abs_diff;
pub(crate) use spectrum::{eigh, eigvalsh, max_eigvalsh};

pub type C64 = num_complex::Complex<f64>;

/// Default absolute tolerance for structural checks.
pub const TOL: f64 = 1e-10;

/// Largest dense operator side accepted without forcing.
pub const DENSE_CAP: usize = 8192;

/// Kronecker product of two values of the same kind.
pub trait Kron: Sized {
    fn kron(&self, other: &Self) -> crate::Result<Self>;
}

/// Kronecker product of a nonempty list, in order.
///
/// Mixing kets and operators is rejected at compile time.
pub fn tensor_product<T: Kron + Clone>(factors: &[T]) -> crate::Result<T> {
    let (first, rest) = factors.split_first().ok_or(crate::Error::EmptyFactors)?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.kron(f))
}

pub(crate) fn c64(re: f64) -> C64 {
    C64::new(re, 0.0)
}
