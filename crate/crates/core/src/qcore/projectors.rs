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

use nalgebra::DMatrix;

use super::{c64, eigvalsh, Ket, Operator, C64, TOL};
use crate::error::{Error, Result};

/// `(I ⊗ X^x Z^z)|Φ00>` with `|Φ00> = (|00> + |11>)/√2`.
pub fn bell_ket(z: u8, x: u8) -> Ket {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = [c64(0.0); 4];
    // Z^z then X^x on the second qubit of |00> + |11>.
    let sign = if z & 1 == 1 { -1.0 } else { 1.0 };
    let flip = (x & 1) as usize;
    amps[flip] = c64(h);
    amps[2 + (1 - flip)] = c64(h * sign);
    Ket::from_vec(amps.to_vec(), vec![2, 2]).expect("two-qubit ket")
}

/// Swap `F` of two copies of a space with subsystem dims `dims`.
pub fn swap_operator(dims: &[usize]) -> Result<Operator> {
    let d: usize = dims.iter().product();
    let mut m = DMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            m[(b * d + a, a * d + b)] = c64(1.0);
        }
    }
    let mut all = dims.to_vec();
    all.extend_from_slice(dims);
    Operator::hermitian(m, all)
}

/// The two-copy operators built from a target `ψ`.
#[derive(Clone, Debug)]
pub struct SymmetricProjectors {
    /// Swap of the two copies.
    pub swap: Operator,
    /// `(F + I)/2`.
    pub symmetric: Operator,
    /// `|ψ><ψ| ⊗ (I - |ψ><ψ|)`.
    pub psi_perp: Operator,
}

pub fn symmetric_projectors(psi: &Ket) -> Result<SymmetricProjectors> {
    psi.ensure_normalized(TOL)?;
    let d = psi.dim();
    let swap = swap_operator(psi.dims())?;
    let id = DMatrix::<C64>::identity(d * d, d * d);
    let symmetric = Operator::hermitian((swap.entries() + id) * c64(0.5), swap.dims().to_vec())?;
    let proj = psi.projector()?.into_entries();
    let perp = DMatrix::<C64>::identity(d, d) - &proj;
    let psi_perp = Operator::hermitian(proj.kronecker(&perp), swap.dims().to_vec())?;
    Ok(SymmetricProjectors {
        swap,
        symmetric,
        psi_perp,
    })
}

/// A state accepted by [`overlap_fidelity`].
pub trait Density {
    /// `<ψ|ρ|ψ>` after validating `ρ`.
    fn overlap_with(&self, psi: &Ket) -> Result<f64>;
}

impl Density for Ket {
    fn overlap_with(&self, psi: &Ket) -> Result<f64> {
        if self.dim() != psi.dim() {
            return Err(Error::DimensionMismatch("state sizes differ".into()));
        }
        self.ensure_normalized(TOL)?;
        Ok(psi.inner(self).norm_sqr())
    }
}

impl Density for Operator {
    fn overlap_with(&self, psi: &Ket) -> Result<f64> {
        if self.dim() != psi.dim() {
            return Err(Error::DimensionMismatch("state sizes differ".into()));
        }
        let tr = self.trace();
        if (tr - c64(1.0)).norm() > TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let rho = self.clone().into_hermitian()?;
        let least = *eigvalsh(rho.entries()).last().expect("nonempty");
        if least < -TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {least}"
            )));
        }
        Ok(rho.expectation(psi.amplitudes()).re)
    }
}

/// `<ψ|ρ|ψ>`, clamped into `[0, 1]`.
pub fn overlap_fidelity<S: Density + ?Sized>(psi: &Ket, rho: &S) -> Result<f64> {
    psi.ensure_normalized(TOL)?;
    Ok(rho.overlap_with(psi)?.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::hermitian_spectrum;

    #[test]
    fn bell_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phi = bell_ket(0, 0);
        let want = [h, 0.0, 0.0, h];
        for (a, w) in phi.amplitudes().iter().zip(want) {
            assert!((a - c64(w)).norm() < 1e-15);
        }
        let singlet = bell_ket(1, 1);
        let want = [0.0, h, -h, 0.0];
        for (a, w) in singlet.amplitudes().iter().zip(want) {
            assert!((a - c64(w)).norm() < 1e-15);
        }
        for i in 0..4u8 {
            for j in 0..4u8 {
                let o = bell_ket(i >> 1, i & 1)
                    .inner(&bell_ket(j >> 1, j & 1))
                    .norm();
                assert!((o - if i == j { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn swap_exchanges_basis_states() {
        let f = swap_operator(&[2]).unwrap();
        // |01> -> |10>
        let v = Ket::basis(1, vec![2, 2]).unwrap();
        let out = f.apply(v.amplitudes());
        assert_eq!(out[2], c64(1.0));
    }

    #[test]
    fn projector_traces_and_kernel() {
        let psi = Ket::random(vec![2, 2], &mut rand::rng());
        let p = symmetric_projectors(&psi).unwrap();
        assert!((p.symmetric.trace().re - 10.0).abs() < 1e-12);
        let pp = psi.amplitudes().kronecker(psi.amplitudes());
        assert!(p.psi_perp.apply(&pp).norm() < 1e-14);
        let s = hermitian_spectrum(&p.symmetric, false).unwrap();
        assert!(s
            .eigenvalues
            .iter()
            .all(|&e| e.abs() < 1e-10 || (e - 1.0).abs() < 1e-10));
    }

    #[test]
    fn fidelity_examples() {
        let zero = Ket::basis(0, vec![2]).unwrap();
        let one = Ket::basis(1, vec![2]).unwrap();
        assert_eq!(
            overlap_fidelity(&zero, &one.projector().unwrap()).unwrap(),
            0.0
        );
        assert!((overlap_fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-15);

        let phi = bell_ket(0, 0);
        let eps = 0.25;
        let rho = phi
            .projector()
            .unwrap()
            .scaled(c64(1.0 - eps))
            .add(&bell_ket(1, 1).projector().unwrap().scaled(c64(eps)))
            .unwrap();
        assert!((overlap_fidelity(&phi, &rho).unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn fidelity_rejects_bad_density() {
        let zero = Ket::basis(0, vec![2]).unwrap();
        let twice = zero.projector().unwrap().scaled(c64(2.0));
        assert!(overlap_fidelity(&zero, &twice).is_err());
        let neg = Operator::hermitian(
            DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c64(1.5), c64(-0.5)])),
            vec![2],
        )
        .unwrap();
        assert!(matches!(
            overlap_fidelity(&zero, &neg),
            Err(Error::InvalidDensity(_))
        ));
    }
}
