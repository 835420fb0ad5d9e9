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

use super::{Strategy, Test};
use crate::error::{Error, Result};
use crate::qcore::{c64, gates, max_abs_diff, tensor_product, Ket, Kron, Operator, C64, TOL};

/// A channel given by Kraus maps from an input to an output space.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    ops: Vec<DMatrix<C64>>,
    in_dims: Vec<usize>,
    out_dims: Vec<usize>,
}

impl KrausChannel {
    /// Checks shapes and `Σ M†M = 1`.
    pub fn new(ops: Vec<DMatrix<C64>>, in_dims: Vec<usize>, out_dims: Vec<usize>) -> Result<Self> {
        let din: usize = in_dims.iter().product();
        let dout: usize = out_dims.iter().product();
        if ops.is_empty() {
            return Err(Error::DimensionMismatch(
                "channel needs at least one Kraus map".into(),
            ));
        }
        if let Some(i) = ops
            .iter()
            .position(|m| m.nrows() != dout || m.ncols() != din)
        {
            return Err(Error::DimensionMismatch(format!(
                "Kraus map {i} is not {dout}x{din}"
            )));
        }
        let ch = KrausChannel {
            ops,
            in_dims,
            out_dims,
        };
        let deviation = ch.tp_deviation();
        if deviation > TOL {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(ch)
    }

    pub fn ops(&self) -> &[DMatrix<C64>] {
        &self.ops
    }

    pub fn in_dims(&self) -> &[usize] {
        &self.in_dims
    }

    pub fn out_dims(&self) -> &[usize] {
        &self.out_dims
    }

    /// `max|Σ M†M - 1|`.
    pub fn tp_deviation(&self) -> f64 {
        let d: usize = self.in_dims.iter().product();
        let mut sum = DMatrix::<C64>::zeros(d, d);
        for m in &self.ops {
            sum += m.adjoint() * m;
        }
        max_abs_diff(&sum, &DMatrix::identity(d, d))
    }

    /// Heisenberg-picture action `Σ M† X M`.
    pub fn adjoint_apply(&self, x: &DMatrix<C64>) -> DMatrix<C64> {
        let d: usize = self.in_dims.iter().product();
        let mut out = DMatrix::zeros(d, d);
        for m in &self.ops {
            out += m.adjoint() * x * m;
        }
        out
    }
}

/// `Ω = Λ†(|0..0><0..0|)` for a channel that sends `ψ^{⊗k}` to the all-zero
/// state through every Kraus map.
pub fn strategy_from_channel(ch: &KrausChannel, target: &Ket, copies: usize) -> Result<Strategy> {
    let deviation = ch.tp_deviation();
    if deviation > TOL {
        return Err(Error::NotTracePreserving { deviation });
    }
    let full = tensor_product(&vec![target.clone(); copies.max(1)])?;
    let din: usize = ch.in_dims.iter().product();
    if full.dim() != din {
        return Err(Error::DimensionMismatch(format!(
            "channel input has dimension {din}, target^{copies} has {}",
            full.dim()
        )));
    }
    for (index, m) in ch.ops.iter().enumerate() {
        let out = m * full.amplitudes();
        let residual = out.iter().skip(1).map(|z| z.norm()).fold(0.0, f64::max);
        if residual > TOL {
            return Err(Error::KrausCondition { index, residual });
        }
    }
    let dout: usize = ch.out_dims.iter().product();
    let mut zero = DMatrix::<C64>::zeros(dout, dout);
    zero[(0, 0)] = c64(1.0);
    let omega = Operator::hermitian(ch.adjoint_apply(&zero), ch.in_dims.clone())?;
    Strategy::new(omega, target.clone(), copies, None)
}

fn ket(amps: [C64; 2]) -> DMatrix<C64> {
    DMatrix::from_column_slice(2, 1, &amps)
}

/// The Pauli-measurement Bell strategy `(P⁺_ZZ + P⁻_YY + P⁺_XX)/3` with its
/// three tests, and a six-map channel realizing it.
pub fn reference_bell_artifacts() -> (Strategy, KrausChannel) {
    let id4 = Operator::identity(vec![2, 2]).expect("4x4");
    let half = c64(0.5);
    let pair = |p: Operator| p.kron(&p).expect("4x4");
    let zz = pair(gates::pauli_z());
    let yy = pair(gates::pauli_y());
    let xx = pair(gates::pauli_x());
    let tests = vec![
        id4.add(&zz).unwrap().scaled(half),
        id4.add(&yy.scaled(c64(-1.0))).unwrap().scaled(half),
        id4.add(&xx).unwrap().scaled(half),
    ];
    let mut omega = DMatrix::zeros(4, 4);
    for t in &tests {
        omega += t.entries() / c64(3.0);
    }
    let target = crate::qcore::bell_ket(0, 0);
    let strategy = Strategy::new(
        Operator::hermitian(omega, vec![2, 2]).expect("Hermitian"),
        target,
        1,
        Some(
            tests
                .into_iter()
                .map(|op| Test { p: 1.0 / 3.0, op })
                .collect(),
        ),
    )
    .expect("reference strategy is valid");

    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (o, l, i) = (c64(0.0), c64(1.0), C64::new(0.0, 1.0));
    let u = [
        ket([l, o]),
        ket([o, l]),
        ket([c64(r), c64(r)]),
        ket([c64(r), c64(-r)]),
        ket([c64(r), i * r]),
        ket([c64(r), -i * r]),
    ];
    let x = gates::pauli_x().into_entries();
    let h = gates::hadamard().into_entries();
    let s_star = &h * gates::phase_s().into_entries();
    let v = [
        DMatrix::identity(2, 2),
        x.clone(),
        h.clone(),
        &x * &h,
        s_star.clone(),
        &x * &s_star,
    ];
    let zero = ket([l, o]);
    let w = c64(1.0 / 3f64.sqrt());
    let ops = u
        .iter()
        .zip(v.iter())
        .map(|(u, v)| (&zero * u.adjoint()).kronecker(v) * w)
        .collect();
    let channel = KrausChannel::new(ops, vec![2, 2], vec![2, 2]).expect("trace preserving");
    (strategy, channel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_channel_properties() {
        let (s, ch) = reference_bell_artifacts();
        assert!(ch.tp_deviation() < 1e-12);
        let phi = crate::qcore::bell_ket(0, 0);
        for m in ch.ops() {
            let out = m * phi.amplitudes();
            assert!((out[0] - c64(1.0 / 6f64.sqrt())).norm() < 1e-12);
            assert!(out.iter().skip(1).all(|z| z.norm() < 1e-12));
        }
        let rebuilt = strategy_from_channel(&ch, &phi, 1).unwrap();
        assert!(rebuilt.omega().max_abs_diff(s.omega()) < 1e-12);
    }

    #[test]
    fn unitary_channel_gives_projector() {
        let psi = Ket::random(vec![2], &mut rand::rng());
        // Householder-style unitary sending ψ to |0>.
        let p = psi.amplitudes();
        let phase = if p[0].norm() > 0.0 {
            p[0] / p[0].norm()
        } else {
            c64(1.0)
        };
        let mut e0 = nalgebra::DVector::zeros(2);
        e0[0] = phase;
        let w = p - &e0;
        let u = if w.norm() < 1e-14 {
            DMatrix::identity(2, 2)
        } else {
            let w = &w / c64(w.norm());
            DMatrix::identity(2, 2) - &w * w.adjoint() * c64(2.0)
        };
        let u = u * phase.conj();
        let ch = KrausChannel::new(vec![u], vec![2], vec![2]).unwrap();
        let s = strategy_from_channel(&ch, &psi, 1).unwrap();
        assert!(s.omega().max_abs_diff(&psi.projector().unwrap()) < 1e-12);
    }

    #[test]
    fn condition_failures_name_the_map() {
        let ch =
            KrausChannel::new(vec![gates::pauli_x().into_entries()], vec![2], vec![2]).unwrap();
        let zero = Ket::basis(0, vec![2]).unwrap();
        assert!(matches!(
            strategy_from_channel(&ch, &zero, 1),
            Err(Error::KrausCondition { index: 0, .. })
        ));
        let half = gates::identity().into_entries() * c64(0.5);
        assert!(matches!(
            KrausChannel::new(vec![half], vec![2], vec![2]),
            Err(Error::NotTracePreserving { .. })
        ));
    }
}
