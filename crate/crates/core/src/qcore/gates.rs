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

//! Single- and two-qubit gates on qubit registers.
//!
//! Qubits are numbered from 0 at the most significant (leftmost) position.

use nalgebra::DMatrix;

use super::{Operator, C64};
use crate::error::{Error, Result};

fn qubit_op(entries: [C64; 4]) -> Operator {
    let m = DMatrix::from_row_slice(2, 2, &entries);
    Operator::new(m, vec![2]).expect("2x2 gate")
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn identity() -> Operator {
    qubit_op([ONE, ZERO, ZERO, ONE]).into_hermitian().unwrap()
}

pub fn pauli_x() -> Operator {
    qubit_op([ZERO, ONE, ONE, ZERO]).into_hermitian().unwrap()
}

pub fn pauli_y() -> Operator {
    qubit_op([ZERO, -I, I, ZERO]).into_hermitian().unwrap()
}

pub fn pauli_z() -> Operator {
    qubit_op([ONE, ZERO, ZERO, -ONE]).into_hermitian().unwrap()
}

pub fn hadamard() -> Operator {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    qubit_op([h, h, h, -h]).into_hermitian().unwrap()
}

/// Phase gate `diag(1, i)`.
pub fn phase_s() -> Operator {
    qubit_op([ONE, ZERO, ZERO, I])
}

fn check_qubits(qubits: &[usize], n: usize) -> Result<()> {
    for (k, &q) in qubits.iter().enumerate() {
        if q >= n {
            return Err(Error::OutOfRange(format!(
                "qubit {q} on a {n}-qubit register"
            )));
        }
        if qubits[..k].contains(&q) {
            return Err(Error::OutOfRange(format!("qubit {q} repeated")));
        }
    }
    Ok(())
}

/// `gate` acting on `qubit` of an `n`-qubit register.
pub fn embed(gate: &Operator, qubit: usize, n: usize) -> Result<Operator> {
    check_qubits(&[qubit], n)?;
    let dim = 1usize << n;
    let shift = n - 1 - qubit;
    let g = gate.entries();
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let b = (col >> shift) & 1;
        for r in 0..2 {
            let row = (col & !(1 << shift)) | (r << shift);
            m[(row, col)] = g[(r, b)];
        }
    }
    let op = Operator::new(m, vec![2; n])?;
    if gate.is_hermitian() {
        op.into_hermitian()
    } else {
        Ok(op)
    }
}

/// Controlled-X with the given control and target.
pub fn controlled_x(control: usize, target: usize, n: usize) -> Result<Operator> {
    check_qubits(&[control, target], n)?;
    let dim = 1usize << n;
    let c = 1usize << (n - 1 - control);
    let t = 1usize << (n - 1 - target);
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let row = if col & c != 0 { col ^ t } else { col };
        m[(row, col)] = ONE;
    }
    Operator::hermitian(m, vec![2; n])
}

/// Controlled-Z between two qubits.
pub fn controlled_z(a: usize, b: usize, n: usize) -> Result<Operator> {
    check_qubits(&[a, b], n)?;
    let dim = 1usize << n;
    let ma = 1usize << (n - 1 - a);
    let mb = 1usize << (n - 1 - b);
    let mut m = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = if i & ma != 0 && i & mb != 0 {
            -ONE
        } else {
            ONE
        };
    }
    Operator::hermitian(m, vec![2; n])
}
