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

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;

use super::Graph;
use crate::error::{Error, Result};
use crate::qcore::{c64, Ket, DENSE_CAP};

/// An n-bit string, one bit per vertex, vertex 1 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphCode {
    bits: Vec<u8>,
}

impl GraphCode {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::OutOfRange("graph code bits must be 0 or 1".into()));
        }
        Ok(GraphCode { bits })
    }

    pub fn zeros(n: usize) -> Self {
        GraphCode { bits: vec![0; n] }
    }

    /// Code whose bits are the binary digits of `index`, vertex 1 most
    /// significant.
    pub fn from_index(index: usize, n: usize) -> Self {
        GraphCode {
            bits: (0..n).map(|j| ((index >> (n - 1 - j)) & 1) as u8).collect(),
        }
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn xor(&self, other: &GraphCode) -> Result<GraphCode> {
        if self.len() != other.len() {
            return Err(Error::CodeLength {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(GraphCode {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// All `2^n` codes in index order.
    pub fn all(n: usize) -> impl Iterator<Item = GraphCode> {
        (0..1usize << n).map(move |i| GraphCode::from_index(i, n))
    }
}

impl FromStr for GraphCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::OutOfRange(format!("bad code character `{c}`"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        GraphCode::new(bits)
    }
}

impl fmt::Display for GraphCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_len(g: &Graph, b: &GraphCode) -> Result<()> {
    if b.len() != g.n() {
        return Err(Error::CodeLength {
            expected: g.n(),
            got: b.len(),
        });
    }
    Ok(())
}

/// `c_u(b) = sum over neighbours v of u of b_v (mod 2)`.
pub fn parity_code(g: &Graph, b: &GraphCode) -> Result<GraphCode> {
    check_len(g, b)?;
    Ok(GraphCode::from_index(g.parity_bits(b.index()), g.n()))
}

/// `CZ_E H^n |0...0>`, refusing registers above the dense cap.
pub fn graph_state(g: &Graph) -> Result<Ket> {
    let dim = 1usize << g.n();
    if dim > DENSE_CAP {
        return Err(Error::DenseCapExceeded {
            dim,
            cap: DENSE_CAP,
        });
    }
    graph_state_forced(g)
}

/// [`graph_state`] without the dense cap.
pub fn graph_state_forced(g: &Graph) -> Result<Ket> {
    let n = g.n();
    let amp = (0.5f64).powf(n as f64 / 2.0);
    let v = DVector::from_fn(1 << n, |b, _| {
        if g.edge_parity(b) == 1 {
            c64(-amp)
        } else {
            c64(amp)
        }
    });
    Ket::new(v, vec![2; n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{gates, tensor_product, Kron};

    fn code(s: &str) -> GraphCode {
        s.parse().unwrap()
    }

    #[test]
    fn parity_examples() {
        let p2 = Graph::path(2).unwrap();
        assert_eq!(parity_code(&p2, &code("01")).unwrap(), code("10"));
        assert_eq!(parity_code(&p2, &code("11")).unwrap(), code("11"));
        let tri = Graph::complete(3).unwrap();
        assert_eq!(parity_code(&tri, &code("110")).unwrap(), code("110"));
        assert_eq!(parity_code(&tri, &code("000")).unwrap(), code("000"));
        assert!(parity_code(&tri, &code("11")).is_err());
    }

    #[test]
    fn path_three_sign_pattern() {
        let g = graph_state(&Graph::path(3).unwrap()).unwrap();
        // Listed as |b1 b2 b3> in the order 000, 100, 010, 110, 001, 101, 011, 111.
        let order = ["000", "100", "010", "110", "001", "101", "011", "111"];
        let signs = [1.0, 1.0, 1.0, -1.0, 1.0, 1.0, -1.0, 1.0];
        let amp = 1.0 / 8f64.sqrt();
        for (label, s) in order.iter().zip(signs) {
            let a = g.amplitudes()[code(label).index()];
            assert!((a - c64(s * amp)).norm() < 1e-15, "{label}");
        }
    }

    #[test]
    fn edgeless_is_plus_plus() {
        let g = graph_state(&Graph::edgeless(2).unwrap()).unwrap();
        assert!(g.amplitudes().iter().all(|a| (a - c64(0.5)).norm() < 1e-15));
    }

    #[test]
    fn hadamard_on_first_vertex_gives_bell_state() {
        let g = graph_state(&Graph::path(2).unwrap()).unwrap();
        let h1 = gates::embed(&gates::hadamard(), 0, 2).unwrap();
        let out = Ket::new(h1.apply(g.amplitudes()), vec![2, 2]).unwrap();
        assert!(out.phase_aligned_distance(&crate::qcore::bell_ket(0, 0)) < 1e-15);
        // Hadamards on both vertices leave the state unchanged instead.
        let hh = tensor_product(&[gates::hadamard(), gates::hadamard()]).unwrap();
        let back = Ket::new(hh.apply(g.amplitudes()), vec![2, 2]).unwrap();
        assert!(back.phase_aligned_distance(&g) < 1e-15);
        let _ = g.kron(&g).unwrap();
    }

    #[test]
    fn dense_cap_applies() {
        assert!(graph_state(&Graph::edgeless(14).unwrap()).is_err());
        assert!(graph_state(&Graph::edgeless(13).unwrap()).is_ok());
    }
}
