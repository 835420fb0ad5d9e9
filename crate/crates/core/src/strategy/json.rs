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

//! Strategy JSON: `dims` are the single-copy target dims; `target` and the
//! row-major `omega` are lists of `[re, im]` pairs.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{Strategy, Test};
use crate::error::{Error, Result};
use crate::qcore::{Ket, Operator, C64};

#[derive(Serialize, Deserialize)]
struct TestJson {
    p: f64,
    #[serde(rename = "T")]
    t: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct StrategyJson {
    dims: Vec<usize>,
    copies: usize,
    target: Vec<[f64; 2]>,
    omega: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    decomposition: Option<Vec<TestJson>>,
}

fn to_pairs<'a>(it: impl Iterator<Item = &'a C64>) -> Vec<[f64; 2]> {
    it.map(|z| [z.re, z.im]).collect()
}

fn square(pairs: &[[f64; 2]], side: usize, what: &str) -> Result<DMatrix<C64>> {
    if pairs.len() != side * side {
        return Err(Error::DimensionMismatch(format!(
            "{what} has {} entries, expected {}",
            pairs.len(),
            side * side
        )));
    }
    Ok(DMatrix::from_row_iterator(
        side,
        side,
        pairs.iter().map(|p| C64::new(p[0], p[1])),
    ))
}

impl Strategy {
    pub fn to_json(&self) -> String {
        let row_major = |m: &DMatrix<C64>| to_pairs(m.transpose().iter());
        let doc = StrategyJson {
            dims: self.target().dims().to_vec(),
            copies: self.copies(),
            target: to_pairs(self.target().amplitudes().iter()),
            omega: row_major(self.omega().entries()),
            decomposition: self.decomposition().map(|tests| {
                tests
                    .iter()
                    .map(|t| TestJson {
                        p: t.p,
                        t: row_major(t.op.entries()),
                    })
                    .collect()
            }),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Strategy> {
        let doc: StrategyJson = serde_json::from_str(text)?;
        let target = Ket::new(
            DVector::from_iterator(
                doc.target.len(),
                doc.target.iter().map(|p| C64::new(p[0], p[1])),
            ),
            doc.dims.clone(),
        )?;
        let full_dims: Vec<usize> = std::iter::repeat_n(doc.dims.clone(), doc.copies)
            .flatten()
            .collect();
        let side: usize = full_dims.iter().product();
        let omega = Operator::hermitian(square(&doc.omega, side, "omega")?, full_dims.clone())?;
        let decomposition = doc
            .decomposition
            .map(|tests| {
                tests
                    .iter()
                    .enumerate()
                    .map(|(i, t)| {
                        Ok(Test {
                            p: t.p,
                            op: Operator::hermitian(
                                square(&t.t, side, &format!("test {i}"))?,
                                full_dims.clone(),
                            )?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Strategy::new(omega, target, doc.copies, decomposition)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Strategy> {
        Strategy::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::reference_bell_artifacts;

    #[test]
    fn round_trip_with_decomposition() {
        let (s, _) = reference_bell_artifacts();
        let back = Strategy::from_json(&s.to_json()).unwrap();
        assert!(back.omega().max_abs_diff(s.omega()) < 1e-15);
        assert_eq!(back.decomposition().unwrap().len(), 3);
        assert_eq!(back.target().dims(), &[2, 2]);
    }

    #[test]
    fn row_major_layout() {
        let text = r#"{"dims":[2],"copies":1,"target":[[1,0],[0,0]],
            "omega":[[1,0],[0,0],[0,0],[0.5,0]]}"#;
        let s = Strategy::from_json(text).unwrap();
        assert_eq!(s.omega().entries()[(1, 1)], C64::new(0.5, 0.0));
        let skew = r#"{"dims":[2],"copies":1,"target":[[1,0],[0,0]],
            "omega":[[1,0],[0.3,0],[0,0],[0.5,0]]}"#;
        assert!(Strategy::from_json(skew).is_err());
    }
}
