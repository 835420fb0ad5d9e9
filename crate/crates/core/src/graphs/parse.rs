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

//! Edge-list text format: a header line `n <N>`, then one `u v` per line.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

impl FromStr for Graph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let err = |message: String| Error::GraphParse { line, message };
            match n {
                None => {
                    if fields.len() != 2 || fields[0] != "n" {
                        return Err(err(format!("expected `n <N>`, found `{content}`")));
                    }
                    let count: usize = fields[1]
                        .parse()
                        .map_err(|_| err(format!("bad vertex count `{}`", fields[1])))?;
                    if count == 0 {
                        return Err(err("vertex count must be positive".into()));
                    }
                    n = Some(count);
                }
                Some(count) => {
                    if fields.len() != 2 {
                        return Err(err(format!("expected `u v`, found `{content}`")));
                    }
                    let parse = |s: &str| {
                        s.parse::<usize>()
                            .map_err(|_| err(format!("bad vertex `{s}`")))
                    };
                    let (u, v) = (parse(fields[0])?, parse(fields[1])?);
                    if u == v {
                        return Err(err(format!("self-loop at vertex {u}")));
                    }
                    if u == 0 || v == 0 || u > count || v > count {
                        return Err(err(format!("edge {u} {v} outside vertices 1..={count}")));
                    }
                    let e = (u.min(v), u.max(v));
                    if edges.contains(&e) {
                        return Err(err(format!("duplicate edge {} {}", e.0, e.1)));
                    }
                    edges.push(e);
                }
            }
        }
        let n = n.ok_or(Error::GraphParse {
            line: 1,
            message: "missing `n <N>` header".into(),
        })?;
        Graph::new(n, edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl Graph {
    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }
}
