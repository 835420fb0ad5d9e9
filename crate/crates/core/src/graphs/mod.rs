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

//! Graphs, graph codes, graph states and the disentangling gate family.

mod code;
mod disentangle;
mod parse;

pub use code::{graph_state, graph_state_forced, parity_code, GraphCode};
pub use disentangle::{
    apply_a_g, check_disentangled_equations, disentangle_operators, DisentangleOperators,
    DisentangleReport,
};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges may be given in either orientation; they are stored as `(u, v)`
    /// with `u < v`, sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut stored = Vec::new();
        for (a, b) in edges {
            stored.push(normalize_edge(n, a, b)?);
        }
        stored.sort_unstable();
        if let Some(w) = stored.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {} {}",
                w[0].0, w[0].1
            )));
        }
        Ok(Graph { n, edges: stored })
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Graph::new(n, [])
    }

    /// `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|v| (v, v + 1)))
    }

    /// Vertex 1 joined to every other vertex.
    pub fn star(n: usize) -> Result<Self> {
        Graph::new(n, (2..=n).map(|v| (1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(
                "a cycle needs at least 3 vertices".into(),
            ));
        }
        Graph::new(n, (1..n).map(|v| (v, v + 1)).chain([(1, n)]))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen[1..].iter().all(|&s| s)
    }

    /// Bit mask of vertex `v` inside a code index (vertex 1 is the most
    /// significant bit).
    pub(crate) fn mask(&self, v: usize) -> usize {
        1 << (self.n - v)
    }

    /// Number of edges with both endpoints set in `bits`, mod 2.
    pub(crate) fn edge_parity(&self, bits: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| bits & self.mask(u) != 0 && bits & self.mask(v) != 0)
            .count()
            & 1
    }

    /// Parity code on packed bit strings.
    pub(crate) fn parity_bits(&self, bits: usize) -> usize {
        let mut out = 0;
        for &(u, v) in &self.edges {
            if bits & self.mask(v) != 0 {
                out ^= self.mask(u);
            }
            if bits & self.mask(u) != 0 {
                out ^= self.mask(v);
            }
        }
        out
    }

    /// Graph with vertices relabelled by `perm` (vertex `v` becomes `perm[v-1]`).
    fn relabel(&self, perm: &[usize]) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u - 1], perm[v - 1]);
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        e
    }
}

fn normalize_edge(n: usize, a: usize, b: usize) -> Result<(usize, usize)> {
    if a == b {
        return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
    }
    let (u, v) = (a.min(b), a.max(b));
    if u < 1 || v > n {
        return Err(Error::InvalidGraph(format!(
            "edge {a} {b} outside vertices 1..={n}"
        )));
    }
    Ok((u, v))
}

/// One representative of every isomorphism class of connected graphs on
/// `n` vertices, for `1 <= n <= 6`.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(1..=6).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "connected graph enumeration supports 1..=6 vertices, got {n}"
        )));
    }
    let all: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << all.len()) {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let edges = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e);
        let g = Graph::new(n, edges)?;
        if !g.is_connected() {
            continue;
        }
        let canon = perms.iter().map(|p| g.relabel(p)).min().expect("n >= 1");
        if seen.insert(canon) {
            out.push(g);
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i + 1);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_normalized() {
        let g = Graph::new(3, [(2, 1), (3, 2)]).unwrap();
        assert_eq!(g.edges(), &[(1, 2), (2, 3)]);
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(1, 2), (2, 1)]).is_err());
        assert!(Graph::new(3, [(1, 4)]).is_err());
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn connected_graph_counts() {
        // OEIS A001349.
        let counts: Vec<usize> = (1..=5)
            .map(|n| connected_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn named_families() {
        assert_eq!(Graph::star(4).unwrap().neighbors(1), vec![2, 3, 4]);
        assert!(Graph::cycle(5).unwrap().is_connected());
        assert!(!Graph::edgeless(2).unwrap().is_connected());
        assert_eq!(Graph::complete(4).unwrap().edges().len(), 6);
    }
}
