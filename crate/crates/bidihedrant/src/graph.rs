//! Simple undirected graphs with canonical adjacency storage, plus graph6
//! encoding/decoding.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Finite simple graph on {0, …, n-1}; neighbor lists kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> SimpleGraph {
        SimpleGraph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds from an edge list; loops are rejected, duplicates collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<SimpleGraph> {
        let mut g = SimpleGraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::PointOutOfRange {
                point: u.max(v),
                degree: self.n,
            });
        }
        if u == v {
            return Err(Error::Precondition("loops are not allowed".into()));
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(|a| a.len()).collect();
        d.sort_unstable();
        d
    }

    /// Constant valency, if the graph is regular.
    pub fn valency(&self) -> Option<usize> {
        let d0 = self.degree_of(0);
        if (1..self.n).all(|v| self.degree_of(v) == d0) {
            Some(d0)
        } else {
            None
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// The two sides of a bipartition (vertex 0's side first, both sorted),
    /// or `None` if an odd cycle exists.  Isolated vertices join side 0.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut color = vec![usize::MAX; self.n];
        for start in 0..self.n {
            if color[start] != usize::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if color[v] == usize::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        let side0 = (0..self.n).filter(|&v| color[v] == 0).collect();
        let side1 = (0..self.n).filter(|&v| color[v] == 1).collect();
        Some((side0, side1))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn complement(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Complement within a fixed bipartition: edges run only between the
    /// two sides, flipped.  Within-side pairs stay non-adjacent.
    pub fn bipartite_complement(
        &self,
        side0: &[usize],
        side1: &[usize],
    ) -> Result<SimpleGraph> {
        let mut g = SimpleGraph::empty(self.n);
        for &u in side0 {
            for &v in side1 {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// True iff `p` maps edges onto edges.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        if p.degree() != self.n {
            return false;
        }
        self.edges()
            .iter()
            .all(|&(u, v)| self.has_edge(p.apply(u), p.apply(v)))
    }

    /// Relabel vertices: vertex v of the result is vertex `p^{-1}(v)` of
    /// `self`, i.e. edges map forward through `p`.
    pub fn relabel(&self, p: &Permutation) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(p.apply(u), p.apply(v)).unwrap();
        }
        g
    }

    /// graph6 string per the published format: N(n) header then the upper
    /// triangle in column order, packed big-endian into 6-bit chars.
    pub fn to_graph6(&self) -> String {
        let mut out = String::new();
        let n = self.n;
        if n <= 62 {
            out.push((n as u8 + 63) as char);
        } else {
            // 63 ≤ n ≤ 258047: '~' then three 6-bit digits.
            out.push(126 as char);
            out.push(((n >> 12 & 63) as u8 + 63) as char);
            out.push(((n >> 6 & 63) as u8 + 63) as char);
            out.push(((n & 63) as u8 + 63) as char);
        }
        let mut bits: Vec<bool> = Vec::with_capacity(n * (n - 1) / 2);
        for v in 1..n {
            for u in 0..v {
                bits.push(self.has_edge(u, v));
            }
        }
        while !bits.len().is_multiple_of(6) {
            bits.push(false);
        }
        for chunk in bits.chunks(6) {
            let mut val = 0u8;
            for &b in chunk {
                val = val << 1 | b as u8;
            }
            out.push((val + 63) as char);
        }
        out
    }

    pub fn from_graph6(s: &str) -> Result<SimpleGraph> {
        let bytes = s.trim().as_bytes();
        if bytes.is_empty() {
            return Err(Error::Parse("empty graph6 string".into()));
        }
        let (n, rest) = if bytes[0] == 126 {
            if bytes.len() < 4 {
                return Err(Error::Parse("truncated graph6 header".into()));
            }
            let digit = |b: u8| -> Result<usize> {
                if !(63..=126).contains(&b) {
                    return Err(Error::Parse(format!("bad graph6 byte {b}")));
                }
                Ok((b - 63) as usize)
            };
            let n = digit(bytes[1])? << 12 | digit(bytes[2])? << 6 | digit(bytes[3])?;
            (n, &bytes[4..])
        } else {
            if !(63..=125).contains(&bytes[0]) {
                return Err(Error::Parse(format!("bad graph6 byte {}", bytes[0])));
            }
            ((bytes[0] - 63) as usize, &bytes[1..])
        };
        let nbits = n * (n - 1) / 2;
        let need = nbits.div_ceil(6);
        if rest.len() != need {
            return Err(Error::Parse(format!(
                "graph6 body length {} != expected {need}",
                rest.len()
            )));
        }
        let mut bits = Vec::with_capacity(need * 6);
        for &b in rest {
            if !(63..=126).contains(&b) {
                return Err(Error::Parse(format!("bad graph6 byte {b}")));
            }
            let val = b - 63;
            for k in (0..6).rev() {
                bits.push(val >> k & 1 == 1);
            }
        }
        let mut g = SimpleGraph::empty(n);
        let mut idx = 0;
        for v in 1..n {
            for u in 0..v {
                if bits[idx] {
                    g.add_edge(u, v)?;
                }
                idx += 1;
            }
        }
        Ok(g)
    }

    /// One `u v` pair per line, the canonical edge order.
    pub fn to_edgelist(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

pub fn complete_graph(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// K_{a,b} with sides {0..a} and {a..a+b}.
pub fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
    let mut g = SimpleGraph::empty(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// K_{n,n} minus the perfect matching {i, n+i}.
pub fn complete_bipartite_minus_matching(n: usize) -> SimpleGraph {
    let mut g = complete_bipartite(n, n);
    let mut out = SimpleGraph::empty(2 * n);
    for (u, v) in g.edges() {
        if v != u + n {
            out.add_edge(u, v).unwrap();
        }
    }
    g = out;
    g
}

/// Cycle 0-1-…-(n-1)-0.
pub fn cycle_graph(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n).unwrap();
    }
    g
}

/// H(k, m): k-tuples over an m-set, adjacent at Hamming distance 1.
/// Vertex encoding: base-m digits, leftmost most significant.
pub fn hamming_graph(k: u32, m: usize) -> Result<SimpleGraph> {
    let n = m
        .checked_pow(k)
        .filter(|&n| n <= 1 << 16)
        .ok_or(Error::DegreeBudget(1 << 16))?;
    let mut g = SimpleGraph::empty(n);
    for v in 0..n {
        // Flip one coordinate at a time.
        let mut place = 1;
        for _ in 0..k {
            let digit = v / place % m;
            for other in 0..m {
                if other != digit {
                    let w = v - digit * place + other * place;
                    if v < w {
                        g.add_edge(v, w)?;
                    }
                }
            }
            place *= m;
        }
    }
    Ok(g)
}
