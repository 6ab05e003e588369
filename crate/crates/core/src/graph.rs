//! Finite simple undirected graphs with dense vertex ids.
//!
//! Vertex ids are assigned in first-appearance order at ingestion and every
//! canonical ordering downstream (cliques, forms, matrices) uses id order.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex index, `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An immutable finite simple graph.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    by_label: HashMap<String, VertexId>,
    neighbors: Vec<Vec<VertexId>>,
    edge_set: HashSet<(VertexId, VertexId)>,
}

/// Incremental graph construction with set semantics for edges.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    by_label: HashMap<String, VertexId>,
    edges: HashSet<(VertexId, VertexId)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `label`, allocating the next dense id on first sight.
    pub fn vertex(&mut self, label: &str) -> VertexId {
        if let Some(&v) = self.by_label.get(label) {
            return v;
        }
        let v = VertexId(self.labels.len());
        self.labels.push(label.to_owned());
        self.by_label.insert(label.to_owned(), v);
        v
    }

    /// Adds an undirected edge. Duplicates collapse; self-loops are rejected.
    pub fn edge(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop {
                line: 0,
                label: a.to_owned(),
            });
        }
        let u = self.vertex(a);
        let v = self.vertex(b);
        self.edges.insert(if u < v { (u, v) } else { (v, u) });
        Ok(())
    }

    pub fn build(self) -> Graph {
        let n = self.labels.len();
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            neighbors[u.0].push(v);
            neighbors[v.0].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Graph {
            labels: self.labels,
            by_label: self.by_label,
            neighbors,
            edge_set: self.edges,
        }
    }
}

impl Graph {
    /// Builds a graph on `0..n` labelled by decimal ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.vertex(&i.to_string());
        }
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            b.edge(&u.to_string(), &v.to_string())?;
        }
        Ok(b.build())
    }

    /// Parses the edge-list text format.
    ///
    /// One edge per line as two whitespace-separated labels, a single label
    /// declares a (possibly isolated) vertex, `#` starts a comment line.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut b = GraphBuilder::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_ascii_whitespace().collect();
            match tokens.as_slice() {
                [v] => {
                    b.vertex(v);
                }
                [a, c] => {
                    if a == c {
                        return Err(Error::SelfLoop {
                            line,
                            label: (*a).to_owned(),
                        });
                    }
                    b.edge(a, c)?;
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected 1 or 2 vertex labels, found {}", other.len()),
                    })
                }
            }
        }
        Ok(b.build())
    }

    /// Emits the edge-list format: vertex declarations in id order, then
    /// edges sorted by id pair.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            out.push_str(label);
            out.push('\n');
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.labels[u.0], self.labels[v.0]));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_set.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).map(VertexId)
    }

    /// All edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut e: Vec<_> = self.edge_set.iter().copied().collect();
        e.sort_unstable();
        e
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_set.contains(&key)
    }

    /// Strictly ascending neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId]> {
        self.check(v)?;
        Ok(&self.neighbors[v.0])
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.neighbors(v).map(<[VertexId]>::len)
    }

    pub fn check(&self, v: VertexId) -> Result<()> {
        if v.0 < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v.0,
                n: self.n(),
            })
        }
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.by_label
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(x) = queue.pop() {
                for &y in &self.neighbors[x] {
                    if !seen[y.0] {
                        seen[y.0] = true;
                        queue.push(y.0);
                    }
                }
            }
        }
        count
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Graph {
    /// Parses `{"vertices": [...], "edges": [[a, b], ...]}`. Edge endpoints
    /// not listed under `vertices` are added in first-appearance order.
    pub fn from_json(text: &str) -> Result<Graph> {
        let raw: GraphJson = serde_json::from_str(text)?;
        let mut b = GraphBuilder::new();
        for v in &raw.vertices {
            b.vertex(v);
        }
        for (i, (a, c)) in raw.edges.iter().enumerate() {
            b.edge(a, c).map_err(|e| match e {
                Error::SelfLoop { label, .. } => Error::SelfLoop { line: i + 1, label },
                other => other,
            })?;
        }
        Ok(b.build())
    }

    /// Canonical JSON: vertices in id order, edges sorted by id pair.
    pub fn to_json(&self) -> String {
        let raw = GraphJson {
            vertices: self.labels.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| (self.labels[u.0].clone(), self.labels[v.0].clone()))
                .collect(),
        };
        serde_json::to_string(&raw).expect("graph serialization is infallible")
    }
}

/// Small named graphs used by tests, the self-test and the bindings.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    /// K_{2,2,2}: antipodal pairs {0,1}, {2,3}, {4,5} are the only non-edges.
    pub fn octahedron() -> Graph {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                if u / 2 != v / 2 {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(6, &edges).unwrap()
    }

    /// Looks up a built-in graph by name (`k3`, `c5`, `p4`, `petersen`, `octahedron`).
    pub fn by_name(name: &str) -> Option<Graph> {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "petersen" => return Some(petersen()),
            "octahedron" => return Some(octahedron()),
            _ => {}
        }
        let (kind, size) = lower.split_at(1);
        let n: usize = size.parse().ok()?;
        match kind {
            "k" => Some(complete(n)),
            "c" if n >= 3 => Some(cycle(n)),
            "p" => Some(path(n)),
            _ => None,
        }
    }
}
