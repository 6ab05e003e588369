//! Clique complexes: every k-clique of a graph up to a cardinality cap.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// A strictly ascending tuple of pairwise-adjacent vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clique(Vec<VertexId>);

impl Clique {
    /// Wraps an already sorted vertex tuple. Fails if the tuple is not
    /// strictly ascending; adjacency is checked by the complex.
    pub fn new(vertices: Vec<VertexId>) -> Result<Clique> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotCanonical(
                vertices.iter().map(|v| v.0).collect(),
            ));
        }
        Ok(Clique(vertices))
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<VertexId>) -> Clique {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Clique(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The face obtained by deleting the `i`-th vertex.
    pub fn face(&self, i: usize) -> Clique {
        let mut v = self.0.clone();
        v.remove(i);
        Clique(v)
    }

    pub fn ids(&self) -> Vec<usize> {
        self.0.iter().map(|v| v.0).collect()
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// All cliques of a graph with at most `max_card` vertices, level by level.
///
/// Level `k` holds the k-cliques sorted lexicographically; a form of degree
/// `k` lives on level `k + 1`.
#[derive(Debug)]
pub struct CliqueComplex {
    graph: Arc<Graph>,
    max_card: usize,
    levels: Vec<Vec<Clique>>,
    index: Vec<HashMap<Clique, usize>>,
}

impl CliqueComplex {
    /// Enumerates cliques of cardinality `1..=max_card` by ordered extension:
    /// a clique only grows by common neighbours above its largest vertex, so
    /// each clique is produced exactly once.
    pub fn build(graph: Arc<Graph>, max_card: usize) -> Result<Arc<CliqueComplex>> {
        if max_card == 0 {
            return Err(Error::Domain("max_card must be at least 1".into()));
        }
        let mut levels: Vec<Vec<Clique>> = vec![Vec::new(); max_card];
        let mut stack = Vec::with_capacity(max_card);
        for v in graph.vertices() {
            let higher: Vec<VertexId> = graph.neighbors(v)?.iter().copied().filter(|&u| u > v).collect();
            stack.push(v);
            extend(&graph, &mut stack, &higher, max_card, &mut levels);
            stack.pop();
        }
        for level in &mut levels {
            level.sort_unstable();
        }
        let index = levels
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        Ok(Arc::new(CliqueComplex {
            graph,
            max_card,
            levels,
            index,
        }))
    }

    /// Builds one level past the clique number, so the top level is empty
    /// and every form has a (possibly zero-dimensional) derivative target.
    pub fn build_full(graph: Arc<Graph>) -> Result<Arc<CliqueComplex>> {
        Self::build_at_least(graph, 1)
    }

    /// Like [`build_full`](Self::build_full) but with at least `min_card` levels.
    pub fn build_at_least(graph: Arc<Graph>, min_card: usize) -> Result<Arc<CliqueComplex>> {
        let omega = clique_number(&graph);
        Self::build(graph, (omega + 1).max(min_card).max(1))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn max_card(&self) -> usize {
        self.max_card
    }

    /// Sorted k-cliques; empty for `k == 0` or `k > max_card`.
    pub fn level(&self, k: usize) -> &[Clique] {
        if k == 0 || k > self.max_card {
            &[]
        } else {
            &self.levels[k - 1]
        }
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Largest cardinality with a non-empty level.
    pub fn top_card(&self) -> usize {
        self.levels.iter().rposition(|l| !l.is_empty()).map_or(0, |i| i + 1)
    }

    /// True when the last built level is empty, i.e. no clique was truncated.
    pub fn is_complete(&self) -> bool {
        self.levels.last().is_none_or(Vec::is_empty)
    }

    /// Position of `c` in its level, or `None` if `c` is not a clique.
    pub fn index_of(&self, c: &Clique) -> Option<usize> {
        self.index.get(c.len().checked_sub(1)?)?.get(c).copied()
    }

    /// Checked variant of [`index_of`](Self::index_of) for raw vertex tuples:
    /// an unsorted tuple is a precondition violation.
    pub fn index_of_vertices(&self, vertices: &[VertexId]) -> Result<Option<usize>> {
        let c = Clique::new(vertices.to_vec())?;
        Ok(self.index_of(&c))
    }

    pub fn contains(&self, c: &Clique) -> bool {
        self.index_of(c).is_some()
    }

    /// Pairwise adjacency test for an arbitrary vertex set, independent of the
    /// cardinality cap.
    pub fn is_clique_set(&self, vertices: &[VertexId]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            u.0 < self.graph.n() && vertices[i + 1..].iter().all(|&v| self.graph.adjacent(u, v))
        })
    }

    /// Requires level `card` to be materialized.
    pub fn require_card(&self, card: usize) -> Result<()> {
        if card > self.max_card {
            Err(Error::Capacity {
                required: card,
                max_card: self.max_card,
            })
        } else {
            Ok(())
        }
    }
}

fn extend(
    graph: &Graph,
    stack: &mut Vec<VertexId>,
    candidates: &[VertexId],
    max_card: usize,
    levels: &mut [Vec<Clique>],
) {
    levels[stack.len() - 1].push(Clique(stack.clone()));
    if stack.len() == max_card {
        return;
    }
    for (i, &u) in candidates.iter().enumerate() {
        let next: Vec<VertexId> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&w| graph.adjacent(u, w))
            .collect();
        stack.push(u);
        extend(graph, stack, &next, max_card, levels);
        stack.pop();
    }
}

/// Size of the largest clique (0 for the empty graph).
pub fn clique_number(graph: &Graph) -> usize {
    fn grow(graph: &Graph, size: usize, candidates: &[VertexId], best: &mut usize) {
        *best = (*best).max(size);
        if size + candidates.len() <= *best {
            return;
        }
        for (i, &u) in candidates.iter().enumerate() {
            let next: Vec<VertexId> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| graph.adjacent(u, w))
                .collect();
            grow(graph, size + 1, &next, best);
        }
    }
    let all: Vec<VertexId> = graph.vertices().collect();
    let mut best = 0;
    grow(graph, 0, &all, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn cx(g: Graph, max_card: usize) -> Arc<CliqueComplex> {
        CliqueComplex::build(Arc::new(g), max_card).unwrap()
    }

    fn ids(v: &[usize]) -> Vec<VertexId> {
        v.iter().copied().map(VertexId).collect()
    }

    #[test]
    fn level_sizes_of_small_graphs() {
        assert_eq!(cx(named::complete(4), 4).level_sizes(), [4, 6, 4, 1]);
        assert_eq!(cx(named::cycle(4), 3).level_sizes(), [4, 4, 0]);
        assert_eq!(cx(named::petersen(), 3).level_sizes(), [10, 15, 0]);
        assert_eq!(cx(named::octahedron(), 4).level_sizes(), [6, 12, 8, 0]);
    }

    #[test]
    fn petersen_is_triangle_free_by_brute_force() {
        let g = named::petersen();
        let mut triangles = 0;
        for a in g.vertices() {
            for b in g.vertices().filter(|&b| b > a) {
                for c in g.vertices().filter(|&c| c > b) {
                    if g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c) {
                        triangles += 1;
                    }
                }
            }
        }
        assert_eq!(triangles, 0);
    }

    #[test]
    fn index_lookup() {
        let k3 = cx(named::complete(3), 3);
        let tri = Clique::new(ids(&[0, 1, 2])).unwrap();
        assert_eq!(k3.index_of(&tri), Some(0));

        let p3 = cx(named::path(3), 3);
        assert_eq!(p3.index_of(&Clique::new(ids(&[0, 2])).unwrap()), None);
        assert_eq!(p3.index_of(&Clique::new(ids(&[1, 2])).unwrap()), Some(1));
        assert!(matches!(
            p3.index_of_vertices(&ids(&[1, 0])),
            Err(Error::NotCanonical(_))
        ));
    }

    #[test]
    fn downward_closure() {
        let c = cx(named::complete(5), 5);
        for k in 2..=5 {
            for clique in c.level(k) {
                for i in 0..k {
                    assert!(c.contains(&clique.face(i)));
                }
            }
        }
    }

    #[test]
    fn full_build_leaves_empty_top_level() {
        let c = CliqueComplex::build_full(Arc::new(named::octahedron())).unwrap();
        assert_eq!(c.max_card(), 4);
        assert!(c.is_complete());
        assert_eq!(c.top_card(), 3);
        assert_eq!(clique_number(&named::petersen()), 2);
        assert_eq!(clique_number(&named::complete(5)), 5);
    }

    #[test]
    fn zero_max_card_rejected() {
        assert!(CliqueComplex::build(Arc::new(named::complete(2)), 0).is_err());
    }

    #[test]
    fn empty_graph_has_empty_levels() {
        let g = Graph::parse_edge_list("").unwrap();
        let c = cx(g, 3);
        assert_eq!(c.level_sizes(), [0, 0, 0]);
    }
}
