//! Finite simple graphs as 1-dimensional simplicial complexes.
//!
//! Edges are stored as ordered pairs `(a, b)` with `a < b`; the canonical
//! orientation `a -> b` fixes every sign convention downstream.

mod catalog;
mod cycles;
mod io;
mod planarity;
mod structure;

pub use catalog::generate;
pub use cycles::{connecting_chain, cycle_basis, cycle_space, second_connecting_chain};
pub use io::{emit_document, graph_from_doc, load_graph, GraphDoc, MarkedDoc};
pub use planarity::is_planar;
pub use structure::{reduce, structure, DecompositionWitness, ReducedGraph, StructureReport};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0} is not simplicial")]
    SelfLoop(usize),
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex index {0} out of range (vertex count {1})")]
    VertexOutOfRange(usize, usize),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("malformed graph document: {0}")]
    Malformed(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("unknown catalog name {0:?}")]
    UnknownCatalog(String),
    #[error("invalid parameters for {0}: {1}")]
    InvalidParams(&'static str, String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("{0}")]
    Invalid(String),
}

/// A finite simple graph with labelled vertices and canonically oriented
/// edges. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    marked: Option<(usize, usize)>,
}

impl Graph {
    pub fn new(
        labels: Vec<String>,
        edges: Vec<(usize, usize)>,
        marked: Option<(usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let n = labels.len();
        let mut seen_labels = BTreeSet::new();
        for l in &labels {
            if !seen_labels.insert(l.clone()) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut normalized = Vec::with_capacity(edges.len());
        let mut seen = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            normalized.push(e);
        }
        if let Some((u, v)) = marked {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
        }
        Ok(Graph {
            labels,
            edges: normalized,
            marked,
        })
    }

    /// Convenience constructor with labels "0", "1", ...
    pub fn from_edges(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<Graph, GraphError> {
        Graph::new(
            (0..vertex_count).map(|i| i.to_string()).collect(),
            edges,
            None,
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn marked(&self) -> Option<(usize, usize)> {
        self.marked
    }

    pub fn with_marked(mut self, marked: Option<(usize, usize)>) -> Graph {
        self.marked = marked;
        self
    }

    /// Neighbors with the connecting edge index, ascending by neighbor.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0usize; self.vertex_count()];
        for &(a, b) in &self.edges {
            val[a] += 1;
            val[b] += 1;
        }
        val
    }

    /// Sum over vertices of (valence - 1)(valence - 2); valence 1 and 2
    /// contribute nothing.
    pub fn sigma(&self) -> i64 {
        self.valences()
            .iter()
            .map(|&m| {
                let m = m as i64;
                (m - 1) * (m - 2)
            })
            .sum()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|&e| e == key)
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &(w, _) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn first_betti(&self) -> i64 {
        self.edge_count() as i64 - self.vertex_count() as i64 + self.components().len() as i64
    }

    /// Homeomorphic to a closed interval: a path with at least one edge.
    pub fn is_arc(&self) -> bool {
        self.edge_count() >= 1
            && self.is_connected()
            && self.edge_count() + 1 == self.vertex_count()
            && self.valences().iter().all(|&m| m <= 2)
    }

    /// Homeomorphic to a circle: a single cycle.
    pub fn is_circle(&self) -> bool {
        self.vertex_count() >= 3 && self.is_connected() && self.valences().iter().all(|&m| m == 2)
    }

    /// Replaces every edge by a path of `k + 1` edges. Original vertices
    /// keep their indices; subdivision labels are deterministic.
    pub fn subdivide(&self, k: usize) -> Graph {
        assert!(k >= 1, "subdivide requires k >= 1");
        self.subdivide_edges(&(0..self.edge_count()).collect::<Vec<_>>(), k)
    }

    /// Subdivides only the listed edges, each into `k + 1` segments.
    pub fn subdivide_edges(&self, which: &[usize], k: usize) -> Graph {
        let which: BTreeSet<usize> = which.iter().copied().collect();
        let mut labels = self.labels.clone();
        let mut used: BTreeSet<String> = labels.iter().cloned().collect();
        let mut edges = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if !which.contains(&e) {
                edges.push((a, b));
                continue;
            }
            let mut prev = a;
            for i in 0..k {
                let mut name = format!("{}~{}~{}", self.labels[a], self.labels[b], i + 1);
                while used.contains(&name) {
                    name.push('\'');
                }
                used.insert(name.clone());
                labels.push(name);
                let mid = labels.len() - 1;
                edges.push((prev.min(mid), prev.max(mid)));
                prev = mid;
            }
            edges.push((prev.min(b), prev.max(b)));
        }
        Graph::new(labels, edges, self.marked).expect("subdivision preserves validity")
    }

    pub fn with_edge_added(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut edges = self.edges.clone();
        edges.push((u.min(v), u.max(v)));
        Graph::new(self.labels.clone(), edges, self.marked)
    }

    /// Induced subgraph after deleting `remove`; returns the graph plus
    /// maps from new vertex/edge indices back to the originals.
    pub fn without_vertices(&self, remove: &[usize]) -> (Graph, Vec<usize>, Vec<usize>) {
        let remove: BTreeSet<usize> = remove.iter().copied().collect();
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|v| !remove.contains(v))
            .collect();
        let mut new_index = BTreeMap::new();
        for (i, &v) in keep.iter().enumerate() {
            new_index.insert(v, i);
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        let mut edge_back = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if let (Some(&na), Some(&nb)) = (new_index.get(&a), new_index.get(&b)) {
                edges.push((na, nb));
                edge_back.push(e);
            }
        }
        let g = Graph::new(labels, edges, None).expect("induced subgraph is valid");
        (g, keep, edge_back)
    }
}

/// Integer 1-chain: finitely supported map from edge indices to
/// coefficients. The boundary of the oriented edge `a -> b` is `b - a`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain1 {
    coeffs: BTreeMap<usize, i64>,
}

impl Chain1 {
    pub fn zero() -> Chain1 {
        Chain1::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, i64)>) -> Chain1 {
        let mut c = Chain1::zero();
        for (e, v) in pairs {
            c.add_term(e, v);
        }
        c
    }

    pub fn add_term(&mut self, e: usize, v: i64) {
        if v == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += v;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: usize) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &v)| (e, v))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, k: i64) -> Chain1 {
        Chain1::from_pairs(self.iter().map(|(e, v)| (e, v * k)))
    }

    pub fn plus(&self, other: &Chain1) -> Chain1 {
        let mut out = self.clone();
        for (e, v) in other.iter() {
            out.add_term(e, v);
        }
        out
    }

    /// Boundary 0-chain as a map from vertices to coefficients.
    pub fn boundary(&self, g: &Graph) -> BTreeMap<usize, i64> {
        let mut b: BTreeMap<usize, i64> = BTreeMap::new();
        for (e, v) in self.iter() {
            let (a, bb) = g.edge(e);
            *b.entry(bb).or_insert(0) += v;
            *b.entry(a).or_insert(0) -= v;
        }
        b.retain(|_, v| *v != 0);
        b
    }

    pub fn is_cycle(&self, g: &Graph) -> bool {
        self.boundary(g).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(2, vec![(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_edges(2, vec![(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(2, vec![(0, 5)]),
            Err(GraphError::VertexOutOfRange(5, 2))
        );
    }

    #[test]
    fn orientation_is_low_to_high() {
        let g = Graph::from_edges(3, vec![(2, 0), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
    }

    #[test]
    fn sigma_values() {
        let k5 = generate("complete", &[5]).unwrap();
        assert_eq!(k5.sigma(), 30);
        let k33 = generate("bipartite", &[3, 3]).unwrap();
        assert_eq!(k33.sigma(), 12);
        let c7 = generate("cycle", &[7]).unwrap();
        assert_eq!(c7.sigma(), 0);
    }

    #[test]
    fn sigma_invariant_under_subdivision() {
        for (name, params) in [
            ("complete", vec![5]),
            ("bipartite", vec![3, 3]),
            ("star", vec![4]),
            ("theta", vec![]),
        ] {
            let g = generate(name, &params).unwrap();
            assert_eq!(g.sigma(), g.subdivide(1).sigma(), "{name}");
            assert_eq!(g.sigma(), g.subdivide(3).sigma(), "{name}");
        }
    }

    #[test]
    fn subdivision_counts() {
        let tri = generate("cycle", &[3]).unwrap();
        let hex = tri.subdivide(1);
        assert_eq!(hex.vertex_count(), 6);
        assert_eq!(hex.edge_count(), 6);
        assert!(hex.is_circle());

        let k5 = generate("complete", &[5]).unwrap();
        let s = k5.subdivide(2);
        assert_eq!(s.vertex_count(), 25);
        assert_eq!(s.edge_count(), 30);

        let p1 = generate("path", &[1]).unwrap();
        let p4 = p1.subdivide(3);
        assert!(p4.is_arc());
        assert_eq!(p4.edge_count(), 4);
    }

    #[test]
    fn arc_and_circle_recognition() {
        assert!(generate("path", &[3]).unwrap().is_arc());
        assert!(!generate("path", &[3]).unwrap().is_circle());
        assert!(generate("cycle", &[5]).unwrap().is_circle());
        assert!(generate("cycle", &[5]).unwrap().subdivide(2).is_circle());
        assert!(!generate("star", &[3]).unwrap().is_arc());
        assert!(!generate("complete", &[5]).unwrap().is_circle());
    }

    #[test]
    fn chain_boundary() {
        let g = generate("cycle", &[3]).unwrap();
        // Edges (0,1), (1,2), (0,2): traverse 0->1->2->0.
        let z = Chain1::from_pairs(vec![(0, 1), (1, 1), (2, -1)]);
        assert!(z.is_cycle(&g));
        let not = Chain1::from_pairs(vec![(0, 1)]);
        assert!(!not.is_cycle(&g));
        assert_eq!(not.boundary(&g), BTreeMap::from([(0, -1), (1, 1)]));
    }

    #[test]
    fn without_vertices_maps_back() {
        let k5 = generate("complete", &[5]).unwrap();
        let (g, vmap, emap) = k5.without_vertices(&[0, 1]);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(vmap, vec![2, 3, 4]);
        for (new_e, &old_e) in emap.iter().enumerate() {
            let (a, b) = g.edge(new_e);
            let (oa, ob) = k5.edge(old_e);
            assert_eq!((vmap[a], vmap[b]), (oa, ob));
        }
    }
}
