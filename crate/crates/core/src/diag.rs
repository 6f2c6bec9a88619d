//! Relative cellular chain complex of the diagonal neighborhood inside
//! the square of a graph.
//!
//! The 2-cells are ordered pairs of edges with intersecting closures;
//! the surviving relative 1-cells are the products of an edge with one
//! of its own endpoints. Every other product 1-cell lies in the frontier
//! and is dropped. With no 3-cells around, the second homology lattice
//! is exactly the kernel of the boundary matrix.

use crate::graph::{Graph, GraphError};
use crate::linalg::{kernel_basis, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagError {
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("chain has length {0}, expected {1}")]
    DimensionMismatch(usize, usize),
}

/// Relative 1-cell: a vertex times an edge or an edge times a vertex,
/// with the vertex an endpoint of the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelCell1 {
    VertexEdge(usize, usize),
    EdgeVertex(usize, usize),
}

#[derive(Clone, Debug)]
pub struct RelativeComplex {
    /// Ordered pairs (e, e') with intersecting closures, lexicographic.
    pub basis2: Vec<(usize, usize)>,
    pub basis1: Vec<RelCell1>,
    /// basis1 x basis2 boundary matrix.
    pub boundary2: IntMatrix,
    /// Columns span the kernel lattice of `boundary2` (saturated).
    pub h2_basis: IntMatrix,
    index2: BTreeMap<(usize, usize), usize>,
}

fn closures_intersect(g: &Graph, e: usize, f: usize) -> bool {
    let (a, b) = g.edge(e);
    let (c, d) = g.edge(f);
    a == c || a == d || b == c || b == d
}

/// Builds the relative complex of a connected graph.
pub fn build_relative_complex(g: &Graph) -> Result<RelativeComplex, DiagError> {
    if !g.is_connected() {
        return Err(DiagError::Graph(GraphError::Disconnected));
    }
    let m = g.edge_count();
    let mut basis2 = Vec::new();
    for e in 0..m {
        for f in 0..m {
            if closures_intersect(g, e, f) {
                basis2.push((e, f));
            }
        }
    }
    let index2: BTreeMap<(usize, usize), usize> =
        basis2.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    let mut basis1 = Vec::new();
    for e in 0..m {
        let (a, b) = g.edge(e);
        basis1.push(RelCell1::VertexEdge(a, e));
        basis1.push(RelCell1::VertexEdge(b, e));
        basis1.push(RelCell1::EdgeVertex(e, a));
        basis1.push(RelCell1::EdgeVertex(e, b));
    }
    basis1.sort_unstable();
    basis1.dedup();
    let index1: BTreeMap<RelCell1, usize> =
        basis1.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    // d(e x e') = de x e' - e x de', keeping only cells of the relative
    // basis: a vertex factor survives only as an endpoint of the edge it
    // multiplies; everything else lies in the frontier.
    let mut triplets = Vec::new();
    for (col, &(e, f)) in basis2.iter().enumerate() {
        let (a, b) = g.edge(e);
        let (c, d) = g.edge(f);
        let mut push = |cell: RelCell1, sign: i64| {
            if let Some(&row) = index1.get(&cell) {
                triplets.push((row, col, BigInt::from(sign)));
            }
        };
        if b == c || b == d {
            push(RelCell1::VertexEdge(b, f), 1);
        }
        if a == c || a == d {
            push(RelCell1::VertexEdge(a, f), -1);
        }
        if d == a || d == b {
            push(RelCell1::EdgeVertex(e, d), -1);
        }
        if c == a || c == b {
            push(RelCell1::EdgeVertex(e, c), 1);
        }
    }
    let boundary2 = IntMatrix::from_triplets(basis1.len(), basis2.len(), triplets);
    let h2_basis = kernel_basis(&boundary2);
    Ok(RelativeComplex {
        basis2,
        basis1,
        boundary2,
        h2_basis,
        index2,
    })
}

impl RelativeComplex {
    pub fn index_of(&self, cell: (usize, usize)) -> Option<usize> {
        self.index2.get(&cell).copied()
    }

    pub fn h2_rank(&self) -> usize {
        self.h2_basis.cols()
    }

    pub fn in_kernel(&self, chain: &[BigInt]) -> bool {
        self.boundary2.mul_vec(chain).iter().all(Zero::is_zero)
    }

    /// The involution swapping the two factors: e e' -> -(e' e).
    pub fn tau_apply(&self, chain: &[BigInt]) -> Result<Vec<BigInt>, DiagError> {
        if chain.len() != self.basis2.len() {
            return Err(DiagError::DimensionMismatch(chain.len(), self.basis2.len()));
        }
        let mut out = vec![BigInt::zero(); chain.len()];
        for (i, &(e, f)) in self.basis2.iter().enumerate() {
            if chain[i].is_zero() {
                continue;
            }
            let j = self.index2[&(f, e)];
            out[j] = -chain[i].clone();
        }
        Ok(out)
    }
}
