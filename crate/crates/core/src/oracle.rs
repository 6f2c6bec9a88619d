//! Independent ground truth: the discrete configuration space of two
//! points on a (sufficiently subdivided) graph, with its integral
//! cellular homology computed by Smith normal form.
//!
//! The cells are the products of closed cells of the graph with disjoint
//! closures. On a graph whose every edge has been split into three the
//! space is a deformation retract of the genuine two-point configuration
//! space, so its Betti numbers and torsion are the reference values for
//! the formula pipeline. Nothing here shares code with the
//! diagonal-neighborhood construction beyond the integer linear algebra.

use crate::form::{analyze, betti_f2, BettiReport, FormError, SpecialCase};
use crate::graph::{Graph, GraphError};
use crate::linalg::SparseIntMatrix;
use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Form(#[from] FormError),
    #[error("boundary composition is nonzero at 2-cell {0}")]
    BoundaryComposition(usize),
}

/// Product 1-cell of the square with disjoint closures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OCell1 {
    VertexEdge(usize, usize),
    EdgeVertex(usize, usize),
}

#[derive(Clone, Debug)]
pub struct CellComplex2 {
    pub cells0: Vec<(usize, usize)>,
    pub cells1: Vec<OCell1>,
    pub cells2: Vec<(usize, usize)>,
    pub boundary1: SparseIntMatrix,
    pub boundary2: SparseIntMatrix,
    /// Per 1-cell boundary terms, for the composition check.
    b1_terms: Vec<[(usize, i64); 2]>,
    b2_terms: Vec<Vec<(usize, i64)>>,
}

/// Discrete configuration space cells of `h` as given, without any
/// further subdivision. The caller is responsible for `h` being
/// subdivided enough for the deformation retraction; use
/// [`build_dspace`] for the safe entry point.
pub fn build_dspace_raw(h: &Graph) -> CellComplex2 {
    let n = h.vertex_count();
    let m = h.edge_count();
    let disjoint_ve = |v: usize, e: usize| {
        let (a, b) = h.edge(e);
        v != a && v != b
    };
    let disjoint_ee = |e: usize, f: usize| {
        let (a, b) = h.edge(e);
        let (c, d) = h.edge(f);
        a != c && a != d && b != c && b != d
    };

    let mut cells0 = Vec::new();
    for v in 0..n {
        for w in 0..n {
            if v != w {
                cells0.push((v, w));
            }
        }
    }
    let index0 = |v: usize, w: usize| -> usize {
        // Ordered pairs of distinct vertices, row-major with the
        // diagonal removed.
        v * (n - 1) + if w < v { w } else { w - 1 }
    };

    let mut cells1 = Vec::new();
    for v in 0..n {
        for e in 0..m {
            if disjoint_ve(v, e) {
                cells1.push(OCell1::VertexEdge(v, e));
            }
        }
    }
    for e in 0..m {
        for v in 0..n {
            if disjoint_ve(v, e) {
                cells1.push(OCell1::EdgeVertex(e, v));
            }
        }
    }
    let index1: std::collections::BTreeMap<OCell1, usize> =
        cells1.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    let mut cells2 = Vec::new();
    for e in 0..m {
        for f in 0..m {
            if disjoint_ee(e, f) {
                cells2.push((e, f));
            }
        }
    }

    let mut b1_terms = Vec::with_capacity(cells1.len());
    for &cell in &cells1 {
        let terms = match cell {
            OCell1::VertexEdge(v, e) => {
                let (a, b) = h.edge(e);
                [(index0(v, b), 1), (index0(v, a), -1)]
            }
            OCell1::EdgeVertex(e, w) => {
                let (a, b) = h.edge(e);
                [(index0(b, w), 1), (index0(a, w), -1)]
            }
        };
        b1_terms.push(terms);
    }

    let mut b2_terms = Vec::with_capacity(cells2.len());
    for &(e, f) in &cells2 {
        let (a, b) = h.edge(e);
        let (c, d) = h.edge(f);
        b2_terms.push(vec![
            (index1[&OCell1::VertexEdge(b, f)], 1),
            (index1[&OCell1::VertexEdge(a, f)], -1),
            (index1[&OCell1::EdgeVertex(e, d)], -1),
            (index1[&OCell1::EdgeVertex(e, c)], 1),
        ]);
    }

    let boundary1 = SparseIntMatrix::from_triplets(
        cells0.len(),
        cells1.len(),
        b1_terms
            .iter()
            .enumerate()
            .flat_map(|(c, terms)| terms.iter().map(move |&(r, s)| (r, c, BigInt::from(s)))),
    );
    let boundary2 = SparseIntMatrix::from_triplets(
        cells1.len(),
        cells2.len(),
        b2_terms
            .iter()
            .enumerate()
            .flat_map(|(c, terms)| terms.iter().map(move |&(r, s)| (r, c, BigInt::from(s)))),
    );
    CellComplex2 {
        cells0,
        cells1,
        cells2,
        boundary1,
        boundary2,
        b1_terms,
        b2_terms,
    }
}

/// Builds the discrete configuration space on the 3-fold edge split of
/// `g`, which is enough spacing for two points on any simple graph.
pub fn build_dspace(g: &Graph) -> CellComplex2 {
    build_dspace_raw(&g.subdivide(2))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomologyReport {
    pub b0: i64,
    pub b1: i64,
    pub b2: i64,
    pub torsion1: Vec<String>,
}

/// Integral homology of the 2-complex from the ranks and invariant
/// factors of its boundary operators.
pub fn homology(c: &CellComplex2) -> Result<HomologyReport, OracleError> {
    for (idx, terms) in c.b2_terms.iter().enumerate() {
        let mut acc: std::collections::BTreeMap<usize, i64> = std::collections::BTreeMap::new();
        for &(cell1, s1) in terms {
            for &(cell0, s0) in &c.b1_terms[cell1] {
                *acc.entry(cell0).or_insert(0) += s1 * s0;
            }
        }
        if acc.values().any(|&v| v != 0) {
            return Err(OracleError::BoundaryComposition(idx));
        }
    }
    let rank1 = c.boundary1.rank();
    let factors2 = c.boundary2.invariant_factors();
    let rank2 = factors2.len();
    let torsion1 = factors2
        .iter()
        .filter(|f| **f != BigInt::from(1))
        .map(|f| f.to_string())
        .collect();
    Ok(HomologyReport {
        b0: (c.cells0.len() - rank1) as i64,
        b1: (c.cells1.len() - rank1 - rank2) as i64,
        b2: (c.cells2.len() - rank2) as i64,
        torsion1,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub matched: bool,
    pub mismatches: Vec<String>,
    pub formula: BettiReport,
    pub oracle: HomologyReport,
}

/// Compares the formula pipeline against the oracle on one connected
/// graph. Mismatches are data, not errors.
pub fn verify(g: &Graph) -> Result<Verdict, OracleError> {
    let formula = betti_f2(g)?;
    let oracle = homology(&build_dspace(g))?;
    let mut mismatches = Vec::new();
    let expect_b0 = if formula.special_case == SpecialCase::Arc {
        2
    } else {
        1
    };
    if oracle.b0 != expect_b0 {
        mismatches.push(format!(
            "b0: oracle {} vs expected {}",
            oracle.b0, expect_b0
        ));
    }
    if oracle.b1 != formula.b1_config {
        mismatches.push(format!(
            "b1: oracle {} vs formula {}",
            oracle.b1, formula.b1_config
        ));
    }
    if oracle.b2 != formula.b2_config {
        mismatches.push(format!(
            "b2: oracle {} vs formula {}",
            oracle.b2, formula.b2_config
        ));
    }
    if formula.special_case == SpecialCase::None {
        // Second route to b2: the kernel rank of the intersection form.
        let a = analyze(g)?;
        let b1 = a.cycles.len() as i64;
        let ker_rank = b1 * b1 - a.q.form_rank as i64;
        if oracle.b2 != ker_rank {
            mismatches.push(format!(
                "b2: oracle {} vs intersection-form kernel rank {}",
                oracle.b2, ker_rank
            ));
        }
    }
    if oracle.torsion1 != formula.q_torsion {
        mismatches.push(format!(
            "H1 torsion: oracle {:?} vs cokernel {:?}",
            oracle.torsion1, formula.q_torsion
        ));
    }
    Ok(Verdict {
        matched: mismatches.is_empty(),
        mismatches,
        formula,
        oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn euler_consistent(c: &CellComplex2, h: &HomologyReport) {
        let chi_cells = c.cells0.len() as i64 - c.cells1.len() as i64 + c.cells2.len() as i64;
        assert_eq!(h.b0 - h.b1 + h.b2, chi_cells, "Euler characteristic");
    }

    #[test]
    fn arc_gives_two_contractible_pieces() {
        let g = generate("path", &[1]).unwrap();
        let c = build_dspace(&g);
        let h = homology(&c).unwrap();
        assert_eq!((h.b0, h.b1, h.b2), (2, 0, 0));
        assert!(h.torsion1.is_empty());
        euler_consistent(&c, &h);
    }

    #[test]
    fn triangle_gives_a_circle() {
        let g = generate("cycle", &[3]).unwrap();
        let c = build_dspace(&g);
        let h = homology(&c).unwrap();
        assert_eq!((h.b0, h.b1, h.b2), (1, 1, 0));
        euler_consistent(&c, &h);
    }

    #[test]
    fn star_swap_cycle() {
        let g = generate("star", &[3]).unwrap();
        let c = build_dspace(&g);
        let h = homology(&c).unwrap();
        assert_eq!((h.b0, h.b1, h.b2), (1, 1, 0));
        euler_consistent(&c, &h);
    }

    #[test]
    fn cell_counts() {
        // On the 3-fold split of a single edge: 4 vertices, 3 edges.
        let g = generate("path", &[1]).unwrap();
        let c = build_dspace(&g);
        assert_eq!(c.cells0.len(), 4 * 3);
        // (v, e) disjoint: edges have 2 endpoints, so 2 vertices each.
        assert_eq!(c.cells1.len(), 2 * 3 * 2);
        // Disjoint edge pairs on a path of three edges: the two ends.
        assert_eq!(c.cells2.len(), 2);
    }

    #[test]
    fn hand_built_torus_product_of_two_cycles() {
        // Two 3-cycles A and B; cells are products of A-cells with
        // B-cells. Indices: 0-cells (i, j) -> 3i + j; 1-cells (e_i, b_j)
        // -> 3i + j and (a_i, f_j) -> 9 + 3i + j; 2-cells (e_i, f_j).
        let idx0 = |i: usize, j: usize| 3 * i + j;
        let mut b1_terms = Vec::new();
        let mut cells1 = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                cells1.push(OCell1::EdgeVertex(i, j));
                b1_terms.push([(idx0((i + 1) % 3, j), 1), (idx0(i, j), -1i64)]);
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                cells1.push(OCell1::VertexEdge(i, j));
                b1_terms.push([(idx0(i, (j + 1) % 3), 1), (idx0(i, j), -1)]);
            }
        }
        let mut cells2 = Vec::new();
        let mut b2_terms = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                cells2.push((i, j));
                // d(e x f) = de x f - e x df.
                b2_terms.push(vec![
                    (9 + 3 * ((i + 1) % 3) + j, 1),
                    (9 + 3 * i + j, -1),
                    (3 * i + (j + 1) % 3, -1),
                    (3 * i + j, 1),
                ]);
            }
        }
        let boundary1 = SparseIntMatrix::from_triplets(
            9,
            18,
            b1_terms
                .iter()
                .enumerate()
                .flat_map(|(c, t)| t.iter().map(move |&(r, s)| (r, c, BigInt::from(s)))),
        );
        let boundary2 = SparseIntMatrix::from_triplets(
            18,
            9,
            b2_terms
                .iter()
                .enumerate()
                .flat_map(|(c, t)| t.iter().map(move |&(r, s)| (r, c, BigInt::from(s)))),
        );
        let c = CellComplex2 {
            cells0: (0..9).map(|k| (k / 3, k % 3)).collect(),
            cells1,
            cells2,
            boundary1,
            boundary2,
            b1_terms,
            b2_terms,
        };
        let h = homology(&c).unwrap();
        assert_eq!((h.b0, h.b1, h.b2), (1, 2, 1), "torus homology");
        assert!(h.torsion1.is_empty());
    }

    #[test]
    fn verify_small_catalog() {
        for (name, params) in [
            ("cycle", vec![4]),
            ("path", vec![2]),
            ("star", vec![3]),
            ("fig3", vec![]),
            ("wedge-triangles", vec![]),
            ("theta", vec![]),
        ] {
            let g = generate(name, &params).unwrap();
            let v = verify(&g).unwrap();
            assert!(v.matched, "{name}: {:?}", v.mismatches);
        }
    }

    #[test]
    fn verify_bridge_of_triangles_has_b2_two() {
        let g = generate("bridge-triangles", &[]).unwrap();
        let v = verify(&g).unwrap();
        assert!(v.matched, "{:?}", v.mismatches);
        assert_eq!(v.oracle.b2, 2);
    }

    #[test]
    fn oversubdivision_does_not_change_homology() {
        for (name, params) in [("star", vec![3]), ("fig3", vec![]), ("cycle", vec![3])] {
            let g = generate(name, &params).unwrap();
            let base = homology(&build_dspace_raw(&g.subdivide(2))).unwrap();
            for k in 3..=4 {
                let more = homology(&build_dspace_raw(&g.subdivide(k))).unwrap();
                assert_eq!(base, more, "{name} at subdivision {k}");
            }
        }
    }
}
