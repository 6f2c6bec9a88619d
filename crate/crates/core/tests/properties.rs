//! Property tests for the exact linear algebra and the graph layer.

use confspace::graph::{cycle_basis, emit_document, load_graph, Graph};
use confspace::linalg::{
    cokernel, in_column_lattice, kernel_basis, snf, IntMatrix, LatticeSolver, LinalgError,
    SparseIntMatrix,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c).prop_map(move |data| {
            IntMatrix::from_rows(data.chunks(c).map(|row| row.to_vec()).collect())
        })
    })
}

fn small_vector(len: usize) -> impl Strategy<Value = Vec<BigInt>> {
    proptest::collection::vec(-9i64..=9, len)
        .prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_factorization_is_exact(m in small_matrix()) {
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        let factors = s.invariant_factors();
        for f in &factors {
            prop_assert!(f.is_positive());
        }
        for w in factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        // Off-diagonal entries vanish.
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    prop_assert!(s.d.get(r, c).is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_complements_rank(m in small_matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        for c in 0..k.cols() {
            let col = k.column(c);
            prop_assert!(m.mul_vec(&col).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn cokernel_reduction_vanishes_exactly_on_the_column_lattice(
        m in small_matrix(),
        coeffs in proptest::collection::vec(-4i64..=4, 5),
        probe in proptest::collection::vec(-9i64..=9, 5),
    ) {
        let (group, map) = cokernel(&m);
        // Any integer combination of columns reduces to zero.
        let mut member = vec![BigInt::zero(); m.rows()];
        for c in 0..m.cols() {
            for (i, x) in m.column(c).iter().enumerate() {
                member[i] += x * BigInt::from(coeffs[c % coeffs.len()]);
            }
        }
        prop_assert!(map.reduce(&member).is_zero());

        // Membership and vanishing agree on arbitrary vectors.
        let y: Vec<BigInt> = probe.iter().take(m.rows()).map(|&v| BigInt::from(v)).collect();
        if y.len() == m.rows() {
            let vanishes = map.reduce(&y).is_zero();
            prop_assert_eq!(vanishes, in_column_lattice(&m, &y));
        }

        // Rank + torsion count the diagonal correctly.
        prop_assert_eq!(group.rank, m.rows() - m.rank());
        for t in &group.torsion {
            prop_assert!(!t.is_one());
        }
    }

    #[test]
    fn sparse_and_dense_smith_agree(m in small_matrix()) {
        let sparse = SparseIntMatrix::from_triplets(
            m.rows(),
            m.cols(),
            (0..m.rows()).flat_map(|r| {
                (0..m.cols()).map(move |c| (r, c))
            }).map(|(r, c)| (r, c, m.get(r, c).clone())),
        );
        let dense_factors = snf(&m).invariant_factors();
        prop_assert_eq!(sparse.invariant_factors(), dense_factors);
        prop_assert_eq!(sparse.rank(), m.rank());
    }

    #[test]
    fn lattice_solver_round_trips(m in small_matrix(), x in small_vector(5)) {
        if let Ok(solver) = LatticeSolver::new(&m) {
            // Full column rank: exact coordinates for lattice members.
            let c: Vec<BigInt> = x.iter().take(m.cols()).cloned().collect();
            let member = m.mul_vec(&c);
            prop_assert_eq!(solver.solve(&member).unwrap(), c);

            let probe: Vec<BigInt> = x.iter().take(m.rows()).cloned().collect();
            if probe.len() == m.rows() {
                match solver.solve(&probe) {
                    Ok(coords) => prop_assert_eq!(m.mul_vec(&coords), probe),
                    Err(LinalgError::NotInLattice) => {
                        prop_assert!(!in_column_lattice(&m, &probe));
                    }
                    Err(other) => prop_assert!(false, "unexpected error {other:?}"),
                }
            }
        }
    }
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=8).prop_flat_map(|n| {
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .collect();
        let len = slots.len();
        proptest::collection::vec(proptest::bool::ANY, len).prop_map(move |mask| {
            let edges = slots
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&e, _)| e)
                .collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn document_round_trip_is_identity(g in small_graph()) {
        let text = serde_json::to_string(&emit_document(&g)).unwrap();
        prop_assert_eq!(load_graph(&text).unwrap(), g);
    }

    #[test]
    fn cycle_count_and_boundaries(g in small_graph()) {
        if g.is_connected() {
            let basis = cycle_basis(&g).unwrap();
            let b1 = g.edge_count() + 1 - g.vertex_count();
            prop_assert_eq!(basis.len(), b1);
            for z in &basis {
                prop_assert!(z.is_cycle(&g));
                prop_assert!(z.iter().all(|(_, c)| c.abs() == 1));
            }
        }
    }

    #[test]
    fn planarity_is_subdivision_invariant(g in small_graph()) {
        let planar = confspace::graph::is_planar(&g);
        prop_assert_eq!(confspace::graph::is_planar(&g.subdivide(1)), planar);
        if g.edge_count() > 3 * g.vertex_count().max(3) - 6 {
            prop_assert!(!planar, "edge bound violated yet reported planar");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Two independent routes to the kernel lattice must span the same
    // sublattice: column reduction with a tracked transform, and the
    // trailing transform columns of the full Smith factorization.
    #[test]
    fn kernel_routes_agree(m in small_matrix()) {
        let k1 = kernel_basis(&m);
        let dec = snf(&m);
        let rank = dec.rank();
        prop_assert_eq!(k1.cols(), m.cols() - rank);
        for c in rank..m.cols() {
            let col = dec.v.column(c);
            prop_assert!(m.mul_vec(&col).iter().all(Zero::is_zero));
            prop_assert!(in_column_lattice(&k1, &col), "snf kernel outside reduction kernel");
        }
        if k1.cols() > 0 {
            let k2 = IntMatrix::from_columns(
                m.cols(),
                &(rank..m.cols()).map(|c| dec.v.column(c)).collect::<Vec<_>>(),
            );
            for c in 0..k1.cols() {
                prop_assert!(
                    in_column_lattice(&k2, &k1.column(c)),
                    "reduction kernel outside snf kernel"
                );
            }
        }
    }

    // Normalizing a multigraph document by subdivision preserves the
    // homotopy type: component count and cycle rank are unchanged.
    #[test]
    fn multigraph_normalization_preserves_topology(
        n in 1usize..=6,
        raw_edges in proptest::collection::vec((0usize..6, 0usize..6), 0..12),
    ) {
        let vertices: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let edges: Vec<[String; 2]> = raw_edges
            .iter()
            .map(|&(a, b)| [format!("w{}", a % n), format!("w{}", b % n)])
            .collect();
        let doc = serde_json::json!({ "vertices": vertices, "edges": edges });
        let g = load_graph(&doc.to_string()).unwrap();

        // Component count of the multigraph via union-find on raw pairs.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(a, b) in &raw_edges {
            let (ra, rb) = (find(&mut parent, a % n), find(&mut parent, b % n));
            parent[ra] = rb;
        }
        let comps = (0..n).map(|v| find(&mut parent, v)).collect::<std::collections::BTreeSet<_>>().len();
        prop_assert_eq!(g.components().len(), comps);

        // First Betti number of the multigraph: E - V + C.
        let b1 = raw_edges.len() as i64 - n as i64 + comps as i64;
        prop_assert_eq!(g.first_betti(), b1);
    }
}
