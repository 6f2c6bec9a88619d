//! Formula/oracle agreement on the deeper subdivisions of the catalog.
//! The once-subdivided catalog is part of the acceptance suite; this
//! covers the 2-fold subdivisions, where the oracle complexes are an
//! order of magnitude larger.

use confspace::graph::generate;
use confspace::oracle::verify;
use rayon::prelude::*;

#[test]
fn oracle_agrees_on_twice_subdivided_catalog() {
    let catalog: Vec<(&str, Vec<usize>)> = vec![
        ("complete", vec![5]),
        ("complete", vec![6]),
        ("bipartite", vec![3, 3]),
        ("bipartite", vec![3, 4]),
        ("cycle", vec![3]),
        ("cycle", vec![4]),
        ("path", vec![2]),
        ("star", vec![3]),
        ("theta", vec![]),
        ("fig3", vec![]),
        ("fig6", vec![]),
        ("fig7", vec![]),
        ("wedge-triangles", vec![]),
        ("doublewedge-squares", vec![]),
        ("bridge-triangles", vec![]),
    ];
    let failures: Vec<String> = catalog
        .par_iter()
        .filter_map(|(name, params)| {
            let g = generate(name, params).unwrap().subdivide(2);
            let verdict = verify(&g).unwrap();
            if verdict.matched {
                None
            } else {
                Some(format!("{name}: {:?}", verdict.mismatches))
            }
        })
        .collect();
    assert!(failures.is_empty(), "{failures:?}");
}
