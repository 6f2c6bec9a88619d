//! Randomized cross-validation: the formula pipeline and the
//! discrete-configuration oracle must agree on arbitrary connected
//! graphs, not just the named catalog.

use confspace::experiments::sample_gnp;
use confspace::form::{betti_f2, detectors};
use confspace::oracle::verify;
use rayon::prelude::*;

#[test]
fn oracle_agrees_on_seeded_random_graphs() {
    let cases: Vec<(usize, f64, u64)> = (0..12)
        .map(|i| (5 + i % 3, [0.35, 0.5, 0.7][(i / 3) % 3], i as u64))
        .collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(n, p, idx)| {
            let g = sample_gnp(n, p, 2024, idx);
            if !g.is_connected() || g.edge_count() == 0 {
                return None;
            }
            let verdict = verify(&g).unwrap();
            if verdict.matched {
                None
            } else {
                Some(format!("n={n} p={p} idx={idx}: {:?}", verdict.mismatches))
            }
        })
        .collect();
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn detectors_never_fire_on_mature_random_graphs() {
    let mut connected = 0;
    for idx in 0..40u64 {
        let g = sample_gnp(7, 0.8, 99, idx);
        if !g.is_connected() || g.edge_count() == 0 || g.is_arc() || g.is_circle() {
            continue;
        }
        connected += 1;
        let report = betti_f2(&g).unwrap();
        let fired = detectors(&g);
        if report.mature {
            assert!(fired.is_empty(), "idx {idx}: detector on a mature graph");
        } else {
            assert!(
                report.q_rank > 0 || !report.q_torsion.is_empty(),
                "idx {idx}: immature with trivial cokernel"
            );
        }
    }
    assert!(connected > 10, "sample set too thin");
}
