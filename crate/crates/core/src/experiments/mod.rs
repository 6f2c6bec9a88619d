//! Seeded random-graph experiments: maturity probability sweeps over the
//! binomial model, torsion scanning, and counterexample hunting for the
//! wedge/double-wedge characterization of maturity.

mod enumerate;
mod gnp;

pub use enumerate::{connected_classes, connected_nonplanar_classes};
pub use gnp::sample_gnp;

use crate::form::{detectors, q_group, Reason};
use crate::graph::{emit_document, graph_from_doc, is_planar, Graph, GraphDoc};
use crate::oracle;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n: usize,
    pub p_grid: Vec<f64>,
    pub samples_per_p: usize,
    pub seed: u64,
    pub condition_on_connected: bool,
    pub audit_fraction: f64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.n < 1 {
            return Err(ExperimentError::InvalidConfig("need n >= 1".into()));
        }
        if self.samples_per_p < 1 {
            return Err(ExperimentError::InvalidConfig("need samples >= 1".into()));
        }
        if self.p_grid.is_empty() {
            return Err(ExperimentError::InvalidConfig("empty p grid".into()));
        }
        if !self.p_grid.iter().all(|p| *p > 0.0 && *p <= 1.0) {
            return Err(ExperimentError::InvalidConfig(
                "grid values must lie in (0, 1]".into(),
            ));
        }
        if !self.p_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(ExperimentError::InvalidConfig(
                "grid must be strictly increasing".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.audit_fraction) {
            return Err(ExperimentError::InvalidConfig(
                "audit fraction must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRecord {
    pub n: usize,
    pub p: f64,
    pub samples: usize,
    pub connected: usize,
    pub mature: usize,
    pub torsion_found: usize,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

pub const SWEEP_CSV_HEADER: &str =
    "n,p,samples,connected,mature,torsion_found,fraction,ci_low,ci_high,seed";

impl SweepRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.p,
            self.samples,
            self.connected,
            self.mature,
            self.torsion_found,
            self.fraction,
            self.ci_low,
            self.ci_high,
            self.seed
        )
    }
}

pub fn records_to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

/// Empirical threshold summary: the first grid point where the mature
/// fraction reaches 1/2, with the nearest grid points whose whole
/// confidence interval sits below / above 1/2. No model fitting.
#[derive(Clone, Debug, Serialize)]
pub struct ThresholdEstimate {
    pub p_cross: f64,
    pub clearly_below: Option<f64>,
    pub clearly_above: Option<f64>,
}

pub fn threshold_estimate(records: &[SweepRecord]) -> Option<ThresholdEstimate> {
    let cross_idx = records.iter().position(|r| r.fraction >= 0.5)?;
    let clearly_below = records[..cross_idx]
        .iter()
        .rev()
        .find(|r| r.ci_high < 0.5)
        .map(|r| r.p);
    let clearly_above = records[cross_idx..]
        .iter()
        .find(|r| r.ci_low > 0.5)
        .map(|r| r.p);
    Some(ThresholdEstimate {
        p_cross: records[cross_idx].p,
        clearly_below,
        clearly_above,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingKind {
    Torsion,
    Conjecture1Counterexample,
    OracleMismatch,
}

/// A reproducible anomaly: the embedded graph document reloads to a
/// graph exhibiting the flagged condition.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub graph: GraphDoc,
    pub details: String,
}

impl Finding {
    pub fn reload_graph(&self) -> Graph {
        graph_from_doc(&self.graph).expect("finding documents are valid")
    }
}

/// Wilson score interval at the fixed 95% level.
fn wilson(successes: usize, trials: usize) -> (f64, f64, f64) {
    if trials == 0 {
        return (0.0, 0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    (phat, (center - half).max(0.0), (center + half).min(1.0))
}

/// Whether the sample at `index` falls into the audited subset for the
/// given fraction; the audited indices are evenly spread and
/// deterministic.
fn audited(index: usize, fraction: f64) -> bool {
    if fraction <= 0.0 {
        return false;
    }
    let before = ((index as f64) * fraction).floor();
    let after = ((index + 1) as f64 * fraction).floor();
    after > before
}

struct SampleOutcome {
    connected: bool,
    mature: bool,
    torsion: bool,
    findings: Vec<Finding>,
}

/// Maturity without the advisory detectors: connected non-arc,
/// non-circle graphs are judged by the cokernel alone.
fn classify(g: &Graph, audit: bool) -> SampleOutcome {
    let mut findings = Vec::new();
    if !g.is_connected() {
        // Maturity is about connected graphs; disconnected samples are
        // counted but not judged.
        return SampleOutcome {
            connected: false,
            mature: false,
            torsion: false,
            findings,
        };
    }
    let (mature, torsion) = if g.edge_count() == 0 || g.is_arc() || g.is_circle() {
        (false, false)
    } else {
        match q_group(g) {
            Ok(q) => (q.group.is_trivial(), !q.group.torsion.is_empty()),
            Err(_) => (false, false),
        }
    };
    if torsion {
        findings.push(Finding {
            kind: FindingKind::Torsion,
            graph: emit_document(g),
            details: "cokernel of the intersection form has torsion".into(),
        });
    }
    if audit && g.edge_count() > 0 {
        if let Ok(verdict) = oracle::verify(g) {
            if !verdict.matched {
                findings.push(Finding {
                    kind: FindingKind::OracleMismatch,
                    graph: emit_document(g),
                    details: verdict.mismatches.join("; "),
                });
            }
        }
    }
    SampleOutcome {
        connected: true,
        mature,
        torsion,
        findings,
    }
}

/// One grid point of the sweep. The per-sample stream is derived from
/// (seed, p) alone, never from the position of p in the grid, so a
/// single point reproduces exactly whether run alone or inside a grid,
/// and partial results can be flushed as each point completes.
pub fn sweep_point(cfg: &SweepConfig, p: f64) -> (SweepRecord, Vec<Finding>) {
    let mut stream = cfg.seed ^ p.to_bits();
    let point_seed = gnp::splitmix64(&mut stream);
    let outcomes: Vec<SampleOutcome> = (0..cfg.samples_per_p)
        .into_par_iter()
        .map(|i| {
            let g = sample_gnp(cfg.n, p, point_seed, i as u64);
            classify(&g, audited(i, cfg.audit_fraction))
        })
        .collect();
    let connected = outcomes.iter().filter(|o| o.connected).count();
    let mature = outcomes.iter().filter(|o| o.mature).count();
    let torsion_found = outcomes.iter().filter(|o| o.torsion).count();
    let findings: Vec<Finding> = outcomes.into_iter().flat_map(|o| o.findings).collect();
    let denom = if cfg.condition_on_connected {
        connected
    } else {
        cfg.samples_per_p
    };
    let (fraction, ci_low, ci_high) = wilson(mature, denom);
    let record = SweepRecord {
        n: cfg.n,
        p,
        samples: cfg.samples_per_p,
        connected,
        mature,
        torsion_found,
        fraction,
        ci_low,
        ci_high,
        seed: cfg.seed,
    };
    (record, findings)
}

/// Runs the maturity sweep over the probability grid. Samples are
/// independent tasks; aggregation is a deterministic fold in (p, index)
/// order, so identical configurations give identical output.
pub fn maturity_sweep(
    cfg: &SweepConfig,
) -> Result<(Vec<SweepRecord>, Vec<Finding>), ExperimentError> {
    cfg.validate()?;
    let mut records = Vec::new();
    let mut findings = Vec::new();
    for &p in &cfg.p_grid {
        let (record, fs) = sweep_point(cfg, p);
        records.push(record);
        findings.extend(fs);
    }
    Ok((records, findings))
}

/// Compares maturity with the structural immaturity criteria on one
/// connected non-planar graph.
///
/// An immature graph is expected to be explained by one of the proven
/// criteria: a univalent vertex, an edge whose closure disconnects, a
/// double edge, or a wedge / double-wedge decomposition. Immature graphs
/// where none fires are archived as counterexample candidates for the
/// decomposability characterization; a mature graph where any fires
/// contradicts a proven statement and is archived as well. Torsion in
/// the cokernel is always archived.
pub fn scan_graph(g: &Graph) -> Vec<Finding> {
    debug_assert!(g.is_connected());
    let mut findings = Vec::new();
    if is_planar(g) {
        return findings;
    }
    let q = match q_group(g) {
        Ok(q) => q,
        Err(_) => return findings, // arcs and circles are planar anyway
    };
    if !q.group.torsion.is_empty() {
        findings.push(Finding {
            kind: FindingKind::Torsion,
            graph: emit_document(g),
            details: format!(
                "cokernel torsion {:?} on a non-planar graph",
                q.group.torsion_strings()
            ),
        });
    }
    let mature = q.group.is_trivial();
    let fired: Vec<Reason> = detectors(g)
        .into_iter()
        .filter(|r| *r != Reason::Planar)
        .collect();
    if mature && !fired.is_empty() {
        findings.push(Finding {
            kind: FindingKind::Conjecture1Counterexample,
            graph: emit_document(g),
            details: format!("mature graph where immaturity criteria fire: {fired:?}"),
        });
    }
    if !mature && fired.is_empty() {
        findings.push(Finding {
            kind: FindingKind::Conjecture1Counterexample,
            graph: emit_document(g),
            details: format!(
                "immature graph (cokernel rank {}) matching no structural criterion",
                q.group.rank
            ),
        });
    }
    findings
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanOutcome {
    pub exhaustive_checked: usize,
    pub sampled_checked: usize,
    pub skipped_planar: usize,
    pub skipped_disconnected: usize,
    pub findings: Vec<Finding>,
}

/// Counterexample and torsion scan: all connected non-planar graphs on
/// up to seven vertices exhaustively (up to isomorphism), then seeded
/// random graphs for 8..=n_max vertices over a fixed probability grid.
pub fn conjecture_scan(n_max: usize, samples: usize, seed: u64) -> ScanOutcome {
    conjecture_scan_audited(n_max, samples, seed, 0.0)
}

/// Scan with a fraction of the sampled graphs cross-checked against the
/// discrete-configuration oracle.
pub fn conjecture_scan_audited(
    n_max: usize,
    samples: usize,
    seed: u64,
    audit_fraction: f64,
) -> ScanOutcome {
    assert!(n_max >= 5, "scan needs n_max >= 5");
    let mut findings = Vec::new();
    let mut exhaustive_checked = 0;

    for n in 5..=n_max.min(7) {
        let classes = connected_nonplanar_classes(n);
        exhaustive_checked += classes.len();
        let mut batch: Vec<Vec<Finding>> = classes.par_iter().map(scan_graph).collect();
        for b in batch.drain(..) {
            findings.extend(b);
        }
    }

    let mut sampled_checked = 0;
    let mut skipped_planar = 0;
    let mut skipped_disconnected = 0;
    if n_max >= 8 {
        let span = n_max - 7;
        let grid = [0.3, 0.5, 0.7];
        let outcomes: Vec<(bool, bool, Vec<Finding>)> = (0..samples)
            .into_par_iter()
            .map(|i| {
                let n = 8 + (i / grid.len()) % span;
                let p = grid[i % grid.len()];
                let g = sample_gnp(n, p, seed, i as u64);
                if !g.is_connected() {
                    return (false, false, Vec::new());
                }
                if is_planar(&g) {
                    return (true, true, Vec::new());
                }
                let mut fs = scan_graph(&g);
                if audited(i, audit_fraction) {
                    if let Ok(verdict) = oracle::verify(&g) {
                        if !verdict.matched {
                            fs.push(Finding {
                                kind: FindingKind::OracleMismatch,
                                graph: emit_document(&g),
                                details: verdict.mismatches.join("; "),
                            });
                        }
                    }
                }
                (true, false, fs)
            })
            .collect();
        for (connected, planar, fs) in outcomes {
            if !connected {
                skipped_disconnected += 1;
            } else if planar {
                skipped_planar += 1;
            } else {
                sampled_checked += 1;
            }
            findings.extend(fs);
        }
    }
    ScanOutcome {
        exhaustive_checked,
        sampled_checked,
        skipped_planar,
        skipped_disconnected,
        findings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn sweep_is_reproducible() {
        let cfg = SweepConfig {
            n: 5,
            p_grid: vec![0.4, 0.8],
            samples_per_p: 30,
            seed: 7,
            condition_on_connected: true,
            audit_fraction: 0.0,
        };
        let (r1, f1) = maturity_sweep(&cfg).unwrap();
        let (r2, f2) = maturity_sweep(&cfg).unwrap();
        assert_eq!(records_to_csv(&r1), records_to_csv(&r2));
        assert_eq!(f1.len(), f2.len());
    }

    #[test]
    fn sweep_at_p_one_is_all_mature_for_n5() {
        let cfg = SweepConfig {
            n: 5,
            p_grid: vec![1.0],
            samples_per_p: 20,
            seed: 1,
            condition_on_connected: true,
            audit_fraction: 0.0,
        };
        let (records, findings) = maturity_sweep(&cfg).unwrap();
        assert_eq!(records[0].connected, 20);
        assert_eq!(records[0].mature, 20);
        assert_eq!(records[0].fraction, 1.0);
        assert!(findings.is_empty());
    }

    #[test]
    fn four_vertex_graphs_are_never_mature() {
        let cfg = SweepConfig {
            n: 4,
            p_grid: vec![0.5, 0.9],
            samples_per_p: 40,
            seed: 3,
            condition_on_connected: false,
            audit_fraction: 0.0,
        };
        let (records, _) = maturity_sweep(&cfg).unwrap();
        for r in &records {
            assert_eq!(r.mature, 0, "all graphs on four vertices are planar");
        }
    }

    #[test]
    fn audit_spreads_deterministically() {
        let picked: Vec<usize> = (0..100).filter(|&i| audited(i, 0.1)).collect();
        assert_eq!(picked.len(), 10);
        assert!(picked.windows(2).all(|w| w[1] - w[0] == 10));
        assert!((0..100).all(|i| !audited(i, 0.0)));
        assert!((0..100).all(|i| audited(i, 1.0)));
    }

    #[test]
    fn scan_clears_known_graphs() {
        for (name, params) in [
            ("complete", vec![5]),
            ("bipartite", vec![3, 3]),
            ("complete", vec![6]),
        ] {
            let g = generate(name, &params).unwrap();
            assert!(scan_graph(&g).is_empty(), "{name}");
        }
        // Planar graphs are out of the conjecture's scope.
        assert!(scan_graph(&generate("fig6", &[]).unwrap()).is_empty());
    }

    #[test]
    fn scan_accepts_decomposable_immature_graphs() {
        // A double wedge of two complete graphs on five vertices sharing
        // two vertices: immature with a witness, hence no finding.
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((a, b));
            }
        }
        // Second complete graph on {0, 1, 5, 6, 7}.
        let verts2 = [0usize, 1, 5, 6, 7];
        for i in 0..5 {
            for j in i + 1..5 {
                let (a, b) = (verts2[i], verts2[j]);
                if !edges.contains(&(a.min(b), a.max(b))) {
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        let g = Graph::from_edges(8, edges).unwrap();
        assert!(!is_planar(&g));
        let q = q_group(&g).unwrap();
        assert!(!q.group.is_trivial(), "double wedge must be immature");
        assert!(scan_graph(&g).is_empty(), "witness explains immaturity");
    }

    #[test]
    fn threshold_estimate_reads_the_crossing() {
        let rec = |p: f64, fraction: f64, ci_low: f64, ci_high: f64| SweepRecord {
            n: 8,
            p,
            samples: 100,
            connected: 100,
            mature: (fraction * 100.0) as usize,
            torsion_found: 0,
            fraction,
            ci_low,
            ci_high,
            seed: 0,
        };
        let records = vec![
            rec(0.2, 0.05, 0.01, 0.12),
            rec(0.4, 0.30, 0.21, 0.40),
            rec(0.6, 0.55, 0.45, 0.65),
            rec(0.8, 0.90, 0.82, 0.95),
        ];
        let t = threshold_estimate(&records).unwrap();
        assert_eq!(t.p_cross, 0.6);
        assert_eq!(t.clearly_below, Some(0.4));
        assert_eq!(t.clearly_above, Some(0.8));
        assert!(threshold_estimate(&records[..2]).is_none());
    }

    #[test]
    fn findings_embed_reloadable_documents() {
        let g = generate("fig6", &[]).unwrap();
        let f = Finding {
            kind: FindingKind::OracleMismatch,
            graph: emit_document(&g),
            details: "synthetic".into(),
        };
        assert_eq!(f.reload_graph(), g);
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.contains("oracle-mismatch"));
    }

    #[test]
    fn wilson_interval_sanity() {
        let (f, lo, hi) = wilson(10, 20);
        assert!((f - 0.5).abs() < 1e-12);
        assert!(lo > 0.2 && lo < 0.5);
        assert!(hi > 0.5 && hi < 0.8);
        let (f, lo, hi) = wilson(0, 0);
        assert_eq!((f, lo, hi), (0.0, 0.0, 1.0));
    }
}
