//! The intersection form on pairs of graph cycles, its cokernel, and the
//! Betti numbers of the two-point configuration space.
//!
//! A connected graph that is neither an arc nor a circle is *mature*
//! exactly when the cokernel of the intersection form vanishes; in that
//! case both Betti numbers of the configuration space take closed forms
//! in the first Betti number and the valence distribution of the graph.

use crate::diag::{build_relative_complex, DiagError, RelativeComplex};
use crate::graph::{cycle_basis, reduce, structure, Chain1, Graph, GraphError};
use crate::linalg::{
    cokernel, AbelianPresentation, CokernelMap, IntMatrix, LatticeSolver, LinalgError,
    QuotientCoords,
};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormError {
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Diag(#[from] DiagError),
    #[error("linear algebra error: {0}")]
    Linalg(#[from] LinalgError),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph homeomorphic to {0} has no intersection form; use the Betti report")]
    SpecialCase(&'static str),
    #[error("maturity is not defined for an arc")]
    ArcExcluded,
}

/// The intersection form as a matrix over the relative 2-cell basis,
/// one column per ordered pair of basis cycles.
#[derive(Clone, Debug)]
pub struct IntersectionForm {
    pub domain_basis: Vec<(usize, usize)>,
    pub matrix: IntMatrix,
}

/// Chain-level intersection of two cycles: the coefficient of the cell
/// (e, e') is the product of the cycle coefficients whenever the closed
/// edges meet; pairs with disjoint closures do not appear.
pub fn intersection_chain(
    g: &Graph,
    rc: &RelativeComplex,
    z: &Chain1,
    zp: &Chain1,
) -> Result<Vec<BigInt>, FormError> {
    if !z.is_cycle(g) || !zp.is_cycle(g) {
        return Err(FormError::NotACycle);
    }
    let mut out = vec![BigInt::zero(); rc.basis2.len()];
    for (e, n) in z.iter() {
        for (f, m) in zp.iter() {
            if let Some(idx) = rc.index_of((e, f)) {
                out[idx] += BigInt::from(n * m);
            }
        }
    }
    debug_assert!(rc.in_kernel(&out), "intersection chain left the kernel");
    Ok(out)
}

/// Assembles the form column by column over all ordered pairs of basis
/// cycles, (i, j) in row-major order.
pub fn build_form(
    g: &Graph,
    rc: &RelativeComplex,
    cycles: &[Chain1],
) -> Result<IntersectionForm, FormError> {
    let b1 = cycles.len();
    let mut domain_basis = Vec::with_capacity(b1 * b1);
    let mut columns = Vec::with_capacity(b1 * b1);
    for i in 0..b1 {
        for j in 0..b1 {
            domain_basis.push((i, j));
            columns.push(intersection_chain(g, rc, &cycles[i], &cycles[j])?);
        }
    }
    Ok(IntersectionForm {
        domain_basis,
        matrix: IntMatrix::from_columns(rc.basis2.len(), &columns),
    })
}

/// The cokernel of the intersection form with its reduction map from
/// relative 2-cycles to quotient coordinates.
pub struct QPresentation {
    pub group: AbelianPresentation,
    /// Rank of the form, i.e. of its image inside the 2-cycle lattice.
    pub form_rank: usize,
    pub h2_rank: usize,
    solver: LatticeSolver,
    coker: CokernelMap,
}

impl QPresentation {
    /// Sends a relative 2-cycle (a vector over basis2 lying in the kernel
    /// of the boundary) to its class in the cokernel.
    pub fn reduce(&self, chain: &[BigInt]) -> Result<QuotientCoords, FormError> {
        let coords = self.solver.solve(chain)?;
        Ok(self.coker.reduce(&coords))
    }
}

/// Everything the downstream modules need about one graph.
pub struct Analysis {
    pub graph: Graph,
    pub rc: RelativeComplex,
    pub cycles: Vec<Chain1>,
    pub form: IntersectionForm,
    pub q: QPresentation,
}

/// Runs the full pipeline on a connected graph that is neither an arc
/// nor a circle.
pub fn analyze(g: &Graph) -> Result<Analysis, FormError> {
    if g.is_arc() {
        return Err(FormError::SpecialCase("an arc"));
    }
    if g.is_circle() {
        return Err(FormError::SpecialCase("a circle"));
    }
    if g.edge_count() == 0 {
        return Err(FormError::NoEdges);
    }
    let rc = build_relative_complex(g)?;
    let cycles = cycle_basis(g)?;
    let form = build_form(g, &rc, &cycles)?;
    let solver = LatticeSolver::new(&rc.h2_basis)?;
    // Express each form column in kernel coordinates, then take the
    // cokernel there.
    let h2_rank = rc.h2_basis.cols();
    let mut columns = Vec::with_capacity(form.matrix.cols());
    for c in 0..form.matrix.cols() {
        columns.push(solver.solve(&form.matrix.column(c))?);
    }
    let in_kernel_coords = IntMatrix::from_columns(h2_rank, &columns);
    let form_rank = in_kernel_coords.rank();
    let (group, coker) = cokernel(&in_kernel_coords);
    Ok(Analysis {
        graph: g.clone(),
        rc,
        cycles,
        form,
        q: QPresentation {
            group,
            form_rank,
            h2_rank,
            solver,
            coker,
        },
    })
}

/// Cokernel of the intersection form of `g`.
pub fn q_group(g: &Graph) -> Result<QPresentation, FormError> {
    analyze(g).map(|a| a.q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialCase {
    None,
    Arc,
    Circle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    Circle,
    UnivalentVertex,
    DoubleEdge,
    Bridge,
    Wedge,
    DoubleWedge,
    Planar,
    QRankPositive,
    QTorsion,
}

/// Betti numbers of the two-point configuration space together with the
/// cokernel data that produced them.
#[derive(Clone, Debug, Serialize)]
pub struct BettiReport {
    pub b1_graph: i64,
    pub b1_config: i64,
    pub b2_config: i64,
    pub q_rank: i64,
    pub q_torsion: Vec<String>,
    pub sigma: i64,
    pub special_case: SpecialCase,
    pub mature: bool,
    pub reasons: Vec<Reason>,
}

/// Structural conditions each forcing a nontrivial cokernel.
pub fn detectors(g: &Graph) -> Vec<Reason> {
    let mut reasons = Vec::new();
    if g.valences().contains(&1) {
        reasons.push(Reason::UnivalentVertex);
    }
    if reduce(g).has_double_edge() {
        reasons.push(Reason::DoubleEdge);
    }
    if (0..g.edge_count()).any(|e| {
        let (a, b) = g.edge(e);
        let (rest, _, _) = g.without_vertices(&[a, b]);
        rest.vertex_count() > 0 && !rest.is_connected()
    }) {
        reasons.push(Reason::Bridge);
    }
    let report = structure(g);
    if report.wedge.is_some() {
        reasons.push(Reason::Wedge);
    }
    if report.double_wedge.is_some() {
        reasons.push(Reason::DoubleWedge);
    }
    if report.planar {
        reasons.push(Reason::Planar);
    }
    reasons
}

/// Betti numbers of the configuration space of two points on `g`.
///
/// Arcs and circles are special: their configuration spaces are a pair
/// of contractible pieces and a circle respectively.
pub fn betti_f2(g: &Graph) -> Result<BettiReport, FormError> {
    if !g.is_connected() {
        return Err(FormError::Graph(GraphError::Disconnected));
    }
    if g.edge_count() == 0 {
        return Err(FormError::NoEdges);
    }
    if g.is_arc() {
        return Ok(BettiReport {
            b1_graph: 0,
            b1_config: 0,
            b2_config: 0,
            q_rank: 0,
            q_torsion: vec![],
            sigma: g.sigma(),
            special_case: SpecialCase::Arc,
            mature: false,
            reasons: vec![],
        });
    }
    if g.is_circle() {
        return Ok(BettiReport {
            b1_graph: 1,
            b1_config: 1,
            b2_config: 0,
            q_rank: 0,
            q_torsion: vec![],
            sigma: 0,
            special_case: SpecialCase::Circle,
            mature: false,
            reasons: vec![Reason::Circle],
        });
    }
    let analysis = analyze(g)?;
    Ok(report_from_analysis(&analysis))
}

pub fn report_from_analysis(analysis: &Analysis) -> BettiReport {
    let g = &analysis.graph;
    let q = &analysis.q;
    let b1 = analysis.cycles.len() as i64;
    let q_rank = q.group.rank as i64;
    let sigma = g.sigma();
    let mature = q.group.is_trivial();
    let mut reasons = if mature { vec![] } else { detectors(g) };
    if !mature {
        if q.group.rank > 0 {
            reasons.push(Reason::QRankPositive);
        }
        if !q.group.torsion.is_empty() {
            reasons.push(Reason::QTorsion);
        }
    }
    BettiReport {
        b1_graph: b1,
        b1_config: 2 * b1 + q_rank,
        b2_config: b1 * b1 - b1 + 1 + q_rank - sigma,
        q_rank,
        q_torsion: q.group.torsion_strings(),
        sigma,
        special_case: SpecialCase::None,
        mature,
        reasons,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatureReport {
    pub mature: bool,
    pub reasons: Vec<Reason>,
    pub q_rank: i64,
    pub q_torsion: Vec<String>,
}

/// Maturity of a connected non-arc graph: the cokernel of the
/// intersection form is trivial. The circle is reported immature with
/// its own reason; arcs are outside the definition and rejected.
pub fn is_mature(g: &Graph) -> Result<MatureReport, FormError> {
    if !g.is_connected() {
        return Err(FormError::Graph(GraphError::Disconnected));
    }
    if g.is_arc() {
        return Err(FormError::ArcExcluded);
    }
    if g.is_circle() {
        return Ok(MatureReport {
            mature: false,
            reasons: vec![Reason::Circle],
            q_rank: 0,
            q_torsion: vec![],
        });
    }
    let report = betti_f2(g)?;
    Ok(MatureReport {
        mature: report.mature,
        reasons: report.reasons,
        q_rank: report.q_rank,
        q_torsion: report.q_torsion,
    })
}
