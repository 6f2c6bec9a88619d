//! Linking classes of cycles against a vertex pair, and the bookkeeping
//! for adding an edge between the pair.
//!
//! For non-adjacent vertices u, v and a cycle c avoiding both, the
//! product of a connecting chain (boundary u - v) with c is a relative
//! 2-cycle of the diagonal neighborhood; its class in the cokernel of
//! the intersection form is independent of the chain. These classes
//! control how the cokernel and the Betti numbers change when the edge
//! uv is attached.

use crate::form::{analyze, betti_f2, report_from_analysis, Analysis, BettiReport, FormError};
use crate::graph::{
    connecting_chain, cycle_space, second_connecting_chain, Chain1, Graph, GraphError,
};
use crate::linalg::{IntMatrix, QuotientCoords, QuotientCoordsDoc};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinkError {
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Form(#[from] FormError),
    #[error("vertices {0} and {1} are adjacent; subdivide first")]
    AdjacentVertices(String, String),
    #[error("identical vertices")]
    IdenticalVertices,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("cycle touches a removed vertex")]
    CycleTouchesPair,
    #[error("no connecting path between the vertices")]
    NoPath,
    #[error("invalid attachment: {0}")]
    InvalidAttachment(String),
}

/// The graph left after removing u, v and all incident edges, with maps
/// back to the ambient indices.
pub struct Gamma0 {
    pub graph: Graph,
    pub vertex_back: Vec<usize>,
    pub edge_back: Vec<usize>,
}

pub fn gamma0(g: &Graph, u: usize, v: usize) -> Result<Gamma0, LinkError> {
    if u == v {
        return Err(LinkError::IdenticalVertices);
    }
    let n = g.vertex_count();
    if u >= n || v >= n {
        return Err(LinkError::Graph(GraphError::VertexOutOfRange(u.max(v), n)));
    }
    let (graph, vertex_back, edge_back) = g.without_vertices(&[u, v]);
    Ok(Gamma0 {
        graph,
        vertex_back,
        edge_back,
    })
}

fn check_supported_away(g: &Graph, u: usize, v: usize, z: &Chain1) -> Result<(), LinkError> {
    for e in z.support() {
        let (a, b) = g.edge(e);
        if a == u || a == v || b == u || b == v {
            return Err(LinkError::CycleTouchesPair);
        }
    }
    Ok(())
}

/// The relative 2-cycle representing the linking of `z` with the pair
/// (u, v), using the supplied connecting chain, as a vector over the
/// 2-cell basis. The product-boundary identity is checked exactly
/// before projecting into the relative complex.
pub fn linking_chain_with(
    analysis: &Analysis,
    u: usize,
    v: usize,
    z: &Chain1,
    a: &Chain1,
) -> Result<Vec<BigInt>, LinkError> {
    let g = &analysis.graph;
    if u == v {
        return Err(LinkError::IdenticalVertices);
    }
    if g.are_adjacent(u, v) {
        return Err(LinkError::AdjacentVertices(
            g.label(u).to_string(),
            g.label(v).to_string(),
        ));
    }
    if !z.is_cycle(g) {
        return Err(LinkError::NotACycle);
    }
    check_supported_away(g, u, v, z)?;
    let boundary = a.boundary(g);
    assert_eq!(
        boundary,
        BTreeMap::from([(u, 1), (v, -1)]),
        "connecting chain must have boundary u - v"
    );

    // Boundary of the full product chain in the square of the graph:
    // d(a x c) must be exactly (u x c) - (v x c).
    let mut left: BTreeMap<(usize, usize), i64> = BTreeMap::new(); // vertex x edge
    let mut right: BTreeMap<(usize, usize), i64> = BTreeMap::new(); // edge x vertex
    for (ea, m) in a.iter() {
        let (aa, ab) = g.edge(ea);
        for (ec, n) in z.iter() {
            let (ca, cb) = g.edge(ec);
            *left.entry((ab, ec)).or_insert(0) += m * n;
            *left.entry((aa, ec)).or_insert(0) -= m * n;
            *right.entry((ea, cb)).or_insert(0) -= m * n;
            *right.entry((ea, ca)).or_insert(0) += m * n;
        }
    }
    left.retain(|_, c| *c != 0);
    right.retain(|_, c| *c != 0);
    let expected: BTreeMap<(usize, usize), i64> = z
        .iter()
        .flat_map(|(e, n)| [((u, e), n), ((v, e), -n)])
        .collect();
    assert!(right.is_empty(), "product boundary has edge-vertex terms");
    assert_eq!(left, expected, "product boundary is not u x c - v x c");

    // Project onto the relative basis: cells with disjoint closures lie
    // in the discrete configuration space and are dropped.
    let rc = &analysis.rc;
    let mut out = vec![BigInt::zero(); rc.basis2.len()];
    for (ea, m) in a.iter() {
        for (ec, n) in z.iter() {
            if let Some(idx) = rc.index_of((ea, ec)) {
                out[idx] += BigInt::from(m * n);
            }
        }
    }
    assert!(rc.in_kernel(&out), "projected linking chain is not a cycle");
    Ok(out)
}

fn default_chain(g: &Graph, u: usize, v: usize) -> Result<Chain1, LinkError> {
    connecting_chain(g, v, u, &BTreeSet::new()).ok_or(LinkError::NoPath)
}

/// Linking class of `z` in the cokernel, via the deterministic shortest
/// connecting chain from v to u.
pub fn linking_class(
    analysis: &Analysis,
    u: usize,
    v: usize,
    z: &Chain1,
) -> Result<QuotientCoords, LinkError> {
    let a = default_chain(&analysis.graph, u, v)?;
    let chain = linking_chain_with(analysis, u, v, z, &a)?;
    Ok(analysis.q.reduce(&chain)?)
}

/// Same class evaluated through an explicit connecting chain; used to
/// check independence of the choice.
pub fn linking_class_with_chain(
    analysis: &Analysis,
    u: usize,
    v: usize,
    z: &Chain1,
    a: &Chain1,
) -> Result<QuotientCoords, LinkError> {
    let chain = linking_chain_with(analysis, u, v, z, a)?;
    Ok(analysis.q.reduce(&chain)?)
}

/// A second connecting chain witness, edge-disjoint from the default
/// when possible; `None` when the connecting path is unique.
pub fn alternative_chain(g: &Graph, u: usize, v: usize) -> Option<Chain1> {
    let first = connecting_chain(g, v, u, &BTreeSet::new())?;
    second_connecting_chain(g, v, u, &first)
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkingReport {
    pub u: String,
    pub v: String,
    pub gamma0_b0: usize,
    pub gamma0_b1: usize,
    pub gamma0_cycles: Vec<Vec<(String, i64)>>,
    pub lk_values: Vec<QuotientCoordsDoc>,
    pub a_rank: usize,
    pub a_plus_tau_a_rank: usize,
    pub torsion_in_lk: bool,
    #[serde(skip)]
    pub lk_raw: Vec<QuotientCoords>,
    #[serde(skip)]
    pub tau_lk_raw: Vec<QuotientCoords>,
}

fn rank_of_free_parts(values: &[&QuotientCoords], dim: usize) -> usize {
    let cols: Vec<Vec<BigInt>> = values.iter().map(|q| q.free.clone()).collect();
    IntMatrix::from_columns(dim, &cols).rank()
}

/// Evaluates the linking class on every basis cycle of the complement
/// of the pair, with the ranks of the image and of the image joined
/// with its involution twin.
pub fn linking_report(analysis: &Analysis, u: usize, v: usize) -> Result<LinkingReport, LinkError> {
    let g = &analysis.graph;
    if g.are_adjacent(u, v) {
        return Err(LinkError::AdjacentVertices(
            g.label(u).to_string(),
            g.label(v).to_string(),
        ));
    }
    let g0 = gamma0(g, u, v)?;
    let cycles0 = cycle_space(&g0.graph);
    let mut lk_raw = Vec::new();
    let mut tau_lk_raw = Vec::new();
    let mut gamma0_cycles = Vec::new();
    let a = default_chain(g, u, v)?;
    for z0 in &cycles0 {
        let z = Chain1::from_pairs(z0.iter().map(|(e, c)| (g0.edge_back[e], c)));
        gamma0_cycles.push(
            z.iter()
                .map(|(e, c)| {
                    let (x, y) = g.edge(e);
                    (format!("{}-{}", g.label(x), g.label(y)), c)
                })
                .collect(),
        );
        let chain = linking_chain_with(analysis, u, v, &z, &a)?;
        let tau_chain = analysis.rc.tau_apply(&chain).expect("dimensions agree");
        lk_raw.push(analysis.q.reduce(&chain)?);
        tau_lk_raw.push(analysis.q.reduce(&tau_chain)?);
    }
    let q_rank = analysis.q.group.rank;
    let a_rank = rank_of_free_parts(&lk_raw.iter().collect::<Vec<_>>(), q_rank);
    let joined: Vec<&QuotientCoords> = lk_raw.iter().chain(tau_lk_raw.iter()).collect();
    let a_plus_tau_a_rank = rank_of_free_parts(&joined, q_rank);
    let torsion_in_lk = lk_raw.iter().any(QuotientCoords::has_torsion_part);
    Ok(LinkingReport {
        u: g.label(u).to_string(),
        v: g.label(v).to_string(),
        gamma0_b0: g0.graph.components().len(),
        gamma0_b1: cycles0.len(),
        gamma0_cycles,
        lk_values: lk_raw.iter().map(QuotientCoordsDoc::from).collect(),
        a_rank,
        a_plus_tau_a_rank,
        torsion_in_lk,
        lk_raw,
        tau_lk_raw,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeAdditionReport {
    pub before: BettiReport,
    pub after: BettiReport,
    pub linking: LinkingReport,
    pub g_rank: i64,
    pub x_rank: i64,
    pub q_rank_identity: bool,
    pub b2_delta_identity: bool,
    pub consistency: bool,
    pub subdivided_uv_edges: usize,
}

/// Adds the edge uv and accounts for the change: the cokernel rank drops
/// by the rank of the linking image joined with its involution twin and
/// grows by one free summand per extra component of the complement,
/// twice over; the second Betti number grows by the kernel rank of the
/// stacked linking matrices.
pub fn add_edge_report(g: &Graph, u: usize, v: usize) -> Result<EdgeAdditionReport, LinkError> {
    if u == v {
        return Err(LinkError::IdenticalVertices);
    }
    if !g.is_connected() {
        return Err(LinkError::Graph(GraphError::Disconnected));
    }
    if g.is_arc() || g.is_circle() {
        return Err(LinkError::Form(FormError::SpecialCase(
            "an arc or a circle",
        )));
    }
    let mut work = g.clone();
    let mut subdivided = 0;
    while let Some(e) = work.edge_index(u, v) {
        work = work.subdivide_edges(&[e], 1);
        subdivided += 1;
    }
    let analysis = analyze(&work)?;
    let before = report_from_analysis(&analysis);
    let after = betti_f2(&work.with_edge_added(u, v)?)?;
    let linking = linking_report(&analysis, u, v)?;

    let g_rank = 2 * linking.gamma0_b0 as i64 - 2;
    let n0 = linking.gamma0_b1;
    let q_rank = analysis.q.group.rank;
    let stacked: Vec<&QuotientCoords> = linking
        .lk_raw
        .iter()
        .chain(linking.tau_lk_raw.iter())
        .collect();
    let x_rank = 2 * n0 as i64 - rank_of_free_parts(&stacked, q_rank) as i64;

    let q_rank_identity = after.q_rank == before.q_rank - linking.a_plus_tau_a_rank as i64 + g_rank;
    let b2_delta_identity = after.b2_config == before.b2_config + x_rank;
    Ok(EdgeAdditionReport {
        consistency: q_rank_identity && b2_delta_identity,
        q_rank_identity,
        b2_delta_identity,
        g_rank,
        x_rank,
        before,
        after,
        linking,
        subdivided_uv_edges: subdivided,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PendantReport {
    pub vertex: String,
    pub mu: usize,
    pub before: BettiReport,
    pub after: BettiReport,
    pub b1_delta: i64,
    pub expected_b1_delta: i64,
    pub b2_unchanged: bool,
    pub consistent: bool,
}

/// Attaches a fresh pendant edge at `v` and checks the enlargement
/// identities: the second Betti number of the configuration space is
/// unchanged and the first grows by 2*valence(v) - 2.
///
/// When the base graph is an arc its configuration space is
/// disconnected and the first-Betti delta does not apply; only the
/// second-Betti identity is asserted there.
pub fn pendant_report(g: &Graph, v: usize) -> Result<PendantReport, LinkError> {
    if v >= g.vertex_count() {
        return Err(LinkError::InvalidAttachment(format!(
            "vertex {v} out of range"
        )));
    }
    let mu = g.valence(v);
    let mut labels = g.labels().to_vec();
    let mut name = format!("{}~pendant", g.label(v));
    while labels.contains(&name) {
        name.push('\'');
    }
    labels.push(name);
    let mut edges = g.edges().to_vec();
    let w = labels.len() - 1;
    edges.push((v.min(w), v.max(w)));
    let enlarged = Graph::new(labels, edges, g.marked())?;

    let before = betti_f2(g)?;
    let after = betti_f2(&enlarged)?;
    let b1_delta = after.b1_config - before.b1_config;
    let expected = 2 * mu as i64 - 2;
    let b2_unchanged = after.b2_config == before.b2_config;
    let arc_base = matches!(before.special_case, crate::form::SpecialCase::Arc);
    Ok(PendantReport {
        vertex: g.label(v).to_string(),
        mu,
        consistent: b2_unchanged && (arc_base || b1_delta == expected),
        b1_delta,
        expected_b1_delta: expected,
        b2_unchanged,
        before,
        after,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    pub b1_parts: [i64; 2],
    pub b2_parts: [i64; 2],
    pub b2_joined: i64,
    pub expected_b2: i64,
    pub consistent: bool,
}

/// Joins two connected graphs by a single bridge edge from `u` in the
/// first to `v` in the second and checks the product formula for the
/// second Betti number of the configuration space.
pub fn bridge_report(
    g1: &Graph,
    g2: &Graph,
    u: usize,
    v: usize,
) -> Result<BridgeReport, LinkError> {
    if !g1.is_connected() || !g2.is_connected() {
        return Err(LinkError::Graph(GraphError::Disconnected));
    }
    if u >= g1.vertex_count() || v >= g2.vertex_count() {
        return Err(LinkError::InvalidAttachment("endpoint out of range".into()));
    }
    let mut labels = g1.labels().to_vec();
    let taken: BTreeSet<String> = labels.iter().cloned().collect();
    let offset = labels.len();
    for l in g2.labels() {
        let mut name = l.clone();
        while taken.contains(&name) || labels[offset..].contains(&name) {
            name.push('\'');
        }
        labels.push(name);
    }
    let mut edges = g1.edges().to_vec();
    edges.extend(g2.edges().iter().map(|&(a, b)| (a + offset, b + offset)));
    let vo = v + offset;
    edges.push((u.min(vo), u.max(vo)));
    let joined = Graph::new(labels, edges, None)?;

    let r1 = betti_f2(g1)?;
    let r2 = betti_f2(g2)?;
    let joined_report = betti_f2(&joined)?;
    let expected = r1.b2_config + r2.b2_config + 2 * g1.first_betti() * g2.first_betti();
    Ok(BridgeReport {
        b1_parts: [g1.first_betti(), g2.first_betti()],
        b2_parts: [r1.b2_config, r2.b2_config],
        b2_joined: joined_report.b2_config,
        expected_b2: expected,
        consistent: joined_report.b2_config == expected,
    })
}
