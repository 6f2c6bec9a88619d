//! Homology of the two-point configuration space of a finite graph.
//!
//! The pipeline: a graph is modelled as a 1-dimensional simplicial complex
//! ([`graph`]); the cellular chain complex of the diagonal neighborhood in
//! the square of the graph, relative to its frontier, is assembled in
//! [`diag`]; the intersection form on pairs of graph cycles and the
//! cokernel group it presents live in [`form`]; linking classes and
//! edge-addition bookkeeping in [`linking`]. Everything is verified
//! against an independent cellular-homology computation on the discrete
//! configuration space ([`oracle`]). Exact integer linear algebra
//! (Smith normal form, kernels, cokernels) is in [`linalg`];
//! [`experiments`] runs seeded random-graph sweeps and scans.

pub mod diag;
pub mod experiments;
pub mod form;
pub mod graph;
pub mod linalg;
pub mod linking;
pub mod oracle;
