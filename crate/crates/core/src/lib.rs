//! Certified minor embeddings of sparse graphs into hypercubes, and the
//! matching counting bound showing how far such embeddings can go.
//!
//! The crate has three pillars:
//!
//! - [`grid`]: any permutation of a mixed-radix grid factors into `2d - 1`
//!   one-dimensional passes, via perfect-matching splits of a regular
//!   bipartite column multigraph ([`bipartite`]).
//! - [`embed`]: an explicit minor model of any guest graph with `m` edges
//!   inside `Q_d` for `d` around `log2(m) + log2(log2(m)) + 6`, built from
//!   Gray-cycle branch arcs and temporally routed vertex-disjoint paths,
//!   certified by the independent [`verify`] checker.
//! - [`expander`]: exact arithmetic showing that hosts of dimension `d`
//!   cannot hold graphs with too many edges: brute-force vertex expansion,
//!   per-coordinate cut counting, and the closing inequality chain.

pub mod bipartite;
pub mod cube;
pub mod embed;
pub mod error;
pub mod expander;
pub mod graph;
pub mod grid;
pub mod io;
pub mod verify;

pub use bipartite::{RegularBipartiteMultigraph, TaggedEdge};
pub use cube::{
    even_cycle_embedding, gray_cycle, hamming, is_cube_edge, CubeVertex, CycleEmbedding, GrayCycle,
};
pub use embed::{
    assign_ports, embed, feasible_params, route_paths, target_involution, EdgePath, EmbedParams,
    MinorModel, PortAssignment,
};
pub use error::{Error, Result};
pub use expander::{
    bound_report, check_expansion, default_beta, gen_cubic, subcubic_nonminor_certificate,
    theorem_inequality, weight_tail, BoundReport, CertificateReport, CubicGraph, ExpansionReport,
    Placement, TheoremReport,
};
pub use graph::GuestGraph;
pub use grid::{compose_equals, GridPerm, GridPoint, GridShape, OneDimPerm};
pub use verify::{verify, VerifyReport, Violation, ViolationCode};
