//! Deterministic instant-runoff voting on unweighted trees.
//!
//! Voters sit on every vertex and rank candidates by hop distance, breaking
//! distance ties by a per-vertex ID. The crate runs elections, decides
//! whether a candidate can be forced to lose ([`kill`]), computes exclusion
//! zones ([`zones`]), measures distortion against the social-cost optimum
//! ([`distortion`]), and ships brute-force references ([`oracle`]).

pub mod distortion;
pub mod election;
pub mod kill;
pub mod oracle;
pub mod tree;
pub mod zones;

pub use distortion::{
    distortion_scan, generate_family, optimal_candidate, social_cost, ConfigSource, DistortionReport, Family,
    GeneratorSpec,
};
pub use election::{pairwise_winner, preference_key, run_irv, ElectionTrace, PolicyPreset, TiePolicy};
pub use kill::{kill_dp, DpSummary, KillQuery, KillVerdict};
pub use tree::{RootedView, Tree, Vertex, VertexSet};
pub use zones::{build_loss_graph, closure, enumerate_zones, min_zone, verify_zone, Tournament, ZoneReport};
