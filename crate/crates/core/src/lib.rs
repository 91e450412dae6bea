//! Coloring circle graphs presented as interval overlap systems.
//!
//! An interval system with clique number ω is colored with at most 7ω²
//! colors in three stages: an augmenting loop places *pillars* (rational
//! points avoiding all endpoints) until every interval contains one,
//! assigning each interval to the order-earliest pillar it contains while
//! keeping overlapping intervals off distinct same-colored pillars; the
//! pillars use at most 7ω colors, so the intervals split into at most 7ω
//! classes whose components each share a pillar and therefore form
//! permutation graphs; each per-pillar fiber is then colored optimally by
//! patience piles and the (class, pile) pairs become the final colors.
//!
//! Everything the construction relies on ships with an independent check:
//! exact clique/chromatic oracles, a naive P-degree reference, and verifiers
//! for properness and the permutation-graph certificate.

pub mod augment;
pub mod balanced_order;
pub mod error;
pub mod formats;
pub mod generator;
pub mod interval_system;
pub mod oracles;
pub mod perm_coloring;
pub mod pillar_assignment;
pub mod position;

pub use augment::{
    augment_step, color_system, AugmentConfig, AugmentContext, ColoringRun, Profile, StepTrace,
};
pub use balanced_order::{adaptive_k, build_balanced, BalancedOrderResult};
pub use error::{Error, Result};
pub use generator::{
    gen_blocks, gen_crossing_clique, gen_nested_chain, gen_uniform_matching, generate, GenModel,
    GenSpec, SplitMix64,
};
pub use interval_system::{
    overlaps, segments_of, Endpoint, Interval, IntervalSystem, OverlapGraph, Segment,
};
pub use oracles::{
    chromatic_number_exact, clique_number_exact, p_degree_oracle, verify_permutation_certificate,
    verify_proper, CheckResult, VerificationReport,
};
pub use perm_coloring::{
    compose, fiber_permutation, fibers, patience_color, ClassColoring, Fiber, IntervalColorRecord,
};
pub use pillar_assignment::{p_degree, Condition1Violation, Pillar, PillarAssignmentState};
pub use position::Pos;
