use thiserror::Error;

use crate::position::Pos;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate endpoint value {value}")]
    DuplicateEndpoint { value: i64 },

    #[error("degenerate interval [{left}, {right}]")]
    DegenerateInterval { left: i64, right: i64 },

    #[error("invalid position {num}/{den}: must be a rational in [0, 1] with positive denominator")]
    InvalidPosition { num: i64, den: i64 },

    #[error("invalid pillars: {0}")]
    InvalidPillars(String),

    #[error("illegal pillar pair ({p1}, {p2}): {reason}")]
    IllegalPair { p1: Pos, p2: Pos, reason: &'static str },

    #[error("illegal window ({lo}, {hi}): crosses a pillar")]
    IllegalWindow { lo: Pos, hi: Pos },

    #[error("palette of {palette} colors is too small for {positions} positions")]
    PaletteTooSmall { positions: usize, palette: usize },

    #[error("palette exhausted: step needs {needed} fresh colors, only {available} available")]
    PaletteExhausted { needed: usize, available: usize },

    #[error("degree budget violated after merge: max degree {max_degree} > budget {budget}")]
    BudgetViolated { max_degree: usize, budget: usize },

    #[error("instance too large for exact oracle: n = {n}, cap = {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("interval {interval} does not contain pillar position {pos}")]
    IntervalMissesPillar { interval: usize, pos: Pos },

    #[error("assignment incomplete: interval {interval} is not assigned to any pillar")]
    IncompleteAssignment { interval: usize },

    #[error("bad configuration: {0}")]
    BadConfig(String),

    #[error("unsupported format tag {found:?}, expected {expected:?}")]
    BadFormat { found: String, expected: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
