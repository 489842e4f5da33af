//! Spectral sequences of towers from long-exact-sequence data.
//!
//! Pages and differentials come from one relation per position: `d_r` out of
//! `(s, t)` relates `a ∈ π_s F(t)` to `bdry(y)` for any `y ∈ π_s X(t+r−2)`
//! projecting to `incl(a)`. Cycles, boundaries and the differential itself
//! are all read off that relation.

mod datum;
mod engine;
mod filtered;
mod limit;
mod two_stage;

pub use datum::{validate_tower, Pos, TowerDatum, TowerJson, Violation, WindowJson};
pub use engine::{
    boundaries, cycles, d_relation, differential, e_infinity_page, page, run_pages, stable_page, Differential, Page,
    PageEntry,
};
pub use filtered::{FilteredComplex, Generator};
pub use limit::{einfinity, Convergence, Layer, LimitData};
pub use two_stage::{two_stage, two_stage_graded};

use crate::fgab::FgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error("WindowExceeded: {what} at ({s},{t}) is outside s in {s_range:?}, t in {t_range:?}")]
    WindowExceeded { what: String, s: i64, t: i64, s_range: (i64, i64), t_range: (i64, i64) },
    #[error("BadPage: page index {0} is not allowed here")]
    BadPage(u32),
    #[error("ConvergenceUnverifiable: {0}")]
    ConvergenceUnverifiable(String),
    #[error("LimitInconsistent: {0}")]
    LimitInconsistent(String),
    #[error("Schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Algebra(#[from] FgError),
}
