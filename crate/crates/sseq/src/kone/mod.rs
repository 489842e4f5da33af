//! K(1)-local computations: the bigraded ring `π_{*,*}b(KU_p)`, Adams
//! operations and total power operations on it, the homotopy of the
//! K(1)-local sphere and of its Borel construction by descent along
//! `ψ^k − 1`, and power operations on those groups.

mod adams;
mod bku;
mod descent;
mod expr;
mod ko2;
mod power;
mod sk1;
mod theorems;

pub use adams::{psi, tau_twist};
pub use bku::{canonical_exponents, shape, BkuElement, BkuJson, Coeffs, Shape};
pub use descent::{DescentGroup, Piece, Side};
pub use expr::{eval, Expr};
pub use ko2::{Ko2Gen, Ko2Window, KoClass, Operator, Twist, KO2_S_WINDOW, KO2_W_WINDOW};
pub use power::{addition_correction, cross_coefficient, h_element, power_of_bott, power_of_integer, power_total};
pub use sk1::{b_sk1_pi, default_generator, ku_piece, sk1_pi, validate_generator, Axiom, GroupRecord};
pub use theorems::{k1_power_odd, k1_power_two, theta_epsilon, theta_integer, OddPower, PowerClass, ThetaValue, TwoPower};

use crate::fgab::FgError;
use crate::tower::TowerError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KoneError {
    #[error("NotAUnit: {0} is not a p-adic unit")]
    NotAUnit(String),
    #[error("NotATopologicalGenerator: {k} does not topologically generate the units at p = {p}")]
    NotATopologicalGenerator { p: u32, k: i128 },
    #[error("DegreeMismatch: {0}")]
    DegreeMismatch(String),
    #[error("PrecisionExhausted: the answer at p = {p} is not determined at precision {precision}")]
    PrecisionExhausted { p: u32, precision: u32 },
    #[error("WindowExceeded: {0}")]
    WindowExceeded(String),
    #[error("Parse: {0}")]
    Parse(String),
    #[error(transparent)]
    Algebra(FgError),
    #[error(transparent)]
    Tower(TowerError),
}

impl From<FgError> for KoneError {
    fn from(e: FgError) -> Self {
        match e {
            FgError::PrecisionExhausted { p, precision } => KoneError::PrecisionExhausted { p, precision },
            other => KoneError::Algebra(other),
        }
    }
}

impl From<TowerError> for KoneError {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::Algebra(inner) => inner.into(),
            TowerError::WindowExceeded { .. } => KoneError::WindowExceeded(e.to_string()),
            other => KoneError::Tower(other),
        }
    }
}
