//! Transport of nonadditive operations through spectral sequences of towers.
//!
//! Two layers. [`PowerSystem`] is an operation table (powers, Euler classes,
//! transfers, products) from which the looped power formula and the additive
//! composite `a^t·P^m` are evaluated. [`UnstableMap`] is a map of tower data
//! that is a function on `π₀` and additive above, with basepoint-shifted
//! versions `Q_x`; cycles, boundaries and differentials are transported
//! through it and every claim comes with a witness checked against the raw
//! tower maps.

mod detect;
mod instances;
mod ku;
mod system;
mod table;
mod unstable;

pub use detect::{detect_power, Detection};
pub use instances::{linear_model_instance, ring_tower_instance, LinearModel};
pub use ku::KuSystem;
pub use system::{additivity_witness, q_apply, shifted_power, AdditivityWitness, PowerSystem};
pub use table::{RingSpec, TableSystem, TableSystemJson};
pub use unstable::{
    transport_boundaries, transport_cycles, transport_differential, transport_generic, Certificate, DifferentialRecord,
    GenericReport, LevelMap, UnstableMap,
};

use crate::fgab::FgError;
use crate::kone::KoneError;
use crate::tower::TowerError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransportError {
    #[error("DegreeMismatch: {0}")]
    DegreeMismatch(String),
    #[error("WindowExceeded: {0}")]
    WindowExceeded(String),
    #[error("NotInPage: {0}")]
    NotInPage(String),
    #[error("DataInconsistent: {0}")]
    DataInconsistent(String),
    #[error("Schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Tower(TowerError),
    #[error(transparent)]
    Kone(KoneError),
    #[error(transparent)]
    Algebra(FgError),
}

impl From<FgError> for TransportError {
    fn from(e: FgError) -> Self {
        TransportError::Algebra(e)
    }
}

impl From<TowerError> for TransportError {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::WindowExceeded { .. } => TransportError::WindowExceeded(e.to_string()),
            TowerError::Algebra(inner) => TransportError::Algebra(inner),
            other => TransportError::Tower(other),
        }
    }
}

impl From<KoneError> for TransportError {
    fn from(e: KoneError) -> Self {
        match e {
            KoneError::DegreeMismatch(m) => TransportError::DegreeMismatch(m),
            KoneError::WindowExceeded(m) => TransportError::WindowExceeded(m),
            other => TransportError::Kone(other),
        }
    }
}
