use serde::Serialize;

use crate::fgab::Elem;
use crate::tower::{einfinity, LimitData, TowerDatum};

use super::TransportError;

/// Where a value in the abutment is detected, and how much of the abutment
/// lies strictly above it.
#[derive(Clone, Debug, Serialize)]
pub struct Detection {
    pub value: Vec<Elem>,
    /// Filtration level and `E_∞` class; `None` for the zero element.
    pub level: Option<i64>,
    pub class: Option<Vec<Elem>>,
    /// Generators of the filtration stage above the detecting level.
    pub higher: Vec<Vec<Elem>>,
    /// Whether that stage is zero, so the detected class pins down the value.
    pub exact: bool,
}

/// Detect `value ∈ π_s lim` in the spectral sequence of `tower`.
pub fn detect_power(tower: &TowerDatum, s: i64, limit: &LimitData, value: &[Elem]) -> Result<Detection, TransportError> {
    let conv = einfinity(tower, s, limit)?;
    let found = conv.detect(value)?;
    let (level, class) = match found {
        Some((t, c)) => (Some(t), Some(c)),
        None => (None, None),
    };
    let above = level.unwrap_or(tower.t_range.0 - 1) + 1;
    let stage = conv
        .filtration_stage(above)
        .ok_or_else(|| TransportError::WindowExceeded(format!("no filtration stage {above}")))?;
    let mut higher = Vec::new();
    for g in stage.gens().columns() {
        if !limit.module.is_zero_element(&g)? {
            higher.push(limit.module.reduce(&g)?);
        }
    }
    let exact = higher.is_empty();
    Ok(Detection { value: limit.module.reduce(value)?, level, class, higher, exact })
}
