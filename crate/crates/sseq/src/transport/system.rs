use std::fmt::Debug;

use serde::Serialize;

use super::TransportError;

/// An operation table for power operations of index `m`.
///
/// `power(i, x)` is the `i`-th power operation (with `power(0, x)` the unit
/// of the relevant degree), `euler(i, n, x)` multiplies by the `n`-th power
/// of the Euler class of the reduced permutation representation of `Σ_i`,
/// and `transfer(i, x)` is the transfer from the block `Σ_i × Σ_{m−i}`.
pub trait PowerSystem {
    type Value: Clone + PartialEq + Debug;

    fn index(&self) -> u32;
    fn power(&self, i: u32, x: &Self::Value) -> Result<Self::Value, TransportError>;
    fn euler(&self, i: u32, n: u32, x: &Self::Value) -> Result<Self::Value, TransportError>;
    fn transfer(&self, i: u32, x: &Self::Value) -> Result<Self::Value, TransportError>;
    fn product(&self, x: &Self::Value, y: &Self::Value) -> Result<Self::Value, TransportError>;
    fn add(&self, x: &Self::Value, y: &Self::Value) -> Result<Self::Value, TransportError>;
    fn neg(&self, x: &Self::Value) -> Result<Self::Value, TransportError>;
    fn is_zero(&self, x: &Self::Value) -> bool;
}

/// `Σ_{0<i≤m} tr_i(a_i^n·P^i(f)·P^{m−i}(x))`, the power of `x + f` with the
/// loop coordinate `f` in degree `n` above `x`.
pub fn shifted_power<S: PowerSystem>(ps: &S, n: u32, x: &S::Value, f: &S::Value) -> Result<S::Value, TransportError> {
    if n == 0 {
        return Err(TransportError::DegreeMismatch("the looped power formula needs n ≥ 1".into()));
    }
    let m = ps.index();
    let mut total: Option<S::Value> = None;
    for i in 1..=m {
        let top = ps.euler(i, n, &ps.power(i, f)?)?;
        let term = ps.transfer(i, &ps.product(&top, &ps.power(m - i, x)?)?)?;
        total = Some(match total {
            None => term,
            Some(t) => ps.add(&t, &term)?,
        });
    }
    Ok(total.expect("m ≥ 1"))
}

/// `Q = a_m^t ∘ P^m`.
pub fn q_apply<S: PowerSystem>(ps: &S, t: u32, x: &S::Value) -> Result<S::Value, TransportError> {
    let m = ps.index();
    ps.euler(m, t, &ps.power(m, x)?)
}

/// Outcome of sampling `f(x + y) = f(x) + f(y)`.
#[derive(Clone, Debug, Serialize)]
pub struct AdditivityWitness {
    pub samples: usize,
    pub failures: Vec<String>,
}

impl AdditivityWitness {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn additivity_witness<S: PowerSystem>(
    ps: &S,
    pairs: &[(S::Value, S::Value)],
    f: impl Fn(&S::Value) -> Result<S::Value, TransportError>,
) -> Result<AdditivityWitness, TransportError> {
    let mut failures = Vec::new();
    for (x, y) in pairs {
        let lhs = f(&ps.add(x, y)?)?;
        let rhs = ps.add(&f(x)?, &f(y)?)?;
        let defect = ps.add(&lhs, &ps.neg(&rhs)?)?;
        if !ps.is_zero(&defect) {
            failures.push(format!("x = {x:?}, y = {y:?}: defect {defect:?}"));
        }
    }
    Ok(AdditivityWitness { samples: pairs.len(), failures })
}
