use crate::fgab::{CoeffRing, Elem};

use super::bku::{frobenius_defect, one_more_digit, pow_elem, prime_of, BkuElement};
use super::KoneError;

/// `P(c) = c − (c − c^p)/p·h` on `π₀KU_p = ℤ_p`, in bidegree `(0, 0)`.
pub fn power_of_integer(ring: CoeffRing, c: Elem) -> Result<BkuElement, KoneError> {
    let t = frobenius_defect(&ring, c)?;
    BkuElement::integer(ring, c)?.sub(&BkuElement::h(ring)?.scale(t)?)
}

/// `P(β^m) = (β^p τ^{-2})^m`.
pub fn power_of_bott(ring: CoeffRing, m: i64) -> Result<BkuElement, KoneError> {
    let p = prime_of(&ring)? as i64;
    BkuElement::monomial(ring, 1, 0, p, -1)?.pow(m)
}

/// The total power operation `π_{2m}KU_p → π_{2pm, 2m}`, for a class
/// `c·β^m` given in bidegree `(2m, 0)` with no `d` component.
pub fn power_total(x: &BkuElement) -> Result<BkuElement, KoneError> {
    let (s, w) = x.bidegree();
    let (c, dc) = x.even_coeffs();
    if w != 0 || s % 2 != 0 || dc != 0 || !x.coeffs_is_even_or_zero() {
        return Err(KoneError::DegreeMismatch(format!("power_total takes a class of π_*KU_p, got {x} in ({s},{w})")));
    }
    power_of_integer(x.ring(), c)?.mul(&power_of_bott(x.ring(), s / 2)?)
}

/// `h[w] = h·τ^{-w}` for even `w`.
pub fn h_element(ring: CoeffRing, w: i64) -> Result<BkuElement, KoneError> {
    if w % 2 != 0 {
        return Err(KoneError::DegreeMismatch(format!("h[{w}] needs an even weight; odd weights live in the KO₂ window")));
    }
    BkuElement::h(ring)?.mul(&BkuElement::tau2(ring)?.pow(-w / 2)?)
}

/// `C(x, y) = ((c+c′)^p − c^p − c′^p)/p`, the coefficient of the cross term.
pub fn cross_coefficient(ring: &CoeffRing, c: Elem, c2: Elem) -> Result<Elem, KoneError> {
    let p = prime_of(ring)? as Elem;
    let wide = one_more_digit(ring);
    let sum = pow_elem(&wide, c + c2, p as u64)?;
    let parts = wide.add(pow_elem(&wide, c, p as u64)?, pow_elem(&wide, c2, p as u64)?)?;
    Ok(ring.reduce(wide.sub(sum, parts)? / p))
}

/// The correction `C(x, y)·β^{pm}·h[2m]` in `P(x + y) = P(x) + P(y) + …` for
/// `x = c·β^m`, `y = c′·β^m`.
pub fn addition_correction(x: &BkuElement, y: &BkuElement) -> Result<BkuElement, KoneError> {
    if x.bidegree() != y.bidegree() {
        return Err(KoneError::DegreeMismatch("the addition formula needs equal degrees".into()));
    }
    let ring = x.ring();
    let p = prime_of(&ring)? as i64;
    let m = x.bidegree().0 / 2;
    let c = cross_coefficient(&ring, x.even_coeffs().0, y.even_coeffs().0)?;
    BkuElement::monomial(ring, c, 0, p * m, 0)?.mul(&h_element(ring, 2 * m)?)
}

impl BkuElement {
    fn coeffs_is_even_or_zero(&self) -> bool {
        !matches!(self.coeffs(), super::bku::Coeffs::Odd(_))
    }
}
