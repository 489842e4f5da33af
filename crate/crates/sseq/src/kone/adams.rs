use crate::fgab::{CoeffRing, Elem};

use super::bku::{canonical_exponents, one_more_digit, pow_elem, prime_of, shape, BkuElement, Coeffs, Shape};
use super::KoneError;

/// `(k^{p−1} − 1)/p`, the `d`-coefficient in `ψ^k(τ²) = τ²(1 + e·d)`.
pub fn tau_twist(ring: &CoeffRing, k: Elem) -> Result<Elem, KoneError> {
    let p = prime_of(ring)? as Elem;
    let wide = one_more_digit(ring);
    let kk = wide.reduce(k);
    if !ring.is_unit(ring.reduce(k)) {
        return Err(KoneError::NotAUnit(k.to_string()));
    }
    let power = pow_elem(&wide, kk, (p - 1) as u64)?;
    Ok(ring.reduce(wide.sub(power, 1)? / p))
}

/// Images of the generators under `ψ^k`.
struct AdamsImages {
    beta: BkuElement,
    tau2: BkuElement,
    a: BkuElement,
}

impl AdamsImages {
    fn new(ring: CoeffRing, k: Elem) -> Result<Self, KoneError> {
        let e = tau_twist(&ring, k)?;
        let one_plus = BkuElement::even(ring, 0, 0, 1, e)?;
        Ok(AdamsImages {
            beta: BkuElement::beta(ring)?.scale(k)?,
            tau2: BkuElement::tau2(ring)?.mul(&one_plus)?,
            a: BkuElement::a(ring)?,
        })
    }

    fn monomial(&self, a_exp: u32, i: i64, j: i64) -> Result<BkuElement, KoneError> {
        self.a.pow(a_exp as i64)?.mul(&self.beta.pow(i)?)?.mul(&self.tau2.pow(j)?)
    }
}

/// The Adams operation `ψ^k`, evaluated as the ring map with `β ↦ kβ`,
/// `τ² ↦ τ²(1 + (k^{p−1}−1)/p·d)` and `a ↦ a`. The image of `d` is computed
/// from its monomial, not assumed.
pub fn psi(k: Elem, x: &BkuElement) -> Result<BkuElement, KoneError> {
    let ring = x.ring();
    let p = x.prime();
    let images = AdamsImages::new(ring, k)?;
    let (s, w) = x.bidegree();
    let Some((i, j)) = canonical_exponents(p, s, w) else {
        return Ok(x.clone());
    };
    match (shape(p, s, w), x.coeffs()) {
        (_, Coeffs::Zero) => Ok(x.clone()),
        (Shape::Even, Coeffs::Even { unit, d }) => {
            let mu = images.monomial(0, i, j)?;
            let psi_d = images.monomial(2, p as i64 - 1, -1)?;
            let coeff = BkuElement::integer(ring, unit)?.add(&psi_d.scale(d)?)?;
            coeff.mul(&mu)
        }
        (Shape::Odd, Coeffs::Odd(c)) => images.monomial(1, i, j)?.scale(c),
        _ => unreachable!("coefficients match the shape"),
    }
}
