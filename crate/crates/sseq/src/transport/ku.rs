use crate::fgab::{CoeffRing, Elem};
use crate::kone::{power_total, BkuElement};

use super::system::PowerSystem;
use super::TransportError;

/// The power system of `KU_p` with `m = p`.
///
/// For `i < p` the group `Σ_i` has order prime to `p`, so `P^i` is the plain
/// `i`-th power and the Euler class `a_i` restricts to its rank, which is 1
/// for `i = 1` and 0 above. The transfer from `Σ_i × Σ_{p−i}` is
/// multiplication by `C(p,i)/p·h`. At `i = p` the power is the total power
/// operation and the Euler class is `a`.
#[derive(Clone, Copy, Debug)]
pub struct KuSystem {
    pub ring: CoeffRing,
}

impl KuSystem {
    pub fn new(p: u32, precision: u32) -> Result<Self, TransportError> {
        Ok(KuSystem { ring: CoeffRing::padic(p, precision)? })
    }

    fn p(&self) -> u32 {
        self.ring.prime().expect("p-adic ring")
    }

    fn binomial_over_p(&self, i: u32) -> Elem {
        let p = self.p() as Elem;
        let mut c: Elem = 1;
        for j in 0..i as Elem {
            c = c * (p - j) / (j + 1);
        }
        c / p
    }
}

impl PowerSystem for KuSystem {
    type Value = BkuElement;

    fn index(&self) -> u32 {
        self.p()
    }

    fn power(&self, i: u32, x: &BkuElement) -> Result<BkuElement, TransportError> {
        let p = self.p();
        Ok(match i {
            0 => BkuElement::one(self.ring)?,
            i if i < p => x.pow(i as i64)?,
            i if i == p => power_total(x)?,
            _ => return Err(TransportError::DegreeMismatch(format!("power P^{i} exceeds the index {p}"))),
        })
    }

    fn euler(&self, i: u32, n: u32, x: &BkuElement) -> Result<BkuElement, TransportError> {
        let p = self.p();
        if i == 1 {
            return Ok(x.clone());
        }
        if i < p {
            let (s, w) = x.bidegree();
            return Ok(BkuElement::zero(self.ring, s - n as i64 * (i as i64 - 1), w)?);
        }
        let mut y = x.clone();
        for _ in 0..n {
            y = y.a_mul()?;
        }
        Ok(y)
    }

    fn transfer(&self, i: u32, x: &BkuElement) -> Result<BkuElement, TransportError> {
        if i == self.p() {
            return Ok(x.clone());
        }
        Ok(x.mul(&BkuElement::h(self.ring)?)?.scale(self.binomial_over_p(i))?)
    }

    fn product(&self, x: &BkuElement, y: &BkuElement) -> Result<BkuElement, TransportError> {
        Ok(x.mul(y)?)
    }

    fn add(&self, x: &BkuElement, y: &BkuElement) -> Result<BkuElement, TransportError> {
        Ok(x.add(y)?)
    }

    fn neg(&self, x: &BkuElement) -> Result<BkuElement, TransportError> {
        Ok(x.neg())
    }

    fn is_zero(&self, x: &BkuElement) -> bool {
        x.is_zero()
    }
}
