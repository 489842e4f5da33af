use serde::{Deserialize, Serialize};

use super::FgError;

/// Ring element. Over the p-adic ring this is a residue in `[0, p^N)`.
pub type Elem = i128;

/// Default p-adic precision.
pub const DEFAULT_PRECISION: u32 = 12;

/// Coefficient ring: the integers, or the p-adic integers truncated at `p^N`.
///
/// p-adic values are stored as residues mod `p^N`. A residue of zero is read
/// as an exact zero, so a free summand behaves like a copy of the p-adic
/// integers rather than `Z/p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CoeffRing {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Zp")]
    Padic { p: u32, precision: u32 },
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffRing {
    pub fn padic(p: u32, precision: u32) -> Result<Self, FgError> {
        let ring = CoeffRing::Padic { p, precision };
        ring.validate()?;
        Ok(ring)
    }

    pub fn validate(&self) -> Result<(), FgError> {
        if let CoeffRing::Padic { p, precision } = *self {
            if !is_prime(p as u64) {
                return Err(FgError::InvalidRing(format!("{p} is not prime")));
            }
            if precision == 0 {
                return Err(FgError::InvalidRing("precision must be positive".into()));
            }
            let bits = (p as f64).log2() * precision as f64;
            if bits > 60.0 {
                return Err(FgError::InvalidRing(format!(
                    "{p}^{precision} does not fit the 60-bit residue budget"
                )));
            }
        }
        Ok(())
    }

    pub fn prime(&self) -> Option<u32> {
        match *self {
            CoeffRing::Integers => None,
            CoeffRing::Padic { p, .. } => Some(p),
        }
    }

    pub fn precision(&self) -> Option<u32> {
        match *self {
            CoeffRing::Integers => None,
            CoeffRing::Padic { precision, .. } => Some(precision),
        }
    }

    /// `p^N` for the p-adic ring.
    pub fn modulus(&self) -> Option<Elem> {
        match *self {
            CoeffRing::Integers => None,
            CoeffRing::Padic { p, precision } => Some((p as Elem).pow(precision)),
        }
    }

    fn precision_error(&self) -> FgError {
        match *self {
            CoeffRing::Padic { p, precision } => FgError::PrecisionExhausted { p, precision },
            CoeffRing::Integers => FgError::Overflow,
        }
    }

    /// Bring an integer into the ring. A nonzero integer that vanishes mod
    /// `p^N` cannot be told apart from zero, so it is refused.
    pub fn ingest(&self, v: Elem) -> Result<Elem, FgError> {
        match self.modulus() {
            None => Ok(v),
            Some(q) => {
                let r = v.rem_euclid(q);
                if r == 0 && v != 0 {
                    Err(self.precision_error())
                } else {
                    Ok(r)
                }
            }
        }
    }

    /// Reduce without the precision check; used on intermediate results.
    pub fn reduce(&self, v: Elem) -> Elem {
        match self.modulus() {
            None => v,
            Some(q) => v.rem_euclid(q),
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Result<Elem, FgError> {
        a.checked_add(b).map(|v| self.reduce(v)).ok_or(FgError::Overflow)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Result<Elem, FgError> {
        a.checked_sub(b).map(|v| self.reduce(v)).ok_or(FgError::Overflow)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.reduce(-a)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Result<Elem, FgError> {
        a.checked_mul(b).map(|v| self.reduce(v)).ok_or(FgError::Overflow)
    }

    /// p-adic valuation of a nonzero element, `None` for zero.
    pub fn valuation(&self, a: Elem) -> Option<u32> {
        let p = self.prime()? as Elem;
        if a == 0 {
            return None;
        }
        let mut a = a;
        let mut v = 0;
        while a % p == 0 {
            a /= p;
            v += 1;
        }
        Some(v)
    }

    /// Euclidean norm used to pick pivots: `|a|` over Z, the valuation over Zp.
    pub fn norm(&self, a: Elem) -> u128 {
        match self {
            CoeffRing::Integers => a.unsigned_abs(),
            CoeffRing::Padic { .. } => self.valuation(a).map_or(u128::MAX, |v| v as u128),
        }
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        match self {
            CoeffRing::Integers => a == 1 || a == -1,
            CoeffRing::Padic { .. } => self.valuation(a) == Some(0),
        }
    }

    /// Does `a` divide `b`?
    pub fn divides(&self, a: Elem, b: Elem) -> bool {
        if b == 0 {
            return true;
        }
        if a == 0 {
            return false;
        }
        match self {
            CoeffRing::Integers => b % a == 0,
            CoeffRing::Padic { .. } => self.valuation(a) <= self.valuation(b),
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self, u: Elem) -> Result<Elem, FgError> {
        match self.modulus() {
            None => {
                if u == 1 || u == -1 {
                    Ok(u)
                } else {
                    Err(FgError::NotAUnit(u))
                }
            }
            Some(q) => {
                if !self.is_unit(u) {
                    return Err(FgError::NotAUnit(u));
                }
                let (g, x, _) = ext_gcd(u.rem_euclid(q), q);
                debug_assert_eq!(g, 1);
                Ok(x.rem_euclid(q))
            }
        }
    }

    /// `q` with `q * a == b`, assuming `a | b`.
    pub fn div_exact(&self, b: Elem, a: Elem) -> Result<Elem, FgError> {
        if b == 0 {
            return Ok(0);
        }
        if !self.divides(a, b) {
            return Err(FgError::NotDivisible { a, b });
        }
        match *self {
            CoeffRing::Integers => Ok(b / a),
            CoeffRing::Padic { p, .. } => {
                let v = self.valuation(a).unwrap_or(0);
                let pv = (p as Elem).pow(v);
                let unit = a / pv;
                self.mul(b / pv, self.unit_inverse(unit)?)
            }
        }
    }

    /// Division with remainder of smaller norm, or zero remainder.
    pub fn quot_rem(&self, b: Elem, a: Elem) -> Result<(Elem, Elem), FgError> {
        if self.divides(a, b) {
            return Ok((self.div_exact(b, a)?, 0));
        }
        match self {
            CoeffRing::Integers => {
                let mut q = b.div_euclid(a);
                let mut r = b.rem_euclid(a);
                // symmetric remainder keeps entries small
                if 2 * r > a.abs() {
                    r -= a.abs();
                    q += a.signum();
                }
                Ok((q, r))
            }
            CoeffRing::Padic { .. } => Ok((0, b)),
        }
    }

    /// Split `a` as `unit * normal`, with normal positive over Z and a power
    /// of p over Zp. Zero splits as `1 * 0`.
    pub fn split_unit(&self, a: Elem) -> (Elem, Elem) {
        if a == 0 {
            return (1, 0);
        }
        match *self {
            CoeffRing::Integers => (a.signum(), a.abs()),
            CoeffRing::Padic { p, .. } => {
                let v = self.valuation(a).unwrap_or(0);
                let pv = (p as Elem).pow(v);
                (a / pv, pv)
            }
        }
    }

    /// Canonical representative of `v` in `R/(f)`.
    pub fn reduce_mod(&self, v: Elem, f: Elem) -> Elem {
        match self {
            CoeffRing::Integers => {
                if f == 0 {
                    v
                } else {
                    v.rem_euclid(f.abs())
                }
            }
            CoeffRing::Padic { .. } => {
                if f == 0 {
                    self.reduce(v)
                } else {
                    v.rem_euclid(f)
                }
            }
        }
    }

    /// Is `s * a` a multiple of `t`? Computed on valuations over Zp, so
    /// truncation cannot manufacture divisibility.
    pub fn product_divisible(&self, t: Elem, s: Elem, a: Elem) -> Result<bool, FgError> {
        match self {
            CoeffRing::Integers => {
                let prod = s.checked_mul(a).ok_or(FgError::Overflow)?;
                Ok(self.divides(t, prod))
            }
            CoeffRing::Padic { .. } => {
                if s == 0 || a == 0 {
                    return Ok(true);
                }
                if t == 0 {
                    return Ok(false);
                }
                let vs = self.valuation(s).unwrap_or(0);
                let va = self.valuation(a).unwrap_or(0);
                Ok(self.valuation(t).unwrap_or(0) <= vs + va)
            }
        }
    }

    /// Number of elements of `R/(f)`, `None` when infinite.
    pub fn cyclic_order(&self, f: Elem) -> Option<u128> {
        if f == 0 {
            None
        } else {
            Some(f.unsigned_abs())
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CoeffRing::Integers => "Z".to_string(),
            CoeffRing::Padic { p, precision } => format!("Z_{p}@{precision}"),
        }
    }
}

/// Extended gcd: `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: Elem, b: Elem) -> (Elem, Elem, Elem) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1, 0);
    let (mut y0, mut y1) = (0, 1);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padic_ingest_refuses_hidden_zero() {
        let r = CoeffRing::padic(2, 3).unwrap();
        assert_eq!(r.ingest(4).unwrap(), 4);
        assert!(matches!(r.ingest(8), Err(FgError::PrecisionExhausted { .. })));
        assert_eq!(r.ingest(-1).unwrap(), 7);
    }

    #[test]
    fn padic_division_is_exact_mod_modulus() {
        let r = CoeffRing::padic(3, 4).unwrap();
        let q = r.div_exact(18, 6).unwrap();
        assert_eq!(r.mul(q, 6).unwrap(), 18);
        assert_eq!(r.valuation(54), Some(3));
    }

    #[test]
    fn integer_quot_rem_shrinks() {
        let r = CoeffRing::Integers;
        let (q, rem) = r.quot_rem(17, 5).unwrap();
        assert_eq!(q * 5 + rem, 17);
        assert!(rem.abs() < 5);
    }
}
