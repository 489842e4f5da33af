use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fgab::{CoeffRing, Elem};

use super::KoneError;

/// Which normal form a bidegree carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `(c₀ + c₁·d)·β^i τ^{2j}`
    Even,
    /// `c·a·β^i τ^{2j}`
    Odd,
    Empty,
}

/// Coefficients in the normal form of a bidegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coeffs {
    Zero,
    Even { unit: Elem, d: Elem },
    Odd(Elem),
}

/// Homogeneous element of `ℤ_p[β^{±1}, τ^{±2}, a]/(a·h)` with `h = p − d`
/// and `d = a²β^{p−1}τ^{-2}`.
///
/// Bidegrees: `|β| = (2, 0)`, `|τ²| = (0, −2)`, `|a| = (−(p−1), −1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BkuElement {
    ring: CoeffRing,
    s: i64,
    w: i64,
    coeffs: Coeffs,
}

pub fn shape(p: u32, s: i64, w: i64) -> Shape {
    let p = p as i64;
    if w.rem_euclid(2) == 0 {
        if s.rem_euclid(2) == 0 {
            Shape::Even
        } else {
            Shape::Empty
        }
    } else if (s + p - 1).rem_euclid(2) == 0 {
        Shape::Odd
    } else {
        Shape::Empty
    }
}

/// Exponents `(i, j)` of the canonical monomial `β^i τ^{2j}` (times `a` for
/// odd shapes) at a bidegree.
pub fn canonical_exponents(p: u32, s: i64, w: i64) -> Option<(i64, i64)> {
    match shape(p, s, w) {
        Shape::Even => Some((s / 2, -w / 2)),
        Shape::Odd => Some(((s + p as i64 - 1) / 2, -(w + 1) / 2)),
        Shape::Empty => None,
    }
}

fn signed(ring: &CoeffRing, v: Elem) -> Elem {
    match ring.modulus() {
        Some(q) if v > q / 2 => v - q,
        _ => v,
    }
}

/// `x^e` in the ring, `e ≥ 0`.
pub(crate) fn pow_elem(ring: &CoeffRing, x: Elem, e: u64) -> Result<Elem, KoneError> {
    let mut result = ring.reduce(1);
    let mut base = ring.reduce(x);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = ring.mul(result, base)?;
        }
        base = ring.mul(base, base)?;
        e >>= 1;
    }
    Ok(result)
}

/// `k^e` for a unit `k` and any integer `e`.
pub(crate) fn unit_pow(ring: &CoeffRing, k: Elem, e: i64) -> Result<Elem, KoneError> {
    let k = ring.reduce(k);
    if !ring.is_unit(k) {
        return Err(KoneError::NotAUnit(k.to_string()));
    }
    let v = pow_elem(ring, k, e.unsigned_abs())?;
    if e < 0 {
        Ok(ring.unit_inverse(v)?)
    } else {
        Ok(v)
    }
}

/// The same prime at one more digit, for quantities divided by `p`.
pub(crate) fn one_more_digit(ring: &CoeffRing) -> CoeffRing {
    match *ring {
        CoeffRing::Padic { p, precision } => CoeffRing::Padic { p, precision: precision + 1 },
        CoeffRing::Integers => CoeffRing::Integers,
    }
}

/// `(x − x^p)/p`, exact to the ring's precision.
pub(crate) fn frobenius_defect(ring: &CoeffRing, x: Elem) -> Result<Elem, KoneError> {
    let p = prime_of(ring)? as Elem;
    let wide = one_more_digit(ring);
    let xp = pow_elem(&wide, x, p as u64)?;
    let diff = wide.sub(wide.reduce(x), xp)?;
    Ok(ring.reduce(diff / p))
}

pub(crate) fn prime_of(ring: &CoeffRing) -> Result<u32, KoneError> {
    ring.prime().ok_or_else(|| KoneError::Algebra(crate::fgab::FgError::InvalidRing("a p-adic ring is required".into())))
}

impl BkuElement {
    pub fn zero(ring: CoeffRing, s: i64, w: i64) -> Result<Self, KoneError> {
        prime_of(&ring)?;
        Ok(BkuElement { ring, s, w, coeffs: Coeffs::Zero })
    }

    /// `(unit + d_coeff·d)·β^i τ^{2j}` at an even bidegree.
    pub fn even(ring: CoeffRing, s: i64, w: i64, unit: Elem, d_coeff: Elem) -> Result<Self, KoneError> {
        let p = prime_of(&ring)?;
        if shape(p, s, w) != Shape::Even {
            return Err(KoneError::DegreeMismatch(format!("({s},{w}) has no even normal form at p = {p}")));
        }
        Ok(BkuElement { ring, s, w, coeffs: Coeffs::Even { unit: ring.reduce(unit), d: ring.reduce(d_coeff) } }.normalized())
    }

    /// `c·a·β^i τ^{2j}` at an odd bidegree.
    pub fn odd(ring: CoeffRing, s: i64, w: i64, c: Elem) -> Result<Self, KoneError> {
        let p = prime_of(&ring)?;
        if shape(p, s, w) != Shape::Odd {
            return Err(KoneError::DegreeMismatch(format!("({s},{w}) has no odd normal form at p = {p}")));
        }
        Ok(BkuElement { ring, s, w, coeffs: Coeffs::Odd(ring.reduce(c)) }.normalized())
    }

    /// `c·a^e β^i τ^{2j}`, rewritten with `a² = d·β^{−(p−1)}τ²` and `d·a = p·a`.
    pub fn monomial(ring: CoeffRing, c: Elem, a_exp: u32, beta: i64, tau2: i64) -> Result<Self, KoneError> {
        let p = prime_of(&ring)?;
        let pe = p as i64;
        let s = 2 * beta - (pe - 1) * a_exp as i64;
        let w = -2 * tau2 - a_exp as i64;
        let m = a_exp / 2;
        if a_exp == 0 {
            Self::even(ring, s, w, c, 0)
        } else if a_exp % 2 == 0 {
            let scale = pow_elem(&ring, pe as Elem, (m - 1) as u64)?;
            Self::even(ring, s, w, 0, ring.mul(c, scale)?)
        } else {
            let scale = pow_elem(&ring, pe as Elem, m as u64)?;
            Self::odd(ring, s, w, ring.mul(c, scale)?)
        }
    }

    /// The same element read at a lower precision.
    pub fn truncated(&self, precision: u32) -> Result<Self, KoneError> {
        let p = self.prime();
        let ring = CoeffRing::padic(p, precision.min(self.ring.precision().unwrap_or(precision)))?;
        let coeffs = match self.coeffs {
            Coeffs::Zero => Coeffs::Zero,
            Coeffs::Even { unit, d } => Coeffs::Even { unit: ring.reduce(unit), d: ring.reduce(d) },
            Coeffs::Odd(c) => Coeffs::Odd(ring.reduce(c)),
        };
        Ok(BkuElement { ring, s: self.s, w: self.w, coeffs }.normalized())
    }

    pub fn one(ring: CoeffRing) -> Result<Self, KoneError> {
        Self::even(ring, 0, 0, 1, 0)
    }

    pub fn integer(ring: CoeffRing, c: Elem) -> Result<Self, KoneError> {
        Self::even(ring, 0, 0, c, 0)
    }

    pub fn beta(ring: CoeffRing) -> Result<Self, KoneError> {
        Self::monomial(ring, 1, 0, 1, 0)
    }

    pub fn tau2(ring: CoeffRing) -> Result<Self, KoneError> {
        Self::monomial(ring, 1, 0, 0, 1)
    }

    pub fn a(ring: CoeffRing) -> Result<Self, KoneError> {
        Self::monomial(ring, 1, 1, 0, 0)
    }

    pub fn d(ring: CoeffRing) -> Result<Self, KoneError> {
        Self::even(ring, 0, 0, 0, 1)
    }

    /// `h = p − d`.
    pub fn h(ring: CoeffRing) -> Result<Self, KoneError> {
        let p = prime_of(&ring)?;
        Self::even(ring, 0, 0, p as Elem, -1)
    }

    fn normalized(mut self) -> Self {
        self.coeffs = match self.coeffs {
            Coeffs::Even { unit: 0, d: 0 } | Coeffs::Odd(0) => Coeffs::Zero,
            c => c,
        };
        self
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn prime(&self) -> u32 {
        self.ring.prime().expect("p-adic")
    }

    pub fn bidegree(&self) -> (i64, i64) {
        (self.s, self.w)
    }

    pub fn coeffs(&self) -> Coeffs {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == Coeffs::Zero
    }

    /// `(c₀, c₁)` with the element equal to `(c₀ + c₁·d)·μ`; zero at odd or
    /// empty bidegrees.
    pub fn even_coeffs(&self) -> (Elem, Elem) {
        match self.coeffs {
            Coeffs::Even { unit, d } => (unit, d),
            _ => (0, 0),
        }
    }

    pub fn odd_coeff(&self) -> Elem {
        match self.coeffs {
            Coeffs::Odd(c) => c,
            _ => 0,
        }
    }

    /// The same element written as `(e₀ + e₁·h)·μ`.
    pub fn h_coeffs(&self) -> Result<(Elem, Elem), KoneError> {
        let (c0, c1) = self.even_coeffs();
        let p = self.prime() as Elem;
        Ok((self.ring.add(c0, self.ring.mul(p, c1)?)?, self.ring.neg(c1)))
    }

    fn check_same(&self, other: &Self) -> Result<(), KoneError> {
        if self.ring != other.ring {
            return Err(KoneError::Algebra(crate::fgab::FgError::RingMismatch));
        }
        if self.bidegree() != other.bidegree() {
            return Err(KoneError::DegreeMismatch(format!(
                "cannot add elements of bidegrees {:?} and {:?}",
                self.bidegree(),
                other.bidegree()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, KoneError> {
        self.check_same(other)?;
        let r = &self.ring;
        let coeffs = match (self.coeffs, other.coeffs) {
            (Coeffs::Zero, c) | (c, Coeffs::Zero) => c,
            (Coeffs::Even { unit: a0, d: a1 }, Coeffs::Even { unit: b0, d: b1 }) => {
                Coeffs::Even { unit: r.add(a0, b0)?, d: r.add(a1, b1)? }
            }
            (Coeffs::Odd(a), Coeffs::Odd(b)) => Coeffs::Odd(r.add(a, b)?),
            _ => unreachable!("one bidegree has one shape"),
        };
        Ok(BkuElement { coeffs, ..self.clone() }.normalized())
    }

    pub fn neg(&self) -> Self {
        let r = &self.ring;
        let coeffs = match self.coeffs {
            Coeffs::Zero => Coeffs::Zero,
            Coeffs::Even { unit, d } => Coeffs::Even { unit: r.neg(unit), d: r.neg(d) },
            Coeffs::Odd(c) => Coeffs::Odd(r.neg(c)),
        };
        BkuElement { coeffs, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, KoneError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Result<Self, KoneError> {
        let r = &self.ring;
        let coeffs = match self.coeffs {
            Coeffs::Zero => Coeffs::Zero,
            Coeffs::Even { unit, d } => Coeffs::Even { unit: r.mul(unit, c)?, d: r.mul(d, c)? },
            Coeffs::Odd(x) => Coeffs::Odd(r.mul(x, c)?),
        };
        Ok(BkuElement { coeffs, ..self.clone() }.normalized())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, KoneError> {
        if self.ring != other.ring {
            return Err(KoneError::Algebra(crate::fgab::FgError::RingMismatch));
        }
        let r = &self.ring;
        let p = self.prime() as Elem;
        let (s, w) = (self.s + other.s, self.w + other.w);
        let coeffs = match (self.coeffs, other.coeffs) {
            (Coeffs::Zero, _) | (_, Coeffs::Zero) => Coeffs::Zero,
            (Coeffs::Even { unit: a0, d: a1 }, Coeffs::Even { unit: b0, d: b1 }) => {
                // d² = p·d
                let cross = r.add(r.add(r.mul(a0, b1)?, r.mul(a1, b0)?)?, r.mul(p, r.mul(a1, b1)?)?)?;
                Coeffs::Even { unit: r.mul(a0, b0)?, d: cross }
            }
            (Coeffs::Even { unit, d }, Coeffs::Odd(c)) | (Coeffs::Odd(c), Coeffs::Even { unit, d }) => {
                // d·a = p·a
                Coeffs::Odd(r.mul(r.add(unit, r.mul(p, d)?)?, c)?)
            }
            // a·a = d·β^{−(p−1)}τ²
            (Coeffs::Odd(x), Coeffs::Odd(y)) => Coeffs::Even { unit: 0, d: r.mul(x, y)? },
        };
        Ok(BkuElement { ring: self.ring, s, w, coeffs }.normalized())
    }

    /// Multiplication by `a`. From an even bidegree this factors through
    /// `d ↦ p`.
    pub fn a_mul(&self) -> Result<Self, KoneError> {
        self.mul(&Self::a(self.ring)?)
    }

    pub fn is_unit(&self) -> bool {
        match self.coeffs {
            Coeffs::Even { unit, d } => {
                let p = self.prime() as Elem;
                self.ring.is_unit(unit) && self.ring.add(unit, p * d).map(|v| self.ring.is_unit(v)).unwrap_or(false)
            }
            _ => false,
        }
    }

    /// Inverse of a unit: `(c₀ + c₁d)^{-1} = c₀^{-1} − c₁/(c₀(c₀ + p·c₁))·d`.
    pub fn inverse(&self) -> Result<Self, KoneError> {
        let r = &self.ring;
        let p = self.prime() as Elem;
        match self.coeffs {
            Coeffs::Even { unit, d } if self.is_unit() => {
                let inv0 = r.unit_inverse(unit)?;
                let other = r.unit_inverse(r.add(unit, r.mul(p, d)?)?)?;
                let d_coeff = r.neg(r.mul(r.mul(d, inv0)?, other)?);
                Ok(BkuElement { ring: self.ring, s: -self.s, w: -self.w, coeffs: Coeffs::Even { unit: inv0, d: d_coeff } }
                    .normalized())
            }
            _ => Err(KoneError::NotAUnit(self.to_string())),
        }
    }

    /// `x^e`; negative exponents need a unit.
    pub fn pow(&self, e: i64) -> Result<Self, KoneError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut result = Self::one(self.ring)?;
        for _ in 0..e.unsigned_abs() {
            result = result.mul(&base)?;
        }
        Ok(result)
    }

    /// Text form of the canonical monomial at this bidegree.
    pub fn monomial_name(&self) -> String {
        let p = self.prime();
        match canonical_exponents(p, self.s, self.w) {
            None => "0".into(),
            Some((i, j)) => {
                let mut parts = Vec::new();
                if shape(p, self.s, self.w) == Shape::Odd {
                    parts.push("a".to_string());
                }
                if i != 0 {
                    parts.push(if i == 1 { "β".into() } else { format!("β^{i}") });
                }
                if j != 0 {
                    parts.push(format!("τ^{}", 2 * j));
                }
                parts.join("·")
            }
        }
    }
}

fn term(c: Elem, name: &str) -> String {
    match (c, name) {
        (_, "") => c.to_string(),
        (1, _) => name.to_string(),
        (-1, _) => format!("-{name}"),
        _ => format!("{c}·{name}"),
    }
}

impl fmt::Display for BkuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = self.monomial_name();
        match self.coeffs {
            Coeffs::Zero => write!(f, "0"),
            Coeffs::Odd(c) => write!(f, "{}", term(signed(&self.ring, c), &mono)),
            Coeffs::Even { unit, d } => {
                let (u, d) = (signed(&self.ring, unit), signed(&self.ring, d));
                let inner = match (u, d) {
                    (u, 0) => return write!(f, "{}", term(u, &mono)),
                    (0, d) => term(d, "d"),
                    (u, d) if d < 0 => format!("{u} - {}", term(-d, "d")),
                    (u, d) => format!("{u} + {}", term(d, "d")),
                };
                if mono.is_empty() {
                    write!(f, "{inner}")
                } else if u == 0 {
                    write!(f, "{inner}·{mono}")
                } else {
                    write!(f, "({inner})·{mono}")
                }
            }
        }
    }
}

/// Serializable normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BkuJson {
    pub p: u32,
    pub s: i64,
    pub w: i64,
    pub monomial: String,
    /// `[c₀, c₁]` for `(c₀ + c₁·d)·μ`, or `[c]` for `c·a·μ`, as symmetric residues.
    pub coefficients: Vec<Elem>,
    /// The even form rewritten over `{1, h}`.
    pub h_form: Option<[Elem; 2]>,
    pub text: String,
}

impl BkuElement {
    pub fn to_json(&self) -> BkuJson {
        let sg = |v| signed(&self.ring, v);
        let coefficients = match (shape(self.prime(), self.s, self.w), self.coeffs) {
            (_, Coeffs::Even { unit, d }) => vec![sg(unit), sg(d)],
            (_, Coeffs::Odd(c)) => vec![sg(c)],
            (Shape::Even, Coeffs::Zero) => vec![0, 0],
            (Shape::Odd, Coeffs::Zero) => vec![0],
            (Shape::Empty, Coeffs::Zero) => vec![],
        };
        let h_form = match shape(self.prime(), self.s, self.w) {
            Shape::Even => self.h_coeffs().ok().map(|(a, b)| [sg(a), sg(b)]),
            _ => None,
        };
        BkuJson { p: self.prime(), s: self.s, w: self.w, monomial: self.monomial_name(), coefficients, h_form, text: self.to_string() }
    }
}
