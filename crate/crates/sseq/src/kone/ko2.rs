use serde::Serialize;

use crate::fgab::{CoeffRing, Elem, FgModule, Hom, Matrix, Submodule};

use super::adams::psi;
use super::bku::BkuElement;
use super::descent::Piece;
use super::sk1::{ku_coords, ku_module};
use super::KoneError;

/// Stems covered by the shipped `b(KO₂)` tables.
pub const KO2_S_WINDOW: (i64, i64) = (-20, 40);
/// Weights covered by the shipped `b(KO₂)` tables.
pub const KO2_W_WINDOW: (i64, i64) = (-8, 24);

/// Additive generator of `π_σ KO₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum KoClass {
    /// `β^{4k}` in stem `8k`
    Bott(i64),
    /// `η·β^{4k}` in stem `8k+1`
    EtaBott(i64),
    /// `η²·β^{4k}` in stem `8k+2`
    Eta2Bott(i64),
    /// `2β^{4k+2}` in stem `8k+4`
    TwoBott2(i64),
}

fn power_name(base: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

fn join(parts: &[String]) -> String {
    let parts: Vec<&str> = parts.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("·")
    }
}

impl KoClass {
    pub fn in_stem(sigma: i64) -> Option<Self> {
        let k = sigma.div_euclid(8);
        match sigma.rem_euclid(8) {
            0 => Some(KoClass::Bott(k)),
            1 => Some(KoClass::EtaBott(k)),
            2 => Some(KoClass::Eta2Bott(k)),
            4 => Some(KoClass::TwoBott2(k)),
            _ => None,
        }
    }

    pub fn stem(self) -> i64 {
        match self {
            KoClass::Bott(k) => 8 * k,
            KoClass::EtaBott(k) => 8 * k + 1,
            KoClass::Eta2Bott(k) => 8 * k + 2,
            KoClass::TwoBott2(k) => 8 * k + 4,
        }
    }

    pub fn is_torsion(self) -> bool {
        matches!(self, KoClass::EtaBott(_) | KoClass::Eta2Bott(_))
    }

    /// Image in `π_*KU₂` as `(coefficient, β-exponent)`; torsion maps to 0.
    pub fn ku_image(self) -> (Elem, i64) {
        match self {
            KoClass::Bott(k) => (1, 4 * k),
            KoClass::TwoBott2(k) => (2, 4 * k + 2),
            KoClass::EtaBott(k) | KoClass::Eta2Bott(k) => (0, 4 * k),
        }
    }

    /// Multiplication by `η`, when nonzero.
    pub fn times_eta(self) -> Option<Self> {
        match self {
            KoClass::Bott(k) => Some(KoClass::EtaBott(k)),
            KoClass::EtaBott(k) => Some(KoClass::Eta2Bott(k)),
            _ => None,
        }
    }

    pub fn name(self) -> String {
        match self {
            KoClass::Bott(k) => join(&[power_name("β", 4 * k)]),
            KoClass::EtaBott(k) => join(&["η".into(), power_name("β", 4 * k)]),
            KoClass::Eta2Bott(k) => join(&["η²".into(), power_name("β", 4 * k)]),
            KoClass::TwoBott2(k) => format!("2{}", power_name("β", 4 * k + 2)),
        }
    }
}

/// The weight-carrying factor of a generator of `π_{*,*}b(KO₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Twist {
    /// `τ^{-4m}` in `(0, 4m)`
    Tau(i64),
    /// `a·η_{C₂}·τ^{-4m}` in `(0, 4m)`
    ATau(i64),
    /// `η_{C₂}·τ^{-4m}` in `(1, 4m+1)`
    EtaC2(i64),
    /// `a·τ^{-4m-4}` in `(−1, 4m+3)`
    A(i64),
}

impl Twist {
    pub fn base(self) -> (i64, i64) {
        match self {
            Twist::Tau(m) | Twist::ATau(m) => (0, 4 * m),
            Twist::EtaC2(m) => (1, 4 * m + 1),
            Twist::A(m) => (-1, 4 * m + 3),
        }
    }

    fn of_weight(w: i64) -> Vec<Twist> {
        let m = w.div_euclid(4);
        match w.rem_euclid(4) {
            0 => vec![Twist::Tau(m), Twist::ATau(m)],
            1 => vec![Twist::EtaC2(m)],
            3 => vec![Twist::A(m)],
            _ => vec![],
        }
    }

    pub fn name(self) -> String {
        match self {
            Twist::Tau(m) => power_name("τ", -4 * m),
            Twist::ATau(m) => join(&["aη_C2".into(), power_name("τ", -4 * m)]),
            Twist::EtaC2(m) => join(&["η_C2".into(), power_name("τ", -4 * m)]),
            Twist::A(m) => join(&["a".into(), power_name("τ", -4 * m - 4)]),
        }
    }

    /// Image in `b(KU₂)` at the base bidegree, as normal-form coefficients.
    fn ku_coefficients(self) -> Vec<Elem> {
        match self {
            Twist::Tau(_) => vec![1, 0],
            Twist::ATau(_) => vec![0, -1],
            Twist::EtaC2(_) => vec![-1],
            Twist::A(_) => vec![1],
        }
    }
}

/// Additive generator of `π_{s,w}b(KO₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Ko2Gen {
    Product(KoClass, Twist),
    /// The free class in `(2i, 4m+2)`, mapping to `h·β^iτ^{-4m-2}` for even
    /// `i` and to `d·β^iτ^{-4m-2}` for odd `i`.
    Norm { m: i64, i: i64 },
}

impl Ko2Gen {
    pub fn is_torsion(self) -> bool {
        matches!(self, Ko2Gen::Product(x, _) if x.is_torsion())
    }

    pub fn bidegree(self) -> (i64, i64) {
        match self {
            Ko2Gen::Product(x, t) => {
                let (s, w) = t.base();
                (s + x.stem(), w)
            }
            Ko2Gen::Norm { m, i } => (2 * i, 4 * m + 2),
        }
    }

    pub fn name(self) -> String {
        match self {
            Ko2Gen::Product(x, t) => {
                let (xn, tn) = (x.name(), t.name());
                match (xn.as_str(), tn.as_str()) {
                    ("1", "") => "1".into(),
                    (_, "") => xn,
                    ("1", _) => tn,
                    _ => format!("{xn}·{tn}"),
                }
            }
            Ko2Gen::Norm { m, i } => {
                let k = i.div_euclid(4);
                match i.rem_euclid(4) {
                    0 => join(&[power_name("β", 4 * k), power_name("τ", -4 * (m + 1)), "τ²h".into()]),
                    2 => join(&[power_name("β", 4 * k), power_name("τ", -4 * (m + 1)), "β²τ²h".into()]),
                    1 => join(&[power_name("β", 4 * k), power_name("τ", -4 * m), "η_C2²".into()]),
                    _ => join(&[power_name("β", 4 * k + 4), power_name("τ", -4 * m - 4), "a²".into()]),
                }
            }
        }
    }
}

/// The operations acting on the tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Operator {
    /// The Euler class `a`, bidegree `(−1, −1)`.
    A,
    /// `η_cl`, bidegree `(1, 0)`.
    EtaCl,
    /// `η_{C₂}`, bidegree `(1, 1)`.
    EtaC2,
}

impl Operator {
    pub fn bidegree(self) -> (i64, i64) {
        match self {
            Operator::A => (-1, -1),
            Operator::EtaCl => (1, 0),
            Operator::EtaC2 => (1, 1),
        }
    }

    fn ku_image(self, ring: CoeffRing) -> Result<BkuElement, KoneError> {
        match self {
            Operator::A => BkuElement::a(ring),
            Operator::EtaCl => BkuElement::zero(ring, 1, 0),
            Operator::EtaC2 => BkuElement::monomial(ring, -1, 1, 1, -1),
        }
    }
}

/// Additive tables of `π_{*,*}b(KO₂)` on a window, with `ψ^k`, the
/// comparison map to `b(KU₂)` and the actions of `a`, `η_cl`, `η_{C₂}`.
///
/// Free parts are computed through the comparison map, which is injective on
/// them. Torsion is carried by `η_cl`-multiples and moved by the rules of a
/// module over `π_*KO₂`, plus one relation invisible to `KU`:
/// `a·β²τ²h·τ^{-4m-4} = η²·η_{C₂}·τ^{-4m}`.
#[derive(Clone, Debug)]
pub struct Ko2Window {
    ring: CoeffRing,
    k: Elem,
}

/// One bidegree of the window.
#[derive(Clone, Debug)]
pub struct Ko2Entry {
    pub s: i64,
    pub w: i64,
    pub gens: Vec<Ko2Gen>,
    pub module: FgModule,
}

impl Ko2Entry {
    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name()).collect()
    }

    pub fn index_of(&self, g: Ko2Gen) -> Option<usize> {
        self.gens.iter().position(|&h| h == g)
    }

    pub fn basis(&self, g: Ko2Gen) -> Result<Vec<Elem>, KoneError> {
        let i = self
            .index_of(g)
            .ok_or_else(|| KoneError::DegreeMismatch(format!("{} is not a generator in ({},{})", g.name(), self.s, self.w)))?;
        Ok(self.module.basis_element(i))
    }

    pub fn describe(&self, v: &[Elem]) -> String {
        super::descent::combination(&self.names(), v, &self.module)
    }
}

impl Ko2Window {
    pub fn new(precision: u32, k: Elem) -> Result<Self, KoneError> {
        let ring = CoeffRing::padic(2, precision)?;
        if !matches!(k.rem_euclid(8), 3 | 5) {
            return Err(KoneError::NotATopologicalGenerator { p: 2, k });
        }
        Ok(Ko2Window { ring, k })
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn k(&self) -> Elem {
        self.k
    }

    fn check_window(&self, s: i64, w: i64) -> Result<(), KoneError> {
        let (s0, s1) = KO2_S_WINDOW;
        let (w0, w1) = KO2_W_WINDOW;
        if (s0..=s1).contains(&s) && (w0..=w1).contains(&w) {
            Ok(())
        } else {
            Err(KoneError::WindowExceeded(format!("({s},{w}) is outside the KO₂ tables s in [{s0},{s1}], w in [{w0},{w1}]")))
        }
    }

    pub fn entry(&self, s: i64, w: i64) -> Result<Ko2Entry, KoneError> {
        self.check_window(s, w)?;
        let gens: Vec<Ko2Gen> = if w.rem_euclid(4) == 2 {
            if s.rem_euclid(2) == 0 {
                vec![Ko2Gen::Norm { m: w.div_euclid(4), i: s / 2 }]
            } else {
                vec![]
            }
        } else {
            Twist::of_weight(w)
                .into_iter()
                .filter_map(|t| KoClass::in_stem(s - t.base().0).map(|x| Ko2Gen::Product(x, t)))
                .collect()
        };
        let factors = gens.iter().map(|g| if g.is_torsion() { 2 } else { 0 }).collect();
        let module = FgModule::from_normal_factors(self.ring, factors)?;
        Ok(Ko2Entry { s, w, gens, module })
    }

    /// Image of a generator in `b(KU₂)`.
    pub fn ku_image(&self, g: Ko2Gen) -> Result<BkuElement, KoneError> {
        let ring = self.ring;
        let (s, w) = g.bidegree();
        match g {
            Ko2Gen::Norm { i, .. } => {
                let (c0, c1) = if i.rem_euclid(2) == 0 { (2, -1) } else { (0, 1) };
                BkuElement::even(ring, s, w, c0, c1)
            }
            Ko2Gen::Product(x, _) if x.is_torsion() => BkuElement::zero(ring, s, w),
            Ko2Gen::Product(x, t) => {
                let (c, e) = x.ku_image();
                let (ts, tw) = t.base();
                let twist = match t.ku_coefficients().as_slice() {
                    [c0, c1] => BkuElement::even(ring, ts, tw, *c0, *c1)?,
                    [c] => BkuElement::odd(ring, ts, tw, *c)?,
                    _ => unreachable!(),
                };
                BkuElement::monomial(ring, c, 0, e, 0)?.mul(&twist)
            }
        }
    }

    /// The comparison map `π_{s,w}b(KO₂) → π_{s,w}b(KU₂)`.
    pub fn comparison(&self, s: i64, w: i64) -> Result<Hom, KoneError> {
        let entry = self.entry(s, w)?;
        let target = ku_module(self.ring, s, w);
        let cols = entry.gens.iter().map(|&g| Ok(ku_coords(&self.ku_image(g)?))).collect::<Result<Vec<_>, KoneError>>()?;
        Ok(Hom::new(entry.module, target.clone(), Matrix::from_columns(target.ngens(), &cols))?)
    }

    /// Coordinates on the free generators of `(s, w)` of a `b(KU₂)` element
    /// in the image of the free part; `None` when it is not in that image.
    pub fn lift_free(&self, s: i64, w: i64, x: &BkuElement) -> Result<Option<Vec<Elem>>, KoneError> {
        let entry = self.entry(s, w)?;
        if x.bidegree() != (s, w) {
            return Err(KoneError::DegreeMismatch(format!("lifting an element of {:?} into ({s},{w})", x.bidegree())));
        }
        let free: Vec<usize> = (0..entry.gens.len()).filter(|&i| !entry.gens[i].is_torsion()).collect();
        let target = ku_module(self.ring, s, w);
        let cols = free.iter().map(|&i| Ok(ku_coords(&self.ku_image(entry.gens[i])?))).collect::<Result<Vec<_>, KoneError>>()?;
        let span = Submodule::generated(&target, &Matrix::from_columns(target.ngens(), &cols))?;
        let Some(coeffs) = span.combination(&ku_coords(x))? else {
            return Ok(None);
        };
        let mut v = entry.module.zero_element();
        for (slot, c) in free.iter().zip(coeffs) {
            v[*slot] = c;
        }
        Ok(Some(entry.module.reduce(&v)?))
    }

    fn lift_free_or_fail(&self, s: i64, w: i64, x: &BkuElement) -> Result<Vec<Elem>, KoneError> {
        self.lift_free(s, w, x)?.ok_or_else(|| {
            KoneError::Algebra(crate::fgab::FgError::IllDefined(format!("{x} is not in the image of the KO₂ tables at ({s},{w})")))
        })
    }

    /// `ψ^k` on `π_{s,w}b(KO₂)`: conjugated from `b(KU₂)` on free
    /// generators, the identity on torsion.
    pub fn psi(&self, s: i64, w: i64) -> Result<Hom, KoneError> {
        let entry = self.entry(s, w)?;
        let mut cols = Vec::new();
        for (j, &g) in entry.gens.iter().enumerate() {
            if g.is_torsion() {
                cols.push(entry.module.basis_element(j));
            } else {
                let image = psi(self.k, &self.ku_image(g)?)?;
                cols.push(self.lift_free_or_fail(s, w, &image)?);
            }
        }
        Ok(Hom::new(entry.module.clone(), entry.module, Matrix::from_columns(cols.first().map_or(0, Vec::len), &cols))?)
    }

    pub fn piece(&self, s: i64, w: i64) -> Result<Piece, KoneError> {
        let entry = self.entry(s, w)?;
        Ok(Piece { names: entry.names(), psi: self.psi(s, w)?, module: entry.module })
    }

    /// Twist-level products `op·(1·t) = Σ c·(1·t′)`, read through `KU`.
    fn twist_product(&self, op: Operator, t: Twist) -> Result<Vec<(Elem, Twist)>, KoneError> {
        let g = Ko2Gen::Product(KoClass::Bott(0), t);
        let (s, w) = g.bidegree();
        let (ds, dw) = op.bidegree();
        let target = self.entry(s + ds, w + dw)?;
        let image = op.ku_image(self.ring)?.mul(&self.ku_image(g)?)?;
        let v = self.lift_free_or_fail(s + ds, w + dw, &image)?;
        Ok(target
            .gens
            .iter()
            .zip(v)
            .filter_map(|(h, c)| match h {
                Ko2Gen::Product(KoClass::Bott(0), t2) if c != 0 => Some((c, *t2)),
                _ => None,
            })
            .collect())
    }

    /// `op` applied to one generator, as coordinates in the target entry.
    pub fn act_gen(&self, op: Operator, g: Ko2Gen) -> Result<Vec<Elem>, KoneError> {
        let (s, w) = g.bidegree();
        let (ds, dw) = op.bidegree();
        let (ts, tw) = (s + ds, w + dw);
        let target = self.entry(ts, tw)?;
        let mut v = target.module.zero_element();
        if !g.is_torsion() {
            let image = op.ku_image(self.ring)?.mul(&self.ku_image(g)?)?;
            v = self.lift_free_or_fail(ts, tw, &image)?;
        }
        let mut add_torsion = |h: Ko2Gen, c: Elem| -> Result<(), KoneError> {
            if c.rem_euclid(2) == 0 {
                return Ok(());
            }
            let i = target
                .index_of(h)
                .ok_or_else(|| KoneError::WindowExceeded(format!("{} missing from ({ts},{tw})", h.name())))?;
            v[i] += 1;
            Ok(())
        };
        match (op, g) {
            (Operator::EtaCl, Ko2Gen::Product(x, t)) => {
                if let Some(y) = x.times_eta().filter(|y| y.is_torsion()) {
                    add_torsion(Ko2Gen::Product(y, t), 1)?;
                }
            }
            (_, Ko2Gen::Product(x, t)) if x.is_torsion() => {
                for (c, t2) in self.twist_product(op, t)? {
                    add_torsion(Ko2Gen::Product(x, t2), c)?;
                }
            }
            (Operator::A, Ko2Gen::Norm { m, i }) if i.rem_euclid(4) == 2 => {
                add_torsion(Ko2Gen::Product(KoClass::Eta2Bott((i - 2) / 4), Twist::EtaC2(m)), 1)?;
            }
            _ => {}
        }
        Ok(target.module.reduce(&v)?)
    }

    /// `op` applied to an element of `(s, w)`.
    pub fn act(&self, op: Operator, s: i64, w: i64, x: &[Elem]) -> Result<Vec<Elem>, KoneError> {
        let entry = self.entry(s, w)?;
        let (ds, dw) = op.bidegree();
        let target = self.entry(s + ds, w + dw)?;
        let mut total = target.module.zero_element();
        for (&c, &g) in x.iter().zip(&entry.gens) {
            if c != 0 {
                let image = self.act_gen(op, g)?;
                total = target.module.add(&total, &target.module.scale(c, &image)?)?;
            }
        }
        Ok(total)
    }

    /// Image of an element in `b(KU₂)`.
    pub fn to_ku(&self, s: i64, w: i64, x: &[Elem]) -> Result<BkuElement, KoneError> {
        let v = self.comparison(s, w)?.apply(x)?;
        super::sk1::ku_from_coords(self.ring, s, w, &v)
    }
}
