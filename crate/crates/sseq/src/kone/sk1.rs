use serde::Serialize;

use crate::fgab::{CoeffRing, Elem, FgModule, Hom, Matrix};

use super::adams::psi;
use super::bku::{one_more_digit, shape, unit_pow, BkuElement, Shape};
use super::descent::{DescentGroup, Piece, Side};
use super::ko2::{Ko2Gen, Ko2Window, KoClass, Twist};
use super::KoneError;

pub(crate) fn ku_module(ring: CoeffRing, s: i64, w: i64) -> FgModule {
    let p = ring.prime().expect("p-adic");
    match shape(p, s, w) {
        Shape::Even => FgModule::free(ring, 2),
        Shape::Odd => FgModule::free(ring, 1),
        Shape::Empty => FgModule::zero(ring),
    }
}

pub(crate) fn ku_coords(x: &BkuElement) -> Vec<Elem> {
    let (s, w) = x.bidegree();
    match shape(x.prime(), s, w) {
        Shape::Even => {
            let (a, b) = x.even_coeffs();
            vec![a, b]
        }
        Shape::Odd => vec![x.odd_coeff()],
        Shape::Empty => vec![],
    }
}

pub(crate) fn ku_from_coords(ring: CoeffRing, s: i64, w: i64, v: &[Elem]) -> Result<BkuElement, KoneError> {
    let p = ring.prime().expect("p-adic");
    match (shape(p, s, w), v) {
        (Shape::Even, [a, b]) => BkuElement::even(ring, s, w, *a, *b),
        (Shape::Odd, [c]) => BkuElement::odd(ring, s, w, *c),
        (Shape::Empty, []) => BkuElement::zero(ring, s, w),
        _ => Err(KoneError::DegreeMismatch(format!("{} coordinates do not fit ({s},{w})", v.len()))),
    }
}

/// `π_{s,w}b(KU_p)` with its basis `{μ, d·μ}` or `{a·μ}` and `ψ^k`.
pub fn ku_piece(ring: CoeffRing, k: Elem, s: i64, w: i64) -> Result<Piece, KoneError> {
    let module = ku_module(ring, s, w);
    let basis: Vec<BkuElement> = (0..module.ngens())
        .map(|i| ku_from_coords(ring, s, w, &module.basis_element(i)))
        .collect::<Result<_, _>>()?;
    let names = basis.iter().map(|b| b.to_string()).collect();
    let cols = basis.iter().map(|b| Ok(ku_coords(&psi(k, b)?))).collect::<Result<Vec<_>, KoneError>>()?;
    let psi = Hom::new(module.clone(), module.clone(), Matrix::from_columns(module.ngens(), &cols))?;
    Ok(Piece { module, names, psi })
}

/// `k^e − 1`, refusing a nonzero value lost to the precision.
fn scalar_minus_one(ring: &CoeffRing, k: Elem, e: i64) -> Result<Elem, KoneError> {
    let v = ring.sub(unit_pow(ring, k, e)?, 1)?;
    if v == 0 && e != 0 {
        let p = ring.prime().expect("p-adic");
        return Err(KoneError::PrecisionExhausted { p, precision: ring.precision().unwrap_or(0) });
    }
    Ok(v)
}

fn scalar_piece(ring: CoeffRing, name: String, order: Elem, factor: Elem) -> Result<Piece, KoneError> {
    let module = FgModule::from_normal_factors(ring, vec![order])?;
    let psi = Hom::new(module.clone(), module.clone(), Matrix::from_rows(1, 1, vec![factor]))?;
    Ok(Piece { module, names: vec![name], psi })
}

/// `π_s KU_p` with `ψ^k(β^n) = k^n β^n`.
fn ku_plain_piece(ring: CoeffRing, k: Elem, s: i64) -> Result<Piece, KoneError> {
    if s.rem_euclid(2) != 0 {
        return Ok(Piece::zero(ring));
    }
    let n = s / 2;
    scalar_minus_one(&ring, k, n)?;
    let name = match n {
        0 => "1".to_string(),
        1 => "β".to_string(),
        _ => format!("β^{n}"),
    };
    scalar_piece(ring, name, 0, unit_pow(&ring, k, n)?)
}

/// `π_σ KO₂` with `ψ^k` scaling the free classes and fixing torsion.
fn ko_plain_piece(ring: CoeffRing, k: Elem, sigma: i64) -> Result<Piece, KoneError> {
    match KoClass::in_stem(sigma) {
        None => Ok(Piece::zero(ring)),
        Some(x) if x.is_torsion() => scalar_piece(ring, x.name(), 2, 1),
        Some(x) => {
            let e = x.ku_image().1;
            scalar_minus_one(&ring, k, e)?;
            scalar_piece(ring, x.name(), 0, unit_pow(&ring, k, e)?)
        }
    }
}

/// Does `k` topologically generate `ℤ_p^×` (up to `±1` at `p = 2`)?
pub fn validate_generator(p: u32, k: Elem) -> Result<(), KoneError> {
    if p == 2 {
        return if matches!(k.rem_euclid(8), 3 | 5) { Ok(()) } else { Err(KoneError::NotATopologicalGenerator { p, k }) };
    }
    let pe = p as Elem;
    let q = pe * pe;
    if k.rem_euclid(pe) == 0 {
        return Err(KoneError::NotAUnit(k.to_string()));
    }
    let group_order = pe * (pe - 1);
    let mut x = k.rem_euclid(q);
    let mut order = 1;
    while x != 1 {
        x = (x * k.rem_euclid(q)) % q;
        order += 1;
    }
    if order == group_order {
        Ok(())
    } else {
        Err(KoneError::NotATopologicalGenerator { p, k })
    }
}

/// `3` at `p = 2`; otherwise `2` when it is a generator, else the least one.
pub fn default_generator(p: u32) -> Elem {
    if p == 2 {
        return 3;
    }
    (2..).find(|&k| validate_generator(p, k).is_ok()).expect("a generator exists")
}

/// A fact used by the tables but supplied from outside the computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Axiom {
    pub name: String,
    pub statement: String,
}

pub(crate) fn no_z4_axiom(s: i64, w: Option<i64>) -> Axiom {
    let place = match w {
        None => format!("π_{s}"),
        Some(w) => format!("π_{{{s},{w}}}"),
    };
    Axiom {
        name: "split-extension".into(),
        statement: format!("{place} has exponent 2: the extension of the two ℤ/2 layers is split (external input, not recomputed)"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub side: Side,
    /// `p^e`, or `Z_p` for a free generator.
    pub order: String,
}

/// One group of a table.
#[derive(Clone, Debug, Serialize)]
pub struct GroupRecord {
    pub s: i64,
    pub w: i64,
    pub factors: Vec<Elem>,
    pub module: String,
    pub generators: Vec<GeneratorRecord>,
    pub axioms: Vec<Axiom>,
}

fn order_text(p: u32, f: Elem) -> String {
    if f == 0 {
        return format!("Z_{p}");
    }
    let mut e = 0;
    let mut x = f;
    while x % p as Elem == 0 {
        x /= p as Elem;
        e += 1;
    }
    format!("{p}^{e}")
}

impl GroupRecord {
    pub(crate) fn from_group(p: u32, s: i64, w: i64, g: &DescentGroup, axioms: Vec<Axiom>) -> Self {
        let factors = g.module().factors().to_vec();
        let generators = (0..g.ngens())
            .map(|i| GeneratorRecord { name: g.names[i].clone(), side: g.sides[i], order: order_text(p, factors[i]) })
            .collect();
        GroupRecord { s, w, module: g.module().describe(), factors, generators, axioms }
    }

    pub fn order(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, &f| if f == 0 { None } else { Some(acc * f as u128) })
    }
}

/// Build a descent group at precision `N` and confirm the answer does not
/// move at `N + 1`.
fn stable_descent(
    p: u32,
    precision: u32,
    build: impl Fn(CoeffRing) -> Result<(Piece, Piece), KoneError>,
) -> Result<DescentGroup, KoneError> {
    let ring = CoeffRing::padic(p, precision)?;
    let (above, here) = build(ring)?;
    let group = DescentGroup::new(above, here)?;
    let wider = one_more_digit(&ring);
    if wider.validate().is_ok() {
        let (above, here) = build(wider)?;
        let check = DescentGroup::new(above, here)?;
        if check.module().factors() != group.module().factors() {
            return Err(KoneError::PrecisionExhausted { p, precision });
        }
    }
    Ok(group)
}

/// The nonequivariant descent group `π_s S_{K(1)}` with named generators.
pub(crate) fn plain_group(p: u32, k: Elem, precision: u32, s: i64) -> Result<DescentGroup, KoneError> {
    validate_generator(p, k)?;
    let mut g = stable_descent(p, precision, |ring| {
        if p == 2 {
            Ok((ko_plain_piece(ring, k, s + 1)?, ko_plain_piece(ring, k, s)?))
        } else {
            Ok((ku_plain_piece(ring, k, s + 1)?, ku_plain_piece(ring, k, s)?))
        }
    })?;
    if p == 2 {
        for i in 0..g.ngens() {
            let class = match g.sides[i] {
                Side::Bracket => KoClass::in_stem(s + 1),
                Side::Kernel => KoClass::in_stem(s),
            };
            if g.reps[i] != [1] {
                continue;
            }
            let alias = match (g.sides[i], class) {
                (Side::Bracket, Some(KoClass::Bott(n))) => Some(format!("ρ_{n}")),
                (Side::Bracket, Some(KoClass::EtaBott(n))) => Some(format!("η_cl·ρ_{n}")),
                (Side::Bracket, Some(KoClass::Eta2Bott(n))) => Some(format!("η_cl²·ρ_{n}")),
                (Side::Bracket, Some(KoClass::TwoBott2(n))) => Some(format!("ξ_{n}")),
                (Side::Kernel, Some(KoClass::Bott(0))) => Some("1".into()),
                (Side::Kernel, Some(KoClass::EtaBott(0))) => Some("η_cl".into()),
                (Side::Kernel, Some(KoClass::Eta2Bott(0))) => Some("η_cl²".into()),
                (Side::Kernel, Some(KoClass::EtaBott(n))) => Some(format!("μ_{n}")),
                (Side::Kernel, Some(KoClass::Eta2Bott(n))) => Some(format!("η_cl·μ_{n}")),
                _ => None,
            };
            if let Some(a) = alias {
                g.rename(i, a);
            }
        }
    }
    Ok(g)
}

/// The descent group `π_{s,w}b(S_{K(1)})` with named generators.
pub(crate) fn borel_group(p: u32, k: Elem, precision: u32, s: i64, w: i64) -> Result<DescentGroup, KoneError> {
    validate_generator(p, k)?;
    if p != 2 {
        return stable_descent(p, precision, |ring| Ok((ku_piece(ring, k, s + 1, w)?, ku_piece(ring, k, s, w)?)));
    }
    let mut g = stable_descent(p, precision, |ring| {
        let window = Ko2Window::new(ring.precision().expect("p-adic"), k)?;
        Ok((window.piece(s + 1, w)?, window.piece(s, w)?))
    })?;
    let window = Ko2Window::new(precision, k)?;
    let above = window.entry(s + 1, w)?;
    let here = window.entry(s, w)?;
    for i in 0..g.ngens() {
        let Some(j) = g.reps[i].iter().position(|&c| c != 0) else { continue };
        if g.reps[i].iter().filter(|&&c| c != 0).count() != 1 || g.reps[i][j] != 1 {
            continue;
        }
        let alias = match g.sides[i] {
            Side::Bracket => match above.gens[j] {
                Ko2Gen::Product(KoClass::Bott(n), Twist::A(m)) if m == n - 1 => Some(format!("a·ρ_{{{n},{n}}}")),
                Ko2Gen::Product(KoClass::EtaBott(n), Twist::Tau(m)) if m == n => Some(format!("η_cl·ρ_{{{n},{n}}}")),
                Ko2Gen::Product(KoClass::EtaBott(n), Twist::ATau(m)) if m == n => Some(format!("a·η_cl·η_C2·ρ_{{{n},{n}}}")),
                Ko2Gen::Product(KoClass::Eta2Bott(n), Twist::EtaC2(m)) if m == n => {
                    Some(format!("η_cl²·η_C2·ρ_{{{n},{n}}}"))
                }
                _ => None,
            },
            Side::Kernel => match here.gens[j] {
                Ko2Gen::Product(KoClass::Bott(0), Twist::Tau(0)) => Some("1".into()),
                Ko2Gen::Product(KoClass::Bott(0), Twist::ATau(0)) => Some("a·η_C2".into()),
                Ko2Gen::Product(KoClass::EtaBott(0), Twist::EtaC2(0)) => Some("η_cl·η_C2".into()),
                Ko2Gen::Product(KoClass::EtaBott(n), Twist::EtaC2(m)) if m == n => Some(format!("μ_{{{n},{n}}}·η_C2")),
                _ => None,
            },
        };
        if let Some(a) = alias {
            g.rename(i, a);
        }
    }
    Ok(g)
}

/// `π_s S_{K(1)}` for `s` in the range, computed from the two-stage tower of
/// `ψ^k − 1` on `KU_p` (odd `p`) or `KO₂` (`p = 2`).
pub fn sk1_pi(p: u32, k: Elem, range: (i64, i64), precision: u32) -> Result<Vec<GroupRecord>, KoneError> {
    validate_generator(p, k)?;
    (range.0..=range.1)
        .map(|s| {
            let g = plain_group(p, k, precision, s)?;
            g.tower(s)?;
            let axioms = if p == 2 && s.rem_euclid(8) == 1 { vec![no_z4_axiom(s, None)] } else { vec![] };
            Ok(GroupRecord::from_group(p, s, 0, &g, axioms))
        })
        .collect()
}

/// `π_{s,w}b(S_{K(1)})` at the given bidegrees.
pub fn b_sk1_pi(p: u32, k: Elem, bidegrees: &[(i64, i64)], precision: u32) -> Result<Vec<GroupRecord>, KoneError> {
    validate_generator(p, k)?;
    bidegrees
        .iter()
        .map(|&(s, w)| {
            let g = borel_group(p, k, precision, s, w)?;
            g.tower(s)?;
            let split = p == 2 && s == 2 * w && w.rem_euclid(4) == 1;
            let axioms = if split { vec![no_z4_axiom(s, Some(w))] } else { vec![] };
            Ok(GroupRecord::from_group(p, s, w, &g, axioms))
        })
        .collect()
}
