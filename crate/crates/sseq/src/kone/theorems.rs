use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::fgab::{CoeffRing, Elem};
use crate::tower::TowerError;
use crate::transport::{additivity_witness, detect_power, q_apply, AdditivityWitness, Detection, KuSystem, TransportError};

use super::bku::{frobenius_defect, BkuElement};
use super::descent::DescentGroup;
use super::ko2::{Ko2Gen, Ko2Window, KoClass, Operator, Twist};
use super::power::power_total;
use super::sk1::{borel_group, ku_coords, no_z4_axiom, plain_group, validate_generator, Axiom, GroupRecord};
use super::KoneError;

fn from_transport(e: TransportError) -> KoneError {
    match e {
        TransportError::Kone(k) => k,
        TransportError::Tower(t) => t.into(),
        TransportError::Algebra(a) => a.into(),
        TransportError::DegreeMismatch(m) => KoneError::DegreeMismatch(m),
        TransportError::WindowExceeded(m) => KoneError::WindowExceeded(m),
        other => KoneError::Tower(TowerError::LimitInconsistent(other.to_string())),
    }
}

/// `P(x)` for `x = [β^n] ∈ π_{2n−1}S_{K(1)}` at an odd prime, transported
/// through the descent spectral sequence.
#[derive(Clone, Debug, Serialize)]
pub struct OddPower {
    pub p: u32,
    pub k: Elem,
    pub n: i64,
    pub precision: u32,
    pub source: GroupRecord,
    pub source_class: String,
    /// `P(β^n)` in `π_{*,*}b(KU_p)`.
    pub power: String,
    /// `a·P(β^n)`, the representative of the answer one filtration up.
    pub representative: String,
    pub target: GroupRecord,
    pub value: Vec<Elem>,
    pub value_text: String,
    pub generator: String,
    /// `c` with value `= c·generator`; `None` when the target is zero.
    pub coefficient: Option<Elem>,
    pub orders_match: bool,
    pub detection: Detection,
    /// `a·P` sampled for additivity on `π_{2n}KU_p`.
    pub additivity: AdditivityWitness,
    /// How the target monomial is written.
    pub reading: String,
}

/// Smallest `c ≥ 0` with `c·g = v` in the group's module.
fn coefficient_of(g: &DescentGroup, gen: &[Elem], v: &[Elem]) -> Result<Option<Elem>, KoneError> {
    let m = g.module();
    let Some(order) = m.order() else { return Ok(None) };
    for c in 0..order as Elem {
        if m.is_zero_element(&m.sub(&m.scale(c, gen)?, v)?)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

pub fn k1_power_odd(p: u32, k: Elem, n: i64, precision: u32) -> Result<OddPower, KoneError> {
    if p == 2 {
        return Err(KoneError::DegreeMismatch("use the p = 2 computation for the even prime".into()));
    }
    validate_generator(p, k)?;
    let ring = CoeffRing::padic(p, precision)?;
    let stem = 2 * n - 1;
    let source = plain_group(p, k, precision, stem)?;
    let source_value = source.bracket(&[1])?;
    let source_class = source.describe(&source_value);

    let beta_n = BkuElement::monomial(ring, 1, 0, n, 0)?;
    let power = power_total(&beta_n)?;
    let rep = power.a_mul()?;
    let (s, w) = (stem * p as i64, stem);
    if rep.bidegree() != (s + 1, w) {
        return Err(KoneError::DegreeMismatch(format!("a·P(β^{n}) sits in {:?}, expected ({},{w})", rep.bidegree(), s + 1)));
    }
    let target = borel_group(p, k, precision, s, w)?;
    let value = target.bracket(&ku_coords(&rep))?;
    let gen = target.bracket(&[1])?;
    let coefficient = coefficient_of(&target, &gen, &value)?;

    let (tower, limit) = target.tower(s)?;
    let detection = detect_power(&tower, s, &limit, &value).map_err(from_transport)?;

    let ku = KuSystem { ring };
    let pairs: Vec<_> = (0..8)
        .flat_map(|i| (0..8).map(move |j| (3 * i + 1, 5 * j + 2)))
        .map(|(c1, c2)| Ok((beta_n.scale(c1)?, beta_n.scale(c2)?)))
        .collect::<Result<_, KoneError>>()?;
    let additivity = additivity_witness(&ku, &pairs, |x| q_apply(&ku, 1, x)).map_err(from_transport)?;

    let source_record = GroupRecord::from_group(p, stem, 0, &source, vec![]);
    let target_record = GroupRecord::from_group(p, s, w, &target, vec![]);
    Ok(OddPower {
        p,
        k,
        n,
        precision,
        orders_match: source_record.order() == target_record.order(),
        source: source_record,
        source_class,
        power: power.to_string(),
        representative: rep.to_string(),
        target: target_record,
        value_text: target.describe(&value),
        value,
        generator: target.describe(&gen),
        coefficient,
        detection,
        additivity,
        reading: format!("u^{{-{n}}} is read as τ^{{-{}}}", 2 * n),
    })
}

/// Classes of `π_*S_{K(1)}` at `p = 2` whose power operation is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PowerClass {
    /// `ρ_n` in stem `8n − 1`
    Rho,
    /// `η_cl·ρ_n` in stem `8n`
    EtaRho,
    /// `η_cl²·ρ_n` in stem `8n + 1`
    Eta2Rho,
    /// `μ_n` in stem `8n + 1`
    Mu,
    /// `η_cl·μ_n` in stem `8n + 2`
    EtaMu,
    /// `ξ_n` in stem `8n + 3`
    Xi,
    /// `η_cl` in stem 1; `n` is ignored
    Eta,
}

impl PowerClass {
    pub const ALL: [PowerClass; 7] = [
        PowerClass::Rho,
        PowerClass::EtaRho,
        PowerClass::Eta2Rho,
        PowerClass::Mu,
        PowerClass::EtaMu,
        PowerClass::Xi,
        PowerClass::Eta,
    ];

    pub fn stem(self, n: i64) -> i64 {
        match self {
            PowerClass::Rho => 8 * n - 1,
            PowerClass::EtaRho => 8 * n,
            PowerClass::Eta2Rho | PowerClass::Mu => 8 * n + 1,
            PowerClass::EtaMu => 8 * n + 2,
            PowerClass::Xi => 8 * n + 3,
            PowerClass::Eta => 1,
        }
    }

    pub fn name(self, n: i64) -> String {
        match self {
            PowerClass::Rho => format!("ρ_{n}"),
            PowerClass::EtaRho => format!("η_cl·ρ_{n}"),
            PowerClass::Eta2Rho => format!("η_cl²·ρ_{n}"),
            PowerClass::Mu => format!("μ_{n}"),
            PowerClass::EtaMu => format!("η_cl·μ_{n}"),
            PowerClass::Xi => format!("ξ_{n}"),
            PowerClass::Eta => "η_cl".into(),
        }
    }
}

impl fmt::Display for PowerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PowerClass::Rho => "rho",
            PowerClass::EtaRho => "eta-rho",
            PowerClass::Eta2Rho => "eta2-rho",
            PowerClass::Mu => "mu",
            PowerClass::EtaMu => "eta-mu",
            PowerClass::Xi => "xi",
            PowerClass::Eta => "eta",
        };
        f.write_str(s)
    }
}

impl FromStr for PowerClass {
    type Err = KoneError;

    fn from_str(s: &str) -> Result<Self, KoneError> {
        PowerClass::ALL
            .into_iter()
            .find(|c| c.to_string() == s.replace('_', "-"))
            .ok_or_else(|| KoneError::Parse(format!("unknown class {s:?}; expected rho, eta-rho, eta2-rho, mu, eta-mu, xi or eta")))
    }
}

/// `P(x) ∈ π_{2σ,σ}b(S_{K(1)})` for a class `x ∈ π_σ` at `p = 2`, as the set
/// of values allowed by the computation (one element when determined).
#[derive(Clone, Debug, Serialize)]
pub struct TwoPower {
    pub class: PowerClass,
    pub n: i64,
    pub k: Elem,
    pub precision: u32,
    pub source: String,
    pub stem: i64,
    pub target: GroupRecord,
    pub values: Vec<Vec<Elem>>,
    pub value_texts: Vec<String>,
    pub determined: bool,
    pub steps: Vec<String>,
}

/// Apply a word of operators (rightmost first) to an element of `(s, w)`.
fn act_word(window: &Ko2Window, ops: &[Operator], (s, w): (i64, i64), x: &[Elem]) -> Result<((i64, i64), Vec<Elem>), KoneError> {
    let (mut s, mut w, mut x) = (s, w, x.to_vec());
    for &op in ops.iter().rev() {
        x = window.act(op, s, w, &x)?;
        let (ds, dw) = op.bidegree();
        s += ds;
        w += dw;
    }
    Ok(((s, w), x))
}

/// `P_KO(c·β^{4m+2j})` in `π_{*,*}b(KO₂)`, lifted from `b(KU₂)`.
fn ko_power(window: &Ko2Window, c: Elem, bott: i64) -> Result<((i64, i64), Vec<Elem>), KoneError> {
    let x = BkuElement::monomial(window.ring(), c, 0, bott, 0)?;
    let p = power_total(&x)?;
    let (s, w) = p.bidegree();
    let lifted = window
        .lift_free(s, w, &p)?
        .ok_or_else(|| KoneError::DegreeMismatch(format!("P({x}) = {p} does not lift to b(KO₂)")))?;
    Ok(((s, w), lifted))
}

/// The restriction of `P(η_cl)` to `b(KO₂)` is `η_cl·η_C2`, so multiplying
/// by it is the word `η_cl ∘ η_C2`.
const ETA_POWER: [Operator; 2] = [Operator::EtaCl, Operator::EtaC2];

pub fn k1_power_two(class: PowerClass, n: i64, k: Elem, precision: u32) -> Result<TwoPower, KoneError> {
    validate_generator(2, k)?;
    let window = Ko2Window::new(precision, k)?;
    let stem = class.stem(n);
    let (ts, tw) = (2 * stem, stem);
    let target = borel_group(2, k, precision, ts, tw)?;
    let mut steps = Vec::new();
    let mut extra_axioms = Vec::new();

    let bracket_of = |rep: Vec<Elem>| -> Result<Vec<Vec<Elem>>, KoneError> { Ok(vec![target.bracket(&rep)?]) };
    let values = match class {
        PowerClass::Rho | PowerClass::EtaRho | PowerClass::Eta2Rho | PowerClass::Xi => {
            let (deg, y) = match class {
                PowerClass::Xi => ko_power(&window, 2, 4 * n + 2)?,
                _ => ko_power(&window, 1, 4 * n)?,
            };
            let src = if class == PowerClass::Xi { format!("2β^{}", 4 * n + 2) } else { format!("β^{}", 4 * n) };
            steps.push(format!("P_KO({src}) = {} in {deg:?}", window.entry(deg.0, deg.1)?.describe(&y)));
            let (deg, y) = act_word(&window, &[Operator::A], deg, &y)?;
            steps.push(format!("a·P_KO({src}) = {} in {deg:?}", window.entry(deg.0, deg.1)?.describe(&y)));
            let eta_factors = match class {
                PowerClass::EtaRho => 1,
                PowerClass::Eta2Rho => 2,
                _ => 0,
            };
            let (mut deg, mut y) = (deg, y);
            for _ in 0..eta_factors {
                (deg, y) = act_word(&window, &ETA_POWER, deg, &y)?;
                steps.push(format!(
                    "times P(η_cl) = η_cl·η_C2 + [·]: {} in {deg:?}; the bracket part multiplies brackets to zero",
                    window.entry(deg.0, deg.1)?.describe(&y)
                ));
            }
            bracket_of(y)?
        }
        PowerClass::Mu | PowerClass::EtaMu => {
            let (deg, y) = ko_power(&window, 1, 4 * n)?;
            let eta_factors = if class == PowerClass::Mu { 1 } else { 2 };
            let (mut deg, mut y) = (deg, y);
            for _ in 0..eta_factors {
                (deg, y) = act_word(&window, &ETA_POWER, deg, &y)?;
            }
            steps.push(format!(
                "restriction to b(KO₂): (η_cl·η_C2)^{eta_factors}·P_KO(β^{}) = {} in {deg:?}",
                4 * n,
                window.entry(deg.0, deg.1)?.describe(&y)
            ));
            steps.push("the value is any preimage: the split lift plus the bracket subgroup".into());
            target.preimage_coset(&y)?
        }
        PowerClass::Eta => eta_power(&window, &target, k, precision, &mut steps, &mut extra_axioms)?,
    };
    let mut unique: Vec<Vec<Elem>> = Vec::new();
    for v in values {
        let v = target.module().reduce(&v)?;
        if !unique.contains(&v) {
            unique.push(v);
        }
    }
    let mut axioms = extra_axioms;
    if tw.rem_euclid(4) == 1 {
        axioms.push(no_z4_axiom(ts, Some(tw)));
    }
    Ok(TwoPower {
        class,
        n,
        k,
        precision,
        source: class.name(n),
        stem,
        target: GroupRecord::from_group(2, ts, tw, &target, axioms),
        value_texts: unique.iter().map(|v| target.describe(v)).collect(),
        determined: unique.len() == 1,
        values: unique,
        steps,
    })
}

/// `P(η_cl) = η_cl·η_C2 + a·ν` with `ν` an odd multiple of the generator of
/// `π_{3,2} ≅ ℤ/8`; every odd multiple is tried.
fn eta_power(
    window: &Ko2Window,
    target: &DescentGroup,
    k: Elem,
    precision: u32,
    steps: &mut Vec<String>,
    axioms: &mut Vec<Axiom>,
) -> Result<Vec<Vec<Elem>>, KoneError> {
    let unit = window.entry(0, 0)?.basis(Ko2Gen::Product(KoClass::Bott(0), Twist::Tau(0)))?;
    let (deg, kernel_part) = act_word(window, &ETA_POWER, (0, 0), &unit)?;
    if deg != (2, 1) {
        return Err(KoneError::DegreeMismatch(format!("η_cl·η_C2 landed in {deg:?}")));
    }
    let base = target.lift_fixed(&kernel_part)?;
    steps.push(format!("restriction to b(KO₂): η_cl·η_C2 = {}", target.describe(&base)));

    let nu_group = borel_group(2, k, precision, 3, 2)?;
    let norm = Ko2Gen::Norm { m: 0, i: 2 };
    let norm_vec = window.entry(4, 2)?.basis(norm)?;
    let nu_gen = nu_group.bracket(&norm_vec)?;
    let order = nu_group.module().order();
    steps.push(format!(
        "π_{{3,2}} = {} with generator [{}]",
        nu_group.module().describe(),
        norm.name()
    ));
    if order != Some(8) || nu_group.module().is_zero_element(&nu_gen)? {
        return Err(KoneError::Tower(TowerError::LimitInconsistent(format!(
            "π_{{3,2}} is {}, not ℤ/8 generated by [{}]",
            nu_group.module().describe(),
            norm.name()
        ))));
    }
    axioms.push(Axiom {
        name: "nu-image".into(),
        statement: "ν maps to an odd multiple of the generator of π_{3,2} (external input; all odd multiples are tried)".into(),
    });
    let a_norm = window.act(Operator::A, 4, 2, &norm_vec)?;
    let a_nu = target.bracket(&a_norm)?;
    steps.push(format!("a·[{}] = [a·{}] = {}", norm.name(), norm.name(), target.describe(&a_nu)));
    let mut values = Vec::new();
    for u in [1, 3, 5, 7] {
        let v = target.module().add(&base, &target.module().scale(u, &a_nu)?)?;
        values.push(v);
    }
    Ok(values)
}

/// `θ` on `π₀S_{K(1)}`, read off from `P(x) = x² − θ(x)·h`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaValue {
    pub input: String,
    pub power: String,
    /// Pairs `(x, y)` of multiples of `ε` with `P(ε) = x·1 + y·h`.
    pub solutions: Vec<(Elem, Elem)>,
    /// `θ(ε) = −y`, as a multiple of `ε`.
    pub theta: Option<Elem>,
    pub output: String,
    /// `h − 2` computed in `b(KO₂)` agrees with `a·η_C2`, and `−d` in `b(KU₂)`.
    pub h_relation: bool,
    /// The character of `e(ρ̄)` on `Σ₂` equals `2 − h` with `h` the regular character.
    pub character_check: bool,
}

pub fn theta_epsilon(k: Elem, precision: u32) -> Result<ThetaValue, KoneError> {
    validate_generator(2, k)?;
    let window = Ko2Window::new(precision, k)?;
    let ring = window.ring();
    let group = borel_group(2, k, precision, 0, 0)?;
    let plain = plain_group(2, k, precision, 0)?;
    let eps_order = plain.module().factors().first().copied();

    // P(ε) = P(η_cl)·P(ρ_0)
    let (deg, y) = ko_power(&window, 1, 0)?;
    let (deg, y) = act_word(&window, &[Operator::A], deg, &y)?;
    let (deg, y) = act_word(&window, &ETA_POWER, deg, &y)?;
    if deg != (1, 0) {
        return Err(KoneError::DegreeMismatch(format!("P(ε) representative landed in {deg:?}")));
    }
    let power = group.bracket(&y)?;
    if !group.here.module.is_zero_element(&group.restrict(&power)?)? {
        return Err(KoneError::Tower(TowerError::LimitInconsistent("P(ε) restricts nonzero to b(KO₂)".into())));
    }

    // ε ↦ [η·1] and h·x = 2x + a·η_C2·x on representatives in (1, 0).
    let eps_rep = window.entry(1, 0)?.basis(Ko2Gen::Product(KoClass::EtaBott(0), Twist::Tau(0)))?;
    let eps = group.bracket(&eps_rep)?;
    let (_, ah) = act_word(&window, &[Operator::A, Operator::EtaC2], (1, 0), &eps_rep)?;
    let entry = window.entry(1, 0)?;
    let h_eps_rep = entry.module.add(&entry.module.scale(2, &eps_rep)?, &ah)?;
    let h_eps = group.bracket(&h_eps_rep)?;

    let m = group.module();
    let mut solutions = Vec::new();
    for x in 0..2 {
        for yv in 0..2 {
            let v = m.add(&m.scale(x, &eps)?, &m.scale(yv, &h_eps)?)?;
            if m.is_zero_element(&m.sub(&v, &power)?)? {
                solutions.push((x, yv));
            }
        }
    }
    let theta = match solutions.as_slice() {
        [(_, yv)] if eps_order == Some(2) => Some((-yv).rem_euclid(2)),
        _ => None,
    };
    let output = match theta {
        Some(0) => "0".to_string(),
        Some(_) => "ε".to_string(),
        None => "undetermined".to_string(),
    };

    // h = 2 + a·η_C2 in b(KO₂), mapping to 2 − d = h in b(KU₂).
    let unit = window.entry(0, 0)?.basis(Ko2Gen::Product(KoClass::Bott(0), Twist::Tau(0)))?;
    let (_, a_eta) = act_word(&window, &[Operator::A, Operator::EtaC2], (0, 0), &unit)?;
    let e00 = window.entry(0, 0)?;
    let h_ko = e00.module.add(&e00.module.scale(2, &unit)?, &a_eta)?;
    let h_relation = window.to_ku(0, 0, &h_ko)? == BkuElement::h(ring)?
        && window.to_ku(0, 0, &a_eta)? == BkuElement::d(ring)?.neg();

    // e(ρ̄) on Σ₂ against 2 − (regular character): 0 at the identity, 2 at the transposition.
    let euler = crate::repring::bott_power_euler(2).map_err(|e| KoneError::Parse(e.to_string()))?;
    let regular = |cycle: &[usize]| if cycle.len() == 2 { 2 } else { 0 };
    let character_check = [vec![1usize, 1], vec![2]]
        .iter()
        .all(|c| euler.value_at(c) == Some(num_rational::Ratio::from_integer(2 - regular(c))));

    Ok(ThetaValue {
        input: "ε = η_cl·ρ_0".into(),
        power: group.describe(&power),
        solutions,
        theta,
        output,
        h_relation,
        character_check,
    })
}

/// `θ(c) = (c − c^p)/p` on `ℤ_p`.
pub fn theta_integer(p: u32, precision: u32, c: Elem) -> Result<Elem, KoneError> {
    let ring = CoeffRing::padic(p, precision)?;
    frobenius_defect(&ring, c)
}
