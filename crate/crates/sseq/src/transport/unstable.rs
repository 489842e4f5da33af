use std::collections::BTreeMap;

use serde::Serialize;

use crate::fgab::{fiber_product, image, kernel, Elem, FgModule, Hom, Submodule};
use crate::tower::{boundaries, cycles, d_relation, page, Pos, TowerDatum};

use super::TransportError;

/// `Q` on one group: a homomorphism, or a function given by its values.
///
/// A table may be partial; applying it outside its domain is an error.
#[derive(Clone, Debug)]
pub enum LevelMap {
    Hom(Hom),
    Table { source: FgModule, target: FgModule, values: BTreeMap<Vec<Elem>, Vec<Elem>> },
}

impl LevelMap {
    /// Tabulate `f` on the given elements of `source`.
    pub fn tabulate(
        source: &FgModule,
        target: &FgModule,
        domain: impl IntoIterator<Item = Vec<Elem>>,
        f: impl Fn(&[Elem]) -> Result<Vec<Elem>, TransportError>,
    ) -> Result<Self, TransportError> {
        let mut values = BTreeMap::new();
        for x in domain {
            let x = source.reduce(&x)?;
            let y = target.reduce(&f(&x)?)?;
            values.insert(x, y);
        }
        Ok(LevelMap::Table { source: source.clone(), target: target.clone(), values })
    }

    pub fn source(&self) -> &FgModule {
        match self {
            LevelMap::Hom(h) => &h.source,
            LevelMap::Table { source, .. } => source,
        }
    }

    pub fn target(&self) -> &FgModule {
        match self {
            LevelMap::Hom(h) => &h.target,
            LevelMap::Table { target, .. } => target,
        }
    }

    pub fn apply(&self, x: &[Elem]) -> Result<Vec<Elem>, TransportError> {
        match self {
            LevelMap::Hom(h) => Ok(h.apply(x)?),
            LevelMap::Table { source, values, .. } => {
                let key = source.reduce(x)?;
                values
                    .get(&key)
                    .cloned()
                    .ok_or_else(|| TransportError::NotInPage(format!("{key:?} is outside the domain of this table")))
            }
        }
    }

    /// Elements on which the map is defined; the whole group for a homomorphism.
    pub fn domain(&self) -> Result<Vec<Vec<Elem>>, TransportError> {
        match self {
            LevelMap::Hom(h) => Ok(h.source.elements()?),
            LevelMap::Table { values, .. } => Ok(values.keys().cloned().collect()),
        }
    }

    /// Check `f(x + y) = f(x) + f(y)` over every pair of the domain.
    pub fn is_additive(&self) -> Result<bool, TransportError> {
        if matches!(self, LevelMap::Hom(_)) {
            return Ok(true);
        }
        let dom = self.domain()?;
        let (src, tgt) = (self.source(), self.target());
        for x in &dom {
            for y in &dom {
                let sum = src.add(x, y)?;
                let lhs = match self.apply(&sum) {
                    Ok(v) => v,
                    Err(_) => return Ok(false),
                };
                if !tgt.is_zero_element(&tgt.sub(&lhs, &tgt.add(&self.apply(x)?, &self.apply(y)?)?)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A map of towers that is a function on `π₀` and additive elsewhere,
/// with the basepoint-shifted maps `Q_x` on `π_{−1} F(t)`.
#[derive(Clone, Debug)]
pub struct UnstableMap {
    pub source: TowerDatum,
    pub target: TowerDatum,
    /// `Q` on `π_s F(t)`; at `s = −1` only for `t` above the bottom level.
    pub fiber: BTreeMap<Pos, LevelMap>,
    /// `Q` on `π_s X(t)` for `s ≥ 0`.
    pub stage: BTreeMap<Pos, LevelMap>,
    /// `Q_x` on `π_{−1} F(t)`, keyed by `x ∈ π₀ X(bottom)` and `t`.
    pub shifted: BTreeMap<(Vec<Elem>, i64), LevelMap>,
}

fn missing(what: &str, s: i64, t: i64) -> TransportError {
    TransportError::WindowExceeded(format!("no {what} at ({s},{t})"))
}

impl UnstableMap {
    pub fn bottom(&self) -> i64 {
        self.source.t_range.0
    }

    fn clamp(&self, t: i64) -> i64 {
        t.min(self.source.t_range.1)
    }

    pub fn q_fiber(&self, s: i64, t: i64, a: &[Elem]) -> Result<Vec<Elem>, TransportError> {
        if t > self.source.t_range.1 && self.source.stable_above {
            return Ok(self.target.fiber(s, t)?.zero_element());
        }
        self.fiber.get(&(s, t)).ok_or_else(|| missing("Q on the fiber", s, t))?.apply(a)
    }

    pub fn q_stage(&self, s: i64, t: i64, w: &[Elem]) -> Result<Vec<Elem>, TransportError> {
        let t = self.clamp(t);
        self.stage.get(&(s, t)).ok_or_else(|| missing("Q on the stage", s, t))?.apply(w)
    }

    pub fn q_shifted(&self, x: &[Elem], t: i64, y: &[Elem]) -> Result<Vec<Elem>, TransportError> {
        let bottom = self.source.stage(0, self.bottom())?;
        let key = (bottom.reduce(x)?, t);
        self.shifted.get(&key).ok_or_else(|| missing("Q_x on the fiber", -1, t))?.apply(y)
    }

    /// Image of `w ∈ π₀ X(t)` in `π₀ X(bottom)`.
    pub fn component(&self, t: i64, w: &[Elem]) -> Result<Vec<Elem>, TransportError> {
        Ok(self.source.proj_chain(0, t, self.bottom())?.apply(w)?)
    }

    /// Every failure of naturality, additivity or basepoint preservation,
    /// found by enumerating the groups.
    pub fn check(&self) -> Result<Vec<String>, TransportError> {
        let mut bad = Vec::new();
        let (src, tgt) = (&self.source, &self.target);
        let bottom = self.bottom();
        for (&(s, t), q) in &self.fiber {
            if !q.target().is_zero_element(&q.apply(&q.source().zero_element())?)? {
                bad.push(format!("Q(0) ≠ 0 on the fiber at ({s},{t})"));
            }
            if (s != 0 || t > bottom) && !q.is_additive()? {
                bad.push(format!("Q is not additive on the fiber at ({s},{t})"));
            }
            if s < 0 {
                continue;
            }
            let Some(qx) = self.stage.get(&(s, t)) else { continue };
            let (i, i2) = (src.incl_map(s, t)?, tgt.incl_map(s, t)?);
            for a in q.domain()? {
                if qx.apply(&i.apply(&a)?)? != i2.apply(&q.apply(&a)?)? {
                    bad.push(format!("Q does not commute with incl at ({s},{t}) on {a:?}"));
                }
            }
        }
        for (&(s, t), q) in &self.stage {
            if s >= 1 && !q.is_additive()? {
                bad.push(format!("Q is not additive on the stage at ({s},{t})"));
            }
            if t > bottom {
                if let Some(below) = self.stage.get(&(s, t - 1)) {
                    let (p, p2) = (src.proj_map(s, t)?, tgt.proj_map(s, t)?);
                    for w in q.domain()? {
                        if below.apply(&p.apply(&w)?)? != p2.apply(&q.apply(&w)?)? {
                            bad.push(format!("Q does not commute with proj at ({s},{t}) on {w:?}"));
                        }
                    }
                }
            }
            if t >= src.t_range.1 || !src.in_s_window(s - 1) {
                continue;
            }
            let (d, d2) = (src.bdry_map(s, t)?, tgt.bdry_map(s, t)?);
            for w in q.domain()? {
                let lhs = d2.apply(&q.apply(&w)?)?;
                let rhs = if s >= 1 {
                    self.q_fiber(s - 1, t + 1, &d.apply(&w)?)?
                } else {
                    self.q_shifted(&self.component(t, &w)?, t + 1, &d.apply(&w)?)?
                };
                if lhs != rhs {
                    bad.push(format!("Q does not commute with bdry at ({s},{t}) on {w:?}"));
                }
            }
        }
        for ((x, t), q) in &self.shifted {
            if !q.is_additive()? {
                bad.push(format!("Q_x is not additive on the fiber at (-1,{t}) for x = {x:?}"));
            }
        }
        Ok(bad)
    }
}

/// `y ∈ π_s X(t+r−2)` projecting to `incl(a)` with `bdry(y) = 0`, if any.
fn cycle_lift(tower: &TowerDatum, r: u32, s: i64, t: i64, a: &[Elem]) -> Result<Option<Vec<Elem>>, TransportError> {
    let top = t + r as i64 - 2;
    let fp = fiber_product(&tower.incl_map(s, t)?, &tower.proj_chain(s, top, t)?)?;
    let silent = kernel(&tower.bdry_map(s, top)?.compose_after(&fp.right)?)?;
    let img = Submodule::generated(&fp.left.target, &fp.left.matrix.mul(silent.gens(), &tower.ring)?)?;
    let Some(c) = img.combination(a)? else { return Ok(None) };
    let z = silent.gens().apply(&c, &tower.ring)?;
    Ok(Some(fp.right.apply(&z)?))
}

fn verify_cycle_lift(tower: &TowerDatum, r: u32, s: i64, t: i64, a: &[Elem], y: &[Elem]) -> Result<bool, TransportError> {
    let top = t + r as i64 - 2;
    let down = tower.proj_chain(s, top, t)?.apply(y)?;
    let here = tower.stage(s, t)?;
    let d = tower.bdry_map(s, top)?;
    Ok(here.is_zero_element(&here.sub(&down, &tower.incl_map(s, t)?.apply(a)?)?)?
        && d.target.is_zero_element(&d.apply(y)?)?)
}

/// `(a′, y)` with `a′ ∈ π_{s+1} F(t−r+1)`, `y ∈ π_{s+1} X(t−1)` over `incl(a′)`
/// and `bdry(y) = b`, if any.
fn boundary_lift(
    tower: &TowerDatum,
    r: u32,
    s: i64,
    t: i64,
    b: &[Elem],
) -> Result<Option<(Vec<Elem>, Vec<Elem>)>, TransportError> {
    let low = t - r as i64 + 1;
    let fp = fiber_product(&tower.incl_map(s + 1, low)?, &tower.proj_chain(s + 1, t - 1, low)?)?;
    let values = tower.bdry_map(s + 1, t - 1)?.compose_after(&fp.right)?;
    let Some(c) = image(&values)?.combination(b)? else { return Ok(None) };
    Ok(Some((fp.left.apply(&c)?, fp.right.apply(&c)?)))
}

fn verify_boundary_lift(
    tower: &TowerDatum,
    r: u32,
    s: i64,
    t: i64,
    b: &[Elem],
    (a, y): (&[Elem], &[Elem]),
) -> Result<bool, TransportError> {
    let low = t - r as i64 + 1;
    let stage = tower.stage(s + 1, low)?;
    let down = tower.proj_chain(s + 1, t - 1, low)?.apply(y)?;
    let fib = tower.fiber(s, t)?;
    Ok(stage.is_zero_element(&stage.sub(&down, &tower.incl_map(s + 1, low)?.apply(a)?)?)?
        && fib.is_zero_element(&fib.sub(&tower.bdry_map(s + 1, t - 1)?.apply(y)?, b)?)?)
}

/// Witness that `Q` of a cycle or boundary is again one.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub r: u32,
    pub position: Pos,
    pub input: Vec<Elem>,
    pub image: Vec<Elem>,
    /// Lift in the source tower witnessing membership of the input.
    pub source_lift: Vec<Elem>,
    /// Fiber element under the lift, for boundaries.
    pub source_base: Option<Vec<Elem>>,
    /// Lift in the target tower witnessing membership of the image.
    pub target_lift: Option<Vec<Elem>>,
    pub target_base: Option<Vec<Elem>>,
    /// Whether the target lift is `Q` of the source lift.
    pub transported: bool,
    /// Whether the engine's subgroup in the target contains the image.
    pub engine_agrees: bool,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.target_lift.is_some() && self.engine_agrees
    }
}

/// Transport `a ∈ Z_r^{s,t}` for `s ≥ 0`.
pub fn transport_cycles(map: &UnstableMap, r: u32, s: i64, t: i64, a: &[Elem]) -> Result<Certificate, TransportError> {
    if s < 0 {
        return Err(TransportError::DegreeMismatch("cycles are transported for s ≥ 0".into()));
    }
    let (src, tgt) = (&map.source, &map.target);
    let y = cycle_lift(src, r, s, t, a)?
        .ok_or_else(|| TransportError::NotInPage(format!("{a:?} is not in Z_{r} at ({s},{t})")))?;
    let image = map.q_fiber(s, t, a)?;
    let top = t + r as i64 - 2;
    let carried = map.q_stage(s, top, &y)?;
    let (target_lift, transported) = if verify_cycle_lift(tgt, r, s, t, &image, &carried)? {
        (Some(carried), true)
    } else {
        (cycle_lift(tgt, r, s, t, &image)?, false)
    };
    let engine_agrees = cycles(tgt, r, s, t)?.contains(&image)?;
    Ok(Certificate {
        r,
        position: (s, t),
        input: a.to_vec(),
        image,
        source_lift: y,
        source_base: None,
        target_lift,
        target_base: None,
        transported,
        engine_agrees,
    })
}

/// Transport `b ∈ B_r^{s,t}` for `s ≥ −1`.
pub fn transport_boundaries(
    map: &UnstableMap,
    r: u32,
    s: i64,
    t: i64,
    b: &[Elem],
) -> Result<Certificate, TransportError> {
    if s < -1 {
        return Err(TransportError::DegreeMismatch("boundaries are transported for s ≥ -1".into()));
    }
    let (src, tgt) = (&map.source, &map.target);
    let (a, y) = boundary_lift(src, r, s, t, b)?
        .ok_or_else(|| TransportError::NotInPage(format!("{b:?} is not in B_{r} at ({s},{t})")))?;
    let image = map.q_fiber(s, t, b)?;
    let low = t - r as i64 + 1;
    let carried = match (map.q_fiber(s + 1, low, &a), map.q_stage(s + 1, t - 1, &y)) {
        (Ok(qa), Ok(qy)) => Some((qa, qy)),
        _ => None,
    };
    let mut transported = false;
    let mut witness = None;
    if let Some((qa, qy)) = carried {
        if verify_boundary_lift(tgt, r, s, t, &image, (&qa, &qy))? {
            transported = true;
            witness = Some((qa, qy));
        }
    }
    if witness.is_none() {
        witness = boundary_lift(tgt, r, s, t, &image)?;
    }
    let engine_agrees = boundaries(tgt, r, s, t)?.contains(&image)?;
    let (target_base, target_lift) = match witness {
        Some((qa, qy)) => (Some(qa), Some(qy)),
        None => (None, None),
    };
    Ok(Certificate {
        r,
        position: (s, t),
        input: b.to_vec(),
        image,
        source_lift: y,
        source_base: Some(a),
        target_lift,
        target_base,
        transported,
        engine_agrees,
    })
}

/// `d_r(Q x)` computed in the target against the prediction from `d_r x`.
#[derive(Clone, Debug, Serialize)]
pub struct DifferentialRecord {
    pub r: u32,
    pub position: Pos,
    pub input: Vec<Elem>,
    /// A representative of `d_r x` in the source.
    pub differential: Vec<Elem>,
    /// `Q(d_r x)`, or `Q_x(d_r x)` at the bottom of column 0.
    pub predicted: Vec<Elem>,
    /// A representative of `d_r(Q x)` in the target.
    pub direct: Vec<Elem>,
    pub predicted_class: Option<Vec<Elem>>,
    pub direct_class: Vec<Elem>,
}

impl DifferentialRecord {
    pub fn holds(&self) -> bool {
        self.predicted_class.as_ref() == Some(&self.direct_class)
    }
}

/// Compare `d_r(Q x)` with `Q(d_r x)` (or `Q_x(d_r x)` at `(0, bottom)`)
/// for `x ∈ Z_{r−1}^{s,t}`, `s ≥ 0`.
pub fn transport_differential(
    map: &UnstableMap,
    r: u32,
    s: i64,
    t: i64,
    x: &[Elem],
) -> Result<DifferentialRecord, TransportError> {
    if s < 0 || r < 2 {
        return Err(TransportError::DegreeMismatch("differentials are transported for s ≥ 0 and r ≥ 2".into()));
    }
    let (src, tgt) = (&map.source, &map.target);
    if !cycles(src, r - 1, s, t)?.contains(x)? {
        return Err(TransportError::NotInPage(format!("{x:?} is not in Z_{} at ({s},{t})", r - 1)));
    }
    let land = t + r as i64 - 1;
    let dx = d_relation(src, r, s, t)?.function()?.lift(x)?;
    let predicted = if s == 0 && t == map.bottom() {
        let base = src.incl_map(0, t)?.apply(x)?;
        map.q_shifted(&base, land, &dx)?
    } else {
        map.q_fiber(s - 1, land, &dx)?
    };
    let qx = map.q_fiber(s, t, x)?;
    let direct = d_relation(tgt, r, s, t)?.function()?.lift(&qx)?;
    let target_page = page(tgt, r, s - 1, land)?;
    let direct_class = target_page.quotient.class_of(&direct)?;
    let predicted_class = target_page.quotient.class_of(&predicted).ok();
    Ok(DifferentialRecord {
        r,
        position: (s, t),
        input: x.to_vec(),
        differential: dx,
        predicted,
        direct,
        predicted_class,
        direct_class,
    })
}

/// Exhaustive check of the transport statements on page `r` over the whole
/// window of a map between towers with finite groups.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GenericReport {
    pub r: u32,
    pub cycles_checked: usize,
    pub boundaries_checked: usize,
    pub shifted_checked: usize,
    pub differentials_checked: usize,
    pub transported_witnesses: usize,
    pub failures: Vec<String>,
}

impl GenericReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn members(sub: &Submodule) -> Result<Vec<Vec<Elem>>, TransportError> {
    let mut out = Vec::new();
    for v in sub.ambient().elements()? {
        if sub.contains(&v)? {
            out.push(v);
        }
    }
    Ok(out)
}

fn skip_window<T>(r: Result<T, TransportError>) -> Result<Option<T>, TransportError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(TransportError::WindowExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn transport_generic(map: &UnstableMap, r: u32) -> Result<GenericReport, TransportError> {
    if r < 2 {
        return Err(TransportError::DegreeMismatch("pages start at r = 2".into()));
    }
    let src = &map.source;
    let mut rep = GenericReport { r, ..Default::default() };
    let (s0, s1) = src.s_range;
    let (t0, t1) = src.t_range;
    let interior = |s: i64| s - 1 >= s0 && s + 1 <= s1;
    for s in s0..=s1 {
        for t in t0..=t1 {
            if !interior(s) {
                continue;
            }
            if s >= 0 {
                if let Some(z) = skip_window(cycles(src, r, s, t).map_err(Into::into))? {
                    for a in members(&z)? {
                        let Some(c) = skip_window(transport_cycles(map, r, s, t, &a))? else { continue };
                        rep.cycles_checked += 1;
                        rep.transported_witnesses += c.transported as usize;
                        if !c.holds() {
                            rep.failures.push(format!("Q{a:?} = {:?} is not in Z_{r} at ({s},{t})", c.image));
                        }
                    }
                }
                if let Some(z) = skip_window(cycles(src, r - 1, s, t).map_err(Into::into))? {
                    for x in members(&z)? {
                        let Some(d) = skip_window(transport_differential(map, r, s, t, &x))? else { continue };
                        rep.differentials_checked += 1;
                        if !d.holds() {
                            rep.failures.push(format!(
                                "d_{r}(Q{x:?}) has class {:?}, predicted {:?} at ({s},{t})",
                                d.direct_class, d.predicted_class
                            ));
                        }
                    }
                }
            }
            if s >= -1 && (s >= 0 || t > t0) {
                if let Some(bsub) = skip_window(boundaries(src, r, s, t).map_err(Into::into))? {
                    for b in members(&bsub)? {
                        let Some(c) = skip_window(transport_boundaries(map, r, s, t, &b))? else { continue };
                        rep.boundaries_checked += 1;
                        rep.transported_witnesses += c.transported as usize;
                        if !c.holds() {
                            rep.failures.push(format!("Q{b:?} = {:?} is not in B_{r} at ({s},{t})", c.image));
                        }
                    }
                }
            }
        }
    }
    shifted_boundaries(map, r, &mut rep)?;
    Ok(rep)
}

/// `Q_x(B_{r−1}^{−1, bottom+r−1}) ⊆ B_{r−1}` for `x ∈ Z_r^{0,bottom}`.
fn shifted_boundaries(map: &UnstableMap, r: u32, rep: &mut GenericReport) -> Result<(), TransportError> {
    let (src, tgt) = (&map.source, &map.target);
    let t0 = map.bottom();
    let land = t0 + r as i64 - 1;
    if r < 3 || !src.in_s_window(-2) || land > src.t_range.1 {
        return Ok(());
    }
    let Some(z) = skip_window(cycles(src, r, 0, t0).map_err(Into::into))? else { return Ok(()) };
    let b_src = boundaries(src, r - 1, -1, land)?;
    let b_tgt = boundaries(tgt, r - 1, -1, land)?;
    let incl = src.incl_map(0, t0)?;
    for x in members(&z)? {
        let base = incl.apply(&x)?;
        for b in members(&b_src)? {
            let v = map.q_shifted(&base, land, &b)?;
            rep.shifted_checked += 1;
            if !b_tgt.contains(&v)? {
                rep.failures.push(format!("Q_x{b:?} = {v:?} is not in B_{} for x = {x:?}", r - 1));
            }
        }
    }
    Ok(())
}
