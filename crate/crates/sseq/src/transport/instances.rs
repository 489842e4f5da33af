use std::collections::BTreeMap;

use crate::fgab::{Elem, FgModule, Hom, Matrix};
use crate::tower::{two_stage_graded, TowerDatum};

use super::system::{q_apply, shifted_power, PowerSystem};
use super::table::TableSystem;
use super::unstable::{LevelMap, UnstableMap};
use super::TransportError;

/// Fill every position of the window not already set with `fallback`.
fn fill(
    map: &mut UnstableMap,
    fallback: impl Fn(&FgModule, &FgModule, i64, i64) -> Result<LevelMap, TransportError>,
) -> Result<(), TransportError> {
    let (src, tgt) = (map.source.clone(), map.target.clone());
    for s in src.s_range.0..=src.s_range.1 {
        for t in src.t_range.0..=src.t_range.1 {
            if s >= 0 || t > src.t_range.0 {
                if !map.fiber.contains_key(&(s, t)) {
                    map.fiber.insert((s, t), fallback(&src.fiber(s, t)?, &tgt.fiber(s, t)?, s, t)?);
                }
            }
            if s >= 0 && !map.stage.contains_key(&(s, t)) {
                map.stage.insert((s, t), fallback(&src.stage(s, t)?, &tgt.stage(s, t)?, s, t)?);
            }
        }
    }
    Ok(())
}

fn zero_map(a: &FgModule, b: &FgModule) -> Result<LevelMap, TransportError> {
    if !a.is_zero() && !b.is_zero() {
        return Err(TransportError::DataInconsistent("a nonzero group has no assigned map".into()));
    }
    Ok(LevelMap::Hom(Hom::zero(a.clone(), b.clone())))
}

/// The unique element of `h`'s source over `v`, for injective `h` on a
/// finite group.
fn lift_injective(h: &Hom, v: &[Elem]) -> Result<Vec<Elem>, TransportError> {
    let v = h.target.reduce(v)?;
    for z in h.source.elements()? {
        if h.apply(&z)? == v {
            return Ok(z);
        }
    }
    Err(TransportError::DataInconsistent(format!("{v:?} has no preimage")))
}

/// The two-stage tower of the derivation `δ: R → R` of a table system, with
/// `Q = P^m` on `π₀`, `Q = a_m·P^m` on the positive part one level up and
/// `Q_x(y)` the looped power formula with `n = 1`.
pub fn ring_tower_instance(sys: &TableSystem) -> Result<UnstableMap, TransportError> {
    let r = sys.module.clone();
    let cols = (0..r.ngens())
        .map(|i| {
            sys.derivation(&r.basis_element(i))?
                .ok_or_else(|| TransportError::Schema("the system declares no derivation".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let delta = Hom::new(r.clone(), r.clone(), Matrix::from_columns(r.ngens(), &cols))?;
    for x in &sys.elements {
        if Some(delta.apply(x)?) != sys.derivation(x)? {
            return Err(TransportError::DataInconsistent("the derivation table is not a homomorphism".into()));
        }
    }
    let tower = two_stage_graded(&BTreeMap::from([(0, delta)]))?;
    let m = sys.index();
    let mut map = UnstableMap {
        source: tower.clone(),
        target: tower.clone(),
        fiber: BTreeMap::new(),
        stage: BTreeMap::new(),
        shifted: BTreeMap::new(),
    };
    let top_power = |x: &[Elem]| sys.power(m, &x.to_vec());
    let bottom = LevelMap::tabulate(&r, &r, sys.elements.clone(), top_power)?;
    map.fiber.insert((0, 0), bottom.clone());
    map.stage.insert((0, 0), bottom);
    let positive = sys.positive();
    map.fiber.insert((-1, 1), LevelMap::tabulate(&r, &r, positive.clone(), |y| q_apply(sys, 1, &y.to_vec()))?);
    let proj = tower.proj_map(0, 1)?;
    let upper = tower.stage(0, 1)?;
    let upper_elements = upper.elements()?;
    map.stage.insert(
        (0, 1),
        LevelMap::tabulate(&upper, &upper, upper_elements, |z| {
            let w = proj.apply(z)?;
            lift_injective(&proj, &top_power(&w)?)
        })?,
    );
    for x in &sys.elements {
        let table = LevelMap::tabulate(&r, &r, positive.clone(), |y| shifted_power(sys, 1, x, &y.to_vec()))?;
        map.shifted.insert((x.clone(), 1), table);
    }
    fill(&mut map, |a, b, _, _| zero_map(a, b))?;
    Ok(map)
}

/// `Q(w) = (c + χ([w]))·w` on `π₀` and `Q = c` elsewhere, with
/// `Q_x = (c + χ(x))`. Natural for every tower, nonadditive on `π₀` when
/// `χ` is not additive.
#[derive(Clone, Debug, Default)]
pub struct LinearModel {
    pub scalar: Elem,
    /// Values of `χ` on `π₀ X(bottom)`; missing entries are 0.
    pub chi: BTreeMap<Vec<Elem>, Elem>,
}

pub fn linear_model_instance(tower: &TowerDatum, model: &LinearModel) -> Result<UnstableMap, TransportError> {
    let t0 = tower.t_range.0;
    if !tower.in_s_window(-1) || !tower.in_s_window(0) {
        return Err(TransportError::WindowExceeded("the linear model needs columns -1 and 0".into()));
    }
    let base = tower.stage(0, t0)?;
    let chi = |x: &[Elem]| -> Result<Elem, TransportError> {
        let key = base.reduce(x)?;
        Ok(model.chi.get(&key).copied().unwrap_or(0))
    };
    if chi(&base.zero_element())? != 0 {
        return Err(TransportError::DataInconsistent("χ(0) must be 0".into()));
    }
    let mut map = UnstableMap {
        source: tower.clone(),
        target: tower.clone(),
        fiber: BTreeMap::new(),
        stage: BTreeMap::new(),
        shifted: BTreeMap::new(),
    };
    let c = model.scalar;
    let bottom_fiber = tower.fiber(0, t0)?;
    let incl = tower.incl_map(0, t0)?;
    map.fiber.insert(
        (0, t0),
        LevelMap::tabulate(&bottom_fiber, &bottom_fiber, bottom_fiber.elements()?, |a| {
            Ok(bottom_fiber.scale(c + chi(&incl.apply(a)?)?, a)?)
        })?,
    );
    for t in t0..=tower.t_range.1 {
        let stage = tower.stage(0, t)?;
        let down = tower.proj_chain(0, t, t0)?;
        map.stage.insert(
            (0, t),
            LevelMap::tabulate(&stage, &stage, stage.elements()?, |w| Ok(stage.scale(c + chi(&down.apply(w)?)?, w)?))?,
        );
        if t > t0 {
            let fib = tower.fiber(-1, t)?;
            for x in base.elements()? {
                map.shifted.insert((x.clone(), t), LevelMap::Hom(Hom::identity(fib.clone()).scale(c + chi(&x)?)?));
            }
        }
    }
    fill(&mut map, |a, _, _, _| Ok(LevelMap::Hom(Hom::identity(a.clone()).scale(c)?)))?;
    Ok(map)
}
