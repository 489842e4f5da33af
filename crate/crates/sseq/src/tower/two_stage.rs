use std::collections::BTreeMap;

use crate::fgab::{cokernel, kernel, Hom, Matrix};

use super::datum::{hom, TowerDatum};
use super::TowerError;

/// The two-stage tower `X(1) → X(0) = E` with fibers `F(0) = E` and
/// `F(1) = Σ^{-1}E′`, for a single map `φ: π_{s_top} E → π_{s_top} E′`.
///
/// `E_2` carries `φ` as `d_2` from `(s_top, 0)` to `(s_top − 1, 1)`, and
/// `E_3 = E_∞` is `ker φ` over `coker φ`.
pub fn two_stage(phi: &Hom, s_top: i64) -> Result<TowerDatum, TowerError> {
    two_stage_graded(&BTreeMap::from([(s_top, phi.clone())]))
}

/// Two-stage tower from a family of maps `φ_s: M_s → M′_s`.
///
/// `π_s F(0) = M_s`, `π_s F(1) = M′_{s+1}`, and `π_s X(1)` is taken to be the
/// split extension `coker φ_{s+1} ⊕ ker φ_s`. Whether the genuine extension
/// splits is not decided here.
pub fn two_stage_graded(maps: &BTreeMap<i64, Hom>) -> Result<TowerDatum, TowerError> {
    let (&lo, _) = maps.first_key_value().ok_or_else(|| TowerError::Schema("no maps given".into()))?;
    let (&hi, phi0) = maps.last_key_value().expect("nonempty");
    let ring = phi0.ring();
    if maps.values().any(|h| h.ring() != ring) {
        return Err(TowerError::Schema("maps over different rings".into()));
    }
    // two spare columns on each side so every page touching a map is computable
    let s_range = (lo - 2, hi + 2);
    let mut tower = TowerDatum::zero(ring, s_range, (0, 1));
    tower.grounded = true;
    tower.stable_above = true;
    tower.incl.clear();
    tower.proj.clear();
    tower.bdry.clear();

    let zero = crate::fgab::FgModule::zero(ring);
    for s in s_range.0..=s_range.1 {
        let phi_here = maps.get(&s);
        let phi_above = maps.get(&(s + 1));
        let source = phi_here.map_or(zero.clone(), |h| h.source.clone());
        let fib1 = phi_above.map_or(zero.clone(), |h| h.target.clone());

        let coker = phi_above.map(cokernel).transpose()?;
        let ker = phi_here.map(kernel).transpose()?;
        let coker_mod = coker.as_ref().map_or(zero.clone(), |c| c.module.clone());
        let ker_mod = ker.as_ref().map_or(zero.clone(), |k| k.module.clone());
        let sum = coker_mod.direct_sum(&ker_mod)?;

        tower.pi_f.insert((s, 0), source.clone());
        tower.pi_x.insert((s, 0), source.clone());
        tower.pi_f.insert((s, 1), fib1.clone());
        tower.pi_x.insert((s, 1), sum.sum.clone());

        tower.incl.insert((s, 0), Hom::identity(source.clone()));
        let into_sum = match &coker {
            Some(c) => sum.inc_left.compose_after(&c.projection)?,
            None => Hom::zero(fib1.clone(), sum.sum.clone()),
        };
        tower.incl.insert((s, 1), into_sum);
        let out_of_sum = match &ker {
            Some(k) => k.inclusion.compose_after(&sum.proj_right)?,
            None => Hom::zero(sum.sum.clone(), source.clone()),
        };
        tower.proj.insert((s, 1), out_of_sum);
        if s > s_range.0 {
            let below = maps.get(&s).map(|h| h.target.clone()).unwrap_or_else(|| zero.clone());
            let b = match phi_here {
                Some(h) => h.clone(),
                None => hom(&source, &below, Matrix::zeros(below.ngens(), source.ngens()))?,
            };
            tower.bdry.insert((s, 0), b);
        }
    }
    tower.check_schema()?;
    Ok(tower)
}
