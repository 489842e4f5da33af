mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{elements, members, random_tower};
use proptest::prelude::*;
use sseq::fgab::*;
use sseq::tower::*;

type Pairs = BTreeSet<(Vec<Elem>, Vec<Elem>)>;

/// `D_r^{s,t}` by brute force over `π_s F(t) × π_s X(t+r−2)`.
fn enumerate_d(tower: &TowerDatum, r: u32, s: i64, t: i64) -> Option<Pairs> {
    let top = t + r as i64 - 2;
    let incl = tower.incl_map(s, t).ok()?;
    let bd = tower.bdry_map(s, top).ok()?;
    let projs: Vec<Hom> = (t + 1..=top).rev().map(|u| tower.proj_map(s, u)).collect::<Result<_, _>>().ok()?;
    let down = |y: &[Elem]| projs.iter().fold(y.to_vec(), |v, p| p.apply(&v).unwrap());
    let mut out = BTreeSet::new();
    let ys: Vec<(Vec<Elem>, Vec<Elem>)> = elements(&bd.source).into_iter().map(|y| (down(&y), bd.apply(&y).unwrap())).collect();
    for a in elements(&incl.source) {
        let ia = incl.apply(&a).unwrap();
        for (dy, by) in &ys {
            if &ia == dy {
                out.insert((a.clone(), by.clone()));
            }
        }
    }
    Some(out)
}

/// Elements surviving to `E_{r+1}`: `incl(a)` lifts to level `t+r−1`.
fn classical_cycles(tower: &TowerDatum, r: u32, s: i64, t: i64) -> Option<BTreeSet<Vec<Elem>>> {
    let top = t + r as i64 - 1;
    let incl = tower.incl_map(s, t).ok()?;
    let projs: Vec<Hom> = (t + 1..=top).rev().map(|u| tower.proj_map(s, u)).collect::<Result<_, _>>().ok()?;
    let src = tower.stage(s, top).ok()?;
    let lifted: BTreeSet<Vec<Elem>> =
        elements(&src).into_iter().map(|y| projs.iter().fold(y, |v, p| p.apply(&v).unwrap())).collect();
    Some(elements(&incl.source).into_iter().filter(|a| lifted.contains(&incl.apply(a).unwrap())).collect())
}

/// `bdry(y)` for `y ∈ π_{s+1} X(t−1)` dying after `r−1` projections.
fn classical_boundaries(tower: &TowerDatum, r: u32, s: i64, t: i64) -> Option<BTreeSet<Vec<Elem>>> {
    let bd = tower.bdry_map(s + 1, t - 1).ok()?;
    let projs: Vec<Hom> =
        (t - r as i64 + 1..t).rev().map(|u| tower.proj_map(s + 1, u)).collect::<Result<_, _>>().ok()?;
    let mut out = BTreeSet::new();
    for y in elements(&bd.source) {
        let low = projs.iter().fold(y.clone(), |v, p| p.apply(&v).unwrap());
        if low.iter().all(|&c| c == 0) {
            out.insert(bd.apply(&y).unwrap());
        }
    }
    Some(out)
}

fn positions(tower: &TowerDatum) -> impl Iterator<Item = (i64, i64)> {
    let (s0, s1) = tower.s_range;
    let (t0, t1) = tower.t_range;
    (s0..=s1).flat_map(move |s| (t0..=t1).map(move |t| (s, t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn random_towers_are_exact(seed in any::<u64>()) {
        let tower = random_tower(seed);
        prop_assert_eq!(validate_tower(&tower), vec![]);
    }

    #[test]
    fn relation_clauses_match_enumeration(seed in any::<u64>()) {
        let tower = random_tower(seed);
        for r in 2..=4u32 {
            for (s, t) in positions(&tower) {
                let Some(d) = enumerate_d(&tower, r, s, t) else { continue };
                let far = (s - 1, t + r as i64 - 1);
                let firsts: BTreeSet<_> = d.iter().map(|(a, _)| a.clone()).collect();
                let silent: BTreeSet<_> = d.iter().filter(|(_, b)| b.iter().all(|&c| c == 0)).map(|(a, _)| a.clone()).collect();
                let from_zero: BTreeSet<_> = d.iter().filter(|(a, _)| a.iter().all(|&c| c == 0)).map(|(_, b)| b.clone()).collect();
                let seconds: BTreeSet<_> = d.iter().map(|(_, b)| b.clone()).collect();

                prop_assert_eq!(members(&cycles(&tower, r - 1, s, t).unwrap()), firsts);
                prop_assert_eq!(members(&cycles(&tower, r, s, t).unwrap()), silent);
                let Ok(b_prev) = boundaries(&tower, r - 1, far.0, far.1) else { continue };
                prop_assert_eq!(members(&b_prev), from_zero);
                prop_assert_eq!(members(&boundaries(&tower, r, far.0, far.1).unwrap()), seconds);

                let f = d_relation(&tower, r, s, t).unwrap().function().unwrap();
                for (a, b) in &d {
                    prop_assert!(f.is_value(a, b).unwrap());
                }
                // the page-level map needs E_r at the target, which may need s − 2
                let Ok(dr) = differential(&tower, r, s, t) else { continue };
                for (a, b) in &d {
                    prop_assert_eq!(dr.apply_rep(a).unwrap(), dr.target.quotient.class_of(b).unwrap());
                }
            }
        }
    }

    #[test]
    fn classical_cycles_and_boundaries(seed in any::<u64>()) {
        let tower = random_tower(seed);
        for r in 1..=5u32 {
            for (s, t) in positions(&tower) {
                if let (Some(z), Ok(engine)) = (classical_cycles(&tower, r, s, t), cycles(&tower, r, s, t)) {
                    prop_assert_eq!(members(&engine), z);
                }
                if r >= 2 {
                    if let (Some(b), Ok(engine)) = (classical_boundaries(&tower, r, s, t), boundaries(&tower, r, s, t)) {
                        prop_assert_eq!(members(&engine), b);
                    }
                }
            }
        }
    }

    #[test]
    fn differentials_square_to_zero_and_pages_recurse(seed in any::<u64>()) {
        let tower = random_tower(seed);
        for r in 2..=4u32 {
            let step = r as i64 - 1;
            for (s, t) in positions(&tower) {
                let Ok(out) = differential(&tower, r, s, t) else { continue };
                if let Ok(next) = differential(&tower, r, s - 1, t + step) {
                    prop_assert!(next.map.compose_after(&out.map).unwrap().is_zero());
                }
                let Ok(inc) = differential(&tower, r, s + 1, t - step) else { continue };
                let Ok(after) = page(&tower, r + 1, s, t) else { continue };
                // homology of E_r at (s,t), compared with E_{r+1} as subgroups of π_s F(t)
                let ker = kernel(&out.map).unwrap();
                let im = image(&inc.map).unwrap();
                let h = Quotient::new(&out.source.module().clone(), ker.gens(), im.gens()).unwrap();
                prop_assert_eq!(h.module.factors(), after.module().factors());
                let fiber = tower.fiber(s, t).unwrap();
                let lift = |sub: &Submodule| {
                    let reps = out.source.quotient.reps.mul(sub.gens(), &tower.ring).unwrap();
                    Submodule::generated(&fiber, &reps).unwrap().sum(&out.source.boundaries).unwrap()
                };
                prop_assert!(lift(&ker).same_as(&after.cycles).unwrap());
                prop_assert!(lift(&im).same_as(&after.boundaries).unwrap());
            }
        }
    }

    #[test]
    fn limit_filtration_matches_e_infinity(seed in any::<u64>()) {
        let tower = random_tower(seed);
        let (t0, t1) = tower.t_range;
        // the edge columns lack a neighbour for boundaries or differentials
        for s in tower.s_range.0 + 1..tower.s_range.1 {
            let module = tower.stage(s, t1).unwrap();
            let maps: BTreeMap<i64, Hom> = (t0..=t1).map(|t| (t, tower.proj_chain(s, t1, t).unwrap())).collect();
            let conv = einfinity(&tower, s, &LimitData { module: module.clone(), maps }).unwrap();
            let total: u128 = conv.layers.iter().map(|l| l.graded.iter().map(|&d| d as u128).product::<u128>()).product();
            prop_assert_eq!(total, module.order().unwrap());
            for x in elements(&module) {
                if let Some((t, class)) = conv.detect(&x).unwrap() {
                    prop_assert!(class.iter().any(|&c| c != 0), "detected class at t={} vanishes", t);
                }
            }
        }
    }
}

fn two_stage_case() -> impl Strategy<Value = Hom> {
    let module = prop::collection::vec(prop::sample::select(vec![2i128, 3, 4, 8, 0]), 0..=2)
        .prop_map(|f| FgModule::from_factors(CoeffRing::Integers, &f).unwrap());
    (module.clone(), module).prop_flat_map(|(m, n)| {
        let (a, b) = (m.ngens(), n.ngens());
        prop::collection::vec(-8i128..8, a * b).prop_filter_map("well defined", move |d| {
            Hom::new(m.clone(), n.clone(), Matrix::from_rows(b, a, d)).ok()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn two_stage_pages(phi in two_stage_case(), s_top in -3i64..8) {
        let tower = two_stage(&phi, s_top).unwrap();
        prop_assert_eq!(validate_tower(&tower), vec![]);
        let d2 = differential(&tower, 2, s_top, 0).unwrap();
        prop_assert_eq!(d2.source.module(), &phi.source);
        prop_assert_eq!(d2.target.module(), &phi.target);
        for j in 0..phi.source.ngens() {
            let x = phi.source.basis_element(j);
            prop_assert_eq!(d2.apply_rep(&x).unwrap(), d2.target.quotient.class_of(&phi.apply(&x).unwrap()).unwrap());
        }
        let top = page(&tower, 3, s_top, 0).unwrap();
        let bottom = page(&tower, 3, s_top - 1, 1).unwrap();
        prop_assert_eq!(top.module(), &kernel(&phi).unwrap().module);
        prop_assert_eq!(bottom.module(), &cokernel(&phi).unwrap().module);
        let inf = e_infinity_page(&tower, s_top, 0).unwrap();
        prop_assert_eq!(inf.module(), top.module());
    }
}

#[test]
fn flags_are_required_for_convergence() {
    let mut tower = random_tower(7);
    tower.grounded = false;
    let s = tower.s_range.0;
    let module = tower.stage(s, tower.t_range.1).unwrap();
    let limit = LimitData { module, maps: BTreeMap::new() };
    assert!(matches!(einfinity(&tower, s, &limit), Err(TowerError::ConvergenceUnverifiable(_))));
    assert!(matches!(page(&tower, 6, s, 0), Err(TowerError::WindowExceeded { .. })));
}

#[test]
fn mismatched_limit_is_rejected() {
    let z = CoeffRing::Integers;
    let phi = Hom::new(FgModule::cyclic(z, 4).unwrap(), FgModule::cyclic(z, 4).unwrap(), Matrix::from_rows(1, 1, vec![2])).unwrap();
    let tower = two_stage(&phi, 1).unwrap();
    // π_0 of the limit is coker = Z/2; offer Z/4 with the zero map instead
    let wrong = FgModule::cyclic(z, 4).unwrap();
    let maps = (0..=1).map(|t| (t, Hom::zero(wrong.clone(), tower.stage(0, t).unwrap()))).collect();
    let r = einfinity(&tower, 0, &LimitData { module: wrong, maps });
    assert!(matches!(r, Err(TowerError::LimitInconsistent(_))));
}

#[test]
fn broken_exactness_is_reported() {
    let z = CoeffRing::Integers;
    let phi = Hom::new(FgModule::cyclic(z, 4).unwrap(), FgModule::cyclic(z, 4).unwrap(), Matrix::from_rows(1, 1, vec![2])).unwrap();
    let mut tower = two_stage(&phi, 1).unwrap();
    let b = tower.bdry.get_mut(&(1, 0)).unwrap();
    *b = Hom::zero(b.source.clone(), b.target.clone());
    let v = validate_tower(&tower);
    assert!(!v.is_empty());
    assert!(v.iter().any(|x| x.position == (1, 0) || x.position == (0, 1)));
}

#[test]
fn tower_json_round_trip() {
    let tower = random_tower(3);
    let json = serde_json::to_string(&TowerJson::from_datum(&tower)).unwrap();
    let back = serde_json::from_str::<TowerJson>(&json).unwrap().to_datum().unwrap();
    assert_eq!(back.pi_f, tower.pi_f);
    assert_eq!(back.pi_x, tower.pi_x);
    for (p, h) in &tower.bdry {
        assert_eq!(&back.bdry[p].matrix, &h.matrix);
    }
    assert_eq!(validate_tower(&back), vec![]);
}



