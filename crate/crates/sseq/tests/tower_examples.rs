use std::collections::BTreeMap;

use sseq::fgab::{CoeffRing, FgModule, Hom, Matrix};
use sseq::tower::{
    boundaries, cycles, d_relation, differential, einfinity, page, run_pages, two_stage, validate_tower, LimitData,
    TowerDatum,
};

fn z() -> CoeffRing {
    CoeffRing::Integers
}

fn m(rows: usize, cols: usize, data: &[i128]) -> Matrix {
    Matrix::from_rows(rows, cols, data.to_vec())
}

fn hom(src: &FgModule, tgt: &FgModule, rows: usize, cols: usize, data: &[i128]) -> Hom {
    Hom::new(src.clone(), tgt.clone(), m(rows, cols, data)).unwrap()
}

/// `X(1) → X(0)` is `×2` on `ℤ` in degree 0, with the cokernel `ℤ/2`
/// appearing as `π_{−1} F(1)`.
fn three_stage() -> TowerDatum {
    let zz = FgModule::free(z(), 1);
    let two = FgModule::cyclic(z(), 2).unwrap();
    let mut t = TowerDatum::zero(z(), (-1, 0), (0, 1));
    t.grounded = true;
    t.pi_f.insert((0, 0), zz.clone());
    t.pi_x.insert((0, 0), zz.clone());
    t.pi_x.insert((0, 1), zz.clone());
    t.pi_f.insert((-1, 1), two.clone());
    t.incl.clear();
    t.proj.clear();
    t.bdry.clear();
    t.incl.insert((0, 0), hom(&zz, &zz, 1, 1, &[1]));
    t.proj.insert((0, 1), hom(&zz, &zz, 1, 1, &[2]));
    t.bdry.insert((0, 0), hom(&zz, &two, 1, 1, &[1]));
    t.fill_zero_maps();
    t
}

#[test]
fn three_stage_tower() {
    let t = three_stage();
    assert_eq!(validate_tower(&t), vec![]);
    let rel = d_relation(&t, 2, 0, 0).unwrap();
    assert!(rel.contains(&[1], &[1]).unwrap());
    assert!(!rel.contains(&[1], &[0]).unwrap());
    assert!(!boundaries(&t, 1, -1, 1).unwrap().contains(&[1]).unwrap());
    let b2 = boundaries(&t, 2, -1, 1).unwrap();
    assert!(b2.contains(&[1]).unwrap());
    let f = rel.function().unwrap();
    assert!(f.is_value(&[1], &[1]).unwrap());
    let z2 = cycles(&t, 2, 0, 0).unwrap();
    assert!(!z2.contains(&[1]).unwrap());
    assert!(z2.contains(&[2]).unwrap());
}

#[test]
fn zero_tower() {
    let t = TowerDatum::zero(z(), (0, 2), (0, 2));
    assert_eq!(validate_tower(&t), vec![]);
    for r in 1..=3 {
        assert!(cycles(&t, r, 1, 0).unwrap().ambient().is_zero());
    }
    assert!(run_pages(&t, 4).unwrap().iter().all(|e| e.factors.is_empty()));
}

#[test]
fn forced_injection_is_reported() {
    let zz = FgModule::free(z(), 1);
    let mut t = TowerDatum::zero(z(), (0, 0), (0, 0));
    t.grounded = true;
    t.pi_f.insert((0, 0), zz.clone());
    t.pi_x.insert((0, 0), zz.clone());
    t.incl.clear();
    t.fill_zero_maps();
    assert_eq!(validate_tower(&t).len(), 1);
}

#[test]
fn two_stage_times_three() {
    let zz = FgModule::free(z(), 1);
    let t = two_stage(&hom(&zz, &zz, 1, 1, &[3]), 1).unwrap();
    assert_eq!(validate_tower(&t), vec![]);
    // E_2^{0,1} = π_0 F(1) = ℤ
    assert!(cycles(&t, 1, 0, 1).unwrap().contains(&[1]).unwrap());
    assert_eq!(page(&t, 2, 0, 1).unwrap().module().factors(), &[0]);
    let d2 = differential(&t, 2, 1, 0).unwrap();
    assert_eq!(d2.apply_rep(&[1]).unwrap(), vec![3]);
    assert_eq!(page(&t, 3, 0, 1).unwrap().module().factors(), &[3]);
    assert!(differential(&t, 3, 1, 0).unwrap().map.is_zero());

    // π_0 lim = ℤ/3, all in filtration 1
    let three = FgModule::cyclic(z(), 3).unwrap();
    let x01 = t.stage(0, 1).unwrap();
    let to_top = Hom::new(three.clone(), x01.clone(), Matrix::from_columns(x01.ngens(), &[t.incl_map(0, 1).unwrap().apply(&[1]).unwrap()])).unwrap();
    let x00 = t.stage(0, 0).unwrap();
    let limit = LimitData { module: three.clone(), maps: BTreeMap::from([(0, Hom::zero(three.clone(), x00)), (1, to_top)]) };
    let conv = einfinity(&t, 0, &limit).unwrap();
    assert_eq!(conv.detect(&[1]).unwrap().map(|(level, _)| level), Some(1));
}

#[test]
fn two_stage_identity_and_zero() {
    let zz = FgModule::free(z(), 1);
    let id = two_stage(&hom(&zz, &zz, 1, 1, &[1]), 0).unwrap();
    assert!(page(&id, 3, 0, 0).unwrap().module().is_zero());
    assert!(page(&id, 3, -1, 1).unwrap().module().is_zero());
    let zero = two_stage(&hom(&zz, &zz, 1, 1, &[0]), 0).unwrap();
    assert_eq!(page(&zero, 2, 0, 0).unwrap().module().factors(), &[0]);
    assert_eq!(page(&zero, 2, -1, 1).unwrap().module().factors(), &[0]);
}

#[test]
fn two_stage_padic_unit_minus_one() {
    // ×(2² − 1) on ℤ_3: kernel 0, cokernel ℤ/3
    let ring = CoeffRing::padic(3, 12).unwrap();
    let zp = FgModule::free(ring, 1);
    let t = two_stage(&Hom::new(zp.clone(), zp, m(1, 1, &[3])).unwrap(), 0).unwrap();
    assert!(page(&t, 3, 0, 0).unwrap().module().is_zero());
    assert_eq!(page(&t, 3, -1, 1).unwrap().module().factors(), &[3]);
}

#[test]
fn vanishing_fibers_give_vanishing_pages() {
    let zz = FgModule::free(z(), 1);
    let mut t = TowerDatum::zero(z(), (0, 2), (0, 2));
    for s in 0..=2 {
        for tt in 0..=2 {
            t.pi_x.insert((s, tt), zz.clone());
        }
    }
    t.incl.clear();
    t.proj.clear();
    t.bdry.clear();
    for s in 0..=2 {
        for tt in 1..=2 {
            t.proj.insert((s, tt), hom(&zz, &zz, 1, 1, &[1]));
        }
    }
    t.fill_zero_maps();
    assert_eq!(validate_tower(&t), vec![]);
    assert!(run_pages(&t, 4).unwrap().iter().all(|e| e.factors.is_empty()));
}
