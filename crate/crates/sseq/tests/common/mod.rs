#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sseq::fgab::{Elem, FgModule, Submodule};
use sseq::tower::{FilteredComplex, Generator, TowerDatum};

pub const S_RANGE: (i64, i64) = (0, 5);
pub const T_RANGE: (i64, i64) = (0, 5);
pub const MAX_ORDER: u128 = 64;

fn gcd(a: Elem, b: Elem) -> Elem {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// A random filtered complex: cyclic generators split into sources and
/// targets of the differential, so `d² = 0` holds automatically.
pub fn random_complex(seed: u64) -> FilteredComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=9);
    let mut generators = Vec::new();
    let mut is_source = Vec::new();
    for _ in 0..n {
        generators.push(Generator {
            degree: rng.gen_range(S_RANGE.0 - 1..=S_RANGE.1 + 1),
            weight: rng.gen_range(T_RANGE.0..=T_RANGE.1),
            order: [2, 2, 3, 4, 4, 8][rng.gen_range(0..6)],
        });
        is_source.push(rng.gen_bool(0.5));
    }
    let mut differential = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let (a, b) = (generators[i], generators[j]);
            if !is_source[j] || is_source[i] || a.degree != b.degree - 1 || a.weight < b.weight {
                continue;
            }
            if rng.gen_bool(0.7) {
                let step = a.order / gcd(a.order, b.order);
                let c = step * rng.gen_range(1..a.order.max(2));
                if c % a.order != 0 {
                    differential.push((i, j, c));
                }
            }
        }
    }
    FilteredComplex { generators, differential }
}

fn small(t: &TowerDatum) -> bool {
    t.pi_f.values().chain(t.pi_x.values()).all(|m| m.order().map_or(false, |o| o <= MAX_ORDER))
}

/// Random exact tower on the 6x6 window with every group of order at most 64.
pub fn random_tower(seed: u64) -> TowerDatum {
    let mut k = 0u64;
    loop {
        let c = random_complex(seed.wrapping_mul(1000).wrapping_add(k));
        let t = c.tower(S_RANGE, T_RANGE).expect("valid complex");
        if small(&t) {
            return t;
        }
        k += 1;
    }
}

/// Like [`random_tower`] on the window shifted to columns `-1..=4`.
pub fn random_tower_from_minus_one(seed: u64) -> TowerDatum {
    let mut k = 0u64;
    loop {
        let mut c = random_complex(seed.wrapping_mul(1000).wrapping_add(k));
        for g in &mut c.generators {
            g.degree -= 1;
        }
        let t = c.tower((S_RANGE.0 - 1, S_RANGE.1 - 1), T_RANGE).expect("valid complex");
        if small(&t) {
            return t;
        }
        k += 1;
    }
}

pub fn elements(m: &FgModule) -> Vec<Vec<Elem>> {
    m.elements().expect("finite")
}

pub fn members(sub: &Submodule) -> BTreeSet<Vec<Elem>> {
    elements(sub.ambient()).into_iter().filter(|v| sub.contains(v).unwrap()).collect()
}
