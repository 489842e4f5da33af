use proptest::prelude::*;
use sseq::fgab::{CoeffRing, Elem};
use sseq::kone::{
    addition_correction, default_generator, power_total, psi, sk1_pi, BkuElement, Ko2Window, KO2_S_WINDOW,
};

const PRECISION: u32 = 12;

fn ring(p: u32) -> CoeffRing {
    CoeffRing::padic(p, PRECISION).unwrap()
}

/// A homogeneous element: `(c₀ + c₁d)β^iτ^{2j}` or `c·a·β^iτ^{2j}`.
fn element() -> impl Strategy<Value = BkuElement> {
    (prop::sample::select(vec![2u32, 3, 5]), any::<bool>(), -4i64..=4, -4i64..=4, any::<i64>(), any::<i64>())
        .prop_map(|(p, odd, i, j, c0, c1)| {
            let r = ring(p);
            if odd {
                BkuElement::monomial(r, c0 as Elem, 1, i, j).unwrap()
            } else {
                BkuElement::even(r, 2 * i, -2 * j, c0 as Elem, c1 as Elem).unwrap()
            }
        })
}

fn same_prime_pair() -> impl Strategy<Value = (BkuElement, BkuElement)> {
    (element(), element()).prop_map(|(x, y)| {
        let (s, w) = y.bidegree();
        let y = match y.coeffs() {
            sseq::kone::Coeffs::Odd(c) => BkuElement::monomial(x.ring(), c, 1, (s + y.prime() as i64 - 1) / 2, -(w + 1) / 2),
            sseq::kone::Coeffs::Even { unit, d } => BkuElement::even(x.ring(), s, w, unit, d),
            sseq::kone::Coeffs::Zero => BkuElement::zero(x.ring(), s, w),
        };
        (x, y.unwrap())
    })
}

/// Power operations divide by `p` once, so identities between them hold
/// one digit below the working precision.
fn coarse(x: BkuElement) -> BkuElement {
    x.truncated(PRECISION - 1).unwrap()
}

/// A class `c·β^m` of `π_{2m}KU_p`.
fn bott_class(p: u32, m: i64, c: Elem) -> BkuElement {
    BkuElement::monomial(ring(p), c, 0, m, 0).unwrap()
}

fn unit_for(p: u32, raw: u16) -> Elem {
    let mut k = raw as Elem + 1;
    while k % p as Elem == 0 {
        k += 1;
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn adams_operation_is_multiplicative((x, y) in same_prime_pair(), raw in any::<u16>()) {
        let k = unit_for(x.prime(), raw);
        let lhs = psi(k, &x.mul(&y).unwrap()).unwrap();
        let rhs = psi(k, &x).unwrap().mul(&psi(k, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adams_operation_is_additive(x in element(), c in any::<i64>(), raw in any::<u16>()) {
        let k = unit_for(x.prime(), raw);
        let y = x.scale(c as Elem).unwrap().add(&x.scale(3).unwrap()).unwrap();
        let lhs = psi(k, &x.add(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, psi(k, &x).unwrap().add(&psi(k, &y).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adams_operations_compose(x in element(), r1 in any::<u16>(), r2 in any::<u16>()) {
        let p = x.prime();
        let (k, l) = (unit_for(p, r1), unit_for(p, r2));
        let lhs = psi(k, &psi(l, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, psi(k * l, &x).unwrap());
    }

    #[test]
    fn power_is_multiplicative(p in prop::sample::select(vec![2u32, 3, 5]), m1 in -3i64..=3, m2 in -3i64..=3, c1 in any::<i32>(), c2 in any::<i32>()) {
        let (x, y) = (bott_class(p, m1, c1 as Elem), bott_class(p, m2, c2 as Elem));
        let lhs = power_total(&x.mul(&y).unwrap()).unwrap();
        prop_assert_eq!(coarse(lhs), coarse(power_total(&x).unwrap().mul(&power_total(&y).unwrap()).unwrap()));
    }

    #[test]
    fn power_satisfies_the_addition_formula(p in prop::sample::select(vec![2u32, 3, 5]), m in -3i64..=3, c1 in any::<i32>(), c2 in any::<i32>()) {
        let (x, y) = (bott_class(p, m, c1 as Elem), bott_class(p, m, c2 as Elem));
        let lhs = power_total(&x.add(&y).unwrap()).unwrap();
        let rhs = power_total(&x).unwrap().add(&power_total(&y).unwrap()).unwrap().add(&addition_correction(&x, &y).unwrap()).unwrap();
        prop_assert_eq!(coarse(lhs), coarse(rhs));
    }

    #[test]
    fn addition_formula_is_independent_of_grouping(p in prop::sample::select(vec![2u32, 3, 5]), m in -2i64..=2, cs in prop::array::uniform3(any::<i32>())) {
        let [x, y, z] = cs.map(|c| bott_class(p, m, c as Elem));
        let pw = |v: &BkuElement| power_total(v).unwrap();
        let sum = |a: &BkuElement, b: &BkuElement| a.add(b).unwrap();
        let corr = |a: &BkuElement, b: &BkuElement| addition_correction(a, b).unwrap();
        let right = sum(&sum(&pw(&x), &sum(&sum(&pw(&y), &pw(&z)), &corr(&y, &z))), &corr(&x, &sum(&y, &z)));
        let left = sum(&sum(&sum(&sum(&pw(&x), &pw(&y)), &corr(&x, &y)), &pw(&z)), &corr(&sum(&x, &y), &z));
        prop_assert_eq!(coarse(left), coarse(right));
    }

    #[test]
    fn euler_class_times_power_is_additive(p in prop::sample::select(vec![2u32, 3, 5]), m in -3i64..=3, c1 in any::<i32>(), c2 in any::<i32>()) {
        let (x, y) = (bott_class(p, m, c1 as Elem), bott_class(p, m, c2 as Elem));
        let ap = |v: &BkuElement| power_total(v).unwrap().a_mul().unwrap();
        prop_assert_eq!(ap(&x.add(&y).unwrap()), ap(&x).add(&ap(&y)).unwrap());
    }

    #[test]
    fn adams_operation_fixes_d_and_h_for_any_unit(p in prop::sample::select(vec![2u32, 3, 5]), raw in any::<u16>()) {
        let k = unit_for(p, raw);
        let d = BkuElement::d(ring(p)).unwrap();
        let h = BkuElement::h(ring(p)).unwrap();
        prop_assert_eq!(psi(k, &d).unwrap(), d);
        prop_assert_eq!(psi(k, &h).unwrap(), h);
    }
}

/// `v_p(n)`.
fn valuation(p: i64, mut n: i64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

#[test]
fn odd_sphere_support_and_orders() {
    for p in [3u32, 5, 7] {
        let k = default_generator(p);
        for g in sk1_pi(p, k, (-30, 60), PRECISION).unwrap() {
            let s = g.s;
            let order: Option<u128> = g.order();
            if s == 0 || s == -1 {
                assert_eq!(g.factors, vec![0], "p = {p}, s = {s}");
                continue;
            }
            let n = (s + 1) / 2;
            let expected = if s % 2 != 0 && n % (p as i64 - 1) == 0 {
                (p as u128).pow(1 + valuation(p as i64, n))
            } else {
                1
            };
            assert_eq!(order, Some(expected), "p = {p}, s = {s}");
        }
    }
}

#[test]
fn ko_window_comparison_intertwines_adams_operations() {
    let window = Ko2Window::new(PRECISION, 3).unwrap();
    for s in KO2_S_WINDOW.0 + 2..=KO2_S_WINDOW.1 - 2 {
        for w in -4..=12 {
            let entry = window.entry(s, w).unwrap();
            let psi_ko = window.psi(s, w).unwrap();
            for (j, g) in entry.gens.iter().enumerate() {
                let x = entry.module.basis_element(j);
                let image = psi_ko.apply(&x).unwrap();
                if g.is_torsion() {
                    assert_eq!(image, x, "ψ³ moves torsion {} at ({s},{w})", g.name());
                    assert!(window.to_ku(s, w, &x).unwrap().is_zero());
                }
                let lhs = window.to_ku(s, w, &image).unwrap();
                let rhs = psi(3, &window.to_ku(s, w, &x).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{} at ({s},{w})", g.name());
            }
        }
    }
}
