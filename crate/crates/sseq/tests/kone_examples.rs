use sseq::fgab::{CoeffRing, Elem};
use sseq::kone::{
    b_sk1_pi, default_generator, eval, h_element, k1_power_odd, k1_power_two, power_of_integer, power_total, psi,
    sk1_pi, theta_epsilon, theta_integer, validate_generator, BkuElement, Expr, Ko2Gen, Ko2Window, KoClass, KoneError,
    PowerClass, Twist,
};

const PRECISION: u32 = 12;

fn ring(p: u32) -> CoeffRing {
    CoeffRing::padic(p, PRECISION).unwrap()
}

fn mono(p: u32, c: Elem, a: u32, beta: i64, tau2: i64) -> BkuElement {
    BkuElement::monomial(ring(p), c, a, beta, tau2).unwrap()
}

fn ev(p: u32, text: &str) -> BkuElement {
    eval(p, PRECISION, text).unwrap()
}

/// `v_p(k^n − 1)` by plain integer arithmetic.
fn valuation_of_power_minus_one(p: u32, k: i128, n: i64) -> u32 {
    let e = n.unsigned_abs() as u32;
    let mut v = k.pow(e) - 1;
    let mut count = 0;
    while v != 0 && v % p as i128 == 0 {
        v /= p as i128;
        count += 1;
    }
    count
}

fn order_of(factors: &[Elem]) -> u128 {
    factors.iter().map(|&f| f as u128).product()
}

#[test]
fn ring_relations() {
    for p in [2, 3, 5] {
        let r = ring(p);
        let (a, d, h) = (BkuElement::a(r).unwrap(), BkuElement::d(r).unwrap(), BkuElement::h(r).unwrap());
        assert!(a.mul(&h).unwrap().is_zero());
        assert_eq!(d.mul(&d).unwrap(), d.scale(p as Elem).unwrap());
        assert_eq!(d.mul(&a).unwrap(), a.scale(p as Elem).unwrap());
        assert_eq!(h, BkuElement::integer(r, p as Elem).unwrap().sub(&d).unwrap());
        assert_eq!(d, mono(p, 1, 2, p as i64 - 1, -1));
        assert_eq!(ev(p, "beta*tau2*beta^-1*tau2^(-1)"), BkuElement::one(r).unwrap());
    }
}

#[test]
fn bidegrees_of_generators() {
    assert_eq!(ev(3, "a").bidegree(), (-2, -1));
    assert_eq!(ev(5, "a").bidegree(), (-4, -1));
    assert_eq!(ev(2, "beta").bidegree(), (2, 0));
    assert_eq!(ev(2, "tau2").bidegree(), (0, -2));
    assert_eq!(ev(3, "d").bidegree(), (0, 0));
}

#[test]
fn adams_operation_on_tau_squared() {
    assert_eq!(ev(2, "psi(3, tau2)"), ev(2, "tau2*(1+d)"));
    assert_eq!(ev(2, "psi(3, tau2)").to_string(), "(1 + d)·τ^2");
    // (2^2 − 1)/3 = 1
    assert_eq!(ev(3, "psi(2, tau2)"), ev(3, "tau2*(1+d)"));
}

#[test]
fn adams_operation_fixes_d_and_h() {
    for p in [2, 3, 5] {
        let k = default_generator(p);
        let r = ring(p);
        let d = BkuElement::d(r).unwrap();
        let h = BkuElement::h(r).unwrap();
        assert_eq!(psi(k, &d).unwrap(), d, "p = {p}");
        assert_eq!(psi(k, &h).unwrap(), h, "p = {p}");
    }
}

#[test]
fn adams_operation_on_euler_monomials() {
    for p in [2u32, 3, 5] {
        let k = default_generator(p);
        for n in -3..=3 {
            let x = mono(p, 1, 1, p as i64 * n, -n);
            let expected = ring(p).reduce(if n >= 0 { k.pow(n as u32) } else { 0 });
            let image = psi(k, &x).unwrap();
            if n >= 0 {
                assert_eq!(image, x.scale(expected).unwrap(), "p = {p}, n = {n}");
            } else {
                // k^n·(k^{-n}) = 1
                let back = image.scale(k.pow((-n) as u32)).unwrap();
                assert_eq!(back, x, "p = {p}, n = {n}");
            }
        }
    }
}

#[test]
fn adams_operation_rejects_nonunits() {
    let x = ev(3, "beta");
    assert!(matches!(psi(3, &x), Err(KoneError::NotAUnit(_))));
}

#[test]
fn power_operation_examples() {
    for p in [2, 3, 5] {
        let r = ring(p);
        assert_eq!(power_total(&BkuElement::one(r).unwrap()).unwrap(), BkuElement::one(r).unwrap());
        assert_eq!(power_total(&ev(p, "beta")).unwrap(), mono(p, 1, 0, p as i64, -1));
    }
    // (3 − 9)/2 = −3, so P(3) = 3 + 3h.
    assert_eq!(power_of_integer(ring(2), 3).unwrap(), ev(2, "3 + 3*h"));
    // At p = 3: (2 − 8)/3 = −2, so P(2) = 2 + 2h.
    assert_eq!(power_of_integer(ring(3), 2).unwrap(), ev(3, "2 + 2*h"));
    assert!(matches!(power_total(&ev(2, "a")), Err(KoneError::DegreeMismatch(_))));
}

#[test]
fn h_elements() {
    for p in [2, 3, 5] {
        let r = ring(p);
        assert_eq!(h_element(r, 0).unwrap(), ev(p, &format!("{p} - d")));
        for m in -3..=3 {
            let hm = h_element(r, 2 * m).unwrap();
            assert_eq!(hm, ev(p, &format!("h*tau2^({})", -m)));
            assert!(hm.a_mul().unwrap().is_zero());
            let bott = mono(p, 1, 0, m, 0);
            let lhs = BkuElement::h(r).unwrap().mul(&power_total(&bott).unwrap()).unwrap();
            let rhs = mono(p, 1, 0, p as i64 * m, 0).mul(&hm).unwrap();
            assert_eq!(lhs, rhs, "p = {p}, m = {m}");
        }
    }
    assert!(matches!(h_element(ring(2), 1), Err(KoneError::DegreeMismatch(_))));
}

#[test]
fn expression_errors() {
    for bad in ["beta +", "gamma", "psi(3 beta)", "beta^", "(a", "a $ b"] {
        assert!(matches!(Expr::parse(bad), Err(KoneError::Parse(_))), "{bad}");
    }
    assert!(matches!(eval(2, PRECISION, "a^-1"), Err(KoneError::NotAUnit(_))));
    assert!(matches!(eval(2, PRECISION, "beta + a"), Err(KoneError::DegreeMismatch(_))));
}

#[test]
fn generator_validation() {
    assert_eq!(default_generator(2), 3);
    assert_eq!(default_generator(3), 2);
    assert_eq!(default_generator(5), 2);
    assert_eq!(default_generator(7), 3);
    assert!(validate_generator(2, 5).is_ok());
    assert!(matches!(validate_generator(2, 7), Err(KoneError::NotATopologicalGenerator { .. })));
    assert!(matches!(validate_generator(7, 2), Err(KoneError::NotATopologicalGenerator { .. })));
    assert!(matches!(sk1_pi(3, 4, (0, 3), PRECISION), Err(KoneError::NotATopologicalGenerator { .. })));
}

#[test]
fn sphere_homotopy_at_three() {
    let table = sk1_pi(3, 2, (-1, 12), PRECISION).unwrap();
    let at = |s: i64| table.iter().find(|g| g.s == s).unwrap();
    assert_eq!(at(3).factors, vec![3]);
    assert_eq!(at(3).generators[0].name, "[β^2]");
    assert!(at(1).factors.is_empty());
    assert_eq!(at(7).factors, vec![3]);
    assert_eq!(at(11).factors, vec![9]);
    assert_eq!(at(0).factors, vec![0]);
    assert_eq!(at(-1).factors, vec![0]);
    for s in [2, 4, 5, 6, 8] {
        assert!(at(s).factors.is_empty(), "π_{s}");
    }
}

#[test]
fn sphere_homotopy_at_five() {
    let table = sk1_pi(5, 2, (1, 40), PRECISION).unwrap();
    for g in &table {
        let s = g.s;
        let supported = s % 2 == 1 && ((s + 1) / 2) % 4 == 0;
        assert_eq!(!g.factors.is_empty(), supported, "π_{s}");
    }
}

#[test]
fn sphere_homotopy_at_two() {
    let table = sk1_pi(2, 3, (-1, 12), PRECISION).unwrap();
    let at = |s: i64| table.iter().find(|g| g.s == s).unwrap();
    let names = |s: i64| at(s).generators.iter().map(|g| g.name.clone()).collect::<Vec<_>>();
    assert_eq!(at(3).factors, vec![8]);
    assert_eq!(names(3), vec!["ξ_0"]);
    assert_eq!(at(8).factors, vec![2]);
    assert_eq!(names(8), vec!["η_cl·ρ_1"]);
    assert_eq!(at(9).factors, vec![2, 2]);
    assert!(names(9).contains(&"μ_1".to_string()));
    assert!(names(9).contains(&"η_cl²·ρ_1".to_string()));
    assert_eq!(at(9).axioms.len(), 1);
    assert_eq!(at(10).factors, vec![2]);
    assert_eq!(names(10), vec!["η_cl·μ_1"]);
    assert_eq!(at(11).factors, vec![8]);
    assert_eq!(names(11), vec!["ξ_1"]);
    // ℤ₂/(3^4 − 1) = ℤ/16
    assert_eq!(at(7).factors, vec![16]);
    assert_eq!(names(7), vec!["ρ_1"]);
    assert_eq!(at(0).factors, vec![2, 0]);
    assert_eq!(at(-1).factors, vec![0]);
}

#[test]
fn borel_homotopy() {
    // (2n−1)p with n = 2 at p = 3
    let g = b_sk1_pi(3, 2, &[(9, 3)], PRECISION).unwrap();
    assert_eq!(g[0].factors, vec![3]);
    assert_eq!(g[0].generators[0].name, "[a·β^6·τ^-4]");
    let twos: Vec<(i64, i64)> = (-1..=10).map(|i| (2 * i, i)).collect();
    let g = b_sk1_pi(2, 3, &twos, PRECISION).unwrap();
    for rec in &g {
        let i = rec.w;
        if i.rem_euclid(4) == 2 {
            assert!(rec.factors.is_empty(), "i = {i}");
        }
    }
    let zero = g.iter().find(|r| r.w == 0).unwrap();
    let names: Vec<_> = zero.generators.iter().map(|g| g.name.as_str()).collect();
    assert!(names.contains(&"1") && names.contains(&"a·η_C2"), "{names:?}");
    assert_eq!(zero.factors.iter().filter(|&&f| f == 0).count(), 2);
}

#[test]
fn comparison_map_rules() {
    let window = Ko2Window::new(PRECISION, 3).unwrap();
    let eta_cl = Ko2Gen::Product(KoClass::EtaBott(0), Twist::Tau(0));
    assert!(window.ku_image(eta_cl).unwrap().is_zero());
    let eta_c2 = Ko2Gen::Product(KoClass::Bott(0), Twist::EtaC2(0));
    assert_eq!(window.ku_image(eta_c2).unwrap(), ev(2, "-a*beta*tau2^-1"));
}

#[test]
fn odd_power_examples() {
    let r = k1_power_odd(3, 2, 2, PRECISION).unwrap();
    assert_eq!(r.value_text, "[a·β^6·τ^-4]");
    assert_eq!(r.coefficient, Some(1));
    assert_eq!(r.source.factors, vec![3]);
    assert_eq!(r.target.factors, vec![3]);
    assert_eq!(r.detection.level, Some(1));
    assert!(r.detection.exact);
    assert!(r.additivity.holds());

    let r = k1_power_odd(5, 2, 4, PRECISION).unwrap();
    assert_eq!(r.source.factors, vec![5]);
    assert_eq!(r.target.factors, vec![5]);
    assert_eq!(r.coefficient, Some(1));

    // 2^1 − 1 is a unit: both sides vanish.
    let r = k1_power_odd(3, 2, 1, PRECISION).unwrap();
    assert!(r.source.factors.is_empty() && r.target.factors.is_empty());
    assert_eq!(r.value_text, "0");
}

#[test]
fn odd_power_orders_match_valuations() {
    for p in [3u32, 5] {
        let k = default_generator(p);
        for n in (-6..=6).filter(|&n| n != 0) {
            let r = k1_power_odd(p, k, n, PRECISION).unwrap();
            let expected = (p as u128).pow(valuation_of_power_minus_one(p, k, n));
            assert_eq!(order_of(&r.source.factors), expected, "p = {p}, n = {n}");
            assert_eq!(order_of(&r.target.factors), expected, "p = {p}, n = {n}");
            if expected > 1 {
                assert_eq!(r.coefficient, Some(1), "p = {p}, n = {n}");
            }
        }
    }
}

fn two(class: PowerClass, n: i64) -> Vec<String> {
    k1_power_two(class, n, 3, PRECISION).unwrap().value_texts
}

#[test]
fn two_power_values() {
    for n in 0..=2 {
        let (m, o) = (2 * n, 2 * n + 1);
        assert_eq!(two(PowerClass::Rho, n), vec![format!("a·ρ_{{{m},{m}}}")]);
        assert_eq!(two(PowerClass::Xi, n), vec![format!("2·a·ρ_{{{o},{o}}}")]);
        assert_eq!(two(PowerClass::EtaRho, n), vec![format!("a·η_cl·η_C2·ρ_{{{m},{m}}}")]);
        assert_eq!(two(PowerClass::Eta2Rho, n), vec!["0"]);
        assert_eq!(two(PowerClass::EtaMu, n), vec!["0"]);
        let mu = k1_power_two(PowerClass::Mu, n, 3, PRECISION).unwrap();
        assert!(!mu.determined);
        assert_eq!(mu.values.len(), 2);
        let base = if n == 0 { "η_cl·η_C2".to_string() } else { format!("μ_{{{m},{m}}}·η_C2") };
        assert_eq!(mu.value_texts, vec![base.clone(), format!("η_cl²·η_C2·ρ_{{{m},{m}}} + {base}")]);
    }
    assert_eq!(two(PowerClass::Eta, 0), vec!["η_cl²·η_C2·ρ_{0,0} + η_cl·η_C2"]);
}

#[test]
fn theta_examples() {
    let t = theta_epsilon(3, PRECISION).unwrap();
    assert_eq!(t.output, "ε");
    assert_eq!(t.theta, Some(1));
    assert!(t.h_relation);
    assert!(t.character_check);
    assert_eq!(theta_integer(2, PRECISION, 0).unwrap(), 0);
    assert_eq!(theta_integer(2, PRECISION, 1).unwrap(), 0);
    // (3 − 9)/2
    assert_eq!(theta_integer(2, PRECISION, 3).unwrap(), ring(2).reduce(-3));
}
