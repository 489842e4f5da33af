use std::sync::OnceLock;

use sseq::repring::Rational;
use proptest::prelude::*;
use sseq::repring::{
    adams_operation, bott_power_euler, character_table, corpus, cyclic, euler_class, euler_character_identity,
    euler_gset, exterior_powers, is_ku_allowable, norm_epsilon, perm_character, symmetric, ClassFunction, FiniteGroup,
    GSet, NamedGroup, Perm, Realized,
};

fn groups() -> &'static [NamedGroup] {
    static CORPUS: OnceLock<Vec<NamedGroup>> = OnceLock::new();
    CORPUS.get_or_init(corpus)
}

/// Determinant by Gaussian elimination over the rationals.
fn rational_det(m: &[Vec<i128>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> =
        m.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
    let mut det = Rational::from_integer(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != Rational::from_integer(0)) else {
            return Rational::from_integer(0);
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let v = a[k][j];
                a[i][j] -= f * v;
            }
        }
    }
    det
}

/// `Σ` of the `n × n` principal minors, which is the trace on `Λ^n`.
fn principal_minor_sum(m: &[Vec<i128>], n: usize) -> Rational {
    let d = m.len();
    (0u32..1 << d)
        .filter(|s| s.count_ones() as usize == n)
        .map(|s| {
            let idx: Vec<usize> = (0..d).filter(|i| s >> i & 1 == 1).collect();
            let sub: Vec<Vec<i128>> = idx.iter().map(|&i| idx.iter().map(|&j| m[i][j]).collect()).collect();
            rational_det(&sub)
        })
        .sum()
}

fn representations(g: &FiniteGroup) -> Vec<Realized> {
    let mut reps = vec![
        Realized::permutation(GSet::natural(g)),
        Realized::reduced(GSet::natural(g)).unwrap(),
        Realized::reduced(GSet::regular(g)).unwrap(),
    ];
    if let Ok(classes) = g.subgroup_classes() {
        reps.extend(classes.iter().map(|k| Realized::reduced(GSet::cosets(g, k)).unwrap()));
    }
    reps
}

#[test]
fn euler_identity_holds_across_the_corpus() {
    for named in groups() {
        let g = &named.group;
        for v in representations(g) {
            let e = euler_class(g, &v);
            assert!(e.certificate_holds());
            for class in g.conjugacy_classes() {
                let x = class.representative;
                let (lhs, rhs) = euler_character_identity(g, &v, x);
                let m = v.matrix(x);
                let one_minus: Vec<Vec<i128>> = (0..m.len())
                    .map(|i| (0..m.len()).map(|j| i128::from(i == j) - m[i][j]).collect())
                    .collect();
                let oracle = rational_det(&one_minus);
                assert_eq!(Rational::from_integer(rhs), oracle, "{}", named.name);
                assert_eq!(lhs, rhs, "{} at {}", named.name, g.element(x));
                assert_eq!(e.character.values[g.class_of(x)], oracle);
            }
        }
    }
}

#[test]
fn exterior_powers_match_principal_minors() {
    for named in groups().iter().filter(|n| n.group.order() <= 12) {
        let g = &named.group;
        for v in representations(g).into_iter().filter(|v| v.dim() <= 8) {
            let lam = exterior_powers(g, &v);
            for (c, class) in g.conjugacy_classes().iter().enumerate() {
                let m = v.matrix(class.representative);
                for (n, l) in lam.iter().enumerate() {
                    assert_eq!(l.values[c], principal_minor_sum(&m, n), "{} Λ^{n}", named.name);
                }
            }
        }
    }
}

/// Whether `⟨g⟩` has a single orbit on `G/K`, by walking the orbit of `K`.
fn transitive_on_cosets(g: &FiniteGroup, k: &sseq::repring::Subgroup, x: usize) -> bool {
    let index = g.order() / k.order();
    let mut y = x;
    let mut steps = 1;
    while !k.contains(y) {
        y = g.mul(x, y);
        steps += 1;
    }
    // the coset orbit of K under ⟨x⟩ has `steps` elements; it covers G/K
    // exactly when it has [G:K] of them
    steps == index
}

#[test]
fn euler_gset_detects_transitive_cyclic_subgroups() {
    for named in groups().iter().filter(|n| n.group.order() <= 64) {
        let g = &named.group;
        for k in g.subgroup_classes().unwrap() {
            let e = euler_gset(g, &k).character;
            let any = (0..g.order()).any(|x| transitive_on_cosets(g, &k, x));
            assert_eq!(!e.is_zero(), any, "{} / order {}", named.name, k.order());
            for x in 0..g.order() {
                let value = e.values[g.class_of(x)];
                let index = (g.order() / k.order()) as i64;
                let expect = if transitive_on_cosets(g, &k, x) { index } else { 0 };
                assert_eq!(value, Rational::from_integer(expect.into()));
            }
        }
    }
}

#[test]
fn euler_class_of_cyclic_prime_powers() {
    for p in [2usize, 3, 5] {
        for n in 1..=3u32 {
            let order = p.pow(n);
            let g = cyclic(order);
            let e = euler_gset(&g, &g.trivial()).character;
            // p^{n−1}(p − ℂ[G/N]) with N the index-p subgroup, i.e. the p-th powers
            let powers: Vec<usize> = (0..order).map(|x| g.pow(x, p as i64)).collect();
            for x in 0..order {
                let in_n = powers.contains(&x);
                let quotient_character = if in_n { p as i64 } else { 0 };
                let expect = p.pow(n - 1) as i64 * (p as i64 - quotient_character);
                assert_eq!(e.values[g.class_of(x)], Rational::from_integer(expect.into()), "C{order}");
            }
        }
    }
}

#[test]
fn odd_cyclic_quotients_agree_mod_two() {
    let mut checked = 0;
    for named in groups().iter().filter(|n| n.group.order() <= 64) {
        let g = &named.group;
        for k in g.all_subgroups().unwrap() {
            let Some((p, _, n)) = g.cyclic_prime_power_quotient(&k) else { continue };
            if p == 2 || k.order() == g.order() {
                continue;
            }
            let table = character_table(g).unwrap();
            let e = euler_gset(g, &k).character;
            let reduced =
                perm_character(g, &GSet::cosets(g, &n)).sub(&ClassFunction::constant(1, g.class_count()));
            let half = e.sub(&reduced).scale(Rational::new(1, 2));
            assert!(table.decompose(&half).iter().zip(&table.decompose(&e.sub(&reduced))).all(|(h, f)| 2 * h == *f));
            assert!(table.decompose_rational(&half).iter().all(|c| c.is_integer()), "{}", named.name);
            assert!(norm_epsilon(g, &k).unwrap().cyclic_quotient.unwrap().agrees);
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn non_cyclic_normal_quotients_have_zero_norm() {
    for named in groups().iter().filter(|n| n.group.order() <= 24) {
        let g = &named.group;
        for k in g.subgroup_classes().unwrap().into_iter().filter(|k| g.is_normal(k)) {
            let (reps, coset_of) = g.left_cosets(&k);
            let cyclic_quotient = (0..g.order()).any(|x| {
                let mut seen = vec![false; reps.len()];
                let mut y = 0;
                for _ in 0..reps.len() {
                    seen[coset_of[y]] = true;
                    y = g.mul(x, y);
                }
                seen.iter().all(|&s| s)
            });
            if !cyclic_quotient {
                assert!(norm_epsilon(g, &k).unwrap().is_zero, "{}", named.name);
            }
        }
    }
}

#[test]
fn character_tables_are_orthogonal() {
    for named in groups() {
        let g = &named.group;
        let t = character_table(g).unwrap();
        assert_eq!(t.len(), g.class_count(), "{}", named.name);
        assert!(t.orthogonality_holds(), "{}", named.name);
        assert_eq!(t.degrees.iter().map(|d| d * d).sum::<u64>(), g.order() as u64);
        for a in t.rational.iter().flatten() {
            for b in t.rational.iter().flatten() {
                let ip = a.inner_product(b, g);
                assert!(ip == Rational::from_integer(0) || ip == Rational::from_integer(1));
                assert_eq!(ip == Rational::from_integer(1), a == b);
            }
        }
        let total: i64 = t.rational_irreducibles.iter().map(|r| r.members.len() as i64).sum();
        assert_eq!(total as usize, t.len());
        for k in (1..=2 * g.exponent() as i64).filter(|k| sseq_gcd(*k as usize, g.order()) == 1) {
            let mut images: Vec<usize> = (0..t.len())
                .map(|i| {
                    let chi = ClassFunction::from_ints(t.values[i].iter().map(|&x| x as i64));
                    let psi = adams_operation(g, k, &chi);
                    t.values.iter().position(|r| r.iter().zip(&psi.values).all(|(&a, b)| a as i128 == b.to_integer())).unwrap()
                })
                .collect();
            images.sort_unstable();
            assert_eq!(images, (0..t.len()).collect::<Vec<_>>(), "ψ^{k} on {}", named.name);
        }
    }
}

fn sseq_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        sseq_gcd(b, a % b)
    }
}

#[test]
fn nilpotent_groups_are_allowable() {
    for named in groups() {
        let g = &named.group;
        let verdict = is_ku_allowable(g);
        if g.is_nilpotent() {
            assert!(verdict.allowable, "{}", named.name);
        }
        // elementwise restatement: x g x⁻¹ = g^j for some j, modulo centralizers
        let mut oracle = true;
        for x in 0..g.order() {
            let ord = g.element_order(x);
            let powers: Vec<usize> = (0..ord as i64).map(|j| g.pow(x, j)).collect();
            let norm = (0..g.order()).filter(|&y| powers.contains(&g.mul(g.mul(y, x), g.inv(y)))).count();
            let cent = (0..g.order()).filter(|&y| g.mul(y, x) == g.mul(x, y)).count();
            let mut idx = norm / cent;
            for p in 2..=idx {
                if idx % p == 0 {
                    if ord % p != 0 {
                        oracle = false;
                    }
                    while idx % p == 0 {
                        idx /= p;
                    }
                }
            }
        }
        assert_eq!(verdict.allowable, oracle, "{}", named.name);
    }
}

#[test]
fn bott_power_euler_matches_determinants() {
    for m in 1..=6usize {
        let b = bott_power_euler(m).unwrap();
        assert!(b.euler.certificate_holds());
        assert_eq!(b.class_sizes.iter().sum::<u64>(), (1..=m as u64).product());
        let sm = symmetric(m).unwrap();
        for class in sm.conjugacy_classes() {
            let x = class.representative;
            let v = Realized::reduced(GSet::natural(&sm)).unwrap();
            let m_x = v.matrix(x);
            let one_minus: Vec<Vec<i128>> =
                (0..m_x.len()).map(|i| (0..m_x.len()).map(|j| i128::from(i == j) - m_x[i][j]).collect()).collect();
            assert_eq!(b.value_at(&sm.element(x).cycle_type()), Some(rational_det(&one_minus)), "m = {m}");
        }
    }
    let eight = bott_power_euler(8).unwrap();
    assert_eq!(eight.partitions.len(), 22);
    let long = Perm::parse("(1 2 3 4 5 6 7 8)", 8).unwrap();
    assert_eq!(eight.value_at(&long.cycle_type()), Some(Rational::from_integer(8)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn adams_operations_compose(gi in 0usize..80, k in -6i64..12, l in -6i64..12, seed in proptest::collection::vec(-5i64..5, 64)) {
        let all = groups();
        let g = &all[gi % all.len()].group;
        let x = ClassFunction::from_ints(seed.iter().copied().cycle().take(g.class_count()));
        let lhs = adams_operation(g, k, &adams_operation(g, l, &x));
        prop_assert_eq!(lhs, adams_operation(g, k * l, &x));
    }
}
