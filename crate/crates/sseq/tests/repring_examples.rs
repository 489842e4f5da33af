use sseq::repring::Rational;
use sseq::repring::{
    adams_operation, bott_power_euler, character_table, cyclic, dicyclic, euler_character_identity, euler_class,
    euler_gset, exterior_powers, is_ku_allowable, named, norm_epsilon, perm_character, small_groups, ClassFunction,
    FiniteGroup, GSet, GroupJson, Perm, Realized, GROUP_COUNTS,
};

fn group(degree: usize, gens: &[&str]) -> FiniteGroup {
    GroupJson { degree, generators: gens.iter().map(|s| s.to_string()).collect() }.to_group().unwrap()
}

fn ints(f: &ClassFunction) -> Vec<i128> {
    f.as_integers().unwrap()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Class index of the element given in cycle notation.
fn class(g: &FiniteGroup, perm: &str) -> usize {
    g.class_of(g.index_of(&Perm::parse(perm, g.degree()).unwrap()).unwrap())
}

#[test]
fn perm_parsing_round_trips() {
    let p = Perm::parse("(1 2 3)(4 5)", 6).unwrap();
    assert_eq!(p.to_string(), "(1 2 3)(4 5)");
    assert_eq!(p.cycle_type(), vec![3, 2, 1]);
    assert_eq!(Perm::parse("()", 3).unwrap(), Perm::identity(3));
    assert!(Perm::parse("(1 2)(2 3)", 3).is_err());
    assert!(Perm::parse("(1 4)", 3).is_err());
}

#[test]
fn classes_of_small_groups() {
    assert_eq!(group(4, &["(1 2 3 4)"]).class_count(), 4);
    let s3 = group(3, &["(1 2 3)", "(1 2)"]);
    assert_eq!(sorted(s3.class_sizes()), vec![1, 2, 3]);
    let q8 = dicyclic(2);
    assert_eq!(q8.degree(), 8);
    // 1, −1, ±i, ±j, ±k
    assert_eq!(sorted(q8.class_sizes()), vec![1, 1, 2, 2, 2]);
}

#[test]
fn order_bound_is_enforced() {
    let s8 = GroupJson { degree: 8, generators: vec!["(1 2 3 4 5 6 7 8)".into(), "(1 2)".into()] }.to_group();
    assert!(matches!(s8, Err(sseq::repring::RepError::OrderBoundExceeded { .. })));
}

#[test]
fn permutation_characters() {
    let s3 = group(3, &["(1 2 3)", "(1 2)"]);
    let whole = s3.whole();
    assert_eq!(ints(&perm_character(&s3, &GSet::cosets(&s3, &whole))), vec![1, 1, 1]);
    let reg = ints(&perm_character(&s3, &GSet::regular(&s3)));
    assert_eq!(reg[s3.class_of(0)], 6);
    assert_eq!(reg.iter().filter(|&&v| v == 0).count(), 2);
    let natural = perm_character(&s3, &GSet::natural(&s3));
    let values = natural.as_integers().unwrap();
    assert_eq!([values[class(&s3, "()")], values[class(&s3, "(1 2)")], values[class(&s3, "(1 2 3)")]], [3, 1, 0]);
}

#[test]
fn exterior_powers_of_the_regular_c2() {
    let c2 = cyclic(2);
    let v = Realized::permutation(GSet::regular(&c2));
    let lam = exterior_powers(&c2, &v);
    let g = c2.class_of(1);
    assert_eq!(lam[0], ClassFunction::constant(1, 2));
    assert_eq!(lam[1].values[g], Rational::from_integer(0));
    assert_eq!(lam[2].values[g], Rational::from_integer(-1));
}

#[test]
fn top_exterior_power_is_the_sign() {
    let s4 = named("S4").unwrap();
    let v = Realized::permutation(GSet::natural(&s4));
    let top = exterior_powers(&s4, &v).pop().unwrap();
    for (c, class) in s4.conjugacy_classes().iter().enumerate() {
        assert_eq!(top.values[c], Rational::from_integer(s4.element(class.representative).sign().into()));
    }
}

#[test]
fn euler_class_examples() {
    let s3 = named("S3").unwrap();
    let trivial = Realized::permutation(GSet::cosets(&s3, &s3.whole()));
    assert!(euler_class(&s3, &trivial).character.is_zero());

    for p in [2usize, 3, 5, 7] {
        let c = cyclic(p);
        let e = euler_class(&c, &Realized::reduced(GSet::regular(&c)).unwrap());
        assert!(e.certificate_holds());
        for g in 0..p {
            let expect = if g == 0 { 0 } else { p as i64 };
            assert_eq!(e.character.values[c.class_of(g)], Rational::from_integer(expect.into()));
        }
    }
    let e = euler_class(&s3, &Realized::reduced(GSet::regular(&s3)).unwrap());
    assert!(e.character.is_zero());
}

#[test]
fn euler_character_identity_examples() {
    let c4 = cyclic(4);
    let v = Realized::reduced(GSet::regular(&c4)).unwrap();
    assert_eq!(euler_character_identity(&c4, &v, 0), (0, 0));
    let gen = c4.index_of(&Perm::parse("(1 2 3 4)", 4).unwrap()).unwrap();
    assert_eq!(euler_character_identity(&c4, &v, gen), (4, 4));
    let s3 = named("S3").unwrap();
    let v = Realized::reduced(GSet::regular(&s3)).unwrap();
    let t = s3.index_of(&Perm::parse("(1 2)", 3).unwrap()).unwrap();
    assert_eq!(euler_character_identity(&s3, &v, t), (0, 0));
}

#[test]
fn euler_gset_examples() {
    let c9 = cyclic(9);
    assert_eq!(ints(&euler_gset(&c9, &c9.whole()).character), vec![1; 9]);
    let e = euler_gset(&c9, &c9.trivial());
    for g in 0..9 {
        let expect = if c9.element_order(g) == 9 { 9 } else { 0 };
        assert_eq!(e.character.values[c9.class_of(g)], Rational::from_integer(expect.into()));
    }
    let s3 = named("S3").unwrap();
    assert!(euler_gset(&s3, &s3.trivial()).character.is_zero());
}

#[test]
fn adams_operation_examples() {
    let s4 = named("S4").unwrap();
    let chi = perm_character(&s4, &GSet::natural(&s4));
    assert_eq!(adams_operation(&s4, 1, &chi), chi);
    assert_eq!(adams_operation(&s4, 24, &chi), ClassFunction::constant(4, s4.class_count()));
    let c3 = cyclic(3);
    let reg = perm_character(&c3, &GSet::regular(&c3));
    assert_eq!(adams_operation(&c3, 2, &reg), reg);
}

#[test]
fn character_table_examples() {
    let c2 = character_table(&cyclic(2)).unwrap();
    let rows: Vec<Vec<i128>> = c2.rational.iter().map(|r| ints(r.as_ref().unwrap())).collect();
    assert_eq!(rows, vec![vec![1, 1], vec![1, -1]]);
    assert_eq!(character_table(&named("S3").unwrap()).unwrap().degrees, vec![1, 1, 2]);
    assert_eq!(character_table(&dicyclic(2)).unwrap().degrees, vec![1, 1, 1, 1, 2]);
    assert!(character_table(&named("S6").unwrap()).is_err());
}

#[test]
fn norm_epsilon_examples() {
    let v4 = named("V4").unwrap();
    assert!(norm_epsilon(&v4, &v4.trivial()).unwrap().is_zero);

    let c3 = cyclic(3);
    let r = norm_epsilon(&c3, &c3.trivial()).unwrap();
    // rational irreducibles of C3: the trivial one and Q̃[C3]
    assert_eq!(r.rational_degrees, vec![1, 2]);
    assert_eq!(r.mod2, vec![0, 1]);
    assert!(r.cyclic_quotient.as_ref().unwrap().agrees);
    assert!(!r.detection_level_only);

    let c9 = cyclic(9);
    let r = norm_epsilon(&c9, &c9.trivial()).unwrap();
    let q = r.cyclic_quotient.unwrap();
    assert_eq!((q.prime, q.exponent, q.index_p_subgroup_order), (3, 2, 3));
    assert!(q.agrees);
    assert_eq!(r.mod2, q.reduced_quotient_mod2);
}

#[test]
fn bott_power_euler_examples() {
    let one = bott_power_euler(1).unwrap();
    assert_eq!(ints(&one.euler.character), vec![1]);
    let two = bott_power_euler(2).unwrap();
    assert_eq!(two.value_at(&[1, 1]), Some(Rational::from_integer(0)));
    assert_eq!(two.value_at(&[2]), Some(Rational::from_integer(2)));
    let three = bott_power_euler(3).unwrap();
    assert_eq!(three.value_at(&[3]), Some(Rational::from_integer(3)));
    // a transposition fixes a point, so 1 is an eigenvalue on the reduced representation
    assert_eq!(three.value_at(&[2, 1]), Some(Rational::from_integer(0)));
    assert_eq!(three.value_at(&[1, 1, 1]), Some(Rational::from_integer(0)));
    assert!(bott_power_euler(9).is_err());
}

#[test]
fn allowability_examples() {
    for name in ["C2xC4", "Q8", "Heis27", "C1"] {
        let a = is_ku_allowable(&named(name).unwrap());
        assert!(a.allowable, "{name}");
    }
    let a = is_ku_allowable(&named("S3").unwrap());
    let w = a.witness.unwrap();
    assert_eq!((w.cyclic.as_str(), w.prime), ("C3", 2));
    for (name, cyc) in [("S4", "C3"), ("D5", "C5")] {
        let a = is_ku_allowable(&named(name).unwrap());
        assert!(!a.allowable);
        let w = a.witness.unwrap();
        assert_eq!((w.cyclic.as_str(), w.prime), (cyc, 2), "{name}");
    }
}

#[test]
fn small_group_counts() {
    let groups = small_groups(24);
    for n in 1..=24 {
        assert_eq!(groups.iter().filter(|g| g.group.order() == n).count(), GROUP_COUNTS[n - 1], "order {n}");
    }
}
