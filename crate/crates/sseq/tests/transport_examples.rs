use sseq::fgab::Elem;
use sseq::kone::{k1_power_odd, BkuElement};
use sseq::transport::{
    additivity_witness, q_apply, ring_tower_instance, shifted_power, transport_cycles, transport_generic, KuSystem,
    LevelMap, PowerSystem, RingSpec, TableSystem, TransportError,
};

const PRECISION: u32 = 12;

fn ku(p: u32) -> KuSystem {
    KuSystem::new(p, PRECISION).unwrap()
}

fn beta(p: u32, c: Elem, m: i64) -> BkuElement {
    BkuElement::monomial(ku(p).ring, c, 0, m, 0).unwrap()
}

#[test]
fn looped_power_of_zero_vanishes() {
    for p in [2, 3, 5] {
        let sys = ku(p);
        // the loop coordinate of degree n sits in π_n
        for m in 1..=3 {
            let zero = beta(p, 0, m);
            for x in [0, 1, 5] {
                assert!(shifted_power(&sys, 2 * m as u32, &beta(p, x, 0), &zero).unwrap().is_zero());
            }
        }
    }
    let table = TableSystem::from_ring(RingSpec::squaring_z4()).unwrap();
    let zero = table.module.zero_element();
    for x in &table.elements {
        assert_eq!(table.module.reduce(&shifted_power(&table, 1, x, &zero).unwrap()).unwrap(), zero);
    }
}

#[test]
fn looped_power_at_two_with_bott_class() {
    let sys = ku(2);
    let r = sys.ring;
    let b = beta(2, 1, 1);
    let one = BkuElement::one(r).unwrap();
    // a²·P(β) = a²β²τ^{-2} = d·β
    let top = sys.euler(2, 2, &sys.power(2, &b).unwrap()).unwrap();
    assert_eq!(top, BkuElement::d(r).unwrap().mul(&b).unwrap());
    // the i = 1 term is h·β, and h + d = 2
    let whole = shifted_power(&sys, 2, &one, &b).unwrap();
    assert_eq!(whole, b.scale(2).unwrap());
}

#[test]
fn euler_power_examples() {
    let sys = ku(2);
    let r = sys.ring;
    assert!(q_apply(&sys, 1, &beta(2, 0, 1)).unwrap().is_zero());
    let b = beta(2, 1, 1);
    let expected = BkuElement::monomial(r, 1, 1, 2, -1).unwrap();
    assert_eq!(q_apply(&sys, 1, &b).unwrap(), expected);
    assert_eq!(q_apply(&sys, 2, &b).unwrap(), BkuElement::d(r).unwrap().mul(&b).unwrap());
}

#[test]
fn looped_power_with_index_one_is_an_euler_multiple() {
    let spec = RingSpec { modulus: 4, dual: false, m: 1, euler_top: (2, 0), ideal_positive: false, derivation: 0 };
    let sys = TableSystem::from_ring(spec).unwrap();
    for x in &sys.elements {
        for f in &sys.elements {
            for n in 1..=3 {
                let expected = sys.module.scale(2i128.pow(n), f).unwrap();
                assert_eq!(shifted_power(&sys, n, x, f).unwrap(), expected);
            }
        }
    }
}

#[test]
fn euler_times_power_is_additive_on_ku() {
    for p in [2u32, 3, 5] {
        let sys = ku(p);
        for m in [-2i64, 0, 1, 3] {
            let pairs: Vec<_> = (0..10)
                .flat_map(|i| (0..10).map(move |j| (7 * i + 1, 11 * j + 5)))
                .map(|(c1, c2)| (beta(p, c1, m), beta(p, c2, m)))
                .collect();
            let w = additivity_witness(&sys, &pairs, |x| q_apply(&sys, 1, x)).unwrap();
            assert_eq!(w.samples, 100);
            assert!(w.holds(), "p = {p}, m = {m}: {:?}", w.failures.first());
            let plain = additivity_witness(&sys, &pairs, |x| sys.power(p, x)).unwrap();
            assert!(!plain.holds(), "P itself is not additive");
        }
    }
}

#[test]
fn ku_detection_in_descent_towers() {
    for (p, n) in [(3, 2), (3, -2), (3, 6), (5, 4), (5, -8)] {
        let r = k1_power_odd(p, 2, n, PRECISION).unwrap();
        assert_eq!(r.detection.level, Some(1), "p = {p}, n = {n}");
        assert!(r.detection.exact);
        assert!(r.detection.higher.is_empty());
        assert!(r.additivity.holds());
    }
}

#[test]
fn synthetic_family_satisfies_the_transport_statements() {
    let mut specs = RingSpec::family();
    specs.push(RingSpec::squaring_z4());
    assert!(specs.len() >= 20);
    for spec in specs {
        let sys = TableSystem::from_ring(spec).unwrap();
        let map = ring_tower_instance(&sys).unwrap();
        assert_eq!(map.check().unwrap(), Vec::<String>::new(), "{}", spec.name());
        for r in [2, 3] {
            let report = transport_generic(&map, r).unwrap();
            assert!(report.holds(), "{} r = {r}: {:?}", spec.name(), report.failures);
            assert!(report.cycles_checked > 0 && report.boundaries_checked > 0 && report.differentials_checked > 0);
        }
    }
}

#[test]
fn squaring_is_not_additive_but_transports() {
    let sys = TableSystem::from_ring(RingSpec::squaring_z4()).unwrap();
    let map = ring_tower_instance(&sys).unwrap();
    let bottom = &map.fiber[&(0, 0)];
    assert!(!bottom.is_additive().unwrap());
    // Q_x(y) = 2xy + y² on the ideal (e): with x = 1 and y = e this is 2e.
    let q = map.q_shifted(&[1, 0], 1, &[0, 1]).unwrap();
    assert_eq!(q, vec![0, 2]);
    let cert = transport_cycles(&map, 2, 0, 0, &[1, 0]).unwrap();
    assert!(cert.holds());
}

#[test]
fn table_schema_errors() {
    let mut json = TableSystem::from_ring(RingSpec::squaring_z4()).unwrap().json;
    json.power.remove("2");
    assert!(matches!(TableSystem::from_json(json), Err(TransportError::Schema(_))));

    let mut json = TableSystem::from_ring(RingSpec::squaring_z4()).unwrap().json;
    json.mul.pop();
    assert!(matches!(TableSystem::from_json(json), Err(TransportError::Schema(_))));

    let mut json = TableSystem::from_ring(RingSpec::squaring_z4()).unwrap().json;
    json.derivation = None;
    let sys = TableSystem::from_json(json).unwrap();
    assert!(matches!(ring_tower_instance(&sys), Err(TransportError::Schema(_))));

    let json = TableSystem::from_ring(RingSpec::squaring_z4()).unwrap().json;
    let text = serde_json::to_string(&json).unwrap();
    let back: sseq::transport::TableSystemJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back, json);
}

#[test]
fn level_maps_tabulate_their_values() {
    let sys = TableSystem::from_ring(RingSpec::squaring_z4()).unwrap();
    let m = sys.module.clone();
    let sq = LevelMap::tabulate(&m, &m, sys.elements.clone(), |x| sys.power(2, &x.to_vec())).unwrap();
    assert_eq!(sq.apply(&[2, 1]).unwrap(), vec![0, 0]);
    assert_eq!(sq.apply(&[1, 1]).unwrap(), vec![1, 2]);
    assert_eq!(sq.domain().unwrap().len(), 16);
}
