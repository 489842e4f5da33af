use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fgab::{CoeffRing, Elem, FgModule};

use super::system::PowerSystem;
use super::TransportError;

/// A power system on a finite abelian group, given by complete value tables.
///
/// Elements are indexed in the order of [`FgModule::elements`] for the group
/// `⊕ ℤ/factors[i]`. Keys of `power`, `euler` and `transfer` are the index
/// `i` as a decimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableSystemJson {
    #[serde(default)]
    pub name: Option<String>,
    pub factors: Vec<Elem>,
    pub m: u32,
    pub unit: usize,
    pub mul: Vec<Vec<usize>>,
    /// `P^i` for `1 ≤ i ≤ m`.
    pub power: BTreeMap<String, Vec<usize>>,
    /// The Euler class `a_i` for `1 ≤ i ≤ m`.
    pub euler: BTreeMap<String, usize>,
    /// `tr_i` for `1 ≤ i < m`; `tr_m` is the identity.
    pub transfer: BTreeMap<String, Vec<usize>>,
    /// Elements allowed in degrees `t ≥ 1`; must form a subgroup.
    pub positive: Vec<usize>,
    /// An additive map into the positive part, used as the boundary of the
    /// two-stage tower built on this system.
    #[serde(default)]
    pub derivation: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct TableSystem {
    pub json: TableSystemJson,
    pub module: FgModule,
    pub elements: Vec<Vec<Elem>>,
    index: BTreeMap<Vec<Elem>, usize>,
}

/// Parameters of a truncated ring `ℤ/N` or `ℤ/N[e]/(e²)` with power
/// operations `P^i(x) = x^i`, `tr_i = C(m,i)`, `a_1 = 1`, `a_i = 0` for
/// `1 < i < m` and `a_m` given (for `m = 1` the given class is `a_1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub modulus: Elem,
    pub dual: bool,
    pub m: u32,
    /// `a_m = u + v·e`.
    pub euler_top: (Elem, Elem),
    /// Restrict degrees `t ≥ 1` to the ideal `(e)`.
    pub ideal_positive: bool,
    /// `δ(u + v·e) = c·v·e`.
    pub derivation: Elem,
}

impl RingSpec {
    /// `Q(y) = y²` on `ℤ/4[e]/(e²)` with positive degrees in `(e)`, so that
    /// `Q_x(y) = 2xy + y²`.
    pub fn squaring_z4() -> Self {
        RingSpec { modulus: 4, dual: true, m: 2, euler_top: (1, 0), ideal_positive: true, derivation: 1 }
    }

    /// A deterministic family of valid systems at `p = 2, 3`: `N = p^k`,
    /// `p·a_m = 0` unless the positive part squares to zero.
    pub fn family() -> Vec<RingSpec> {
        let mut out = Vec::new();
        for (p, ks) in [(2, vec![1u32, 2, 3]), (3, vec![1, 2])] {
            for k in ks {
                let n = (p as Elem).pow(k);
                let low = n / p as Elem;
                for ideal_positive in [false, true] {
                    for euler_top in [(low, 0), (low, low)] {
                        for derivation in [1, p as Elem] {
                            out.push(RingSpec { modulus: n, dual: true, m: p, euler_top, ideal_positive, derivation });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn name(&self) -> String {
        let ring = if self.dual { format!("Z/{}[e]/(e^2)", self.modulus) } else { format!("Z/{}", self.modulus) };
        format!(
            "{ring}, m = {}, a = {}+{}e, positive {}, delta = {}",
            self.m,
            self.euler_top.0,
            self.euler_top.1,
            if self.ideal_positive { "(e)" } else { "all" },
            self.derivation
        )
    }
}

fn binomial(n: u32, k: u32) -> Elem {
    (0..k as Elem).fold(1, |c, j| c * (n as Elem - j) / (j + 1))
}

impl TableSystem {
    pub fn from_json(json: TableSystemJson) -> Result<Self, TransportError> {
        let schema = |m: String| TransportError::Schema(m);
        let module = FgModule::from_normal_factors(CoeffRing::Integers, json.factors.clone())
            .map_err(|e| schema(format!("factors: {e}")))?;
        if !module.is_finite() {
            return Err(schema("the group must be finite".into()));
        }
        let elements = module.elements()?;
        let n = elements.len();
        let index = elements.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let unary = |what: &str, t: &[usize]| -> Result<(), TransportError> {
            if t.len() != n || t.iter().any(|&v| v >= n) {
                return Err(schema(format!("{what} must list {n} element indices")));
            }
            Ok(())
        };
        if json.m == 0 {
            return Err(schema("m must be at least 1".into()));
        }
        if json.unit >= n || json.mul.len() != n {
            return Err(schema("unit or mul table has the wrong size".into()));
        }
        for row in &json.mul {
            unary("each mul row", row)?;
        }
        for i in 1..=json.m {
            let key = i.to_string();
            unary(&format!("power[{i}]"), json.power.get(&key).ok_or_else(|| schema(format!("power[{i}] missing")))?)?;
            if *json.euler.get(&key).ok_or_else(|| schema(format!("euler[{i}] missing")))? >= n {
                return Err(schema(format!("euler[{i}] is not an element index")));
            }
            if i < json.m {
                let t = json.transfer.get(&key).ok_or_else(|| schema(format!("transfer[{i}] missing")))?;
                unary(&format!("transfer[{i}]"), t)?;
            }
        }
        if json.positive.iter().any(|&v| v >= n) {
            return Err(schema("positive lists an out-of-range index".into()));
        }
        if let Some(d) = &json.derivation {
            unary("derivation", d)?;
        }
        let sys = TableSystem { json, module, elements, index };
        sys.check_structure()?;
        Ok(sys)
    }

    pub fn from_ring(spec: RingSpec) -> Result<Self, TransportError> {
        let n = spec.modulus;
        if n < 2 || spec.m == 0 {
            return Err(TransportError::Schema("need modulus ≥ 2 and m ≥ 1".into()));
        }
        let factors = if spec.dual { vec![n, n] } else { vec![n] };
        let module = FgModule::from_normal_factors(CoeffRing::Integers, factors.clone())?;
        let elements = module.elements()?;
        let pair = |v: &[Elem]| (v[0], if spec.dual { v[1] } else { 0 });
        let encode = |(u, v): (Elem, Elem)| -> Vec<Elem> {
            if spec.dual {
                vec![u.rem_euclid(n), v.rem_euclid(n)]
            } else {
                vec![u.rem_euclid(n)]
            }
        };
        let index: BTreeMap<Vec<Elem>, usize> = elements.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let idx = |x: (Elem, Elem)| index[&encode(x)];
        let mul = |(a, b): (Elem, Elem), (c, d): (Elem, Elem)| ((a * c) % n, (a * d + b * c) % n);
        let pow = |x: (Elem, Elem), i: u32| (0..i).fold((1, 0), |acc, _| mul(acc, x));
        let all: Vec<(Elem, Elem)> = elements.iter().map(|v| pair(v)).collect();

        let mul_table = all.iter().map(|&x| all.iter().map(|&y| idx(mul(x, y))).collect()).collect();
        let mut power = BTreeMap::new();
        let mut euler = BTreeMap::new();
        let mut transfer = BTreeMap::new();
        for i in 1..=spec.m {
            power.insert(i.to_string(), all.iter().map(|&x| idx(pow(x, i))).collect());
            let a = match i {
                i if i == spec.m => spec.euler_top,
                1 => (1, 0),
                _ => (0, 0),
            };
            euler.insert(i.to_string(), idx(a));
            if i < spec.m {
                let c = binomial(spec.m, i) % n;
                transfer.insert(i.to_string(), all.iter().map(|&(u, v)| idx((c * u, c * v))).collect());
            }
        }
        let positive = all
            .iter()
            .filter(|(u, _)| !(spec.ideal_positive && spec.dual) || *u == 0)
            .map(|&x| idx(x))
            .collect();
        let derivation = Some(all.iter().map(|&(_, v)| idx((0, if spec.dual { spec.derivation * v } else { 0 }))).collect());
        Self::from_json(TableSystemJson {
            name: Some(spec.name()),
            factors,
            m: spec.m,
            unit: idx((1, 0)),
            mul: mul_table,
            power,
            euler,
            transfer,
            positive,
            derivation,
        })
    }

    pub fn to_json(&self) -> &TableSystemJson {
        &self.json
    }

    fn at(&self, x: &[Elem]) -> Result<usize, TransportError> {
        let key = self.module.reduce(x)?;
        self.index.get(&key).copied().ok_or_else(|| TransportError::Schema(format!("{x:?} is not an element")))
    }

    pub fn element(&self, i: usize) -> Vec<Elem> {
        self.elements[i].clone()
    }

    pub fn positive(&self) -> Vec<Vec<Elem>> {
        self.json.positive.iter().map(|&i| self.element(i)).collect()
    }

    pub fn derivation(&self, x: &[Elem]) -> Result<Option<Vec<Elem>>, TransportError> {
        let i = self.at(x)?;
        Ok(self.json.derivation.as_ref().map(|d| self.element(d[i])))
    }

    /// The positive part is a subgroup and the derivation is additive with
    /// values in it.
    fn check_structure(&self) -> Result<(), TransportError> {
        let bad = |m: &str| TransportError::DataInconsistent(m.into());
        let pos: std::collections::BTreeSet<usize> = self.json.positive.iter().copied().collect();
        let zero = self.at(&self.module.zero_element())?;
        if !pos.contains(&zero) {
            return Err(bad("the positive part must contain 0"));
        }
        for &x in &pos {
            for &y in &pos {
                let s = self.at(&self.module.add(&self.elements[x], &self.elements[y])?)?;
                if !pos.contains(&s) {
                    return Err(bad("the positive part is not closed under addition"));
                }
            }
        }
        if let Some(d) = &self.json.derivation {
            if d.iter().any(|v| !pos.contains(v)) {
                return Err(bad("the derivation leaves the positive part"));
            }
            for (i, x) in self.elements.iter().enumerate() {
                for (j, y) in self.elements.iter().enumerate() {
                    let s = self.at(&self.module.add(x, y)?)?;
                    let rhs = self.module.add(&self.elements[d[i]], &self.elements[d[j]])?;
                    if self.elements[d[s]] != self.module.reduce(&rhs)? {
                        return Err(bad("the derivation is not additive"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl PowerSystem for TableSystem {
    type Value = Vec<Elem>;

    fn index(&self) -> u32 {
        self.json.m
    }

    fn power(&self, i: u32, x: &Vec<Elem>) -> Result<Vec<Elem>, TransportError> {
        if i == 0 {
            return Ok(self.element(self.json.unit));
        }
        let table = self
            .json
            .power
            .get(&i.to_string())
            .ok_or_else(|| TransportError::DegreeMismatch(format!("no power P^{i}")))?;
        Ok(self.element(table[self.at(x)?]))
    }

    fn euler(&self, i: u32, n: u32, x: &Vec<Elem>) -> Result<Vec<Elem>, TransportError> {
        let a = self.json.euler.get(&i.to_string()).ok_or_else(|| TransportError::DegreeMismatch(format!("no a_{i}")))?;
        let mut y = self.at(x)?;
        for _ in 0..n {
            y = self.json.mul[*a][y];
        }
        Ok(self.element(y))
    }

    fn transfer(&self, i: u32, x: &Vec<Elem>) -> Result<Vec<Elem>, TransportError> {
        if i == self.json.m {
            return Ok(self.module.reduce(x)?);
        }
        let table = self
            .json
            .transfer
            .get(&i.to_string())
            .ok_or_else(|| TransportError::DegreeMismatch(format!("no transfer tr_{i}")))?;
        Ok(self.element(table[self.at(x)?]))
    }

    fn product(&self, x: &Vec<Elem>, y: &Vec<Elem>) -> Result<Vec<Elem>, TransportError> {
        Ok(self.element(self.json.mul[self.at(x)?][self.at(y)?]))
    }

    fn add(&self, x: &Vec<Elem>, y: &Vec<Elem>) -> Result<Vec<Elem>, TransportError> {
        Ok(self.module.add(x, y)?)
    }

    fn neg(&self, x: &Vec<Elem>) -> Result<Vec<Elem>, TransportError> {
        Ok(self.module.scale(-1, x)?)
    }

    fn is_zero(&self, x: &Vec<Elem>) -> bool {
        self.module.is_zero_element(x).unwrap_or(false)
    }
}
