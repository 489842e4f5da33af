use std::collections::{HashMap, HashSet, VecDeque};

use serde::Deserialize;

use super::perm::Perm;
use super::RepError;

/// Largest group the constructor will enumerate.
pub const ORDER_BOUND: usize = 10_000;
/// Multiplication tables are cached up to this order.
const TABLE_BOUND: usize = 1024;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A subgroup as the sorted list of its element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }
}

/// A permutation group with its elements enumerated. Element `0` is the
/// identity and products are `g·h = g ∘ h`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: Option<Vec<u32>>,
    inverse: Vec<usize>,
    element_order: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    exponent: usize,
}

/// Group description as read from JSON.
#[derive(Clone, Debug, Deserialize, serde::Serialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupJson {
    pub fn to_group(&self) -> Result<FiniteGroup, RepError> {
        let gens = self.generators.iter().map(|g| Perm::parse(g, self.degree)).collect::<Result<Vec<_>, _>>()?;
        FiniteGroup::from_generators(self.degree, gens)
    }
}

impl FiniteGroup {
    /// Enumerate the group generated by `generators` on `degree` points.
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self, RepError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(RepError::Parse(format!("generator {g} does not act on {degree} points")));
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut next = 0;
        while next < elements.len() {
            for g in &generators {
                let y = g.compose(&elements[next]);
                if !index.contains_key(&y) {
                    if elements.len() == ORDER_BOUND {
                        return Err(RepError::OrderBoundExceeded { order: elements.len() + 1, bound: ORDER_BOUND });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            next += 1;
        }
        let n = elements.len();
        let inverse: Vec<usize> = elements.iter().map(|g| index[&g.inverse()]).collect();
        let table = (n <= TABLE_BOUND).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)] as u32);
                }
            }
            t
        });
        let mut group = FiniteGroup {
            degree,
            generators,
            elements,
            index,
            table,
            inverse,
            element_order: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            exponent: 1,
        };
        group.element_order = (0..n).map(|g| group.order_of(g)).collect();
        group.exponent = group.element_order.iter().fold(1, |e, &o| lcm(e, o));
        group.build_classes();
        Ok(group)
    }

    fn order_of(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    fn build_classes(&mut self) {
        let n = self.order();
        let gens: Vec<usize> = self.generators.iter().map(|g| self.index[g]).collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[start] = c;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.mul(self.mul(g, x), self.inverse[g]);
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass { representative: start, members });
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, g: usize) -> &Perm {
        &self.elements[g]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let o = self.element_order[g] as i64;
        let e = k.rem_euclid(o);
        (0..e).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.element_order[g]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Class of `g^k` for `g` in class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of[self.pow(self.classes[c].representative, k)]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ConjugacyClass::size).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    /// Nilpotent iff, for every prime `p`, the elements of `p`-power order
    /// number exactly the `p`-part of `|G|`.
    pub fn is_nilpotent(&self) -> bool {
        prime_factors(self.order()).into_iter().all(|p| {
            let part = p_part(self.order(), p);
            self.element_order.iter().filter(|&&o| p_part(o, p) == o).count() == part
        })
    }

    /// Closure of a set of elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut elements = vec![0];
        let mut next = 0;
        while next < elements.len() {
            let x = elements[next];
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    elements.push(y);
                }
            }
            next += 1;
        }
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order()).collect() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// Subgroup generated by permutations given in cycle notation.
    pub fn subgroup_from_perms(&self, perms: &[Perm]) -> Result<Subgroup, RepError> {
        let gens = perms
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| RepError::NotASubgroup(format!("{p} is not in the group"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.generate(&gens))
    }

    pub fn conjugate(&self, k: &Subgroup, g: usize) -> Subgroup {
        let gi = self.inverse[g];
        let mut elements: Vec<usize> = k.elements.iter().map(|&x| self.mul(self.mul(g, x), gi)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn normalizer(&self, k: &Subgroup) -> Subgroup {
        let elements =
            (0..self.order()).filter(|&g| k.elements.iter().all(|&x| k.contains(self.mul(self.mul(g, x), self.inverse[g])))).collect();
        Subgroup { elements }
    }

    pub fn centralizer(&self, k: &Subgroup) -> Subgroup {
        let elements = (0..self.order()).filter(|&g| k.elements.iter().all(|&x| self.mul(g, x) == self.mul(x, g))).collect();
        Subgroup { elements }
    }

    pub fn is_normal(&self, k: &Subgroup) -> bool {
        self.normalizer(k).order() == self.order()
    }

    /// Distinct cyclic subgroups, smallest first, each with a generator.
    pub fn cyclic_subgroups(&self) -> Vec<(usize, Subgroup)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in 0..self.order() {
            let c = self.generate(&[g]);
            if seen.insert(c.clone()) {
                out.push((g, c));
            }
        }
        out.sort_by_key(|(g, c)| (c.order(), *g));
        out
    }

    /// Every subgroup, by joining cyclic subgroups until nothing new appears.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>, RepError> {
        if self.order() > 64 {
            return Err(RepError::OrderBoundExceeded { order: self.order(), bound: 64 });
        }
        let cyclic = self.cyclic_subgroups();
        let mask = |s: &Subgroup| s.elements.iter().fold(0u64, |m, &g| m | (1 << g));
        let mut found: HashMap<u64, (Vec<usize>, Subgroup)> = HashMap::new();
        let mut queue = VecDeque::new();
        for (g, c) in &cyclic {
            let m = mask(c);
            if !found.contains_key(&m) {
                found.insert(m, (vec![*g], c.clone()));
                queue.push_back(m);
            }
        }
        while let Some(m) = queue.pop_front() {
            let (gens, _) = found[&m].clone();
            for (g, c) in &cyclic {
                if mask(c) & !m == 0 {
                    continue;
                }
                let mut more = gens.clone();
                more.push(*g);
                let joined = self.generate(&more);
                let jm = mask(&joined);
                if !found.contains_key(&jm) {
                    found.insert(jm, (more, joined));
                    queue.push_back(jm);
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_values().map(|(_, s)| s).collect();
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        Ok(all)
    }

    /// One representative per conjugacy class of subgroups.
    pub fn subgroup_classes(&self) -> Result<Vec<Subgroup>, RepError> {
        let all = self.all_subgroups()?;
        let mut seen = HashSet::new();
        let mut reps = Vec::new();
        for h in all {
            if seen.contains(&h) {
                continue;
            }
            for g in 0..self.order() {
                seen.insert(self.conjugate(&h, g));
            }
            reps.push(h);
        }
        Ok(reps)
    }

    /// Left cosets `gK`, as a representative per coset and the coset of each element.
    pub fn left_cosets(&self, k: &Subgroup) -> (Vec<usize>, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &x in &k.elements {
                coset_of[self.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        (reps, coset_of)
    }

    /// For `K` normal with `G/K` cyclic of prime-power order `p^n`: `(p, n, N)`
    /// with `N` the unique subgroup of index `p` containing `K`.
    pub fn cyclic_prime_power_quotient(&self, k: &Subgroup) -> Option<(usize, u32, Subgroup)> {
        if !self.is_normal(k) {
            return None;
        }
        let index = self.order() / k.order();
        let primes = prime_factors(index);
        if primes.len() != 1 {
            return None;
        }
        let p = primes[0];
        let n = (index as f64).log(p as f64).round() as u32;
        let quotient_order = |g: usize| {
            let mut x = g;
            let mut m = 1;
            while !k.contains(x) {
                x = self.mul(x, g);
                m += 1;
            }
            m
        };
        let g = (0..self.order()).find(|&g| quotient_order(g) == index)?;
        let mut gens = k.elements.clone();
        gens.push(self.pow(g, p as i64));
        Some((p, n, self.generate(&gens)))
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn p_part(mut n: usize, p: usize) -> usize {
    let mut part = 1;
    while n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}
