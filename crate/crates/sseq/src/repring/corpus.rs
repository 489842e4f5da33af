//! Small groups as permutation groups: standard families, direct and
//! semidirect products, and the list of all groups of order at most 24 up to
//! isomorphism.

use std::collections::BTreeMap;

use super::group::FiniteGroup;
use super::perm::Perm;
use super::RepError;

/// A group in the corpus with a readable name.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: FiniteGroup,
}

fn perm(images: Vec<usize>) -> Perm {
    Perm::from_images(images.into_iter().map(|i| i as u32).collect()).expect("a permutation by construction")
}

/// Left regular representation of a group given by its multiplication.
pub fn from_multiplication(order: usize, mul: impl Fn(usize, usize) -> usize, gens: &[usize]) -> Result<FiniteGroup, RepError> {
    let perms = gens.iter().map(|&g| perm((0..order).map(|x| mul(g, x)).collect())).collect();
    FiniteGroup::from_generators(order, perms)
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let gens = if n > 1 { vec![perm((0..n).map(|i| (i + 1) % n).collect())] } else { vec![] };
    FiniteGroup::from_generators(n, gens).expect("small")
}

/// Dihedral group of order `2n` acting on the `n`-gon, for `n ≥ 3`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let rot = perm((0..n).map(|i| (i + 1) % n).collect());
    let refl = perm((0..n).map(|i| (n - i) % n).collect());
    FiniteGroup::from_generators(n, vec![rot, refl]).expect("small")
}

pub fn symmetric(m: usize) -> Result<FiniteGroup, RepError> {
    let mut gens = Vec::new();
    if m >= 2 {
        gens.push(perm((0..m).map(|i| (i + 1) % m).collect()));
        let mut t: Vec<usize> = (0..m).collect();
        t.swap(0, 1);
        gens.push(perm(t));
    }
    FiniteGroup::from_generators(m, gens)
}

pub fn alternating(m: usize) -> Result<FiniteGroup, RepError> {
    let gens = (2..m)
        .map(|k| {
            let mut t: Vec<usize> = (0..m).collect();
            t[0] = 1;
            t[1] = k;
            t[k] = 0;
            perm(t)
        })
        .collect();
    FiniteGroup::from_generators(m, gens)
}

/// Dicyclic group of order `4m`: `⟨a, x | a^{2m}, x² = a^m, x a x⁻¹ = a⁻¹⟩`.
/// `m = 2` gives the quaternion group of order 8.
pub fn dicyclic(m: usize) -> FiniteGroup {
    let n = 2 * m;
    // element a^i x^j has index 2i + j
    let mul = |u: usize, v: usize| {
        let (i, j, k, l) = (u / 2, u % 2, v / 2, v % 2);
        let e = if j == 0 { i + k } else { i + n - k };
        let (e, jj) = if j == 1 && l == 1 { (e + m, 0) } else { (e, j ^ l) };
        2 * (e % n) + jj
    };
    from_multiplication(4 * m, mul, &[2, 1]).expect("small")
}

/// Unitriangular `3 × 3` matrices over `𝔽_p`.
pub fn heisenberg(p: usize) -> FiniteGroup {
    let split = |u: usize| (u / (p * p), (u / p) % p, u % p);
    let mul = |u: usize, v: usize| {
        let (a, b, c) = split(u);
        let (a2, b2, c2) = split(v);
        ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
    };
    from_multiplication(p * p * p, mul, &[p * p, p]).expect("small")
}

/// `G × H` acting on the disjoint union of the two point sets.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (dg, dh) = (g.degree(), h.degree());
    let mut gens = Vec::new();
    for p in g.generators() {
        gens.push(perm((0..dg).map(|i| p.image(i)).chain(dg..dg + dh).collect()));
    }
    for p in h.generators() {
        gens.push(perm((0..dg).chain((0..dh).map(|i| dg + p.image(i))).collect()));
    }
    FiniteGroup::from_generators(dg + dh, gens).expect("order at most the product")
}

/// A short generating set: elements of largest order first, skipping any
/// already generated.
pub fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut by_order: Vec<usize> = (1..g.order()).collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(g.element_order(x)));
    let mut gens = Vec::new();
    let mut current = g.trivial();
    for x in by_order {
        if current.order() == g.order() {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = g.generate(&gens);
        }
    }
    gens
}

/// Extend `gens[i] ↦ images[i]` to a homomorphism `G → H`, as the image of
/// every element, if it is well defined.
pub fn extend_hom(g: &FiniteGroup, gens: &[usize], h: &FiniteGroup, images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut queue = vec![0];
    while let Some(x) = queue.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(s, x);
            let img = h.mul(t, map[x]);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// Every assignment of images to `gens` with orders dividing the source
/// orders, that extends to a homomorphism.
fn homomorphisms(g: &FiniteGroup, gens: &[usize], h: &FiniteGroup, candidates: &dyn Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    let choices: Vec<Vec<usize>> = gens.iter().map(|&s| candidates(s)).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; gens.len()];
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let images: Vec<usize> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_hom(g, gens, h, &images) {
            out.push(map);
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return out;
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// `Aut(N)` as permutations of the element indices of `N`.
pub fn automorphism_group(n: &FiniteGroup) -> FiniteGroup {
    let gens = generating_set(n);
    let same_order = |s: usize| (0..n.order()).filter(|&x| n.element_order(x) == n.element_order(s)).collect();
    let auts: Vec<Perm> = homomorphisms(n, &gens, n, &same_order)
        .into_iter()
        .filter(|m| {
            let mut seen = vec![false; m.len()];
            m.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        })
        .map(perm)
        .collect();
    FiniteGroup::from_generators(n.order(), auts).expect("automorphisms of a small group")
}

/// `N ⋊ H` in its regular representation on `N × H`, where `action[h]` is
/// the automorphism of `N` (as a permutation of element indices) for `h`.
pub fn semidirect(n: &FiniteGroup, h: &FiniteGroup, action: &[Perm]) -> FiniteGroup {
    let (a, b) = (n.order(), h.order());
    let mul = |u: usize, v: usize| {
        let (n1, h1) = (u / b, u % b);
        let (n2, h2) = (v / b, v % b);
        n.mul(n1, action[h1].image(n2)) * b + h.mul(h1, h2)
    };
    let mut gens: Vec<usize> = generating_set(n).into_iter().map(|x| x * b).collect();
    gens.extend(generating_set(h));
    from_multiplication(a * b, mul, &gens).expect("order at most 24 in practice")
}

fn invariants(g: &FiniteGroup) -> (usize, usize, Vec<(usize, usize)>) {
    let mut stats: Vec<(usize, usize)> = (0..g.order()).map(|x| (g.element_order(x), g.conjugacy_classes()[g.class_of(x)].size())).collect();
    stats.sort_unstable();
    (g.order(), g.class_count(), stats)
}

/// Isomorphism test: invariants first, then a search over images of a
/// generating set.
pub fn isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    if invariants(g) != invariants(h) {
        return false;
    }
    let gens = generating_set(g);
    let class_size = |grp: &FiniteGroup, x: usize| grp.conjugacy_classes()[grp.class_of(x)].size();
    let choices: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            (0..h.order())
                .filter(|&x| h.element_order(x) == g.element_order(s) && class_size(h, x) == class_size(g, s))
                .collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search_iso(g, &gens, h, &choices, &mut images)
}

fn search_iso(g: &FiniteGroup, gens: &[usize], h: &FiniteGroup, choices: &[Vec<usize>], images: &mut Vec<usize>) -> bool {
    let k = images.len();
    if k == gens.len() {
        return match extend_hom(g, gens, h, images) {
            Some(map) => {
                let mut seen = vec![false; map.len()];
                map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
            }
            None => false,
        };
    }
    // prune on the subgroup generated so far having the right order
    for &c in &choices[k] {
        images.push(c);
        let ok = g.generate(&gens[..=k]).order() == h.generate(images).order() && search_iso(g, gens, h, choices, images);
        images.pop();
        if ok {
            return true;
        }
    }
    false
}

/// Number of groups of each order up to 24.
pub const GROUP_COUNTS: [usize; 24] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];

/// All groups of order at most `max_order` (at most 24) up to isomorphism.
///
/// Every such group is cyclic, generalized quaternion, or a semidirect
/// product of two smaller groups, so closing the cyclic and quaternion
/// groups under semidirect products reaches all of them.
pub fn small_groups(max_order: usize) -> Vec<NamedGroup> {
    let mut by_order: BTreeMap<usize, Vec<NamedGroup>> = BTreeMap::new();
    by_order.insert(1, vec![NamedGroup { name: "C1".into(), group: cyclic(1) }]);
    for n in 2..=max_order {
        let mut found: Vec<NamedGroup> = Vec::new();
        let mut offer = |name: String, group: FiniteGroup| {
            if group.order() == n && !found.iter().any(|f| isomorphic(&f.group, &group)) {
                found.push(NamedGroup { name, group });
            }
        };
        offer(format!("C{n}"), cyclic(n));
        if n % 2 == 0 && n >= 6 {
            offer(format!("D{}", n / 2), dihedral(n / 2));
        }
        if n % 4 == 0 && n >= 8 {
            let name = if n == 8 { "Q8".to_string() } else if n == 16 { "Q16".to_string() } else { format!("Dic{}", n / 4) };
            offer(name, dicyclic(n / 4));
        }
        if n == 12 {
            offer("A4".into(), alternating(4).expect("small"));
        }
        if n == 24 {
            offer("S4".into(), symmetric(4).expect("small"));
        }
        let smaller: Vec<(usize, NamedGroup)> =
            by_order.iter().filter(|(&k, _)| k > 1 && n % k == 0 && k < n).flat_map(|(&k, v)| v.iter().map(move |g| (k, g.clone()))).collect();
        for (k, a) in &smaller {
            for (_, b) in smaller.iter().filter(|(j, _)| k * j == n && k <= j) {
                offer(format!("{} x {}", a.name, b.name), direct_product(&a.group, &b.group));
            }
        }
        for (k, normal) in &smaller {
            let aut = automorphism_group(&normal.group);
            for (_, top) in smaller.iter().filter(|(j, _)| k * j == n) {
                let gens = generating_set(&top.group);
                let dividing = |s: usize| {
                    (0..aut.order()).filter(|&x| top.group.element_order(s) % aut.element_order(x) == 0).collect()
                };
                let homs = homomorphisms(&top.group, &gens, &aut, &dividing);
                for (idx, map) in homs.into_iter().enumerate().filter(|(_, m)| m.iter().any(|&x| x != 0)) {
                    let action: Vec<Perm> = map.iter().map(|&x| aut.element(x).clone()).collect();
                    offer(format!("{} : {} #{idx}", normal.name, top.name), semidirect(&normal.group, &top.group, &action));
                }
            }
        }
        by_order.insert(n, found);
    }
    let mut out: Vec<NamedGroup> = by_order.into_values().flatten().collect();
    // drop the hom index wherever the name is already unambiguous
    let base = |name: &str| name.rsplit_once(" #").map_or(name.to_string(), |(b, _)| b.to_string());
    let bases: Vec<String> = out.iter().map(|g| base(&g.name)).collect();
    for (g, b) in out.iter_mut().zip(&bases) {
        if bases.iter().filter(|x| *x == b).count() == 1 {
            g.name = b.clone();
        }
        g.name = familiar_name(&g.name, &g.group);
    }
    out
}

fn familiar_name(name: &str, g: &FiniteGroup) -> String {
    let involutions = (0..g.order()).filter(|&x| g.element_order(x) == 2).count();
    let renamed = match name {
        n if n.starts_with("C8 : C2") => if involutions == 5 { "SD16" } else { "M16" },
        "D3" => "S3",
        "D4 : C2" => "Pauli",
        "C3 : D3" => "(C3 x C3) : C2",
        "C5 : C4" => "F20",
        "C7 : C3" => "F21",
        "Q8 : C3" => "SL(2,3)",
        "C2 x C2 : C4" => "(C2 x C2) : C4",
        other => other,
    };
    renamed.to_string()
}

/// The test corpus: all groups of order at most 24, plus `C3 × C3` under its
/// familiar name and the Heisenberg group of order 27.
pub fn corpus() -> Vec<NamedGroup> {
    let mut all = small_groups(24);
    for g in &mut all {
        if g.name == "C2 x C2" {
            g.name = "V4".into();
        }
    }
    all.push(NamedGroup { name: "C3 x C3 (natural)".into(), group: direct_product(&cyclic(3), &cyclic(3)) });
    all.push(NamedGroup { name: "Heis27".into(), group: heisenberg(3) });
    all
}

/// Look up a familiar group by name: `C<n>`, `D<n>` (order `2n`), `Q8`,
/// `Dic<m>`, `S<m>`, `A<m>`, `Heis27`, `V4`, `C3xC3`, `C2xC4`.
pub fn named(name: &str) -> Result<FiniteGroup, RepError> {
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "Q8" => return Ok(dicyclic(2)),
        "Q16" => return Ok(dicyclic(4)),
        "V4" | "C2xC2" => return Ok(direct_product(&cyclic(2), &cyclic(2))),
        "C3xC3" => return Ok(direct_product(&cyclic(3), &cyclic(3))),
        "C2xC4" => return Ok(direct_product(&cyclic(2), &cyclic(4))),
        "Heis27" => return Ok(heisenberg(3)),
        _ => {}
    }
    if let Some(m) = num("Dic") {
        return Ok(dicyclic(m));
    }
    if let Some(n) = num("C").filter(|&n| n >= 1) {
        return Ok(cyclic(n));
    }
    if let Some(n) = num("D").filter(|&n| n >= 3) {
        return Ok(dihedral(n));
    }
    if let Some(m) = num("S").filter(|&m| m >= 1) {
        return symmetric(m);
    }
    if let Some(m) = num("A").filter(|&m| m >= 1) {
        return alternating(m);
    }
    Err(RepError::Parse(format!("unknown group name {name:?}")))
}
