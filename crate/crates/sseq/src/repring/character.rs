use super::Rational;
use serde::Serialize;

use super::group::{FiniteGroup, Subgroup};
use super::perm::Perm;
use super::RepError;

/// A rational-valued function on conjugacy classes, in the class order of
/// its group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Rational>,
}

impl ClassFunction {
    pub fn from_ints<T: Into<i128>>(values: impl IntoIterator<Item = T>) -> Self {
        ClassFunction { values: values.into_iter().map(|v| Rational::from_integer(v.into())).collect() }
    }

    pub fn constant(value: i64, classes: usize) -> Self {
        Self::from_ints(std::iter::repeat(value).take(classes))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == Rational::from_integer(0))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Rational, Rational) -> Rational) -> Self {
        assert_eq!(self.len(), other.len(), "class functions on different groups");
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: Rational) -> Self {
        ClassFunction { values: self.values.iter().map(|&a| a * c).collect() }
    }

    /// Values as integers, when they all are.
    pub fn as_integers(&self) -> Option<Vec<i128>> {
        self.values.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
    }

    /// `⟨a, b⟩ = |G|⁻¹ Σ_g a(g) b(g⁻¹)`.
    pub fn inner_product(&self, other: &Self, group: &FiniteGroup) -> Rational {
        let total: Rational = group
            .conjugacy_classes()
            .iter()
            .enumerate()
            .map(|(c, class)| {
                let inv = group.class_of(group.inv(class.representative));
                Rational::from_integer(class.size() as i128) * self.values[c] * other.values[inv]
            })
            .sum();
        total / Rational::from_integer(group.order() as i128)
    }
}

/// A finite `G`-set, as the permutation of each group element.
#[derive(Clone, Debug)]
pub struct GSet {
    pub size: usize,
    action: Vec<Perm>,
}

impl GSet {
    /// The points the group itself permutes.
    pub fn natural(group: &FiniteGroup) -> Self {
        GSet { size: group.degree(), action: (0..group.order()).map(|g| group.element(g).clone()).collect() }
    }

    /// Left cosets `G/K` with `G` acting by left multiplication.
    pub fn cosets(group: &FiniteGroup, k: &Subgroup) -> Self {
        let (reps, coset_of) = group.left_cosets(k);
        let action = (0..group.order())
            .map(|g| {
                let images = reps.iter().map(|&r| coset_of[group.mul(g, r)] as u32).collect();
                Perm::from_images(images).expect("left multiplication permutes cosets")
            })
            .collect();
        GSet { size: reps.len(), action }
    }

    pub fn regular(group: &FiniteGroup) -> Self {
        Self::cosets(group, &group.trivial())
    }

    /// The action where the `i`-th generator of the group acts as `images[i]`.
    pub fn from_generator_images(group: &FiniteGroup, images: &[Perm]) -> Result<Self, RepError> {
        let gens: Vec<usize> = group.generators().iter().map(|p| group.index_of(p).expect("generator")).collect();
        if images.len() != gens.len() {
            return Err(RepError::NotRealized(format!("{} images for {} generators", images.len(), gens.len())));
        }
        let size = images.first().map_or(0, Perm::degree);
        if images.iter().any(|p| p.degree() != size) {
            return Err(RepError::NotRealized("images act on different point sets".into()));
        }
        let mut action: Vec<Option<Perm>> = vec![None; group.order()];
        action[0] = Some(Perm::identity(size));
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for (&s, img) in gens.iter().zip(images) {
                let y = group.mul(s, x);
                let p = img.compose(action[x].as_ref().expect("visited"));
                match &action[y] {
                    None => {
                        action[y] = Some(p);
                        queue.push(y);
                    }
                    Some(q) if *q != p => {
                        return Err(RepError::NotRealized("generator images do not define an action".into()));
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(GSet { size, action: action.into_iter().map(|p| p.expect("generated")).collect() })
    }

    pub fn action(&self, g: usize) -> &Perm {
        &self.action[g]
    }
}

/// `ℂ[X]`, or with `reduced` set the complement `ℂ̃[X]` of the constants,
/// with explicit integer matrices.
#[derive(Clone, Debug)]
pub struct Realized {
    pub gset: GSet,
    pub reduced: bool,
}

impl Realized {
    pub fn permutation(gset: GSet) -> Self {
        Realized { gset, reduced: false }
    }

    pub fn reduced(gset: GSet) -> Result<Self, RepError> {
        if gset.size == 0 {
            return Err(RepError::NotRealized("the empty set has no reduced representation".into()));
        }
        Ok(Realized { gset, reduced: true })
    }

    pub fn dim(&self) -> usize {
        self.gset.size - usize::from(self.reduced)
    }

    /// The matrix of `g`; in the reduced case on the basis `x_i − x_last`.
    pub fn matrix(&self, g: usize) -> Vec<Vec<i128>> {
        let p = self.gset.action(g);
        let n = self.gset.size;
        let d = self.dim();
        let mut m = vec![vec![0i128; d]; d];
        for j in 0..d {
            let i = p.image(j);
            if i < d {
                m[i][j] += 1;
            }
            if self.reduced {
                let last = p.image(n - 1);
                if last < d {
                    m[last][j] -= 1;
                }
            }
        }
        m
    }

    /// `det(I + t·M_g)` from the cycle lengths of `g`.
    fn lambda_polynomial(&self, g: usize) -> Vec<i128> {
        lambda_polynomial(&self.gset.action(g).cycle_type(), self.reduced)
    }
}

/// `∏_cycles (1 − (−t)^ℓ)`, divided by `1 + t` when reduced.
fn lambda_polynomial(cycle_type: &[usize], reduced: bool) -> Vec<i128> {
    let mut poly = vec![1i128];
    for &l in cycle_type {
        let mut next = vec![0i128; poly.len() + l];
        let top = if l % 2 == 0 { -1 } else { 1 };
        for (i, &c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + l] += top * c;
        }
        poly = next;
    }
    if reduced {
        // synthetic division by 1 + t
        let mut q = vec![0i128; poly.len() - 1];
        let mut carry = 0;
        for i in 0..q.len() {
            q[i] = poly[i] - carry;
            carry = q[i];
        }
        debug_assert_eq!(poly[poly.len() - 1], carry);
        poly = q;
    }
    poly
}

/// `χ(ℂ[X], g) = |X^g|`.
pub fn perm_character(group: &FiniteGroup, x: &GSet) -> ClassFunction {
    ClassFunction::from_ints(
        group.conjugacy_classes().iter().map(|c| x.action(c.representative).fixed_points() as i64),
    )
}

/// `χ(Λ^n V, −)` for `n = 0 … dim V`.
pub fn exterior_powers(group: &FiniteGroup, v: &Realized) -> Vec<ClassFunction> {
    let polys: Vec<Vec<i128>> = group.conjugacy_classes().iter().map(|c| v.lambda_polynomial(c.representative)).collect();
    (0..=v.dim()).map(|n| ClassFunction::from_ints(polys.iter().map(|p| p[n]))).collect()
}

/// One term `coeff · Λ^n V` of a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaTerm {
    pub coeff: i64,
    pub n: usize,
}

/// A class function with an integer combination of exterior powers of a
/// representation that produces it.
#[derive(Clone, Debug)]
pub struct VirtualCharacter {
    pub character: ClassFunction,
    pub certificate: Vec<LambdaTerm>,
    /// `χ(Λ^n V)` for every `n` the certificate may use.
    pub lambda: Vec<ClassFunction>,
}

impl VirtualCharacter {
    pub fn evaluate_certificate(&self) -> ClassFunction {
        let zero = ClassFunction::constant(0, self.character.len());
        self.certificate
            .iter()
            .fold(zero, |acc, t| acc.add(&self.lambda[t.n].scale(Rational::from_integer(t.coeff.into()))))
    }

    pub fn certificate_holds(&self) -> bool {
        self.evaluate_certificate() == self.character
    }
}

fn alternating_sum(lambda: Vec<ClassFunction>, classes: usize) -> VirtualCharacter {
    let certificate: Vec<LambdaTerm> =
        (0..lambda.len()).map(|n| LambdaTerm { coeff: if n % 2 == 0 { 1 } else { -1 }, n }).collect();
    let mut v = VirtualCharacter { character: ClassFunction::constant(0, classes), certificate, lambda };
    v.character = v.evaluate_certificate();
    v
}

/// `e(V) = Σ_n (−1)^n Λ^n V`.
pub fn euler_class(group: &FiniteGroup, v: &Realized) -> VirtualCharacter {
    alternating_sum(exterior_powers(group, v), group.class_count())
}

/// Both sides of `χ(e(V), g) = det(1 − M_g)`: the alternating sum of
/// exterior power characters, and a determinant of the explicit matrix.
pub fn euler_character_identity(group: &FiniteGroup, v: &Realized, g: usize) -> (i128, i128) {
    let lambda = exterior_powers(group, v);
    let c = group.class_of(g);
    let lhs = lambda
        .iter()
        .enumerate()
        .map(|(n, x)| {
            let val = x.values[c].to_integer();
            if n % 2 == 0 {
                val
            } else {
                -val
            }
        })
        .sum();
    let m = v.matrix(g);
    let d = m.len();
    let one_minus: Vec<Vec<i128>> =
        (0..d).map(|i| (0..d).map(|j| i128::from(i == j) - m[i][j]).collect()).collect();
    (lhs, determinant(one_minus))
}

/// Fraction-free (Bareiss) determinant.
pub(crate) fn determinant(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

/// `e(Q̃[G/K])`.
pub fn euler_gset(group: &FiniteGroup, k: &Subgroup) -> VirtualCharacter {
    let v = Realized::reduced(GSet::cosets(group, k)).expect("G/K is nonempty");
    euler_class(group, &v)
}

/// `ψ^k x (g) = x(g^k)`.
pub fn adams_operation(group: &FiniteGroup, k: i64, x: &ClassFunction) -> ClassFunction {
    ClassFunction { values: (0..group.class_count()).map(|c| x.values[group.power_class(c, k)]).collect() }
}

/// A class function on `Σ_m`, indexed by cycle types.
#[derive(Clone, Debug)]
pub struct SymmetricClassFunction {
    pub m: usize,
    /// Cycle types, parts in decreasing order.
    pub partitions: Vec<Vec<usize>>,
    pub class_sizes: Vec<u64>,
    pub euler: VirtualCharacter,
}

impl SymmetricClassFunction {
    pub fn value_at(&self, cycle_type: &[usize]) -> Option<Rational> {
        let mut t = cycle_type.to_vec();
        t.sort_unstable_by(|a, b| b.cmp(a));
        self.partitions.iter().position(|p| *p == t).map(|i| self.euler.character.values[i])
    }
}

fn partitions(m: usize, largest: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    (1..=largest.min(m))
        .rev()
        .flat_map(|first| {
            partitions(m - first, first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `e(ρ̄_m)` for the reduced permutation representation of `Σ_m` on `m`
/// points, computed on cycle types so `Σ_8` need not be enumerated.
pub fn bott_power_euler(m: usize) -> Result<SymmetricClassFunction, RepError> {
    if m > 8 {
        return Err(RepError::OrderBoundExceeded { order: factorial(m.min(20)) as usize, bound: 40_320 });
    }
    if m == 0 {
        return Err(RepError::NotRealized("Σ_0 has no points".into()));
    }
    let parts = partitions(m, m);
    let class_sizes = parts
        .iter()
        .map(|p| {
            let mut denom = 1u64;
            for len in 1..=m {
                let a = p.iter().filter(|&&l| l == len).count();
                denom *= (len as u64).pow(a as u32) * factorial(a);
            }
            factorial(m) / denom
        })
        .collect();
    let polys: Vec<Vec<i128>> = parts.iter().map(|p| lambda_polynomial(p, true)).collect();
    let lambda = (0..m).map(|n| ClassFunction::from_ints(polys.iter().map(|p| p[n]))).collect();
    Ok(SymmetricClassFunction { m, partitions: parts.clone(), class_sizes, euler: alternating_sum(lambda, parts.len()) })
}
