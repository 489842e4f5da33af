use super::Rational;

use crate::fgab::is_prime;

use super::character::ClassFunction;
use super::group::{gcd, FiniteGroup};
use super::RepError;

/// Largest group whose table is computed.
const TABLE_ORDER_BOUND: usize = 256;

/// Irreducible characters computed over `𝔽_q` with `q ≡ 1 mod exponent`,
/// where `q` is large enough that every value is determined by its residue.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub q: u64,
    /// `values[i][c]`: the `i`-th irreducible at class `c`, modulo `q`.
    pub values: Vec<Vec<u64>>,
    pub degrees: Vec<u64>,
    /// Integer values of the rational-valued irreducibles.
    pub rational: Vec<Option<ClassFunction>>,
    /// Frobenius–Schur indicators.
    pub indicators: Vec<i64>,
    pub rational_irreducibles: Vec<RationalIrreducible>,
    order: u64,
    class_sizes: Vec<u64>,
    inverse_class: Vec<usize>,
}

/// An irreducible rational representation: `schur_index` times the sum of a
/// Galois orbit of complex irreducibles.
#[derive(Clone, Debug)]
pub struct RationalIrreducible {
    pub members: Vec<usize>,
    pub schur_index: i64,
    pub character: ClassFunction,
}

impl RationalIrreducible {
    pub fn degree(&self) -> i64 {
        self.character.values[0].to_integer() as i64
    }
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

/// Residue to the integer in `(−q/2, q/2]`.
fn lift(x: u64, q: u64) -> i64 {
    if x > q / 2 {
        x as i64 - q as i64
    } else {
        x as i64
    }
}

fn to_residue(x: Rational, q: u64) -> u64 {
    let n = x.numer().rem_euclid(q as i128) as u64;
    let d = x.denom().rem_euclid(q as i128) as u64;
    n * inv_mod(d, q) % q
}

/// Row-reduce a list of vectors; returns a basis in reduced echelon form and
/// the pivot coordinate of each basis vector.
fn echelon(mut rows: Vec<Vec<u64>>, q: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c], q);
        for x in rows[r].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..width {
                    rows[i][j] = (rows[i][j] + q - f * rows[r][j] % q) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Kernel of a square matrix, as column vectors.
fn nullspace(m: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let (rows, pivots) = echelon(m.to_vec(), q);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = (q - row[f]) % q;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI − M)`, lowest coefficient first, via
/// reduction to Hessenberg form.
fn char_poly(mut h: Vec<Vec<u64>>, q: u64) -> Vec<u64> {
    let n = h.len();
    for j in 0..n.saturating_sub(2) {
        if h[j + 1][j] == 0 {
            if let Some(i) = (j + 2..n).find(|&i| h[i][j] != 0) {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            } else {
                continue;
            }
        }
        let inv = inv_mod(h[j + 1][j], q);
        for i in j + 2..n {
            let u = h[i][j] * inv % q;
            if u == 0 {
                continue;
            }
            for c in 0..n {
                h[i][c] = (h[i][c] + q - u * h[j + 1][c] % q) % q;
            }
            for row in h.iter_mut() {
                row[j + 1] = (row[j + 1] + u * row[i]) % q;
            }
        }
    }
    // p_{m+1} = (x − h_mm) p_m − Σ_{i<m} h_im (∏_{l=i+1}^{m} h_{l,l−1}) p_i
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let mut next = vec![0u64; m + 2];
        for (k, &c) in p[m].iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % q;
            next[k] = (next[k] + q - h[m][m] * c % q) % q;
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = prod * h[i + 1][i] % q;
            let f = h[i][m] * prod % q;
            if f != 0 {
                for (k, &c) in p[i].iter().enumerate() {
                    next[k] = (next[k] + q - f * c % q) % q;
                }
            }
        }
        p.push(next);
    }
    p.pop().expect("nonempty")
}

fn roots(poly: &[u64], q: u64) -> Vec<u64> {
    (0..q)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % q) == 0)
        .collect()
}

/// Small deterministic generator for the random combinations.
struct Mixer(u64);

impl Mixer {
    fn next(&mut self, q: u64) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0 % q
    }
}

/// Dixon's method: simultaneous eigenvectors of the class multiplication
/// matrices over `𝔽_q` give the irreducible characters.
pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable, RepError> {
    let n = group.order();
    if n > TABLE_ORDER_BOUND {
        return Err(RepError::OrderBoundExceeded { order: n, bound: TABLE_ORDER_BOUND });
    }
    let k = group.class_count();
    let e = group.exponent() as u64;
    let floor = 2 * (n as u64) * (n as u64);
    let q = (1..).map(|m| m * e + 1).find(|&c| c > floor && is_prime(c)).expect("primes in progressions");

    // consts[i][j][l] = #{x ∈ K_i : x⁻¹ g_l ∈ K_j}
    let mut consts = vec![vec![vec![0u64; k]; k]; k];
    for (l, class) in group.conjugacy_classes().iter().enumerate() {
        let z = class.representative;
        for x in 0..n {
            let y = group.mul(group.inv(x), z);
            consts[group.class_of(x)][group.class_of(y)][l] += 1;
        }
    }

    // split the whole space into common eigenlines
    let mut mixer = Mixer(0x9E37_79B9_7F4A_7C15);
    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    let mut done: Vec<Vec<u64>> = Vec::new();
    for _round in 0..64 {
        let mut next_spaces = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                done.push(space.into_iter().next().expect("one vector"));
                continue;
            }
            let coeffs: Vec<u64> = (0..k).map(|_| mixer.next(q)).collect();
            let combined: Vec<Vec<u64>> = (0..k)
                .map(|j| (0..k).map(|l| (0..k).fold(0u64, |s, i| (s + coeffs[i] * consts[i][j][l]) % q)).collect())
                .collect();
            let apply = |v: &[u64]| -> Vec<u64> {
                combined.iter().map(|row| row.iter().zip(v).fold(0u64, |acc, (a, x)| (acc + a * x) % q)).collect()
            };
            let (basis, pivots) = echelon(space, q);
            let d = basis.len();
            let images: Vec<Vec<u64>> = basis.iter().map(|v| apply(v)).collect();
            // restricted matrix: column a holds the coordinates of A w_a
            let restricted: Vec<Vec<u64>> = (0..d).map(|b| (0..d).map(|a| images[a][pivots[b]]).collect()).collect();
            let poly = char_poly(restricted.clone(), q);
            for lambda in roots(&poly, q) {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|b| (0..d).map(|a| (restricted[b][a] + if a == b { q - lambda } else { 0 }) % q).collect())
                    .collect();
                let sub: Vec<Vec<u64>> = nullspace(&shifted, q)
                    .into_iter()
                    .map(|c| (0..k).map(|x| (0..d).fold(0u64, |s, a| (s + c[a] * basis[a][x]) % q)).collect())
                    .collect();
                next_spaces.push(sub);
            }
        }
        spaces = next_spaces;
        if spaces.is_empty() {
            break;
        }
    }
    if done.len() != k {
        return Err(RepError::Mismatch(format!("found {} characters for {k} classes", done.len())));
    }

    let sizes: Vec<u64> = group.class_sizes().into_iter().map(|s| s as u64).collect();
    let inverse_class: Vec<usize> = group.conjugacy_classes().iter().map(|c| group.class_of(group.inv(c.representative))).collect();
    let mut rows = Vec::with_capacity(k);
    let mut degrees = Vec::with_capacity(k);
    for v in done {
        let scale = inv_mod(v[0], q);
        let omega: Vec<u64> = v.iter().map(|x| x * scale % q).collect();
        // χ(1)² = |G| / Σ_c ω_c ω_{c⁻¹} / |K_c|
        let s = (0..k).fold(0u64, |acc, c| (acc + omega[c] * omega[inverse_class[c]] % q * inv_mod(sizes[c], q)) % q);
        let target = (n as u64) % q * inv_mod(s, q) % q;
        let deg = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % q == target)
            .ok_or_else(|| RepError::Mismatch("no integer degree fits".into()))?;
        rows.push((0..k).map(|c| omega[c] * deg % q * inv_mod(sizes[c], q) % q).collect::<Vec<u64>>());
        degrees.push(deg);
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (degrees[i], rows[i].iter().any(|&x| x != 1), rows[i].iter().map(|&x| -lift(x, q)).collect::<Vec<_>>()));
    let values: Vec<Vec<u64>> = order.iter().map(|&i| rows[i].clone()).collect();
    let degrees: Vec<u64> = order.iter().map(|&i| degrees[i]).collect();

    let mut table = CharacterTable {
        q,
        values,
        degrees,
        rational: Vec::new(),
        indicators: Vec::new(),
        rational_irreducibles: Vec::new(),
        order: n as u64,
        class_sizes: sizes,
        inverse_class,
    };
    table.rational = (0..k).map(|i| table.rational_row(group, i)).collect();
    table.indicators = (0..k)
        .map(|i| {
            let total = (0..k).fold(0u64, |acc, c| (acc + table.class_sizes[c] * table.values[i][group.power_class(c, 2)]) % q);
            lift(total * inv_mod(n as u64, q) % q, q)
        })
        .collect();
    table.rational_irreducibles = table.galois_orbits(group);
    Ok(table)
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn rational_row(&self, group: &FiniteGroup, i: usize) -> Option<ClassFunction> {
        let e = group.exponent() as i64;
        let row = &self.values[i];
        let fixed = (1..e)
            .filter(|&m| gcd(m as usize, e as usize) == 1)
            .all(|m| (0..row.len()).all(|c| row[group.power_class(c, m)] == row[c]));
        fixed.then(|| ClassFunction::from_ints(row.iter().map(|&x| lift(x, self.q))))
    }

    fn galois_orbits(&self, group: &FiniteGroup) -> Vec<RationalIrreducible> {
        let k = self.len();
        let e = group.exponent();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for i in 0..k {
            if seen[i] {
                continue;
            }
            let mut members = Vec::new();
            for m in (1..=e.max(1)).filter(|&m| gcd(m, e) == 1) {
                let image: Vec<u64> = (0..k).map(|c| self.values[i][group.power_class(c, m as i64)]).collect();
                let j = self.values.iter().position(|r| *r == image).expect("Galois conjugates are irreducible");
                if !seen[j] {
                    seen[j] = true;
                    members.push(j);
                }
            }
            members.sort_unstable();
            let schur_index = if self.indicators[i] == -1 { 2 } else { 1 };
            let character = ClassFunction::from_ints((0..k).map(|c| {
                let sum = members.iter().fold(0u64, |acc, &j| (acc + self.values[j][c]) % self.q);
                schur_index * lift(sum, self.q)
            }));
            out.push(RationalIrreducible { members, schur_index, character });
        }
        out.sort_by_key(|r| (r.degree(), r.members[0]));
        out
    }

    /// `|G| ⟨χ_i, f⟩` modulo `q`, with `f` rational.
    fn pairing(&self, i: usize, f: &ClassFunction) -> u64 {
        (0..self.len()).fold(0u64, |acc, c| {
            let fv = to_residue(f.values[c], self.q);
            (acc + self.class_sizes[c] * fv % self.q * self.values[i][self.inverse_class[c]]) % self.q
        })
    }

    /// Multiplicity of each irreducible in a virtual character.
    pub fn decompose(&self, f: &ClassFunction) -> Vec<i64> {
        let inv_order = inv_mod(self.order % self.q, self.q);
        (0..self.len()).map(|i| lift(self.pairing(i, f) * inv_order % self.q, self.q)).collect()
    }

    /// Coefficients on the rational irreducibles; non-integral entries mean
    /// `f` is not in the rational representation ring.
    pub fn decompose_rational(&self, f: &ClassFunction) -> Vec<Rational> {
        let mult = self.decompose(f);
        self.rational_irreducibles
            .iter()
            .map(|r| Rational::new(mult[r.members[0]].into(), r.schur_index.into()))
            .collect()
    }

    /// Row and column orthogonality modulo `q`.
    pub fn orthogonality_holds(&self) -> bool {
        let k = self.len();
        let q = self.q;
        let rows = (0..k).all(|i| {
            (0..k).all(|j| {
                let s = (0..k).fold(0u64, |acc, c| {
                    (acc + self.class_sizes[c] * self.values[i][c] % q * self.values[j][self.inverse_class[c]]) % q
                });
                s == if i == j { self.order % q } else { 0 }
            })
        });
        let cols = (0..k).all(|a| {
            (0..k).all(|b| {
                let s = (0..k).fold(0u64, |acc, i| (acc + self.values[i][a] * self.values[i][self.inverse_class[b]]) % q);
                let centralizer = self.order / self.class_sizes[a];
                s == if a == b { centralizer % q } else { 0 }
            })
        });
        rows && cols
    }

    /// Index of the irreducible with these residues, if any.
    pub fn find(&self, f: &ClassFunction) -> Option<usize> {
        let residues: Vec<u64> = f.values.iter().map(|&v| to_residue(v, self.q)).collect();
        self.values.iter().position(|r| *r == residues)
    }

    /// Whether `f` is the zero virtual character modulo 2 in the rational
    /// representation ring.
    pub fn rational_coefficients_mod2(&self, f: &ClassFunction) -> Option<Vec<u8>> {
        self.decompose_rational(f)
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer().rem_euclid(2) as u8))
            .collect()
    }
}
