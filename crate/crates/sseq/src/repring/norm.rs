use serde::Serialize;

use super::character::{euler_gset, perm_character, ClassFunction, GSet};
use super::group::{prime_factors, FiniteGroup, Subgroup};
use super::table::character_table;
use super::{RepError, Rational};

/// The coefficient of `ε` in the norm of `ε` from `K` to `G`, as a class in
/// the rational representation ring modulo 2.
#[derive(Clone, Debug, Serialize)]
pub struct NormEpsilon {
    pub group_order: usize,
    pub subgroup_order: usize,
    /// `e(G/K)` on each conjugacy class.
    pub euler: Vec<i128>,
    /// Degrees of the rational irreducibles, in table order.
    pub rational_degrees: Vec<i64>,
    /// Coefficients of `e(G/K)` on the rational irreducibles.
    pub coefficients: Vec<i64>,
    pub mod2: Vec<u8>,
    pub is_zero: bool,
    /// Present when `K` is normal and `G/K` is cyclic of prime-power order.
    pub cyclic_quotient: Option<CyclicQuotient>,
    /// Schur indices are read off Frobenius–Schur indicators, which is only
    /// certain for odd `p`-groups; otherwise the answer detects the class
    /// rather than pinning it down.
    pub detection_level_only: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicQuotient {
    pub prime: usize,
    pub exponent: u32,
    pub index_p_subgroup_order: usize,
    /// `Q̃[G/N]` modulo 2 on the rational irreducibles.
    pub reduced_quotient_mod2: Vec<u8>,
    pub agrees: bool,
}

fn is_odd_prime_power(n: usize) -> bool {
    let f = prime_factors(n);
    n == 1 || (f.len() == 1 && f[0] != 2)
}

/// Decompose `e(G/K)` on the rational irreducibles and reduce modulo 2.
pub fn norm_epsilon(group: &FiniteGroup, k: &Subgroup) -> Result<NormEpsilon, RepError> {
    if group.order() > 64 {
        return Err(RepError::OrderBoundExceeded { order: group.order(), bound: 64 });
    }
    let table = character_table(group)?;
    let e = euler_gset(group, k).character;
    let coefficients = integral(&table.decompose_rational(&e), "e(G/K)")?;
    let mod2: Vec<u8> = coefficients.iter().map(|c| c.rem_euclid(2) as u8).collect();
    let cyclic_quotient = match group.cyclic_prime_power_quotient(k) {
        Some((p, n, big)) => {
            let reduced = perm_character(group, &GSet::cosets(group, &big)).sub(&ClassFunction::constant(1, group.class_count()));
            let coeffs = integral(&table.decompose_rational(&reduced), "Q[G/N]")?;
            let reduced_quotient_mod2: Vec<u8> = coeffs.iter().map(|c| c.rem_euclid(2) as u8).collect();
            let agrees = reduced_quotient_mod2 == mod2;
            Some(CyclicQuotient { prime: p, exponent: n, index_p_subgroup_order: big.order(), reduced_quotient_mod2, agrees })
        }
        None => None,
    };
    Ok(NormEpsilon {
        group_order: group.order(),
        subgroup_order: k.order(),
        euler: e.as_integers().expect("Euler classes are integral"),
        rational_degrees: table.rational_irreducibles.iter().map(|r| r.degree()).collect(),
        is_zero: mod2.iter().all(|&b| b == 0),
        coefficients,
        mod2,
        cyclic_quotient,
        detection_level_only: !is_odd_prime_power(group.order()),
    })
}

fn integral(coeffs: &[Rational], what: &str) -> Result<Vec<i64>, RepError> {
    coeffs
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer() as i64))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| RepError::Mismatch(format!("{what} is not in the rational representation ring")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// `C<order>`.
    pub cyclic: String,
    pub generator: String,
    pub prime: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Allowability {
    pub allowable: bool,
    pub witness: Option<Witness>,
}

/// For every cyclic `C ≤ G`, every prime dividing `[N_G C : C_G C]` must
/// divide `|C|`. Cyclic subgroups are scanned smallest first.
pub fn is_ku_allowable(group: &FiniteGroup) -> Allowability {
    for (g, c) in group.cyclic_subgroups() {
        let index = group.normalizer(&c).order() / group.centralizer(&c).order();
        if let Some(p) = prime_factors(index).into_iter().find(|p| c.order() % p != 0) {
            return Allowability {
                allowable: false,
                witness: Some(Witness { cyclic: format!("C{}", c.order()), generator: group.element(g).to_string(), prime: p }),
            };
        }
    }
    Allowability { allowable: true, witness: None }
}
