//! Finite permutation groups, their characters, λ-operations and Euler
//! classes, and the norm of the Bott class in `KU`-theory.

mod character;
mod corpus;
mod group;
mod norm;
mod perm;
mod table;

pub use character::{
    adams_operation, bott_power_euler, euler_character_identity, euler_class, euler_gset, exterior_powers,
    perm_character, ClassFunction, GSet, LambdaTerm, Realized, SymmetricClassFunction, VirtualCharacter,
};
pub use corpus::{
    alternating, automorphism_group, corpus, cyclic, dicyclic, dihedral, direct_product, extend_hom, from_multiplication,
    generating_set, heisenberg, isomorphic, named, semidirect, small_groups, symmetric, NamedGroup, GROUP_COUNTS,
};
pub use group::{ConjugacyClass, FiniteGroup, GroupJson, Subgroup, ORDER_BOUND};
pub use norm::{is_ku_allowable, norm_epsilon, Allowability, CyclicQuotient, NormEpsilon, Witness};
pub use perm::Perm;
pub use table::{character_table, CharacterTable, RationalIrreducible};

/// Exact rational values of class functions.
pub type Rational = num_rational::Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("OrderBoundExceeded: order {order} is above the bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("NotRealized: {0}")]
    NotRealized(String),
    #[error("NonInvertibleEuler: {0}")]
    NonInvertibleEuler(String),
    #[error("NotASubgroup: {0}")]
    NotASubgroup(String),
    #[error("Parse: {0}")]
    Parse(String),
    #[error("Mismatch: {0}")]
    Mismatch(String),
}
