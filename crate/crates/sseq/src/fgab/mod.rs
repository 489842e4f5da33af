//! Exact linear algebra over Z and the truncated p-adic integers.
//!
//! Everything is built on one primitive, [`Subquotient`]: the module
//! `(im G + im R + D) / (im R + D)` inside a presented ambient, computed from
//! two Smith normal forms. Kernels, images, cokernels, fiber products and the
//! partial functions of additive relations are all instances of it.

mod json;
mod matrix;
mod module;
mod ops;
mod relation;
mod ring;
mod smith;

pub use json::{HomJson, MatrixJson, ModuleJson};
pub use matrix::Matrix;
pub use module::{DirectSum, FgModule, Hom, Presentation, Subquotient};
pub use ops::{
    cokernel, fiber_product, image, image_of, is_exact, is_injective, is_surjective, kernel, preimage, Cokernel,
    FiberProduct, Quotient, Submodule,
};
pub use relation::{relation_to_function, AdditiveRelation, RelationFunction};
pub use ring::{ext_gcd, CoeffRing, Elem, DEFAULT_PRECISION};
pub use smith::{smith_normal_form, SmithForm};

pub(crate) use ring::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FgError {
    #[error("PrecisionExhausted: value vanishes modulo {p}^{precision}; raise the precision")]
    PrecisionExhausted { p: u32, precision: u32 },
    #[error("Overflow: integer arithmetic left the 128-bit range")]
    Overflow,
    #[error("NotInDomain: element is outside the domain of the partial function")]
    NotInDomain,
    #[error("NotAUnit: {0} is not a unit")]
    NotAUnit(Elem),
    #[error("NotDivisible: {a} does not divide {b}")]
    NotDivisible { a: Elem, b: Elem },
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("IllDefined: {0}")]
    IllDefined(String),
    #[error("RingMismatch: operands live over different coefficient rings")]
    RingMismatch,
    #[error("InvalidRing: {0}")]
    InvalidRing(String),
    #[error("Infinite: module has a free summand")]
    Infinite,
}
