//! Exact computations with spectral sequences of towers and with power
//! operations: finitely generated modules, tower spectral sequences built from
//! additive relations, transport of nonadditive operations through pages,
//! representation-ring Euler classes and norms, and K(1)-local power
//! operations at odd and even primes.

pub mod fgab;
pub mod kone;
pub mod repring;
pub mod tower;
pub mod transport;

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/intro.md")]
    struct Intro;
    #[doc = include_str!("../../../book/src/modules.md")]
    struct Modules;
    #[doc = include_str!("../../../book/src/towers.md")]
    struct Towers;
    #[doc = include_str!("../../../book/src/repring.md")]
    struct Repring;
    #[doc = include_str!("../../../book/src/kone.md")]
    struct Kone;
    #[doc = include_str!("../../../book/src/transport.md")]
    struct Transport;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
