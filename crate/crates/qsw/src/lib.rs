//! Exact computations for the valenced Temperley-Lieb algebra and type-one
//! `U_q(sl2)` tensor modules, and the quantum Schur-Weyl duality between them.
//!
//! Module map:
//! - [`scalar`]: coefficient rings, q-integers, Theta networks;
//! - [`combin`]: multiindices, walks, link patterns, multiplicities;
//! - [`diagram`]: tangles, Jones-Wenzl projectors, link states and their pairing;
//! - [`uqrep`]: quantum group actions, highest-weight vectors, embeddings;
//! - [`duality`]: the two commuting actions and the duality checks.

pub mod combin;
pub mod diagram;
pub mod duality;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod uqrep;

pub use error::{Error, Result};
pub use scalar::{QSpec, Scalar};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    struct Overview;
    #[doc = include_str!("../../../book/src/scalars.md")]
    struct Scalars;
    #[doc = include_str!("../../../book/src/combinatorics.md")]
    struct Combinatorics;
    #[doc = include_str!("../../../book/src/diagrams.md")]
    struct Diagrams;
    #[doc = include_str!("../../../book/src/quantum_group.md")]
    struct QuantumGroup;
    #[doc = include_str!("../../../book/src/duality.md")]
    struct Duality;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
