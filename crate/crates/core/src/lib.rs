//! Lusztig's q-analogues of weight multiplicity for simple Lie algebras.
//!
//! The crate builds root systems from their Cartan type, enumerates Weyl
//! groups, computes the q-analogue of Kostant's partition function and from
//! it `m_λ^μ(q)` by three independent algorithms. The [`identities`] module
//! checks the known closed forms (adjoint and little adjoint modules, tensor
//! sums, Coxeter identity, height duality) against these computations.

pub mod error;
pub mod identities;
pub mod lusztig;
pub mod poly;
pub mod qkostant;
pub mod root_system;
pub mod weyl;

pub use error::{Error, Result};
pub use lusztig::{Engine, WeightMultiset};
pub use poly::QPoly;
pub use qkostant::{CacheStats, QPartition};
pub use root_system::{CartanType, Letter, RootSystem, Weight, WEYL_ORDER_LIMIT};
pub use weyl::{WeylElement, WeylGroup};
