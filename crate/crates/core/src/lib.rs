//! Exact computations with torus-invariant constructible functions, cycles
//! and Chern-Schwartz-MacPherson classes on toric varieties given by fans.
//!
//! All arithmetic is over arbitrary-precision integers.

mod cone_map;

pub mod chern_oracle;
pub mod chow;
pub mod constructible;
pub mod corpus;
pub mod csm;
pub mod error;
pub mod fan;
pub mod format;
pub mod lattice;
pub mod prochow;
pub mod product;

pub use error::{Error, Result};
