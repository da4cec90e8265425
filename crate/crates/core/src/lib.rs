//! Higher derived brackets.
//!
//! For a differential graded Lie algebra `L`, the positively graded part
//! `τ_{>0} L` carries an L∞ structure whose brackets are Bernoulli-weighted
//! symmetrizations of nested brackets seeded by the operator `D` (the
//! differential on degree one, zero elsewhere). This crate computes those
//! brackets exactly over the rationals and verifies the identities around
//! them: the generalized Jacobi rules, the `Z`-expression recurrences used in
//! their proof, the Bernoulli generating-function identities, and the
//! comparison with the mapping-cone L∞ structure.

pub mod algebra;
pub mod cli;
pub mod cone;
pub mod derived;
pub mod dgla;
pub mod error;
pub mod linfinity;
pub mod presets;
pub mod series;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
