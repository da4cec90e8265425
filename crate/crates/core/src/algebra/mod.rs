//! Exact scalars, graded elements, permutations and Bernoulli weights.

pub mod bernoulli;
pub mod element;
mod parse;
pub mod permutation;
pub mod rational;

pub use bernoulli::{bernoulli, bracket_weight};
pub use element::{Basis, Element, Graded, Symbol};
pub use parse::parse_linear_combination;
pub use permutation::{binomial, koszul_sign, unshuffles, Permutation, Unshuffle};
pub use rational::{format_rational, parse_rational, rat, Rational};
