//! Built-in DGLAs.
//!
//! Finite presets are tensor products `g ⊗ A` of a Lie algebra with a small
//! graded commutative DGA; they ship as JSON documents under `presets/` and
//! are regenerated here. The Schouten algebra with a Poisson differential is
//! a symbolic built-in validated on monomial windows.

mod schouten;
mod tensor;

use crate::algebra::rat;
use crate::dgla::{load_dgla, StructureConstantDgla};
use crate::error::{Error, Result};

pub use schouten::{
    lie_poisson_sl2, monomial_window, parse_multivector, poisson_bracket_via_theorem,
    poisson_differential, schouten_bracket, schouten_monomials, symplectic_plane, Multivector,
    PoissonComparison, PoissonTensor, SchoutenDgla, MAX_VARIABLES,
};
pub use tensor::{
    make_tensor_dgla, Generator, GradedAlgebraSpec, LieSpec, TensorDglaSpec, TENSOR_DIMENSION_CAP,
};

fn heisenberg() -> LieSpec {
    LieSpec::new(&["x", "y", "z"]).with("x", "y", &[("z", rat(1, 1))])
}

fn sl2() -> LieSpec {
    LieSpec::new(&["e", "f", "h"])
        .with("h", "e", &[("e", rat(2, 1))])
        .with("h", "f", &[("f", rat(-2, 1))])
        .with("e", "f", &[("h", rat(1, 1))])
}

/// `Λ[p, q]` with `|p| = |q| = 1` and `dp = 1`: degrees 0, 1, 2.
fn two_odd() -> GradedAlgebraSpec {
    GradedAlgebraSpec::new(&[("p", 1), ("q", 1)]).with_differential("p", &[(&[], rat(1, 1))])
}

/// Names of the finite presets, in listing order.
pub const FINITE_PRESETS: [&str; 5] = [
    "heisenberg-pq",
    "sl2-nilpotent",
    "sl2-pq",
    "sl2-pqr",
    "sl2-pn",
];

/// Names of the symbolic (Schouten) presets.
pub const SYMBOLIC_PRESETS: [&str; 2] = ["schouten-symplectic", "schouten-lie-poisson"];

pub fn tensor_spec(name: &str) -> Result<TensorDglaSpec> {
    let (lie, graded) = match name {
        // Heisenberg algebra over Λ[p, q]; degrees 0, 1, 2.
        "heisenberg-pq" => (heisenberg(), two_odd()),
        // sl2 over ℚ[u]/(u²) ⊗ Λ[v], |u| = 0, |v| = 1, dv = u; degrees 0, 1.
        "sl2-nilpotent" => (
            sl2(),
            GradedAlgebraSpec::new(&[("u", 0), ("v", 1)])
                .with_differential("v", &[(&["u"], rat(1, 1))]),
        ),
        // sl2 over Λ[p, q]; the positive part sits in degrees 1 and 2.
        "sl2-pq" => (sl2(), two_odd()),
        // sl2 over Λ[p, q, r], dp = 1; degrees 0 to 3.
        "sl2-pqr" => (
            sl2(),
            GradedAlgebraSpec::new(&[("p", 1), ("q", 1), ("r", 1)])
                .with_differential("p", &[(&[], rat(1, 1))]),
        ),
        // sl2 over Λ[p, n], |p| = 1, |n| = −1, dp = 1; degrees −1, 0, 1, and
        // d(pn) = n is nonzero below degree one.
        "sl2-pn" => (
            sl2(),
            GradedAlgebraSpec::new(&[("p", 1), ("n", -1)])
                .with_differential("p", &[(&[], rat(1, 1))]),
        ),
        other => return Err(Error::Input(format!("unknown preset {other:?}"))),
    };
    Ok(TensorDglaSpec {
        name: name.to_string(),
        lie,
        graded,
    })
}

/// Generates a finite preset from its tensor description.
pub fn generate_preset(name: &str) -> Result<StructureConstantDgla> {
    make_tensor_dgla(&tensor_spec(name)?)
}

/// The shipped JSON document of a finite preset.
pub fn preset_document(name: &str) -> Result<&'static str> {
    Ok(match name {
        "heisenberg-pq" => include_str!("../../presets/heisenberg-pq.json"),
        "sl2-nilpotent" => include_str!("../../presets/sl2-nilpotent.json"),
        "sl2-pq" => include_str!("../../presets/sl2-pq.json"),
        "sl2-pqr" => include_str!("../../presets/sl2-pqr.json"),
        "sl2-pn" => include_str!("../../presets/sl2-pn.json"),
        other => return Err(Error::Input(format!("unknown preset {other:?}"))),
    })
}

/// Loads a finite preset from its shipped document.
pub fn finite_preset(name: &str) -> Result<StructureConstantDgla> {
    load_dgla(preset_document(name)?)
}

/// All finite presets, loaded from the shipped documents.
pub fn finite_presets() -> Vec<StructureConstantDgla> {
    FINITE_PRESETS
        .iter()
        .map(|n| finite_preset(n).expect("shipped presets are valid"))
        .collect()
}

pub fn symbolic_preset(name: &str) -> Result<SchoutenDgla> {
    match name {
        "schouten-symplectic" => Ok(SchoutenDgla::with_poisson(symplectic_plane())),
        "schouten-lie-poisson" => Ok(SchoutenDgla::with_poisson(lie_poisson_sl2())),
        other => Err(Error::Input(format!("unknown preset {other:?}"))),
    }
}
