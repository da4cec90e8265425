use std::fmt::Write as _;
use std::path::PathBuf;

use super::config::RunConfig;
use super::report::Report;
use crate::algebra::{parse_linear_combination, Element, Graded};
use crate::derived::{DerivedStructure, UnarySign};
use crate::dgla::{parse_dgla, Dgla, StructureConstantDgla};
use crate::error::{Error, Result};
use crate::linfinity::{LInfinity, DEFAULT_ARITY_CAP};
use crate::presets::{
    finite_preset, parse_multivector, preset_document, symbolic_preset, SchoutenDgla,
    FINITE_PRESETS, SYMBOLIC_PRESETS,
};
use crate::verify::{
    collate, cone_suite, finite_suite, poisson_suite, series_suite, validate_suite,
};

/// What a command operates on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Preset(String),
    File(PathBuf),
}

impl Target {
    pub fn describe(&self) -> String {
        match self {
            Target::Preset(name) => name.clone(),
            Target::File(path) => path.display().to_string(),
        }
    }
}

pub enum Loaded {
    Finite(StructureConstantDgla),
    Symbolic(SchoutenDgla),
}

/// Reads a document without validating it, or instantiates a preset.
pub fn load_target(target: &Target) -> Result<Loaded> {
    match target {
        Target::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
            Ok(Loaded::Finite(parse_dgla(&text)?))
        }
        Target::Preset(name) if SYMBOLIC_PRESETS.contains(&name.as_str()) => {
            Ok(Loaded::Symbolic(symbolic_preset(name)?))
        }
        Target::Preset(name) => Ok(Loaded::Finite(finite_preset(name)?)),
    }
}

fn finite_only(target: &Target, what: &str) -> Result<StructureConstantDgla> {
    match load_target(target)? {
        Loaded::Finite(d) => Ok(d),
        Loaded::Symbolic(_) => Err(Error::Input(format!(
            "{what} needs a finite algebra, {} is symbolic",
            target.describe()
        ))),
    }
}

/// Checks the axioms of a DGLA document on its full basis.
pub fn cmd_validate(path: &std::path::Path, config: &RunConfig) -> Result<Report> {
    let target = Target::File(path.to_path_buf());
    let d = finite_only(&target, "validate")?;
    let basis = d.basis().unwrap_or_default();
    let records = validate_suite(&d, &basis, &config.verify_config())?;
    Ok(Report::new(
        "validate",
        Some(target.describe()),
        *config,
        records,
    ))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Suites {
    pub cone: bool,
    pub series: bool,
}

/// The derived-bracket suite on `target`, plus the cone and series suites
/// when requested.
pub fn cmd_verify(target: Option<&Target>, suites: Suites, config: &RunConfig) -> Result<Report> {
    let cfg = config.verify_config();
    let mut groups = Vec::new();
    match target.map(load_target).transpose()? {
        Some(Loaded::Finite(d)) => {
            groups.push(finite_suite(&d, &cfg)?);
            if suites.cone {
                groups.push(cone_suite(&d, &cfg)?);
            }
        }
        Some(Loaded::Symbolic(s)) => {
            if suites.cone {
                return Err(Error::Input("the cone suite needs a finite algebra".into()));
            }
            groups.push(poisson_suite(&s, &cfg)?);
        }
        None if !suites.series => {
            return Err(Error::Input(
                "give a document or --preset, or ask for --series".into(),
            ))
        }
        None => {}
    }
    if suites.series {
        groups.push(series_suite(&cfg)?);
    }
    let records = collate(groups.into_iter().map(|g| (String::new(), g)).collect());
    Ok(Report::new(
        "verify",
        target.map(Target::describe),
        *config,
        records,
    ))
}

pub fn cmd_cone_verify(target: &Target, config: &RunConfig) -> Result<Report> {
    let d = finite_only(target, "cone-verify")?;
    let records = cone_suite(&d, &config.verify_config())?;
    Ok(Report::new(
        "cone-verify",
        Some(target.describe()),
        *config,
        records,
    ))
}

pub fn cmd_series_verify(config: &RunConfig) -> Result<Report> {
    let records = series_suite(&config.verify_config())?;
    Ok(Report::new("series-verify", None, *config, records))
}

fn derived_of<D: Dgla>(
    d: &D,
    args: &[Element<D::Basis>],
    unary: UnarySign,
) -> Result<Element<D::Basis>> {
    if let Some((b, _)) = args
        .iter()
        .flat_map(|a| a.terms())
        .find(|(b, _)| b.degree() <= 0)
    {
        return Err(Error::DegreeMismatch(format!(
            "{b} has degree {}, brackets take positive degrees",
            b.degree()
        )));
    }
    DerivedStructure::new(d)
        .with_unary_sign(unary)
        .with_arity_cap(args.len().max(DEFAULT_ARITY_CAP))
        .bracket(args)
}

/// The derived bracket of the given elements, in canonical term order.
pub fn cmd_bracket(target: &Target, exprs: &[String], unary: UnarySign) -> Result<String> {
    if exprs.is_empty() {
        return Err(Error::Input("give at least one element".into()));
    }
    match load_target(target)? {
        Loaded::Finite(d) => {
            let args = exprs
                .iter()
                .map(|e| {
                    parse_linear_combination(e, |id| {
                        d.symbol(id)
                            .ok_or_else(|| Error::UnknownSymbol(id.to_string()))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(derived_of(&d, &args, unary)?.to_string())
        }
        Loaded::Symbolic(s) => {
            let args = exprs
                .iter()
                .map(|e| parse_multivector(e, s.nvars()))
                .collect::<Result<Vec<_>>>()?;
            Ok(derived_of(&s, &args, unary)?.to_string())
        }
    }
}

const DESCRIPTIONS: [(&str, &str); 7] = [
    (
        "heisenberg-pq",
        "Heisenberg algebra over Λ[p,q], dp = 1; degrees 0..2",
    ),
    (
        "sl2-nilpotent",
        "sl2 over ℚ[u]/(u²) ⊗ Λ[v], dv = u; degrees 0..1",
    ),
    (
        "sl2-pq",
        "sl2 over Λ[p,q], dp = 1; positive part in degrees 1..2",
    ),
    ("sl2-pqr", "sl2 over Λ[p,q,r], dp = 1; degrees 0..3"),
    ("sl2-pn", "sl2 over Λ[p,n], |n| = -1, dp = 1; degrees -1..1"),
    (
        "schouten-symplectic",
        "polyvector fields on ℚ², P = θ1θ2 (symbolic)",
    ),
    (
        "schouten-lie-poisson",
        "polyvector fields on sl2*, Lie–Poisson P (symbolic)",
    ),
];

pub fn cmd_example_list() -> String {
    let mut out = String::new();
    for name in FINITE_PRESETS.iter().chain(SYMBOLIC_PRESETS.iter()) {
        let desc = DESCRIPTIONS
            .iter()
            .find(|(n, _)| n == name)
            .map_or("", |(_, d)| d);
        let _ = writeln!(out, "{name:<22} {desc}");
    }
    out
}

/// The JSON document of a finite preset.
pub fn cmd_example_emit(name: &str) -> Result<String> {
    if SYMBOLIC_PRESETS.contains(&name) {
        return Err(Error::Input(format!(
            "{name} is infinite dimensional and has no document"
        )));
    }
    Ok(preset_document(name)?.to_string())
}
