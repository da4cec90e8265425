//! The JSON document format for finite DGLAs.
//!
//! ```json
//! {
//!   "name": "example",
//!   "basis": [{"id": "a", "degree": 1}, {"id": "b", "degree": 0}],
//!   "differential": [{"from": "a", "terms": [{"to": "b", "coeff": "1/2"}]}],
//!   "bracket": [{"left": "a", "right": "b", "terms": [{"to": "a", "coeff": "1"}]}]
//! }
//! ```
//!
//! Only one orientation of each bracket pair is needed; the other follows
//! by graded antisymmetry.

use serde::{Deserialize, Serialize};

use super::StructureConstantDgla;
use crate::algebra::{format_rational, parse_rational, Element, Rational, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DglaDocument {
    pub name: String,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub differential: Vec<DiffEntry>,
    #[serde(default)]
    pub bracket: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub id: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffEntry {
    pub from: String,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub to: String,
    pub coeff: String,
}

fn parse_terms(terms: &[TermEntry]) -> Result<Vec<(String, Rational)>> {
    terms
        .iter()
        .map(|t| Ok((t.to.clone(), parse_rational(&t.coeff)?)))
        .collect()
}

fn emit_terms(e: &Element<Symbol>) -> Vec<TermEntry> {
    e.terms()
        .map(|(s, c)| TermEntry {
            to: s.id().to_string(),
            coeff: format_rational(c),
        })
        .collect()
}

impl DglaDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Resolves the document into tables without running the validator.
    pub fn resolve(&self) -> Result<StructureConstantDgla> {
        let mut b = StructureConstantDgla::builder(&self.name);
        for e in &self.basis {
            b.push_symbol(e.id.clone(), e.degree);
        }
        for e in &self.differential {
            b.push_differential(e.from.clone(), parse_terms(&e.terms)?);
        }
        for e in &self.bracket {
            b.push_bracket(e.left.clone(), e.right.clone(), parse_terms(&e.terms)?);
        }
        b.build_unchecked()
    }

    pub fn from_dgla(d: &StructureConstantDgla) -> Self {
        Self {
            name: d.name().to_string(),
            basis: d
                .symbols()
                .iter()
                .map(|s| BasisEntry {
                    id: s.id().to_string(),
                    degree: crate::algebra::Graded::degree(s),
                })
                .collect(),
            differential: d
                .differential_table()
                .into_iter()
                .map(|(s, e)| DiffEntry {
                    from: s.id().to_string(),
                    terms: emit_terms(e),
                })
                .collect(),
            bracket: d
                .bracket_table()
                .into_iter()
                .map(|(a, b, e)| BracketEntry {
                    left: a.id().to_string(),
                    right: b.id().to_string(),
                    terms: emit_terms(e),
                })
                .collect(),
        }
    }
}

/// Parses a document into tables, without validation.
pub fn parse_dgla(text: &str) -> Result<StructureConstantDgla> {
    DglaDocument::from_json(text)?.resolve()
}

/// Parses and validates a document.
pub fn load_dgla(text: &str) -> Result<StructureConstantDgla> {
    let d = parse_dgla(text)?;
    let report = super::validate_finite(&d).expect("finite algebras enumerate their basis");
    match report.violation {
        Some(v) => Err(Error::Validation(Box::new(v))),
        None => Ok(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::Dgla;

    #[test]
    fn minimal_document_is_abelian() {
        let d = load_dgla(r#"{"name":"line","basis":[{"id":"a","degree":1}]}"#).unwrap();
        assert_eq!(d.dimension(), 1);
        assert!(d.is_abelian());
    }

    #[test]
    fn omitted_bracket_is_zero() {
        let d = load_dgla(
            r#"{"name":"x","basis":[{"id":"a","degree":0},{"id":"b","degree":0},{"id":"c","degree":0}],
                "bracket":[{"left":"a","right":"b","terms":[{"to":"c","coeff":"1"}]}]}"#,
        )
        .unwrap();
        let (a, c) = (d.symbol("a").unwrap(), d.symbol("c").unwrap());
        assert!(d.bracket_of(&a, &c).is_zero());
    }

    #[test]
    fn error_kinds_are_distinct() {
        let zero_den = r#"{"name":"x","basis":[{"id":"a","degree":1},{"id":"b","degree":0}],
            "differential":[{"from":"a","terms":[{"to":"b","coeff":"1/0"}]}]}"#;
        assert!(matches!(
            load_dgla(zero_den),
            Err(Error::InvalidRational(_))
        ));

        assert!(matches!(
            load_dgla(r#"{"name":"x"}"#),
            Err(Error::Schema(_))
        ));
        assert!(matches!(load_dgla("not json"), Err(Error::Schema(_))));
        assert!(matches!(
            load_dgla(r#"{"name":"x","basis":[],"extra":1}"#),
            Err(Error::Schema(_))
        ));

        let unknown = r#"{"name":"x","basis":[{"id":"a","degree":1}],
            "differential":[{"from":"a","terms":[{"to":"q","coeff":"1"}]}]}"#;
        assert!(matches!(load_dgla(unknown), Err(Error::UnknownSymbol(_))));

        let dup = r#"{"name":"x","basis":[{"id":"a","degree":1},{"id":"a","degree":1}]}"#;
        assert!(matches!(load_dgla(dup), Err(Error::DuplicateSymbol(_))));

        // Jacobi fails: a 2-step nilpotent table with a nonzero triple bracket.
        let broken = r#"{"name":"x","basis":[{"id":"a","degree":0},{"id":"b","degree":0},{"id":"c","degree":0}],
            "bracket":[{"left":"a","right":"b","terms":[{"to":"c","coeff":"1"}]},
                       {"left":"a","right":"c","terms":[{"to":"a","coeff":"1"}]}]}"#;
        assert!(matches!(load_dgla(broken), Err(Error::Validation(_))));
    }

    #[test]
    fn round_trip() {
        let text = r#"{"name":"x","basis":[{"id":"a","degree":1},{"id":"b","degree":0},{"id":"c","degree":1},{"id":"e","degree":0}],
            "differential":[{"from":"a","terms":[{"to":"e","coeff":"-1/2"}]}],
            "bracket":[{"left":"b","right":"c","terms":[{"to":"c","coeff":"3"}]}]}"#;
        let d = load_dgla(text).unwrap();
        let doc = DglaDocument::from_dgla(&d);
        let again = load_dgla(&doc.to_json()).unwrap();
        assert_eq!(DglaDocument::from_dgla(&again), doc);
    }
}
