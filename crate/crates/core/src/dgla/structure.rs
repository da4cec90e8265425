use std::collections::{BTreeMap, HashMap};

use super::{validate, Dgla};
use crate::algebra::{rational::sign_of_parity, Element, Graded, Rational, Symbol};
use crate::error::{Error, Result};

/// A finite DGLA given by structure constants. Missing table entries are
/// zero.
#[derive(Clone, Debug)]
pub struct StructureConstantDgla {
    name: String,
    basis: Vec<Symbol>,
    by_id: HashMap<String, Symbol>,
    diff: HashMap<Symbol, Element<Symbol>>,
    bracket: HashMap<(Symbol, Symbol), Element<Symbol>>,
}

type RawTerms = Vec<(String, Rational)>;

#[derive(Clone, Debug, Default)]
pub struct StructureConstantDglaBuilder {
    name: String,
    symbols: Vec<(String, i64)>,
    diff: Vec<(String, RawTerms)>,
    bracket: Vec<(String, String, RawTerms)>,
}

impl StructureConstantDglaBuilder {
    pub fn symbol(mut self, id: &str, degree: i64) -> Self {
        self.symbols.push((id.to_string(), degree));
        self
    }

    pub fn differential(mut self, from: &str, terms: &[(&str, Rational)]) -> Self {
        self.diff.push((from.to_string(), own(terms)));
        self
    }

    pub fn bracket(mut self, left: &str, right: &str, terms: &[(&str, Rational)]) -> Self {
        self.bracket
            .push((left.to_string(), right.to_string(), own(terms)));
        self
    }

    pub(crate) fn push_symbol(&mut self, id: String, degree: i64) {
        self.symbols.push((id, degree));
    }

    pub(crate) fn push_differential(&mut self, from: String, terms: RawTerms) {
        self.diff.push((from, terms));
    }

    pub(crate) fn push_bracket(&mut self, left: String, right: String, terms: RawTerms) {
        self.bracket.push((left, right, terms));
    }

    /// Resolves the tables and completes each bracket entry by graded
    /// antisymmetry, without running the axiom validator.
    pub fn build_unchecked(self) -> Result<StructureConstantDgla> {
        let mut by_id = HashMap::new();
        let mut basis = Vec::new();
        for (id, degree) in &self.symbols {
            let sym = Symbol::new(id.as_str(), *degree);
            if by_id.insert(id.clone(), sym.clone()).is_some() {
                return Err(Error::DuplicateSymbol(id.clone()));
            }
            basis.push(sym);
        }
        let lookup = |id: &str| {
            by_id
                .get(id)
                .cloned()
                .ok_or_else(|| Error::UnknownSymbol(id.to_string()))
        };
        let resolve =
            |terms: &RawTerms, degree: i64, what: &dyn Fn() -> String| -> Result<Element<Symbol>> {
                let mut e = Element::zero();
                for (id, c) in terms {
                    let s = lookup(id)?;
                    if s.degree() != degree {
                        return Err(Error::DegreeMismatch(format!(
                            "{} has term {id} of degree {}, expected {degree}",
                            what(),
                            s.degree()
                        )));
                    }
                    e.add_term(s, c.clone());
                }
                Ok(e)
            };

        let mut diff = HashMap::new();
        for (from, terms) in &self.diff {
            let s = lookup(from)?;
            let v = resolve(terms, s.degree() - 1, &|| format!("differential of {from}"))?;
            if diff.insert(s, v).is_some() {
                return Err(Error::Schema(format!("differential of {from} given twice")));
            }
        }

        let mut bracket: HashMap<(Symbol, Symbol), Element<Symbol>> = HashMap::new();
        for (l, r, terms) in &self.bracket {
            let (a, b) = (lookup(l)?, lookup(r)?);
            let v = resolve(terms, a.degree() + b.degree(), &|| {
                format!("bracket [{l},{r}]")
            })?;
            let mirrored = v.scale(&-sign_of_parity(a.degree() * b.degree()));
            if a == b && mirrored != v {
                return Err(Error::ContradictoryBracket(format!(
                    "[{l},{l}] must vanish for an even element"
                )));
            }
            for (key, val) in [
                ((a.clone(), b.clone()), v.clone()),
                ((b.clone(), a.clone()), mirrored),
            ] {
                match bracket.get(&key) {
                    Some(existing) if *existing != val => {
                        return Err(Error::ContradictoryBracket(format!(
                            "[{l},{r}] is given inconsistently"
                        )));
                    }
                    _ => {
                        bracket.insert(key, val);
                    }
                }
            }
        }
        diff.retain(|_, v: &mut Element<Symbol>| !v.is_zero());
        bracket.retain(|_, v| !v.is_zero());
        Ok(StructureConstantDgla {
            name: self.name,
            basis,
            by_id,
            diff,
            bracket,
        })
    }

    /// [`Self::build_unchecked`] followed by the full validator.
    pub fn build(self) -> Result<StructureConstantDgla> {
        let d = self.build_unchecked()?;
        let report = validate(&d, &d.basis);
        match report.violation {
            Some(v) => Err(Error::Validation(Box::new(v))),
            None => Ok(d),
        }
    }
}

fn own(terms: &[(&str, Rational)]) -> RawTerms {
    terms
        .iter()
        .map(|(id, c)| (id.to_string(), c.clone()))
        .collect()
}

impl StructureConstantDgla {
    pub fn builder(name: &str) -> StructureConstantDglaBuilder {
        StructureConstantDglaBuilder {
            name: name.to_string(),
            ..Default::default()
        }
    }

    /// Takes the tables as given, with no antisymmetric completion and no
    /// validation. Used for corrupted fixtures.
    pub fn from_raw_tables(
        name: &str,
        basis: Vec<Symbol>,
        diff: BTreeMap<Symbol, Element<Symbol>>,
        bracket: BTreeMap<(Symbol, Symbol), Element<Symbol>>,
    ) -> Result<Self> {
        let mut by_id = HashMap::new();
        for s in &basis {
            if by_id.insert(s.id().to_string(), s.clone()).is_some() {
                return Err(Error::DuplicateSymbol(s.id().to_string()));
            }
        }
        Ok(Self {
            name: name.to_string(),
            basis,
            by_id,
            diff: diff.into_iter().collect(),
            bracket: bracket.into_iter().collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.basis
    }

    pub fn symbol(&self, id: &str) -> Option<Symbol> {
        self.by_id.get(id).cloned()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Distinct degrees occurring in the basis, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.basis.iter().map(Graded::degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Sorted `(symbol, image)` pairs of the nonzero differential.
    pub fn differential_table(&self) -> Vec<(&Symbol, &Element<Symbol>)> {
        let mut v: Vec<_> = self.diff.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// One orientation of each nonzero bracket: `left` precedes `right` in
    /// the declared basis order (or equals it).
    pub fn bracket_table(&self) -> Vec<(&Symbol, &Symbol, &Element<Symbol>)> {
        let pos: HashMap<&Symbol, usize> =
            self.basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut v: Vec<_> = self
            .bracket
            .iter()
            .filter(|((a, b), _)| pos[a] <= pos[b])
            .map(|((a, b), e)| (a, b, e))
            .collect();
        v.sort_by_key(|(a, b, _)| (pos[a], pos[b]));
        v
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.values().all(Element::is_zero) && self.diff.values().all(Element::is_zero)
    }
}

impl Dgla for StructureConstantDgla {
    type Basis = Symbol;

    fn differential_of(&self, b: &Symbol) -> Element<Symbol> {
        self.diff.get(b).cloned().unwrap_or_default()
    }

    fn bracket_of(&self, a: &Symbol, b: &Symbol) -> Element<Symbol> {
        self.bracket
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_default()
    }

    fn basis(&self) -> Option<Vec<Symbol>> {
        Some(self.basis.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn completes_by_antisymmetry() {
        let d = StructureConstantDgla::builder("t")
            .symbol("a", 0)
            .symbol("b", 1)
            .symbol("c", 1)
            .bracket("a", "b", &[("c", rat(2, 1))])
            .build()
            .unwrap();
        let (a, b, c) = (
            d.symbol("a").unwrap(),
            d.symbol("b").unwrap(),
            d.symbol("c").unwrap(),
        );
        assert_eq!(d.bracket_of(&b, &a), Element::term(c, rat(-2, 1)));
        assert!(d.bracket_of(&b, &b).is_zero());
    }

    #[test]
    fn rejects_contradictions_and_bad_references() {
        let contradictory = StructureConstantDgla::builder("t")
            .symbol("a", 0)
            .symbol("b", 0)
            .symbol("c", 0)
            .bracket("a", "b", &[("c", rat(1, 1))])
            .bracket("b", "a", &[("c", rat(1, 1))])
            .build_unchecked();
        assert!(matches!(contradictory, Err(Error::ContradictoryBracket(_))));

        let consistent = StructureConstantDgla::builder("t")
            .symbol("a", 0)
            .symbol("b", 0)
            .symbol("c", 0)
            .bracket("a", "b", &[("c", rat(1, 1))])
            .bracket("b", "a", &[("c", rat(-1, 1))])
            .build_unchecked();
        assert!(consistent.is_ok());

        let unknown = StructureConstantDgla::builder("t")
            .symbol("a", 1)
            .differential("a", &[("z", rat(1, 1))])
            .build();
        assert!(matches!(unknown, Err(Error::UnknownSymbol(s)) if s == "z"));

        let dup = StructureConstantDgla::builder("t")
            .symbol("a", 1)
            .symbol("a", 2)
            .build();
        assert!(matches!(dup, Err(Error::DuplicateSymbol(_))));

        let degree = StructureConstantDgla::builder("t")
            .symbol("a", 2)
            .symbol("b", 0)
            .differential("a", &[("b", rat(1, 1))])
            .build();
        assert!(matches!(degree, Err(Error::DegreeMismatch(_))));
    }
}
