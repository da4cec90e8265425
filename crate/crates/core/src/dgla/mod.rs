//! Differential graded Lie algebras.
//!
//! Grading is homological: the differential lowers degree by one and the
//! bracket is degree-additive. Axioms checked by [`validate`]:
//!
//! * `δ² = 0`
//! * `[a,b] = -(-1)^{|a||b|} [b,a]`
//! * `[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]`
//! * `δ[a,b] = [δa,b] + (-1)^{|a|} [a,δb]`
//! * degree conventions for `δ` and the bracket.

mod document;
mod structure;
mod truncation;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rational::sign_of_parity, Basis, Element, Graded};

pub use document::{
    load_dgla, parse_dgla, BasisEntry, BracketEntry, DglaDocument, DiffEntry, TermEntry,
};
pub use structure::{StructureConstantDgla, StructureConstantDglaBuilder};
pub use truncation::{truncate_positive, PositiveTruncation};

/// A computable DGLA: a differential and a bracket given on basis vectors and
/// extended (bi)linearly.
pub trait Dgla: Send + Sync {
    type Basis: Basis;

    fn differential_of(&self, b: &Self::Basis) -> Element<Self::Basis>;

    fn bracket_of(&self, a: &Self::Basis, b: &Self::Basis) -> Element<Self::Basis>;

    /// The full basis, when the algebra is finite. Symbolic algebras return
    /// `None` and are validated on caller-supplied windows instead.
    fn basis(&self) -> Option<Vec<Self::Basis>> {
        None
    }

    fn basis_in_degree(&self, d: i64) -> Option<Vec<Self::Basis>> {
        self.basis()
            .map(|bs| bs.into_iter().filter(|b| b.degree() == d).collect())
    }

    fn differential(&self, e: &Element<Self::Basis>) -> Element<Self::Basis> {
        e.map_linear(|b| self.differential_of(b))
    }

    fn bracket(&self, a: &Element<Self::Basis>, b: &Element<Self::Basis>) -> Element<Self::Basis> {
        if a.is_zero() || b.is_zero() {
            return Element::zero();
        }
        a.map_bilinear(b, |x, y| self.bracket_of(x, y))
    }
}

impl<D: Dgla + ?Sized> Dgla for &D {
    type Basis = D::Basis;

    fn differential_of(&self, b: &Self::Basis) -> Element<Self::Basis> {
        (**self).differential_of(b)
    }

    fn bracket_of(&self, a: &Self::Basis, b: &Self::Basis) -> Element<Self::Basis> {
        (**self).bracket_of(a, b)
    }

    fn basis(&self) -> Option<Vec<Self::Basis>> {
        (**self).basis()
    }

    fn basis_in_degree(&self, d: i64) -> Option<Vec<Self::Basis>> {
        (**self).basis_in_degree(d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    DifferentialDegree,
    DifferentialSquare,
    BracketDegree,
    Antisymmetry,
    Leibniz,
    Jacobi,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::DifferentialDegree => "differential-degree",
            Axiom::DifferentialSquare => "differential-square",
            Axiom::BracketDegree => "bracket-degree",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Leibniz => "leibniz",
            Axiom::Jacobi => "jacobi",
        };
        f.write_str(s)
    }
}

/// The first failing instance of an axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witnesses: Vec<String>,
    pub defect: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails on ({}): defect {}",
            self.axiom,
            self.witnesses.join(", "),
            self.defect
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub symbols: usize,
    pub pairs: usize,
    pub triples: usize,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn violation<B: Basis>(axiom: Axiom, witnesses: &[&B], defect: &Element<B>) -> Violation {
    Violation {
        axiom,
        witnesses: witnesses.iter().map(|b| b.to_string()).collect(),
        defect: defect.to_string(),
    }
}

fn has_degree<B: Basis>(e: &Element<B>, d: i64) -> bool {
    e.terms().all(|(b, _)| b.degree() == d)
}

fn check_single<D: Dgla>(d: &D, a: &D::Basis) -> Option<Violation> {
    let da = d.differential_of(a);
    if !has_degree(&da, a.degree() - 1) {
        return Some(violation(Axiom::DifferentialDegree, &[a], &da));
    }
    let dda = d.differential(&da);
    if !dda.is_zero() {
        return Some(violation(Axiom::DifferentialSquare, &[a], &dda));
    }
    None
}

fn check_pair<D: Dgla>(d: &D, a: &D::Basis, b: &D::Basis) -> Option<Violation> {
    let (da, db) = (a.degree(), b.degree());
    let ab = d.bracket_of(a, b);
    if !has_degree(&ab, da + db) {
        return Some(violation(Axiom::BracketDegree, &[a, b], &ab));
    }
    let ba = d.bracket_of(b, a);
    let anti = &ab + &ba.scale(&sign_of_parity(da * db));
    if !anti.is_zero() {
        return Some(violation(Axiom::Antisymmetry, &[a, b], &anti));
    }
    let (ea, eb) = (Element::basis(a.clone()), Element::basis(b.clone()));
    let lhs = d.differential(&ab);
    let rhs = d.bracket(&d.differential(&ea), &eb)
        + d.bracket(&ea, &d.differential(&eb))
            .scale(&sign_of_parity(da));
    let leibniz = &lhs - &rhs;
    if !leibniz.is_zero() {
        return Some(violation(Axiom::Leibniz, &[a, b], &leibniz));
    }
    None
}

fn check_triple<D: Dgla>(d: &D, a: &D::Basis, b: &D::Basis, c: &D::Basis) -> Option<Violation> {
    let (ea, eb, ec) = (
        Element::basis(a.clone()),
        Element::basis(b.clone()),
        Element::basis(c.clone()),
    );
    let lhs = d.bracket(&ea, &d.bracket(&eb, &ec));
    let rhs = d.bracket(&d.bracket(&ea, &eb), &ec)
        + d.bracket(&eb, &d.bracket(&ea, &ec))
            .scale(&sign_of_parity(a.degree() * b.degree()));
    let defect = &lhs - &rhs;
    (!defect.is_zero()).then(|| violation(Axiom::Jacobi, &[a, b, c], &defect))
}

/// Checks every axiom exhaustively over singles, pairs and triples drawn
/// from `scope`. The reported violation is the first one in the order
/// singles, pairs, triples (each lexicographic in `scope`), independent of
/// thread scheduling.
pub fn validate<D: Dgla>(d: &D, scope: &[D::Basis]) -> ValidationReport {
    validate_to_depth(d, scope, true)
}

/// [`validate`] without the Jacobi triples: degrees, `δ² = 0`,
/// antisymmetry and the Leibniz rule.
pub fn validate_pairs<D: Dgla>(d: &D, scope: &[D::Basis]) -> ValidationReport {
    validate_to_depth(d, scope, false)
}

fn validate_to_depth<D: Dgla>(d: &D, scope: &[D::Basis], triples: bool) -> ValidationReport {
    let n = scope.len();
    let mut report = ValidationReport {
        symbols: n,
        pairs: n * n,
        triples: if triples { n * n * n } else { 0 },
        violation: None,
    };
    report.violation = scope.par_iter().find_map_first(|a| check_single(d, a));
    if report.violation.is_some() {
        return report;
    }
    report.violation = (0..n * n)
        .into_par_iter()
        .find_map_first(|i| check_pair(d, &scope[i / n], &scope[i % n]));
    if report.violation.is_some() || !triples {
        return report;
    }
    report.violation = (0..n * n * n).into_par_iter().find_map_first(|i| {
        check_triple(d, &scope[i / (n * n)], &scope[(i / n) % n], &scope[i % n])
    });
    report
}

/// [`validate`] over the whole basis of a finite algebra.
pub fn validate_finite<D: Dgla>(d: &D) -> Option<ValidationReport> {
    d.basis().map(|scope| validate(d, &scope))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Symbol};

    #[test]
    fn abelian_algebra_passes() {
        let d = StructureConstantDgla::builder("abelian")
            .symbol("a", 1)
            .symbol("b", 2)
            .symbol("c", 0)
            .build()
            .unwrap();
        assert!(validate_finite(&d).unwrap().passed());
    }

    #[test]
    fn symmetric_even_bracket_is_an_antisymmetry_violation() {
        let (a, b, c) = (
            Symbol::new("a", 0),
            Symbol::new("b", 2),
            Symbol::new("c", 2),
        );
        let d = StructureConstantDgla::from_raw_tables(
            "bad",
            vec![a.clone(), b.clone(), c.clone()],
            Default::default(),
            [
                ((a.clone(), b.clone()), Element::basis(c.clone())),
                ((b.clone(), a.clone()), Element::basis(c.clone())),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let v = validate_finite(&d).unwrap().violation.expect("must fail");
        assert_eq!(v.axiom, Axiom::Antisymmetry);
        assert_eq!(v.witnesses, vec!["a", "b"]);
    }

    #[test]
    fn symmetric_odd_bracket_is_fine() {
        // For odd a, b graded antisymmetry *requires* [a,b] = [b,a].
        let d = StructureConstantDgla::builder("odd")
            .symbol("a", 1)
            .symbol("b", 1)
            .symbol("c", 2)
            .bracket("a", "b", &[("c", rat(1, 1))])
            .build()
            .unwrap();
        let ab = d.bracket_of(&d.symbol("a").unwrap(), &d.symbol("b").unwrap());
        let ba = d.bracket_of(&d.symbol("b").unwrap(), &d.symbol("a").unwrap());
        assert_eq!(ab, ba);
        assert!(validate_finite(&d).unwrap().passed());
    }

    #[test]
    fn nonzero_square_is_reported() {
        let d = StructureConstantDgla::builder("d2")
            .symbol("a", 2)
            .symbol("b", 1)
            .symbol("c", 0)
            .differential("a", &[("b", rat(1, 1))])
            .differential("b", &[("c", rat(1, 1))])
            .build_unchecked()
            .unwrap();
        let v = validate_finite(&d).unwrap().violation.unwrap();
        assert_eq!(v.axiom, Axiom::DifferentialSquare);
        assert_eq!(v.witnesses, vec!["a"]);
    }

    #[test]
    fn broken_leibniz_is_reported() {
        let d = StructureConstantDgla::builder("leib")
            .symbol("x", 1)
            .symbol("y", 0)
            .symbol("z", 1)
            .differential("x", &[("y", rat(1, 1))])
            .bracket("y", "y", &[])
            .bracket("x", "y", &[("z", rat(1, 1))])
            .build_unchecked()
            .unwrap();
        let v = validate_finite(&d).unwrap().violation.unwrap();
        assert!(matches!(v.axiom, Axiom::Leibniz | Axiom::Jacobi), "{v}");
    }
}
