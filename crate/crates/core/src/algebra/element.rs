use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Anything carrying an integer degree.
pub trait Graded {
    fn degree(&self) -> i64;
}

/// Requirements on the basis type of an [`Element`].
pub trait Basis: Graded + Ord + Clone + fmt::Debug + fmt::Display + Send + Sync {}

impl<T: Graded + Ord + Clone + fmt::Debug + fmt::Display + Send + Sync> Basis for T {}

/// A named basis vector of a finitely presented algebra.
///
/// Ordering is by id first, so ids are expected to be unique within an
/// algebra.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    id: Arc<str>,
    degree: i64,
}

impl Symbol {
    pub fn new(id: impl Into<Arc<str>>, degree: i64) -> Self {
        Self {
            id: id.into(),
            degree,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }
}

impl Graded for Symbol {
    fn degree(&self) -> i64 {
        self.degree
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.id, self.degree)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// A finite linear combination of basis vectors with rational coefficients.
///
/// Zero coefficients are never stored, so the zero element is the empty map
/// and equality is term-wise.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element<B> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for Element<B> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Basis> Element<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Rational::one())
    }

    pub fn term(b: B, coeff: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(b, coeff);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, Rational)>) -> Self {
        let mut e = Self::zero();
        for (b, c) in terms {
            e.add_term(b, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, b: B, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `coeff * other` in place.
    pub fn add_scaled(&mut self, other: &Self, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c * coeff);
        }
    }

    pub fn scale(&self, coeff: &Rational) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), c * coeff))
                .collect(),
        }
    }

    /// Sub-sum of the terms of degree `d`.
    pub fn homogeneous_component(&self, d: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == d)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components, in increasing degree.
    pub fn components(&self) -> Vec<(i64, Self)> {
        let mut by_degree: BTreeMap<i64, Self> = BTreeMap::new();
        for (b, c) in &self.terms {
            by_degree
                .entry(b.degree())
                .or_default()
                .terms
                .insert(b.clone(), c.clone());
        }
        by_degree.into_iter().collect()
    }

    /// The common degree of all terms, or `None` for zero and for
    /// inhomogeneous elements.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Graded::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Applies a linear map given on basis vectors.
    pub fn map_linear<C: Basis>(&self, mut f: impl FnMut(&B) -> Element<C>) -> Element<C> {
        let mut out = Element::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Applies a bilinear map given on pairs of basis vectors.
    pub fn map_bilinear<C: Basis, D: Basis>(
        &self,
        other: &Element<C>,
        mut f: impl FnMut(&B, &C) -> Element<D>,
    ) -> Element<D> {
        let mut out = Element::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let v = f(a, b);
                if !v.is_zero() {
                    out.add_scaled(&v, &(ca * cb));
                }
            }
        }
        out
    }
}

impl<B: Basis> Add for Element<B> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<B: Basis> Add<&Element<B>> for &Element<B> {
    type Output = Element<B>;
    fn add(self, rhs: &Element<B>) -> Element<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<B: Basis> AddAssign for Element<B> {
    fn add_assign(&mut self, rhs: Self) {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
    }
}

impl<B: Basis> Sub for Element<B> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<B: Basis> Sub<&Element<B>> for &Element<B> {
    type Output = Element<B>;
    fn sub(self, rhs: &Element<B>) -> Element<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<B: Basis> Neg for Element<B> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect(),
        }
    }
}

impl<B: Basis> std::iter::Sum for Element<B> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, e| acc + e)
    }
}

impl<B: Basis> fmt::Debug for Element<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical text form: terms in basis order, `coeff*id` with the
/// coefficient dropped when it is one, `0` for the zero element.
impl<B: Basis> fmt::Display for Element<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if mag.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{mag}*{b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn sym(id: &str, d: i64) -> Symbol {
        Symbol::new(id, d)
    }

    #[test]
    fn zero_component_is_zero() {
        let z = Element::<Symbol>::zero();
        assert!(z.homogeneous_component(3).is_zero());
    }

    #[test]
    fn additive_inverse() {
        let e = Element::from_terms([(sym("a", 1), rat(2, 3)), (sym("b", 2), int(-1))]);
        let sum = e.clone() + e.scale(&int(-1));
        assert!(sum.is_zero());
    }

    #[test]
    fn mixed_components() {
        let a = Element::term(sym("a", 1), int(2));
        let b = Element::term(sym("b", 2), rat(1, 2));
        let e = a.clone() + b.clone();
        assert_eq!(e.degree(), None);
        assert_eq!(e.homogeneous_component(1), a);
        assert_eq!(e.homogeneous_component(2), b);
        assert!(e.homogeneous_component(0).is_zero());
        let recovered: Element<Symbol> = e.components().into_iter().map(|(_, c)| c).sum();
        assert_eq!(recovered, e);
    }

    #[test]
    fn no_stored_zeros() {
        let mut e = Element::basis(sym("a", 1));
        e.add_term(sym("a", 1), int(-1));
        assert!(e.is_zero());
        assert_eq!(e, Element::zero());
    }

    #[test]
    fn display() {
        let e = Element::from_terms([(sym("b", 1), rat(-1, 2)), (sym("a", 1), int(1))]);
        assert_eq!(e.to_string(), "a - 1/2*b");
        assert_eq!(Element::<Symbol>::zero().to_string(), "0");
        assert_eq!((-Element::basis(sym("a", 0))).to_string(), "-a");
    }
}
