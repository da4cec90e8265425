//! The shifted mapping cone `C_φ[−1] = K[−1] ⊕ L` of a DGLA morphism
//! `φ: K → L`, its L∞ brackets, and the path-space model `𝒞_φ`.
//!
//! With `x, y ∈ K[−1]` and `a_i ∈ L` the nonvanishing brackets are
//!
//! ```text
//! {a}              = −δa
//! {x}              = φ(x) + δx
//! {x, y}           = (−1)^{|x|_K} [x, y]
//! {x, a_1, …, a_n} = b_n Σ_{π ∈ S_n} (−1)^ε [[…[φ(x), a_π1], …], a_πn]
//! ```
//!
//! where `|x|_K` is the degree in `K`, one less than the cone degree. Every
//! sign here is selectable through [`ConeConvention`]; the default is the
//! one under which the Jacobi rules and the comparison with the derived
//! brackets on `τ_{>0} L` both hold. The unary rule alone forces the two
//! differentials to enter with opposite signs, since
//! `{{x}} = ±(u_L + u_K) δφ(x)`.

mod morphism;
mod path;

use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

use crate::algebra::{bracket_weight, rational::sign_of_parity, Basis, Element, Graded, Rational};
use crate::derived::{d_operator, DerivedStructure, UnarySign};
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::linfinity::{jacobi_defect, LInfinity, DEFAULT_ARITY_CAP};
use crate::sweep::{sweep_window, SweepOutcome, SweepSettings};

pub use morphism::{validate_morphism, DglaMorphism, NonPositivePart, TruncationInclusion};
pub use path::{
    contraction_check, homotopy_h, inclusion, path_bracket, path_differential, projection,
    ContractionReport, HVariant, InclusionKind, PathBasis, PathSpace, PropertyOutcome,
    DE_RHAM_SIGN,
};

/// A basis vector of `K[−1] ⊕ L`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConeBasis<K, L> {
    K(K),
    L(L),
}

impl<K: Graded, L: Graded> Graded for ConeBasis<K, L> {
    fn degree(&self) -> i64 {
        match self {
            ConeBasis::K(k) => k.degree() + 1,
            ConeBasis::L(l) => l.degree(),
        }
    }
}

impl<K: fmt::Display, L: fmt::Display> fmt::Display for ConeBasis<K, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeBasis::K(k) => write!(f, "k:{k}"),
            ConeBasis::L(l) => write!(f, "l:{l}"),
        }
    }
}

pub type ConeElement<K, L> = Element<ConeBasis<K, L>>;

/// Embeds a `K`-element into the cone.
pub fn k_part_into<K: Basis, L: Basis>(x: &Element<K>) -> ConeElement<K, L> {
    x.map_linear(|b| Element::basis(ConeBasis::K(b.clone())))
}

/// Embeds an `L`-element into the cone.
pub fn l_part_into<K: Basis, L: Basis>(a: &Element<L>) -> ConeElement<K, L> {
    a.map_linear(|b| Element::basis(ConeBasis::L(b.clone())))
}

/// Splits a cone element into its `K` and `L` parts.
pub fn split<K: Basis, L: Basis>(e: &ConeElement<K, L>) -> (Element<K>, Element<L>) {
    let (mut k, mut l) = (Element::zero(), Element::zero());
    for (b, c) in e.terms() {
        match b {
            ConeBasis::K(x) => k.add_term(x.clone(), c.clone()),
            ConeBasis::L(a) => l.add_term(a.clone(), c.clone()),
        }
    }
    (k, l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        }
    }
}

/// Which degree of `x` enters the sign of the binary bracket `{x, y}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinarySign {
    /// `(−1)^{|x|}` with `|x|` the degree in `K`.
    BaseDegree,
    /// `(−1)^{|x|}` with `|x|` the shifted degree in the cone.
    ConeDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConeConvention {
    /// `{a} = ±δa` for `a ∈ L`.
    pub l_unary: Sign,
    /// The sign of `φ(x)` in `{x}`.
    pub phi: Sign,
    /// The sign of `δx` in `{x}`.
    pub k_unary: Sign,
    pub binary: BinarySign,
}

impl Default for ConeConvention {
    fn default() -> Self {
        Self::RESOLVED
    }
}

impl ConeConvention {
    /// `{a} = −δa`, `{x} = φ(x) + δx`, `{x,y} = (−1)^{|x|_K}[x,y]`.
    pub const RESOLVED: Self = Self {
        l_unary: Sign::Minus,
        phi: Sign::Plus,
        k_unary: Sign::Plus,
        binary: BinarySign::BaseDegree,
    };

    /// `{a} = δa`, `{x} = φ(x) − δx`, `{x,y} = (−1)^{|x|}[x,y]` with the cone
    /// degree of `x`.
    pub const LITERAL: Self = Self {
        l_unary: Sign::Plus,
        phi: Sign::Plus,
        k_unary: Sign::Minus,
        binary: BinarySign::ConeDegree,
    };

    /// Every combination of the four signs, the resolved one first.
    pub fn all() -> Vec<Self> {
        let signs = [Sign::Minus, Sign::Plus];
        let mut out = vec![Self::RESOLVED];
        for l_unary in signs {
            for phi in signs {
                for k_unary in signs {
                    for binary in [BinarySign::BaseDegree, BinarySign::ConeDegree] {
                        let c = Self {
                            l_unary,
                            phi,
                            k_unary,
                            binary,
                        };
                        if c != Self::RESOLVED {
                            out.push(c);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        let s = |x: Sign| if x == Sign::Plus { "+" } else { "-" };
        let b = match self.binary {
            BinarySign::BaseDegree => "base",
            BinarySign::ConeDegree => "cone",
        };
        format!(
            "{{a}}={}δa {{x}}={}φx{}δx binary:{b}",
            s(self.l_unary),
            s(self.phi),
            s(self.k_unary)
        )
    }

    /// The unary sign the derived brackets must use to be compared.
    pub fn derived_unary(&self) -> UnarySign {
        match self.l_unary {
            Sign::Minus => UnarySign::Minus,
            Sign::Plus => UnarySign::Plus,
        }
    }
}

/// The L∞ brackets on `K[−1] ⊕ L`.
pub struct ConeBrackets<'m, M: DglaMorphism> {
    phi: &'m M,
    convention: ConeConvention,
    arity_cap: usize,
}

pub(crate) type KOf<M> = <<M as DglaMorphism>::Source as Dgla>::Basis;
pub(crate) type LOf<M> = <<M as DglaMorphism>::Target as Dgla>::Basis;

enum Slot<K: Basis, L: Basis> {
    K(Element<K>),
    L(Element<L>),
}

impl<'m, M: DglaMorphism> ConeBrackets<'m, M> {
    pub fn new(phi: &'m M) -> Self {
        Self::with_convention(phi, ConeConvention::default())
    }

    pub fn with_convention(phi: &'m M, convention: ConeConvention) -> Self {
        Self {
            phi,
            convention,
            arity_cap: DEFAULT_ARITY_CAP,
        }
    }

    pub fn with_arity_cap(mut self, cap: usize) -> Self {
        self.arity_cap = cap;
        self
    }

    pub fn convention(&self) -> ConeConvention {
        self.convention
    }

    pub fn morphism(&self) -> &'m M {
        self.phi
    }

    /// `Σ_π (-1)^ε [[…[φ(x), a_π1], …], a_πn]`, walking permutations
    /// depth-first.
    fn nested(
        &self,
        acc: Element<LOf<M>>,
        args: &[Element<LOf<M>>],
        degrees: &[i64],
    ) -> Element<LOf<M>> {
        let mut total = Element::zero();
        let all: Vec<usize> = (0..args.len()).collect();
        self.descend(args, degrees, &all, acc, false, &mut total);
        total
    }

    fn descend(
        &self,
        args: &[Element<LOf<M>>],
        degrees: &[i64],
        remaining: &[usize],
        acc: Element<LOf<M>>,
        odd: bool,
        total: &mut Element<LOf<M>>,
    ) {
        if remaining.is_empty() {
            total.add_scaled(&acc, &sign_of_parity(odd as i64));
            return;
        }
        let l = self.phi.target();
        let mut passed = 0i64;
        for (pos, &j) in remaining.iter().enumerate() {
            let next = l.bracket(&acc, &args[j]);
            if !next.is_zero() {
                let flip = degrees[j] * passed % 2 != 0;
                let mut rest = remaining.to_vec();
                rest.remove(pos);
                self.descend(args, degrees, &rest, next, odd ^ flip, total);
            }
            passed += degrees[j];
        }
    }

    /// The bracket on arguments that each lie purely in `K[−1]` or in `L`.
    fn pure(&self, slots: &[Slot<KOf<M>, LOf<M>>]) -> ConeElement<KOf<M>, LOf<M>> {
        let degree = |s: &Slot<KOf<M>, LOf<M>>| match s {
            Slot::K(x) => x.degree().expect("homogeneous") + 1,
            Slot::L(a) => a.degree().expect("homogeneous"),
        };
        // Move the K-slots to the front, keeping their relative order.
        let mut parity = 0i64;
        let mut ls_passed = 0i64;
        let (mut ks, mut ls) = (Vec::new(), Vec::new());
        for s in slots {
            match s {
                Slot::K(x) => {
                    parity += degree(s) * ls_passed;
                    ks.push(x);
                }
                Slot::L(a) => {
                    ls_passed += degree(s);
                    ls.push(a.clone());
                }
            }
        }
        let sign = sign_of_parity(parity);
        let (k, l) = (self.phi.source(), self.phi.target());
        let c = &self.convention;
        let out = match (ks.len(), ls.len()) {
            (0, 1) => l_part_into(&l.differential(&ls[0]).scale(&c.l_unary.factor())),
            (1, 0) => {
                let x = ks[0];
                l_part_into(&self.phi.apply(x).scale(&c.phi.factor()))
                    + k_part_into(&k.differential(x).scale(&c.k_unary.factor()))
            }
            (2, 0) => {
                let d = ks[0].degree().expect("homogeneous")
                    + match c.binary {
                        BinarySign::BaseDegree => 0,
                        BinarySign::ConeDegree => 1,
                    };
                k_part_into(&k.bracket(ks[0], ks[1]).scale(&sign_of_parity(d)))
            }
            (1, n) if n >= 1 => {
                let w = bracket_weight(n);
                if w.is_zero() {
                    Element::zero()
                } else {
                    let degrees: Vec<i64> = ls
                        .iter()
                        .map(|a| a.degree().expect("homogeneous"))
                        .collect();
                    l_part_into(&self.nested(self.phi.apply(ks[0]), &ls, &degrees).scale(&w))
                }
            }
            _ => Element::zero(),
        };
        out.scale(&sign)
    }
}

impl<M: DglaMorphism> LInfinity for ConeBrackets<'_, M> {
    type Basis = ConeBasis<KOf<M>, LOf<M>>;

    fn bracket_homogeneous(&self, args: &[Element<Self::Basis>]) -> Result<Element<Self::Basis>> {
        let parts: Vec<(Element<KOf<M>>, Element<LOf<M>>)> = args.iter().map(split).collect();
        let mut total = Element::zero();
        // Expand each argument into its K and L parts.
        for mask in 0u32..(1 << args.len()) {
            let mut slots = Vec::with_capacity(args.len());
            for (i, (k, l)) in parts.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    slots.push(Slot::K(k.clone()));
                } else {
                    slots.push(Slot::L(l.clone()));
                }
            }
            let empty = slots.iter().any(|s| match s {
                Slot::K(x) => x.is_zero(),
                Slot::L(a) => a.is_zero(),
            });
            if !empty {
                total += self.pure(&slots);
            }
        }
        Ok(total)
    }

    fn arity_cap(&self) -> usize {
        self.arity_cap
    }
}

/// `a ↦ (Da, a)` from `τ_{>0} L` into the cone of `τ_{≤0} L → L`.
pub fn transport<D: Dgla>(d: &D, a: &Element<D::Basis>) -> ConeElement<D::Basis, D::Basis> {
    k_part_into(&d_operator(d, a)) + l_part_into(a)
}

/// Basis of `K[−1] ⊕ L` for the truncation inclusion of a finite algebra.
pub fn cone_window<D: Dgla>(d: &D) -> Vec<ConeBasis<D::Basis, D::Basis>> {
    let mut out: Vec<_> = d
        .basis()
        .unwrap_or_default()
        .into_iter()
        .flat_map(|b| {
            let k = (b.degree() <= 0).then(|| ConeBasis::K(b.clone()));
            k.into_iter().chain(std::iter::once(ConeBasis::L(b)))
        })
        .collect();
    out.sort();
    out
}

/// Jacobi rule `n` of the cone brackets over multisets of the window.
pub fn cone_jacobi<M: DglaMorphism>(
    cone: &ConeBrackets<'_, M>,
    n: usize,
    window: &[ConeBasis<KOf<M>, LOf<M>>],
    settings: &SweepSettings,
) -> Result<SweepOutcome> {
    sweep_window(window, n + 1, settings, |args| {
        let defect = jacobi_defect(cone, n, args)?;
        Ok((!defect.is_zero()).then(|| defect.to_string()))
    })
}

/// Compares the cone brackets of transported tuples with the transport of
/// the derived brackets, over multisets of positive basis vectors.
pub fn transport_agreement<D: Dgla>(
    d: &D,
    arity: usize,
    window: &[D::Basis],
    convention: ConeConvention,
    settings: &SweepSettings,
) -> Result<SweepOutcome> {
    if arity == 0 {
        return Err(Error::Input("arity must be at least 1".into()));
    }
    if let Some(bad) = window.iter().find(|b| b.degree() <= 0) {
        return Err(Error::Input(format!("{bad} is not of positive degree")));
    }
    let phi = TruncationInclusion::new(d);
    let cone = ConeBrackets::with_convention(&phi, convention);
    let derived = DerivedStructure::new(d).with_unary_sign(convention.derived_unary());
    if arity > cone.arity_cap() {
        return Err(Error::ArityCap {
            arity,
            cap: cone.arity_cap(),
        });
    }
    sweep_window(window, arity, settings, |args| {
        let moved: Vec<_> = args.iter().map(|a| transport(d, a)).collect();
        let lhs = cone.bracket(&moved)?;
        let rhs = transport(d, &derived.bracket(args)?);
        Ok((lhs != rhs).then(|| (lhs - rhs).to_string()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Symbol};
    use crate::presets::finite_preset;

    fn sym(d: &crate::dgla::StructureConstantDgla, id: &str) -> Symbol {
        d.symbol(id).unwrap().clone()
    }

    #[test]
    fn unary_brackets() {
        let d = finite_preset("sl2-pqr").unwrap();
        let phi = TruncationInclusion::new(&d);
        let cone = ConeBrackets::new(&phi);
        let p = Element::basis(sym(&d, "e.p"));
        let x = Element::basis(ConeBasis::L(sym(&d, "e.p")));
        assert_eq!(
            cone.bracket(&[x]).unwrap(),
            l_part_into(&d.differential(&p).scale(&rat(-1, 1)))
        );
        let k = Element::basis(ConeBasis::K(sym(&d, "h.1")));
        assert_eq!(
            cone.bracket(&[k]).unwrap(),
            Element::basis(ConeBasis::L(sym(&d, "h.1")))
        );
    }

    #[test]
    fn three_l_arguments_vanish() {
        let d = finite_preset("sl2-pqr").unwrap();
        let phi = TruncationInclusion::new(&d);
        let cone = ConeBrackets::new(&phi);
        let a = |id: &str| Element::basis(ConeBasis::L(sym(&d, id)));
        let v = cone.bracket(&[a("e.p"), a("f.p"), a("h.p")]).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn transport_of_degree_one() {
        let d = finite_preset("sl2-pqr").unwrap();
        let a = Element::basis(sym(&d, "e.p"));
        let (k, l) = split(&transport(&d, &a));
        assert_eq!(k, Element::basis(sym(&d, "e.1")));
        assert_eq!(l, a);
        let b = Element::basis(sym(&d, "e.p_q"));
        let (k, l) = split(&transport(&d, &b));
        assert!(k.is_zero());
        assert_eq!(l, b);
    }
}
