//! Higher derived brackets on the positive truncation of a DGLA.
//!
//! With `D` equal to `δ` on degree one and zero elsewhere, the brackets on
//! `τ_{>0} L` are
//!
//! ```text
//! {a}            = −δa if |a| > 1,  0 if |a| = 1
//! {a_0, …, a_n}  = b_n Σ_{π ∈ S_{n+1}} (-1)^ε [[…[[D a_π0, a_π1], a_π2], …], a_πn]
//! ```
//!
//! with `b_n = (-1)^n B_n / n!`. Only permutations starting at a degree-one
//! argument contribute, since `D` kills everything else; the evaluation walks
//! the permutations depth-first so shared prefixes are bracketed once.

mod explicit;
mod z;

use num_traits::One;
use serde::Serialize;

use crate::algebra::{
    bracket_weight, koszul_sign, rational::sign_of_parity, Element, Graded, Permutation, Rational,
};
use crate::dgla::{Dgla, PositiveTruncation};
use crate::error::{Error, Result};
use crate::linfinity::{LInfinity, DEFAULT_ARITY_CAP};

pub use explicit::{explicit_binary, explicit_ternary, explicit_ternary_as_printed};
pub use z::{
    corollary_f_check, jacobi_term_decomposition, odd_case_polynomial, stratum_coefficients,
    z_combination, z_expression, CorollaryFReport, Stratum, StratumKind,
};

/// `D a = δ(a_1)`, where `a_1` is the degree-one component of `a`.
pub fn d_operator<D: Dgla>(d: &D, a: &Element<D::Basis>) -> Element<D::Basis> {
    d.differential(&a.homogeneous_component(1))
}

/// Sign of the unary bracket on elements of degree above one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnarySign {
    /// `{a} = −δa`. Together with the Bernoulli-weighted higher brackets
    /// this satisfies every Jacobi rule.
    #[default]
    Minus,
    /// `{a} = δa`. The higher brackets are unchanged, but the Jacobi rules
    /// of even arity `n ≥ 2` pick up a defect from the `k ∈ {0, n}` terms.
    Plus,
}

impl UnarySign {
    pub fn factor(self) -> Rational {
        match self {
            UnarySign::Minus => -Rational::one(),
            UnarySign::Plus => Rational::one(),
        }
    }
}

/// The L∞ structure on `τ_{>0} L`.
pub struct DerivedStructure<'a, D: Dgla> {
    ambient: &'a D,
    arity_cap: usize,
    unary: UnarySign,
}

impl<D: Dgla> Clone for DerivedStructure<'_, D> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<D: Dgla> Copy for DerivedStructure<'_, D> {}

impl<'a, D: Dgla> DerivedStructure<'a, D> {
    pub fn new(ambient: &'a D) -> Self {
        Self {
            ambient,
            arity_cap: DEFAULT_ARITY_CAP,
            unary: UnarySign::default(),
        }
    }

    pub fn with_unary_sign(mut self, sign: UnarySign) -> Self {
        self.unary = sign;
        self
    }

    pub fn unary_sign(&self) -> UnarySign {
        self.unary
    }

    pub fn with_arity_cap(mut self, cap: usize) -> Self {
        self.arity_cap = cap;
        self
    }

    pub fn ambient(&self) -> &'a D {
        self.ambient
    }

    pub fn window(&self) -> PositiveTruncation<'a, D> {
        crate::dgla::truncate_positive(self.ambient)
    }

    fn check_inputs(&self, args: &[Element<D::Basis>]) -> Result<()> {
        let window = self.window();
        match args.iter().find(|a| !window.admits_element(a)) {
            Some(bad) => Err(Error::Input(format!(
                "{bad} has a component of non-positive degree"
            ))),
            None => Ok(()),
        }
    }

    /// The derived bracket of a tuple of positive-degree elements.
    pub fn derived_bracket(&self, args: &[Element<D::Basis>]) -> Result<Element<D::Basis>> {
        self.check_inputs(args)?;
        self.bracket(args)
    }

    fn unary(&self, a: &Element<D::Basis>) -> Element<D::Basis> {
        match a.degree() {
            Some(d) if d > 1 => self.ambient.differential(a).scale(&self.unary.factor()),
            _ => Element::zero(),
        }
    }

    /// `Σ_π (-1)^ε [[…[D a_π0, a_π1], …], a_πn]` without the Bernoulli weight.
    pub fn symmetrized_nested(
        &self,
        args: &[Element<D::Basis>],
        degrees: &[i64],
    ) -> Element<D::Basis> {
        let mut total = Element::zero();
        let all: Vec<usize> = (0..args.len()).collect();
        for (pos, &first) in all.iter().enumerate() {
            if degrees[first] != 1 {
                continue;
            }
            let seed = d_operator(self.ambient, &args[first]);
            if seed.is_zero() {
                continue;
            }
            let passed: i64 = all[..pos].iter().map(|&i| degrees[i]).sum();
            let odd = degrees[first] * passed % 2 != 0;
            let mut rest = all.clone();
            rest.remove(pos);
            self.descend(args, degrees, &rest, seed, odd, &mut total);
        }
        total
    }

    fn descend(
        &self,
        args: &[Element<D::Basis>],
        degrees: &[i64],
        remaining: &[usize],
        acc: Element<D::Basis>,
        odd: bool,
        total: &mut Element<D::Basis>,
    ) {
        if remaining.is_empty() {
            total.add_scaled(&acc, &sign_of_parity(odd as i64));
            return;
        }
        let mut passed = 0i64;
        for (pos, &j) in remaining.iter().enumerate() {
            let next = self.ambient.bracket(&acc, &args[j]);
            if !next.is_zero() {
                let flip = degrees[j] * passed % 2 != 0;
                let mut rest = remaining.to_vec();
                rest.remove(pos);
                self.descend(args, degrees, &rest, next, odd ^ flip, total);
            }
            passed += degrees[j];
        }
    }

    /// Reference evaluation: every permutation, explicit Koszul signs, no
    /// pruning by degree. Exponential in the arity; for tests.
    pub fn symmetrized_nested_unpruned(
        &self,
        args: &[Element<D::Basis>],
        degrees: &[i64],
    ) -> Element<D::Basis> {
        let mut total = Element::zero();
        for perm in Permutation::all(args.len()) {
            let order = perm.images();
            let mut acc = d_operator(self.ambient, &args[order[0]]);
            for &j in &order[1..] {
                acc = self.ambient.bracket(&acc, &args[j]);
            }
            let sign = koszul_sign(&perm, degrees).expect("lengths agree");
            total.add_scaled(&acc, &sign_of_parity(if sign < 0 { 1 } else { 0 }));
        }
        total
    }
}

impl<D: Dgla> LInfinity for DerivedStructure<'_, D> {
    type Basis = D::Basis;

    fn bracket_homogeneous(&self, args: &[Element<D::Basis>]) -> Result<Element<D::Basis>> {
        if args.len() == 1 {
            return Ok(self.unary(&args[0]));
        }
        let degrees: Vec<i64> = args
            .iter()
            .map(|a| a.degree().expect("homogeneous arguments"))
            .collect();
        let n = args.len() - 1;
        let weight = bracket_weight(n);
        if num_traits::Zero::is_zero(&weight) {
            return Ok(Element::zero());
        }
        Ok(self.symmetrized_nested(args, &degrees).scale(&weight))
    }

    fn arity_cap(&self) -> usize {
        self.arity_cap
    }
}

/// Positive-degree basis of a finite algebra, sorted.
pub fn positive_basis<D: Dgla>(d: &D) -> Vec<D::Basis> {
    let mut v: Vec<_> = d
        .basis()
        .unwrap_or_default()
        .into_iter()
        .filter(|b| b.degree() > 0)
        .collect();
    v.sort();
    v
}
