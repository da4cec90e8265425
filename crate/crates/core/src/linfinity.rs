//! L∞-algebras with graded-symmetric brackets of degree −1.
//!
//! The `n`th Jacobi rule reads
//!
//! ```text
//! Σ_{k=0}^{n} Σ_{I ⊔ J = {0..n}, |I| = k+1} (-1)^ε {{a_I}, a_J} = 0
//! ```
//!
//! where `(-1)^ε` is the plain Koszul sign of the unshuffle `I ++ J`.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rational::sign_of_parity, unshuffles, Basis, Element, Graded};
use crate::error::{Error, Result};

pub const DEFAULT_ARITY_CAP: usize = 5;

pub trait LInfinity: Send + Sync {
    type Basis: Basis;

    /// The bracket on nonzero homogeneous arguments.
    fn bracket_homogeneous(&self, args: &[Element<Self::Basis>]) -> Result<Element<Self::Basis>>;

    /// Largest supported number of arguments.
    fn arity_cap(&self) -> usize {
        DEFAULT_ARITY_CAP
    }

    /// Evaluates a bracket on arbitrary arguments by expanding each one into
    /// homogeneous components.
    fn bracket(&self, args: &[Element<Self::Basis>]) -> Result<Element<Self::Basis>> {
        if args.is_empty() {
            return Err(Error::Input("brackets take at least one argument".into()));
        }
        if args.len() > self.arity_cap() {
            return Err(Error::ArityCap {
                arity: args.len(),
                cap: self.arity_cap(),
            });
        }
        if args.iter().any(Element::is_zero) {
            return Ok(Element::zero());
        }
        if args.iter().all(|a| a.degree().is_some()) {
            return self.bracket_homogeneous(args);
        }
        let mut out = Element::zero();
        for parts in args
            .iter()
            .map(|a| a.components())
            .multi_cartesian_product()
        {
            let hom: Vec<_> = parts.into_iter().map(|(_, c)| c).collect();
            out += self.bracket_homogeneous(&hom)?;
        }
        Ok(out)
    }
}

impl<L: LInfinity + ?Sized> LInfinity for &L {
    type Basis = L::Basis;

    fn bracket_homogeneous(&self, args: &[Element<Self::Basis>]) -> Result<Element<Self::Basis>> {
        (**self).bracket_homogeneous(args)
    }

    fn arity_cap(&self) -> usize {
        (**self).arity_cap()
    }
}

fn degrees_of<B: Basis>(tuple: &[Element<B>]) -> Result<Vec<i64>> {
    tuple
        .iter()
        .map(|a| {
            a.degree()
                .ok_or_else(|| Error::Input(format!("{a} is not homogeneous")))
        })
        .collect()
}

/// Every adjacent-swap identity
/// `{…, a_{i-1}, a_i, …} = (-1)^{|a_{i-1}||a_i|} {…, a_i, a_{i-1}, …}`.
pub fn check_symmetry<L: LInfinity>(b: &L, tuple: &[Element<L::Basis>]) -> Result<bool> {
    if tuple.iter().any(Element::is_zero) {
        return Ok(true);
    }
    let degrees = degrees_of(tuple)?;
    let value = b.bracket(tuple)?;
    for i in 1..tuple.len() {
        let mut swapped = tuple.to_vec();
        swapped.swap(i - 1, i);
        let other = b
            .bracket(&swapped)?
            .scale(&sign_of_parity(degrees[i - 1] * degrees[i]));
        if other != value {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Jacobi sum split by `k`, the number of arguments of the inner bracket
/// minus one. Entry `k` holds `Σ_{|I|=k+1} (-1)^ε {{a_I}, a_J}`.
pub fn jacobi_strata<L: LInfinity>(
    b: &L,
    n: usize,
    tuple: &[Element<L::Basis>],
) -> Result<Vec<Element<L::Basis>>> {
    if tuple.len() != n + 1 {
        return Err(Error::LengthMismatch {
            expected: n + 1,
            actual: tuple.len(),
        });
    }
    if n + 1 > b.arity_cap() {
        return Err(Error::ArityCap {
            arity: n + 1,
            cap: b.arity_cap(),
        });
    }
    if tuple.iter().any(Element::is_zero) {
        return Ok(vec![Element::zero(); n + 1]);
    }
    if tuple.iter().any(|a| a.degree().is_none()) {
        let mut total = vec![Element::zero(); n + 1];
        for parts in tuple
            .iter()
            .map(|a| a.components())
            .multi_cartesian_product()
        {
            let hom: Vec<_> = parts.into_iter().map(|(_, c)| c).collect();
            for (acc, s) in total.iter_mut().zip(jacobi_strata(b, n, &hom)?) {
                *acc += s;
            }
        }
        return Ok(total);
    }
    let degrees = degrees_of(tuple)?;
    let mut strata = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = Element::zero();
        for u in unshuffles(n, k)? {
            let inner_args: Vec<_> = u.first.iter().map(|&i| tuple[i].clone()).collect();
            let inner = b.bracket(&inner_args)?;
            if inner.is_zero() {
                continue;
            }
            let mut outer_args = vec![inner];
            outer_args.extend(u.rest.iter().map(|&i| tuple[i].clone()));
            let outer = b.bracket(&outer_args)?;
            if outer.is_zero() {
                continue;
            }
            if u.sign(&degrees)? < 0 {
                acc = acc - outer;
            } else {
                acc += outer;
            }
        }
        strata.push(acc);
    }
    Ok(strata)
}

/// Left-hand side of the `n`th Jacobi rule on `n + 1` arguments.
pub fn jacobi_defect<L: LInfinity>(
    b: &L,
    n: usize,
    tuple: &[Element<L::Basis>],
) -> Result<Element<L::Basis>> {
    Ok(jacobi_strata(b, n, tuple)?.into_iter().sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub arity: usize,
    pub defect: String,
    pub witnesses: Vec<String>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.defect == "0"
    }
}

pub fn jacobi_report<L: LInfinity>(
    b: &L,
    n: usize,
    tuple: &[Element<L::Basis>],
) -> Result<JacobiReport> {
    let defect = jacobi_defect(b, n, tuple)?;
    Ok(JacobiReport {
        arity: n,
        defect: defect.to_string(),
        witnesses: tuple.iter().map(|a| a.to_string()).collect(),
    })
}

/// Multisets of `arity` indices into a window of size `len`, in
/// lexicographic order.
pub fn multisets(len: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..len).combinations_with_replacement(arity)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieNReport {
    pub n: usize,
    /// Window symbols whose degree lies outside `[1, n]`.
    pub out_of_range: Vec<String>,
    /// Largest arity whose vanishing was checked.
    pub checked_up_to_arity: usize,
    /// First bracket of arity `> n + 1` that does not vanish.
    pub nonvanishing: Option<Vec<String>>,
}

impl LieNReport {
    pub fn passed(&self) -> bool {
        self.out_of_range.is_empty() && self.nonvanishing.is_none()
    }
}

/// Checks that the window is concentrated in degrees `[1, n]` and that every
/// bracket with more than `n + 1` arguments (up to the arity cap) vanishes on
/// window tuples.
///
/// Brackets are graded symmetric, so multisets of window symbols cover every
/// ordered tuple up to sign.
pub fn is_lie_n<L: LInfinity>(b: &L, n: usize, window: &[L::Basis]) -> Result<LieNReport> {
    let out_of_range: Vec<String> = window
        .iter()
        .filter(|s| s.degree() < 1 || s.degree() > n as i64)
        .map(|s| s.to_string())
        .collect();
    let cap = b.arity_cap();
    let mut nonvanishing = None;
    for arity in (n + 2)..=cap {
        let tuples: Vec<Vec<usize>> = multisets(window.len(), arity).collect();
        let hit = tuples.par_iter().find_map_first(|idx| {
            let args: Vec<_> = idx
                .iter()
                .map(|&i| Element::basis(window[i].clone()))
                .collect();
            match b.bracket(&args) {
                Ok(v) if v.is_zero() => None,
                _ => Some(
                    idx.iter()
                        .map(|&i| window[i].to_string())
                        .collect::<Vec<_>>(),
                ),
            }
        });
        if hit.is_some() {
            nonvanishing = hit;
            break;
        }
    }
    Ok(LieNReport {
        n,
        out_of_range,
        checked_up_to_arity: cap.max(n + 1),
        nonvanishing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Symbol};

    /// A differential `d` with `{a} = d a` and nothing else: an L∞-algebra
    /// exactly when `d² = 0`.
    struct Complex {
        d: fn(&Symbol) -> Element<Symbol>,
    }

    impl LInfinity for Complex {
        type Basis = Symbol;
        fn bracket_homogeneous(&self, args: &[Element<Symbol>]) -> Result<Element<Symbol>> {
            Ok(if args.len() == 1 {
                args[0].map_linear(self.d)
            } else {
                Element::zero()
            })
        }
    }

    fn chain(s: &Symbol) -> Element<Symbol> {
        match s.id() {
            "c" => Element::basis(Symbol::new("b", 1)),
            _ => Element::zero(),
        }
    }

    fn not_a_chain(s: &Symbol) -> Element<Symbol> {
        match s.id() {
            "c" => Element::basis(Symbol::new("b", 1)),
            "b" => Element::basis(Symbol::new("a", 0)),
            _ => Element::zero(),
        }
    }

    #[test]
    fn zeroth_rule_is_square_zero() {
        let c = Element::basis(Symbol::new("c", 2));
        assert!(
            jacobi_defect(&Complex { d: chain }, 0, std::slice::from_ref(&c))
                .unwrap()
                .is_zero()
        );
        let bad = jacobi_defect(&Complex { d: not_a_chain }, 0, &[c]).unwrap();
        assert_eq!(bad, Element::basis(Symbol::new("a", 0)));
    }

    #[test]
    fn zero_inputs() {
        let z = Element::<Symbol>::zero();
        let v = jacobi_defect(&Complex { d: not_a_chain }, 2, &[z.clone(), z.clone(), z]).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn arity_checks() {
        let a = Element::basis(Symbol::new("a", 1));
        let b = Complex { d: chain };
        assert!(matches!(
            jacobi_defect(&b, 1, std::slice::from_ref(&a)),
            Err(Error::LengthMismatch { .. })
        ));
        let six = vec![a.clone(); 6];
        assert!(matches!(
            jacobi_defect(&b, 5, &six),
            Err(Error::ArityCap { .. })
        ));
        assert!(matches!(b.bracket(&six), Err(Error::ArityCap { .. })));
    }

    #[test]
    fn inhomogeneous_inputs_expand() {
        let b = Complex { d: chain };
        let mixed =
            Element::basis(Symbol::new("c", 2)) + Element::term(Symbol::new("a", 0), rat(3, 1));
        assert_eq!(
            b.bracket(&[mixed]).unwrap(),
            Element::basis(Symbol::new("b", 1))
        );
    }
}
