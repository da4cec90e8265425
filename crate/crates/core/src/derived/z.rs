//! The expressions `Z_{n,j,k}` and the stratification of the Jacobi sum of
//! the derived brackets.
//!
//! ```text
//! Z_{n,j,k} = Σ_π (-1)^{ε + |a_π1| + … + |a_πj|}
//!     [ … [ [ [Da_π0, a_π1, …, a_πj], [Da_π(j+1), …, a_π(j+k+1)] ], a_π(j+k+2) ], … , a_πn ]
//! ```
//!
//! where `[x, y, z, …]` abbreviates the left-nested bracket `[[x, y], z] …`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{d_operator, DerivedStructure};
use crate::algebra::{bracket_weight, rational::sign_of_parity, Element, Rational};
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::linfinity::jacobi_strata;
use crate::series::BivarPoly;

struct Walk<'s, D: Dgla> {
    d: &'s D,
    args: &'s [Element<D::Basis>],
    degrees: &'s [i64],
    n: usize,
    j: usize,
    k: usize,
    total: Element<D::Basis>,
}

enum Stage<B: crate::algebra::Basis> {
    Start,
    First(Element<B>),
    Second(Element<B>, Element<B>),
    Outer(Element<B>),
}

impl<D: Dgla> Walk<'_, D> {
    fn step(&mut self, pos: usize, remaining: &[usize], odd: bool, stage: Stage<D::Basis>) {
        if pos > self.n {
            if let Stage::Outer(v) = stage {
                self.total.add_scaled(&v, &sign_of_parity(odd as i64));
            }
            return;
        }
        let mut passed = 0i64;
        for (at, &i) in remaining.iter().enumerate() {
            let deg = self.degrees[i];
            let flip = (deg * passed) % 2 != 0;
            passed += deg;
            let starts_nest = pos == 0 || pos == self.j + 1;
            if starts_nest && deg != 1 {
                continue;
            }
            let a = &self.args[i];
            let mut odd = odd ^ flip;
            let next = match &stage {
                Stage::Start => Stage::First(d_operator(self.d, a)),
                Stage::First(acc) if pos <= self.j => {
                    odd ^= deg % 2 != 0;
                    Stage::First(self.d.bracket(acc, a))
                }
                Stage::First(acc) => Stage::Second(acc.clone(), d_operator(self.d, a)),
                Stage::Second(first, acc) => Stage::Second(first.clone(), self.d.bracket(acc, a)),
                Stage::Outer(acc) => Stage::Outer(self.d.bracket(acc, a)),
            };
            // Close the two inner nests once the second one is complete.
            let next = match next {
                Stage::Second(first, second) if pos == self.j + self.k + 1 => {
                    Stage::Outer(self.d.bracket(&first, &second))
                }
                other => other,
            };
            let dead = match &next {
                Stage::Start => false,
                Stage::First(v) | Stage::Outer(v) => v.is_zero(),
                Stage::Second(f, s) => f.is_zero() || s.is_zero(),
            };
            if dead {
                continue;
            }
            let mut rest = remaining.to_vec();
            rest.remove(at);
            self.step(pos + 1, &rest, odd, next);
        }
    }
}

fn homogeneous_degrees<B: crate::algebra::Basis>(tuple: &[Element<B>]) -> Result<Vec<i64>> {
    tuple
        .iter()
        .map(|a| {
            a.degree()
                .ok_or_else(|| Error::Input(format!("{a} is not homogeneous")))
        })
        .collect()
}

/// Evaluates `Z_{n,j,k}` on `n + 1` homogeneous arguments.
pub fn z_expression<D: Dgla>(
    s: &DerivedStructure<'_, D>,
    n: usize,
    j: usize,
    k: usize,
    tuple: &[Element<D::Basis>],
) -> Result<Element<D::Basis>> {
    if j + k >= n {
        return Err(Error::Input(format!("Z_{{{n},{j},{k}}} needs j + k < n")));
    }
    if tuple.len() != n + 1 {
        return Err(Error::LengthMismatch {
            expected: n + 1,
            actual: tuple.len(),
        });
    }
    if tuple.iter().any(Element::is_zero) {
        return Ok(Element::zero());
    }
    let degrees = homogeneous_degrees(tuple)?;
    let mut walk = Walk {
        d: s.ambient(),
        args: tuple,
        degrees: &degrees,
        n,
        j,
        k,
        total: Element::zero(),
    };
    let all: Vec<usize> = (0..=n).collect();
    walk.step(0, &all, false, Stage::Start);
    Ok(walk.total)
}

/// `Σ c_{jk} Z_{n,j,k}`.
pub fn z_combination<D: Dgla>(
    s: &DerivedStructure<'_, D>,
    n: usize,
    coeffs: &BTreeMap<(usize, usize), Rational>,
    tuple: &[Element<D::Basis>],
) -> Result<Element<D::Basis>> {
    let mut out = Element::zero();
    for (&(j, k), c) in coeffs {
        if !c.is_zero() {
            out.add_scaled(&z_expression(s, n, j, k, tuple)?, c);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StratumKind {
    /// Inner brackets with one or with all `n + 1` arguments.
    ZeroAndN,
    /// Inner brackets with two arguments.
    One,
    /// Inner brackets with `k + 1` arguments, `1 < k < n`.
    Middle(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum<B: crate::algebra::Basis> {
    pub kind: StratumKind,
    /// The part of the Jacobi sum itself.
    pub computed: Element<B>,
    /// The corresponding combination of `Z`s.
    pub predicted: Element<B>,
}

impl<B: crate::algebra::Basis> Stratum<B> {
    pub fn matches(&self) -> bool {
        self.computed == self.predicted
    }
}

/// Coefficients of the `Z`-combination predicted for one stratum, for the
/// unary bracket `{a} = δa`. Only the `k ∈ {0, n}` stratum involves the
/// unary bracket, so for `{a} = −δa` it changes sign and nothing else does.
pub fn stratum_coefficients(n: usize, kind: StratumKind) -> BTreeMap<(usize, usize), Rational> {
    let mut c = BTreeMap::new();
    let mut put = |key: (usize, usize), v: Rational| {
        let e = c.entry(key).or_insert_with(Rational::zero);
        *e += v;
    };
    match kind {
        StratumKind::ZeroAndN => {
            for i in 0..n {
                put((i, 0), bracket_weight(n));
            }
        }
        StratumKind::One => {
            let w = bracket_weight(1) * bracket_weight(n - 1);
            put((0, 0), w.clone());
            for i in 0..=n.saturating_sub(2) {
                put((i, 1), -w.clone());
            }
        }
        StratumKind::Middle(k) => {
            let w = bracket_weight(k) * bracket_weight(n - k);
            put((n - k, k - 1), w.clone());
            put((0, k - 1), -w);
        }
    }
    c.retain(|_, v| !v.is_zero());
    c
}

/// Splits the `n`th Jacobi sum (`n ≥ 2`) into the strata `k ∈ {0, n}`,
/// `k = 1` and each `1 < k < n`, alongside the `Z`-combination each one
/// should equal under the structure's unary sign.
pub fn jacobi_term_decomposition<D: Dgla>(
    s: &DerivedStructure<'_, D>,
    n: usize,
    tuple: &[Element<D::Basis>],
) -> Result<Vec<Stratum<D::Basis>>> {
    if n < 2 {
        return Err(Error::Input("the stratification needs n >= 2".into()));
    }
    let strata = jacobi_strata(s, n, tuple)?;
    let mut kinds = vec![StratumKind::ZeroAndN, StratumKind::One];
    kinds.extend((2..n).map(StratumKind::Middle));
    kinds
        .into_iter()
        .map(|kind| {
            let computed = match kind {
                StratumKind::ZeroAndN => strata[0].clone() + strata[n].clone(),
                StratumKind::One => strata[1].clone(),
                StratumKind::Middle(k) => strata[k].clone(),
            };
            let mut predicted = z_combination(s, n, &stratum_coefficients(n, kind), tuple)?;
            if kind == StratumKind::ZeroAndN {
                predicted = predicted.scale(&s.unary_sign().factor());
            }
            Ok(Stratum {
                kind,
                computed,
                predicted,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryFReport {
    /// `f(s,t) + f(t,s)` after substituting `t = 1 − s`.
    pub residue: String,
}

impl CorollaryFReport {
    pub fn passed(&self) -> bool {
        self.residue == "0"
    }
}

/// Decides whether `f(s,t) + f(t,s)` lies in the ideal `(s + t − 1)`, for
/// `f = Σ a_ij s^i t^j`.
pub fn corollary_f_check(coeffs: &BTreeMap<(u32, u32), Rational>) -> CorollaryFReport {
    let f = BivarPoly::from_terms(
        coeffs
            .iter()
            .map(|(&(i, j), c)| ((i as i32, j as i32), c.clone())),
    );
    let sym = &f + &f.swap();
    let residue = sym
        .substitute_t_one_minus_s()
        .expect("polynomial exponents are non-negative");
    CorollaryFReport {
        residue: residue.to_string(),
    }
}

/// The polynomial `1 − ((1 − s^{n−2}) / (1 − s)) t − t^{n−2}` used for odd
/// `n`, as coefficients.
pub fn odd_case_polynomial(n: u32) -> BTreeMap<(u32, u32), Rational> {
    let mut p = BivarPoly::one() - BivarPoly::t().pow(n.saturating_sub(2));
    for i in 0..n.saturating_sub(2) {
        p = p - BivarPoly::monomial(i as i32, 1, Rational::from_integer(1.into()));
    }
    p.terms()
        .map(|(&(i, j), c)| ((i as u32, j as u32), c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn corollary_f_trivial_cases() {
        let antisym = BTreeMap::from([((1, 0), rat(1, 1)), ((0, 1), rat(-1, 1))]);
        assert!(corollary_f_check(&antisym).passed());
        let one = BTreeMap::from([((0, 0), rat(1, 1))]);
        let r = corollary_f_check(&one);
        assert!(!r.passed());
        assert_eq!(r.residue, "2");
    }

    #[test]
    fn odd_polynomials() {
        for n in [3, 5, 7] {
            assert!(
                corollary_f_check(&odd_case_polynomial(n)).passed(),
                "n = {n}"
            );
        }
        // n = 3: 1 - t - t = 1 - 2t
        assert_eq!(
            odd_case_polynomial(3),
            BTreeMap::from([((0, 0), rat(1, 1)), ((0, 1), rat(-2, 1))])
        );
    }

    #[test]
    fn stratum_weights() {
        let c = stratum_coefficients(2, StratumKind::One);
        assert_eq!(
            c,
            BTreeMap::from([((0, 0), rat(1, 4)), ((0, 1), rat(-1, 4))])
        );
        let c = stratum_coefficients(4, StratumKind::Middle(2));
        assert_eq!(
            c,
            BTreeMap::from([((0, 1), rat(-1, 144)), ((2, 1), rat(1, 144))])
        );
    }
}
