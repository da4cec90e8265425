//! Power series identities behind the even-arity Jacobi rules.
//!
//! `f(x) = x/(e^x − 1) + x/2 = 1 + Σ_{n≥2} B_n x^n / n!` and
//! `A(s,t,x) = (f(x) − f(sx)) f(tx) / t`. The symmetrization
//! `A(s,t,x) + A(t,s,x)` is compared against its closed form after clearing
//! the denominators by `st`.

mod poly;
mod truncated;

use serde::Serialize;

use crate::algebra::{bracket_weight, rat, Rational};
use crate::error::{Error, Result};

pub use poly::BivarPoly;
pub use truncated::TruncatedSeries;

pub const DEFAULT_ORDER: usize = 12;

/// `f(x)` through `x^order`, by inverting `(e^x − 1)/x`.
pub fn f_series(order: usize) -> TruncatedSeries {
    let quotient = TruncatedSeries::exp_quotient(order, &BivarPoly::one());
    let inv = quotient.inverse().expect("constant term is 1");
    &inv + &TruncatedSeries::monomial(order, 1, BivarPoly::constant(rat(1, 2)))
}

/// `(f(x) − f(sx)) f(tx)`, the numerator of `A` (so `A = this / t`).
fn a_numerator(order: usize, s: &BivarPoly, t: &BivarPoly) -> TruncatedSeries {
    let f = f_series(order);
    &(&f - &f.rescale(s)) * &f.rescale(t)
}

/// `A(s,t,x)` through `x^order`; coefficients carry `t^{-1}`.
pub fn a_series(order: usize) -> TruncatedSeries {
    a_numerator(order, &BivarPoly::s(), &BivarPoly::t()).map_coeffs(|c| c.shift(0, -1))
}

/// `st (A(s,t,x) + A(t,s,x))`, computed from the definition of `A`.
pub fn g_direct(order: usize) -> TruncatedSeries {
    let (s, t) = (BivarPoly::s(), BivarPoly::t());
    let ast = a_numerator(order, &s, &t).scale(&s);
    let ats = a_numerator(order, &t, &s).scale(&t);
    &ast + &ats
}

/// `st` times the closed form
///
/// ```text
/// x²/4 { 1 + 4e^x (e^{(s+t−1)x} − 1) / ((e^x − 1)(e^{sx} − 1)(e^{tx} − 1))
///          − (s+t−1) (e^{sx} + 1)(e^{tx} + 1) / ((e^{sx} − 1)(e^{tx} − 1)) }
/// ```
///
/// with every `e^{ux} − 1` written as `ux · E(ux)` for the unit
/// `E(y) = (e^y − 1)/y`.
pub fn g_closed_form(order: usize) -> Result<TruncatedSeries> {
    let (s, t) = (BivarPoly::s(), BivarPoly::t());
    let one = BivarPoly::one();
    let w = &(&s + &t) - &one;
    let ex = TruncatedSeries::exp(order, &one);
    let e_x = TruncatedSeries::exp_quotient(order, &one);
    let e_s = TruncatedSeries::exp_quotient(order, &s);
    let e_t = TruncatedSeries::exp_quotient(order, &t);
    let e_w = TruncatedSeries::exp_quotient(order, &w);
    let quarter = BivarPoly::constant(rat(1, 4));

    let first = TruncatedSeries::monomial(order, 2, &(&s * &t) * &quarter);
    let units = &(&e_x * &e_s) * &e_t;
    let second = (&ex * &e_w).scale(&w).divide(&units)?;
    let plus_one = |u: &BivarPoly| &TruncatedSeries::exp(order, u) + &TruncatedSeries::one(order);
    let third = (&plus_one(&s) * &plus_one(&t))
        .scale(&(&w * &quarter))
        .divide(&(&e_s * &e_t))?;
    Ok(&(&first + &second) - &third)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub order: usize,
    /// First power of `x` where the two sides differ.
    pub first_mismatch: Option<usize>,
    /// `G(s, 1−s, x)` coefficientwise.
    pub residual: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `G = st (A(s,t,x) + A(t,s,x))` with `st` times the closed form,
/// through `x^order`, and records `G` under `t ↦ 1 − s`.
pub fn symmetrized_identity_check(order: usize) -> Result<IdentityReport> {
    if order < 4 {
        return Err(Error::Input(format!(
            "order {order} is below the minimum of 4"
        )));
    }
    let g = g_direct(order);
    let closed = g_closed_form(order)?;
    let first_mismatch = (0..=order).find(|&m| g.coeff(m) != closed.coeff(m));
    let residual = g
        .coeffs()
        .iter()
        .map(|c| c.substitute_t_one_minus_s().map(|p| p.to_string()))
        .collect::<Result<_>>()?;
    Ok(IdentityReport {
        order,
        first_mismatch,
        residual,
    })
}

/// `b_n Σ_{i<n} s^i + Σ_{k=2}^{n−2} b_k b_{n−k} (t^{k−1} − s^{n−k} t^{k−1})`.
pub fn even_case_polynomial(n: usize) -> BivarPoly {
    let b = bracket_weight;
    let mut p = BivarPoly::zero();
    for i in 0..n {
        p.add_term(i as i32, 0, b(n));
    }
    for k in 2..=n.saturating_sub(2) {
        let w = b(k) * b(n - k);
        p.add_term(0, k as i32 - 1, w.clone());
        p.add_term((n - k) as i32, k as i32 - 1, -w);
    }
    p
}

/// `Σ_{k=0}^{n} b_k b_{n−k} (1 − s^{n−k}) t^{k−1}`, Laurent in `t`.
pub fn even_case_target(n: usize) -> BivarPoly {
    let mut p = BivarPoly::zero();
    for k in 0..=n {
        let w: Rational = bracket_weight(k) * bracket_weight(n - k);
        p.add_term(0, k as i32 - 1, w.clone());
        p.add_term((n - k) as i32, k as i32 - 1, -w);
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub n: usize,
    /// `t · (lhs − target)` under `t ↦ 1 − s`.
    pub congruence_residue: String,
    /// Symmetrized `lhs` under `t ↦ 1 − s`.
    pub symmetrization_residue: String,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.congruence_residue == "0" && self.symmetrization_residue == "0"
    }
}

pub fn even_n_congruence_check(n: usize) -> Result<CongruenceReport> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Input(format!("n = {n} must be even and at least 4")));
    }
    let lhs = even_case_polynomial(n);
    let diff = (&lhs - &even_case_target(n)).shift(0, 1);
    let congruence_residue = diff.substitute_t_one_minus_s()?.to_string();
    let symmetrization_residue = (&lhs + &lhs.swap()).substitute_t_one_minus_s()?.to_string();
    Ok(CongruenceReport {
        n,
        congruence_residue,
        symmetrization_residue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bernoulli, bernoulli::factorial};

    #[test]
    fn f_coefficients() {
        let f = f_series(12);
        assert_eq!(*f.coeff(0), BivarPoly::one());
        assert!(f.coeff(1).is_zero());
        assert_eq!(*f.coeff(2), BivarPoly::constant(rat(1, 12)));
        for n in 2..=12 {
            let expected = bernoulli(n) / Rational::from_integer(factorial(n));
            assert_eq!(*f.coeff(n), BivarPoly::constant(expected), "x^{n}");
        }
    }

    #[test]
    fn a_low_orders() {
        let a = a_series(8);
        assert!(a.coeff(0).is_zero() && a.coeff(1).is_zero());
        let expected = BivarPoly::from_terms([((0, -1), rat(1, 12)), ((2, -1), rat(-1, 12))]);
        assert_eq!(*a.coeff(2), expected);
        for c in a.coeffs() {
            assert!(c.min_t_exponent().unwrap_or(0) >= -1);
        }
    }
}
