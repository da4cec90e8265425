//! Closed-form binary and ternary derived brackets, written out term by term
//! and evaluated independently of the permutation sum.

use super::d_operator;
use crate::algebra::{rat, rational::sign_of_parity, Element};
use crate::dgla::Dgla;

fn deg<B: crate::algebra::Basis>(a: &Element<B>) -> i64 {
    a.degree().unwrap_or(0)
}

/// `½ ([D a0, a1] − (−1)^{|a0|} [a0, D a1])`.
pub fn explicit_binary<D: Dgla>(
    d: &D,
    a0: &Element<D::Basis>,
    a1: &Element<D::Basis>,
) -> Element<D::Basis> {
    let first = d.bracket(&d_operator(d, a0), a1);
    let second = d
        .bracket(a0, &d_operator(d, a1))
        .scale(&sign_of_parity(deg(a0)));
    (first - second).scale(&rat(1, 2))
}

fn ternary<D: Dgla>(
    d: &D,
    a0: &Element<D::Basis>,
    a1: &Element<D::Basis>,
    a2: &Element<D::Basis>,
    second_sign: i64,
) -> Element<D::Basis> {
    let (p0, p1, p2) = (deg(a0), deg(a1), deg(a2));
    let br = |x: &Element<D::Basis>, y: &Element<D::Basis>| d.bracket(x, y);
    let dd = |x: &Element<D::Basis>| d_operator(d, x);
    let terms = [
        (0, br(&br(&dd(a0), a1), a2)),
        (1 + second_sign, br(&br(a0, &dd(a1)), a2)),
        (p0 * (p1 + p2), br(&br(&dd(a1), a2), a0)),
        (1 + p0 * (p1 + p2) + p1, br(&br(a1, &dd(a2)), a0)),
        ((p0 + p1) * p2, br(&br(&dd(a2), a0), a1)),
        (1 + (p0 + p1) * p2 + p2, br(&br(a2, &dd(a0)), a1)),
    ];
    let mut out = Element::zero();
    for (parity, v) in terms {
        out.add_scaled(&v, &sign_of_parity(parity));
    }
    out.scale(&rat(1, 12))
}

/// The six-term ternary bracket
///
/// ```text
/// 1/12 ( [[Da0,a1],a2] − (−1)^{|a0|}[[a0,Da1],a2]
///      + (−1)^{|a0|(|a1|+|a2|)} [[Da1,a2],a0] − (−1)^{|a0|(|a1|+|a2|)+|a1|} [[a1,Da2],a0]
///      + (−1)^{(|a0|+|a1|)|a2|} [[Da2,a0],a1] − (−1)^{(|a0|+|a1|)|a2|+|a2|} [[a2,Da0],a1] )
/// ```
///
/// The second sign is the Koszul sign of exchanging `a0` and `a1`
/// (`|a1| = 1` whenever `D a1 ≠ 0`).
pub fn explicit_ternary<D: Dgla>(
    d: &D,
    a0: &Element<D::Basis>,
    a1: &Element<D::Basis>,
    a2: &Element<D::Basis>,
) -> Element<D::Basis> {
    ternary(d, a0, a1, a2, deg(a0))
}

/// Same as [`explicit_ternary`] but with `(−1)^{|a1|}` in the second term,
/// as the formula is commonly printed. Differs from the Koszul-consistent
/// version exactly when `|a0|` is even and `D a1 ≠ 0`.
pub fn explicit_ternary_as_printed<D: Dgla>(
    d: &D,
    a0: &Element<D::Basis>,
    a1: &Element<D::Basis>,
    a2: &Element<D::Basis>,
) -> Element<D::Basis> {
    ternary(d, a0, a1, a2, deg(a1))
}
