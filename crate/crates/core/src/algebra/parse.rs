//! Text form of linear combinations: `c1*id1 + c2*id2 - id3`.

use num_traits::One;

use super::{parse_rational, Basis, Element, Rational};
use crate::error::{Error, Result};

/// Splits at top-level `+`/`-`, keeping each term's sign.
fn split_terms(text: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut start = 0;
    for (i, ch) in text.char_indices().filter(|(_, c)| matches!(c, '+' | '-')) {
        let body = text[start..i].trim();
        if body.is_empty() {
            // Runs of signs such as "+ -" collapse.
            negative ^= ch == '-';
        } else {
            out.push((negative, body));
            negative = ch == '-';
        }
        start = i + ch.len_utf8();
    }
    let body = text[start..].trim();
    if body.is_empty() {
        return Err(Error::Input(format!(
            "expression {text:?} ends without a term"
        )));
    }
    out.push((negative, body));
    Ok(out)
}

/// Parses `±c*id ± …`. A term is either an id or a rational, `*`, and an id.
/// `0` alone denotes the zero element.
pub fn parse_linear_combination<B: Basis>(
    text: &str,
    mut id: impl FnMut(&str) -> Result<B>,
) -> Result<Element<B>> {
    if text.trim() == "0" {
        return Ok(Element::zero());
    }
    let mut out = Element::zero();
    for (negative, body) in split_terms(text)? {
        let (coeff, name) = match body.split_once('*') {
            Some((c, rest)) => match parse_rational(c) {
                Ok(q) => (q, rest.trim()),
                Err(_) => (Rational::one(), body),
            },
            None => (Rational::one(), body),
        };
        let coeff = if negative { -coeff } else { coeff };
        out.add_term(id(name)?, coeff);
    }
    Ok(out)
}
