//! Bernoulli numbers in the `x/(e^x - 1)` convention (`B_1 = -1/2`) and the
//! bracket weights `b_n = (-1)^n B_n / n!`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;

fn table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Extends `t` so that `t[n]` exists, from `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
fn extend(t: &mut Vec<Rational>, n: usize) {
    while t.len() <= n {
        let m = t.len();
        let c = binomials(m + 1);
        let mut acc = Rational::zero();
        for (k, b) in t.iter().enumerate() {
            acc += Rational::from_integer(c[k].clone()) * b;
        }
        t.push(-acc / Rational::from_integer(c[m].clone()));
    }
}

/// `B_n`. Memoized; concurrent callers may race to fill the table but every
/// fill computes the same prefix.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = table().read().expect("bernoulli table poisoned").get(n) {
        return b.clone();
    }
    let mut t = table().write().expect("bernoulli table poisoned");
    extend(&mut t, n);
    t[n].clone()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `b_n = (-1)^n B_n / n!`, the weight of the `(n+1)`-ary derived bracket.
pub fn bracket_weight(n: usize) -> Rational {
    let b = bernoulli(n) / Rational::from_integer(factorial(n));
    if n.is_multiple_of(2) {
        b
    } else {
        -b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn first_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn weights() {
        assert_eq!(bracket_weight(0), rat(1, 1));
        assert_eq!(bracket_weight(1), rat(1, 2));
        assert_eq!(bracket_weight(2), rat(1, 12));
        assert_eq!(bracket_weight(3), rat(0, 1));
        assert_eq!(bracket_weight(4), rat(-1, 720));
    }

    #[test]
    fn odd_values_vanish() {
        for n in (3..=15).step_by(2) {
            assert_eq!(bernoulli(n), rat(0, 1), "B_{n}");
        }
    }

    #[test]
    fn concurrent_fills_agree() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || (0..=20 + i).map(bernoulli).collect::<Vec<_>>()))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for r in &results {
            assert_eq!(r[..21], results[0][..21]);
        }
    }
}
