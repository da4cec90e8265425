use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::BivarPoly;
use crate::algebra::{bernoulli::factorial, Rational};
use crate::error::{Error, Result};

/// A power series in `x` with [`BivarPoly`] coefficients, kept through
/// `x^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BivarPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BivarPoly::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, c: BivarPoly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BivarPoly::one())
    }

    /// `c · x^power`, or zero if the power exceeds the order.
    pub fn monomial(order: usize, power: usize, c: BivarPoly) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Builds a series from a coefficient function.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BivarPoly) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// `e^{u x}`.
    pub fn exp(order: usize, u: &BivarPoly) -> Self {
        let mut power = BivarPoly::one();
        let mut coeffs = Vec::with_capacity(order + 1);
        for m in 0..=order {
            coeffs.push(power.scale(&Rational::new(1.into(), factorial(m))));
            power = &power * u;
        }
        Self { coeffs }
    }

    /// `(e^{u x} − 1) / (u x)`, a unit.
    pub fn exp_quotient(order: usize, u: &BivarPoly) -> Self {
        let mut power = BivarPoly::one();
        let mut coeffs = Vec::with_capacity(order + 1);
        for m in 0..=order {
            coeffs.push(power.scale(&Rational::new(1.into(), factorial(m + 1))));
            power = &power * u;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &BivarPoly {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[BivarPoly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs.iter().take(order + 1).cloned().collect(),
        }
    }

    /// `g(x) ↦ g(u x)`.
    pub fn rescale(&self, u: &BivarPoly) -> Self {
        let mut power = BivarPoly::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &power);
            power = &power * u;
        }
        Self { coeffs }
    }

    pub fn map_coeffs(&self, f: impl Fn(&BivarPoly) -> BivarPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &BivarPoly) -> Self {
        self.map_coeffs(|p| p * c)
    }

    /// Multiplicative inverse. The constant coefficient has to be a nonzero
    /// rational constant.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let unit = match c0.terms().collect::<Vec<_>>().as_slice() {
            [(&(0, 0), c)] => (*c).clone(),
            _ => {
                return Err(Error::NonUnit(format!(
                    "constant term {c0} is not an invertible constant"
                )))
            }
        };
        let inv0 = Rational::one() / unit;
        let mut out: Vec<BivarPoly> = vec![BivarPoly::constant(inv0.clone())];
        for m in 1..self.coeffs.len() {
            let mut acc = BivarPoly::zero();
            for i in 1..=m {
                acc = acc + &self.coeffs[i] * &out[m - i];
            }
            out.push((-acc).scale(&inv0));
        }
        Ok(Self { coeffs: out })
    }

    pub fn divide(&self, by: &Self) -> Result<Self> {
        Ok(self * &by.inverse()?)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BivarPoly::is_zero)
    }

    fn assert_same_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series of different orders");
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.assert_same_order(rhs);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.assert_same_order(rhs);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.map_coeffs(|c| -c.clone())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.assert_same_order(rhs);
        let n = self.order();
        let mut coeffs = vec![BivarPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*x^{m}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn exp_inverse() {
        let e = TruncatedSeries::exp(8, &BivarPoly::s());
        let inv = e.inverse().unwrap();
        assert_eq!(inv, TruncatedSeries::exp(8, &-BivarPoly::s()));
        assert_eq!(&e * &inv, TruncatedSeries::one(8));
    }

    #[test]
    fn non_unit() {
        let s = TruncatedSeries::constant(3, BivarPoly::s());
        assert!(matches!(s.inverse(), Err(Error::NonUnit(_))));
        assert!(TruncatedSeries::zero(3).inverse().is_err());
    }

    #[test]
    fn quotient_times_ux() {
        let u = BivarPoly::t();
        let q = TruncatedSeries::exp_quotient(6, &u);
        let lhs = &q * &TruncatedSeries::monomial(6, 1, u.clone());
        let rhs = &TruncatedSeries::exp(6, &u) - &TruncatedSeries::one(6);
        assert_eq!(lhs, rhs);
        assert_eq!(*q.coeff(2), BivarPoly::monomial(0, 2, rat(1, 6)));
    }
}
