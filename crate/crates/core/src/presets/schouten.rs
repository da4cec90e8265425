//! Polynomial multivector fields with the Schouten bracket.
//!
//! Multivectors are elements of `ℚ[x_1..x_d] ⊗ Λ[θ_1..θ_d]`, with `θ_i`
//! standing for `∂/∂x_i`. A monomial with `p` factors of `θ` has degree
//! `1 − p`, so functions sit in degree 1, vector fields in degree 0 and
//! bivectors in degree −1. The bracket is the odd Poisson bracket
//!
//! ```text
//! [F, G] = Σ_i (∂F/∂θ_i)_r (∂G/∂x_i) − (∂F/∂x_i) (∂G/∂θ_i)_l
//! ```
//!
//! normalized so that `[θ_i, x_i] = 1`.

use std::fmt;

use crate::algebra::{rational::sign_of_parity, Element, Graded, Rational};
use crate::dgla::Dgla;
use crate::error::{Error, Result};

/// Largest number of variables supported.
pub const MAX_VARIABLES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multivector {
    theta: u32,
    x: Vec<u32>,
}

impl Multivector {
    pub fn new(x: Vec<u32>, theta: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &i in theta {
            if i >= x.len() {
                return Err(Error::OutOfRange(format!(
                    "θ{} in {} variables",
                    i + 1,
                    x.len()
                )));
            }
            if mask >> i & 1 == 1 {
                return Err(Error::Input(format!("θ{} appears twice", i + 1)));
            }
            mask |= 1 << i;
        }
        Ok(Self { theta: mask, x })
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            theta: 0,
            x: vec![0; nvars],
        }
    }

    /// The coordinate function `x_i` (zero-based).
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.x[i] = 1;
        m
    }

    /// The vector field `θ_i` (zero-based).
    pub fn theta(nvars: usize, i: usize) -> Self {
        Self {
            theta: 1 << i,
            x: vec![0; nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.x.len()
    }

    pub fn theta_degree(&self) -> u32 {
        self.theta.count_ones()
    }

    pub fn polynomial_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn has_theta(&self, i: usize) -> bool {
        self.theta >> i & 1 == 1
    }

    /// Parses ids such as `x1^2*th1*th3` or `1`. Variables are one-based.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let mut x = vec![0u32; nvars];
        let mut theta = Vec::new();
        let bad = || Error::Input(format!("cannot parse monomial {text:?}"));
        for factor in text.trim().split('*').map(str::trim) {
            if factor == "1" {
                continue;
            }
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => (n, p.parse::<u32>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            let (is_theta, index) = if let Some(i) = name.strip_prefix("th") {
                (true, i)
            } else if let Some(i) = name.strip_prefix('x') {
                (false, i)
            } else {
                return Err(bad());
            };
            let i: usize = index.parse().map_err(|_| bad())?;
            if i == 0 || i > nvars {
                return Err(Error::OutOfRange(format!("{name} in {nvars} variables")));
            }
            if is_theta {
                if power != 1 {
                    return Err(Error::Input(format!("{name} squares to zero")));
                }
                if theta.last().is_some_and(|&last| last >= i - 1) {
                    return Err(Error::Input(format!(
                        "θ factors in {text:?} must be increasing"
                    )));
                }
                theta.push(i - 1);
            } else {
                x[i - 1] += power;
            }
        }
        Self::new(x, &theta)
    }

    /// `(self · other)` with the sign of sorting the `θ`s, or `None` if a
    /// `θ` repeats.
    fn multiply(&self, other: &Self) -> Option<(Self, i64)> {
        if self.theta & other.theta != 0 {
            return None;
        }
        let mut parity = 0;
        for j in 0..32 {
            if other.theta >> j & 1 == 1 {
                parity += (self.theta >> (j + 1)).count_ones() as i64;
            }
        }
        let x = self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect();
        Some((
            Self {
                theta: self.theta | other.theta,
                x,
            },
            parity,
        ))
    }

    fn d_x(&self, i: usize) -> Option<(Self, u32)> {
        let e = self.x[i];
        (e > 0).then(|| {
            let mut m = self.clone();
            m.x[i] -= 1;
            (m, e)
        })
    }

    /// Left (`from_left`) or right derivative in `θ_i`, with its sign parity.
    fn d_theta(&self, i: usize, from_left: bool) -> Option<(Self, i64)> {
        if !self.has_theta(i) {
            return None;
        }
        let passed = if from_left {
            self.theta & ((1 << i) - 1)
        } else {
            self.theta >> (i + 1)
        };
        let mut m = self.clone();
        m.theta &= !(1 << i);
        Some((m, passed.count_ones() as i64))
    }
}

impl Graded for Multivector {
    fn degree(&self) -> i64 {
        1 - self.theta_degree() as i64
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.x.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{e}", i + 1)),
            }
        }
        for i in 0..self.x.len() {
            if self.has_theta(i) {
                parts.push(format!("th{}", i + 1));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

fn push_product(out: &mut Element<Multivector>, a: &Multivector, b: &Multivector, coeff: Rational) {
    if let Some((m, parity)) = a.multiply(b) {
        out.add_term(m, coeff * sign_of_parity(parity));
    }
}

/// The Schouten bracket of two monomials.
pub fn schouten_monomials(a: &Multivector, b: &Multivector) -> Element<Multivector> {
    let mut out = Element::zero();
    for i in 0..a.nvars() {
        if let (Some((fa, sa)), Some((gb, eb))) = (a.d_theta(i, false), b.d_x(i)) {
            push_product(
                &mut out,
                &fa,
                &gb,
                sign_of_parity(sa) * Rational::from_integer(eb.into()),
            );
        }
        if let (Some((fa, ea)), Some((gb, sb))) = (a.d_x(i), b.d_theta(i, true)) {
            push_product(
                &mut out,
                &fa,
                &gb,
                -sign_of_parity(sb) * Rational::from_integer(ea.into()),
            );
        }
    }
    out
}

/// The Schouten bracket, checking that both arguments use `nvars` variables.
pub fn schouten_bracket(
    a: &Element<Multivector>,
    b: &Element<Multivector>,
) -> Result<Element<Multivector>> {
    let mut n = None;
    for (m, _) in a.terms().chain(b.terms()) {
        match n {
            None => n = Some(m.nvars()),
            Some(k) if k != m.nvars() => {
                return Err(Error::Input(format!(
                    "{m} has {} variables, expected {k}",
                    m.nvars()
                )));
            }
            _ => {}
        }
    }
    Ok(a.map_bilinear(b, schouten_monomials))
}

/// A bivector `P` with `[P, P] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonTensor {
    nvars: usize,
    p: Element<Multivector>,
}

impl PoissonTensor {
    pub fn new(nvars: usize, p: Element<Multivector>) -> Result<Self> {
        if nvars > MAX_VARIABLES {
            return Err(Error::OutOfRange(format!(
                "{nvars} variables exceeds the cap of {MAX_VARIABLES}"
            )));
        }
        if let Some((m, _)) = p
            .terms()
            .find(|(m, _)| m.nvars() != nvars || m.theta_degree() != 2)
        {
            return Err(Error::Input(format!(
                "{m} is not a bivector in {nvars} variables"
            )));
        }
        let pp = schouten_bracket(&p, &p)?;
        if !pp.is_zero() {
            return Err(Error::Constraint(format!("[P,P] = {pp} is nonzero")));
        }
        Ok(Self { nvars, p })
    }

    /// Parses a sum of terms such as `x3*th1*th2 + x1*th2*th3`.
    pub fn parse(nvars: usize, text: &str) -> Result<Self> {
        Self::new(nvars, parse_multivector(text, nvars)?)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn tensor(&self) -> &Element<Multivector> {
        &self.p
    }
}

/// Parses `c1*m1 + c2*m2 - …` where each `m` is a monomial id and each
/// optional coefficient is a leading rational factor.
pub fn parse_multivector(text: &str, nvars: usize) -> Result<Element<Multivector>> {
    crate::algebra::parse_linear_combination(text, |id| Multivector::parse(id, nvars))
}

/// The symplectic structure `θ1 θ2` on the plane.
pub fn symplectic_plane() -> PoissonTensor {
    PoissonTensor::parse(2, "th1*th2").expect("constant bivectors are Poisson")
}

/// The linear Poisson structure `x3 θ1θ2 + x1 θ2θ3 + x2 θ3θ1` on the dual of
/// the three-dimensional simple Lie algebra (the cross-product form of
/// `sl2`). Unit coefficients satisfy the master equation; this is checked
/// on construction.
pub fn lie_poisson_sl2() -> PoissonTensor {
    PoissonTensor::parse(3, "x3*th1*th2 + x1*th2*th3 - x2*th1*th3")
        .expect("the cross-product form is Poisson")
}

/// All monomials in `nvars` variables with polynomial degree at most
/// `max_poly` and at most `max_theta` factors of `θ`, sorted.
pub fn monomial_window(nvars: usize, max_poly: u32, max_theta: u32) -> Vec<Multivector> {
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..nvars {
        exps = exps
            .into_iter()
            .flat_map(|e| {
                let used: u32 = e.iter().sum();
                (0..=max_poly - used).map(move |k| {
                    let mut v = e.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << nvars) {
        if mask.count_ones() > max_theta {
            continue;
        }
        for x in &exps {
            out.push(Multivector {
                theta: mask,
                x: x.clone(),
            });
        }
    }
    out.sort();
    out
}

/// The Schouten algebra in `nvars` variables, with differential `[P, −]`
/// when a Poisson tensor is given and zero otherwise.
#[derive(Clone, Debug)]
pub struct SchoutenDgla {
    nvars: usize,
    poisson: Option<PoissonTensor>,
}

impl SchoutenDgla {
    pub fn new(nvars: usize) -> Result<Self> {
        if nvars > MAX_VARIABLES {
            return Err(Error::OutOfRange(format!(
                "{nvars} variables exceeds the cap of {MAX_VARIABLES}"
            )));
        }
        Ok(Self {
            nvars,
            poisson: None,
        })
    }

    pub fn with_poisson(p: PoissonTensor) -> Self {
        Self {
            nvars: p.nvars(),
            poisson: Some(p),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn poisson(&self) -> Option<&PoissonTensor> {
        self.poisson.as_ref()
    }

    pub fn window(&self, max_poly: u32, max_theta: u32) -> Vec<Multivector> {
        monomial_window(self.nvars, max_poly, max_theta)
    }
}

impl Dgla for SchoutenDgla {
    type Basis = Multivector;

    fn differential_of(&self, b: &Multivector) -> Element<Multivector> {
        match &self.poisson {
            Some(p) => p
                .tensor()
                .map_bilinear(&Element::basis(b.clone()), schouten_monomials),
            None => Element::zero(),
        }
    }

    fn bracket_of(&self, a: &Multivector, b: &Multivector) -> Element<Multivector> {
        schouten_monomials(a, b)
    }
}

/// `δ_P X = [P, X]`.
pub fn poisson_differential(p: &PoissonTensor, x: &Element<Multivector>) -> Element<Multivector> {
    p.tensor().map_bilinear(x, schouten_monomials)
}

/// The derived binary bracket of two functions alongside `[δ_P f, g]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonComparison {
    pub theorem: Element<Multivector>,
    pub classical: Element<Multivector>,
}

pub fn poisson_bracket_via_theorem(
    p: &PoissonTensor,
    f: &Element<Multivector>,
    g: &Element<Multivector>,
) -> Result<PoissonComparison> {
    use crate::derived::DerivedStructure;
    use crate::linfinity::LInfinity;

    if let Some((m, _)) = f
        .terms()
        .chain(g.terms())
        .find(|(m, _)| m.theta_degree() != 0)
    {
        return Err(Error::Input(format!("{m} is not a function")));
    }
    let dgla = SchoutenDgla::with_poisson(p.clone());
    let theorem = DerivedStructure::new(&dgla).bracket(&[f.clone(), g.clone()])?;
    let classical = dgla.bracket(&poisson_differential(p, f), g);
    Ok(PoissonComparison { theorem, classical })
}

impl PoissonComparison {
    pub fn agrees(&self) -> bool {
        self.theorem == self.classical
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(text: &str, n: usize) -> Element<Multivector> {
        parse_multivector(text, n).unwrap()
    }

    #[test]
    fn normalization_is_frozen() {
        let b = schouten_bracket(&mv("th1", 2), &mv("x1", 2)).unwrap();
        assert_eq!(b, Element::basis(Multivector::one(2)));
        let b = schouten_bracket(&mv("x1", 2), &mv("th1", 2)).unwrap();
        assert_eq!(b, -Element::basis(Multivector::one(2)));
    }

    #[test]
    fn functions_commute() {
        assert!(schouten_bracket(&mv("x1^2*x2", 2), &mv("x2", 2))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn symplectic_differential() {
        let p = symplectic_plane();
        assert_eq!(poisson_differential(&p, &mv("x1", 2)), mv("-1*th2", 2));
        let c = poisson_bracket_via_theorem(&p, &mv("x1", 2), &mv("x2", 2)).unwrap();
        assert!(c.agrees());
        assert_eq!(c.classical, mv("-1", 2));
    }

    #[test]
    fn master_equation_enforced() {
        assert!(matches!(
            PoissonTensor::parse(3, "x2*th1*th2 + x1*th2*th3"),
            Err(Error::Constraint(_))
        ));
        assert!(PoissonTensor::parse(2, "th1").is_err());
        lie_poisson_sl2();
    }

    #[test]
    fn parse_and_display() {
        let m = Multivector::parse("th1*x1^2*th3", 3).unwrap();
        assert_eq!(m.to_string(), "x1^2*th1*th3");
        assert!(Multivector::parse("th3*th1", 3).is_err());
        assert_eq!(m.degree(), -1);
        assert!(Multivector::parse("th1^2", 3).is_err());
        assert!(matches!(
            Multivector::parse("x4", 3),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn window_sizes() {
        // 6 polynomials of degree ≤ 2 in two variables, times 1 + 2 + 1 θ-monomials
        assert_eq!(monomial_window(2, 2, 2).len(), 24);
        assert_eq!(monomial_window(3, 1, 0).len(), 4);
    }
}
