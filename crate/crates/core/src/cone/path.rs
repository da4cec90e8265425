//! The DGLA `K ⊕ L[t, dt]` and its sub-DGLA
//! `𝒞_φ = {(x, f(t) + g(t) dt) | f(0) = 0, f(1) = φ(x)}`.
//!
//! Forms sit to the left of `L`-coefficients: `t^k ⊗ e` and `t^k dt ⊗ e`,
//! with `dt` of degree −1. Then
//!
//! ```text
//! d(t^k ⊗ e)    = k t^{k−1} dt ⊗ e + t^k ⊗ δe
//! d(t^k dt ⊗ e) = −t^k dt ⊗ δe
//! [ω ⊗ e, η ⊗ e'] = (−1)^{|e||η|} ωη ⊗ [e, e']
//! ```

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{ConeBasis, ConeElement, DglaMorphism, KOf, LOf, Sign};
use crate::algebra::{rational::sign_of_parity, Element, Graded, Rational};
use crate::dgla::Dgla;
use crate::error::{Error, Result};

/// Sign of the de Rham term `k t^{k−1} dt ⊗ e` in `d(t^k ⊗ e)`.
///
/// Either sign squares to zero and is a derivation of the bracket; only
/// `+` makes `id − (dh + hd)` idempotent for the integration homotopy.
pub const DE_RHAM_SIGN: Sign = Sign::Plus;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathBasis<K, L> {
    /// The base component, in `K`.
    K(K),
    /// `t^t` (times `dt` if `dt`) tensored with a basis vector of `L`.
    Form { t: u32, dt: bool, e: L },
}

impl<K: Graded, L: Graded> Graded for PathBasis<K, L> {
    fn degree(&self) -> i64 {
        match self {
            PathBasis::K(k) => k.degree(),
            PathBasis::Form { dt, e, .. } => e.degree() - *dt as i64,
        }
    }
}

impl<K: fmt::Display, L: fmt::Display> fmt::Display for PathBasis<K, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathBasis::K(k) => write!(f, "k:{k}"),
            PathBasis::Form { t, dt, e } => {
                match t {
                    0 if !dt => f.write_str("1")?,
                    0 => {}
                    1 => f.write_str("t")?,
                    _ => write!(f, "t^{t}")?,
                }
                if *dt {
                    f.write_str(if *t == 0 { "dt" } else { "·dt" })?;
                }
                write!(f, "⊗{e}")
            }
        }
    }
}

type PathOf<M> = PathBasis<KOf<M>, LOf<M>>;

/// `K ⊕ L[t, dt]` for a morphism `φ: K → L`.
pub struct PathSpace<'m, M: DglaMorphism> {
    phi: &'m M,
    de_rham: Sign,
}

impl<'m, M: DglaMorphism> PathSpace<'m, M> {
    pub fn new(phi: &'m M) -> Self {
        Self {
            phi,
            de_rham: DE_RHAM_SIGN,
        }
    }

    /// The same algebra with the other de Rham sign, for comparison.
    pub fn with_de_rham_sign(mut self, sign: Sign) -> Self {
        self.de_rham = sign;
        self
    }

    pub fn morphism(&self) -> &'m M {
        self.phi
    }

    pub fn form(&self, t: u32, dt: bool, e: &Element<LOf<M>>) -> Element<PathOf<M>> {
        e.map_linear(|b| {
            Element::basis(PathBasis::Form {
                t,
                dt,
                e: b.clone(),
            })
        })
    }

    pub fn base(&self, x: &Element<KOf<M>>) -> Element<PathOf<M>> {
        x.map_linear(|b| Element::basis(PathBasis::K(b.clone())))
    }

    /// The base `x`, `f(0)`, `f(1)` and `∫_0^1 g` of an element.
    fn profile(&self, p: &Element<PathOf<M>>) -> Profile<M> {
        let mut out = Profile {
            base: Element::zero(),
            f0: Element::zero(),
            f1: Element::zero(),
            g_integral: Element::zero(),
        };
        for (b, c) in p.terms() {
            match b {
                PathBasis::K(x) => out.base.add_term(x.clone(), c.clone()),
                PathBasis::Form { t, dt: false, e } => {
                    if *t == 0 {
                        out.f0.add_term(e.clone(), c.clone());
                    }
                    out.f1.add_term(e.clone(), c.clone());
                }
                PathBasis::Form { t, dt: true, e } => {
                    let w = c / Rational::from_integer((*t as i64 + 1).into());
                    out.g_integral.add_term(e.clone(), w);
                }
            }
        }
        out
    }

    /// Whether `p` satisfies `f(0) = 0` and `f(1) = φ(x)`.
    pub fn contains(&self, p: &Element<PathOf<M>>) -> bool {
        let pr = self.profile(p);
        pr.f0.is_zero() && pr.f1 == self.phi.apply(&pr.base)
    }

    fn require(&self, p: &Element<PathOf<M>>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::Constraint(format!(
                "{p} violates f(0) = 0 or f(1) = φ(x)"
            )))
        }
    }

    /// Basis of `K ⊕ L[t, dt]` up to `t^t_max`, for finite `K` and `L`.
    pub fn monomial_window(&self, t_max: u32) -> Vec<PathOf<M>> {
        let mut out: Vec<PathOf<M>> = self
            .phi
            .source()
            .basis()
            .unwrap_or_default()
            .into_iter()
            .map(PathBasis::K)
            .collect();
        for e in self.phi.target().basis().unwrap_or_default() {
            for t in 0..=t_max {
                for dt in [false, true] {
                    out.push(PathBasis::Form {
                        t,
                        dt,
                        e: e.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// A spanning set of `𝒞_φ` up to `t^t_max`: `(x, tφ(x))`,
    /// `(0, (t^k − t) ⊗ e)` for `2 ≤ k` and `(0, t^k dt ⊗ e)`.
    pub fn constrained_window(&self, t_max: u32) -> Vec<Element<PathOf<M>>> {
        let mut out = Vec::new();
        for x in self.phi.source().basis().unwrap_or_default() {
            let x = Element::basis(x);
            out.push(self.base(&x) + self.form(1, false, &self.phi.apply(&x)));
        }
        for e in self.phi.target().basis().unwrap_or_default() {
            let e = Element::basis(e);
            for k in 2..=t_max {
                out.push(self.form(k, false, &e) - self.form(1, false, &e));
            }
            for k in 0..t_max {
                out.push(self.form(k, true, &e));
            }
        }
        out
    }
}

struct Profile<M: DglaMorphism> {
    base: Element<KOf<M>>,
    f0: Element<LOf<M>>,
    f1: Element<LOf<M>>,
    g_integral: Element<LOf<M>>,
}

impl<M: DglaMorphism> Dgla for PathSpace<'_, M> {
    type Basis = PathOf<M>;

    fn differential_of(&self, b: &PathOf<M>) -> Element<PathOf<M>> {
        let l = self.phi.target();
        match b {
            PathBasis::K(x) => self.base(&self.phi.source().differential_of(x)),
            PathBasis::Form { t, dt: false, e } => {
                let mut out = self.form(*t, false, &l.differential_of(e));
                if *t > 0 {
                    let c = self.de_rham.factor() * Rational::from_integer((*t as i64).into());
                    out.add_term(
                        PathBasis::Form {
                            t: t - 1,
                            dt: true,
                            e: e.clone(),
                        },
                        c,
                    );
                }
                out
            }
            PathBasis::Form { t, dt: true, e } => self.form(*t, true, &-l.differential_of(e)),
        }
    }

    fn bracket_of(&self, a: &PathOf<M>, b: &PathOf<M>) -> Element<PathOf<M>> {
        match (a, b) {
            (PathBasis::K(x), PathBasis::K(y)) => self.base(&self.phi.source().bracket_of(x, y)),
            (
                PathBasis::Form {
                    t: s,
                    dt: ds,
                    e: e1,
                },
                PathBasis::Form {
                    t: u,
                    dt: du,
                    e: e2,
                },
            ) => {
                if *ds && *du {
                    return Element::zero();
                }
                let sign = sign_of_parity(e1.degree() * *du as i64);
                self.form(
                    s + u,
                    *ds || *du,
                    &self.phi.target().bracket_of(e1, e2).scale(&sign),
                )
            }
            _ => Element::zero(),
        }
    }
}

/// The differential of `𝒞_φ`; both operands must satisfy the constraint.
pub fn path_differential<M: DglaMorphism>(
    space: &PathSpace<'_, M>,
    p: &Element<PathOf<M>>,
) -> Result<Element<PathOf<M>>> {
    space.require(p)?;
    Ok(space.differential(p))
}

/// The bracket of `𝒞_φ`; both operands must satisfy the constraint.
pub fn path_bracket<M: DglaMorphism>(
    space: &PathSpace<'_, M>,
    p: &Element<PathOf<M>>,
    q: &Element<PathOf<M>>,
) -> Result<Element<PathOf<M>>> {
    space.require(p)?;
    space.require(q)?;
    Ok(space.bracket(p, q))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HVariant {
    /// `h(x, f + g dt) = (0, ∫_0^t g − t ∫_0^1 g)`.
    #[default]
    A,
    /// Variant `A` plus `t φ(x)`.
    B,
}

/// The homotopy `h` on `K ⊕ L[t, dt]`.
pub fn homotopy_h<M: DglaMorphism>(
    space: &PathSpace<'_, M>,
    p: &Element<PathOf<M>>,
    variant: HVariant,
) -> Element<PathOf<M>> {
    let mut out = Element::zero();
    let mut base = Element::zero();
    for (b, c) in p.terms() {
        match b {
            PathBasis::Form { t, dt: true, e } => {
                let w = c / Rational::from_integer((*t as i64 + 1).into());
                out.add_term(
                    PathBasis::Form {
                        t: t + 1,
                        dt: false,
                        e: e.clone(),
                    },
                    w.clone(),
                );
                out.add_term(
                    PathBasis::Form {
                        t: 1,
                        dt: false,
                        e: e.clone(),
                    },
                    -w,
                );
            }
            PathBasis::K(x) => base.add_term(x.clone(), c.clone()),
            PathBasis::Form { dt: false, .. } => {}
        }
    }
    if variant == HVariant::B {
        out += space.form(1, false, &space.phi.apply(&base));
    }
    out
}

/// `p = id − (dh + hd)`.
pub fn projection<M: DglaMorphism>(
    space: &PathSpace<'_, M>,
    v: &Element<PathOf<M>>,
    variant: HVariant,
) -> Element<PathOf<M>> {
    let dh = space.differential(&homotopy_h(space, v, variant));
    let hd = homotopy_h(space, &space.differential(v), variant);
    v.clone() - dh - hd
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InclusionKind {
    /// `(x, a) ↦ (x, tφ(x) + a dt)`, which lands in `𝒞_φ`.
    #[default]
    Corrected,
    /// `(x, a) ↦ (x, a dt)`.
    Literal,
}

/// Includes `C_φ = K ⊕ L[1]` (written as cone elements) into the path space.
pub fn inclusion<M: DglaMorphism>(
    space: &PathSpace<'_, M>,
    v: &ConeElement<KOf<M>, LOf<M>>,
    kind: InclusionKind,
) -> Element<PathOf<M>> {
    let (x, a) = super::split(v);
    let mut out = space.base(&x) + space.form(0, true, &a);
    if kind == InclusionKind::Corrected {
        out += space.form(1, false, &space.phi.apply(&x));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub checked: usize,
    pub witness: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub variant: HVariant,
    pub inclusion: InclusionKind,
    pub t_max: u32,
    pub chain_map: PropertyOutcome,
    pub idempotent: PropertyOutcome,
    pub image_in_inclusion: PropertyOutcome,
    pub fixes_subcomplex: PropertyOutcome,
}

impl ContractionReport {
    pub fn passed(&self) -> bool {
        self.chain_map.passed()
            && self.idempotent.passed()
            && self.image_in_inclusion.passed()
            && self.fixes_subcomplex.passed()
    }
}

fn first_failure<T: Sync>(
    items: &[T],
    bad: impl Fn(&T) -> Option<String> + Sync + Send,
) -> PropertyOutcome {
    PropertyOutcome {
        checked: items.len(),
        witness: items.par_iter().find_map_first(bad),
    }
}

/// Checks that `p = id − (dh + hd)` is a chain map, is idempotent, has image
/// inside the included copy of `C_φ`, and fixes that copy, on the window of
/// `𝒞_φ` of `t`-degree at most `t_max`.
pub fn contraction_check<M: DglaMorphism>(
    space: &PathSpace<'_, M>,
    variant: HVariant,
    kind: InclusionKind,
    t_max: u32,
) -> ContractionReport {
    let window = space.constrained_window(t_max);
    let p = |v: &Element<PathOf<M>>| projection(space, v, variant);

    let chain_map = first_failure(&window, |v| {
        let (lhs, rhs) = (space.differential(&p(v)), p(&space.differential(v)));
        (lhs != rhs).then(|| format!("d p({v}) − p d({v}) = {}", lhs - rhs))
    });
    let idempotent = first_failure(&window, |v| {
        let once = p(v);
        let twice = p(&once);
        (once != twice).then(|| format!("p²({v}) − p({v}) = {}", twice - once))
    });
    let image_in_inclusion = first_failure(&window, |v| {
        let q = p(v);
        let pr = space.profile(&q);
        let mut preimage = super::k_part_into(&pr.base);
        for (b, c) in q.terms() {
            if let PathBasis::Form { t: 0, dt: true, e } = b {
                preimage.add_term(ConeBasis::L(e.clone()), c.clone());
            }
        }
        let back = inclusion(space, &preimage, kind);
        (back != q).then(|| format!("p({v}) = {q} is not included"))
    });
    let cone_basis: Vec<ConeElement<KOf<M>, LOf<M>>> = {
        let (k, l) = (space.phi.source(), space.phi.target());
        k.basis()
            .unwrap_or_default()
            .into_iter()
            .map(ConeBasis::K)
            .chain(l.basis().unwrap_or_default().into_iter().map(ConeBasis::L))
            .map(Element::basis)
            .collect()
    };
    let fixes_subcomplex = first_failure(&cone_basis, |v| {
        let i = inclusion(space, v, kind);
        let q = p(&i);
        (q != i).then(|| format!("p(ι({v})) − ι({v}) = {}", q - i))
    });
    ContractionReport {
        variant,
        inclusion: kind,
        t_max,
        chain_map,
        idempotent,
        image_in_inclusion,
        fixes_subcomplex,
    }
}

impl<M: DglaMorphism> PathSpace<'_, M> {
    /// Every combination of homotopy variant and inclusion.
    pub fn contraction_reports(&self, t_max: u32) -> Vec<ContractionReport> {
        let mut out = Vec::new();
        for variant in [HVariant::A, HVariant::B] {
            for kind in [InclusionKind::Corrected, InclusionKind::Literal] {
                out.push(contraction_check(self, variant, kind, t_max));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::TruncationInclusion;
    use crate::dgla::validate;
    use crate::presets::finite_preset;

    #[test]
    fn ambient_axioms_on_small_window() {
        let d = finite_preset("sl2-nilpotent").unwrap();
        let phi = TruncationInclusion::new(&d);
        let space = PathSpace::new(&phi);
        let window = space.monomial_window(2);
        assert!(validate(&space, &window).passed());
        let flipped = PathSpace::new(&phi).with_de_rham_sign(Sign::Minus);
        assert!(validate(&flipped, &window).passed());
    }

    #[test]
    fn dt_components_commute_to_zero() {
        let d = finite_preset("sl2-pqr").unwrap();
        let phi = TruncationInclusion::new(&d);
        let space = PathSpace::new(&phi);
        let e = Element::basis(d.symbol("e.p").unwrap().clone());
        let f = Element::basis(d.symbol("f.1").unwrap().clone());
        let v = space.bracket(&space.form(1, true, &e), &space.form(0, true, &f));
        assert!(v.is_zero());
        assert!(
            path_bracket(&space, &space.form(1, true, &e), &space.form(0, true, &f))
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn constraint_is_enforced() {
        let d = finite_preset("sl2-pqr").unwrap();
        let phi = TruncationInclusion::new(&d);
        let space = PathSpace::new(&phi);
        let e = Element::basis(d.symbol("e.p").unwrap().clone());
        assert!(matches!(
            path_differential(&space, &space.form(0, false, &e)),
            Err(Error::Constraint(_))
        ));
        for v in space.constrained_window(3) {
            assert!(space.contains(&v), "{v}");
            assert!(space.contains(&space.differential(&v)));
        }
    }

    #[test]
    fn homotopy_a_output_vanishes_at_endpoints() {
        let d = finite_preset("heisenberg-pq").unwrap();
        let phi = TruncationInclusion::new(&d);
        let space = PathSpace::new(&phi);
        for b in space.monomial_window(3) {
            let h = homotopy_h(&space, &Element::basis(b), HVariant::A);
            let pr = space.profile(&h);
            assert!(pr.f0.is_zero() && pr.f1.is_zero() && pr.g_integral.is_zero());
            assert!(homotopy_h(&space, &h, HVariant::A).is_zero());
        }
    }

    #[test]
    fn contraction_variants() {
        let d = finite_preset("sl2-pq").unwrap();
        let phi = TruncationInclusion::new(&d);
        let space = PathSpace::new(&phi);
        let reports = space.contraction_reports(3);
        let passing: Vec<_> = reports
            .iter()
            .filter(|r| r.passed())
            .map(|r| (r.variant, r.inclusion))
            .collect();
        assert_eq!(passing, vec![(HVariant::A, InclusionKind::Corrected)]);
        let literal = &reports[1];
        assert!(literal.fixes_subcomplex.passed() && !literal.image_in_inclusion.passed());
    }

    #[test]
    fn de_rham_sign_regression() {
        assert_eq!(DE_RHAM_SIGN, Sign::Plus);
        let d = finite_preset("sl2-pq").unwrap();
        let phi = TruncationInclusion::new(&d);
        let flipped = PathSpace::new(&phi).with_de_rham_sign(Sign::Minus);
        let r = contraction_check(&flipped, HVariant::A, InclusionKind::Corrected, 3);
        assert!(!r.idempotent.passed());
    }
}
