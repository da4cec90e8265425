use crate::algebra::{Element, Graded};
use crate::dgla::Dgla;
use crate::error::{Error, Result};

/// A morphism of DGLAs, given on basis vectors.
pub trait DglaMorphism: Send + Sync {
    type Source: Dgla;
    type Target: Dgla;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn apply_basis(
        &self,
        b: &<Self::Source as Dgla>::Basis,
    ) -> Element<<Self::Target as Dgla>::Basis>;

    fn apply(
        &self,
        e: &Element<<Self::Source as Dgla>::Basis>,
    ) -> Element<<Self::Target as Dgla>::Basis> {
        e.map_linear(|b| self.apply_basis(b))
    }
}

/// `τ_{≤0} L` as a sub-DGLA of `L`.
pub struct NonPositivePart<'a, D: Dgla> {
    ambient: &'a D,
}

impl<'a, D: Dgla> NonPositivePart<'a, D> {
    pub fn new(ambient: &'a D) -> Self {
        Self { ambient }
    }

    pub fn ambient(&self) -> &'a D {
        self.ambient
    }
}

impl<D: Dgla> Dgla for NonPositivePart<'_, D> {
    type Basis = D::Basis;

    fn differential_of(&self, b: &D::Basis) -> Element<D::Basis> {
        self.ambient.differential_of(b)
    }

    fn bracket_of(&self, a: &D::Basis, b: &D::Basis) -> Element<D::Basis> {
        self.ambient.bracket_of(a, b)
    }

    fn basis(&self) -> Option<Vec<D::Basis>> {
        self.ambient
            .basis()
            .map(|bs| bs.into_iter().filter(|b| b.degree() <= 0).collect())
    }
}

/// The inclusion `φ: τ_{≤0} L → L`.
pub struct TruncationInclusion<'a, D: Dgla> {
    source: NonPositivePart<'a, D>,
    target: &'a D,
}

impl<'a, D: Dgla> TruncationInclusion<'a, D> {
    pub fn new(target: &'a D) -> Self {
        Self {
            source: NonPositivePart::new(target),
            target,
        }
    }
}

impl<'a, D: Dgla> DglaMorphism for TruncationInclusion<'a, D> {
    type Source = NonPositivePart<'a, D>;
    type Target = D;

    fn source(&self) -> &NonPositivePart<'a, D> {
        &self.source
    }

    fn target(&self) -> &D {
        self.target
    }

    fn apply_basis(&self, b: &D::Basis) -> Element<D::Basis> {
        Element::basis(b.clone())
    }
}

/// Checks that `φ` has degree zero, commutes with the differentials and
/// preserves brackets on the given window of the source.
pub fn validate_morphism<M: DglaMorphism>(
    phi: &M,
    window: &[<M::Source as Dgla>::Basis],
) -> Result<()> {
    let (k, l) = (phi.source(), phi.target());
    for x in window {
        let image = phi.apply_basis(x);
        if image.terms().any(|(b, _)| b.degree() != x.degree()) {
            return Err(Error::DegreeMismatch(format!("φ({x}) changes degree")));
        }
        let bx = Element::basis(x.clone());
        if phi.apply(&k.differential(&bx)) != l.differential(&image) {
            return Err(Error::Input(format!("φ does not commute with δ on {x}")));
        }
        for y in window {
            let by = Element::basis(y.clone());
            if phi.apply(&k.bracket(&bx, &by)) != l.bracket(&image, &phi.apply(&by)) {
                return Err(Error::Input(format!("φ does not preserve [{x},{y}]")));
            }
        }
    }
    Ok(())
}
