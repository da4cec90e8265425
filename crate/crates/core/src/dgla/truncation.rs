use super::Dgla;
use crate::algebra::{Element, Graded};

/// The positively graded part of a DGLA, as a view.
///
/// Only positive-degree basis vectors are admissible inputs and outputs; the
/// ambient algebra stays reachable for intermediate values (images of the
/// degree-one differential land in degree zero).
pub struct PositiveTruncation<'a, D: Dgla> {
    ambient: &'a D,
}

impl<D: Dgla> Clone for PositiveTruncation<'_, D> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<D: Dgla> Copy for PositiveTruncation<'_, D> {}

pub fn truncate_positive<D: Dgla>(d: &D) -> PositiveTruncation<'_, D> {
    PositiveTruncation { ambient: d }
}

impl<'a, D: Dgla> PositiveTruncation<'a, D> {
    pub fn ambient(&self) -> &'a D {
        self.ambient
    }

    pub fn admits(&self, b: &D::Basis) -> bool {
        b.degree() > 0
    }

    pub fn admits_element(&self, e: &Element<D::Basis>) -> bool {
        e.terms().all(|(b, _)| self.admits(b))
    }

    /// Admissible basis vectors, when the ambient algebra is finite.
    pub fn basis(&self) -> Option<Vec<D::Basis>> {
        self.ambient
            .basis()
            .map(|bs| bs.into_iter().filter(|b| self.admits(b)).collect())
    }

    /// Distinct admissible degrees, ascending.
    pub fn degrees(&self) -> Option<Vec<i64>> {
        self.basis().map(|bs| {
            let mut ds: Vec<i64> = bs.iter().map(Graded::degree).collect();
            ds.sort_unstable();
            ds.dedup();
            ds
        })
    }

    /// Truncating again is the identity on views.
    pub fn truncate_positive(&self) -> Self {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::StructureConstantDgla;

    fn graded(degrees: &[i64]) -> StructureConstantDgla {
        let mut b = StructureConstantDgla::builder("g");
        for (i, d) in degrees.iter().enumerate() {
            b = b.symbol(&format!("s{i}"), *d);
        }
        b.build().unwrap()
    }

    #[test]
    fn exposes_positive_degrees() {
        let d = graded(&[0, 1, 2, 0, 1]);
        assert_eq!(truncate_positive(&d).degrees().unwrap(), vec![1, 2]);
        let neg = graded(&[0, -1, -2]);
        assert!(truncate_positive(&neg).basis().unwrap().is_empty());
    }

    #[test]
    fn idempotent() {
        let d = graded(&[-1, 0, 1, 2, 3]);
        let once = truncate_positive(&d);
        assert_eq!(once.truncate_positive().basis(), once.basis());
        for s in d.symbols() {
            assert_eq!(once.admits(s), s.degree() > 0);
        }
    }
}
