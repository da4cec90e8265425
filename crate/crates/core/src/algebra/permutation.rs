//! Permutations, Koszul signs and unshuffles.

use itertools::Itertools;

use crate::error::{Error, Result};

/// A bijection of `{0, …, n}`, stored by images: the permuted sequence is
/// `(a[images[0]], a[images[1]], …)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Self {
            images: (0..len).collect(),
        }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Input(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `(self ∘ other)`: first reorder by `other`, then by `self`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different lengths"
        );
        Self {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (pos, &i) in self.images.iter().enumerate() {
            inv[i] = pos;
        }
        Self { images: inv }
    }

    /// Applies the reordering to a slice.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| items[i].clone()).collect()
    }

    /// All permutations of `{0, …, len-1}` in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = Self> {
        (0..len).permutations(len).map(|images| Self { images })
    }
}

/// Koszul sign of reordering objects of the given degrees by `perm`.
///
/// Computed by bubble-sorting the permuted sequence back to the identity and
/// accumulating `(-1)^{|a||b|}` for every adjacent transposition.
pub fn koszul_sign(perm: &Permutation, degrees: &[i64]) -> Result<i8> {
    if perm.len() != degrees.len() {
        return Err(Error::LengthMismatch {
            expected: perm.len(),
            actual: degrees.len(),
        });
    }
    let mut seq = perm.images().to_vec();
    let mut odd = false;
    let n = seq.len();
    for pass in 0..n {
        for i in 0..n.saturating_sub(pass + 1) {
            if seq[i] > seq[i + 1] {
                if degrees[seq[i]] * degrees[seq[i + 1]] % 2 != 0 {
                    odd = !odd;
                }
                seq.swap(i, i + 1);
            }
        }
    }
    Ok(if odd { -1 } else { 1 })
}

/// One splitting of `{0, …, n}` into `I = {i_0 < … < i_k}` and its
/// complement `J`, together with the permutation `I ++ J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unshuffle {
    pub first: Vec<usize>,
    pub rest: Vec<usize>,
    pub perm: Permutation,
}

impl Unshuffle {
    pub fn sign(&self, degrees: &[i64]) -> Result<i8> {
        koszul_sign(&self.perm, degrees)
    }
}

/// All `(I, J)` with `|I| = k + 1` partitioning `{0, …, n}`, ordered
/// lexicographically by `I`.
pub fn unshuffles(n: usize, k: usize) -> Result<impl Iterator<Item = Unshuffle>> {
    if k > n {
        return Err(Error::OutOfRange(format!(
            "unshuffle size k = {k} with n = {n}"
        )));
    }
    Ok((0..=n).combinations(k + 1).map(move |first| {
        let rest: Vec<usize> = (0..=n).filter(|i| !first.contains(i)).collect();
        let images = first.iter().chain(rest.iter()).copied().collect();
        Unshuffle {
            first,
            rest,
            perm: Permutation { images },
        }
    }))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
