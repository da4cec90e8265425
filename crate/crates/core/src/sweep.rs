//! Tuple sweeps over a window of basis vectors: exhaustive below a cap,
//! seeded sampling above it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{binomial, Basis, Element};
use crate::error::Result;
use crate::linfinity::multisets;

pub const DEFAULT_TUPLE_CAP: u64 = 200_000;
pub const DEFAULT_SAMPLES: usize = 20_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum SweepMode {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepSettings {
    pub tuple_cap: u64,
    pub seed: u64,
    pub samples: usize,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            tuple_cap: DEFAULT_TUPLE_CAP,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

/// Number of multisets of size `arity` drawn from `len` items.
pub fn multiset_count(len: usize, arity: usize) -> u64 {
    if len == 0 {
        return u64::from(arity == 0);
    }
    binomial((len + arity - 1) as u64, arity as u64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepPlan {
    pub mode: SweepMode,
    /// Multisets available in the window.
    pub available: u64,
    pub tuples: Vec<Vec<usize>>,
}

/// All multisets when there are at most `tuple_cap` of them, otherwise
/// `samples` sorted index tuples drawn with a ChaCha8 generator seeded from
/// `seed`, the window size and the arity.
pub fn plan(len: usize, arity: usize, settings: &SweepSettings) -> SweepPlan {
    let available = multiset_count(len, arity);
    if available <= settings.tuple_cap {
        return SweepPlan {
            mode: SweepMode::Exhaustive,
            available,
            tuples: multisets(len, arity).collect(),
        };
    }
    let stream = settings.seed ^ ((len as u64) << 32) ^ arity as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    let tuples = (0..settings.samples)
        .map(|_| {
            let mut t: Vec<usize> = (0..arity).map(|_| rng.gen_range(0..len)).collect();
            t.sort_unstable();
            t
        })
        .collect();
    SweepPlan {
        mode: SweepMode::Sampled {
            seed: settings.seed,
            samples: settings.samples,
        },
        available,
        tuples,
    }
}

/// Runs `check` on every planned tuple and returns the first failure in
/// plan order, independent of scheduling. `check` returns a description of
/// the failure, if any.
pub fn first_failure<F>(plan: &SweepPlan, check: F) -> Result<Option<(Vec<usize>, String)>>
where
    F: Fn(&[usize]) -> Result<Option<String>> + Sync + Send,
{
    plan.tuples
        .par_iter()
        .map(|t| Ok(check(t)?.map(|msg| (t.clone(), msg))))
        .find_map_first(|r: Result<Option<_>>| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()
        .map(Option::flatten)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepOutcome {
    pub arity: usize,
    #[serde(flatten)]
    pub mode: SweepMode,
    pub available: u64,
    pub checked: usize,
    /// The first failing tuple and a description of the failure.
    pub witness: Option<(Vec<String>, String)>,
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Sweeps `check` over multisets of `arity` basis vectors of `window`.
pub fn sweep_window<B, F>(
    window: &[B],
    arity: usize,
    settings: &SweepSettings,
    check: F,
) -> Result<SweepOutcome>
where
    B: Basis,
    F: Fn(&[Element<B>]) -> Result<Option<String>> + Sync + Send,
{
    let plan = plan(window.len(), arity, settings);
    let hit = first_failure(&plan, |idx| {
        let args: Vec<Element<B>> = idx
            .iter()
            .map(|&i| Element::basis(window[i].clone()))
            .collect();
        check(&args)
    })?;
    Ok(SweepOutcome {
        arity,
        mode: plan.mode,
        available: plan.available,
        checked: plan.tuples.len(),
        witness: hit.map(|(idx, msg)| (idx.iter().map(|&i| window[i].to_string()).collect(), msg)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(multiset_count(3, 2), 6);
        assert_eq!(multiset_count(12, 5), 4368);
        assert_eq!(multiset_count(0, 0), 1);
        assert_eq!(multiset_count(0, 2), 0);
    }

    #[test]
    fn exhaustive_below_cap() {
        let p = plan(4, 3, &SweepSettings::default());
        assert_eq!(p.mode, SweepMode::Exhaustive);
        assert_eq!(p.tuples.len() as u64, p.available);
    }

    #[test]
    fn sampling_is_reproducible() {
        let s = SweepSettings {
            tuple_cap: 10,
            seed: 7,
            samples: 50,
        };
        let a = plan(20, 4, &s);
        let b = plan(20, 4, &s);
        assert_eq!(a, b);
        assert!(matches!(a.mode, SweepMode::Sampled { seed: 7, .. }));
        assert!(a.tuples.iter().all(|t| t.windows(2).all(|w| w[0] <= w[1])));
        let c = plan(20, 4, &SweepSettings { seed: 8, ..s });
        assert_ne!(a.tuples, c.tuples);
    }

    #[test]
    fn first_failure_is_deterministic() {
        let p = plan(6, 2, &SweepSettings::default());
        let hit = first_failure(&p, |t| Ok((t[0] + t[1] == 5).then(|| "sum".to_string()))).unwrap();
        assert_eq!(hit, Some((vec![0, 5], "sum".to_string())));
    }
}
