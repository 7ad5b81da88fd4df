//! Sampling check that based loops in a coarse space are null-homotopic.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::homotopy::cube::{Cube, CubeMap};
use crate::homotopy::relation::{verify_homotopy, Anchors};
use crate::homotopy::search::{homotopic_search, SearchOptions, SearchOutcome};
use crate::space::Space;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrivialityOptions {
    pub samples: usize,
    /// Loops are drawn on sides `1..=max_side`.
    pub max_side: usize,
    pub seed: u64,
    pub node_budget: usize,
}

impl Default for TrivialityOptions {
    fn default() -> Self {
        TrivialityOptions { samples: 100, max_side: 6, seed: 0, node_budget: 200_000 }
    }
}

/// A sampled loop that was not certified null-homotopic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialityFailure {
    pub sample: usize,
    pub path: Vec<usize>,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialityReport {
    pub samples: usize,
    pub certified: usize,
    pub failures: Vec<TrivialityFailure>,
}

impl TrivialityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.certified == self.samples
    }
}

/// Draw random based loops in a coarse space and search for a based
/// null-homotopy of each.
///
/// In a coarse space every component is a complete relation, so a loop is
/// any sequence inside the component of its basepoint.
pub fn coarse_triviality_check(space: &Space, options: TrivialityOptions) -> Result<TrivialityReport> {
    if !space.is_coarse() {
        let witness = space
            .set_product_extension()
            .roof_indices()
            .find(|&(u, v)| !space.related(u, v))
            .map(|(u, v)| format!("{} and {} are related in roof ∘ roof but not in the roof", space.vertex(u), space.vertex(v)))
            .unwrap_or_default();
        return Err(Error::precondition("space is not coarse", witness));
    }
    if options.max_side == 0 {
        return Err(Error::input("loops need a side of at least 1"));
    }
    let mut report = TrivialityReport { samples: options.samples, certified: 0, failures: Vec::new() };
    if space.is_empty() {
        report.samples = 0;
        return Ok(report);
    }
    let target = Arc::new(space.clone());
    let components = space.component_indices();
    let labels = space.component_labels();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for sample in 0..options.samples {
        let base = rng.gen_range(0..space.len());
        let comp = &components[labels[base]];
        let side = rng.gen_range(1..=options.max_side);
        let mut path = vec![base; side + 1];
        for v in path.iter_mut().take(side).skip(1) {
            *v = comp[rng.gen_range(0..comp.len())];
        }
        let f = CubeMap::path(target.clone(), &path)?;
        let k = CubeMap::constant(Cube::new(1, side)?, target.clone(), base)?;
        let outcome = homotopic_search(&f, &k, &Anchors::Boundary, SearchOptions::fixed_side(options.node_budget))?;
        match outcome {
            SearchOutcome::Homotopic(h) if verify_homotopy(&h) => report.certified += 1,
            other => report.failures.push(TrivialityFailure {
                sample,
                path,
                outcome: match other {
                    SearchOutcome::Homotopic(_) => "certificate failed verification".into(),
                    SearchOutcome::Distinct { .. } => "no null-homotopy at this side".into(),
                    SearchOutcome::Exhausted { visited } => format!("budget exhausted after {visited} maps"),
                },
            }),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_space_passes() {
        let r = coarse_triviality_check(&Space::discrete(["p"]), TrivialityOptions { samples: 5, ..Default::default() }).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn completion_of_c4_passes() {
        let k4 = Space::cyclic(4, 1).coarse_completion().space;
        let r = coarse_triviality_check(&k4, TrivialityOptions { samples: 20, ..Default::default() }).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn two_components() {
        let two = Space::disjoint_union(&[Space::cyclic(4, 1), Space::path(2)]).coarse_completion().space;
        let r = coarse_triviality_check(&two, TrivialityOptions { samples: 20, ..Default::default() }).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn non_coarse_space_is_rejected() {
        let err = coarse_triviality_check(&Space::cyclic(4, 1), TrivialityOptions::default()).unwrap_err();
        assert!(err.witness().is_some());
    }
}
