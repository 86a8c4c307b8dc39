//! Separability of one graph across many vertex labelings.
//!
//! Labelings that differ by an automorphism of the graph give the same
//! state, so for small graphs only one labeling per automorphism orbit is
//! evaluated and its verdict counted `|Aut(G)|` times. Larger searches
//! draw labelings uniformly from a seeded generator.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{classify, BipartiteLabeling, SeparabilityStatus};
use crate::density::density_of_graph;
use crate::error::{Error, Result};
use crate::graph::{all_permutations, Graph, VertexPermutation};

pub const DEFAULT_SEED: u64 = 0x5eed_1abe1;

/// Orbit enumeration is attempted up to this many vertices.
pub const MAX_EXHAUSTIVE_N: usize = 8;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Largest number of labelings to evaluate.
    pub budget: usize,
    /// Fall back to `budget` uniform samples when enumeration is too big.
    pub sample: bool,
    pub seed: u64,
    pub tol: f64,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: 100_000, sample: false, seed: DEFAULT_SEED, tol: super::DEFAULT_TOL, workers: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    ExhaustiveOrbits,
    Sampled,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StatusCounts {
    pub separable: u128,
    pub entangled_npt: u128,
    pub ppt_inconclusive: u128,
}

impl StatusCounts {
    fn add(&mut self, s: SeparabilityStatus, w: u128) {
        match s {
            SeparabilityStatus::Separable => self.separable += w,
            SeparabilityStatus::EntangledNpt => self.entangled_npt += w,
            SeparabilityStatus::PptInconclusive => self.ppt_inconclusive += w,
        }
    }

    pub fn total(&self) -> u128 {
        self.separable + self.entangled_npt + self.ppt_inconclusive
    }

    /// Labelings with a positive partial transpose, certified or not.
    pub fn ppt(&self) -> u128 {
        self.separable + self.ppt_inconclusive
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub labeling: String,
    pub min_pt_eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_by: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelingCensus {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub method: SearchMethod,
    pub automorphisms: Option<usize>,
    /// `n!` as a decimal string, since it outgrows JSON integers.
    pub total_labelings: String,
    pub evaluated: usize,
    /// Weighted by orbit size for exhaustive searches; raw sample counts
    /// otherwise.
    pub counts: StatusCounts,
    pub witnesses: BTreeMap<SeparabilityStatus, Witness>,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Labelings whose image is lexicographically smallest in their orbit
/// under precomposition with automorphisms.
fn orbit_representatives(n: usize, auts: &[VertexPermutation]) -> Vec<VertexPermutation> {
    all_permutations(n)
        .into_iter()
        .filter(|lam| auts.iter().all(|a| lam.compose(a).image() >= lam.image()))
        .collect()
}

pub fn labeling_search(g: &Graph, p: usize, q: usize, opts: &SearchOptions) -> Result<LabelingCensus> {
    let n = g.n();
    if p * q != n {
        return Err(Error::DimensionMismatch { expected: n, actual: p * q });
    }
    let total = factorial(n);
    let exhaustive = if n <= MAX_EXHAUSTIVE_N {
        let auts = g.automorphisms();
        let orbits = total / auts.len() as u128;
        (orbits <= opts.budget as u128).then(|| (auts.len(), orbit_representatives(n, &auts))).ok_or(orbits)
    } else {
        Err(total)
    };
    let (method, automorphisms, labelings, weight) = match exhaustive {
        Ok((aut, reps)) => (SearchMethod::ExhaustiveOrbits, Some(aut), reps, aut as u128),
        Err(_) if opts.sample => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut draws = Vec::with_capacity(opts.budget);
            for _ in 0..opts.budget {
                let mut image: Vec<usize> = (0..n).collect();
                image.shuffle(&mut rng);
                draws.push(VertexPermutation::new(image)?);
            }
            (SearchMethod::Sampled, None, draws, 1)
        }
        Err(required) => return Err(Error::BudgetExceeded { budget: opts.budget, required }),
    };

    let rho = density_of_graph(g)?;
    let eval = |perm: &VertexPermutation| {
        let lab = BipartiteLabeling::from_permutation(p, q, perm)?;
        classify(g, &rho, &lab, opts.tol)
    };
    let verdicts: Vec<_> = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))?
            .install(|| labelings.par_iter().map(eval).collect::<Result<_>>())?,
        None => labelings.par_iter().map(eval).collect::<Result<_>>()?,
    };

    let mut counts = StatusCounts::default();
    let mut witnesses = BTreeMap::new();
    for v in &verdicts {
        counts.add(v.status, weight);
        witnesses.entry(v.status).or_insert_with(|| Witness {
            labeling: v.labeling.to_string(),
            min_pt_eigenvalue: v.min_pt_eigenvalue,
            certified_by: v.certified_by.clone(),
        });
    }
    Ok(LabelingCensus {
        n,
        p,
        q,
        method,
        automorphisms,
        total_labelings: total.to_string(),
        evaluated: verdicts.len(),
        counts,
        witnesses,
    })
}
