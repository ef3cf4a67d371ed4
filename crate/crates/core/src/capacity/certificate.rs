//! Verification of a candidate (optimal average output, capacity) pair.
//!
//! By the max–min principle C_Holv ≤ sup_ω H[Φ(ω), Φ(γ)] for every γ, with
//! equality iff Φ(γ) is the optimal average output. A candidate is accepted
//! when no start of the ascent climbs above the candidate capacity by more
//! than the threshold; a start that does is kept as the challenger.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::channels::{FamilySpec, KrausChannel};
use crate::error::Result;
use crate::matcore::ComplexMatrix;

use super::ascent::{AscentOptions, RelativeEntropyAscent};
use super::starts::{run_starts, SearchOptions, StartRecipe};

/// Largest accepted excess sup_ω H[Φ(ω), A] − C⋆, in bits.
pub const VERIFY_THRESHOLD: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityCertificate {
    /// Family the channel was built from; `tensor_power` copies of it.
    pub family: Option<FamilySpec>,
    pub params: BTreeMap<String, f64>,
    pub tensor_power: u32,
    pub candidate_avg_output: ComplexMatrix,
    pub candidate_capacity: f64,
    /// Largest H[Φ(ω), A] over all starts.
    pub sup_objective: f64,
    /// `sup_objective − candidate_capacity`.
    pub worst_violation: f64,
    pub threshold: f64,
    pub verified: bool,
    /// The best final state, whether or not it beats the candidate.
    pub best_state: ComplexMatrix,
    pub best_start: usize,
    /// Set when some start exceeds the candidate capacity.
    pub best_challenger: Option<ComplexMatrix>,
    pub starts: usize,
    pub seed: u64,
    pub recipes: Vec<StartRecipe>,
    pub iterations_max: usize,
    /// Starts that hit the iteration cap before becoming stationary.
    pub non_converged: usize,
    #[serde(default)]
    pub ascent: AscentOptions,
}

impl CapacityCertificate {
    pub(crate) fn describe(&mut self, spec: &FamilySpec, power: u32) {
        self.params = spec.params().into_iter().collect();
        self.family = Some(spec.clone());
        self.tensor_power = power;
    }
}

/// Checks the candidate with `opts.starts` ascents and the default threshold.
pub fn verify_candidate(
    channel: &KrausChannel,
    avg_output: &ComplexMatrix,
    capacity: f64,
    opts: &SearchOptions,
) -> Result<CapacityCertificate> {
    verify_candidate_with_threshold(channel, avg_output, capacity, opts, VERIFY_THRESHOLD)
}

pub fn verify_candidate_with_threshold(
    channel: &KrausChannel,
    avg_output: &ComplexMatrix,
    capacity: f64,
    opts: &SearchOptions,
    threshold: f64,
) -> Result<CapacityCertificate> {
    let ascent = RelativeEntropyAscent::new(channel, avg_output)?;
    let reports = run_starts(opts, channel.factors(), |_, _, v| {
        ascent.run(&ComplexMatrix::outer(&v), &opts.ascent)
    })?;

    let mut best = 0;
    for (i, r) in reports.iter().enumerate() {
        if r.objective > reports[best].objective {
            best = i;
        }
    }
    let sup = reports[best].objective;
    let worst_violation = sup - capacity;
    let family = channel.family().cloned();
    Ok(CapacityCertificate {
        params: family.as_ref().map(|f| f.params().into_iter().collect()).unwrap_or_default(),
        family,
        tensor_power: 1,
        candidate_avg_output: avg_output.clone(),
        candidate_capacity: capacity,
        sup_objective: sup,
        worst_violation,
        threshold,
        verified: worst_violation <= threshold,
        best_state: reports[best].state.clone(),
        best_start: best,
        best_challenger: (worst_violation > 0.0).then(|| reports[best].state.clone()),
        starts: opts.starts,
        seed: opts.seed,
        recipes: opts.recipes.clone(),
        iterations_max: reports.iter().map(|r| r.iterations).max().unwrap_or(0),
        non_converged: reports.iter().filter(|r| !r.converged).count(),
        ascent: opts.ascent,
    })
}
