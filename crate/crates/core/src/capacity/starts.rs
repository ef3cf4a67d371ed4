//! Start states for the multi-start ascents.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{normalized, ComplexMatrix, ZERO};
use crate::sample::random_pure_vector;

use super::ascent::AscentOptions;

/// How a start state is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartRecipe {
    /// Normalized vector of independent random complex coefficients.
    RandomPure,
    /// Random coefficients r_jk on |j⟩⊗|k⟩ of a bipartite space.
    RandomBipartite,
    /// Σ_j c_j |j⟩⊗|π(j)⟩ with |c_j| = d^{-1/2} and uniformly random phases.
    MaxEntangledPhases,
    /// Σ_i |φ_i⟩⊗|φ_i⟩ over d random pure φ_i, normalized.
    ProductSum,
}

impl StartRecipe {
    pub const ALL: [StartRecipe; 4] = [
        StartRecipe::RandomPure,
        StartRecipe::RandomBipartite,
        StartRecipe::MaxEntangledPhases,
        StartRecipe::ProductSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StartRecipe::RandomPure => "random_pure",
            StartRecipe::RandomBipartite => "random_bipartite",
            StartRecipe::MaxEntangledPhases => "max_entangled_phases",
            StartRecipe::ProductSum => "product_sum",
        }
    }

    pub fn needs_bipartite(self) -> bool {
        !matches!(self, StartRecipe::RandomPure)
    }
}

/// The pairing used by [`StartRecipe::MaxEntangledPhases`]: for d = 4 the
/// pattern 1→3, 2→4, 3→2, 4→1 (0-based 0→2, 1→3, 2→1, 3→0); otherwise the
/// cyclic shift j → j+1.
pub fn max_entangled_partner(d: usize, j: usize) -> usize {
    if d == 4 {
        [2, 3, 1, 0][j]
    } else {
        (j + 1) % d
    }
}

fn bipartite(dims: &[usize], recipe: StartRecipe) -> Result<(usize, usize)> {
    match dims {
        [d1, d2] => Ok((*d1, *d2)),
        _ => Err(Error::BadRecipe(
            recipe.name(),
            format!("needs two tensor factors, got {dims:?}"),
        )),
    }
}

/// Unit vector drawn by `recipe` on the space with tensor factors `dims`.
pub fn random_start_vector(recipe: StartRecipe, dims: &[usize], rng: &mut impl Rng) -> Result<Vec<Complex64>> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || total == 0 {
        return Err(Error::BadRecipe(recipe.name(), "empty dimension list".into()));
    }
    match recipe {
        StartRecipe::RandomPure => Ok(random_pure_vector(total, rng)),
        StartRecipe::RandomBipartite => {
            bipartite(dims, recipe)?;
            Ok(random_pure_vector(total, rng))
        }
        StartRecipe::MaxEntangledPhases => {
            let (d1, d2) = bipartite(dims, recipe)?;
            if d1 != d2 {
                return Err(Error::BadRecipe(recipe.name(), format!("factors differ: {d1} vs {d2}")));
            }
            let amp = 1.0 / (d1 as f64).sqrt();
            let mut v = vec![ZERO; total];
            for j in 0..d1 {
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                v[j * d2 + max_entangled_partner(d1, j)] = Complex64::from_polar(amp, theta);
            }
            Ok(v)
        }
        StartRecipe::ProductSum => {
            let (d1, d2) = bipartite(dims, recipe)?;
            if d1 != d2 {
                return Err(Error::BadRecipe(recipe.name(), format!("factors differ: {d1} vs {d2}")));
            }
            loop {
                let mut v = vec![ZERO; total];
                for _ in 0..d1 {
                    let phi = random_pure_vector(d1, rng);
                    for j in 0..d1 {
                        for k in 0..d2 {
                            v[j * d2 + k] += phi[j] * phi[k];
                        }
                    }
                }
                if let Some(u) = normalized(&v) {
                    return Ok(u);
                }
            }
        }
    }
}

/// [`random_start_vector`] as a density matrix.
pub fn random_start(recipe: StartRecipe, dims: &[usize], rng: &mut impl Rng) -> Result<ComplexMatrix> {
    Ok(ComplexMatrix::outer(&random_start_vector(recipe, dims, rng)?))
}

/// Multi-start search settings shared by the purity and capacity searches.
///
/// Start `s` uses recipe `recipes[s % recipes.len()]` and the RNG stream
/// `(seed, s)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub starts: usize,
    pub seed: u64,
    pub recipes: Vec<StartRecipe>,
    #[serde(default)]
    pub ascent: AscentOptions,
}

impl SearchOptions {
    /// `starts` random pure starts.
    pub fn new(starts: usize, seed: u64) -> Self {
        SearchOptions {
            starts,
            seed,
            recipes: vec![StartRecipe::RandomPure],
            ascent: AscentOptions::default(),
        }
    }

    pub fn with_recipes(mut self, recipes: &[StartRecipe]) -> Self {
        self.recipes = recipes.to_vec();
        self
    }

    /// Random pure starts on a single system; the three entangled recipes in
    /// rotation on a bipartite one.
    pub fn for_factors(starts: usize, seed: u64, factors: &[usize]) -> Self {
        let opts = Self::new(starts, seed);
        if factors.len() == 2 {
            opts.with_recipes(&[
                StartRecipe::RandomBipartite,
                StartRecipe::MaxEntangledPhases,
                StartRecipe::ProductSum,
            ])
        } else {
            opts
        }
    }

    pub fn recipe_for(&self, start: usize) -> StartRecipe {
        if self.recipes.is_empty() {
            StartRecipe::RandomPure
        } else {
            self.recipes[start % self.recipes.len()]
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.starts == 0 {
            return Err(Error::ConfigInvalid("at least one start is required".into()));
        }
        Ok(())
    }
}

/// Runs `task` once per start in parallel. Results come back in start order,
/// so anything derived from them is independent of scheduling.
pub(crate) fn run_starts<T, F>(opts: &SearchOptions, dims: &[usize], task: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, StartRecipe, Vec<Complex64>) -> Result<T> + Sync,
{
    use rayon::prelude::*;
    opts.validate()?;
    (0..opts.starts)
        .into_par_iter()
        .map(|s| {
            let recipe = opts.recipe_for(s);
            let mut rng = crate::sample::stream_rng(opts.seed, s as u64);
            let v = random_start_vector(recipe, dims, &mut rng)?;
            task(s, recipe, v)
        })
        .collect()
}
