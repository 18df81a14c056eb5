//! Asexual reproduction optimization.
//!
//! A single parent produces one bud per iteration. The bud may have part of
//! its asset string replaced, always has its weights varied (stochastically
//! or chaotically, chosen by the selection pressure), and is repaired onto
//! the feasible set. The bud replaces the parent only if it is strictly
//! fitter, where fitness is the negated objective.

mod mutation;
mod pressure;

use alloc::format;
use alloc::vec::Vec;

pub use mutation::{
    chaotic_gene, mutate_shares, mutate_weights_chaotic, mutate_weights_stochastic, pick_substring,
    replacement_probability, stochastic_gene, Substring,
};
pub use pressure::{selection_pressure, PressureForm, PHI};

use crate::orlib::AssetUniverse;
use crate::portfolio::{
    portfolio_moments, random_portfolio, Bounds, LambdaObjective, Moments, Portfolio,
};
use crate::repair::repair_in_place;
use crate::rng::RandomStream;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct AroParams {
    /// Number of buds produced (iterations).
    pub t_max: u64,
    pub seed: u64,
    /// Chance that a bud also gets a share (asset id) mutation.
    pub share_mutation_probability: f64,
    pub pressure: PressureForm,
}

impl Default for AroParams {
    fn default() -> Self {
        Self {
            t_max: 20_000,
            seed: 1,
            share_mutation_probability: 0.5,
            pressure: PressureForm::Monotone,
        }
    }
}

impl AroParams {
    pub fn validate(&self) -> Result<()> {
        if self.t_max < 1 {
            return Err(Error::Config("t_max must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.share_mutation_probability) {
            return Err(Error::Config(format!(
                "share mutation probability {} outside [0, 1]",
                self.share_mutation_probability
            )));
        }
        Ok(())
    }
}

/// Search state between iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct AroState {
    pub parent: Portfolio,
    pub parent_fitness: f64,
    /// Current iteration, 1-based.
    pub iteration: u64,
    /// Buds produced by the current parent, including the one being built.
    pub buds_from_parent: u64,
    pub best_seen: Portfolio,
    pub best_fitness: f64,
}

impl AroState {
    pub fn new(parent: Portfolio, parent_fitness: f64) -> Self {
        Self {
            best_seen: parent.clone(),
            best_fitness: parent_fitness,
            parent,
            parent_fitness,
            iteration: 1,
            buds_from_parent: 1,
        }
    }

    /// Parent/bud competition. Returns whether the bud replaced the parent.
    pub fn compete(&mut self, bud: Portfolio, bud_fitness: f64) -> bool {
        let replaced = bud_fitness > self.parent_fitness;
        if replaced {
            self.parent = bud;
            self.parent_fitness = bud_fitness;
            self.buds_from_parent = 1;
            if bud_fitness > self.best_fitness {
                self.best_seen.clone_from(&self.parent);
                self.best_fitness = bud_fitness;
            }
        } else {
            self.buds_from_parent += 1;
        }
        replaced
    }
}

/// Produces one feasible bud from the current parent.
pub fn reproduce_bud(
    state: &AroState,
    u: &AssetUniverse,
    bounds: &Bounds,
    params: &AroParams,
    rng: &mut RandomStream,
) -> Result<Portfolio> {
    let mut bud = state.parent.clone();
    if rng.unit() < params.share_mutation_probability {
        mutate_shares(&mut bud, u.n_assets(), rng);
    }

    let pressure = selection_pressure(state.iteration, state.buds_from_parent, params.pressure);
    if rng.unit() < pressure {
        mutate_weights_stochastic(&mut bud.weights, rng);
    } else {
        mutate_weights_chaotic(&mut bud.weights, pressure, rng);
    }

    // the lower pass divides by the weight total
    while bud.weights.iter().all(|&w| w == 0.0) {
        for w in &mut bud.weights {
            *w = rng.unit();
        }
    }
    repair_in_place(&mut bud, bounds)?;
    Ok(bud)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AroOutcome {
    pub best: Portfolio,
    /// Negated objective of `best`.
    pub best_fitness: f64,
    pub moments: Moments,
    /// Parent fitness after each iteration.
    pub trace: Vec<f64>,
    /// Number of bud replacements.
    pub replacements: u64,
}

impl AroOutcome {
    pub fn objective(&self) -> f64 {
        -self.best_fitness
    }

    pub fn trace_is_monotone(&self) -> bool {
        self.trace.windows(2).all(|w| w[1] >= w[0])
    }
}

pub(crate) fn check_config(
    u: &AssetUniverse,
    k: usize,
    bounds: &Bounds,
    params: &AroParams,
) -> Result<()> {
    params.validate()?;
    if bounds.n_assets() != u.n_assets() {
        return Err(Error::Config(format!(
            "bounds cover {} assets, universe has {}",
            bounds.n_assets(),
            u.n_assets()
        )));
    }
    bounds.check_cardinality(k)
}

/// Runs ARO for one `lambda` with the stream `params.seed`.
pub fn aro_run(
    u: &AssetUniverse,
    k: usize,
    bounds: &Bounds,
    lambda: LambdaObjective,
    params: &AroParams,
) -> Result<AroOutcome> {
    aro_run_with_stream(
        u,
        k,
        bounds,
        lambda,
        params,
        &mut RandomStream::new(params.seed),
    )
}

/// Runs ARO for one `lambda`, drawing from `rng` (ignores `params.seed`).
pub fn aro_run_with_stream(
    u: &AssetUniverse,
    k: usize,
    bounds: &Bounds,
    lambda: LambdaObjective,
    params: &AroParams,
    rng: &mut RandomStream,
) -> Result<AroOutcome> {
    check_config(u, k, bounds, params)?;
    let fitness = |p: &Portfolio| -lambda.score(portfolio_moments(p, u));

    let parent = random_portfolio(u, k, bounds, rng)?;
    let parent_fitness = fitness(&parent);
    let mut state = AroState::new(parent, parent_fitness);
    let mut trace = Vec::with_capacity(params.t_max as usize);
    let mut replacements = 0;

    for i in 1..=params.t_max {
        state.iteration = i;
        let bud = reproduce_bud(&state, u, bounds, params, rng)?;
        let bud_fitness = fitness(&bud);
        if state.compete(bud, bud_fitness) {
            replacements += 1;
        }
        trace.push(state.parent_fitness);
    }

    debug_assert_eq!(state.best_seen, state.parent);
    let moments = portfolio_moments(&state.parent, u);
    Ok(AroOutcome {
        best: state.parent,
        best_fitness: state.parent_fitness,
        moments,
        trace,
        replacements,
    })
}
