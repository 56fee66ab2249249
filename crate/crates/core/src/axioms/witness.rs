//! Search for pairs where the phased product and the Lüders product differ.

use serde::Serialize;

use super::generate::{commuting_pair, random_effect};
use super::trial_rng;
use crate::document::MatrixDocument;
use crate::effects::{luders_product, phased_product, PhaseParameter};
use crate::linalg::operator_norm;
use crate::par::{map_indexed, Execution};

/// A gap above this in operator norm counts as a witness.
pub const WITNESS_GAP: f64 = 0.01;

const SEARCH_SALT: u64 = 101;

#[derive(Clone, Debug, PartialEq)]
pub struct NonuniquenessSearch {
    /// Trials per `(dim, t)` combination.
    pub trials: usize,
    pub dims: Vec<usize>,
    pub t_values: Vec<f64>,
    pub seed: u64,
    /// Draw only commuting pairs; no gap is expected then.
    pub commuting_only: bool,
    pub execution: Execution,
}

impl NonuniquenessSearch {
    pub fn new(trials: usize, dims: &[usize], t_values: &[f64], seed: u64) -> Self {
        Self {
            trials,
            dims: dims.to_vec(),
            t_values: t_values.to_vec(),
            seed,
            commuting_only: false,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonuniquenessWitness {
    pub trial: usize,
    pub dim: usize,
    pub t: f64,
    pub a: MatrixDocument,
    pub b: MatrixDocument,
    pub phased: MatrixDocument,
    pub luders: MatrixDocument,
    /// `‖phased − luders‖_op`.
    pub gap: f64,
    /// Eigenvalues of `A`, ascending.
    pub a_eigenvalues: Vec<f64>,
    /// For `dim = 2` with both eigenvalues positive:
    /// `θ = t (ln λ₁ − ln λ₂)` in the eigenbasis of `A`.
    pub theta: Option<f64>,
}

/// Returns the pair with the largest gap, or `None` for an empty search.
pub fn search_nonuniqueness(search: &NonuniquenessSearch) -> Option<NonuniquenessWitness> {
    let per_combo = search.trials;
    let combos: Vec<(usize, f64)> = search
        .dims
        .iter()
        .flat_map(|&d| search.t_values.iter().map(move |&t| (d, t)))
        .collect();
    let total = per_combo * combos.len();

    let candidates = map_indexed(total, search.execution, |i| {
        let (n, t) = combos[i / per_combo];
        let mut rng = trial_rng(search.seed, SEARCH_SALT, i);
        let (a, b) = if search.commuting_only {
            commuting_pair(&mut rng, n)
        } else {
            (random_effect(&mut rng, n), random_effect(&mut rng, n))
        };
        let phase = PhaseParameter::new(t).expect("finite t");
        let phased = phased_product(&a, &b, phase).expect("product of effects");
        let luders = luders_product(&a, &b).expect("product of effects");
        let gap = operator_norm(&(phased.matrix().as_matrix() - luders.matrix().as_matrix()));
        (gap, i, n, t, a, b, phased, luders)
    });

    let mut best = None;
    let mut best_gap = f64::NEG_INFINITY;
    for cand in candidates {
        if cand.0 > best_gap {
            best_gap = cand.0;
            best = Some(cand);
        }
    }
    best.map(|(gap, trial, dim, t, a, b, phased, luders)| {
        let ev = a.spectrum().eigenvalues().to_vec();
        let theta = (dim == 2 && ev[0] > 0.0 && ev[1] > 0.0).then(|| t * (ev[0].ln() - ev[1].ln()));
        NonuniquenessWitness {
            trial,
            dim,
            t,
            a: MatrixDocument::from_matrix(a.matrix()),
            b: MatrixDocument::from_matrix(b.matrix()),
            phased: MatrixDocument::from_matrix(phased.matrix()),
            luders: MatrixDocument::from_matrix(luders.matrix()),
            gap,
            a_eigenvalues: ev,
            theta,
        }
    })
}
