use serde::{Deserialize, Serialize};

use super::{density_of, DensityMatrix, Observable, EIGENSTATE_TOL};
use crate::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeProbability {
    pub label: String,
    pub probability: f64,
}

/// Outcome probabilities in the observable's canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Distribution {
    outcomes: Vec<OutcomeProbability>,
}

impl Distribution {
    pub fn outcomes(&self) -> &[OutcomeProbability] {
        &self.outcomes
    }

    pub fn probability(&self, label: &str) -> Option<f64> {
        self.outcomes
            .iter()
            .find(|o| o.label == label)
            .map(|o| o.probability)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.probability).collect()
    }

    /// Half the L1 distance between two distributions over the same labels.
    pub fn total_variation(&self, other: &Distribution) -> f64 {
        0.5 * self
            .outcomes
            .iter()
            .map(|o| (o.probability - other.probability(&o.label).unwrap_or(0.0)).abs())
            .sum::<f64>()
    }
}

/// One projective measurement: what was seen, with what probability, and
/// the states on either side of the collapse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub observable_name: String,
    pub outcome_label: String,
    pub probability_of_outcome: f64,
    pub pre_state: DensityMatrix,
    pub post_state: DensityMatrix,
    pub rng_draw: f64,
}

fn outcome_weights(state: &DensityMatrix, obs: &Observable) -> [f64; 2] {
    let raw = obs
        .eigenstates()
        .map(|e| state.expectation_of_projector(&e).clamp(0.0, 1.0));
    let total = raw[0] + raw[1];
    if total > 0.0 {
        raw.map(|p| p / total)
    } else {
        [0.5, 0.5]
    }
}

/// `p_k = Tr(ρ P_k)` for each eigenprojector of `obs`.
pub fn born_probabilities(state: &DensityMatrix, obs: &Observable) -> Distribution {
    let weights = outcome_weights(state, obs);
    Distribution {
        outcomes: obs
            .labels()
            .iter()
            .zip(weights)
            .map(|(label, probability)| OutcomeProbability {
                label: label.clone(),
                probability,
            })
            .collect(),
    }
}

/// Projective measurement with collapse. Always consumes one draw `u`; the
/// first outcome wins when `u < p_first`, unless the state is already an
/// eigenstate (probability within [`EIGENSTATE_TOL`] of 1), in which case
/// that eigenstate's outcome is returned.
pub fn measure(
    state: &DensityMatrix,
    obs: &Observable,
    rng: RngStream,
) -> (MeasurementRecord, RngStream) {
    let [p0, p1] = outcome_weights(state, obs);
    let (u, rng) = rng.next();
    let k = if p0 >= 1.0 - EIGENSTATE_TOL {
        0
    } else if p1 >= 1.0 - EIGENSTATE_TOL {
        1
    } else if u < p0 {
        0
    } else {
        1
    };
    let record = MeasurementRecord {
        observable_name: obs.name().to_string(),
        outcome_label: obs.label(k).to_string(),
        probability_of_outcome: [p0, p1][k],
        pre_state: *state,
        post_state: density_of(obs.eigenstate(k)),
        rng_draw: u,
    };
    (record, rng)
}
