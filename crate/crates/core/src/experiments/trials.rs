use serde::{Deserialize, Serialize};

use super::{ObservableSpec, StatePrep};
use crate::quantum::{measure, observable_s, LABEL_MINUS};
use crate::{Error, Result, RngStream};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeCount {
    pub label: String,
    pub count: u64,
    pub frequency: f64,
}

/// Empirical outcome counts, in the observable's canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub observable_name: String,
    pub outcomes: Vec<OutcomeCount>,
    pub total: u64,
}

impl FrequencyTable {
    pub fn count(&self, label: &str) -> Option<u64> {
        self.outcomes.iter().find(|o| o.label == label).map(|o| o.count)
    }

    pub fn frequency(&self, label: &str) -> Option<f64> {
        self.outcomes
            .iter()
            .find(|o| o.label == label)
            .map(|o| o.frequency)
    }
}

/// `n` independent prepare-then-measure cycles driven by one stream seeded
/// with `seed`.
pub fn run_trials(prep: StatePrep, obs: ObservableSpec, n: u64, seed: u64) -> Result<FrequencyTable> {
    if n == 0 {
        return Err(Error::Domain("trial count must be at least 1".into()));
    }
    let state = prep.density()?;
    let observable = obs.observable()?;
    let mut counts = [0u64; 2];
    let mut rng = RngStream::from_seed(seed);
    for _ in 0..n {
        let (record, next) = measure(&state, &observable, rng);
        rng = next;
        let k = observable
            .index_of(&record.outcome_label)
            .expect("measurement returns one of the observable's labels");
        counts[k] += 1;
    }
    Ok(FrequencyTable {
        observable_name: observable.name().to_string(),
        outcomes: observable
            .labels()
            .iter()
            .zip(counts)
            .map(|(label, count)| OutcomeCount {
                label: label.clone(),
                count,
                frequency: count as f64 / n as f64,
            })
            .collect(),
        total: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub decision: Decision,
    pub trials: u64,
    pub minus_count: u64,
    /// Probability that the mixture produces `trials` consecutive "+1"
    /// outcomes, i.e. `2^-trials`.
    pub error_bound: f64,
}

/// Pure-versus-mixed test: measure Ŝ `n` times, re-preparing each time.
/// The phase-0 cat never yields "-1", so a single "-1" proves a mixture.
pub fn distinguish(prep: StatePrep, n: u64, seed: u64) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::Domain("trial count must be at least 1".into()));
    }
    let state = prep.density()?;
    let s = observable_s();
    let mut rng = RngStream::from_seed(seed);
    let mut minus_count = 0;
    for _ in 0..n {
        let (record, next) = measure(&state, &s, rng);
        rng = next;
        if record.outcome_label == LABEL_MINUS {
            minus_count += 1;
        }
    }
    Ok(Verdict {
        decision: if minus_count == 0 {
            Decision::Pure
        } else {
            Decision::Mixed
        },
        trials: n,
        minus_count,
        error_bound: 0.5f64.powf(n as f64),
    })
}
