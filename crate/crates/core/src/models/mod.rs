//! Antecedent ranking.
//!
//! For every message the model scores each candidate antecedent within a
//! window of preceding messages, plus the message itself (starting a new
//! conversation), and links the message to the best-scoring candidate.

mod ensemble;
mod inference;
mod io;
mod network;
mod train;

use ndarray::{Array1, Array2, ArrayView2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureVector, SampleFeatures, FEATURE_COUNT, SCHEMA_ID};

pub use ensemble::{ensemble_intersect, ensemble_union, ensemble_vote};
pub use inference::{disentangle, disentangle_from, message_embeddings};
pub use io::{read_model, write_model};
pub use network::{FeedforwardScorer, LinearScorer, Nonlinearity};
pub use train::{loss_and_gradient, train_model, TrainingOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Linear,
    Feedforward,
}

impl ModelKind {
    pub fn id(self) -> &'static str {
        match self {
            ModelKind::Linear => "linear",
            ModelKind::Feedforward => "feedforward",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        match id {
            "linear" => Some(ModelKind::Linear),
            "feedforward" | "ff" => Some(ModelKind::Feedforward),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainingConfig {
    /// Number of preceding messages that may be antecedents.
    pub window: usize,
    pub learning_rate: f64,
    pub momentum: f64,
    pub epochs: usize,
    pub seed: u64,
    pub hidden: [usize; 2],
    pub nonlinearity: Nonlinearity,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        Self {
            window: 100,
            learning_rate: 0.01,
            momentum: 0.9,
            epochs: 20,
            seed: 0,
            hidden: [256, 256],
            nonlinearity: Nonlinearity::Relu,
        }
    }
}

impl TrainingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.window == 0 {
            return Err(Error::Config("window must be at least 1".into()));
        }
        if !self.learning_rate.is_finite() || self.learning_rate <= 0.0 {
            return Err(Error::Config("learning rate must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return Err(Error::Config("momentum must be in [0, 1)".into()));
        }
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be positive".into()));
        }
        if self.hidden.contains(&0) {
            return Err(Error::Config("hidden layers must be non-empty".into()));
        }
        Ok(())
    }
}

/// Candidate antecedents of message `i`: up to `window` preceding messages
/// and `i` itself, ascending.
pub fn candidate_set(i: usize, window: usize) -> std::ops::RangeInclusive<usize> {
    i.saturating_sub(window)..=i
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scorer {
    Linear(LinearScorer),
    Feedforward(FeedforwardScorer),
}

/// A trained (or hand-built) antecedent scorer with the metadata needed to
/// rebuild its inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct DisentanglementModel {
    pub scorer: Scorer,
    pub schema: String,
    pub feature_count: usize,
    /// Word-vector dimension; zero for linear models.
    pub embedding_dim: usize,
    pub seed: u64,
}

impl DisentanglementModel {
    pub fn linear(scorer: LinearScorer, seed: u64) -> Result<Self> {
        if scorer.input_dim() != FEATURE_COUNT {
            return Err(Error::Shape(format!(
                "linear weights have length {}, expected {FEATURE_COUNT}",
                scorer.input_dim()
            )));
        }
        Ok(Self {
            scorer: Scorer::Linear(scorer),
            schema: SCHEMA_ID.to_string(),
            feature_count: FEATURE_COUNT,
            embedding_dim: 0,
            seed,
        })
    }

    pub fn feedforward(scorer: FeedforwardScorer, embedding_dim: usize, seed: u64) -> Result<Self> {
        if scorer.input_dim() != FEATURE_COUNT + 2 * embedding_dim {
            return Err(Error::Shape(format!(
                "network input {} does not match {FEATURE_COUNT} features and two {embedding_dim}-d embeddings",
                scorer.input_dim()
            )));
        }
        Ok(Self {
            scorer: Scorer::Feedforward(scorer),
            schema: SCHEMA_ID.to_string(),
            feature_count: FEATURE_COUNT,
            embedding_dim,
            seed,
        })
    }

    pub fn kind(&self) -> ModelKind {
        match self.scorer {
            Scorer::Linear(_) => ModelKind::Linear,
            Scorer::Feedforward(_) => ModelKind::Feedforward,
        }
    }

    pub fn input_dim(&self) -> usize {
        match self.kind() {
            ModelKind::Linear => self.feature_count,
            ModelKind::Feedforward => self.feature_count + 2 * self.embedding_dim,
        }
    }

    pub fn params(&self) -> &[f64] {
        match &self.scorer {
            Scorer::Linear(s) => &s.params,
            Scorer::Feedforward(s) => &s.params,
        }
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        match &mut self.scorer {
            Scorer::Linear(s) => &mut s.params,
            Scorer::Feedforward(s) => &mut s.params,
        }
    }

    /// Scores each row of an input matrix.
    pub fn scores(&self, inputs: ArrayView2<f64>) -> Array1<f64> {
        match &self.scorer {
            Scorer::Linear(s) => s.scores(inputs),
            Scorer::Feedforward(s) => s.scores(inputs),
        }
    }

    fn check_input(&self, features: &[f64], cand: &[f64], msg: &[f64]) -> Result<()> {
        if features.len() != self.feature_count {
            return Err(Error::Shape(format!(
                "expected {} features, got {}",
                self.feature_count,
                features.len()
            )));
        }
        if self.kind() == ModelKind::Feedforward
            && (cand.len() != self.embedding_dim || msg.len() != self.embedding_dim)
        {
            return Err(Error::Shape(format!(
                "expected {}-d embeddings, got {} and {}",
                self.embedding_dim,
                cand.len(),
                msg.len()
            )));
        }
        Ok(())
    }

    /// Writes one input row: the features, then (for the feedforward model)
    /// the candidate and message embeddings.
    pub(crate) fn fill_input(&self, row: &mut [f64], features: &[f64], cand: &[f64], msg: &[f64]) {
        let f = self.feature_count;
        row[..f].copy_from_slice(features);
        if self.kind() == ModelKind::Feedforward {
            let d = self.embedding_dim;
            row[f..f + d].copy_from_slice(cand);
            row[f + d..f + 2 * d].copy_from_slice(msg);
        }
    }

    /// Inputs for every candidate of message `i`, in [`candidate_set`] order.
    pub(crate) fn candidate_inputs(
        &self,
        features: &SampleFeatures<'_>,
        embeddings: &[Vec<f64>],
        i: usize,
        window: usize,
    ) -> Result<Array2<f64>> {
        let cands = candidate_set(i, window);
        let mut inputs = Array2::zeros((cands.clone().count(), self.input_dim()));
        for (row, c) in inputs.rows_mut().into_iter().zip(cands) {
            let fv = features.pair(c, i)?;
            let row = row.into_slice().expect("standard layout");
            let (ce, me) = match self.kind() {
                ModelKind::Linear => (&[][..], &[][..]),
                ModelKind::Feedforward => (embeddings[c].as_slice(), embeddings[i].as_slice()),
            };
            self.fill_input(row, fv.values(), ce, me);
        }
        Ok(inputs)
    }
}

/// Score of one (candidate, message) pair. Linear models ignore the
/// embeddings.
pub fn model_score(
    model: &DisentanglementModel,
    features: &FeatureVector,
    cand_embedding: &[f64],
    msg_embedding: &[f64],
) -> Result<f64> {
    model.check_input(features.values(), cand_embedding, msg_embedding)?;
    let mut row = Array2::zeros((1, model.input_dim()));
    model.fill_input(
        row.as_slice_mut().expect("standard layout"),
        features.values(),
        cand_embedding,
        msg_embedding,
    );
    Ok(model.scores(row.view())[0])
}
