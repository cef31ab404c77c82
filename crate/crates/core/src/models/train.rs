use log::{info, warn};
use ndarray::{Array1, ArrayView2};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::AnnotatedSample;
use crate::error::{Error, Result};
use crate::features::{EmbeddingTable, SampleFeatures, FEATURE_COUNT};
use crate::models::network::{FeedforwardScorer, LinearScorer};
use crate::models::{
    candidate_set, message_embeddings, DisentanglementModel, ModelKind, Scorer, TrainingConfig,
};

#[derive(Debug, Clone)]
pub struct TrainingOutcome {
    pub model: DisentanglementModel,
    /// Mean per-message loss of each epoch.
    pub epoch_losses: Vec<f64>,
    /// Gold links longer than the candidate window.
    pub dropped_links: usize,
    /// Messages left with no gold antecedent inside the window.
    pub skipped_messages: usize,
}

/// Softmax cross-entropy over one message's candidates, where the target
/// probability is the total mass on the gold rows. Returns the loss and its
/// gradient with respect to every model parameter.
pub fn loss_and_gradient(
    model: &DisentanglementModel,
    inputs: ArrayView2<f64>,
    gold: &[usize],
) -> (f64, Vec<f64>) {
    let mut grad = vec![0.0; model.params().len()];
    let loss = accumulate(model, inputs, gold, &mut grad);
    (loss, grad)
}

fn accumulate(
    model: &DisentanglementModel,
    inputs: ArrayView2<f64>,
    gold: &[usize],
    grad: &mut [f64],
) -> f64 {
    let (scores, acts) = match &model.scorer {
        Scorer::Linear(s) => (s.scores(inputs), None),
        Scorer::Feedforward(s) => {
            let (scores, acts) = s.forward(inputs);
            (scores, Some(acts))
        }
    };

    let max = scores.fold(f64::NEG_INFINITY, |m, &s| m.max(s));
    let exp: Array1<f64> = scores.mapv(|s| (s - max).exp());
    let total: f64 = exp.sum();
    let gold_total: f64 = gold.iter().map(|&g| exp[g]).sum();
    let loss = total.ln() - gold_total.ln();

    let mut d_scores = &exp / total;
    for &g in gold {
        d_scores[g] -= exp[g] / gold_total;
    }

    match (&model.scorer, acts) {
        (Scorer::Linear(s), _) => s.backward(inputs, d_scores.view(), grad),
        (Scorer::Feedforward(s), Some(acts)) => s.backward(inputs, &acts, d_scores.view(), grad),
        (Scorer::Feedforward(_), None) => unreachable!(),
    }
    loss
}

struct Instance {
    sample: usize,
    message: usize,
    /// Positions of gold antecedents within the candidate set.
    gold: Vec<usize>,
}

/// Trains a ranker with momentum SGD, one message per update, visiting
/// messages in a freshly shuffled order each epoch.
pub fn train_model(
    kind: ModelKind,
    samples: &[AnnotatedSample],
    table: &EmbeddingTable,
    cfg: &TrainingConfig,
) -> Result<TrainingOutcome> {
    cfg.validate()?;
    if samples.is_empty() {
        return Err(Error::EmptyTrainingData);
    }

    let mut instances = Vec::new();
    let (mut dropped_links, mut skipped_messages) = (0, 0);
    for (s, sample) in samples.iter().enumerate() {
        let parents = sample.graph.parents();
        for i in sample.context_size..sample.len() {
            let first = *candidate_set(i, cfg.window).start();
            let gold: Vec<usize> = parents[i].iter().filter(|&&p| p >= first).map(|&p| p - first).collect();
            dropped_links += parents[i].len() - gold.len();
            if gold.is_empty() {
                skipped_messages += 1;
                continue;
            }
            instances.push(Instance {
                sample: s,
                message: i,
                gold,
            });
        }
    }
    if dropped_links > 0 {
        warn!(
            "dropped {dropped_links} gold links longer than {} messages ({skipped_messages} messages left without an antecedent)",
            cfg.window
        );
    }
    if instances.is_empty() {
        return Err(Error::EmptyTrainingData);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut model = match kind {
        ModelKind::Linear => DisentanglementModel::linear(LinearScorer::zeros(FEATURE_COUNT), cfg.seed)?,
        ModelKind::Feedforward => {
            let input = FEATURE_COUNT + 2 * table.dim();
            let scorer = FeedforwardScorer::random(input, cfg.hidden, cfg.nonlinearity, &mut rng);
            DisentanglementModel::feedforward(scorer, table.dim(), cfg.seed)?
        }
    };

    let features: Vec<SampleFeatures<'_>> = samples.iter().map(|s| SampleFeatures::new(&s.messages)).collect();
    let embeddings: Vec<Vec<Vec<f64>>> = match kind {
        ModelKind::Linear => vec![Vec::new(); samples.len()],
        ModelKind::Feedforward => samples.iter().map(|s| message_embeddings(&s.messages, table)).collect(),
    };

    let mut order: Vec<usize> = (0..instances.len()).collect();
    let mut velocity = vec![0.0; model.params().len()];
    let mut grad = vec![0.0; model.params().len()];
    let mut epoch_losses = Vec::with_capacity(cfg.epochs);

    for epoch in 0..cfg.epochs {
        order.shuffle(&mut rng);
        let mut total = 0.0;
        for &k in &order {
            let inst = &instances[k];
            let inputs = model.candidate_inputs(&features[inst.sample], &embeddings[inst.sample], inst.message, cfg.window)?;
            grad.iter_mut().for_each(|g| *g = 0.0);
            let loss = accumulate(&model, inputs.view(), &inst.gold, &mut grad);
            if !loss.is_finite() {
                return Err(Error::NonFiniteLoss { epoch });
            }
            total += loss;
            for ((p, v), g) in model.params_mut().iter_mut().zip(&mut velocity).zip(&grad) {
                *v = cfg.momentum * *v - cfg.learning_rate * g;
                *p += *v;
            }
        }
        let mean = total / instances.len() as f64;
        if !mean.is_finite() || model.params().iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFiniteLoss { epoch });
        }
        info!("{} epoch {epoch}: mean loss {mean:.5}", kind.id());
        epoch_losses.push(mean);
    }

    Ok(TrainingOutcome {
        model,
        epoch_losses,
        dropped_links,
        skipped_messages,
    })
}
