use crate::corpus::Message;
use crate::error::{Error, Result};
use crate::features::{sentence_embedding, EmbeddingTable, SampleFeatures};
use crate::graph::ReplyGraph;
use crate::models::{candidate_set, DisentanglementModel, ModelKind};

/// Sentence embedding of every message.
pub fn message_embeddings(messages: &[Message], table: &EmbeddingTable) -> Vec<Vec<f64>> {
    messages.iter().map(|m| sentence_embedding(m, table)).collect()
}

/// Links every message to its best-scoring candidate.
pub fn disentangle(
    model: &DisentanglementModel,
    messages: &[Message],
    table: &EmbeddingTable,
    window: usize,
) -> Result<ReplyGraph> {
    disentangle_from(model, messages, table, window, 0)
}

/// Like [`disentangle`], but only messages at or after `start` get a link;
/// earlier messages serve as context.
///
/// Exact ties go to the most recent earlier candidate, and to the self-link
/// only when it is strictly best.
pub fn disentangle_from(
    model: &DisentanglementModel,
    messages: &[Message],
    table: &EmbeddingTable,
    window: usize,
    start: usize,
) -> Result<ReplyGraph> {
    if model.kind() == ModelKind::Feedforward && table.dim() != model.embedding_dim {
        return Err(Error::Shape(format!(
            "model expects {}-d word vectors, table has {}",
            model.embedding_dim,
            table.dim()
        )));
    }
    let features = SampleFeatures::new(messages);
    let embeddings = match model.kind() {
        ModelKind::Linear => Vec::new(),
        ModelKind::Feedforward => message_embeddings(messages, table),
    };
    let mut graph = ReplyGraph::new(messages.len());
    for i in start..messages.len() {
        let inputs = model.candidate_inputs(&features, &embeddings, i, window)?;
        let scores = model.scores(inputs.view());
        let first = *candidate_set(i, window).start();
        let own = scores.len() - 1;

        let mut best = own;
        for pos in (0..own).rev() {
            if scores[pos] > scores[best] || (best == own && scores[pos] == scores[best]) {
                best = pos;
            }
        }
        graph.add_edge(first + best, i)?;
    }
    Ok(graph)
}
