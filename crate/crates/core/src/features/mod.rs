//! Features describing a (candidate antecedent, message) pair.
//!
//! The layout is fixed by [`FEATURE_NAMES`] and identified by [`SCHEMA_ID`],
//! which serialized models record. Bucketed quantities are one-hot; the raw
//! distance and time are also included, scaled by their largest bucket
//! boundary. When the candidate is the message itself (the self-link
//! option) every pair feature is zero and only the self-link indicator and
//! the message's own features are set.

mod embeddings;

use std::collections::HashSet;

use crate::corpus::{Message, MessageKind};
use crate::error::{Error, Result};

pub use embeddings::{load_embeddings, read_embeddings, sentence_embedding, EmbeddingTable};

pub const SCHEMA_ID: &str = "pairwise-v1";

const DISTANCE_BINS: [usize; 8] = [1, 2, 3, 5, 10, 25, 50, 100];
const MINUTE_BINS: [i64; 5] = [1, 2, 5, 15, 60];
const LENGTH_BINS: [usize; 4] = [2, 5, 10, 20];
const OVERLAP_CAP: usize = 10;
const HISTORY_CAP: usize = 100;
const RECENT_WINDOW: usize = 10;

pub const FEATURE_NAMES: [&str; 41] = [
    "self_link",
    "distance_scaled",
    "distance_le_1",
    "distance_le_2",
    "distance_le_3",
    "distance_le_5",
    "distance_le_10",
    "distance_le_25",
    "distance_le_50",
    "distance_le_100",
    "distance_gt_100",
    "minutes_scaled",
    "minutes_le_1",
    "minutes_le_2",
    "minutes_le_5",
    "minutes_le_15",
    "minutes_le_60",
    "minutes_gt_60",
    "same_author",
    "candidate_is_system",
    "message_is_system",
    "candidate_is_action",
    "message_targets_candidate_author",
    "candidate_targets_message_author",
    "message_has_target",
    "candidate_has_target",
    "overlap_count_scaled",
    "overlap_jaccard",
    "message_tokens_le_2",
    "message_tokens_le_5",
    "message_tokens_le_10",
    "message_tokens_le_20",
    "message_tokens_gt_20",
    "candidate_tokens_le_2",
    "candidate_tokens_le_5",
    "candidate_tokens_le_10",
    "candidate_tokens_le_20",
    "candidate_tokens_gt_20",
    "author_history_scaled",
    "candidate_author_recent",
    "intervening_same_author",
];

pub const FEATURE_COUNT: usize = FEATURE_NAMES.len();

/// Position of a named feature.
pub fn feature_index(name: &str) -> Option<usize> {
    FEATURE_NAMES.iter().position(|&n| n == name)
}

/// Words that never count as shared content between two messages.
pub const STOPWORDS: &[&str] = &[
    "a", "an", "and", "are", "as", "at", "be", "but", "by", "can", "do", "for", "from", "have",
    "he", "how", "i", "if", "in", "is", "it", "its", "it's", "just", "me", "my", "no", "not", "of",
    "ok", "on", "or", "so", "that", "the", "there", "this", "to", "use", "was", "what", "with",
    "yes", "you", "your",
];

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector(Vec<f64>);

impl FeatureVector {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        feature_index(name).map(|i| self.0[i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<FeatureVector> for Vec<f64> {
    fn from(f: FeatureVector) -> Self {
        f.0
    }
}

/// Per-sample lookups shared by every pair in the sample.
#[derive(Debug, Clone)]
pub struct SampleFeatures<'a> {
    messages: &'a [Message],
    content: Vec<HashSet<&'a str>>,
    /// Earlier messages by the same author.
    history: Vec<usize>,
    /// Most recent earlier message by the same author.
    previous_by_author: Vec<Option<usize>>,
}

fn is_content(token: &str) -> bool {
    token.chars().any(char::is_alphanumeric) && !STOPWORDS.contains(&token)
}

fn bucket<T: PartialOrd + Copy>(value: T, bounds: &[T], out: &mut [f64]) {
    let slot = bounds.iter().position(|&b| value <= b).unwrap_or(bounds.len());
    out[slot] = 1.0;
}

impl<'a> SampleFeatures<'a> {
    pub fn new(messages: &'a [Message]) -> Self {
        let content = messages
            .iter()
            .map(|m| m.tokens.iter().map(String::as_str).filter(|t| is_content(t)).collect())
            .collect();
        let mut last_seen: std::collections::HashMap<&str, (usize, usize)> = Default::default();
        let mut history = Vec::with_capacity(messages.len());
        let mut previous_by_author = Vec::with_capacity(messages.len());
        for (i, m) in messages.iter().enumerate() {
            let entry = last_seen.get(m.speaker.as_str()).copied();
            history.push(entry.map_or(0, |(count, _)| count));
            previous_by_author.push(entry.map(|(_, idx)| idx));
            let count = entry.map_or(0, |(c, _)| c) + 1;
            last_seen.insert(m.speaker.as_str(), (count, i));
        }
        Self {
            messages,
            content,
            history,
            previous_by_author,
        }
    }

    pub fn messages(&self) -> &'a [Message] {
        self.messages
    }

    /// Features for linking `message` to `candidate` (`candidate == message`
    /// is the self-link option).
    pub fn pair(&self, candidate: usize, message: usize) -> Result<FeatureVector> {
        if candidate > message {
            return Err(Error::CandidateAfterMessage { candidate, message });
        }
        if message >= self.messages.len() {
            return Err(Error::SizeMismatch {
                expected: self.messages.len(),
                found: message + 1,
            });
        }
        let mut f = vec![0.0; FEATURE_COUNT];
        let msg = &self.messages[message];

        f[20] = f64::from(msg.kind == MessageKind::System);
        f[24] = f64::from(msg.target.is_some());
        bucket(msg.tokens.len(), &LENGTH_BINS, &mut f[28..33]);
        f[38] = self.history[message].min(HISTORY_CAP) as f64 / HISTORY_CAP as f64;

        if candidate == message {
            f[0] = 1.0;
            return Ok(FeatureVector(f));
        }

        let cand = &self.messages[candidate];
        let distance = message - candidate;
        f[1] = distance as f64 / 100.0;
        bucket(distance, &DISTANCE_BINS, &mut f[2..11]);
        let minutes = (msg.timestamp - cand.timestamp).max(0);
        f[11] = minutes as f64 / 60.0;
        bucket(minutes, &MINUTE_BINS, &mut f[12..18]);

        f[18] = f64::from(cand.speaker == msg.speaker);
        f[19] = f64::from(cand.kind == MessageKind::System);
        f[21] = f64::from(cand.kind == MessageKind::Action);
        let names = |target: &Option<String>, speaker: &str| {
            target.as_deref().is_some_and(|t| t.eq_ignore_ascii_case(speaker))
        };
        f[22] = f64::from(names(&msg.target, &cand.speaker));
        f[23] = f64::from(names(&cand.target, &msg.speaker));
        f[25] = f64::from(cand.target.is_some());

        let (a, b) = (&self.content[candidate], &self.content[message]);
        let shared = a.intersection(b).count();
        let union = a.len() + b.len() - shared;
        f[26] = shared.min(OVERLAP_CAP) as f64 / OVERLAP_CAP as f64;
        f[27] = if union == 0 { 0.0 } else { shared as f64 / union as f64 };
        bucket(cand.tokens.len(), &LENGTH_BINS, &mut f[33..38]);

        let recent = message.saturating_sub(RECENT_WINDOW)..message;
        f[39] = f64::from(self.messages[recent].iter().any(|m| m.speaker == cand.speaker));
        f[40] = f64::from(self.previous_by_author[message].is_some_and(|p| p > candidate));
        Ok(FeatureVector(f))
    }
}

/// One-off feature extraction for a single pair.
pub fn pair_features(messages: &[Message], candidate: usize, message: usize) -> Result<FeatureVector> {
    SampleFeatures::new(messages).pair(candidate, message)
}
