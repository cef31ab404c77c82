//! A time-and-addressee heuristic in the style used to mine conversations
//! from large channel archives:
//!
//! 1. a message addressed to `v` joins the conversation of `v`'s latest
//!    message if that was within the response window;
//! 2. an unaddressed message joins its author's running conversation if the
//!    author spoke within the attachment window, else starts a new one;
//! 3. a reply by `v` to someone who addressed `v` within the response
//!    window (addressed back, or simply `v`'s next message) joins that
//!    conversation.
//!
//! Addressed messages that match no rule fall back to rule 2. Channel
//! events are singleton conversations.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::Message;
use crate::error::{Error, Result};
use crate::graph::ConversationPartition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct HeuristicParams {
    /// Minutes within which a response is attached to what it answers.
    pub response_window_minutes: i64,
    /// Messages within which an unaddressed message continues its author's
    /// conversation.
    pub undirected_window: usize,
    /// Rule 3.
    pub reply_back: bool,
    /// Rule 2; when off, unaddressed messages that are not replies start new
    /// conversations.
    pub join_running: bool,
}

impl Default for HeuristicParams {
    fn default() -> Self {
        Self {
            response_window_minutes: 3,
            undirected_window: 20,
            reply_back: true,
            join_running: true,
        }
    }
}

impl HeuristicParams {
    pub fn validate(&self) -> Result<()> {
        if self.response_window_minutes <= 0 || self.undirected_window == 0 {
            return Err(Error::Config("heuristic windows must be positive".into()));
        }
        Ok(())
    }
}

struct Addressed {
    conversation: usize,
    by: String,
    time: i64,
}

pub fn lowe_heuristic(messages: &[Message], params: &HeuristicParams) -> ConversationPartition {
    let mut conversation = vec![0usize; messages.len()];
    let mut next_id = 0;
    let mut latest: HashMap<String, usize> = HashMap::new();
    let mut pending: HashMap<String, Addressed> = HashMap::new();
    let rw = params.response_window_minutes;

    for (i, m) in messages.iter().enumerate() {
        if m.is_system() {
            conversation[i] = next_id;
            next_id += 1;
            continue;
        }
        let author = m.speaker.to_lowercase();
        let t = m.timestamp;
        let addressee = m.target.as_deref().map(str::to_lowercase);

        // rule 3: answering someone who addressed this author
        let mut assigned = None;
        if params.reply_back {
            if let Some(p) = pending.get(&author) {
                let answers = addressee.as_deref().is_none_or(|v| v == p.by);
                if answers && t - p.time <= rw {
                    assigned = Some(p.conversation);
                }
            }
            if assigned.is_some() {
                pending.remove(&author);
            }
        }
        // rule 1
        if assigned.is_none() {
            if let Some(&j) = addressee.as_ref().and_then(|v| latest.get(v)) {
                if t - messages[j].timestamp <= rw {
                    assigned = Some(conversation[j]);
                }
            }
        }
        // rule 2
        if assigned.is_none() && params.join_running {
            if let Some(&j) = latest.get(&author) {
                if i - j <= params.undirected_window {
                    assigned = Some(conversation[j]);
                }
            }
        }
        let c = assigned.unwrap_or_else(|| {
            next_id += 1;
            next_id - 1
        });
        conversation[i] = c;
        if let Some(v) = addressee {
            pending.insert(
                v,
                Addressed {
                    conversation: c,
                    by: author.clone(),
                    time: t,
                },
            );
        }
        latest.insert(author, i);
    }
    ConversationPartition::from_labels(&conversation)
}
