//! Reference systems: link to the previous message, and a rule-based
//! heuristic driven by timing and addressee names.

mod assumptions;
mod heuristic;

pub use assumptions::{audit_assumptions, AssumptionReport, Ratio};
pub use heuristic::{lowe_heuristic, HeuristicParams};

use crate::corpus::Message;
use crate::graph::ReplyGraph;

/// Links each message to the most recent earlier non-system message, or to
/// itself when there is none.
pub fn previous_baseline(messages: &[Message]) -> ReplyGraph {
    let mut graph = ReplyGraph::new(messages.len());
    let mut last_user = None;
    for (i, m) in messages.iter().enumerate() {
        let parent = last_user.unwrap_or(i);
        graph.add_edge(parent, i).expect("parent precedes child");
        if !m.is_system() {
            last_user = Some(i);
        }
    }
    graph
}
