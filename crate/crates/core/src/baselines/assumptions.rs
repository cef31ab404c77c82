//! How often the heuristic's premises hold on annotated data.

use std::collections::HashMap;

use serde::Serialize;

use crate::corpus::AnnotatedSample;
use crate::graph::conversations_of;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub hits: usize,
    pub total: usize,
}

impl Ratio {
    fn record(&mut self, hit: bool) {
        self.total += 1;
        self.hits += usize::from(hit);
    }

    /// Percentage, or `None` when nothing was counted.
    pub fn percent(&self) -> Option<f64> {
        (self.total > 0).then(|| 100.0 * self.hits as f64 / self.total as f64)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AssumptionReport {
    /// Users whose addressed messages all sit in one conversation: how many
    /// have their unaddressed messages in that same conversation.
    pub undirected_follow_directed: Ratio,
    /// Conversation starts that receive a response: how many receive more
    /// than one.
    pub starts_with_multiple_responses: Ratio,
    /// Conversation starts that address someone.
    pub directed_starts: Ratio,
    /// Conversation starts that receive a response: how many get the first
    /// one within the response window.
    pub first_response_in_window: Ratio,
}

/// Audits annotated messages (from each sample's context size on). A
/// conversation start is a non-system message whose only link is to itself.
pub fn audit_assumptions(samples: &[AnnotatedSample], response_window_minutes: i64) -> AssumptionReport {
    let mut report = AssumptionReport::default();
    for sample in samples {
        let msgs = &sample.messages;
        let from = sample.context_size;
        let part_of = conversations_of(&sample.graph).part_of();
        let parents = sample.graph.parents();
        let children = sample.graph.children();

        let mut by_user: HashMap<String, (Vec<usize>, Vec<usize>)> = HashMap::new();
        for i in from..msgs.len() {
            let m = &msgs[i];
            if m.is_system() {
                continue;
            }
            let entry = by_user.entry(m.speaker.to_lowercase()).or_default();
            let conv = part_of[&i];
            if m.target.is_some() {
                entry.0.push(conv);
            } else {
                entry.1.push(conv);
            }

            if parents[i] == [i] {
                report.directed_starts.record(m.target.is_some());
                let responses: Vec<usize> = children[i].iter().copied().filter(|&c| c != i).collect();
                if let Some(&first) = responses.iter().min() {
                    report.starts_with_multiple_responses.record(responses.len() > 1);
                    let gap = msgs[first].timestamp - m.timestamp;
                    report.first_response_in_window.record(gap <= response_window_minutes);
                }
            }
        }
        let mut users: Vec<_> = by_user.into_values().collect();
        users.sort();
        for (directed, undirected) in users {
            let Some(&conv) = directed.first() else { continue };
            if undirected.is_empty() || directed.iter().any(|&c| c != conv) {
                continue;
            }
            report
                .undirected_follow_directed
                .record(undirected.iter().all(|&c| c == conv));
        }
    }
    report
}
