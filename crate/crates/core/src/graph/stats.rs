//! Corpus-level distributions: how far apart consecutive messages of a
//! conversation are, how long links are, how many conversations are in
//! progress at once, and how long conversations run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::Message;
use crate::error::{Error, Result};
use crate::graph::{ConversationPartition, ReplyGraph};

/// Integer-valued counts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Histogram(BTreeMap<i64, u64>);

impl Histogram {
    pub fn add(&mut self, value: i64) {
        *self.0.entry(value).or_default() += 1;
    }

    pub fn merge(&mut self, other: &Histogram) {
        for (&v, &c) in &other.0 {
            *self.0.entry(v).or_default() += c;
        }
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn count_at_most(&self, limit: i64) -> u64 {
        self.0.range(..=limit).map(|(_, c)| c).sum()
    }

    /// Share of observations `<= limit`, in percent. Zero when empty.
    pub fn percent_at_most(&self, limit: i64) -> f64 {
        match self.total() {
            0 => 0.0,
            t => 100.0 * self.count_at_most(limit) as f64 / t as f64,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&v, &c)| (v, c))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    /// Minutes between consecutive messages of a conversation.
    pub time_gaps: Histogram,
    /// Index distance between consecutive messages of a conversation.
    pub consecutive_distance: Histogram,
    /// Index distance of each non-self link into the annotated region.
    pub link_distance: Histogram,
    /// Conversations in progress at each annotated non-system message.
    pub concurrency: Histogram,
    /// Messages per conversation, skipping conversations made only of
    /// channel events.
    pub conversation_length: Histogram,
    pub samples: usize,
}

/// Headline numbers derived from [`CorpusStats`], in percent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsSummary {
    pub gaps_within_2_minutes: f64,
    pub gaps_within_60_minutes: f64,
    pub links_within_8_messages: f64,
    pub links_within_100_messages: f64,
    pub concurrency_at_most_3: f64,
    pub concurrency_at_most_10: f64,
    pub conversations_under_10_messages: f64,
}

impl CorpusStats {
    pub fn new() -> Self {
        Self::default()
    }

    /// Pools one sample into the statistics. `partition` must be the
    /// conversations of `graph` over all of `messages`.
    pub fn add_sample(
        &mut self,
        messages: &[Message],
        partition: &ConversationPartition,
        graph: &ReplyGraph,
        context_size: usize,
    ) -> Result<()> {
        let n = messages.len();
        if graph.n() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: graph.n(),
            });
        }
        if partition.num_items() != n || partition.items().last().is_some_and(|&i| i >= n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: partition.num_items(),
            });
        }
        self.samples += 1;

        for (p, c) in graph.edges_from(context_size).filter(|(p, c)| p != c) {
            self.link_distance.add((c - p) as i64);
        }

        // difference array of open conversations over message positions
        let mut open = vec![0i64; n + 1];
        for part in partition.parts() {
            if part.last().is_none_or(|&last| last < context_size) {
                continue;
            }
            for pair in part.windows(2) {
                let (a, b) = (&messages[pair[0]], &messages[pair[1]]);
                self.time_gaps.add(b.timestamp - a.timestamp);
                self.consecutive_distance.add((pair[1] - pair[0]) as i64);
            }
            let user: Vec<usize> = part
                .iter()
                .copied()
                .filter(|&i| !messages[i].is_system())
                .collect();
            if let (Some(&lo), Some(&hi)) = (user.first(), user.last()) {
                self.conversation_length.add(part.len() as i64);
                open[lo] += 1;
                open[hi + 1] -= 1;
            }
        }
        let mut running = 0;
        for (i, delta) in open.iter().enumerate().take(n) {
            running += delta;
            if i >= context_size && !messages[i].is_system() {
                self.concurrency.add(running);
            }
        }
        Ok(())
    }

    pub fn merge(&mut self, other: &CorpusStats) {
        self.time_gaps.merge(&other.time_gaps);
        self.consecutive_distance.merge(&other.consecutive_distance);
        self.link_distance.merge(&other.link_distance);
        self.concurrency.merge(&other.concurrency);
        self.conversation_length.merge(&other.conversation_length);
        self.samples += other.samples;
    }

    pub fn summary(&self) -> StatsSummary {
        let len = &self.conversation_length;
        StatsSummary {
            gaps_within_2_minutes: self.time_gaps.percent_at_most(2),
            gaps_within_60_minutes: self.time_gaps.percent_at_most(60),
            links_within_8_messages: self.link_distance.percent_at_most(8),
            links_within_100_messages: self.link_distance.percent_at_most(100),
            concurrency_at_most_3: self.concurrency.percent_at_most(3),
            concurrency_at_most_10: self.concurrency.percent_at_most(10),
            conversations_under_10_messages: len.percent_at_most(9),
        }
    }

    /// Time gaps on a piecewise scale: one bucket per minute below an hour,
    /// per hour below a day, per day up to 30 days, then one overflow bucket.
    pub fn gap_buckets(&self) -> Vec<(String, u64)> {
        let mut buckets: Vec<(String, u64)> = (0..60)
            .map(|m| (format!("{m}m"), 0))
            .chain((1..24).map(|h| (format!("{h}h"), 0)))
            .chain((1..=30).map(|d| (format!("{d}d"), 0)))
            .chain(std::iter::once((">30d".to_string(), 0)))
            .collect();
        for (gap, count) in self.time_gaps.iter() {
            let slot = match gap.max(0) {
                g if g < 60 => g as usize,
                g if g < 24 * 60 => 59 + (g / 60) as usize,
                g if g < 31 * 24 * 60 => 82 + (g / (24 * 60)) as usize,
                _ => buckets.len() - 1,
            };
            buckets[slot].1 += count;
        }
        buckets
    }
}
