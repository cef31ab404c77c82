//! Compares predicted conversations against gold ones, one predicted
//! conversation at a time.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::ConversationPartition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditClass {
    Exact,
    /// Only missing messages.
    Subset,
    /// Only extra messages.
    Superset,
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConversationAudit {
    pub messages: Vec<usize>,
    /// The gold conversation with the largest overlap.
    pub gold: Vec<usize>,
    pub class: AuditClass,
    /// A strict subset made of the gold conversation's first messages.
    pub prefix: bool,
    /// A strict subset that is a contiguous run of the gold conversation
    /// but misses its first message(s).
    pub chunk_missing_start: bool,
    /// The earliest predicted message starts its gold conversation.
    pub starts_at_gold_start: bool,
    pub missing: usize,
    pub extra: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub conversations: Vec<ConversationAudit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub conversations: usize,
    pub exact: f64,
    pub subset: f64,
    pub superset: f64,
    pub other: f64,
    pub prefix: f64,
    pub exact_or_prefix: f64,
    pub chunk_missing_start: f64,
    pub wrong_start: f64,
    /// Mean share of the gold conversation missing, over subsets.
    pub mean_missing_fraction: f64,
    /// Mean extra messages relative to the gold size, over supersets.
    pub mean_extra_fraction: f64,
    pub min_missing: usize,
    pub max_missing: usize,
    pub min_extra: usize,
    pub max_extra: usize,
}

impl AuditReport {
    pub fn merge(&mut self, other: AuditReport) {
        self.conversations.extend(other.conversations);
    }

    pub fn count(&self, class: AuditClass) -> usize {
        self.conversations.iter().filter(|c| c.class == class).count()
    }

    /// Percentages over audited conversations.
    pub fn summary(&self) -> AuditSummary {
        let total = self.conversations.len();
        let pct = |k: usize| if total == 0 { 0.0 } else { 100.0 * k as f64 / total as f64 };
        let count_if = |f: &dyn Fn(&ConversationAudit) -> bool| self.conversations.iter().filter(|c| f(c)).count();
        let subsets: Vec<_> = self.conversations.iter().filter(|c| c.class == AuditClass::Subset).collect();
        let supersets: Vec<_> = self.conversations.iter().filter(|c| c.class == AuditClass::Superset).collect();
        let mean = |xs: &[f64]| if xs.is_empty() { 0.0 } else { xs.iter().sum::<f64>() / xs.len() as f64 };
        let missing: Vec<f64> = subsets.iter().map(|c| c.missing as f64 / c.gold.len() as f64).collect();
        let extra: Vec<f64> = supersets.iter().map(|c| c.extra as f64 / c.gold.len() as f64).collect();
        AuditSummary {
            conversations: total,
            exact: pct(self.count(AuditClass::Exact)),
            subset: pct(self.count(AuditClass::Subset)),
            superset: pct(self.count(AuditClass::Superset)),
            other: pct(self.count(AuditClass::Other)),
            prefix: pct(count_if(&|c| c.prefix)),
            exact_or_prefix: pct(count_if(&|c| c.prefix || c.class == AuditClass::Exact)),
            chunk_missing_start: pct(count_if(&|c| c.chunk_missing_start)),
            wrong_start: pct(count_if(&|c| !c.starts_at_gold_start)),
            mean_missing_fraction: 100.0 * mean(&missing),
            mean_extra_fraction: 100.0 * mean(&extra),
            min_missing: subsets.iter().map(|c| c.missing).min().unwrap_or(0),
            max_missing: subsets.iter().map(|c| c.missing).max().unwrap_or(0),
            min_extra: supersets.iter().map(|c| c.extra).min().unwrap_or(0),
            max_extra: supersets.iter().map(|c| c.extra).max().unwrap_or(0),
        }
    }
}

/// Classifies every predicted conversation with at least two messages.
pub fn audit_against_gold(
    pred: &ConversationPartition,
    gold: &ConversationPartition,
) -> Result<AuditReport> {
    pred.check_same_items(gold)?;
    let gold_of = gold.part_of();
    let mut conversations = Vec::new();

    for part in pred.parts().iter().filter(|p| p.len() > 1) {
        let mut overlap: HashMap<usize, usize> = HashMap::new();
        for i in part {
            *overlap.entry(gold_of[i]).or_default() += 1;
        }
        let (&best, &shared) = overlap
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .expect("non-empty conversation");
        let g = &gold.parts()[best];
        let missing = g.len() - shared;
        let extra = part.len() - shared;
        let class = match (missing, extra) {
            (0, 0) => AuditClass::Exact,
            (_, 0) => AuditClass::Subset,
            (0, _) => AuditClass::Superset,
            _ => AuditClass::Other,
        };

        let (mut prefix, mut chunk_missing_start) = (false, false);
        if class == AuditClass::Subset {
            let start = g.binary_search(&part[0]).expect("subset member");
            let contiguous = g[start..].starts_with(part);
            prefix = contiguous && start == 0;
            chunk_missing_start = contiguous && start > 0;
        }
        let first_gold = &gold.parts()[gold_of[&part[0]]];

        conversations.push(ConversationAudit {
            messages: part.clone(),
            gold: g.clone(),
            class,
            prefix,
            chunk_missing_start,
            starts_at_gold_start: first_gold[0] == part[0],
            missing,
            extra,
        });
    }
    Ok(AuditReport { conversations })
}
