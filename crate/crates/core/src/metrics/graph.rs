use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::ReplyGraph;

/// Precision, recall and F-score as fractions.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Prf {
    /// From raw counts; any ratio with a zero denominator is 0.
    pub fn from_counts(matched: usize, predicted: usize, gold: usize) -> Self {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(matched, predicted);
        let recall = ratio(matched, gold);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Self {
            precision,
            recall,
            f1,
        }
    }

    /// Same scores scaled to percent.
    pub fn percent(&self) -> [f64; 3] {
        [100.0 * self.precision, 100.0 * self.recall, 100.0 * self.f1]
    }
}

/// Edge counts behind a graph score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EdgeCounts {
    pub matched: usize,
    pub predicted: usize,
    pub gold: usize,
}

impl EdgeCounts {
    pub fn add(&mut self, other: EdgeCounts) {
        self.matched += other.matched;
        self.predicted += other.predicted;
        self.gold += other.gold;
    }

    pub fn prf(&self) -> Prf {
        Prf::from_counts(self.matched, self.predicted, self.gold)
    }
}

/// Counts links whose child is at or after `eval_from`.
pub fn edge_counts(
    gold: &ReplyGraph,
    pred: &ReplyGraph,
    eval_from: usize,
    include_self_links: bool,
) -> Result<EdgeCounts> {
    gold.check_same_size(pred)?;
    let keep = |&(p, c): &(usize, usize)| c >= eval_from && (include_self_links || p != c);
    let gold_edges: Vec<_> = gold.edges().filter(keep).collect();
    let pred_edges: Vec<_> = pred.edges().filter(keep).collect();
    let matched = pred_edges.iter().filter(|&&(p, c)| gold.contains(p, c)).count();
    Ok(EdgeCounts {
        matched,
        predicted: pred_edges.len(),
        gold: gold_edges.len(),
    })
}

/// Link precision/recall/F over the scored region, self-links included.
pub fn graph_prf(gold: &ReplyGraph, pred: &ReplyGraph, eval_from: usize) -> Result<Prf> {
    Ok(edge_counts(gold, pred, eval_from, true)?.prf())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> ReplyGraph {
        ReplyGraph::from_edges(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn counts() {
        let gold = g(3, &[(0, 0), (0, 1), (1, 2)]);
        assert_eq!(graph_prf(&gold, &gold, 0).unwrap(), Prf::from_counts(3, 3, 3));
        let pred = g(3, &[(0, 0), (0, 1), (0, 2)]);
        let prf = graph_prf(&gold, &pred, 0).unwrap();
        for v in [prf.precision, prf.recall, prf.f1] {
            assert!((v - 2.0 / 3.0).abs() < 1e-12);
        }
        // scoring from message 1 drops the (0, 0) link on both sides
        let prf = graph_prf(&gold, &pred, 1).unwrap();
        assert_eq!((prf.precision, prf.recall), (0.5, 0.5));
        let c = edge_counts(&gold, &pred, 0, false).unwrap();
        assert_eq!((c.matched, c.predicted, c.gold), (1, 2, 2));
        assert!(graph_prf(&gold, &g(4, &[]), 0).is_err());
    }

    #[test]
    fn empty_denominators() {
        assert_eq!(Prf::from_counts(0, 0, 0), Prf::default());
    }
}
