//! Agreement between two conversation partitions of the same messages.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{ConversationPartition, UnionFind};
use crate::metrics::assignment::max_weight_assignment;
use crate::metrics::Prf;

/// Sparse overlap counts: (gold part, predicted part) -> shared messages.
fn contingency(
    gold: &ConversationPartition,
    pred: &ConversationPartition,
) -> Result<BTreeMap<(usize, usize), usize>> {
    gold.check_same_items(pred)?;
    let pred_of = pred.part_of();
    let mut table = BTreeMap::new();
    for (g, part) in gold.parts().iter().enumerate() {
        for i in part {
            *table.entry((g, pred_of[i])).or_insert(0) += 1;
        }
    }
    Ok(table)
}

/// Variation of information scaled by its upper bound `ln n`, as
/// `100 * (1 - VI / ln n)`. Higher is better.
pub fn scaled_vi(gold: &ConversationPartition, pred: &ConversationPartition) -> Result<f64> {
    let table = contingency(gold, pred)?;
    let n = gold.num_items();
    if n < 2 {
        return Err(Error::Metric(format!("scaled VI needs at least 2 messages, got {n}")));
    }
    let nf = n as f64;
    let gold_sizes: Vec<f64> = gold.parts().iter().map(|p| p.len() as f64).collect();
    let pred_sizes: Vec<f64> = pred.parts().iter().map(|p| p.len() as f64).collect();
    // H(G|P) + H(P|G) = -sum r_ij [ln(r_ij / q_j) + ln(r_ij / p_i)]
    let vi: f64 = table
        .iter()
        .map(|(&(g, p), &c)| {
            let c = c as f64;
            -(c / nf) * ((c / pred_sizes[p]).ln() + (c / gold_sizes[g]).ln())
        })
        .sum();
    Ok(100.0 * (1.0 - vi / nf.ln()))
}

/// Share of messages (in percent) covered by an optimal one-to-one pairing
/// of gold and predicted conversations.
pub fn one_to_one(gold: &ConversationPartition, pred: &ConversationPartition) -> Result<f64> {
    let table = contingency(gold, pred)?;
    let n = gold.num_items();
    if n == 0 {
        return Ok(100.0);
    }
    Ok(100.0 * optimal_overlap(&table, gold.num_parts(), pred.num_parts()) as f64 / n as f64)
}

/// Solves the assignment separately on each connected block of the overlap
/// graph; conversations that share no messages never compete.
fn optimal_overlap(table: &BTreeMap<(usize, usize), usize>, gold_parts: usize, pred_parts: usize) -> usize {
    let mut uf = UnionFind::new(gold_parts + pred_parts);
    for &(g, p) in table.keys() {
        uf.union(g, gold_parts + p);
    }
    let mut blocks: HashMap<usize, Vec<((usize, usize), usize)>> = HashMap::new();
    for (&(g, p), &c) in table {
        blocks.entry(uf.find(g)).or_default().push(((g, p), c));
    }

    let mut total = 0;
    for cells in blocks.values() {
        let mut rows: Vec<usize> = cells.iter().map(|c| c.0 .0).collect();
        let mut cols: Vec<usize> = cells.iter().map(|c| c.0 .1).collect();
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        if rows.len() == 1 || cols.len() == 1 {
            total += cells.iter().map(|c| c.1).max().unwrap_or(0);
            continue;
        }
        let mut weights = vec![vec![0i64; cols.len()]; rows.len()];
        for &((g, p), c) in cells {
            let r = rows.binary_search(&g).unwrap();
            let k = cols.binary_search(&p).unwrap();
            weights[r][k] = c as i64;
        }
        let assignment = max_weight_assignment(&weights);
        total += assignment
            .iter()
            .enumerate()
            .filter_map(|(r, k)| k.map(|k| weights[r][k] as usize))
            .sum::<usize>();
    }
    total
}

/// Precision/recall/F of conversations reproduced exactly. Single-message
/// conversations are ignored on both sides.
pub fn exact_match_f1(gold: &ConversationPartition, pred: &ConversationPartition) -> Result<Prf> {
    gold.check_same_items(pred)?;
    let (matched, predicted, gold_count) = exact_match_counts(gold, pred);
    Ok(Prf::from_counts(matched, predicted, gold_count))
}

/// (matches, predicted multi-message conversations, gold multi-message
/// conversations).
pub fn exact_match_counts(gold: &ConversationPartition, pred: &ConversationPartition) -> (usize, usize, usize) {
    let gold_multi: HashSet<&Vec<usize>> = gold.parts().iter().filter(|p| p.len() > 1).collect();
    let pred_multi: Vec<&Vec<usize>> = pred.parts().iter().filter(|p| p.len() > 1).collect();
    let matched = pred_multi.iter().filter(|p| gold_multi.contains(*p)).count();
    (matched, pred_multi.len(), gold_multi.len())
}

/// Size-weighted mean, over gold conversations, of the best F-score against
/// any predicted conversation. A fraction in [0, 1].
pub fn shen_f(gold: &ConversationPartition, pred: &ConversationPartition) -> Result<f64> {
    let table = contingency(gold, pred)?;
    let n = gold.num_items();
    if n == 0 {
        return Ok(1.0);
    }
    let mut best = vec![0.0f64; gold.num_parts()];
    for (&(g, p), &c) in &table {
        let c = c as f64;
        let recall = c / gold.parts()[g].len() as f64;
        let precision = c / pred.parts()[p].len() as f64;
        let f = 2.0 * precision * recall / (precision + recall);
        best[g] = best[g].max(f);
    }
    Ok(gold
        .parts()
        .iter()
        .zip(&best)
        .map(|(part, f)| part.len() as f64 / n as f64 * f)
        .sum())
}

/// Agreement (in percent) on whether messages one or two positions apart
/// belong to the same conversation.
pub fn loc_rand(gold: &ConversationPartition, pred: &ConversationPartition) -> Result<f64> {
    gold.check_same_items(pred)?;
    let items = gold.items();
    if items.len() < 2 {
        return Err(Error::Metric(format!("Loc needs at least 2 messages, got {}", items.len())));
    }
    let (gold_of, pred_of) = (gold.part_of(), pred.part_of());
    let present: HashSet<usize> = items.iter().copied().collect();
    let (mut agree, mut total) = (0usize, 0usize);
    for &a in &items {
        for b in [a + 1, a + 2].into_iter().filter(|b| present.contains(b)) {
            total += 1;
            agree += usize::from((gold_of[&a] == gold_of[&b]) == (pred_of[&a] == pred_of[&b]));
        }
    }
    if total == 0 {
        return Err(Error::Metric("no message pairs within distance 2".into()));
    }
    Ok(100.0 * agree as f64 / total as f64)
}
