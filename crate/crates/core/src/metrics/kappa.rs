use crate::error::Result;
use crate::graph::ReplyGraph;

/// Cohen's kappa on binary link decisions. The decisions are every pair
/// (j, i) with `i - window <= j <= i`, for each scored message `i >= eval_from`.
pub fn cohen_kappa(a: &ReplyGraph, b: &ReplyGraph, window: usize, eval_from: usize) -> Result<f64> {
    a.check_same_size(b)?;
    let (mut total, mut agree, mut a_links, mut b_links) = (0usize, 0usize, 0usize, 0usize);
    for i in eval_from..a.n() {
        for j in i.saturating_sub(window)..=i {
            let (x, y) = (a.contains(j, i), b.contains(j, i));
            total += 1;
            agree += usize::from(x == y);
            a_links += usize::from(x);
            b_links += usize::from(y);
        }
    }
    Ok(kappa_from_counts(total, agree, a_links, b_links))
}

fn kappa_from_counts(total: usize, agree: usize, a_links: usize, b_links: usize) -> f64 {
    if total == 0 {
        return 1.0;
    }
    let t = total as f64;
    let observed = agree as f64 / t;
    let (pa, pb) = (a_links as f64 / t, b_links as f64 / t);
    let expected = pa * pb + (1.0 - pa) * (1.0 - pb);
    if expected >= 1.0 {
        return if observed >= 1.0 { 1.0 } else { 0.0 };
    }
    (observed - expected) / (1.0 - expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical() {
        let g = ReplyGraph::from_edges(4, [(0, 0), (0, 1), (1, 2), (3, 3)]).unwrap();
        assert_eq!(cohen_kappa(&g, &g, 100, 0).unwrap(), 1.0);
    }

    #[test]
    fn all_versus_none() {
        let n = 5;
        let all = ReplyGraph::from_edges(n, (0..n).flat_map(|i| (0..=i).map(move |j| (j, i)))).unwrap();
        let none = ReplyGraph::new(n);
        assert_eq!(cohen_kappa(&all, &none, 100, 0).unwrap(), 0.0);
    }

    #[test]
    fn hand_counted() {
        // universe for n=3, window 1: (0,0) (0,1) (1,1) (1,2) (2,2)
        let a = ReplyGraph::from_edges(3, [(0, 0), (0, 1), (1, 2)]).unwrap();
        let b = ReplyGraph::from_edges(3, [(0, 0), (1, 1), (1, 2)]).unwrap();
        // agree on 3 of 5; both link 3 of 5
        let po = 3.0 / 5.0;
        let pe = 0.6 * 0.6 + 0.4 * 0.4;
        let k = cohen_kappa(&a, &b, 1, 0).unwrap();
        assert!((k - (po - pe) / (1.0 - pe)).abs() < 1e-12);
        assert!(cohen_kappa(&a, &ReplyGraph::new(2), 1, 0).is_err());
    }
}
