//! Acceptance checks. Prints one line per criterion and fails if any check
//! fails.
//!
//! Criteria 1-6 need the annotated Ubuntu channel release and pretrained
//! word vectors:
//!
//! * `DISENTANGLE_DATA`: directory with `train/`, `dev/` and `test/`
//!   subdirectories of paired `.ascii.txt` / `.annotation.txt` files;
//! * `DISENTANGLE_VECTORS`: word-vector text file (one word and its values
//!   per line).
//!
//! Without them those criteria report BLOCKED. They train full-size models,
//! so run them with `cargo test --release -p disentangle --test acceptance`.
//! Criteria 7-9 are self-contained.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::BufRead;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::OnceLock;

use disentangle::baselines::{audit_assumptions, lowe_heuristic, previous_baseline, HeuristicParams};
use disentangle::corpus::load_split;
use disentangle::corpus::synthetic::{synthetic_sample, SyntheticConfig};
use disentangle::features::{load_embeddings, EmbeddingTable, FEATURE_COUNT, STOPWORDS};
use disentangle::graph::CorpusStats;
use disentangle::metrics::{
    evaluate, exact_match_f1, loc_rand, one_to_one, scaled_vi, shen_f, EvalOptions, MetricReport, Prediction,
    SampleEval,
};
use disentangle::models::{
    disentangle_from, ensemble_intersect, ensemble_union, ensemble_vote, loss_and_gradient, train_model,
    FeedforwardScorer, ModelKind, Nonlinearity, TrainingConfig,
};
use disentangle::{conversations_of, AnnotatedSample, ConversationPartition, DisentanglementModel, ReplyGraph};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Outcome {
    Pass(String),
    Fail(String),
    Blocked(String),
}

use Outcome::{Blocked, Fail, Pass};

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol + 1e-9
}

// ---------------------------------------------------------------- data

struct Corpus {
    train: Vec<AnnotatedSample>,
    dev: Vec<AnnotatedSample>,
    test: Vec<AnnotatedSample>,
}

fn corpus() -> Result<&'static Corpus, String> {
    static CORPUS: OnceLock<Result<Corpus, String>> = OnceLock::new();
    CORPUS
        .get_or_init(|| {
            let root = std::env::var_os("DISENTANGLE_DATA")
                .map(PathBuf::from)
                .ok_or("corpus not found: DISENTANGLE_DATA is not set")?;
            let split = |name: &str| {
                let dir = root.join(name);
                load_split(&dir)
                    .map_err(|e| e.to_string())
                    .and_then(|s| if s.is_empty() { Err(format!("no samples in {}", dir.display())) } else { Ok(s) })
            };
            Ok(Corpus {
                train: split("train")?,
                dev: split("dev")?,
                test: split("test")?,
            })
        })
        .as_ref()
        .map_err(Clone::clone)
}

/// Word vectors restricted to the corpus vocabulary.
fn vectors(corpus: &Corpus) -> Result<&'static EmbeddingTable, String> {
    static VECTORS: OnceLock<Result<EmbeddingTable, String>> = OnceLock::new();
    VECTORS
        .get_or_init(|| {
            let path = std::env::var_os("DISENTANGLE_VECTORS")
                .map(PathBuf::from)
                .ok_or("word vectors not found: DISENTANGLE_VECTORS is not set")?;
            let vocab: HashSet<&str> = [&corpus.train, &corpus.dev, &corpus.test]
                .into_iter()
                .flatten()
                .flat_map(|s| &s.messages)
                .flat_map(|m| m.tokens.iter().map(String::as_str))
                .collect();
            read_filtered(&path, &vocab)
        })
        .as_ref()
        .map_err(Clone::clone)
}

fn read_filtered(path: &Path, vocab: &HashSet<&str>) -> Result<EmbeddingTable, String> {
    let file = std::fs::File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut kept = String::new();
    for line in std::io::BufReader::new(file).lines() {
        let line = line.map_err(|e| e.to_string())?;
        if line.split(' ').next().is_some_and(|w| vocab.contains(w)) {
            kept.push_str(&line);
            kept.push('\n');
        }
    }
    load_embeddings(&kept).map_err(|e| format!("{}: {e}", path.display()))
}

fn predict(
    model: &DisentanglementModel,
    samples: &[AnnotatedSample],
    table: &EmbeddingTable,
    window: usize,
) -> Vec<ReplyGraph> {
    samples
        .iter()
        .map(|s| disentangle_from(model, &s.messages, table, window, s.context_size).expect("inference"))
        .collect()
}

fn score(samples: &[AnnotatedSample], predictions: Vec<Prediction>) -> MetricReport {
    let evals: Vec<SampleEval<'_>> = samples
        .iter()
        .zip(predictions)
        .map(|(s, prediction)| SampleEval {
            gold: &s.graph,
            prediction,
            context: s.context_size,
            messages: Some(&s.messages),
        })
        .collect();
    evaluate(&evals, EvalOptions::default()).expect("evaluation")
}

fn score_graphs(samples: &[AnnotatedSample], graphs: &[ReplyGraph]) -> MetricReport {
    score(samples, graphs.iter().cloned().map(Prediction::Graph).collect())
}

/// Feedforward models for seeds 0..10 and their test predictions.
fn seed_runs(corpus: &Corpus, table: &EmbeddingTable) -> &'static [Vec<ReplyGraph>] {
    static RUNS: OnceLock<Vec<Vec<ReplyGraph>>> = OnceLock::new();
    RUNS.get_or_init(|| {
        (0..10)
            .map(|seed| {
                let cfg = TrainingConfig { seed, ..TrainingConfig::default() };
                let model = train_model(ModelKind::Feedforward, &corpus.train, table, &cfg).expect("training");
                predict(&model.model, &corpus.test, table, cfg.window)
            })
            .collect()
    })
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, var.sqrt())
}

// ------------------------------------------------------------ criteria 1-6

fn previous_reproduction() -> Outcome {
    let c = match corpus() {
        Ok(c) => c,
        Err(e) => return Blocked(e),
    };
    let graphs: Vec<ReplyGraph> = c.test.iter().map(|s| previous_baseline(&s.messages)).collect();
    let r = score_graphs(&c.test, &graphs);
    let [p, rec, f] = r.graph.unwrap().percent();
    let ok = within(p, 35.7, 0.1)
        && within(rec, 34.4, 0.1)
        && within(f, 35.0, 0.1)
        && within(r.vi, 66.1, 0.1)
        && within(r.one_to_one, 27.6, 0.1)
        && within(100.0 * r.exact_match.f1, 0.0, 0.1);
    check(
        ok,
        format!(
            "P/R/F {p:.1}/{rec:.1}/{f:.1}, VI {:.1}, 1-1 {:.1}, exact F {:.1} (want 35.7/34.4/35.0, 66.1, 27.6, 0.0)",
            r.vi,
            r.one_to_one,
            100.0 * r.exact_match.f1
        ),
    )
}

fn linear_model() -> Outcome {
    let c = match corpus() {
        Ok(c) => c,
        Err(e) => return Blocked(e),
    };
    let table = EmbeddingTable::empty(0);
    // learning rate picked on dev
    let mut best: Option<(f64, DisentanglementModel, usize)> = None;
    for lr in [0.01, 0.001] {
        let cfg = TrainingConfig { learning_rate: lr, ..TrainingConfig::default() };
        let model = train_model(ModelKind::Linear, &c.train, &table, &cfg).expect("training").model;
        let dev = score_graphs(&c.dev, &predict(&model, &c.dev, &table, cfg.window));
        let f = dev.graph.unwrap().f1;
        if best.as_ref().is_none_or(|b| f > b.0) {
            best = Some((f, model, cfg.window));
        }
    }
    let (_, model, window) = best.unwrap();
    let f = 100.0 * score_graphs(&c.test, &predict(&model, &c.test, &table, window)).graph.unwrap().f1;
    check(within(f, 63.5, 2.0), format!("test graph F {f:.1} (want 63.5 ± 2.0)"))
}

fn feedforward_model() -> Outcome {
    let c = match corpus() {
        Ok(c) => c,
        Err(e) => return Blocked(e),
    };
    let table = match vectors(c) {
        Ok(t) => t,
        Err(e) => return Blocked(e),
    };
    let runs = seed_runs(c, table);
    let reports: Vec<MetricReport> = runs.iter().map(|g| score_graphs(&c.test, g)).collect();
    let f: Vec<f64> = reports.iter().map(|r| 100.0 * r.graph.unwrap().f1).collect();
    let (f_mean, f_std) = mean_std(&f);
    let vi = mean_std(&reports.iter().map(|r| r.vi).collect::<Vec<_>>()).0;
    let oto = mean_std(&reports.iter().map(|r| r.one_to_one).collect::<Vec<_>>()).0;
    let ex = mean_std(&reports.iter().map(|r| 100.0 * r.exact_match.f1).collect::<Vec<_>>()).0;
    let ok = within(f_mean, 72.3, 1.5) && f_std <= 1.0 && vi >= 89.0 && oto >= 73.0 && within(ex, 36.2, 3.0);
    check(
        ok,
        format!(
            "graph F {f_mean:.1} (std {f_std:.2}), VI {vi:.1}, 1-1 {oto:.1}, exact F {ex:.1} \
             (want 72.3 ± 1.5 with std ≤ 1.0, VI ≥ 89, 1-1 ≥ 73, exact F 36.2 ± 3)"
        ),
    )
}

fn ensembles() -> Outcome {
    let c = match corpus() {
        Ok(c) => c,
        Err(e) => return Blocked(e),
    };
    let table = match vectors(c) {
        Ok(t) => t,
        Err(e) => return Blocked(e),
    };
    let runs = seed_runs(c, table);
    let singles: Vec<MetricReport> = runs.iter().map(|g| score_graphs(&c.test, g)).collect();
    let single_r = mean_std(&singles.iter().map(|r| r.graph.unwrap().recall).collect::<Vec<_>>()).0;
    let single_f = mean_std(&singles.iter().map(|r| r.graph.unwrap().f1).collect::<Vec<_>>()).0;

    let per_sample = |k: usize| -> Vec<ReplyGraph> { runs.iter().map(|run| run[k].clone()).collect() };
    let union: Vec<ReplyGraph> = (0..c.test.len()).map(|k| ensemble_union(&per_sample(k)).unwrap()).collect();
    let vote: Vec<ReplyGraph> = (0..c.test.len()).map(|k| ensemble_vote(&per_sample(k)).unwrap()).collect();
    let intersect: Vec<Prediction> = (0..c.test.len())
        .map(|k| {
            let parts: Vec<_> = per_sample(k).iter().map(conversations_of).collect();
            Prediction::Partition(ensemble_intersect(&parts).unwrap())
        })
        .collect();
    let union_r = score_graphs(&c.test, &union).graph.unwrap().recall;
    let vote_f = score_graphs(&c.test, &vote).graph.unwrap().f1;
    let inter_p = 100.0 * score(&c.test, intersect).exact_match.precision;
    let ok = union_r > single_r && within(100.0 * union_r, 79.7, 2.0) && vote_f >= single_f
        && within(100.0 * vote_f, 73.5, 1.5) && inter_p >= 60.0;
    check(
        ok,
        format!(
            "union R {:.1} vs single {:.1} (want 79.7 ± 2), vote F {:.1} vs single {:.1} (want 73.5 ± 1.5), \
             intersect conversation P {inter_p:.1} (want ≥ 60)",
            100.0 * union_r,
            100.0 * single_r,
            100.0 * vote_f,
            100.0 * single_f
        ),
    )
}

fn all_samples(c: &Corpus) -> Vec<AnnotatedSample> {
    c.train.iter().chain(&c.dev).chain(&c.test).cloned().collect()
}

fn corpus_statistics() -> Outcome {
    let c = match corpus() {
        Ok(c) => c,
        Err(e) => return Blocked(e),
    };
    let mut stats = CorpusStats::new();
    for s in all_samples(c) {
        stats
            .add_sample(&s.messages, &conversations_of(&s.graph), &s.graph, s.context_size)
            .expect("stats");
    }
    let sum = stats.summary();
    let got = [
        sum.gaps_within_2_minutes,
        sum.links_within_8_messages,
        sum.links_within_100_messages,
        sum.concurrency_at_most_3,
        sum.concurrency_at_most_10,
        sum.conversations_under_10_messages,
    ];
    let want = [94.9, 88.3, 99.4, 46.4, 97.3, 83.4];
    let ok = got.iter().zip(&want).all(|(&g, &w)| within(g, w, 0.05));
    check(ok, format!("{got:.1?} (want {want:?})"))
}

fn heuristic_audit() -> Outcome {
    let c = match corpus() {
        Ok(c) => c,
        Err(e) => return Blocked(e),
    };
    let params = HeuristicParams::default();
    let parts: Vec<Prediction> = c
        .test
        .iter()
        .map(|s| Prediction::Partition(lowe_heuristic(&s.messages, &params)))
        .collect();
    let precision = 100.0 * score(&c.test, parts).exact_match.precision;
    let a = audit_assumptions(&all_samples(c), params.response_window_minutes);
    let got = [
        a.undirected_follow_directed.percent().unwrap_or(f64::NAN),
        a.starts_with_multiple_responses.percent().unwrap_or(f64::NAN),
        a.directed_starts.percent().unwrap_or(f64::NAN),
        a.first_response_in_window.percent().unwrap_or(f64::NAN),
    ];
    let want = [52.2, 37.7, 6.8, 94.8];
    let ok = within(precision, 10.8, 4.0) && got.iter().zip(&want).all(|(&g, &w)| within(g, w, 0.1));
    check(
        ok,
        format!("heuristic conversation P {precision:.1} (want 10.8 ± 4), assumptions {got:.1?} (want {want:?})"),
    )
}

// --------------------------------------------------------- criterion 7

fn random_partition(rng: &mut ChaCha8Rng, n: usize, max_labels: usize) -> (Vec<usize>, ConversationPartition) {
    let k = rng.gen_range(1..=max_labels);
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    let p = ConversationPartition::from_labels(&labels);
    (labels, p)
}

fn entropy_oracle_vi(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len() as f64;
    let h = |counts: &HashMap<_, usize>| -> f64 {
        counts
            .values()
            .map(|&c| {
                let p = c as f64 / n;
                -p * p.ln()
            })
            .sum()
    };
    let mut ca = HashMap::new();
    let mut cb = HashMap::new();
    let mut joint = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *ca.entry((x, 0)).or_insert(0) += 1;
        *cb.entry((y, 0)).or_insert(0) += 1;
        *joint.entry((x, y)).or_insert(0) += 1;
    }
    let vi = 2.0 * h(&joint) - h(&ca) - h(&cb);
    100.0 * (1.0 - vi / n.ln())
}

/// Best total overlap over every injective pairing of the smaller label set
/// into the larger one.
fn brute_force_one_to_one(a: &[usize], b: &[usize]) -> f64 {
    let la: Vec<usize> = a.iter().copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let lb: Vec<usize> = b.iter().copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let mut overlap = vec![vec![0usize; lb.len()]; la.len()];
    for (&x, &y) in a.iter().zip(b) {
        overlap[la.binary_search(&x).unwrap()][lb.binary_search(&y).unwrap()] += 1;
    }
    let (rows, cols, m) = if la.len() <= lb.len() {
        (la.len(), lb.len(), overlap)
    } else {
        let t = (0..lb.len()).map(|j| (0..la.len()).map(|i| overlap[i][j]).collect()).collect();
        (lb.len(), la.len(), t)
    };
    fn best(row: usize, used: &mut Vec<bool>, m: &[Vec<usize>], rows: usize, cols: usize) -> usize {
        if row == rows {
            return 0;
        }
        let mut top = 0;
        for c in 0..cols {
            if !used[c] {
                used[c] = true;
                top = top.max(m[row][c] + best(row + 1, used, m, rows, cols));
                used[c] = false;
            }
        }
        top
    }
    100.0 * best(0, &mut vec![false; cols], &m, rows, cols) as f64 / a.len() as f64
}

fn loc_oracle(a: &[usize], b: &[usize]) -> f64 {
    let (mut agree, mut total) = (0, 0);
    for i in 0..a.len() {
        for j in i + 1..a.len().min(i + 3) {
            total += 1;
            if (a[i] == a[j]) == (b[i] == b[j]) {
                agree += 1;
            }
        }
    }
    100.0 * agree as f64 / total as f64
}

fn shen_oracle(gold: &ConversationPartition, pred: &ConversationPartition, n: usize) -> f64 {
    let mut total = 0.0;
    for g in gold.parts() {
        let mut top = 0.0f64;
        for p in pred.parts() {
            let shared = g.iter().filter(|i| p.contains(i)).count();
            if shared == 0 {
                continue;
            }
            let recall = shared as f64 / g.len() as f64;
            let precision = shared as f64 / p.len() as f64;
            top = top.max(2.0 * precision * recall / (precision + recall));
        }
        total += g.len() as f64 / n as f64 * top;
    }
    total
}

fn exact_oracle(gold: &ConversationPartition, pred: &ConversationPartition) -> (f64, f64, f64) {
    let g: Vec<&Vec<usize>> = gold.parts().iter().filter(|p| p.len() >= 2).collect();
    let p: Vec<&Vec<usize>> = pred.parts().iter().filter(|p| p.len() >= 2).collect();
    let matched = p.iter().filter(|x| g.contains(x)).count() as f64;
    let precision = if p.is_empty() { 0.0 } else { matched / p.len() as f64 };
    let recall = if g.is_empty() { 0.0 } else { matched / g.len() as f64 };
    let f = if precision + recall == 0.0 { 0.0 } else { 2.0 * precision * recall / (precision + recall) };
    (precision, recall, f)
}

fn metric_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = BTreeMap::new();
    let mut brute_forced = 0;
    for trial in 0..1000 {
        let n = rng.gen_range(2..=30);
        let max_labels = if trial % 2 == 0 { 6 } else { n };
        let (la, a) = random_partition(&mut rng, n, max_labels);
        let (lb, b) = random_partition(&mut rng, n, max_labels);

        let vi = scaled_vi(&a, &b).unwrap();
        if (vi - entropy_oracle_vi(&la, &lb)).abs() > 1e-9 {
            *failures.entry("vi").or_insert(0) += 1;
        }
        if a.num_parts() <= 6 && b.num_parts() <= 6 {
            brute_forced += 1;
            if one_to_one(&a, &b).unwrap() != brute_force_one_to_one(&la, &lb) {
                *failures.entry("1-1").or_insert(0) += 1;
            }
        }
        if loc_rand(&a, &b).unwrap() != loc_oracle(&la, &lb) {
            *failures.entry("loc").or_insert(0) += 1;
        }
        if shen_f(&a, &b).unwrap() != shen_oracle(&a, &b, n) {
            *failures.entry("shen").or_insert(0) += 1;
        }
        let e = exact_match_f1(&a, &b).unwrap();
        if (e.precision, e.recall, e.f1) != exact_oracle(&a, &b) {
            *failures.entry("exact").or_insert(0) += 1;
        }
    }
    check(
        failures.is_empty() && brute_forced >= 400,
        format!("1000 random pairs ({brute_forced} brute-forced for 1-1), mismatches {failures:?}"),
    )
}

// --------------------------------------------------------- criterion 8

fn gradient_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let emb = rng.gen_range(0..=3);
        let input = FEATURE_COUNT + 2 * emb;
        let hidden = [rng.gen_range(1..=6), rng.gen_range(1..=6)];
        let nl = if trial % 2 == 0 { Nonlinearity::Relu } else { Nonlinearity::Tanh };
        let mut model =
            DisentanglementModel::feedforward(FeedforwardScorer::zeros(input, hidden, nl), emb, 0).unwrap();
        for p in model.params_mut() {
            *p = rng.gen_range(-1.0..1.0);
        }
        let rows = rng.gen_range(2..=8);
        let inputs = Array2::from_shape_fn((rows, input), |_| rng.gen_range(-1.0..1.0));
        let mut gold: Vec<usize> = (0..rows).filter(|_| rng.gen_bool(0.3)).collect();
        if gold.is_empty() {
            gold.push(rng.gen_range(0..rows));
        }

        let (_, analytic) = loss_and_gradient(&model, inputs.view(), &gold);
        let eps = 1e-6;
        let mut numeric = vec![0.0; analytic.len()];
        for k in 0..analytic.len() {
            let orig = model.params()[k];
            model.params_mut()[k] = orig + eps;
            let up = loss_and_gradient(&model, inputs.view(), &gold).0;
            model.params_mut()[k] = orig - eps;
            let down = loss_and_gradient(&model, inputs.view(), &gold).0;
            model.params_mut()[k] = orig;
            numeric[k] = (up - down) / (2.0 * eps);
        }
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let diff: Vec<f64> = analytic.iter().zip(&numeric).map(|(a, b)| a - b).collect();
        // the floor keeps networks with (numerically) zero gradient from
        // dividing rounding noise by rounding noise
        let rel = norm(&diff) / (norm(&analytic) + norm(&numeric)).max(1e-8);
        worst = worst.max(rel);
    }
    check(worst <= 1e-4, format!("worst relative error {worst:.2e} over 100 networks (want ≤ 1e-4)"))
}

// --------------------------------------------------------- criterion 9

fn synthetic_learnability() -> Outcome {
    let sample = |k: u64| {
        let cfg = SyntheticConfig { messages: 150, seed: k, ..Default::default() };
        synthetic_sample(&format!("syn{k}"), &cfg).unwrap()
    };
    let train: Vec<AnnotatedSample> = (0..4).map(sample).collect();
    let held_out: Vec<AnnotatedSample> = (100..102).map(sample).collect();

    // small random vectors for the filler words
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut table = EmbeddingTable::empty(4);
    for w in STOPWORDS {
        table.insert(*w, (0..4).map(|_| rng.gen_range(-0.5..0.5)).collect()).unwrap();
    }

    let cfg = TrainingConfig {
        hidden: [32, 32],
        epochs: 5,
        window: 30,
        ..TrainingConfig::default()
    };
    let model = train_model(ModelKind::Feedforward, &train, &table, &cfg).expect("training").model;
    let (mut correct, mut total) = (0, 0);
    for (s, pred) in held_out.iter().zip(predict(&model, &held_out, &table, cfg.window)) {
        let gold = s.graph.parents();
        for (p, c) in pred.edges() {
            total += 1;
            correct += usize::from(gold[c].contains(&p));
        }
    }
    let acc = 100.0 * correct as f64 / total as f64;
    check(acc >= 95.0, format!("held-out antecedent accuracy {acc:.1}% over {total} messages (want ≥ 95%)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("previous-message baseline reproduction", previous_reproduction),
        ("linear model graph F", linear_model),
        ("feedforward model over 10 seeds", feedforward_model),
        ("union/vote/intersect ensembles", ensembles),
        ("corpus statistics", corpus_statistics),
        ("heuristic audit", heuristic_audit),
        ("metric oracle equivalence", metric_oracles),
        ("feedforward gradient check", gradient_check),
        ("synthetic learnability", synthetic_learnability),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (tag, detail) = match run() {
            Pass(d) => ("PASS", d),
            Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Blocked(d) => ("BLOCKED", d),
        };
        println!("acceptance {} {tag:<7} {name}: {detail}", i + 1);
    }
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
