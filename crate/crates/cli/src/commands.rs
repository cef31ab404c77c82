use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use disentangle::baselines::{audit_assumptions, lowe_heuristic, previous_baseline, Ratio};
use disentangle::corpus::{infer_context, load_sample, load_split, write_annotations, SampleFiles};
use disentangle::features::EmbeddingTable;
use disentangle::graph::{audit_against_gold, AuditReport, CorpusStats};
use disentangle::metrics::{evaluate as score, EvalOptions, Prediction, SampleEval};
use disentangle::models::{
    disentangle_from, ensemble_intersect, ensemble_union, ensemble_vote, read_model, train_model, write_model,
    ModelKind, TrainingConfig,
};
use disentangle::{conversations_of, AnnotatedSample, DisentanglementModel, ReplyGraph};
use log::{info, warn};
use rayon::prelude::*;
use serde_json::json;

use crate::config::load_config;
use crate::files::{
    annotation_path, emit, find_annotation, list_annotations, list_logs, load_graph, load_log, load_table, read_text,
    write_atomic,
};
use crate::{BaselineMethod, ContextArg, EnsembleMode, KindArg};

pub fn parse(log: &Path, output: Option<&Path>) -> Result<()> {
    let logs = list_logs(log)?;
    let rendered = logs
        .par_iter()
        .map(|(name, path)| {
            let mut out = String::new();
            for m in load_log(path)? {
                out.push_str(&serde_json::to_string(&m)?);
                out.push('\n');
            }
            Ok((name.clone(), out))
        })
        .collect::<Result<Vec<_>>>()?;
    if log.is_dir() {
        let dir = output.context("a directory of logs needs --output DIR")?;
        for (name, text) in rendered {
            write_atomic(&dir.join(format!("{name}.messages.jsonl")), text.as_bytes())?;
        }
        Ok(())
    } else {
        emit(output, &rendered[0].1)
    }
}

pub struct TrainArgs {
    pub train: PathBuf,
    pub dev: Option<PathBuf>,
    pub kind: KindArg,
    pub embeddings: Option<PathBuf>,
    pub config: Option<PathBuf>,
    pub seeds: Vec<u64>,
    pub epochs: Option<usize>,
    pub output: PathBuf,
}

pub fn train(a: TrainArgs) -> Result<()> {
    let mut cfg = load_config(a.config.as_deref())?.training;
    if let Some(epochs) = a.epochs {
        cfg.epochs = epochs;
    }
    cfg.validate()?;
    let seeds = if a.seeds.is_empty() { vec![cfg.seed] } else { a.seeds.clone() };
    let kind = match a.kind {
        KindArg::Linear => ModelKind::Linear,
        KindArg::Ff => ModelKind::Feedforward,
    };
    if kind == ModelKind::Linear && a.embeddings.is_some() {
        warn!("the linear model does not use word vectors; ignoring --embeddings");
    }
    let table = match kind {
        ModelKind::Linear => EmbeddingTable::empty(0),
        ModelKind::Feedforward => load_table(a.embeddings.as_deref())?,
    };
    let samples = load_split(&a.train)?;
    if samples.is_empty() {
        bail!("no annotated samples in {}", a.train.display());
    }
    let dev = a.dev.as_deref().map(load_split).transpose()?;
    info!("training on {} samples with seeds {seeds:?}", samples.len());

    let models = seeds
        .par_iter()
        .map(|&seed| {
            let cfg = TrainingConfig { seed, ..cfg.clone() };
            let outcome = train_model(kind, &samples, &table, &cfg)
                .with_context(|| format!("training with seed {seed}"))?;
            if let Some(dev) = &dev {
                let f1 = link_f1(&outcome.model, dev, &table, cfg.window)?;
                info!("seed {seed}: dev link F1 {:.2}", 100.0 * f1);
            }
            Ok((seed, write_model(&outcome.model)))
        })
        .collect::<Result<Vec<_>>>()?;

    if let [(_, text)] = models.as_slice() {
        return write_atomic(&a.output, text.as_bytes());
    }
    for (seed, text) in &models {
        write_atomic(&a.output.join(format!("model-seed{seed}.txt")), text.as_bytes())?;
    }
    Ok(())
}

fn link_f1(model: &DisentanglementModel, samples: &[AnnotatedSample], table: &EmbeddingTable, window: usize) -> Result<f64> {
    let evals = samples
        .iter()
        .map(|s| {
            let pred = disentangle_from(model, &s.messages, table, window, s.context_size)?;
            Ok(SampleEval {
                gold: &s.graph,
                prediction: Prediction::Graph(pred),
                context: s.context_size,
                messages: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = score(&evals, EvalOptions::default())?;
    Ok(report.graph.map_or(0.0, |g| g.f1))
}

/// Context size for a log: fixed, or from the annotation next to it.
fn resolve_context(arg: ContextArg, log: &Path, n: usize) -> Result<usize> {
    match arg {
        ContextArg::Fixed(c) if c > n => bail!("context {c} exceeds the {n} messages in {}", log.display()),
        ContextArg::Fixed(c) => Ok(c),
        ContextArg::Auto => match SampleFiles::for_log(log) {
            Some(files) => {
                let gold = load_graph(&files.annotation, Some(n))?;
                Ok(if gold.edge_count() == 0 { 0 } else { infer_context(&gold) })
            }
            None => Ok(0),
        },
    }
}

/// Keeps only links into messages at or after `from`.
fn links_from(graph: &ReplyGraph, from: usize) -> Result<ReplyGraph> {
    Ok(ReplyGraph::from_edges(graph.n(), graph.edges().filter(|&(_, c)| c >= from))?)
}

/// Writes one annotation per input log: to `output` (or stdout) for a single
/// log, into the `output` directory for a directory of logs.
fn write_per_log(input: &Path, output: Option<&Path>, results: Vec<(String, ReplyGraph)>) -> Result<()> {
    if input.is_dir() {
        let dir = output.context("a directory of logs needs --output DIR")?;
        for (name, graph) in results {
            write_atomic(&annotation_path(dir, &name), write_annotations(&graph).as_bytes())?;
        }
        Ok(())
    } else {
        emit(output, &write_annotations(&results[0].1))
    }
}

pub struct DisentangleArgs {
    pub model: PathBuf,
    pub log: PathBuf,
    pub embeddings: Option<PathBuf>,
    pub context: ContextArg,
    pub window: Option<usize>,
    pub config: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

pub fn disentangle(a: DisentangleArgs) -> Result<()> {
    let window = a.window.unwrap_or(load_config(a.config.as_deref())?.training.window);
    if window == 0 {
        bail!("the candidate window must be positive");
    }
    let model = read_model(&read_text(&a.model)?).map_err(|e| e.in_file(&a.model))?;
    let table = if model.kind() == ModelKind::Feedforward && model.embedding_dim > 0 {
        let path = a
            .embeddings
            .as_deref()
            .with_context(|| format!("{} needs --embeddings", a.model.display()))?;
        load_table(Some(path))?
    } else {
        EmbeddingTable::empty(0)
    };
    let logs = list_logs(&a.log)?;
    let results = logs
        .par_iter()
        .map(|(name, path)| {
            let messages = load_log(path)?;
            let context = resolve_context(a.context, path, messages.len())?;
            let graph = disentangle_from(&model, &messages, &table, window, context)
                .with_context(|| format!("disentangling {}", path.display()))?;
            Ok((name.clone(), graph))
        })
        .collect::<Result<Vec<_>>>()?;
    write_per_log(&a.log, a.output.as_deref(), results)
}

pub struct EvaluateArgs {
    pub gold: PathBuf,
    pub pred: PathBuf,
    pub log: Option<PathBuf>,
    pub context: Option<usize>,
    pub conversations_only: bool,
    pub no_self_links: bool,
    pub exclude_system: bool,
    pub output: Option<PathBuf>,
}

pub fn evaluate(a: EvaluateArgs) -> Result<()> {
    let opts = EvalOptions {
        include_self_links: !a.no_self_links,
        include_system_messages: !a.exclude_system,
    };
    let predict = |g: ReplyGraph| {
        if a.conversations_only {
            Prediction::Partition(conversations_of(&g))
        } else {
            Prediction::Graph(g)
        }
    };

    let samples: Vec<(AnnotatedSample, ReplyGraph)> = if a.gold.is_dir() {
        if !a.pred.is_dir() {
            bail!("--gold is a directory, so --pred must be one too");
        }
        SampleFiles::in_dir(&a.gold)
            .map_err(|e| e.in_file(&a.gold))?
            .par_iter()
            .map(|files| {
                let sample = load_sample(files, a.context)?;
                let pred = load_graph(&find_annotation(&a.pred, &files.name)?, Some(sample.len()))?;
                Ok((sample, pred))
            })
            .collect::<Result<_>>()?
    } else {
        let messages = a.log.as_deref().map(load_log).transpose()?;
        let n = messages.as_ref().map(Vec::len);
        let (mut gold, mut pred) = (load_graph(&a.gold, n)?, load_graph(&a.pred, n)?);
        if n.is_none() {
            let n = gold.n().max(pred.n());
            gold = ReplyGraph::from_edges(n, gold.edges())?;
            pred = ReplyGraph::from_edges(n, pred.edges())?;
        }
        if a.exclude_system && messages.is_none() {
            bail!("--exclude-system needs --log");
        }
        let context = a.context.unwrap_or_else(|| infer_context(&gold));
        let messages = messages.unwrap_or_default();
        let sample = AnnotatedSample {
            name: "sample".into(),
            messages,
            context_size: context,
            graph: gold,
        };
        vec![(sample, pred)]
    };
    if samples.is_empty() {
        bail!("no annotated samples in {}", a.gold.display());
    }

    let evals: Vec<SampleEval<'_>> = samples
        .iter()
        .map(|(s, pred)| SampleEval {
            gold: &s.graph,
            prediction: predict(pred.clone()),
            context: s.context_size,
            messages: (!s.messages.is_empty()).then_some(s.messages.as_slice()),
        })
        .collect();
    let report = score(&evals, opts)?;
    emit(a.output.as_deref(), &(report.to_json() + "\n"))
}

fn combine(mode: EnsembleMode, graphs: &[ReplyGraph]) -> Result<ReplyGraph> {
    let n = graphs.iter().map(ReplyGraph::n).max().unwrap_or(0);
    let graphs = graphs
        .iter()
        .map(|g| ReplyGraph::from_edges(n, g.edges()))
        .collect::<disentangle::Result<Vec<_>>>()?;
    // messages no input links are context and stay unlinked
    let from = graphs
        .iter()
        .filter(|g| g.edge_count() > 0)
        .map(infer_context)
        .min()
        .unwrap_or(n);
    let combined = match mode {
        EnsembleMode::Union => ensemble_union(&graphs)?,
        EnsembleMode::Vote => ensemble_vote(&graphs)?,
        EnsembleMode::Intersect => {
            let parts: Vec<_> = graphs.iter().map(|g| conversations_of(g).restrict_from(from)).collect();
            ensemble_intersect(&parts)?.chain_graph(n)?
        }
    };
    links_from(&combined, from)
}

pub fn ensemble(mode: EnsembleMode, inputs: &[PathBuf], log: Option<&Path>, output: Option<&Path>) -> Result<()> {
    let dirs = inputs.iter().filter(|p| p.is_dir()).count();
    if dirs == 0 {
        let n = log.map(load_log).transpose()?.map(|m| m.len());
        let graphs = inputs.iter().map(|p| load_graph(p, n)).collect::<Result<Vec<_>>>()?;
        return emit(output, &write_annotations(&combine(mode, &graphs)?));
    }
    if dirs != inputs.len() {
        bail!("--inputs must be all files or all directories");
    }
    let out = output.context("directory inputs need --output DIR")?;
    let names = list_annotations(&inputs[0])?;
    if names.is_empty() {
        bail!("no annotation files in {}", inputs[0].display());
    }
    let results = names
        .par_iter()
        .map(|(name, _)| {
            let graphs = inputs
                .iter()
                .map(|dir| load_graph(&find_annotation(dir, name)?, None))
                .collect::<Result<Vec<_>>>()?;
            Ok((name.clone(), combine(mode, &graphs)?))
        })
        .collect::<Result<Vec<_>>>()?;
    for (name, graph) in results {
        write_atomic(&annotation_path(out, &name), write_annotations(&graph).as_bytes())?;
    }
    Ok(())
}

pub fn stats(dirs: &[PathBuf], output: Option<&Path>) -> Result<()> {
    let mut stats = CorpusStats::new();
    for dir in dirs {
        for s in load_split(dir)? {
            stats
                .add_sample(&s.messages, &conversations_of(&s.graph), &s.graph, s.context_size)
                .with_context(|| format!("sample {}", s.name))?;
        }
    }
    let gaps: Vec<_> = stats
        .gap_buckets()
        .into_iter()
        .map(|(bucket, count)| json!({ "bucket": bucket, "count": count }))
        .collect();
    let report = json!({
        "summary": stats.summary(),
        "gap_buckets": gaps,
        "histograms": stats,
    });
    emit(output, &(serde_json::to_string_pretty(&report)? + "\n"))
}

fn ratio_json(r: Ratio) -> serde_json::Value {
    json!({ "hits": r.hits, "total": r.total, "percent": r.percent() })
}

pub fn audit(
    gold: &Path,
    pred: Option<&Path>,
    config: Option<&Path>,
    response_window: Option<i64>,
    output: Option<&Path>,
) -> Result<()> {
    let mut params = load_config(config)?.heuristic;
    if let Some(w) = response_window {
        params.response_window_minutes = w;
    }
    params.validate()?;
    let samples = load_split(gold)?;
    if samples.is_empty() {
        bail!("no annotated samples in {}", gold.display());
    }
    let a = audit_assumptions(&samples, params.response_window_minutes);
    let mut report = json!({
        "assumptions": {
            "undirected_follow_directed": ratio_json(a.undirected_follow_directed),
            "starts_with_multiple_responses": ratio_json(a.starts_with_multiple_responses),
            "directed_starts": ratio_json(a.directed_starts),
            "first_response_in_window": ratio_json(a.first_response_in_window),
        }
    });
    if let Some(pred_dir) = pred {
        let mut conversations = AuditReport::default();
        for s in &samples {
            let predicted = load_graph(&find_annotation(pred_dir, &s.name)?, Some(s.len()))?;
            let predicted = conversations_of(&predicted).restrict_from(s.context_size);
            let gold = conversations_of(&s.graph).restrict_from(s.context_size);
            conversations.merge(audit_against_gold(&predicted, &gold).with_context(|| format!("sample {}", s.name))?);
        }
        report["conversations"] = serde_json::to_value(conversations.summary())?;
    }
    emit(output, &(serde_json::to_string_pretty(&report)? + "\n"))
}

pub struct BaselineArgs {
    pub method: BaselineMethod,
    pub log: PathBuf,
    pub context: ContextArg,
    pub config: Option<PathBuf>,
    pub response_window: Option<i64>,
    pub undirected_window: Option<usize>,
    pub output: Option<PathBuf>,
}

pub fn baseline(a: BaselineArgs) -> Result<()> {
    let mut params = load_config(a.config.as_deref())?.heuristic;
    if let Some(w) = a.response_window {
        params.response_window_minutes = w;
    }
    if let Some(w) = a.undirected_window {
        params.undirected_window = w;
    }
    params.validate()?;
    let logs = list_logs(&a.log)?;
    let results = logs
        .par_iter()
        .map(|(name, path)| {
            let messages = load_log(path)?;
            let n = messages.len();
            let context = resolve_context(a.context, path, n)?;
            let graph = match a.method {
                BaselineMethod::Previous => previous_baseline(&messages),
                BaselineMethod::Lowe => lowe_heuristic(&messages, &params).restrict_from(context).chain_graph(n)?,
            };
            Ok((name.clone(), links_from(&graph, context)?))
        })
        .collect::<Result<Vec<_>>>()?;
    write_per_log(&a.log, a.output.as_deref(), results)
}
