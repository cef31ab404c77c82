//! Plain-text model files.
//!
//! ```text
//! disentangle-model 1
//! kind feedforward
//! schema pairwise-v1
//! features 41
//! embedding 50
//! hidden 256 256
//! nonlinearity relu
//! seed 3
//! params 101121
//! <one parameter per line>
//! ```
//!
//! Linear models omit the `hidden` and `nonlinearity` lines and have
//! `embedding 0`. Parameters are listed row-major block by block: for a
//! linear model the weights then the bias; for a feedforward model the
//! first layer's weights (hidden x input) and biases, the second layer's
//! weights and biases, then the output weights and bias. Values use the
//! shortest decimal form that reads back to the same `f64`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::features::SCHEMA_ID;
use crate::models::network::{FeedforwardScorer, LinearScorer, Nonlinearity};
use crate::models::{DisentanglementModel, ModelKind, Scorer};

const MAGIC: &str = "disentangle-model";
const VERSION: u32 = 1;

pub fn write_model(model: &DisentanglementModel) -> String {
    let mut out = String::new();
    writeln!(out, "{MAGIC} {VERSION}").unwrap();
    writeln!(out, "kind {}", model.kind().id()).unwrap();
    writeln!(out, "schema {}", model.schema).unwrap();
    writeln!(out, "features {}", model.feature_count).unwrap();
    writeln!(out, "embedding {}", model.embedding_dim).unwrap();
    if let Scorer::Feedforward(s) = &model.scorer {
        writeln!(out, "hidden {} {}", s.hidden[0], s.hidden[1]).unwrap();
        writeln!(out, "nonlinearity {}", s.nonlinearity.id()).unwrap();
    }
    writeln!(out, "seed {}", model.seed).unwrap();
    writeln!(out, "params {}", model.params().len()).unwrap();
    for p in model.params() {
        writeln!(out, "{p}").unwrap();
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::ModelFormat {
            line: self.line,
            message: message.into(),
        }
    }

    fn next(&mut self) -> Result<&'a str> {
        let (i, l) = self.inner.next().ok_or_else(|| Error::ModelFormat {
            line: self.line + 1,
            message: "unexpected end of file".into(),
        })?;
        self.line = i + 1;
        Ok(l.trim())
    }

    fn field(&mut self, key: &str) -> Result<&'a str> {
        let line = self.next()?;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok(v.trim()),
            _ => Err(self.err(format!("expected `{key} ...`, found {line:?}"))),
        }
    }

    fn number<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let v = self.field(key)?;
        v.parse().map_err(|_| self.err(format!("bad {key}: {v:?}")))
    }
}

pub fn read_model(text: &str) -> Result<DisentanglementModel> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        line: 0,
    };
    let version: u32 = lines.number(MAGIC)?;
    if version != VERSION {
        return Err(lines.err(format!("unsupported version {version}")));
    }
    let kind_id = lines.field("kind")?;
    let kind = ModelKind::from_id(kind_id).ok_or_else(|| lines.err(format!("unknown kind {kind_id:?}")))?;
    let schema = lines.field("schema")?.to_string();
    if schema != SCHEMA_ID {
        return Err(lines.err(format!("model uses feature schema {schema:?}, this build has {SCHEMA_ID:?}")));
    }
    let features: usize = lines.number("features")?;
    let embedding: usize = lines.number("embedding")?;
    let shape = match kind {
        ModelKind::Linear => None,
        ModelKind::Feedforward => {
            let hidden = lines.field("hidden")?;
            let sizes: Vec<usize> = hidden.split_whitespace().filter_map(|h| h.parse().ok()).collect();
            let [h1, h2] = sizes[..] else {
                return Err(lines.err(format!("expected two hidden sizes, found {hidden:?}")));
            };
            let nl = lines.field("nonlinearity")?;
            let nl = Nonlinearity::from_id(nl).ok_or_else(|| lines.err(format!("unknown nonlinearity {nl:?}")))?;
            Some(([h1, h2], nl))
        }
    };
    let seed: u64 = lines.number("seed")?;
    let count: usize = lines.number("params")?;
    let mut params = Vec::with_capacity(count);
    for _ in 0..count {
        let v = lines.next()?;
        params.push(v.parse::<f64>().map_err(|_| lines.err(format!("bad parameter {v:?}")))?);
    }
    if lines.inner.any(|(_, l)| !l.trim().is_empty()) {
        return Err(lines.err("trailing data after parameters"));
    }

    let model = match shape {
        None => {
            if params.len() != features + 1 {
                return Err(lines.err(format!("linear model needs {} parameters, found {}", features + 1, params.len())));
            }
            DisentanglementModel::linear(LinearScorer { params }, seed)?
        }
        Some((hidden, nonlinearity)) => {
            let input_dim = features + 2 * embedding;
            let expected = FeedforwardScorer::parameter_count(input_dim, hidden);
            if params.len() != expected {
                return Err(lines.err(format!("network needs {expected} parameters, found {}", params.len())));
            }
            let scorer = FeedforwardScorer {
                input_dim,
                hidden,
                nonlinearity,
                params,
            };
            DisentanglementModel::feedforward(scorer, embedding, seed)?
        }
    };
    if model.feature_count != features {
        return Err(Error::Shape(format!("model has {features} features, schema has {}", model.feature_count)));
    }
    Ok(model)
}
