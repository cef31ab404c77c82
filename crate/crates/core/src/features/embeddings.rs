use std::collections::{HashMap, HashSet};
use std::io::BufRead;

use crate::corpus::Message;
use crate::error::{Error, Result};

/// Pretrained word vectors, one per token, all of the same dimension.
#[derive(Debug, Clone, Default)]
pub struct EmbeddingTable {
    dim: usize,
    entries: HashMap<String, Vec<f32>>,
}

impl EmbeddingTable {
    /// A table with no entries; every lookup yields the zero vector.
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            entries: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&[f32]> {
        self.entries.get(token).map(Vec::as_slice)
    }

    /// Vector for `token`, or zeros when it is out of vocabulary.
    pub fn vector(&self, token: &str) -> Vec<f64> {
        match self.get(token) {
            Some(v) => v.iter().map(|&x| f64::from(x)).collect(),
            None => vec![0.0; self.dim],
        }
    }

    pub fn insert(&mut self, token: impl Into<String>, vector: Vec<f32>) -> Result<()> {
        if vector.len() != self.dim {
            return Err(Error::EmbeddingDimension {
                line: 0,
                expected: self.dim,
                found: vector.len(),
            });
        }
        self.entries.entry(token.into()).or_insert(vector);
        Ok(())
    }

    /// Drops every entry not in `vocabulary`.
    pub fn retain_vocabulary(&mut self, vocabulary: &HashSet<String>) {
        self.entries.retain(|k, _| vocabulary.contains(k));
    }
}

/// Parses the whitespace-separated text format: a token followed by its
/// components, one entry per line. Duplicates keep their first vector.
pub fn load_embeddings(text: &str) -> Result<EmbeddingTable> {
    read_embeddings(text.as_bytes())
}

pub fn read_embeddings<R: BufRead>(reader: R) -> Result<EmbeddingTable> {
    let mut table: Option<EmbeddingTable> = None;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let mut fields = line.split_whitespace();
        let Some(token) = fields.next() else {
            continue;
        };
        let vector = fields
            .map(|f| f.parse::<f32>())
            .collect::<Result<Vec<f32>, _>>()
            .map_err(|e| Error::parse(lineno + 1, format!("bad vector component: {e}")))?;
        let table = table.get_or_insert_with(|| EmbeddingTable::empty(vector.len()));
        if vector.is_empty() || vector.len() != table.dim {
            return Err(Error::EmbeddingDimension {
                line: lineno + 1,
                expected: table.dim,
                found: vector.len(),
            });
        }
        if !table.entries.contains_key(token) {
            table.entries.insert(token.to_string(), vector);
        }
    }
    table.ok_or(Error::EmptyEmbeddings)
}

/// Mean vector of the message's in-vocabulary tokens; zeros if there are none.
pub fn sentence_embedding(message: &Message, table: &EmbeddingTable) -> Vec<f64> {
    let mut sum = vec![0.0; table.dim()];
    let mut count = 0usize;
    for v in message.tokens.iter().filter_map(|t| table.get(t)) {
        for (s, &x) in sum.iter_mut().zip(v) {
            *s += f64::from(x);
        }
        count += 1;
    }
    if count > 0 {
        for s in &mut sum {
            *s /= count as f64;
        }
    }
    sum
}
