use std::fs;
use std::path::{Path, PathBuf};

use crate::corpus::{parse_log, read_annotations, Message};
use crate::error::{Error, Result};
use crate::graph::ReplyGraph;

/// A parsed log with its reply annotations. The first `context_size`
/// messages are context: they can be antecedents but are not scored.
#[derive(Debug, Clone)]
pub struct AnnotatedSample {
    pub name: String,
    pub messages: Vec<Message>,
    pub context_size: usize,
    pub graph: ReplyGraph,
}

impl AnnotatedSample {
    pub fn new(
        name: impl Into<String>,
        messages: Vec<Message>,
        context_size: usize,
        graph: ReplyGraph,
    ) -> Result<Self> {
        if graph.n() != messages.len() {
            return Err(Error::SizeMismatch {
                expected: messages.len(),
                found: graph.n(),
            });
        }
        if context_size > messages.len() {
            return Err(Error::Config(format!(
                "context size {context_size} exceeds {} messages",
                messages.len()
            )));
        }
        let parents = graph.parents();
        if let Some(i) = (context_size..messages.len()).find(|&i| parents[i].is_empty()) {
            return Err(Error::Config(format!(
                "message {i} is after the context but has no annotated antecedent"
            )));
        }
        Ok(Self {
            name: name.into(),
            messages,
            context_size,
            graph,
        })
    }

    /// Parses a log/annotation pair. Without an explicit `context_size`,
    /// everything before the first annotated reply is context.
    pub fn from_texts(
        name: impl Into<String>,
        log: &str,
        annotations: &str,
        context_size: Option<usize>,
    ) -> Result<Self> {
        let messages = parse_log(log)?;
        let graph = read_annotations(annotations, messages.len())?;
        let context = context_size.unwrap_or_else(|| infer_context(&graph));
        Self::new(name, messages, context, graph)
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    /// Number of scored (non-context) messages.
    pub fn annotated_len(&self) -> usize {
        self.messages.len() - self.context_size
    }
}

/// Index of the earliest message with an annotated antecedent.
pub fn infer_context(graph: &ReplyGraph) -> usize {
    graph.edges().map(|(_, c)| c).min().unwrap_or(graph.n())
}

/// Paths of a log file and its annotation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleFiles {
    pub name: String,
    pub log: PathBuf,
    pub annotation: PathBuf,
}

const LOG_SUFFIXES: [&str; 2] = [".ascii.txt", ".ascii"];
const ANNOTATION_SUFFIXES: [&str; 2] = [".annotation.txt", ".annotation"];

/// Sample name of a `<name>.ascii.txt` log or `<name>.annotation.txt`
/// annotation file (the shorter suffixes are accepted too).
pub fn sample_name(path: &Path) -> Option<&str> {
    let file = path.file_name()?.to_str()?;
    LOG_SUFFIXES
        .iter()
        .chain(&ANNOTATION_SUFFIXES)
        .find_map(|s| file.strip_suffix(s))
        .filter(|name| !name.is_empty())
}

impl SampleFiles {
    /// Finds `<name>.annotation.txt` (or `.annotation`) next to a
    /// `<name>.ascii.txt` (or `.ascii`) log.
    pub fn for_log(log: &Path) -> Option<Self> {
        let file = log.file_name()?.to_str()?;
        let name = LOG_SUFFIXES.iter().find_map(|s| file.strip_suffix(s)).filter(|n| !n.is_empty())?;
        let dir = log.parent().unwrap_or(Path::new("."));
        ANNOTATION_SUFFIXES
            .iter()
            .map(|s| dir.join(format!("{name}{s}")))
            .find(|p| p.exists())
            .map(|annotation| Self {
                name: name.to_string(),
                log: log.to_path_buf(),
                annotation,
            })
    }

    /// All paired samples in a directory, sorted by name.
    pub fn in_dir(dir: &Path) -> Result<Vec<Self>> {
        let mut pairs = Vec::new();
        for entry in fs::read_dir(dir)? {
            let path = entry?.path();
            if let Some(pair) = Self::for_log(&path) {
                pairs.push(pair);
            }
        }
        pairs.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(pairs)
    }
}

pub fn load_sample(files: &SampleFiles, context_size: Option<usize>) -> Result<AnnotatedSample> {
    let log = fs::read_to_string(&files.log).map_err(|e| Error::from(e).in_file(&files.log))?;
    let ann = fs::read_to_string(&files.annotation)
        .map_err(|e| Error::from(e).in_file(&files.annotation))?;
    let messages = parse_log(&log).map_err(|e| e.in_file(&files.log))?;
    let graph = read_annotations(&ann, messages.len()).map_err(|e| e.in_file(&files.annotation))?;
    let context = context_size.unwrap_or_else(|| infer_context(&graph));
    AnnotatedSample::new(files.name.clone(), messages, context, graph)
        .map_err(|e| e.in_file(&files.annotation))
}

/// Loads every paired sample in a directory.
pub fn load_split(dir: &Path) -> Result<Vec<AnnotatedSample>> {
    SampleFiles::in_dir(dir)
        .map_err(|e| e.in_file(dir))?
        .iter()
        .map(|f| load_sample(f, None))
        .collect()
}
