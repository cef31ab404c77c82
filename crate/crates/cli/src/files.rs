//! Reading inputs and writing outputs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use disentangle::corpus::{parse_log, read_annotations, sample_name, Message};
use disentangle::features::{read_embeddings, EmbeddingTable};
use disentangle::ReplyGraph;

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Replaces `path` in one step, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, contents.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn load_log(path: &Path) -> Result<Vec<Message>> {
    Ok(parse_log(&read_text(path)?).map_err(|e| e.in_file(path))?)
}

/// Reads an annotation file for a log of `n` messages, or, without a log,
/// for as many messages as the highest index mentioned.
pub fn load_graph(path: &Path, n: Option<usize>) -> Result<ReplyGraph> {
    let text = read_text(path)?;
    let graph = read_annotations(&text, n.unwrap_or(usize::MAX)).map_err(|e| e.in_file(path))?;
    match n {
        Some(_) => Ok(graph),
        None => {
            let n = graph.edges().map(|(_, c)| c + 1).max().unwrap_or(0);
            Ok(ReplyGraph::from_edges(n, graph.edges())?)
        }
    }
}

pub fn load_table(path: Option<&Path>) -> Result<EmbeddingTable> {
    let Some(path) = path else {
        return Ok(EmbeddingTable::empty(0));
    };
    let file = fs::File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(read_embeddings(std::io::BufReader::new(file)).map_err(|e| e.in_file(path))?)
}

/// Log files in a directory (or the single file given), with sample names,
/// sorted by name.
pub fn list_logs(path: &Path) -> Result<Vec<(String, PathBuf)>> {
    if !path.is_dir() {
        let name = sample_name(path)
            .map(str::to_string)
            .or_else(|| path.file_stem().and_then(|s| s.to_str()).map(str::to_string))
            .unwrap_or_else(|| "sample".into());
        return Ok(vec![(name, path.to_path_buf())]);
    }
    let mut logs = Vec::new();
    for entry in fs::read_dir(path).with_context(|| format!("cannot list {}", path.display()))? {
        let p = entry?.path();
        let file = p.file_name().and_then(|f| f.to_str()).unwrap_or_default();
        if file.ends_with(".ascii.txt") || file.ends_with(".ascii") {
            if let Some(name) = sample_name(&p) {
                logs.push((name.to_string(), p.clone()));
            }
        }
    }
    if logs.is_empty() {
        bail!("no .ascii.txt logs in {}", path.display());
    }
    logs.sort();
    Ok(logs)
}

/// Annotation files in a directory keyed by sample name.
pub fn list_annotations(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("cannot list {}", dir.display()))? {
        let p = entry?.path();
        let file = p.file_name().and_then(|f| f.to_str()).unwrap_or_default();
        if file.ends_with(".annotation.txt") || file.ends_with(".annotation") {
            if let Some(name) = sample_name(&p) {
                files.push((name.to_string(), p.clone()));
            }
        }
    }
    files.sort();
    Ok(files)
}

pub fn find_annotation(dir: &Path, name: &str) -> Result<PathBuf> {
    [".annotation.txt", ".annotation"]
        .iter()
        .map(|s| dir.join(format!("{name}{s}")))
        .find(|p| p.exists())
        .with_context(|| format!("no annotation for {name} in {}", dir.display()))
}

pub fn annotation_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.annotation.txt"))
}
