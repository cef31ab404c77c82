//! Generated annotated logs whose reply structure is recoverable from word
//! overlap alone: every message is built from common filler words, and each
//! reply link gets its own made-up word that appears in exactly the two
//! linked messages. Messages without a parent start conversations.

use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::AnnotatedSample;
use crate::error::Result;
use crate::features::STOPWORDS;

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub messages: usize,
    pub speakers: usize,
    /// Probability that a message starts a new conversation.
    pub start_rate: f64,
    /// Replies pick a parent uniformly among this many preceding messages.
    pub max_distance: usize,
    pub filler_words: std::ops::RangeInclusive<usize>,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            messages: 200,
            speakers: 8,
            start_rate: 0.15,
            max_distance: 20,
            filler_words: 2..=6,
            seed: 0,
        }
    }
}

/// Log text and annotation text for one generated sample.
pub fn synthetic_texts(cfg: &SyntheticConfig) -> (String, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.messages;
    let parents: Vec<usize> = (0..n)
        .map(|i| {
            if i == 0 || rng.gen_bool(cfg.start_rate) {
                i
            } else {
                i - rng.gen_range(1..=cfg.max_distance.min(i))
            }
        })
        .collect();

    let mut words: Vec<Vec<String>> = (0..n)
        .map(|_| {
            let k = rng.gen_range(cfg.filler_words.clone());
            (0..k).map(|_| STOPWORDS.choose(&mut rng).unwrap().to_string()).collect()
        })
        .collect();
    for (i, &p) in parents.iter().enumerate() {
        if p != i {
            let marker = format!("zq{i}x");
            words[p].push(marker.clone());
            words[i].push(marker);
        }
    }

    let (mut log, mut ann) = (String::new(), String::new());
    let mut minute = 0usize;
    for (i, w) in words.iter_mut().enumerate() {
        w.shuffle(&mut rng);
        minute += rng.gen_range(0..2);
        let speaker = rng.gen_range(0..cfg.speakers.max(1));
        writeln!(log, "[{:02}:{:02}] <user{speaker}> {}", (minute / 60) % 24, minute % 60, w.join(" ")).unwrap();
        writeln!(ann, "{} {i}", parents[i]).unwrap();
    }
    (log, ann)
}

pub fn synthetic_sample(name: &str, cfg: &SyntheticConfig) -> Result<AnnotatedSample> {
    let (log, ann) = synthetic_texts(cfg);
    AnnotatedSample::from_texts(name, &log, &ann, Some(0))
}
