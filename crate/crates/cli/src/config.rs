//! The JSON config file. Every key is optional; missing keys keep their
//! defaults, and command-line flags override both.
//!
//! ```json
//! {
//!   "training": { "window": 100, "learning_rate": 0.01, "momentum": 0.9,
//!                 "epochs": 20, "seed": 0, "hidden": [256, 256],
//!                 "nonlinearity": "relu" },
//!   "heuristic": { "response_window_minutes": 3, "undirected_window": 20,
//!                  "reply_back": true, "join_running": true }
//! }
//! ```

use std::path::Path;

use anyhow::{Context, Result};
use disentangle::baselines::HeuristicParams;
use disentangle::models::TrainingConfig;
use serde::Deserialize;

use crate::files::read_text;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub training: TrainingConfig,
    pub heuristic: HeuristicParams,
}

pub fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("bad config in {}", path.display()))
}
