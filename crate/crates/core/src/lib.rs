//! Conversation disentanglement for multi-party chat logs.
//!
//! A log is parsed into [`corpus::Message`]s, each message is linked to the
//! earlier message it replies to (or to itself when it starts a
//! conversation), and the connected components of the resulting
//! [`ReplyGraph`] are the conversations.
//!
//! - [`corpus`]: log parsing, tokenization, annotation files
//! - [`graph`]: reply graphs, conversations, corpus statistics, audits
//! - [`features`]: pairwise features and word embeddings
//! - [`models`]: linear and feedforward antecedent rankers and ensembles
//! - [`baselines`]: the previous-message baseline and a time/address heuristic
//! - [`metrics`]: graph and conversation agreement measures

pub mod baselines;
pub mod corpus;
pub mod error;
pub mod features;
pub mod graph;
pub mod metrics;
pub mod models;

pub use corpus::{AnnotatedSample, Message, MessageKind};
pub use error::{Error, Result};
pub use graph::{conversations_of, ConversationPartition, ReplyGraph};
pub use models::DisentanglementModel;
