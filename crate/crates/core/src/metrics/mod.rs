//! Evaluation measures.
//!
//! Graph links are scored with precision, recall and F. Conversations are
//! compared with scaled variation of information, one-to-one overlap, exact
//! match F, Shen's F and Loc. Link agreement between annotators uses
//! Cohen's kappa. VI, one-to-one and Loc are percentages; the F-scores,
//! Shen and kappa are fractions.

mod assignment;
mod clustering;
mod graph;
mod kappa;
mod report;

pub use assignment::max_weight_assignment;
pub use clustering::{exact_match_counts, exact_match_f1, loc_rand, one_to_one, scaled_vi, shen_f};
pub use graph::{edge_counts, graph_prf, EdgeCounts, Prf};
pub use kappa::cohen_kappa;
pub use report::{evaluate, EvalOptions, MetricReport, Prediction, ReportCounts, SampleEval};
