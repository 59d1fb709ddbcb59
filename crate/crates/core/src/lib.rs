//! Analysis of valued journal networks built from editor-journal
//! affiliation data.
//!
//! The pipeline: parse a two-mode affiliation table ([`ingest`]), project it
//! to the valued one-mode journal graph ([`project`]), then measure it --
//! centrality and centralization ([`centrality`]), cohesive subgroups via
//! m-slices ([`cohesion`]) and rank concordance across the centrality
//! orderings ([`concordance`]). Pajek `.net`/`.clu` files are the exchange
//! format.

use thiserror::Error;

pub mod centrality;
pub mod cli;
pub mod cohesion;
pub mod concordance;
pub mod graph;
pub mod ingest;
pub mod project;

/// A statistic was requested on a network too small to define it.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("network with {n} vertices is too small for this statistic")]
    DegenerateNetwork { n: usize },
}

pub use graph::{AffiliationNetwork, JournalGraph, VertexId};
