//! Retrieval models other than LSI, all producing a [`RankedList`].

mod boolean;
mod docspace;
mod extbool;
mod fuzzy;
mod prob;
mod vsm;

pub use boolean::boolean_select;
pub use docspace::{docspace_query_weights, docspace_rank, docspace_weights, DocspaceModel};
pub use extbool::{extbool_rank, ExtWeights, PNorm};
pub use fuzzy::{
    fuzzy_membership, fuzzy_membership_corr, fuzzy_rank_algebraic, fuzzy_rank_minmax,
    keyword_correlation, CorrelationMatrix, CorrelationSource, MembershipMatrix,
};
pub use prob::{prob_rank, RelevancePriors, PROBABILITY_CLAMP};
pub use vsm::{document_weights, query_weights, vsm_rank, Measure, WeightingScheme};

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::boolquery::QueryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RankError {
    #[error("query has no term with nonzero weight in this corpus")]
    DegenerateQuery,
    #[error("document {0:?} has no tokens")]
    EmptyDocument(String),
    #[error("extended Boolean ranking needs a flat conjunction or disjunction of plain terms")]
    UnsupportedQueryShape,
    #[error("p-norm order must be at least 1, got {0}")]
    BadP(f64),
    #[error(transparent)]
    Query(#[from] QueryError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedEntry {
    pub doc_id: String,
    pub score: f64,
}

/// Scores sorted by descending value, ties broken by ascending document id.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedList {
    entries: Vec<RankedEntry>,
}

impl RankedList {
    pub fn new(scores: impl IntoIterator<Item = (String, f64)>) -> Self {
        let mut entries: Vec<RankedEntry> = scores
            .into_iter()
            .map(|(doc_id, score)| RankedEntry { doc_id, score })
            .collect();
        entries.sort_by(|a, b| match b.score.total_cmp(&a.score) {
            Ordering::Equal => a.doc_id.cmp(&b.doc_id),
            o => o,
        });
        Self { entries }
    }

    pub fn entries(&self) -> &[RankedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn doc_ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.doc_id.as_str()).collect()
    }

    pub fn score_of(&self, doc_id: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.doc_id == doc_id)
            .map(|e| e.score)
    }
}
