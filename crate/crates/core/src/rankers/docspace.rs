//! Query expansion through a term-term similarity thesaurus.
//!
//! Terms are expanded over the documents rather than the other way around: the
//! weight of term `i` on document `β` is
//!
//! ```text
//! w_{i,β} = (0.5 + 0.5·tf_{i,β}/max_μ tf_{i,μ}) · itf_β / norm_i
//! itf_β   = log10(t / t_β)          t_β = distinct terms in β
//! ```
//!
//! where `norm_i` makes every term's weight vector unit length. Term-term
//! correlation is the inner product of those vectors.

use crate::corpus::{CorpusIndex, OccupationVector, TermId};
use crate::eigenkit::{Matrix, SymmetricMatrix};

use super::fuzzy::{CorrelationMatrix, CorrelationSource};
use super::{RankError, RankedList};

fn itf(t: usize, distinct: usize) -> f64 {
    if distinct == 0 {
        0.0
    } else {
        (t as f64 / distinct as f64).log10()
    }
}

fn augmented(tf: u32, max_tf: u32) -> f64 {
    0.5 + 0.5 * f64::from(tf) / f64::from(max_tf)
}

fn max_tf(index: &CorpusIndex, i: usize) -> u32 {
    (0..index.n_docs())
        .map(|b| index.tf(TermId(i), b))
        .max()
        .unwrap_or(0)
}

/// Term-document weights `w_{i,β}`, `t × N`; each row has unit length unless all its `itf` are zero.
pub fn docspace_weights(index: &CorpusIndex) -> Matrix {
    let t = index.n_terms();
    let itfs: Vec<f64> = index
        .docs()
        .iter()
        .map(|d| itf(t, d.vector.distinct_terms()))
        .collect();
    let mut w = Matrix::zeros(t, index.n_docs());
    for i in 0..t {
        let m = max_tf(index, i);
        let raw: Vec<f64> = (0..index.n_docs())
            .map(|b| augmented(index.tf(TermId(i), b), m) * itfs[b])
            .collect();
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            for (b, x) in raw.into_iter().enumerate() {
                w[(i, b)] = x / norm;
            }
        }
    }
    w
}

/// Query weights `w_{u,q}` for the query's terms (zero elsewhere).
///
/// The query is weighted as one more column of the term-document matrix: the
/// per-term maximum and the row normalization both include it.
pub fn docspace_query_weights(index: &CorpusIndex, query: &OccupationVector) -> Vec<f64> {
    let t = index.n_terms();
    let itf_q = itf(t, query.distinct_terms());
    let itfs: Vec<f64> = index
        .docs()
        .iter()
        .map(|d| itf(t, d.vector.distinct_terms()))
        .collect();
    query
        .counts()
        .iter()
        .enumerate()
        .map(|(i, &tfq)| {
            if tfq == 0 {
                return 0.0;
            }
            let m = max_tf(index, i).max(tfq);
            let doc_part: f64 = (0..index.n_docs())
                .map(|b| (augmented(index.tf(TermId(i), b), m) * itfs[b]).powi(2))
                .sum();
            let own = augmented(tfq, m) * itf_q;
            let norm = (doc_part + own * own).sqrt();
            if norm > 0.0 {
                own / norm
            } else {
                0.0
            }
        })
        .collect()
}

/// Precomputed document weights and term-term correlations for a corpus.
#[derive(Clone, Debug)]
pub struct DocspaceModel {
    pub weights: Matrix,
    pub correlation: CorrelationMatrix,
}

impl DocspaceModel {
    pub fn new(index: &CorpusIndex) -> Self {
        let weights = docspace_weights(index);
        let c = SymmetricMatrix::from_upper(index.n_terms(), |u, v| {
            weights
                .row(u)
                .iter()
                .zip(weights.row(v))
                .map(|(a, b)| a * b)
                .sum()
        });
        Self {
            weights,
            correlation: CorrelationMatrix {
                c,
                source: CorrelationSource::Docspace,
            },
        }
    }

    /// `SC(q, d_β) = Σ_{u∈q} ⟨q|k_u⟩ w_{u,β}` with `⟨q|k_u⟩ = Σ_{v∈q} w_{v,q} c_{v,u}`.
    pub fn rank(
        &self,
        index: &CorpusIndex,
        query: &OccupationVector,
    ) -> Result<RankedList, RankError> {
        let wq = docspace_query_weights(index, query);
        let in_query: Vec<usize> = (0..wq.len()).filter(|&i| query.counts()[i] > 0).collect();
        if in_query.is_empty() || in_query.iter().all(|&i| wq[i] == 0.0) {
            return Err(RankError::DegenerateQuery);
        }
        let expanded: Vec<(usize, f64)> = in_query
            .iter()
            .map(|&u| {
                let qk: f64 = in_query
                    .iter()
                    .map(|&v| wq[v] * self.correlation.c[(v, u)])
                    .sum();
                (u, qk)
            })
            .collect();
        let scores = index.docs().iter().enumerate().map(|(b, d)| {
            let sc: f64 = expanded
                .iter()
                .map(|&(u, qk)| qk * self.weights[(u, b)])
                .sum();
            (d.id.clone(), sc)
        });
        Ok(RankedList::new(scores))
    }
}

pub fn docspace_rank(index: &CorpusIndex, query_text: &str) -> Result<RankedList, RankError> {
    let q = index.query_vector(query_text).vector;
    DocspaceModel::new(index).rank(index, &q)
}
