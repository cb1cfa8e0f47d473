use crate::corpus::{CorpusIndex, OccupationVector, TermId};
use crate::eigenkit::Matrix;

use super::{RankError, RankedList};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightingScheme {
    /// `tf · idf`.
    #[default]
    TfIdf,
    /// `(log10 tf + 1) · idf`, cosine-normalized over the vector; zero where `tf = 0`.
    GoodPerformer,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Measure {
    #[default]
    Cosine,
    CosineSquared,
}

fn weigh(index: &CorpusIndex, counts: &[u32], scheme: WeightingScheme) -> Vec<f64> {
    let raw: Vec<f64> = counts
        .iter()
        .enumerate()
        .map(|(i, &tf)| {
            let idf = index.idf(TermId(i));
            match scheme {
                WeightingScheme::TfIdf => f64::from(tf) * idf,
                WeightingScheme::GoodPerformer if tf == 0 => 0.0,
                WeightingScheme::GoodPerformer => (f64::from(tf).log10() + 1.0) * idf,
            }
        })
        .collect();
    match scheme {
        WeightingScheme::TfIdf => raw,
        WeightingScheme::GoodPerformer => {
            let norm = raw.iter().map(|w| w * w).sum::<f64>().sqrt();
            if norm > 0.0 {
                raw.into_iter().map(|w| w / norm).collect()
            } else {
                raw
            }
        }
    }
}

/// Term weights `w_{i,β}`, `t × N`.
pub fn document_weights(index: &CorpusIndex, scheme: WeightingScheme) -> Matrix {
    let mut m = Matrix::zeros(index.n_terms(), index.n_docs());
    for (b, d) in index.docs().iter().enumerate() {
        for (i, w) in weigh(index, d.vector.counts(), scheme)
            .into_iter()
            .enumerate()
        {
            m[(i, b)] = w;
        }
    }
    m
}

/// Query term weights `w_{i,q}` under the same scheme as the documents.
pub fn query_weights(
    index: &CorpusIndex,
    query: &OccupationVector,
    scheme: WeightingScheme,
) -> Vec<f64> {
    weigh(index, query.counts(), scheme)
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Cosine of the angle between each document and the query in weighted term space.
pub fn vsm_rank(
    index: &CorpusIndex,
    query_text: &str,
    scheme: WeightingScheme,
    measure: Measure,
) -> Result<RankedList, RankError> {
    let q = query_weights(index, &index.query_vector(query_text).vector, scheme);
    let q_norm = dot(&q, &q).sqrt();
    if q_norm == 0.0 {
        return Err(RankError::DegenerateQuery);
    }
    let w = document_weights(index, scheme);
    let scores = index.docs().iter().enumerate().map(|(b, d)| {
        let col = w.column(b);
        let d_norm = dot(&col, &col).sqrt();
        let cos = if d_norm == 0.0 {
            0.0
        } else {
            dot(&col, &q) / (d_norm * q_norm)
        };
        let score = match measure {
            Measure::Cosine => cos,
            Measure::CosineSquared => cos * cos,
        };
        (d.id.clone(), score)
    });
    Ok(RankedList::new(scores))
}
