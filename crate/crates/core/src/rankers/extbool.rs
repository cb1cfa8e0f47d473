use std::fmt;
use std::str::FromStr;

use crate::boolquery::QueryAst;
use crate::corpus::{CorpusIndex, TermId};

use super::vsm::{document_weights, WeightingScheme};
use super::{RankError, RankedList};

/// Order of the normalized Minkowski distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PNorm {
    Finite(f64),
    Infinity,
}

impl PNorm {
    pub fn validate(self) -> Result<Self, RankError> {
        match self {
            PNorm::Finite(p) if p.is_nan() || p < 1.0 => Err(RankError::BadP(p)),
            PNorm::Finite(p) if p.is_infinite() => Ok(PNorm::Infinity),
            ok => Ok(ok),
        }
    }

    /// `(Σ x^p / m)^{1/p}`, or `max x` for `p = ∞`.
    fn mean(self, xs: &[f64]) -> f64 {
        match self {
            PNorm::Infinity => xs.iter().copied().fold(0.0, f64::max),
            PNorm::Finite(p) => {
                // scaled by the max so large p does not underflow
                let top = xs.iter().copied().fold(0.0, f64::max);
                if top == 0.0 {
                    return 0.0;
                }
                let s: f64 = xs.iter().map(|x| (x / top).powf(p)).sum();
                top * (s / xs.len() as f64).powf(1.0 / p)
            }
        }
    }
}

impl FromStr for PNorm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "inf" | "infinity" => Ok(PNorm::Infinity),
            other => other
                .parse::<f64>()
                .map(PNorm::Finite)
                .map_err(|_| format!("expected a number >= 1 or \"inf\", got {s:?}")),
        }
    }
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PNorm::Finite(p) => write!(f, "{p}"),
            PNorm::Infinity => f.write_str("inf"),
        }
    }
}

/// Where document term weights come from before they enter the p-norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtWeights {
    /// Scheme weights divided by the largest weight in the corpus.
    Scheme(WeightingScheme),
    /// 1 when the term is present, 0 otherwise.
    Binary,
}

impl Default for ExtWeights {
    fn default() -> Self {
        ExtWeights::Scheme(WeightingScheme::TfIdf)
    }
}

enum Shape<'a> {
    Or(Vec<&'a str>),
    And(Vec<&'a str>),
}

fn plain_terms(cs: &[QueryAst]) -> Result<Vec<&str>, RankError> {
    cs.iter()
        .map(|c| match c {
            QueryAst::Term(t) => Ok(t.as_str()),
            _ => Err(RankError::UnsupportedQueryShape),
        })
        .collect()
}

fn shape(ast: &QueryAst) -> Result<Shape<'_>, RankError> {
    match ast {
        QueryAst::Term(t) => Ok(Shape::Or(vec![t])),
        QueryAst::Or(cs) => Ok(Shape::Or(plain_terms(cs)?)),
        QueryAst::And(cs) => Ok(Shape::And(plain_terms(cs)?)),
        QueryAst::Not(_) => Err(RankError::UnsupportedQueryShape),
    }
}

/// p-norm extended Boolean ranking of a flat disjunction or conjunction.
///
/// Disjunctions score by distance from the all-zeros corner, conjunctions by one
/// minus the distance from the all-ones corner, both over the query's `m` terms.
pub fn extbool_rank(
    index: &CorpusIndex,
    ast: &QueryAst,
    p: PNorm,
    weights: ExtWeights,
) -> Result<RankedList, RankError> {
    let p = p.validate()?;
    let shape = shape(ast)?;

    let weight: Box<dyn Fn(Option<TermId>, usize) -> f64> = match weights {
        ExtWeights::Binary => Box::new(|id, b| match id {
            Some(id) if index.tf(id, b) > 0 => 1.0,
            _ => 0.0,
        }),
        ExtWeights::Scheme(scheme) => {
            let w = document_weights(index, scheme);
            let max = w.max_abs();
            Box::new(move |id, b| match id {
                Some(id) if max > 0.0 => w[(id.0, b)] / max,
                _ => 0.0,
            })
        }
    };

    let (terms, conj) = match &shape {
        Shape::Or(t) => (t, false),
        Shape::And(t) => (t, true),
    };
    let ids: Vec<Option<TermId>> = terms.iter().map(|t| index.term_id(t)).collect();

    let scores = index.docs().iter().enumerate().map(|(b, d)| {
        let ws: Vec<f64> = ids.iter().map(|&id| weight(id, b)).collect();
        let sc = if conj {
            let gaps: Vec<f64> = ws.iter().map(|w| 1.0 - w).collect();
            1.0 - p.mean(&gaps)
        } else {
            p.mean(&ws)
        };
        (d.id.clone(), sc)
    });
    Ok(RankedList::new(scores))
}
