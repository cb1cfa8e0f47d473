use crate::boolquery::{to_dnf, QueryAst};
use crate::corpus::{CorpusIndex, TermId};
use crate::eigenkit::{Matrix, SymmetricMatrix};

use super::{RankError, RankedList};

/// Degree of membership `μ_{i,β} ∈ [0, 1]` of each term in each document (`t × N`).
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipMatrix {
    mu: Matrix,
}

impl MembershipMatrix {
    pub fn new(mu: Matrix) -> Self {
        debug_assert!(mu.as_slice().iter().all(|x| (0.0..=1.0).contains(x)));
        Self { mu }
    }

    pub fn get(&self, term: TermId, doc: usize) -> f64 {
        self.mu[(term.0, doc)]
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.mu
    }

    fn of(&self, index: &CorpusIndex, term: &str, doc: usize) -> f64 {
        index.term_id(term).map_or(0.0, |id| self.get(id, doc))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrelationSource {
    /// Co-occurrence ratio `n_il / (n_i + n_l − n_il)`.
    KeywordConnection,
    /// Inner products of per-term document weight vectors.
    Docspace,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationMatrix {
    pub c: SymmetricMatrix,
    pub source: CorrelationSource,
}

impl CorrelationMatrix {
    pub fn get(&self, i: TermId, l: TermId) -> f64 {
        self.c[(i.0, l.0)]
    }
}

/// `μ_{i,β} = tf_{i,β} / dl_β`.
pub fn fuzzy_membership(index: &CorpusIndex) -> Result<MembershipMatrix, RankError> {
    if let Some(d) = index.docs().iter().find(|d| d.vector.dl() == 0) {
        return Err(RankError::EmptyDocument(d.id.clone()));
    }
    let mu = Matrix::from_fn(index.n_terms(), index.n_docs(), |i, b| {
        f64::from(index.tf(TermId(i), b)) / index.dl(b) as f64
    });
    Ok(MembershipMatrix::new(mu))
}

fn minmax(index: &CorpusIndex, mu: &MembershipMatrix, ast: &QueryAst, doc: usize) -> f64 {
    match ast {
        QueryAst::Term(t) => mu.of(index, t, doc),
        QueryAst::Not(c) => 1.0 - minmax(index, mu, c, doc),
        QueryAst::And(cs) => cs
            .iter()
            .map(|c| minmax(index, mu, c, doc))
            .fold(f64::INFINITY, f64::min),
        QueryAst::Or(cs) => cs
            .iter()
            .map(|c| minmax(index, mu, c, doc))
            .fold(f64::NEG_INFINITY, f64::max),
    }
}

/// Fuzzy set ranking with `max` for union, `min` for intersection and `1 − μ` for complement.
pub fn fuzzy_rank_minmax(index: &CorpusIndex, ast: &QueryAst) -> Result<RankedList, RankError> {
    let mu = fuzzy_membership(index)?;
    let scores = index
        .docs()
        .iter()
        .enumerate()
        .map(|(b, d)| (d.id.clone(), minmax(index, &mu, ast, b)));
    Ok(RankedList::new(scores))
}

pub fn keyword_correlation(index: &CorpusIndex) -> CorrelationMatrix {
    let present: Vec<Vec<bool>> = (0..index.n_terms())
        .map(|i| {
            (0..index.n_docs())
                .map(|b| index.tf(TermId(i), b) > 0)
                .collect()
        })
        .collect();
    let c = SymmetricMatrix::from_upper(index.n_terms(), |i, l| {
        let both = present[i]
            .iter()
            .zip(&present[l])
            .filter(|(x, y)| **x && **y)
            .count();
        let ni = index.doc_count(TermId(i));
        let nl = index.doc_count(TermId(l));
        both as f64 / (ni + nl - both) as f64
    });
    CorrelationMatrix {
        c,
        source: CorrelationSource::KeywordConnection,
    }
}

/// `μ_{i,β} = 1 − Π_{l ∈ β} (1 − c_{i,l})`, the product running over terms present in `β`.
pub fn fuzzy_membership_corr(index: &CorpusIndex, c: &CorrelationMatrix) -> MembershipMatrix {
    let mu = Matrix::from_fn(index.n_terms(), index.n_docs(), |i, b| {
        let prod: f64 = (0..index.n_terms())
            .filter(|&l| index.tf(TermId(l), b) > 0)
            .map(|l| 1.0 - c.get(TermId(i), TermId(l)))
            .product();
        1.0 - prod
    });
    MembershipMatrix::new(mu)
}

/// Algebraic fuzzy ranking over the query's DNF: product within a clause,
/// algebraic sum `1 − Π(1 − x)` across clauses.
pub fn fuzzy_rank_algebraic(
    index: &CorpusIndex,
    ast: &QueryAst,
    mu: &MembershipMatrix,
) -> Result<RankedList, RankError> {
    let dnf = to_dnf(ast)?;
    let scores = index.docs().iter().enumerate().map(|(b, d)| {
        let miss: f64 = dnf
            .clauses
            .iter()
            .map(|clause| {
                let v: f64 = clause
                    .iter()
                    .map(|l| {
                        let m = mu.of(index, &l.term, b);
                        if l.negated {
                            1.0 - m
                        } else {
                            m
                        }
                    })
                    .product();
                1.0 - v
            })
            .product();
        (d.id.clone(), 1.0 - miss)
    });
    Ok(RankedList::new(scores))
}
