use std::collections::BTreeMap;

use crate::corpus::{CorpusIndex, TermId};

use super::{RankError, RankedList};

/// Probabilities are clamped into this range before taking log-odds.
pub const PROBABILITY_CLAMP: (f64, f64) = (0.01, 0.99);

/// Per-term estimates of `P(k|R)` and `P(k|R̄)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelevancePriors {
    pub p_rel: BTreeMap<String, f64>,
    pub p_irrel: BTreeMap<String, f64>,
}

impl RelevancePriors {
    /// Starting estimates: `P(k|R) = 0.5` and `P(k|R̄) = n_i / N` for every vocabulary term.
    pub fn initial(index: &CorpusIndex) -> Self {
        let n = index.n_docs() as f64;
        let p_rel = index
            .vocabulary()
            .iter()
            .map(|v| (v.term.clone(), 0.5))
            .collect();
        let p_irrel = index
            .vocabulary()
            .iter()
            .map(|v| (v.term.clone(), v.doc_count as f64 / n))
            .collect();
        Self { p_rel, p_irrel }
    }

    /// The same probability for both sets and every term.
    pub fn uniform(index: &CorpusIndex, p: f64) -> Self {
        let all: BTreeMap<String, f64> = index
            .vocabulary()
            .iter()
            .map(|v| (v.term.clone(), p))
            .collect();
        Self {
            p_rel: all.clone(),
            p_irrel: all,
        }
    }

    /// Log-odds difference `p_q(k,R) − p_q(k,R̄)`; missing entries fall back to the initial estimates.
    fn factor(&self, index: &CorpusIndex, id: TermId) -> f64 {
        let term = index.term(id);
        let rel = self.p_rel.get(term).copied().unwrap_or(0.5);
        let irrel = self
            .p_irrel
            .get(term)
            .copied()
            .unwrap_or_else(|| index.doc_count(id) as f64 / index.n_docs() as f64);
        log_odds(rel) - log_odds(irrel)
    }
}

fn log_odds(p: f64) -> f64 {
    let p = p.clamp(PROBABILITY_CLAMP.0, PROBABILITY_CLAMP.1);
    (p / (1.0 - p)).log10()
}

/// Binary-independence score summed over the query's terms.
pub fn prob_rank(
    index: &CorpusIndex,
    query_text: &str,
    priors: &RelevancePriors,
) -> Result<RankedList, RankError> {
    let q = index.query_vector(query_text).vector.to_fermion();
    let terms: Vec<(TermId, f64)> = q
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, _)| (TermId(i), priors.factor(index, TermId(i))))
        .collect();
    if terms.is_empty() {
        return Err(RankError::DegenerateQuery);
    }
    let scores = index.docs().iter().enumerate().map(|(b, d)| {
        let sc: f64 = terms
            .iter()
            .filter(|(id, _)| index.tf(*id, b) > 0)
            .map(|(_, f)| f)
            .sum();
        (d.id.clone(), sc)
    });
    Ok(RankedList::new(scores))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf;

    #[test]
    fn half_probability_has_zero_log_odds() {
        assert_eq!(log_odds(0.5), 0.0);
    }

    #[test]
    fn gf_initial_priors() {
        let idx = gf::index();
        let r = prob_rank(&idx, gf::QUERY, &RelevancePriors::initial(&idx)).unwrap();
        assert_eq!(r.doc_ids()[0], "d2");
        // gold, truck: n/N = 2/3 -> -log10 2; silver: 1/3 -> +log10 2
        let l2 = 2f64.log10();
        assert!((r.score_of("d1").unwrap() + l2).abs() < 1e-12);
        assert!(r.score_of("d2").unwrap().abs() < 1e-12);
        assert!((r.score_of("d3").unwrap() + 2.0 * l2).abs() < 1e-12);
    }

    #[test]
    fn term_in_every_document_is_clamped() {
        let idx = gf::index();
        let r = prob_rank(&idx, "a", &RelevancePriors::initial(&idx)).unwrap();
        let want = -log_odds(0.99);
        for e in r.entries() {
            assert!(e.score.is_finite());
            assert!((e.score - want).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_half_priors_give_zero() {
        let idx = gf::index();
        let r = prob_rank(&idx, gf::QUERY, &RelevancePriors::uniform(&idx, 0.5)).unwrap();
        assert!(r.entries().iter().all(|e| e.score == 0.0));
    }

    #[test]
    fn unknown_query_is_degenerate() {
        let idx = gf::index();
        assert_eq!(
            prob_rank(&idx, "platinum", &RelevancePriors::initial(&idx)),
            Err(RankError::DegenerateQuery)
        );
    }
}
