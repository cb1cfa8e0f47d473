//! Document ingestion, vocabulary, and occupation-number vectors.
//!
//! A document is stored as the counts `|N₁, …, N_t⟩` of every vocabulary term.
//! The index is immutable once built.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::BufRead;

use serde::Deserialize;
use thiserror::Error;

use crate::eigenkit::{Matrix, SymmetricMatrix};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus has no documents")]
    EmptyCorpus,
    #[error("corpus documents contain no tokens")]
    EmptyVocabulary,
    #[error("duplicate document id {0:?}")]
    DuplicateDocId(String),
    #[error("fermion occupation vector has count {count} at term {index}")]
    InvalidFermionCount { index: usize, count: u32 },
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Index of a term in the sorted vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(pub usize);

#[derive(Clone, Debug, PartialEq)]
pub struct VocabularyEntry {
    pub term: String,
    /// Number of documents containing the term (`n_i`).
    pub doc_count: usize,
    /// `log10(N / n_i)`.
    pub idf: f64,
}

/// Occupation statistics: any natural number, or at most one particle per state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistics {
    Boson,
    Fermion,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OccupationVector {
    counts: Vec<u32>,
    kind: Statistics,
}

impl OccupationVector {
    pub fn boson(counts: Vec<u32>) -> Self {
        Self {
            counts,
            kind: Statistics::Boson,
        }
    }

    pub fn fermion(counts: Vec<u32>) -> Result<Self, CorpusError> {
        if let Some((index, &count)) = counts.iter().enumerate().find(|(_, &c)| c > 1) {
            return Err(CorpusError::InvalidFermionCount { index, count });
        }
        Ok(Self {
            counts,
            kind: Statistics::Fermion,
        })
    }

    /// Binary view of the same document: every nonzero count becomes 1.
    pub fn to_fermion(&self) -> Self {
        Self {
            counts: self.counts.iter().map(|&c| u32::from(c > 0)).collect(),
            kind: Statistics::Fermion,
        }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn kind(&self) -> Statistics {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Document length: total tokens with multiplicity.
    pub fn dl(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    /// Number of distinct terms present.
    pub fn distinct_terms(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn is_vacuum(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| f64::from(c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub vector: OccupationVector,
}

/// Outcome of a ladder operator: the scalar it produced and the resulting state.
/// `state` is `None` when the operator annihilated the vector.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderResult {
    pub coefficient: f64,
    pub state: Option<OccupationVector>,
}

/// A query mapped onto the corpus vocabulary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryVector {
    pub vector: OccupationVector,
    /// Query tokens not present in the vocabulary, in order of appearance.
    pub unknown: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusIndex {
    vocabulary: Vec<VocabularyEntry>,
    lookup: BTreeMap<String, TermId>,
    docs: Vec<Document>,
}

/// Lowercases and splits on every non-alphanumeric character.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|s| !s.is_empty())
        .map(str::to_lowercase)
        .collect()
}

pub fn build_index<I, S, T>(docs: I) -> Result<CorpusIndex, CorpusError>
where
    I: IntoIterator<Item = (S, T)>,
    S: Into<String>,
    T: AsRef<str>,
{
    let mut seen = HashSet::new();
    let mut tokenized = Vec::new();
    for (id, text) in docs {
        let id = id.into();
        if !seen.insert(id.clone()) {
            return Err(CorpusError::DuplicateDocId(id));
        }
        tokenized.push((id, tokenize(text.as_ref())));
    }
    if tokenized.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }

    let terms: BTreeSet<&str> = tokenized
        .iter()
        .flat_map(|(_, toks)| toks.iter().map(String::as_str))
        .collect();
    if terms.is_empty() {
        return Err(CorpusError::EmptyVocabulary);
    }
    let lookup: BTreeMap<String, TermId> = terms
        .iter()
        .enumerate()
        .map(|(i, t)| (t.to_string(), TermId(i)))
        .collect();
    let t = lookup.len();

    let docs: Vec<Document> = tokenized
        .iter()
        .map(|(id, toks)| {
            let mut counts = vec![0u32; t];
            for tok in toks {
                counts[lookup[tok.as_str()].0] += 1;
            }
            Document {
                id: id.clone(),
                vector: OccupationVector::boson(counts),
            }
        })
        .collect();

    let n = docs.len();
    let vocabulary = lookup
        .iter()
        .map(|(term, &TermId(i))| {
            let doc_count = docs.iter().filter(|d| d.vector.counts[i] > 0).count();
            VocabularyEntry {
                term: term.clone(),
                doc_count,
                idf: idf(n, doc_count),
            }
        })
        .collect();

    Ok(CorpusIndex {
        vocabulary,
        lookup,
        docs,
    })
}

fn idf(n: usize, doc_count: usize) -> f64 {
    if doc_count == n {
        0.0
    } else {
        (n as f64 / doc_count as f64).log10()
    }
}

#[derive(Deserialize)]
struct JsonDoc {
    id: String,
    text: String,
}

/// Reads a JSON Lines corpus: one `{"id": …, "text": …}` object per line.
/// Blank lines are skipped.
pub fn read_jsonl<R: BufRead>(reader: R) -> Result<Vec<(String, String)>, CorpusError> {
    let mut out = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let doc: JsonDoc = serde_json::from_str(&line).map_err(|source| CorpusError::Json {
            line: n + 1,
            source,
        })?;
        out.push((doc.id, doc.text));
    }
    Ok(out)
}

impl CorpusIndex {
    /// Vocabulary size `t`.
    pub fn n_terms(&self) -> usize {
        self.vocabulary.len()
    }

    /// Document count `N`.
    pub fn n_docs(&self) -> usize {
        self.docs.len()
    }

    pub fn vocabulary(&self) -> &[VocabularyEntry] {
        &self.vocabulary
    }

    pub fn docs(&self) -> &[Document] {
        &self.docs
    }

    pub fn doc_ids(&self) -> impl Iterator<Item = &str> {
        self.docs.iter().map(|d| d.id.as_str())
    }

    pub fn term_id(&self, term: &str) -> Option<TermId> {
        self.lookup.get(term).copied()
    }

    pub fn term(&self, id: TermId) -> &str {
        &self.vocabulary[id.0].term
    }

    pub fn idf(&self, id: TermId) -> f64 {
        self.vocabulary[id.0].idf
    }

    pub fn doc_count(&self, id: TermId) -> usize {
        self.vocabulary[id.0].doc_count
    }

    /// `tf_{i,β}`.
    pub fn tf(&self, term: TermId, doc: usize) -> u32 {
        self.docs[doc].vector.counts[term.0]
    }

    pub fn dl(&self, doc: usize) -> u64 {
        self.docs[doc].vector.dl()
    }

    /// Term-document matrix `A`, `t × N`, with `A[i][β] = tf_{i,β}`.
    pub fn term_document_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n_terms(), self.n_docs(), |i, b| {
            f64::from(self.docs[b].vector.counts[i])
        })
    }

    /// Maps query text onto the vocabulary; out-of-vocabulary tokens are reported, not counted.
    pub fn query_vector(&self, text: &str) -> QueryVector {
        let mut counts = vec![0u32; self.n_terms()];
        let mut unknown = Vec::new();
        for tok in tokenize(text) {
            match self.lookup.get(&tok) {
                Some(id) => counts[id.0] += 1,
                None => unknown.push(tok),
            }
        }
        QueryVector {
            vector: OccupationVector::boson(counts),
            unknown,
        }
    }

    /// Term-term matrix `L = A·Aᵀ`.
    pub fn left_matrix(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_upper(self.n_terms(), |i, j| {
            self.docs
                .iter()
                .map(|d| f64::from(d.vector.counts[i]) * f64::from(d.vector.counts[j]))
                .sum()
        })
    }

    /// Document-document matrix `R = Aᵀ·A`.
    pub fn right_matrix(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_upper(self.n_docs(), |a, b| {
            let (x, y) = (&self.docs[a].vector.counts, &self.docs[b].vector.counts);
            x.iter()
                .zip(y)
                .map(|(&p, &q)| f64::from(p) * f64::from(q))
                .sum()
        })
    }
}

/// Raises the occupation of term `i` by one.
///
/// Boson coefficient is `√(N_i + 1)`; fermion coefficient is `√(1 − N_i)`, which
/// annihilates an already occupied state.
pub fn apply_creation(v: &OccupationVector, i: TermId) -> LadderResult {
    let n = v.counts[i.0];
    let coefficient = match v.kind {
        Statistics::Boson => f64::from(n + 1).sqrt(),
        Statistics::Fermion => {
            if n == 0 {
                1.0
            } else {
                0.0
            }
        }
    };
    if coefficient == 0.0 {
        return LadderResult {
            coefficient,
            state: None,
        };
    }
    let mut next = v.clone();
    next.counts[i.0] += 1;
    LadderResult {
        coefficient,
        state: Some(next),
    }
}

/// Lowers the occupation of term `i` by one with coefficient `√N_i`.
pub fn apply_annihilation(v: &OccupationVector, i: TermId) -> LadderResult {
    let n = v.counts[i.0];
    if n == 0 {
        return LadderResult {
            coefficient: 0.0,
            state: None,
        };
    }
    let mut next = v.clone();
    next.counts[i.0] -= 1;
    LadderResult {
        coefficient: f64::from(n).sqrt(),
        state: Some(next),
    }
}

/// Eigenvalue of the number operator `n̂_i` on `v`.
pub fn occupation_number(v: &OccupationVector, i: TermId) -> u32 {
    v.counts[i.0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf;

    #[test]
    fn tokenize_examples() {
        assert_eq!(
            tokenize("Shipment of gold damaged in a fire"),
            ["shipment", "of", "gold", "damaged", "in", "a", "fire"]
        );
        assert!(tokenize("").is_empty());
        assert_eq!(tokenize("Silver-truck"), ["silver", "truck"]);
    }

    #[test]
    fn gf_index_shape() {
        let idx = gf::index();
        assert_eq!(idx.n_terms(), 11);
        assert_eq!(idx.n_docs(), 3);
        let vocab: Vec<&str> = idx.vocabulary().iter().map(|v| v.term.as_str()).collect();
        assert_eq!(vocab, gf::VOCABULARY);
        let silver = idx.term_id("silver").unwrap();
        assert_eq!(idx.tf(silver, 1), 2);
        assert_eq!((0..3).map(|b| idx.dl(b)).collect::<Vec<_>>(), [7, 8, 7]);
    }

    #[test]
    fn gf_idf_row() {
        let idx = gf::index();
        for (entry, want) in idx.vocabulary().iter().zip(gf::IDF_ROW) {
            assert_eq!(
                format!("{:.3}", entry.idf),
                format!("{want:.3}"),
                "{}",
                entry.term
            );
        }
    }

    #[test]
    fn single_doc_index() {
        let idx = build_index([("x", "gold gold")]).unwrap();
        assert_eq!(idx.n_terms(), 1);
        assert_eq!(idx.docs()[0].vector.counts(), &[2]);
        assert_eq!(idx.vocabulary()[0].doc_count, 1);
        assert_eq!(idx.vocabulary()[0].idf, 0.0);
    }

    #[test]
    fn build_errors() {
        let none: Vec<(String, String)> = vec![];
        assert!(matches!(build_index(none), Err(CorpusError::EmptyCorpus)));
        assert!(matches!(
            build_index([("a", " -- "), ("b", "")]),
            Err(CorpusError::EmptyVocabulary)
        ));
        assert!(matches!(
            build_index([("a", "x"), ("a", "y")]),
            Err(CorpusError::DuplicateDocId(id)) if id == "a"
        ));
    }

    #[test]
    fn query_vector_examples() {
        let idx = gf::index();
        let q = idx.query_vector("gold silver truck");
        let nonzero: Vec<(&str, u32)> = q
            .vector
            .counts()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (idx.term(TermId(i)), c))
            .collect();
        assert_eq!(nonzero, [("gold", 1), ("silver", 1), ("truck", 1)]);
        assert!(q.unknown.is_empty());

        assert!(idx.query_vector("").vector.is_vacuum());

        let p = idx.query_vector("platinum");
        assert!(p.vector.is_vacuum());
        assert_eq!(p.unknown, ["platinum"]);
    }

    #[test]
    fn gram_matrices() {
        let idx = gf::index();
        let l = idx.left_matrix();
        assert_eq!(l[(0, 0)], 3.0);
        assert_eq!(l[(9, 9)], 4.0);
        for i in 0..11 {
            for j in 0..11 {
                assert_eq!(l[(i, j)], gf::LEFT_MATRIX[i][j] as f64);
            }
        }
        let r = idx.right_matrix();
        assert_eq!(r[(0, 0)], 7.0);

        let one = build_index([("x", "p q q")]).unwrap();
        assert_eq!(
            one.left_matrix().as_matrix().to_rows(),
            vec![vec![1.0, 2.0], vec![2.0, 4.0]]
        );
        assert_eq!(one.right_matrix().as_matrix().to_rows(), vec![vec![5.0]]);
    }

    #[test]
    fn jsonl_reader() {
        let text = "{\"id\":\"a\",\"text\":\"x y\"}\n\n{\"id\":\"b\",\"text\":\"z\"}\n";
        let docs = read_jsonl(text.as_bytes()).unwrap();
        assert_eq!(docs, [("a".into(), "x y".into()), ("b".into(), "z".into())]);
        let bad = read_jsonl("{\"id\":1}".as_bytes());
        assert!(matches!(bad, Err(CorpusError::Json { line: 1, .. })));
    }

    #[test]
    fn ladder_examples() {
        let i = TermId(0);
        let b1 = OccupationVector::boson(vec![1]);
        let up = apply_creation(&b1, i);
        assert!((up.coefficient - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(up.state.unwrap().counts(), &[2]);

        let f1 = OccupationVector::fermion(vec![1]).unwrap();
        let blocked = apply_creation(&f1, i);
        assert_eq!(blocked.coefficient, 0.0);
        assert!(blocked.state.is_none());

        let b0 = OccupationVector::boson(vec![0]);
        let up = apply_creation(&b0, i);
        assert_eq!(up.coefficient, 1.0);
        assert_eq!(up.state.unwrap().counts(), &[1]);

        let b2 = OccupationVector::boson(vec![2]);
        let down = apply_annihilation(&b2, i);
        assert!((down.coefficient - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(down.state.as_ref().unwrap().counts(), &[1]);

        let vac = apply_annihilation(&b0, i);
        assert_eq!(vac.coefficient, 0.0);
        assert!(vac.state.is_none());

        let down = apply_annihilation(&b1, i);
        assert_eq!(down.coefficient, 1.0);
        assert_eq!(down.state.unwrap().counts(), &[0]);
    }

    #[test]
    fn number_operator_is_creation_after_annihilation() {
        let idx = gf::index();
        let silver = idx.term_id("silver").unwrap();
        let d2 = &idx.docs()[1].vector;
        assert_eq!(occupation_number(d2, silver), 2);
        assert_eq!(occupation_number(d2, idx.term_id("fire").unwrap()), 0);

        let down = apply_annihilation(d2, silver);
        let up = apply_creation(down.state.as_ref().unwrap(), silver);
        assert!((down.coefficient * up.coefficient - 2.0).abs() < 1e-12);
        assert_eq!(up.state.as_ref(), Some(d2));
    }

    #[test]
    fn fermion_constructor_rejects_counts_above_one() {
        assert!(OccupationVector::fermion(vec![0, 2]).is_err());
        let f = OccupationVector::boson(vec![0, 3, 1]).to_fermion();
        assert_eq!(f.counts(), &[0, 1, 1]);
        assert_eq!(f.kind(), Statistics::Fermion);
    }
}
