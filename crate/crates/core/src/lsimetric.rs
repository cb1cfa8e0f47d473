//! Latent semantic ranking through an SVD-derived metric tensor.
//!
//! With `k′ₐ` the leading left singular vectors of the term-document matrix and
//! `Sₐ` the singular values, the metric on term space is
//!
//! ```text
//! g = Σ_{a=1..r} (1/Sₐ²) · k′ₐ k′ₐᵀ
//! ```
//!
//! so that `xᵀ g y` equals the Euclidean inner product of the reduced vectors
//! `(x·k′ₐ / Sₐ)ₐ`. Documents and queries are ranked by the cosine under `g`,
//! and mapped onto the `g`-unit sphere to measure chord distances between them.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::CorpusIndex;
use crate::eigenkit::{svd_via_gram, EigenError, Matrix, RankSpec, SvdFactors, SymmetricMatrix};
use crate::rankers::RankedList;

/// A vector whose metric self-inner-product is at most this fraction of
/// `max|g| · ‖x‖²` is treated as lying in the null space of `g`.
pub const NULL_NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LsiError {
    #[error("vector has zero length under the metric")]
    NullVector,
    #[error("dimension mismatch: metric has order {expected}, vector has length {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("query shares no term with the corpus vocabulary")]
    DegenerateQuery,
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

#[derive(Clone, Debug)]
pub struct MetricTensor {
    g: SymmetricMatrix,
    singular_values: Vec<f64>,
}

impl MetricTensor {
    pub fn g(&self) -> &SymmetricMatrix {
        &self.g
    }

    pub fn rank(&self) -> usize {
        self.singular_values.len()
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }
}

/// Builds `g` from the leading `r` triplets of `factors`.
pub fn metric_tensor(factors: &SvdFactors, r: usize) -> Result<MetricTensor, LsiError> {
    let f = factors.truncate(r)?;
    let u = f.u();
    let s = f.singular_values();
    let g = SymmetricMatrix::from_upper(u.rows(), |j, l| {
        (0..r).map(|a| u[(j, a)] * u[(l, a)] / (s[a] * s[a])).sum()
    });
    Ok(MetricTensor {
        g,
        singular_values: s.to_vec(),
    })
}

fn check_len(g: &MetricTensor, x: &[f64]) -> Result<(), LsiError> {
    if x.len() != g.order() {
        return Err(LsiError::DimensionMismatch {
            expected: g.order(),
            found: x.len(),
        });
    }
    Ok(())
}

/// `xᵀ g y`, summed row by row in index order.
pub fn metric_inner(g: &MetricTensor, x: &[f64], y: &[f64]) -> Result<f64, LsiError> {
    check_len(g, x)?;
    check_len(g, y)?;
    let m = g.g.as_matrix();
    Ok(x.iter()
        .enumerate()
        .map(|(j, xj)| xj * m.row(j).iter().zip(y).map(|(a, b)| a * b).sum::<f64>())
        .sum())
}

fn metric_norm(g: &MetricTensor, x: &[f64]) -> Result<f64, LsiError> {
    let self_inner = metric_inner(g, x, x)?;
    let scale = g.g.as_matrix().max_abs() * x.iter().map(|v| v * v).sum::<f64>();
    if self_inner.is_nan() || self_inner <= NULL_NORM_TOLERANCE * scale {
        return Err(LsiError::NullVector);
    }
    Ok(self_inner.sqrt())
}

/// Cosine of the angle between `d` and `q` under the metric; may be negative.
pub fn lsi_sc(g: &MetricTensor, d: &[f64], q: &[f64]) -> Result<f64, LsiError> {
    let dn = metric_norm(g, d)?;
    let qn = metric_norm(g, q)?;
    Ok(metric_inner(g, d, q)? / (dn * qn))
}

/// Components `(1/Sₐ)·⟨x|k′ₐ⟩` of `x` in the reduced `r`-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDocVector(pub Vec<f64>);

impl ReducedDocVector {
    pub fn new(factors: &SvdFactors, r: usize, x: &[f64]) -> Result<Self, LsiError> {
        let f = factors.truncate(r)?;
        if x.len() != f.u().rows() {
            return Err(LsiError::DimensionMismatch {
                expected: f.u().rows(),
                found: x.len(),
            });
        }
        let u = f.u();
        Ok(Self(
            (0..r)
                .map(|a| {
                    let dot: f64 = x.iter().enumerate().map(|(i, xi)| xi * u[(i, a)]).sum();
                    dot / f.singular_values()[a]
                })
                .collect(),
        ))
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Euclidean cosine with `other`.
    pub fn cosine(&self, other: &Self) -> f64 {
        self.dot(other) / (self.dot(self).sqrt() * other.dot(other).sqrt())
    }
}

/// Full pipeline: SVD of the term-document matrix, metric of rank `r`, metric cosine per document.
pub fn lsi_rank(
    index: &CorpusIndex,
    query_text: &str,
    r: RankSpec,
) -> Result<RankedList, LsiError> {
    let (g, q) = lsi_setup(index, query_text, r)?;
    let scores = index
        .docs()
        .iter()
        .map(|d| Ok((d.id.clone(), lsi_sc(&g, &d.vector.as_f64(), &q)?)))
        .collect::<Result<Vec<_>, LsiError>>()?;
    Ok(RankedList::new(scores))
}

/// SVD of the corpus and its metric at rank `r`.
pub fn corpus_metric(
    index: &CorpusIndex,
    r: RankSpec,
) -> Result<(SvdFactors, MetricTensor), LsiError> {
    let factors = svd_via_gram(&index.term_document_matrix(), RankSpec::Auto)?;
    let rank = match r {
        RankSpec::Auto => factors.rank(),
        RankSpec::Fixed(r) => r,
    };
    let g = metric_tensor(&factors, rank)?;
    Ok((factors, g))
}

fn lsi_setup(
    index: &CorpusIndex,
    query_text: &str,
    r: RankSpec,
) -> Result<(MetricTensor, Vec<f64>), LsiError> {
    let q = index.query_vector(query_text).vector;
    if q.is_vacuum() {
        return Err(LsiError::DegenerateQuery);
    }
    let (_, g) = corpus_metric(index, r)?;
    Ok((g, q.as_f64()))
}

/// Scales each vector to unit length under the metric.
pub fn sphere_map(g: &MetricTensor, vectors: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, LsiError> {
    vectors
        .iter()
        .map(|x| {
            let n = metric_norm(g, x)?;
            Ok(x.iter().map(|v| v / n).collect())
        })
        .collect()
}

/// Chord distance `√(2 − 2⟨v₁|g|v₂⟩)` between two metric-unit vectors, clamped to `[0, 2]`.
pub fn sphere_distance(g: &MetricTensor, v1: &[f64], v2: &[f64]) -> Result<f64, LsiError> {
    let cos = metric_inner(g, v1, v2)?;
    Ok((2.0 - 2.0 * cos).max(0.0).sqrt().min(2.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub d: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        Some(self.d[i][j])
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.d).expect("distance rows are square")
    }
}

/// Pairwise sphere distances of labeled points after [`sphere_map`].
/// The upper triangle is computed and mirrored, the diagonal is exactly zero.
pub fn distance_matrix(
    g: &MetricTensor,
    points: &[(String, Vec<f64>)],
) -> Result<DistanceMatrix, LsiError> {
    let raw: Vec<Vec<f64>> = points.iter().map(|(_, v)| v.clone()).collect();
    let unit = sphere_map(g, &raw)?;
    let n = unit.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let x = sphere_distance(g, &unit[i], &unit[j])?;
            d[i][j] = x;
            d[j][i] = x;
        }
    }
    Ok(DistanceMatrix {
        labels: points.iter().map(|(l, _)| l.clone()).collect(),
        d,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusterAssignment {
    /// Each cluster's members sorted; clusters ordered by their smallest member.
    pub clusters: Vec<Vec<String>>,
    pub ron: f64,
}

/// Connected components of the graph joining points whose neighborhoods of
/// radius `ron` intersect, i.e. whose distance is at most `2·ron`.
pub fn cluster_by_ron(dm: &DistanceMatrix, ron: f64) -> ClusterAssignment {
    let n = dm.labels.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if dm.d[i][j] <= 2.0 * ron {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(dm.labels[i].clone());
    }
    let mut clusters: Vec<Vec<String>> = groups
        .into_values()
        .map(|mut g| {
            g.sort();
            g
        })
        .collect();
    clusters.sort();
    ClusterAssignment { clusters, ron }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf;

    fn gf_metric(r: usize) -> (SvdFactors, MetricTensor) {
        corpus_metric(&gf::index(), RankSpec::Fixed(r)).unwrap()
    }

    fn gf_points() -> Vec<(String, Vec<f64>)> {
        let idx = gf::index();
        let mut pts = vec![(
            gf::QUERY_LABEL.to_string(),
            idx.query_vector(gf::QUERY).vector.as_f64(),
        )];
        pts.extend(idx.docs().iter().map(|d| (d.id.clone(), d.vector.as_f64())));
        pts
    }

    #[test]
    fn metric_top_left_entries() {
        let (_, g3) = gf_metric(3);
        assert!((g3.g()[(0, 0)] - 0.0127).abs() < 5e-3);
        let (_, g2) = gf_metric(2);
        assert!((g2.g()[(0, 0)] - 0.0114).abs() < 5e-3);
    }

    #[test]
    fn identity_corpus_gives_identity_metric() {
        let f = svd_via_gram(&Matrix::identity(3), RankSpec::Auto).unwrap();
        let g = metric_tensor(&f, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g.g()[(i, j)] - want).abs() < 1e-14);
            }
        }
        let x = [1.0, 2.0, 3.0];
        let y = [0.5, -1.0, 2.0];
        assert!((metric_inner(&g, &x, &y).unwrap() - 4.5).abs() < 1e-13);
    }

    #[test]
    fn metric_rank_errors() {
        let (f, _) = gf_metric(3);
        assert!(matches!(
            metric_tensor(&f, 0),
            Err(LsiError::Eigen(EigenError::BadRank { .. }))
        ));
        assert!(matches!(
            metric_tensor(&f, 4),
            Err(LsiError::Eigen(EigenError::BadRank { .. }))
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let (_, g) = gf_metric(2);
        assert_eq!(
            metric_inner(&g, &[1.0], &[1.0]),
            Err(LsiError::DimensionMismatch {
                expected: 11,
                found: 1
            })
        );
    }

    #[test]
    fn gf_scores_and_order() {
        let idx = gf::index();
        for (r, want) in [(2, gf::LSI_SC_R2), (3, gf::LSI_SC_R3)] {
            let ranked = lsi_rank(&idx, gf::QUERY, RankSpec::Fixed(r)).unwrap();
            assert_eq!(ranked.doc_ids(), gf::LSI_ORDER);
            for (doc, w) in ["d1", "d2", "d3"].iter().zip(want) {
                assert!(
                    (ranked.score_of(doc).unwrap() - w).abs() < 5e-3,
                    "r={r} {doc}"
                );
            }
        }
    }

    #[test]
    fn self_cosine_is_one() {
        let (_, g) = gf_metric(2);
        let d = gf::index().docs()[0].vector.as_f64();
        assert!((lsi_sc(&g, &d, &d).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn null_space_vector_rejected() {
        let (f, g) = gf_metric(1);
        // orthogonal to the single retained axis
        let k2 = f.term_axis(1);
        let d = gf::index().docs()[0].vector.as_f64();
        assert_eq!(lsi_sc(&g, &k2, &d), Err(LsiError::NullVector));
        assert_eq!(lsi_sc(&g, &[0.0; 11], &d), Err(LsiError::NullVector));
    }

    #[test]
    fn degenerate_query() {
        assert_eq!(
            lsi_rank(&gf::index(), "platinum", RankSpec::Auto),
            Err(LsiError::DegenerateQuery)
        );
    }

    #[test]
    fn sphere_map_produces_unit_vectors() {
        let (_, g) = gf_metric(2);
        let pts: Vec<Vec<f64>> = gf_points().into_iter().map(|p| p.1).collect();
        let unit = sphere_map(&g, &pts).unwrap();
        for v in &unit {
            assert!((metric_inner(&g, v, v).unwrap() - 1.0).abs() < 1e-10);
        }
        let again = sphere_map(&g, &unit).unwrap();
        for (a, b) in unit.iter().zip(&again) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn distance_endpoints() {
        let (_, g) = gf_metric(2);
        let d = gf::index().docs()[0].vector.as_f64();
        let v = &sphere_map(&g, &[d]).unwrap()[0];
        assert_eq!(sphere_distance(&g, v, v).unwrap(), 0.0);
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        assert!((sphere_distance(&g, v, &neg).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn gf_distance_matrix_is_symmetric() {
        let (_, g) = gf_metric(2);
        let dm = distance_matrix(&g, &gf_points()).unwrap();
        for i in 0..4 {
            assert_eq!(dm.d[i][i], 0.0);
            for j in 0..4 {
                assert_eq!(dm.d[i][j].to_bits(), dm.d[j][i].to_bits());
            }
        }
        assert!((dm.get("q", "d2").unwrap() - 0.1326).abs() < 2e-3);
    }

    #[test]
    fn gf_clusters() {
        let (_, g) = gf_metric(2);
        let dm = distance_matrix(&g, &gf_points()).unwrap();
        let wide = cluster_by_ron(&dm, gf::RON_WIDE);
        assert_eq!(wide.clusters, vec![vec!["d1", "d3"], vec!["d2", "q"]]);
        let narrow = cluster_by_ron(&dm, gf::RON_NARROW);
        assert_eq!(
            narrow.clusters,
            vec![vec!["d1"], vec!["d2", "q"], vec!["d3"]]
        );
        let none = cluster_by_ron(&dm, 0.0);
        assert_eq!(none.clusters.len(), 4);
    }
}
