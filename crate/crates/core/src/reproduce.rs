//! Recomputes every reference number of the gold-silver-truck example and
//! compares it with the stored value.

use std::fmt;

use crate::boolquery::parse;
use crate::corpus::TermId;
use crate::eigenkit::RankSpec;
use crate::format::fmt_fixed;
use crate::gf;
use crate::lsimetric::{cluster_by_ron, corpus_metric, distance_matrix, lsi_rank, LsiError};
use crate::rankers::{boolean_select, fuzzy_membership, fuzzy_rank_minmax, RankError};

pub const SINGULAR_VALUE_TOL: f64 = 5e-4;
pub const SCORE_TOL: f64 = 5e-3;
pub const METRIC_TOL: f64 = 5e-3;
pub const DISTANCE_TOL: f64 = 2e-3;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub got: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status}  {}  expected {}  got {}",
            self.label, self.expected, self.got
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, label: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.label == label)
    }

    fn exact(&mut self, label: impl Into<String>, expected: String, got: String) {
        let passed = expected == got;
        self.checks.push(Check {
            label: label.into(),
            expected,
            got,
            passed,
        });
    }

    fn near(&mut self, label: impl Into<String>, expected: f64, got: f64, tol: f64) {
        self.checks.push(Check {
            label: label.into(),
            expected: format!("{expected:.4} ± {tol:e}"),
            got: fmt_fixed(got, 6),
            passed: (expected - got).abs() <= tol,
        });
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReproduceError {
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error(transparent)]
    Lsi(#[from] LsiError),
}

fn joined<S: AsRef<str>>(xs: &[S]) -> String {
    xs.iter()
        .map(|s| s.as_ref())
        .collect::<Vec<_>>()
        .join(" > ")
}

fn clusters_text(c: &[Vec<String>]) -> String {
    c.iter()
        .map(|g| format!("{{{}}}", g.join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run() -> Result<Report, ReproduceError> {
    let idx = gf::index();
    let mut report = Report::default();

    let idf: Vec<String> = (0..idx.n_terms())
        .map(|i| fmt_fixed(idx.idf(TermId(i)), 3))
        .collect();
    let want: Vec<String> = gf::IDF_ROW.iter().map(|&x| fmt_fixed(x, 3)).collect();
    report.exact("idf row", want.join(" "), idf.join(" "));

    let mu = fuzzy_membership(&idx)?;
    for (b, row) in gf::MEMBERSHIP_TABLE.iter().enumerate() {
        let got: Vec<String> = (0..idx.n_terms())
            .map(|i| fmt_fixed(mu.get(TermId(i), b), 3))
            .collect();
        let want: Vec<String> = row.iter().map(|&x| fmt_fixed(x, 3)).collect();
        report.exact(
            format!("membership {}", idx.docs()[b].id),
            want.join(" "),
            got.join(" "),
        );
    }

    let fuzzy = fuzzy_rank_minmax(&idx, &parse(gf::FUZZY_QUERY).map_err(RankError::from)?)?;
    for (doc, want) in ["d1", "d2", "d3"].iter().zip(gf::FUZZY_SCORES) {
        let got = fuzzy.score_of(doc).unwrap_or(f64::NAN);
        report.exact(
            format!("fuzzy score {doc}"),
            fmt_fixed(want, 3),
            fmt_fixed(got, 3),
        );
    }

    let hits = boolean_select(&idx, &parse(gf::BOOLEAN_QUERY).map_err(RankError::from)?);
    report.exact(
        "boolean selection",
        gf::BOOLEAN_HITS.join(","),
        hits.join(","),
    );

    let l = idx.left_matrix();
    let n = idx.n_terms();
    let got: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}", l[(i, j)]))
        .collect();
    let want: Vec<String> = gf::LEFT_MATRIX
        .iter()
        .flatten()
        .map(|x| x.to_string())
        .collect();
    report.exact("left matrix", want.join(" "), got.join(" "));

    let (factors, g3) = corpus_metric(&idx, RankSpec::Fixed(3))?;
    for (a, &want) in gf::SINGULAR_VALUES.iter().enumerate() {
        let got = factors
            .singular_values()
            .get(a)
            .copied()
            .unwrap_or(f64::NAN);
        report.near(
            format!("singular value S{}", a + 1),
            want,
            got,
            SINGULAR_VALUE_TOL,
        );
    }

    let (_, g2) = corpus_metric(&idx, RankSpec::Fixed(2))?;
    for (r, g, table) in [(3, &g3, &gf::METRIC_R3), (2, &g2, &gf::METRIC_R2)] {
        let mut worst = (0.0f64, 0, 0);
        for i in 0..n {
            for j in 0..n {
                let e = (g.g()[(i, j)] - table[i][j]).abs();
                if e > worst.0 {
                    worst = (e, i, j);
                }
            }
        }
        report.near(
            format!("metric r={r} g[1][1]"),
            table[0][0],
            g.g()[(0, 0)],
            METRIC_TOL,
        );
        let (e, i, j) = worst;
        report.checks.push(Check {
            label: format!("metric r={r} all entries"),
            expected: format!("max error ≤ {METRIC_TOL:e}"),
            got: format!("{} at [{}][{}]", fmt_fixed(e, 6), i + 1, j + 1),
            passed: e <= METRIC_TOL,
        });
    }

    for (r, want) in [(3, gf::LSI_SC_R3), (2, gf::LSI_SC_R2)] {
        let ranked = lsi_rank(&idx, gf::QUERY, RankSpec::Fixed(r))?;
        for (doc, w) in ["d1", "d2", "d3"].iter().zip(want) {
            let got = ranked.score_of(doc).unwrap_or(f64::NAN);
            report.near(format!("lsi r={r} SC({doc},q)"), w, got, SCORE_TOL);
        }
        report.exact(
            format!("lsi r={r} order"),
            joined(&gf::LSI_ORDER),
            joined(&ranked.doc_ids()),
        );
    }

    let mut points = vec![(
        gf::QUERY_LABEL.to_string(),
        idx.query_vector(gf::QUERY).vector.as_f64(),
    )];
    points.extend(idx.docs().iter().map(|d| (d.id.clone(), d.vector.as_f64())));
    let dm = distance_matrix(&g2, &points)?;
    for i in 0..gf::DISTANCE_LABELS.len() {
        for j in (i + 1)..gf::DISTANCE_LABELS.len() {
            let (a, b) = (gf::DISTANCE_LABELS[i], gf::DISTANCE_LABELS[j]);
            let got = dm.get(a, b).unwrap_or(f64::NAN);
            report.near(
                format!("distance r=2 d({a},{b})"),
                gf::DISTANCES_R2[i][j],
                got,
                DISTANCE_TOL,
            );
        }
    }

    for (ron, want) in [
        (gf::RON_WIDE, "{d1,d3} {d2,q}"),
        (gf::RON_NARROW, "{d1} {d2,q} {d3}"),
    ] {
        let c = cluster_by_ron(&dm, ron);
        report.exact(
            format!("clusters ron={ron}"),
            want.to_string(),
            clusters_text(&c.clusters),
        );
    }

    Ok(report)
}
