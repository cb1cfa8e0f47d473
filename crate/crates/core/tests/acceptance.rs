use std::collections::BTreeMap;

use fockrank::boolquery::{eval_boolean, parse, to_dnf, QueryAst};
use fockrank::corpus::TermId;
use fockrank::eigenkit::{gram_cols, gram_rows, jacobi_eigen, svd_via_gram, Matrix, RankSpec};
use fockrank::gf;
use fockrank::lsimetric::{
    cluster_by_ron, corpus_metric, distance_matrix, lsi_rank, lsi_sc, metric_tensor,
    ReducedDocVector,
};
use fockrank::rankers::{
    boolean_select, docspace_rank, extbool_rank, fuzzy_membership, fuzzy_membership_corr,
    fuzzy_rank_algebraic, fuzzy_rank_minmax, keyword_correlation, prob_rank, vsm_rank, ExtWeights,
    Measure, PNorm, RankedList, RelevancePriors, WeightingScheme,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Verdict {
    n: u32,
    lines: Vec<(bool, String)>,
}

impl Verdict {
    fn new(n: u32) -> Self {
        Self {
            n,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.lines.push((ok, what.into()));
    }

    fn near(&mut self, what: &str, want: f64, got: f64, tol: f64) {
        self.check(
            (want - got).abs() <= tol,
            format!("{what}: want {want} got {got:.6} tol {tol:e}"),
        );
    }

    fn finish(self) {
        for (ok, l) in &self.lines {
            println!("  [{}] {l}", if *ok { "ok" } else { "MISS" });
        }
        let pass = self.lines.iter().all(|(ok, _)| *ok);
        println!(
            "criterion {}: {}",
            self.n,
            if pass { "PASS" } else { "FAIL" }
        );
        assert!(pass, "criterion {} failed", self.n);
    }
}

fn r3(x: f64) -> String {
    format!("{x:.3}")
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
fn criterion_01_singular_values() {
    let mut v = Verdict::new(1);
    let idx = gf::index();
    let f = svd_via_gram(&idx.term_document_matrix(), RankSpec::Auto).unwrap();
    v.check(f.rank() == 3, format!("rank {}", f.rank()));
    for (a, &want) in gf::SINGULAR_VALUES.iter().enumerate() {
        v.near(&format!("S{}", a + 1), want, f.singular_values()[a], 5e-4);
    }
    v.finish();
}

#[test]
fn criterion_02_lsi_scores() {
    let mut v = Verdict::new(2);
    let idx = gf::index();
    for (r, want) in [(2, gf::LSI_SC_R2), (3, gf::LSI_SC_R3)] {
        let ranked = lsi_rank(&idx, gf::QUERY, RankSpec::Fixed(r)).unwrap();
        for (doc, w) in ["d1", "d2", "d3"].iter().zip(want) {
            v.near(
                &format!("r={r} SC({doc},q)"),
                w,
                ranked.score_of(doc).unwrap(),
                5e-3,
            );
        }
        v.check(
            ranked.doc_ids() == gf::LSI_ORDER,
            format!("r={r} order {:?}", ranked.doc_ids()),
        );
    }
    v.finish();
}

#[test]
fn criterion_03_metric_tensor() {
    let mut v = Verdict::new(3);
    let idx = gf::index();
    for (r, table) in [(3, &gf::METRIC_R3), (2, &gf::METRIC_R2)] {
        let (_, g) = corpus_metric(&idx, RankSpec::Fixed(r)).unwrap();
        let top: f64 = format!("{:.4}", g.g()[(0, 0)]).parse().unwrap();
        v.near(&format!("r={r} g[1][1] rounded"), table[0][0], top, 5e-3);
        let mut worst = 0.0f64;
        for i in 0..11 {
            for j in 0..11 {
                worst = worst.max((g.g()[(i, j)] - table[i][j]).abs());
            }
        }
        v.check(worst <= 5e-3, format!("r={r} max entry error {worst:.2e}"));
    }
    v.finish();
}

#[test]
fn criterion_04_fuzzy_memberships() {
    let mut v = Verdict::new(4);
    let idx = gf::index();
    let mu = fuzzy_membership(&idx).unwrap();
    for (b, row) in gf::MEMBERSHIP_TABLE.iter().enumerate() {
        for (i, &want) in row.iter().enumerate() {
            let got = mu.get(TermId(i), b);
            if r3(got) != r3(want) {
                v.check(
                    false,
                    format!(
                        "mu[{}][d{}] = {} want {}",
                        gf::VOCABULARY[i],
                        b + 1,
                        r3(got),
                        r3(want)
                    ),
                );
            }
        }
    }
    v.check(
        r3(mu.get(idx.term_id("gold").unwrap(), 0)) == "0.143",
        "mu(gold,d1) = 0.143",
    );
    v.check(
        r3(mu.get(idx.term_id("silver").unwrap(), 1)) == "0.250",
        "mu(silver,d2) = 0.25",
    );
    let r = fuzzy_rank_minmax(&idx, &parse(gf::FUZZY_QUERY).unwrap()).unwrap();
    for (doc, want) in ["d1", "d2", "d3"].iter().zip(gf::FUZZY_SCORES) {
        let got = r.score_of(doc).unwrap();
        v.check(
            r3(got) == r3(want),
            format!("fuzzy {doc}: {} want {}", r3(got), r3(want)),
        );
    }
    v.finish();
}

#[test]
fn criterion_05_boolean_query() {
    let mut v = Verdict::new(5);
    let hits = boolean_select(&gf::index(), &parse(gf::BOOLEAN_QUERY).unwrap());
    v.check(
        hits == gf::BOOLEAN_HITS,
        format!("{} -> {hits:?}", gf::BOOLEAN_QUERY),
    );
    v.finish();
}

#[test]
fn criterion_06_sphere_distances() {
    let mut v = Verdict::new(6);
    let (_, g) = corpus_metric(&gf::index(), RankSpec::Fixed(2)).unwrap();
    let dm = distance_matrix(&g, &gf_points()).unwrap();
    let labels = gf::DISTANCE_LABELS;
    for i in 0..4 {
        for j in (i + 1)..4 {
            let got = dm.get(labels[i], labels[j]).unwrap();
            v.near(
                &format!("d({},{})", labels[i], labels[j]),
                gf::DISTANCES_R2[i][j],
                got,
                2e-3,
            );
        }
    }
    let symmetric = (0..4)
        .all(|i| dm.d[i][i] == 0.0 && (0..4).all(|j| dm.d[i][j].to_bits() == dm.d[j][i].to_bits()));
    v.check(symmetric, "exactly symmetric with zero diagonal");
    v.finish();
}

#[test]
fn criterion_07_ron_clusters() {
    let mut v = Verdict::new(7);
    let (_, g) = corpus_metric(&gf::index(), RankSpec::Fixed(2)).unwrap();
    let dm = distance_matrix(&g, &gf_points()).unwrap();
    let wide = cluster_by_ron(&dm, gf::RON_WIDE).clusters;
    v.check(
        wide == [vec!["d1", "d3"], vec!["d2", "q"]],
        format!("ron={} {wide:?}", gf::RON_WIDE),
    );
    let narrow = cluster_by_ron(&dm, gf::RON_NARROW).clusters;
    v.check(
        narrow == [vec!["d1"], vec!["d2", "q"], vec!["d3"]],
        format!("ron={} {narrow:?}", gf::RON_NARROW),
    );
    v.finish();
}

#[test]
fn criterion_08_idf_row() {
    let mut v = Verdict::new(8);
    let idx = gf::index();
    for (i, &want) in gf::IDF_ROW.iter().enumerate() {
        let got = idx.idf(TermId(i));
        v.check(
            r3(got) == r3(want),
            format!("idf({}) {} want {}", gf::VOCABULARY[i], r3(got), r3(want)),
        );
    }
    v.finish();
}

fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| f64::from(rng.gen_range(0u32..5)))
}

fn orthonormality_error(m: &Matrix) -> f64 {
    let mut worst = 0.0f64;
    for a in 0..m.cols() {
        for b in 0..m.cols() {
            let dot: f64 = (0..m.rows()).map(|i| m[(i, a)] * m[(i, b)]).sum();
            let want = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((dot - want).abs());
        }
    }
    worst
}

fn flat_queries() -> Vec<String> {
    let subsets: [&[&str]; 4] = [
        &["gold", "silver"],
        &["gold", "truck"],
        &["silver", "truck"],
        &["gold", "silver", "truck"],
    ];
    let mut out = Vec::new();
    for s in subsets {
        out.push(s.join(" | "));
        out.push(s.join(" & "));
    }
    out
}

fn twelve_variable_formulas() -> Vec<QueryAst> {
    [
        "(x0 | x1) & (x2 | !x3) & (x4 | x5) & !(x6 & x7) & (x8 | x9 | !x10) & (x11 | x0)",
        "!((x0 & x1) | (x2 & x3) | (x4 & x5)) | (x6 & !x7 & (x8 | x9)) | !(x10 | x11)",
        "(x0 & !x0) | (x1 & x2 & x3 & x4 & x5 & x6 & x7 & x8 & x9 & x10 & x11)",
        "!(!(x0 | x1 | x2) & (x3 | !(x4 & x5))) & (x6 | x7) & !(x8 & (x9 | x10 | x11))",
    ]
    .iter()
    .map(|s| parse(s).unwrap())
    .collect()
}

#[test]
fn criterion_09_property_suites() {
    let mut v = Verdict::new(9);
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    let mut orth = 0.0f64;
    let mut recon = 0.0f64;
    let mut spectrum = 0.0f64;
    for _ in 0..50 {
        let a = random_int_matrix(&mut rng, 6, 4);
        let l = gram_rows(&a);
        let r = gram_cols(&a);
        let el = jacobi_eigen(&l).unwrap();
        let er = jacobi_eigen(&r).unwrap();
        orth = orth
            .max(orthonormality_error(&el.vectors))
            .max(orthonormality_error(&er.vectors));
        let top = el.values[0].max(1.0);
        for k in 0..4 {
            if er.values[k] > 1e-10 * top {
                spectrum = spectrum.max((el.values[k] - er.values[k]).abs() / er.values[k]);
            }
        }
        let norm = a.frobenius_norm();
        if norm > 0.0 {
            let f = svd_via_gram(&a, RankSpec::Auto).unwrap();
            recon = recon.max(f.reconstruct().max_abs_diff(&a).unwrap() / norm);
            orth = orth
                .max(orthonormality_error(f.u()))
                .max(orthonormality_error(f.v()));
        }
    }
    v.check(
        orth <= 1e-10,
        format!("eigen/singular vector orthonormality {orth:.2e}"),
    );
    v.check(
        recon <= 1e-8,
        format!("full-rank reconstruction / ||A||_F {recon:.2e}"),
    );
    v.check(
        spectrum <= 1e-8,
        format!("L/R nonzero spectrum relative gap {spectrum:.2e}"),
    );

    let idx = gf::index();
    let q = idx.query_vector(gf::QUERY).vector.as_f64();
    let mut two_path = 0.0f64;
    for r in [1, 2, 3] {
        let (f, g) = corpus_metric(&idx, RankSpec::Fixed(r)).unwrap();
        let qr = ReducedDocVector::new(&f, r, &q).unwrap();
        for d in idx.docs() {
            let x = d.vector.as_f64();
            let dr = ReducedDocVector::new(&f, r, &x).unwrap();
            two_path = two_path.max((lsi_sc(&g, &x, &q).unwrap() - dr.cosine(&qr)).abs());
        }
    }
    v.check(
        two_path <= 1e-10,
        format!("two-path SC equivalence {two_path:.2e}"),
    );

    let (f, g) = corpus_metric(&idx, RankSpec::Auto).unwrap();
    let mut flip = 0.0f64;
    for a in 0..f.rank() {
        let mut flipped = f.clone();
        flipped.flip_sign(a);
        let h = metric_tensor(&flipped, f.rank()).unwrap();
        flip = flip.max(h.g().as_matrix().max_abs_diff(g.g().as_matrix()).unwrap());
    }
    v.check(
        flip <= 1e-12,
        format!("sign-flip invariance of g {flip:.2e}"),
    );

    let mut dnf_mismatch = 0usize;
    for ast in twelve_variable_formulas() {
        let dnf = to_dnf(&ast).unwrap();
        let vars: Vec<String> = ast.terms().into_iter().map(String::from).collect();
        for mask in 0u32..(1 << vars.len()) {
            let on: BTreeMap<&str, bool> = vars
                .iter()
                .enumerate()
                .map(|(k, t)| (t.as_str(), mask & (1 << k) != 0))
                .collect();
            let present = |t: &str| on[t];
            if eval_boolean(&ast, &present) != dnf.eval(&present) {
                dnf_mismatch += 1;
            }
        }
    }
    v.check(
        dnf_mismatch == 0,
        format!("DNF/AST mismatches over 12 variables: {dnf_mismatch}"),
    );

    for text in flat_queries() {
        let ast = parse(&text).unwrap();
        let ranked = extbool_rank(&idx, &ast, PNorm::Infinity, ExtWeights::Binary).unwrap();
        let agrees = idx.docs().iter().enumerate().all(|(b, d)| {
            let present = |t: &str| idx.term_id(t).is_some_and(|id| idx.tf(id, b) > 0);
            let want = if eval_boolean(&ast, &present) {
                1.0
            } else {
                0.0
            };
            ranked.score_of(&d.id) == Some(want)
        });
        v.check(agrees, format!("extbool p=inf equals Boolean for {text}"));
    }

    let uniform = prob_rank(&idx, gf::QUERY, &RelevancePriors::uniform(&idx, 0.5)).unwrap();
    v.check(
        uniform.entries().iter().all(|e| e.score == 0.0),
        "prob_rank zero under uniform 0.5 priors",
    );
    v.finish();
}

fn oracle() -> Value {
    serde_json::from_str(include_str!("data/gf_oracle.json")).unwrap()
}

fn compare(v: &mut Verdict, what: &str, ranked: &RankedList, want: &Value) {
    for doc in ["d1", "d2", "d3"] {
        let w = want[doc].as_f64().unwrap();
        let got = ranked.score_of(doc).unwrap();
        v.check(
            (w - got).abs() <= 1e-9,
            format!("{what} {doc}: oracle {w} got {got}"),
        );
    }
}

#[test]
fn criterion_10_oracle_agreement() {
    let mut v = Verdict::new(10);
    let o = oracle();
    let idx = gf::index();
    let q = o["query"].as_str().unwrap();

    compare(
        &mut v,
        "docspace",
        &docspace_rank(&idx, q).unwrap(),
        &o["docspace"],
    );

    for (scheme, sname) in [
        (WeightingScheme::TfIdf, "tf-idf"),
        (WeightingScheme::GoodPerformer, "good-performer"),
    ] {
        for (measure, mname) in [
            (Measure::Cosine, "cosine"),
            (Measure::CosineSquared, "cosine2"),
        ] {
            let key = format!("{sname}/{mname}");
            compare(
                &mut v,
                &format!("vsm {key}"),
                &vsm_rank(&idx, q, scheme, measure).unwrap(),
                &o["vsm"][&key],
            );
        }
    }

    let mu_tf = fuzzy_membership(&idx).unwrap();
    let mu_corr = fuzzy_membership_corr(&idx, &keyword_correlation(&idx));
    let table = o["fuzzy_algebraic"].as_object().unwrap();
    v.check(
        table.len() == 6,
        format!("{} fuzzy oracle entries", table.len()),
    );
    for (key, want) in table {
        let (kind, query) = key.split_once('/').unwrap();
        let mu = if kind == "tf" { &mu_tf } else { &mu_corr };
        let ranked = fuzzy_rank_algebraic(&idx, &parse(query).unwrap(), mu).unwrap();
        compare(&mut v, &format!("fuzzy-alg {key}"), &ranked, want);
    }
    v.finish();
}
