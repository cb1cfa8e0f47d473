use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fockrank::boolquery::{parse, to_dnf, QueryAst, QueryError};
use fockrank::corpus::{build_index, read_jsonl, CorpusIndex, TermId};
use fockrank::eigenkit::RankSpec;
use fockrank::format::{matrix_csv, precision};
use fockrank::lsimetric::{cluster_by_ron, corpus_metric, distance_matrix, lsi_rank, LsiError};
use fockrank::rankers::{
    boolean_select, docspace_rank, extbool_rank, fuzzy_membership, fuzzy_membership_corr,
    fuzzy_rank_algebraic, fuzzy_rank_minmax, keyword_correlation, prob_rank, vsm_rank, ExtWeights,
    Measure, PNorm, RankError, RankedList, RelevancePriors, WeightingScheme,
};
use fockrank::reproduce;

mod output;

use output::{Format, Table};

#[derive(Parser, Debug)]
#[command(
    name = "fockrank",
    version,
    about = "Rank small document collections with classic retrieval models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index a corpus and print its vocabulary statistics
    Ingest {
        #[command(flatten)]
        corpus: CorpusArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Rank the corpus documents against a query
    Rank(RankArgs),
    /// Write the LSI metric tensor as CSV
    Metric {
        #[command(flatten)]
        corpus: CorpusArg,
        #[command(flatten)]
        lsi: LsiArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pairwise unit-sphere distances under the LSI metric
    Distances {
        #[command(flatten)]
        corpus: CorpusArg,
        #[command(flatten)]
        lsi: LsiArgs,
        #[arg(long, value_name = "QUERY")]
        with_query: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Group documents whose RON neighborhoods intersect
    Cluster {
        #[command(flatten)]
        corpus: CorpusArg,
        #[command(flatten)]
        lsi: LsiArgs,
        #[arg(long)]
        ron: f64,
        #[arg(long, value_name = "QUERY")]
        with_query: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Recompute the gold/silver/truck worked example and check every number
    ReproduceGf,
}

#[derive(Args, Debug)]
struct CorpusArg {
    /// JSON Lines file with one {"id", "text"} object per line
    #[arg(long)]
    corpus: PathBuf,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LsiArgs {
    /// Number of singular triplets kept, or "auto" for all nonzero ones
    #[arg(long, default_value = "auto")]
    rank_r: RankSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Vsm,
    Boolean,
    Prob,
    Fuzzy,
    FuzzyAlg,
    Extbool,
    Docspace,
    Lsi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchemeArg {
    TfIdf,
    GoodPerformer,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MeasureArg {
    Cosine,
    Cosine2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MembershipArg {
    /// term frequency over document length
    Tf,
    /// keyword co-occurrence correlation
    Corr,
}

#[derive(Args, Debug)]
struct RankArgs {
    #[command(flatten)]
    corpus: CorpusArg,
    #[arg(long)]
    query: String,
    #[arg(long, value_enum, default_value_t = Model::Vsm)]
    model: Model,
    /// Term weighting (vsm, extbool)
    #[arg(long, value_enum)]
    scheme: Option<SchemeArg>,
    /// Similarity measure (vsm)
    #[arg(long, value_enum)]
    measure: Option<MeasureArg>,
    /// p-norm order, a number >= 1 or "inf" (extbool)
    #[arg(long)]
    p: Option<PNorm>,
    /// Use 0/1 term weights (extbool)
    #[arg(long)]
    binary: bool,
    /// Membership function (fuzzy-alg)
    #[arg(long, value_enum)]
    membership: Option<MembershipArg>,
    /// Rank of the reduced space (lsi)
    #[arg(long)]
    rank_r: Option<RankSpec>,
    /// Print the parsed query and its DNF on stderr
    #[arg(long)]
    explain: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
    Failed,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed => 1,
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
        }
    }
}

impl From<QueryError> for CliError {
    fn from(e: QueryError) -> Self {
        CliError::Usage(format!("query: {e}"))
    }
}

impl From<RankError> for CliError {
    fn from(e: RankError) -> Self {
        match e {
            RankError::Query(q) => q.into(),
            RankError::BadP(_) | RankError::UnsupportedQueryShape => CliError::Usage(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<LsiError> for CliError {
    fn from(e: LsiError) -> Self {
        CliError::Data(e.to_string())
    }
}

fn load(arg: &CorpusArg) -> Result<CorpusIndex, CliError> {
    let file = File::open(&arg.corpus)
        .map_err(|e| CliError::Data(format!("{}: {e}", arg.corpus.display())))?;
    let docs = read_jsonl(BufReader::new(file))
        .map_err(|e| CliError::Data(format!("{}: {e}", arg.corpus.display())))?;
    build_index(docs).map_err(|e| CliError::Data(format!("{}: {e}", arg.corpus.display())))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    let res = match out {
        Some(path) => std::fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| CliError::Data(format!("write failed: {e}")))
}

fn reject_foreign_flags(a: &RankArgs) -> Result<(), CliError> {
    let allowed: &[&str] = match a.model {
        Model::Vsm => &["--scheme", "--measure"],
        Model::Extbool => &["--scheme", "--p", "--binary"],
        Model::FuzzyAlg => &["--membership"],
        Model::Lsi => &["--rank-r"],
        _ => &[],
    };
    let given = [
        ("--scheme", a.scheme.is_some()),
        ("--measure", a.measure.is_some()),
        ("--p", a.p.is_some()),
        ("--binary", a.binary),
        ("--membership", a.membership.is_some()),
        ("--rank-r", a.rank_r.is_some()),
    ];
    for (flag, set) in given {
        if set && !allowed.contains(&flag) {
            let model = a.model.to_possible_value().expect("no skipped variants");
            return Err(CliError::Usage(format!(
                "{flag} does not apply to --model {}",
                model.get_name()
            )));
        }
    }
    if a.binary && a.scheme.is_some() {
        return Err(CliError::Usage(
            "--binary and --scheme are mutually exclusive".into(),
        ));
    }
    Ok(())
}

fn scheme(s: Option<SchemeArg>) -> WeightingScheme {
    match s {
        Some(SchemeArg::GoodPerformer) => WeightingScheme::GoodPerformer,
        _ => WeightingScheme::TfIdf,
    }
}

fn boolean_query(a: &RankArgs) -> Result<QueryAst, CliError> {
    let ast = parse(&a.query)?;
    if a.explain {
        eprintln!("ast: {ast}");
        eprintln!("dnf: {}", to_dnf(&ast)?);
    }
    Ok(ast)
}

fn warn_unknown(index: &CorpusIndex, query: &str) {
    let unknown = index.query_vector(query).unknown;
    if !unknown.is_empty() {
        eprintln!("warning: terms not in the corpus: {}", unknown.join(", "));
    }
}

fn cmd_rank(a: &RankArgs) -> Result<(), CliError> {
    reject_foreign_flags(a)?;
    let index = load(&a.corpus)?;
    warn_unknown(&index, &a.query);
    let ranked: RankedList = match a.model {
        Model::Vsm => {
            let measure = match a.measure {
                Some(MeasureArg::Cosine2) => Measure::CosineSquared,
                _ => Measure::Cosine,
            };
            vsm_rank(&index, &a.query, scheme(a.scheme), measure)?
        }
        Model::Boolean => {
            let hits = boolean_select(&index, &boolean_query(a)?);
            let scores = index.docs().iter().map(|d| {
                let hit = hits.contains(&d.id);
                (d.id.clone(), if hit { 1.0 } else { 0.0 })
            });
            RankedList::new(scores)
        }
        Model::Prob => prob_rank(&index, &a.query, &RelevancePriors::initial(&index))?,
        Model::Fuzzy => fuzzy_rank_minmax(&index, &boolean_query(a)?)?,
        Model::FuzzyAlg => {
            let ast = boolean_query(a)?;
            let mu = match a.membership {
                Some(MembershipArg::Tf) => fuzzy_membership(&index)?,
                _ => fuzzy_membership_corr(&index, &keyword_correlation(&index)),
            };
            fuzzy_rank_algebraic(&index, &ast, &mu)?
        }
        Model::Extbool => {
            let weights = if a.binary {
                ExtWeights::Binary
            } else {
                ExtWeights::Scheme(scheme(a.scheme))
            };
            extbool_rank(
                &index,
                &boolean_query(a)?,
                a.p.unwrap_or(PNorm::Finite(2.0)),
                weights,
            )?
        }
        Model::Docspace => docspace_rank(&index, &a.query)?,
        Model::Lsi => lsi_rank(&index, &a.query, a.rank_r.unwrap_or_default())?,
    };
    emit(a.out.out.as_ref(), &output::ranking(&ranked, a.out.format))
}

fn cmd_ingest(corpus: &CorpusArg, out: &OutputArgs) -> Result<(), CliError> {
    let index = load(corpus)?;
    let mut t = Table::new(["term", "doc_count", "idf"]);
    for (i, v) in index.vocabulary().iter().enumerate() {
        t.row(vec![
            v.term.clone().into(),
            v.doc_count.into(),
            index.idf(TermId(i)).into(),
        ]);
    }
    eprintln!("{} documents, {} terms", index.n_docs(), index.n_terms());
    emit(out.out.as_ref(), &t.render(out.format))
}

fn labeled_points(
    index: &CorpusIndex,
    with_query: Option<&str>,
) -> Result<Vec<(String, Vec<f64>)>, CliError> {
    let mut points = Vec::new();
    if let Some(q) = with_query {
        if index.docs().iter().any(|d| d.id == "q") {
            return Err(CliError::Usage(
                "a document already uses the label \"q\"".into(),
            ));
        }
        warn_unknown(index, q);
        points.push(("q".to_string(), index.query_vector(q).vector.as_f64()));
    }
    points.extend(
        index
            .docs()
            .iter()
            .map(|d| (d.id.clone(), d.vector.as_f64())),
    );
    Ok(points)
}

fn cmd_reproduce() -> Result<(), CliError> {
    let report = reproduce::run().map_err(|e| CliError::Data(e.to_string()))?;
    let mut text = String::new();
    for c in &report.checks {
        text.push_str(&c.to_string());
        text.push('\n');
    }
    let failed = report.failures().count();
    text.push_str(&format!(
        "{} checks, {} failed\n",
        report.checks.len(),
        failed
    ));
    emit(None, &text)?;
    if failed > 0 {
        return Err(CliError::Failed);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ingest { corpus, out } => cmd_ingest(&corpus, &out),
        Command::Rank(a) => cmd_rank(&a),
        Command::Metric { corpus, lsi, out } => {
            let index = load(&corpus)?;
            let (_, g) = corpus_metric(&index, lsi.rank_r)?;
            emit(out.as_ref(), &matrix_csv(g.g().as_matrix(), precision()))
        }
        Command::Distances {
            corpus,
            lsi,
            with_query,
            out,
        } => {
            let index = load(&corpus)?;
            let (_, g) = corpus_metric(&index, lsi.rank_r)?;
            let dm = distance_matrix(&g, &labeled_points(&index, with_query.as_deref())?)?;
            emit(out.out.as_ref(), &output::distances(&dm, out.format))
        }
        Command::Cluster {
            corpus,
            lsi,
            ron,
            with_query,
            out,
        } => {
            if ron.is_nan() || ron < 0.0 {
                return Err(CliError::Usage(format!(
                    "--ron must be non-negative, got {ron}"
                )));
            }
            let index = load(&corpus)?;
            let (_, g) = corpus_metric(&index, lsi.rank_r)?;
            let dm = distance_matrix(&g, &labeled_points(&index, with_query.as_deref())?)?;
            emit(
                out.out.as_ref(),
                &output::clusters(&cluster_by_ron(&dm, ron), out.format),
            )
        }
        Command::ReproduceGf => cmd_reproduce(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) | CliError::Data(m) => eprintln!("error: {m}"),
                CliError::Failed => eprintln!("reproduction failed"),
            }
            ExitCode::from(e.code())
        }
    }
}
