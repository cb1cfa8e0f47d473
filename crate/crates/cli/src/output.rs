use clap::ValueEnum;
use fockrank::format::fmt_score;
use fockrank::lsimetric::{ClusterAssignment, DistanceMatrix};
use fockrank::rankers::RankedList;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Csv,
    Json,
}

impl Format {
    fn sep(self) -> &'static str {
        match self {
            Format::Csv => ",",
            _ => "\t",
        }
    }
}

pub enum Cell {
    Text(String),
    Num(f64),
    Count(usize),
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Count(n)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(x) => fmt_score(*x),
            Cell::Count(n) => n.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => json!(s),
            Cell::Num(x) => json!({ "value": x, "display": fmt_score(*x) }),
            Cell::Count(n) => json!(n),
        }
    }
}

/// Headerless rows for tsv/csv; an array of objects keyed by column for json.
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<const N: usize>(columns: [&'static str; N]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        if format == Format::Json {
            let rows: Vec<Value> = self
                .rows
                .iter()
                .map(|r| {
                    let obj = self
                        .columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.to_string(), v.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            return pretty(&Value::Array(rows));
        }
        let mut out = String::new();
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(Cell::text).collect();
            out.push_str(&cells.join(format.sep()));
            out.push('\n');
        }
        out
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn ranking(r: &RankedList, format: Format) -> String {
    let mut t = Table::new(["doc_id", "score"]);
    for e in r.entries() {
        t.row(vec![e.doc_id.clone().into(), e.score.into()]);
    }
    t.render(format)
}

pub fn distances(dm: &DistanceMatrix, format: Format) -> String {
    if format == Format::Json {
        let d: Vec<Vec<Value>> =
            dm.d.iter()
                .map(|row| row.iter().map(|&x| Cell::Num(x).json()).collect())
                .collect();
        return pretty(&json!({ "labels": dm.labels, "d": d }));
    }
    let sep = format.sep();
    let mut out = String::new();
    out.push_str(&format!("{sep}{}\n", dm.labels.join(sep)));
    for (label, row) in dm.labels.iter().zip(&dm.d) {
        let cells: Vec<String> = row.iter().map(|&x| fmt_score(x)).collect();
        out.push_str(&format!("{label}{sep}{}\n", cells.join(sep)));
    }
    out
}

pub fn clusters(c: &ClusterAssignment, format: Format) -> String {
    if format == Format::Json {
        return pretty(&json!({ "ron": c.ron, "clusters": c.clusters }));
    }
    let mut out = String::new();
    for members in &c.clusters {
        out.push_str(&members.join(format.sep()));
        out.push('\n');
    }
    out
}
