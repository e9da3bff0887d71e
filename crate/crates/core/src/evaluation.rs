//! Benchmark harness: human-rated word pairs, linear transforms and Pearson
//! correlation reports.

use std::fmt;
use std::io::{self, Read, Write};
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{MetricError, MetricKind, Scorer};

const TABLE1_CSV: &str = include_str!("../data/table1.csv");

/// Pseudo-path that selects the embedded Miller-Charles fixture.
pub const BUILTIN_TABLE1: &str = "builtin:table1";

/// Largest edge count between two groups in the thesaurus.
pub const DEFAULT_MAX_EDGES: f64 = 12.0;
/// Entries in the flat thesaurus word list.
pub const DEFAULT_LEXICON_SIZE: f64 = 199_427.0;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StatsError {
    #[error("length mismatch: {0} vs {1} values")]
    LengthMismatch(usize, usize),
    #[error("need at least 2 values, got {0}")]
    TooFewPoints(usize),
    #[error("degenerate input: zero variance")]
    ZeroVariance,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("pairs file: {0}")]
    Csv(#[from] csv::Error),
    #[error("pairs file: missing header column `{0}`")]
    MissingColumn(&'static str),
    #[error("pairs file row {row}: `{column}` value `{value}` is not a number")]
    NonNumeric {
        row: usize,
        column: String,
        value: String,
    },
    #[error("pairs file row {row}: `{column}` = {value} outside the 0-4 rating scale")]
    OutOfRange {
        row: usize,
        column: String,
        value: f64,
    },
    #[error("pairs file row {row}: `{column}` is empty")]
    MissingValue { row: usize, column: String },
    #[error("column `{0}` not in fixture")]
    UnknownColumn(String),
    #[error("column `{column}`: {source}")]
    Stats {
        column: String,
        #[source]
        source: StatsError,
    },
    #[error("only {0} usable pairs; need at least 2")]
    TooFewPairs(usize),
    #[error("pair {index} ({word1}, {word2}): {source}")]
    Metric {
        index: usize,
        word1: String,
        word2: String,
        #[source]
        source: MetricError,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl EvalError {
    /// True for zero-variance or too-little-data failures.
    pub fn is_degenerate(&self) -> bool {
        matches!(self, EvalError::Stats { .. } | EvalError::TooFewPairs(_))
    }
}

/// Sample Pearson product-moment correlation.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch(xs.len(), ys.len()));
    }
    let n = xs.len();
    if n < 2 {
        return Err(StatsError::TooFewPoints(n));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n as f64;
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::ZeroVariance);
    }
    Ok(sxy / (sxx.sqrt() * syy.sqrt()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    #[default]
    Identity,
    /// `constant - v`
    MaxMinus,
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct TransformSpec {
    pub kind: TransformKind,
    pub constant: f64,
}

impl TransformSpec {
    pub const IDENTITY: TransformSpec = TransformSpec {
        kind: TransformKind::Identity,
        constant: 0.0,
    };

    pub fn max_minus(constant: f64) -> Self {
        TransformSpec {
            kind: TransformKind::MaxMinus,
            constant,
        }
    }

    pub fn apply(&self, v: f64) -> f64 {
        match self.kind {
            TransformKind::Identity => v,
            TransformKind::MaxMinus => self.constant - v,
        }
    }
}

/// Per-column transforms; columns not listed pass through unchanged.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Transforms(IndexMap<String, TransformSpec>);

impl Transforms {
    pub fn none() -> Self {
        Transforms::default()
    }

    /// Edge counts become `max_edges - edges`, intervening-word counts become
    /// `lexicon_size - words`, for both the fixture columns and live metrics.
    pub fn standard(max_edges: f64, lexicon_size: f64) -> Self {
        let edges = TransformSpec::max_minus(max_edges);
        let words = TransformSpec::max_minus(lexicon_size);
        Transforms::none()
            .with("roget_edges", edges)
            .with(MetricKind::EdgeDistance.name(), edges)
            .with("intervening", words)
            .with(MetricKind::InterveningWords.name(), words)
    }

    pub fn with(mut self, column: &str, spec: TransformSpec) -> Self {
        self.0.insert(column.to_string(), spec);
        self
    }

    pub fn get(&self, column: &str) -> TransformSpec {
        self.0
            .get(column)
            .copied()
            .unwrap_or(TransformSpec::IDENTITY)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HumanColumn {
    /// Miller & Charles means.
    #[default]
    Mc,
    /// Replication ratings.
    Repl,
}

impl HumanColumn {
    pub fn name(self) -> &'static str {
        match self {
            HumanColumn::Mc => "human_mc",
            HumanColumn::Repl => "human_repl",
        }
    }
}

impl FromStr for HumanColumn {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mc" => Ok(HumanColumn::Mc),
            "repl" => Ok(HumanColumn::Repl),
            other => Err(format!(
                "unknown human column `{other}` (expected mc or repl)"
            )),
        }
    }
}

impl fmt::Display for HumanColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HumanColumn::Mc => "mc",
            HumanColumn::Repl => "repl",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub word1: String,
    pub word2: String,
    pub human_mc: f64,
    pub human_repl: Option<f64>,
    pub columns: IndexMap<String, Option<f64>>,
}

impl PairRecord {
    pub fn human(&self, which: HumanColumn) -> Option<f64> {
        match which {
            HumanColumn::Mc => Some(self.human_mc),
            HumanColumn::Repl => self.human_repl,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkFixture {
    pub pairs: Vec<PairRecord>,
    /// Extra columns in header order.
    pub column_names: Vec<String>,
    pub provenance: String,
}

impl BenchmarkFixture {
    /// Load a pairs CSV: `word1,word2,human_mc[,human_repl][,<column>...]`.
    /// Lines starting with `#` are skipped and collected as the provenance note.
    pub fn load<R: Read>(mut reader: R) -> Result<Self, EvalError> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::load_str(&text)
    }

    pub fn load_str(text: &str) -> Result<Self, EvalError> {
        let provenance = text
            .lines()
            .filter_map(|l| l.strip_prefix('#'))
            .map(str::trim)
            .collect::<Vec<_>>()
            .join("\n");
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        let find = |name: &'static str| headers.iter().position(|h| h == name);
        let w1 = find("word1").ok_or(EvalError::MissingColumn("word1"))?;
        let w2 = find("word2").ok_or(EvalError::MissingColumn("word2"))?;
        let mc = find("human_mc").ok_or(EvalError::MissingColumn("human_mc"))?;
        let repl = find("human_repl");
        let extra: Vec<usize> = (0..headers.len())
            .filter(|&i| i != w1 && i != w2 && i != mc && Some(i) != repl)
            .collect();

        let mut pairs = Vec::new();
        for (idx, record) in rdr.records().enumerate() {
            let record = record?;
            let row = idx + 1;
            let cell = |i: usize| record.get(i).unwrap_or("");
            let number = |i: usize| -> Result<Option<f64>, EvalError> {
                let raw = cell(i);
                if raw.is_empty() {
                    return Ok(None);
                }
                raw.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .map(Some)
                    .ok_or_else(|| EvalError::NonNumeric {
                        row,
                        column: headers[i].clone(),
                        value: raw.to_string(),
                    })
            };
            let rating = |i: usize| -> Result<Option<f64>, EvalError> {
                let v = number(i)?;
                match v {
                    Some(v) if !(0.0..=4.0).contains(&v) => Err(EvalError::OutOfRange {
                        row,
                        column: headers[i].clone(),
                        value: v,
                    }),
                    _ => Ok(v),
                }
            };
            let human_mc = rating(mc)?.ok_or_else(|| EvalError::MissingValue {
                row,
                column: "human_mc".into(),
            })?;
            let human_repl = repl.map(rating).transpose()?.flatten();
            let mut columns = IndexMap::new();
            for &i in &extra {
                columns.insert(headers[i].clone(), number(i)?);
            }
            pairs.push(PairRecord {
                word1: cell(w1).to_string(),
                word2: cell(w2).to_string(),
                human_mc,
                human_repl,
                columns,
            });
        }
        Ok(BenchmarkFixture {
            pairs,
            column_names: extra.iter().map(|&i| headers[i].clone()).collect(),
            provenance,
        })
    }

    /// The 28 Miller-Charles pairs with WordNet and Roget's results.
    pub fn table1() -> Self {
        Self::load_str(TABLE1_CSV).expect("embedded fixture is well-formed")
    }

    /// `builtin:table1` or a file path.
    pub fn open(spec: &str) -> Result<Self, EvalError> {
        if spec == BUILTIN_TABLE1 {
            return Ok(Self::table1());
        }
        Self::load(std::fs::File::open(spec)?)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Values of one numeric column, `human_mc` and `human_repl` included.
    pub fn column(&self, name: &str) -> Result<Vec<Option<f64>>, EvalError> {
        let values = match name {
            "human_mc" => self.pairs.iter().map(|p| Some(p.human_mc)).collect(),
            "human_repl" => self.pairs.iter().map(|p| p.human_repl).collect(),
            _ if self.column_names.iter().any(|c| c == name) => self
                .pairs
                .iter()
                .map(|p| p.columns.get(name).copied().flatten())
                .collect(),
            _ => return Err(EvalError::UnknownColumn(name.to_string())),
        };
        Ok(values)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRow {
    /// Position in the fixture.
    pub index: usize,
    pub word1: String,
    pub word2: String,
    pub human: f64,
    /// Aligned with `EvalReport::columns`.
    pub raw: Vec<f64>,
    pub transformed: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub human: HumanColumn,
    /// Rows that entered every correlation.
    pub n_pairs: usize,
    /// Rows dropped for a missing value or an unknown word.
    pub dropped: usize,
    pub correlations: IndexMap<String, f64>,
    pub columns: Vec<String>,
    pub transforms: Vec<TransformSpec>,
    pub per_pair: Vec<PairRow>,
}

impl EvalReport {
    pub fn r(&self, column: &str) -> Option<f64> {
        self.correlations.get(column).copied()
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)
    }

    /// One row per column: `column,r,n_pairs`.
    pub fn write_correlations_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["column", "r", "n_pairs"])?;
        for (column, r) in &self.correlations {
            w.write_record([column.as_str(), &r.to_string(), &self.n_pairs.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Per-pair table with raw and transformed values for each column.
    pub fn write_pairs_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![
            "index".to_string(),
            "word1".into(),
            "word2".into(),
            self.human.name().into(),
        ];
        for c in &self.columns {
            header.push(format!("{c}_raw"));
            header.push(format!("{c}_transformed"));
        }
        w.write_record(&header)?;
        for row in &self.per_pair {
            let mut rec = vec![
                row.index.to_string(),
                row.word1.clone(),
                row.word2.clone(),
                row.human.to_string(),
            ];
            for (raw, tr) in row.raw.iter().zip(&row.transformed) {
                rec.push(raw.to_string());
                rec.push(tr.to_string());
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Rows of raw values (one per column), `None` where a value is missing.
struct Grid {
    columns: Vec<String>,
    rows: Vec<(usize, Option<f64>, Vec<Option<f64>>)>,
}

fn correlate(
    fixture: &BenchmarkFixture,
    grid: Grid,
    human: HumanColumn,
    transforms: &Transforms,
    mut dropped: usize,
) -> Result<EvalReport, EvalError> {
    let specs: Vec<TransformSpec> = grid.columns.iter().map(|c| transforms.get(c)).collect();
    let mut per_pair = Vec::new();
    for (index, h, raw) in grid.rows {
        let (Some(h), Some(raw)) = (h, raw.into_iter().collect::<Option<Vec<f64>>>()) else {
            dropped += 1;
            continue;
        };
        let pair = &fixture.pairs[index];
        let transformed = raw.iter().zip(&specs).map(|(v, s)| s.apply(*v)).collect();
        per_pair.push(PairRow {
            index,
            word1: pair.word1.clone(),
            word2: pair.word2.clone(),
            human: h,
            raw,
            transformed,
        });
    }
    if per_pair.len() < 2 {
        return Err(EvalError::TooFewPairs(per_pair.len()));
    }

    let humans: Vec<f64> = per_pair.iter().map(|r| r.human).collect();
    let mut correlations = IndexMap::new();
    for (i, column) in grid.columns.iter().enumerate() {
        let xs: Vec<f64> = per_pair.iter().map(|r| r.transformed[i]).collect();
        let r = pearson(&xs, &humans).map_err(|source| EvalError::Stats {
            column: column.clone(),
            source,
        })?;
        correlations.insert(column.clone(), r);
    }
    Ok(EvalReport {
        human,
        n_pairs: per_pair.len(),
        dropped,
        correlations,
        columns: grid.columns,
        transforms: specs,
        per_pair,
    })
}

/// Correlate each stored metric column of `fixture` against the human ratings.
///
/// Rows with a missing value in any column are dropped from every correlation.
pub fn run_precomputed(
    fixture: &BenchmarkFixture,
    human: HumanColumn,
    transforms: &Transforms,
) -> Result<EvalReport, EvalError> {
    let columns: Vec<String> = fixture.column_names.clone();
    run_columns(fixture, &columns, human, transforms)
}

/// Like [`run_precomputed`] but over a chosen set of columns.
pub fn run_columns(
    fixture: &BenchmarkFixture,
    columns: &[String],
    human: HumanColumn,
    transforms: &Transforms,
) -> Result<EvalReport, EvalError> {
    let data: Vec<Vec<Option<f64>>> = columns
        .iter()
        .map(|c| fixture.column(c))
        .collect::<Result<_, _>>()?;
    let rows = fixture
        .pairs
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p.human(human), data.iter().map(|col| col[i]).collect()))
        .collect();
    correlate(
        fixture,
        Grid {
            columns: columns.to_vec(),
            rows,
        },
        human,
        transforms,
        0,
    )
}

/// What `run_live` does with a pair whose word is not in the taxonomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum UnknownWords {
    #[default]
    Fail,
    Skip,
}

/// Score every fixture pair with each metric over a loaded taxonomy and
/// correlate against the human ratings.
pub fn run_live(
    scorer: &Scorer<'_>,
    fixture: &BenchmarkFixture,
    metrics: &[MetricKind],
    transforms: &Transforms,
    human: HumanColumn,
    unknown: UnknownWords,
) -> Result<EvalReport, EvalError> {
    let mut rows = Vec::with_capacity(fixture.len());
    let mut dropped = 0;
    'pairs: for (index, pair) in fixture.pairs.iter().enumerate() {
        let mut values = Vec::with_capacity(metrics.len());
        for &m in metrics {
            match scorer.score(m, &pair.word1, &pair.word2) {
                Ok(s) => values.push(Some(s.value)),
                Err(MetricError::UnknownWord(_)) if unknown == UnknownWords::Skip => {
                    dropped += 1;
                    continue 'pairs;
                }
                Err(source) => {
                    return Err(EvalError::Metric {
                        index,
                        word1: pair.word1.clone(),
                        word2: pair.word2.clone(),
                        source,
                    })
                }
            }
        }
        rows.push((index, pair.human(human), values));
    }
    let columns = metrics.iter().map(|m| m.name().to_string()).collect();
    correlate(fixture, Grid { columns, rows }, human, transforms, dropped)
}
