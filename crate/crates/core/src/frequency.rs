//! Word frequencies, concept probabilities and information content.
//!
//! A word's corpus count is split evenly over its senses in the loaded
//! taxonomy. Internal nodes take the largest probability (smallest
//! information content) found among the words beneath them, so a parent is
//! never more informative than any of its children.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::taxonomy::{fold_case, ConceptId, NodeKind, Taxonomy};

#[derive(Debug, Error, PartialEq)]
pub enum FrequencyError {
    #[error("line {line}: malformed line: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: count `{value}` is not a nonnegative number")]
    BadCount { line: usize, value: String },
    #[error("line {line}: {message}")]
    Io { line: usize, message: String },
    #[error("corpus size must be positive (got {0})")]
    NonPositiveTotal(f64),
    #[error("corpus size {total} is smaller than the count {count} of `{word}`")]
    TotalBelowCount {
        total: f64,
        count: f64,
        word: String,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("`{0}` has no senses in the taxonomy")]
    UnknownWord(String),
    #[error("taxonomy has no word nodes")]
    NoWords,
    #[error("concept {id} (`{label}`) has no words beneath it")]
    EmptyConcept { id: ConceptId, label: String },
}

/// Corpus counts keyed by case-folded word, plus the corpus size.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyTable {
    counts: HashMap<String, f64>,
    total_n: f64,
}

impl FrequencyTable {
    /// Read `<word>\t<count>` lines. Duplicate words are summed and the corpus
    /// size is the sum of every count.
    pub fn ingest<R: BufRead>(reader: R) -> Result<Self, FrequencyError> {
        let mut counts: HashMap<String, f64> = HashMap::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| FrequencyError::Io {
                line: line_no,
                message: e.to_string(),
            })?;
            let line = line.strip_suffix('\r').unwrap_or(&line);
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let (word, count) =
                line.rsplit_once('\t')
                    .ok_or_else(|| FrequencyError::Malformed {
                        line: line_no,
                        reason: "expected `<word>\\t<count>`".into(),
                    })?;
            if word.is_empty() {
                return Err(FrequencyError::Malformed {
                    line: line_no,
                    reason: "empty word".into(),
                });
            }
            let value = parse_count(count).ok_or_else(|| FrequencyError::BadCount {
                line: line_no,
                value: count.to_string(),
            })?;
            *counts.entry(fold_case(word)).or_insert(0.0) += value;
        }
        let total: f64 = counts.values().sum();
        Self::from_counts(counts, total)
    }

    pub fn ingest_str(text: &str) -> Result<Self, FrequencyError> {
        Self::ingest(text.as_bytes())
    }

    /// Build from explicit counts; keys are case-folded and merged.
    pub fn from_counts<I, S>(counts: I, total_n: f64) -> Result<Self, FrequencyError>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: AsRef<str>,
    {
        let mut merged: HashMap<String, f64> = HashMap::new();
        for (word, count) in counts {
            if !(count.is_finite() && count >= 0.0) {
                return Err(FrequencyError::InvalidConfig(format!(
                    "count {count} for `{}`",
                    word.as_ref()
                )));
            }
            *merged.entry(fold_case(word.as_ref())).or_insert(0.0) += count;
        }
        let mut table = FrequencyTable {
            counts: merged,
            total_n: 0.0,
        };
        table.set_total_n(total_n)?;
        Ok(table)
    }

    /// Override the corpus size. It must be positive and no smaller than any count.
    pub fn with_total_n(mut self, total_n: f64) -> Result<Self, FrequencyError> {
        self.set_total_n(total_n)?;
        Ok(self)
    }

    fn set_total_n(&mut self, total_n: f64) -> Result<(), FrequencyError> {
        if !(total_n.is_finite() && total_n > 0.0) {
            return Err(FrequencyError::NonPositiveTotal(total_n));
        }
        if let Some((word, &count)) = self
            .counts
            .iter()
            .filter(|(_, &c)| c > total_n)
            .min_by(|a, b| a.0.cmp(b.0))
        {
            return Err(FrequencyError::TotalBelowCount {
                total: total_n,
                count,
                word: word.clone(),
            });
        }
        self.total_n = total_n;
        Ok(())
    }

    /// Raw count for `word`, 0 when absent.
    pub fn count(&self, word: &str) -> f64 {
        self.counts.get(&fold_case(word)).copied().unwrap_or(0.0)
    }

    pub fn total_n(&self) -> f64 {
        self.total_n
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

fn parse_count(s: &str) -> Option<f64> {
    let s = s.trim();
    // only plain decimals; rejects inf, nan, exponents and signs
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit() || b == b'.') {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// How internal nodes get their probability.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IcMode {
    /// Largest word probability in the subtree (smallest IC).
    #[default]
    Min,
    /// Cumulative: summed word probability over the subtree, capped at 1.
    /// Non-default; kept for comparison.
    Sum,
}

impl FromStr for IcMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(IcMode::Min),
            "sum" => Ok(IcMode::Sum),
            other => Err(format!("unknown ic mode `{other}` (expected min or sum)")),
        }
    }
}

impl fmt::Display for IcMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IcMode::Min => "min",
            IcMode::Sum => "sum",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IcConfig {
    pub log_base: f64,
    /// Count substituted for words with a smaller (or missing) count.
    pub freq_floor: f64,
    pub mode: IcMode,
}

impl Default for IcConfig {
    fn default() -> Self {
        IcConfig {
            log_base: 2.0,
            freq_floor: 1.0,
            mode: IcMode::Min,
        }
    }
}

impl IcConfig {
    pub fn validate(&self) -> Result<(), FrequencyError> {
        if !(self.log_base.is_finite() && self.log_base > 1.0) {
            return Err(FrequencyError::InvalidConfig(format!(
                "log base must be > 1 (got {})",
                self.log_base
            )));
        }
        if !(self.freq_floor.is_finite() && self.freq_floor > 0.0) {
            return Err(FrequencyError::InvalidConfig(format!(
                "frequency floor must be positive (got {})",
                self.freq_floor
            )));
        }
        Ok(())
    }

    /// `-log_base(p)`.
    pub fn information(&self, p: f64) -> f64 {
        let ic = if self.log_base == 2.0 {
            -p.log2()
        } else if self.log_base == std::f64::consts::E {
            -p.ln()
        } else if self.log_base == 10.0 {
            -p.log10()
        } else {
            -p.ln() / self.log_base.ln()
        };
        // -log(1) is -0.0
        ic + 0.0
    }
}

fn check_floor(freq: &FrequencyTable, cfg: &IcConfig) -> Result<(), FrequencyError> {
    cfg.validate()?;
    if cfg.freq_floor > freq.total_n() {
        return Err(FrequencyError::InvalidConfig(format!(
            "frequency floor {} exceeds corpus size {}",
            cfg.freq_floor,
            freq.total_n()
        )));
    }
    Ok(())
}

/// Probability of one sense of `word`, with the count split over its senses.
fn sense_probability(freq: &FrequencyTable, word: &str, senses: usize, cfg: &IcConfig) -> f64 {
    freq.count(word).max(cfg.freq_floor) / (senses as f64 * freq.total_n())
}

/// Information content of a single sense of `word`.
pub fn word_sense_ic(
    freq: &FrequencyTable,
    taxonomy: &Taxonomy,
    word: &str,
    cfg: &IcConfig,
) -> Result<f64, FrequencyError> {
    check_floor(freq, cfg)?;
    let senses = taxonomy.senses(word).len();
    if senses == 0 {
        return Err(FrequencyError::UnknownWord(word.to_string()));
    }
    Ok(cfg.information(sense_probability(freq, word, senses, cfg)))
}

/// Probability and information content for every node of a taxonomy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IcTable {
    node_p: Vec<f64>,
    node_ic: Vec<f64>,
    config: IcConfig,
}

impl IcTable {
    /// Compute probabilities bottom-up over `taxonomy`.
    pub fn compute(
        taxonomy: &Taxonomy,
        freq: &FrequencyTable,
        cfg: &IcConfig,
    ) -> Result<Self, FrequencyError> {
        check_floor(freq, cfg)?;
        if taxonomy.word_count() == 0 {
            return Err(FrequencyError::NoWords);
        }
        let nodes = taxonomy.nodes();
        let mut node_p = vec![f64::NAN; nodes.len()];
        let mut sense_cache: HashMap<&str, f64> = HashMap::new();

        // children always carry larger ids than their parent
        for node in nodes.iter().rev() {
            let p = match node.kind {
                NodeKind::Word => *sense_cache.entry(node.label.as_str()).or_insert_with(|| {
                    let senses = taxonomy.senses(&node.label).len();
                    sense_probability(freq, &node.label, senses, cfg)
                }),
                NodeKind::Internal => {
                    if node.children.is_empty() {
                        return Err(FrequencyError::EmptyConcept {
                            id: node.id,
                            label: node.label.clone(),
                        });
                    }
                    let child_p = node.children.iter().map(|c| node_p[c.index()]);
                    match cfg.mode {
                        IcMode::Min => child_p.fold(0.0, f64::max),
                        IcMode::Sum => child_p.sum::<f64>().min(1.0),
                    }
                }
            };
            node_p[node.id.index()] = p;
        }

        let node_ic = node_p.iter().map(|&p| cfg.information(p)).collect();
        Ok(IcTable {
            node_p,
            node_ic,
            config: *cfg,
        })
    }

    pub fn ic(&self, id: ConceptId) -> f64 {
        self.node_ic[id.index()]
    }

    pub fn probability(&self, id: ConceptId) -> f64 {
        self.node_p[id.index()]
    }

    pub fn config(&self) -> &IcConfig {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.node_ic.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_ic.is_empty()
    }

    /// (probability, ic) for each node in id order.
    pub fn iter(&self) -> impl Iterator<Item = (ConceptId, f64, f64)> + '_ {
        self.node_p
            .iter()
            .zip(&self.node_ic)
            .enumerate()
            .map(|(i, (&p, &ic))| (ConceptId(i as u32), p, ic))
    }
}
