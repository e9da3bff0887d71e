//! Word-pair similarity and distance measures.
//!
//! Every measure looks at all sense pairs of the two words and reports the
//! best one: the smallest distance or the largest similarity. Ties go to the
//! first pair in sense order, so `chosen_senses` is deterministic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frequency::IcTable;
use crate::taxonomy::{ConceptId, Taxonomy};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("unknown metric `{0}` (expected edge, intervening, wpe, resnik or jcn)")]
    UnknownMetric(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    /// Edges between the groups holding the two words.
    EdgeDistance,
    /// Word entries between the two words in flat order.
    InterveningWords,
    /// Intervening words per edge, for the closest sense pair.
    WordsPerEdge,
    /// IC of the most informative common subsumer.
    ResnikIC,
    /// `IC(a) + IC(b) - 2 IC(LS(a, b))`.
    JiangConrathDist,
}

impl MetricKind {
    pub const ALL: [MetricKind; 5] = [
        MetricKind::EdgeDistance,
        MetricKind::InterveningWords,
        MetricKind::WordsPerEdge,
        MetricKind::ResnikIC,
        MetricKind::JiangConrathDist,
    ];

    pub fn polarity(self) -> Polarity {
        match self {
            MetricKind::ResnikIC => Polarity::Similarity,
            _ => Polarity::Distance,
        }
    }

    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::EdgeDistance => "edge",
            MetricKind::InterveningWords => "intervening",
            MetricKind::WordsPerEdge => "wpe",
            MetricKind::ResnikIC => "resnik",
            MetricKind::JiangConrathDist => "jcn",
        }
    }

    pub fn needs_ic(self) -> bool {
        matches!(self, MetricKind::ResnikIC | MetricKind::JiangConrathDist)
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = MetricError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "edge" | "edges" => MetricKind::EdgeDistance,
            "intervening" | "words" => MetricKind::InterveningWords,
            "wpe" | "words-per-edge" => MetricKind::WordsPerEdge,
            "resnik" | "ic" => MetricKind::ResnikIC,
            "jcn" | "jiang-conrath" => MetricKind::JiangConrathDist,
            other => return Err(MetricError::UnknownMetric(other.to_string())),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Similarity,
    Distance,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Similarity => "similarity",
            Polarity::Distance => "distance",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairScore {
    pub metric: MetricKind,
    pub value: f64,
    pub polarity: Polarity,
    /// The sense pair that realised `value`.
    pub chosen_senses: (ConceptId, ConceptId),
}

fn sense_pairs<'t>(
    taxonomy: &'t Taxonomy,
    w1: &str,
    w2: &str,
) -> Result<impl Iterator<Item = (ConceptId, ConceptId)> + Clone + 't, MetricError> {
    let s1 = taxonomy.senses(w1);
    if s1.is_empty() {
        return Err(MetricError::UnknownWord(w1.to_string()));
    }
    let s2 = taxonomy.senses(w2);
    if s2.is_empty() {
        return Err(MetricError::UnknownWord(w2.to_string()));
    }
    Ok(s1
        .iter()
        .flat_map(move |&a| s2.iter().map(move |&b| (a, b))))
}

/// First pair minimising `key`.
fn best_by<K: PartialOrd + Copy>(
    pairs: impl Iterator<Item = (ConceptId, ConceptId)>,
    key: impl Fn(ConceptId, ConceptId) -> K,
) -> ((ConceptId, ConceptId), K) {
    let mut best: Option<((ConceptId, ConceptId), K)> = None;
    for (a, b) in pairs {
        let k = key(a, b);
        if best.as_ref().is_none_or(|(_, bk)| k < *bk) {
            best = Some(((a, b), k));
        }
    }
    best.expect("sense lists are non-empty")
}

fn score(metric: MetricKind, value: f64, chosen: (ConceptId, ConceptId)) -> PairScore {
    PairScore {
        metric,
        value,
        polarity: metric.polarity(),
        chosen_senses: chosen,
    }
}

fn intervening(t: &Taxonomy, a: ConceptId, b: ConceptId) -> u32 {
    t.intervening_count(a, b).expect("senses are word nodes")
}

pub fn metric_edge(t: &Taxonomy, w1: &str, w2: &str) -> Result<PairScore, MetricError> {
    let (pair, d) = best_by(sense_pairs(t, w1, w2)?, |a, b| t.group_distance(a, b));
    Ok(score(MetricKind::EdgeDistance, f64::from(d), pair))
}

pub fn metric_intervening(t: &Taxonomy, w1: &str, w2: &str) -> Result<PairScore, MetricError> {
    let (pair, n) = best_by(sense_pairs(t, w1, w2)?, |a, b| intervening(t, a, b));
    Ok(score(MetricKind::InterveningWords, f64::from(n), pair))
}

/// Density of the closest sense pair: intervening words divided by edges,
/// 0 for words in the same group. Among pairs at the minimum edge count the
/// one with the fewest intervening words is used.
pub fn metric_words_per_edge(t: &Taxonomy, w1: &str, w2: &str) -> Result<PairScore, MetricError> {
    let (pair, (edges, between)) = best_by(sense_pairs(t, w1, w2)?, |a, b| {
        (t.group_distance(a, b), intervening(t, a, b))
    });
    let value = if edges == 0 {
        0.0
    } else {
        f64::from(between) / f64::from(edges)
    };
    Ok(score(MetricKind::WordsPerEdge, value, pair))
}

pub fn metric_resnik(
    t: &Taxonomy,
    ic: &IcTable,
    w1: &str,
    w2: &str,
) -> Result<PairScore, MetricError> {
    let (pair, neg) = best_by(sense_pairs(t, w1, w2)?, |a, b| {
        -ic.ic(t.lowest_super_ordinate(a, b))
    });
    Ok(score(MetricKind::ResnikIC, -neg + 0.0, pair))
}

pub fn metric_jiang_conrath(
    t: &Taxonomy,
    ic: &IcTable,
    w1: &str,
    w2: &str,
) -> Result<PairScore, MetricError> {
    let (pair, d) = best_by(sense_pairs(t, w1, w2)?, |a, b| {
        jiang_conrath_distance(t, ic, a, b)
    });
    Ok(score(MetricKind::JiangConrathDist, d, pair))
}

/// Distance between two concepts from their IC and their lowest super-ordinate's IC.
pub fn jiang_conrath_distance(t: &Taxonomy, ic: &IcTable, a: ConceptId, b: ConceptId) -> f64 {
    if a == b {
        return 0.0;
    }
    ic.ic(a) + ic.ic(b) - 2.0 * ic.ic(t.lowest_super_ordinate(a, b))
}

/// A taxonomy with an optional IC table, so any metric can be asked for by kind.
#[derive(Clone, Copy, Debug)]
pub struct Scorer<'a> {
    pub taxonomy: &'a Taxonomy,
    pub ic: Option<&'a IcTable>,
}

impl<'a> Scorer<'a> {
    pub fn new(taxonomy: &'a Taxonomy, ic: &'a IcTable) -> Self {
        Scorer {
            taxonomy,
            ic: Some(ic),
        }
    }

    /// A scorer for the structural metrics only.
    pub fn structural(taxonomy: &'a Taxonomy) -> Self {
        Scorer { taxonomy, ic: None }
    }

    /// # Panics
    ///
    /// When an IC-based metric is requested from a structural scorer.
    pub fn score(&self, metric: MetricKind, w1: &str, w2: &str) -> Result<PairScore, MetricError> {
        let t = self.taxonomy;
        match metric {
            MetricKind::EdgeDistance => metric_edge(t, w1, w2),
            MetricKind::InterveningWords => metric_intervening(t, w1, w2),
            MetricKind::WordsPerEdge => metric_words_per_edge(t, w1, w2),
            MetricKind::ResnikIC => metric_resnik(t, self.require_ic(), w1, w2),
            MetricKind::JiangConrathDist => metric_jiang_conrath(t, self.require_ic(), w1, w2),
        }
    }

    fn require_ic(&self) -> &'a IcTable {
        self.ic
            .expect("IC-based metric requested without an IC table")
    }
}
