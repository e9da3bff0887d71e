//! Semantic similarity between words over a thesaurus taxonomy.
//!
//! The crate loads a rooted hierarchy of concepts with words at the leaves
//! ([`taxonomy`]), attaches corpus frequencies and information content to
//! every node ([`frequency`]), scores word pairs with edge counting,
//! intervening words, words per edge, Resnik similarity and Jiang-Conrath
//! distance ([`metrics`]), and correlates those scores with human ratings
//! such as the Miller-Charles pairs ([`evaluation`]).
//!
//! ```
//! use taxosim::{FrequencyTable, IcConfig, IcTable, MetricKind, Scorer, Taxonomy};
//!
//! let t = Taxonomy::parse_str("0\tnode\troot\n1\tnode\tvehicle\n2\tword\tcar\n2\tword\tautomobile\n")?;
//! let f = FrequencyTable::ingest_str("car\t30\nautomobile\t10\n")?;
//! let ic = IcTable::compute(&t, &f, &IcConfig::default())?;
//! let s = Scorer::new(&t, &ic).score(MetricKind::EdgeDistance, "car", "automobile")?;
//! assert_eq!(s.value, 0.0);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod evaluation;
pub mod frequency;
pub mod index;
pub mod metrics;
pub mod taxonomy;

pub use evaluation::{
    pearson, run_live, run_precomputed, BenchmarkFixture, EvalError, EvalReport, HumanColumn,
    TransformSpec, Transforms, UnknownWords,
};
pub use frequency::{word_sense_ic, FrequencyError, FrequencyTable, IcConfig, IcMode, IcTable};
pub use index::{BuildConfig, IndexBundle, IndexError};
pub use metrics::{MetricError, MetricKind, PairScore, Polarity, Scorer};
pub use taxonomy::{ConceptId, Node, NodeKind, Taxonomy, TaxonomyError};
