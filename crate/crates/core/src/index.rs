//! Persisted taxonomy + IC table, with the settings that produced it.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frequency::{FrequencyError, FrequencyTable, IcConfig, IcTable};
use crate::taxonomy::{Taxonomy, TaxonomyError};

/// Bumped whenever the on-disk layout changes.
pub const INDEX_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Taxonomy {
        path: String,
        #[source]
        source: TaxonomyError,
    },
    #[error("{path}: {source}")]
    Frequency {
        path: String,
        #[source]
        source: FrequencyError,
    },
    #[error(transparent)]
    Ic(#[from] FrequencyError),
    #[error("index file: {0}")]
    Format(#[from] serde_json::Error),
    #[error("index format version {found} is not supported (expected {INDEX_FORMAT_VERSION})")]
    Version { found: u32 },
    #[error("index file: IC table has {ic} entries for {nodes} nodes")]
    Inconsistent { ic: usize, nodes: usize },
}

/// Everything that went into a build, echoed into the index file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuildConfig {
    pub taxonomy_path: String,
    pub freq_path: String,
    pub ic: IcConfig,
    /// Corpus size override; `None` means the sum of the counts.
    pub total_n: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexBundle {
    pub format_version: u32,
    pub config: BuildConfig,
    pub taxonomy: Taxonomy,
    pub ic: IcTable,
}

#[derive(Deserialize)]
struct VersionProbe {
    format_version: u32,
}

fn open(path: &str) -> Result<BufReader<File>, IndexError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| IndexError::Io {
            path: path.to_string(),
            source,
        })
}

impl IndexBundle {
    /// Parse both input files and compute the IC table.
    pub fn build(config: BuildConfig) -> Result<Self, IndexError> {
        let taxonomy = Taxonomy::parse(open(&config.taxonomy_path)?).map_err(|source| {
            IndexError::Taxonomy {
                path: config.taxonomy_path.clone(),
                source,
            }
        })?;
        let freq_err = |source| IndexError::Frequency {
            path: config.freq_path.clone(),
            source,
        };
        let mut freq = FrequencyTable::ingest(open(&config.freq_path)?).map_err(freq_err)?;
        if let Some(n) = config.total_n {
            freq = freq.with_total_n(n).map_err(freq_err)?;
        }
        let ic = IcTable::compute(&taxonomy, &freq, &config.ic)?;
        Ok(IndexBundle {
            format_version: INDEX_FORMAT_VERSION,
            config,
            taxonomy,
            ic,
        })
    }

    pub fn write<W: Write>(&self, out: W) -> Result<(), IndexError> {
        let mut out = BufWriter::new(out);
        serde_json::to_writer(&mut out, self)?;
        out.write_all(b"\n")
            .and_then(|_| out.flush())
            .map_err(|source| IndexError::Io {
                path: "<index>".into(),
                source,
            })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), IndexError> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|source| IndexError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.write(file)
    }

    pub fn read<R: Read>(mut input: R) -> Result<Self, IndexError> {
        let mut text = String::new();
        input
            .read_to_string(&mut text)
            .map_err(|source| IndexError::Io {
                path: "<index>".into(),
                source,
            })?;
        let probe: VersionProbe = serde_json::from_str(&text)?;
        if probe.format_version != INDEX_FORMAT_VERSION {
            return Err(IndexError::Version {
                found: probe.format_version,
            });
        }
        let bundle: IndexBundle = serde_json::from_str(&text)?;
        if bundle.ic.len() != bundle.taxonomy.len() {
            return Err(IndexError::Inconsistent {
                ic: bundle.ic.len(),
                nodes: bundle.taxonomy.len(),
            });
        }
        Ok(bundle)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, IndexError> {
        let path = path.as_ref().display().to_string();
        Self::read(open(&path)?)
    }

    /// `concept-path\tprobability\tic` for every node in id order.
    pub fn write_ic_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "concept-path\tprobability\tic")?;
        for (id, p, ic) in self.ic.iter() {
            writeln!(out, "{}\t{p}\t{ic}", self.taxonomy.path(id))?;
        }
        Ok(())
    }
}
