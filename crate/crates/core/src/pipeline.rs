//! End-to-end layer construction: read, extract, link, emit, serialize.
//!
//! Work is split per URL group, article or tweet and mapped in input order,
//! so the result does not depend on the number of worker threads.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;

use crate::archive::{filter_metadata, load_cdx_index, ArchiveError, CdxRecord, WarcReader};
use crate::content::{
    extract_page, parse_news_corpus, parse_tweet_stream, BoilerplateParams, CorpusIoError,
};
use crate::layer::{
    article_link_text, detect_duplicates, document_node, emit_archived_doc, emit_article,
    emit_sameas, emit_tweet, emit_version, enrich_entities, group_versions, is_html_response,
    serialize_layer, version_node, write_layer_file, AnnotationMode, Assignment, Manifest,
};
use crate::linker::{link, Gazetteer, LinkResult, LinkerError, DEFAULT_THRESHOLD, DEFAULT_TIMEOUT};
use crate::rdf::{load_file, GraphStore, LoadError, Term, Triple, UnserializableTerm};
use crate::vocab;

/// Captures with a compressed size at or above this are not processed.
pub const DEFAULT_SIZE_CAP: u64 = 100 * 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    Warc,
    News,
    Tweets,
}

impl CorpusKind {
    pub fn label(self) -> &'static str {
        match self {
            CorpusKind::Warc => "warc",
            CorpusKind::News => "news",
            CorpusKind::Tweets => "tweets",
        }
    }
}

fn default_threshold() -> f64 {
    DEFAULT_THRESHOLD
}

fn default_timeout() -> f64 {
    DEFAULT_TIMEOUT.as_secs_f64()
}

fn default_cap() -> u64 {
    DEFAULT_SIZE_CAP
}

fn default_mode() -> String {
    "compact".into()
}

/// Build configuration, read from a flat TOML file. Relative paths resolve
/// against the file's directory.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildConfig {
    pub corpus: CorpusKind,
    /// CDX files for `warc`, JSON-lines files otherwise.
    pub inputs: Vec<PathBuf>,
    pub gazetteer: PathBuf,
    pub output: PathBuf,
    /// Defaults to the output path with `.manifest.toml` appended.
    #[serde(default)]
    pub manifest: Option<PathBuf>,
    /// Directory holding the WARC files named in the CDX; defaults to the
    /// directory of the first CDX file.
    #[serde(default)]
    pub warc_dir: Option<PathBuf>,
    /// Knowledge base whose facts about linked entities are copied in.
    #[serde(default)]
    pub kb: Option<PathBuf>,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    #[serde(default = "default_timeout")]
    pub timeout_secs: f64,
    #[serde(default = "default_cap")]
    pub size_cap: u64,
    /// Version IRIs become `{base}/{timestamp}/{original_url}`.
    #[serde(default)]
    pub version_url_base: Option<String>,
    #[serde(default = "default_mode")]
    pub annotation_mode: String,
    /// Worker threads; 0 uses all cores.
    #[serde(default)]
    pub threads: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config {path}: {message}")]
    Invalid { path: PathBuf, message: String },
    #[error("config field `{field}`: {path} does not exist")]
    MissingPath { field: &'static str, path: PathBuf },
    #[error("config field `{field}`: {message}")]
    BadValue {
        field: &'static str,
        message: String,
    },
}

impl BuildConfig {
    pub fn load(path: &Path) -> Result<BuildConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.into(),
            source,
        })?;
        let mut config: BuildConfig = toml::from_str(&text).map_err(|e| ConfigError::Invalid {
            path: path.into(),
            message: e.message().to_string(),
        })?;
        config.resolve(path.parent().unwrap_or(Path::new(".")));
        config.validate()?;
        Ok(config)
    }

    /// Makes relative paths relative to `dir`.
    pub fn resolve(&mut self, dir: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        self.inputs.iter_mut().for_each(fix);
        fix(&mut self.gazetteer);
        fix(&mut self.output);
        for p in [&mut self.manifest, &mut self.warc_dir, &mut self.kb]
            .into_iter()
            .flatten()
        {
            fix(p);
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let exists = |field, p: &Path| {
            if p.exists() {
                Ok(())
            } else {
                Err(ConfigError::MissingPath {
                    field,
                    path: p.into(),
                })
            }
        };
        exists("gazetteer", &self.gazetteer)?;
        for p in &self.inputs {
            exists("inputs", p)?;
        }
        if let Some(kb) = &self.kb {
            exists("kb", kb)?;
        }
        if let Some(dir) = &self.warc_dir {
            exists("warc_dir", dir)?;
        }
        if self.inputs.is_empty() {
            return Err(ConfigError::BadValue {
                field: "inputs",
                message: "no input files".into(),
            });
        }
        if !(self.timeout_secs.is_finite() && self.timeout_secs >= 0.0) {
            return Err(ConfigError::BadValue {
                field: "timeout_secs",
                message: "must be a non-negative number".into(),
            });
        }
        if self.threshold.is_nan() {
            return Err(ConfigError::BadValue {
                field: "threshold",
                message: "not a number".into(),
            });
        }
        self.mode()?;
        Ok(())
    }

    pub fn mode(&self) -> Result<AnnotationMode, ConfigError> {
        self.annotation_mode
            .parse()
            .map_err(|_| ConfigError::BadValue {
                field: "annotation_mode",
                message: "expected compact or full".into(),
            })
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.manifest.clone().unwrap_or_else(|| {
            let mut s = self.output.clone().into_os_string();
            s.push(".manifest.toml");
            s.into()
        })
    }

    fn warc_root(&self) -> PathBuf {
        self.warc_dir.clone().unwrap_or_else(|| {
            self.inputs
                .first()
                .and_then(|p| p.parent())
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("."))
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Archive(#[from] ArchiveError),
    #[error(transparent)]
    Corpus(#[from] CorpusIoError),
    #[error(transparent)]
    Linker(#[from] LinkerError),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Serialize(#[from] UnserializableTerm),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

/// A finished layer: serialized text plus counts.
#[derive(Clone, Debug)]
pub struct BuildOutput {
    pub text: String,
    pub manifest: Manifest,
}

/// Per-unit output of the map phase.
#[derive(Default)]
struct Unit {
    triples: Vec<Triple>,
    documents: usize,
    versions: usize,
    same_as: usize,
    mentions: usize,
    truncated: usize,
    uris: BTreeSet<String>,
}

impl Unit {
    fn linked(&mut self, result: &LinkResult) {
        self.mentions += result.mentions.len();
        self.truncated += usize::from(result.truncated);
        self.uris
            .extend(result.mentions.iter().map(|m| m.uri.clone()));
    }
}

/// Maps `items` in order, on `threads` workers when parallel support is
/// compiled in and more than one thread is requested.
pub fn map_ordered<T, R, F>(items: &[T], threads: usize, f: F) -> Result<Vec<R>, BuildError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if threads != 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| BuildError::Pool(e.to_string()))?;
            return Ok(pool.install(|| items.par_iter().map(&f).collect()));
        }
    }
    let _ = threads;
    Ok(items.iter().map(f).collect())
}

/// The metadata-only selection pass: captures that may carry content or
/// point at content, below the size cap. Reads no WARC data.
pub fn select_captures(
    index: &crate::archive::CdxIndex,
    size_cap: u64,
) -> crate::archive::CdxIndex {
    filter_metadata(index, |r| {
        r.compressed_size < size_cap && (is_html_response(r) || is_revisit(r))
    })
}

pub fn is_revisit(r: &CdxRecord) -> bool {
    r.mime == "warc/revisit"
}

/// Shared state of one build.
struct Context<'a> {
    config: &'a BuildConfig,
    gazetteer: Gazetteer,
    mode: AnnotationMode,
    timeout: Duration,
}

impl Context<'_> {
    fn link(&self, text: &str) -> LinkResult {
        link(text, &self.gazetteer, self.config.threshold, self.timeout)
    }

    fn warc_group(&self, reader: &WarcReader, group: &[CdxRecord]) -> Result<Unit, BuildError> {
        let mut unit = Unit::default();
        let assignment = detect_duplicates(group, is_html_response);
        let base = self.config.version_url_base.as_deref();
        let nodes: Vec<Term> = group.iter().map(|r| version_node(r, base)).collect();
        let mut versions = Vec::new();
        for (i, (rec, role)) in group.iter().zip(&assignment).enumerate() {
            match role {
                Assignment::Canonical => {
                    let record = reader.read(rec)?;
                    let page = extract_page(
                        &record.payload,
                        &rec.original_url,
                        record.charset(),
                        BoilerplateParams::default(),
                    );
                    let text = match &page.title {
                        Some(t) => format!("{t}\n\n{}", page.main_text),
                        None => page.main_text.clone(),
                    };
                    let linked = self.link(&text);
                    unit.linked(&linked);
                    unit.triples.extend(emit_version(
                        &nodes[i],
                        rec.timestamp,
                        &rec.mime,
                        &page,
                        &linked.mentions,
                        self.mode,
                    ));
                }
                Assignment::SameAs(c) => {
                    unit.same_as += 1;
                    unit.triples
                        .extend(emit_sameas(&nodes[i], rec.timestamp, &nodes[*c]));
                }
                Assignment::Skipped => continue,
            }
            versions.push((nodes[i].clone(), rec.timestamp));
        }
        if !versions.is_empty() {
            let first = &group[0];
            let doc = document_node(&first.original_url, &first.surt_url);
            unit.documents = 1;
            unit.versions = versions.len();
            unit.triples.extend(emit_archived_doc(&doc, &versions));
        }
        Ok(unit)
    }
}

/// Builds the layer described by `config` without writing anything.
pub fn build_layer(config: &BuildConfig) -> Result<BuildOutput, BuildError> {
    let (gazetteer, _) = Gazetteer::load(&config.gazetteer)?;
    let ctx = Context {
        config,
        gazetteer,
        mode: config.mode()?,
        timeout: Duration::from_secs_f64(config.timeout_secs),
    };
    let mut manifest = Manifest {
        corpus: config.corpus.label().to_string(),
        ..Manifest::default()
    };
    let units: Vec<Unit> = match config.corpus {
        CorpusKind::Warc => {
            let load = load_cdx_index(&config.inputs)?;
            manifest.input_records = load.index.len() + load.skipped;
            let selected = select_captures(&load.index, config.size_cap);
            let groups: Vec<Vec<CdxRecord>> =
                group_versions(selected.iter()).into_values().collect();
            let reader = WarcReader::new(config.warc_root());
            let units = map_ordered(&groups, config.threads, |g| ctx.warc_group(&reader, g))?
                .into_iter()
                .collect::<Result<Vec<_>, _>>()?;
            manifest.payload_reads = reader.reads();
            let kept: usize = units.iter().map(|u| u.versions).sum();
            manifest.skipped_records = manifest.input_records - kept;
            units
        }
        CorpusKind::News => {
            let mut articles = Vec::new();
            for path in &config.inputs {
                let parsed = parse_news_corpus(path)?;
                manifest.input_records += parsed.records.len() + parsed.skipped;
                manifest.skipped_records += parsed.skipped;
                articles.extend(parsed.records);
            }
            map_ordered(&articles, config.threads, |a| {
                let mut unit = Unit {
                    documents: 1,
                    ..Unit::default()
                };
                let linked = ctx.link(&article_link_text(a));
                unit.linked(&linked);
                unit.triples = emit_article(a, &linked.mentions, ctx.mode);
                unit
            })?
        }
        CorpusKind::Tweets => {
            let mut tweets = Vec::new();
            for path in &config.inputs {
                let parsed = parse_tweet_stream(path)?;
                manifest.input_records += parsed.records.len() + parsed.skipped;
                manifest.skipped_records += parsed.skipped;
                tweets.extend(parsed.records);
            }
            map_ordered(&tweets, config.threads, |t| {
                let mut unit = Unit {
                    documents: 1,
                    ..Unit::default()
                };
                let linked = ctx.link(&t.text);
                unit.linked(&linked);
                unit.triples = emit_tweet(t, &linked.mentions, ctx.mode);
                unit
            })?
        }
    };

    let mut triples = Vec::new();
    let mut uris = BTreeSet::new();
    for u in units {
        manifest.documents += u.documents;
        manifest.versions += u.versions;
        manifest.same_as += u.same_as;
        manifest.mentions += u.mentions;
        manifest.truncated_documents += u.truncated;
        uris.extend(u.uris);
        triples.extend(u.triples);
    }
    if let Some(kb) = &config.kb {
        let kb = GraphStore::from_triples(load_file(kb)?);
        let extra = enrich_entities(uris.iter().map(String::as_str), &kb);
        manifest.enrichment_triples = extra.len();
        triples.extend(extra);
    }
    triples.sort_unstable();
    triples.dedup();
    manifest.triples = triples.len();
    let text = serialize_layer(&triples, &vocab::layer_prefixes())?;
    Ok(BuildOutput { text, manifest })
}

/// Builds and writes the layer file and manifest.
pub fn run_build(config: &BuildConfig) -> Result<BuildOutput, BuildError> {
    let out = build_layer(config)?;
    let write_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| BuildError::Write { path, source }
    };
    write_layer_file(&config.output, &out.text).map_err(write_err(&config.output))?;
    let manifest = config.manifest_path();
    std::fs::write(&manifest, out.manifest.to_toml()).map_err(write_err(&manifest))?;
    Ok(out)
}
