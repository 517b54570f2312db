//! Information-need suite: SPARQL answers against a keyword baseline,
//! scored with relevance judgments, plus repeated-run query timing.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::content::NewsArticle;
use crate::layer::document_node;
use crate::rdf::value::local_datetime;
use crate::rdf::{GraphStore, Term};
use crate::sparql::{cell, evaluate, parse_query, Query, QueryError, ResultTable, ServiceRegistry};
use crate::vocab;

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: {reason}")]
    Invalid { path: PathBuf, reason: String },
    #[error("need {need}: {source}")]
    Query {
        need: u32,
        #[source]
        source: QueryError,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoNeed {
    pub id: u32,
    pub description: String,
    pub sparql: String,
    pub keywords: String,
    pub date_from: NaiveDate,
    pub date_to: NaiveDate,
}

/// One line of a needs file; `sparql` is a path relative to the file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NeedLine {
    pub id: u32,
    pub description: String,
    pub keywords: String,
    pub date_from: NaiveDate,
    pub date_to: NaiveDate,
    pub sparql: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JudgmentLine {
    pub need: u32,
    pub doc: String,
    pub label: Label,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Relevant,
    Irrelevant,
}

/// Relevance labels keyed by (need id, document key).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JudgmentSet {
    pub labels: BTreeMap<(u32, String), Label>,
}

impl JudgmentSet {
    pub fn is_relevant(&self, need: u32, doc: &str) -> bool {
        self.labels.get(&(need, doc.to_string())) == Some(&Label::Relevant)
    }

    /// Judged documents that `known` does not contain.
    pub fn missing<'a>(&'a self, known: &HashSet<String>) -> Vec<&'a str> {
        self.labels
            .keys()
            .filter(|(_, d)| !known.contains(d))
            .map(|(_, d)| d.as_str())
            .collect()
    }
}

fn tsv_reader(path: &Path) -> Result<csv::Reader<std::fs::File>, EvalError> {
    let file = std::fs::File::open(path).map_err(|source| EvalError::Io {
        path: path.into(),
        source,
    })?;
    Ok(csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .comment(Some(b'#'))
        .quoting(false)
        .from_reader(file))
}

fn tsv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .delimiter(b'\t')
        .quote_style(csv::QuoteStyle::Never)
        .from_writer(Vec::new())
}

/// Reads a tab-separated needs file with a header row
/// `id description keywords date_from date_to sparql`.
pub fn load_needs(path: &Path) -> Result<Vec<InfoNeed>, EvalError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut out = Vec::new();
    for line in tsv_reader(path)?.deserialize::<NeedLine>() {
        let line = line.map_err(|source| EvalError::Format {
            path: path.into(),
            source,
        })?;
        if line.date_from > line.date_to {
            return Err(EvalError::Invalid {
                path: path.into(),
                reason: format!("need {}: empty date range", line.id),
            });
        }
        let qpath = dir.join(&line.sparql);
        let sparql = std::fs::read_to_string(&qpath).map_err(|source| EvalError::Io {
            path: qpath,
            source,
        })?;
        parse_query(&sparql).map_err(|source| EvalError::Query {
            need: line.id,
            source,
        })?;
        out.push(InfoNeed {
            id: line.id,
            description: line.description,
            sparql,
            keywords: line.keywords,
            date_from: line.date_from,
            date_to: line.date_to,
        });
    }
    Ok(out)
}

/// Writes needs as TSV plus one `need<id>.rq` file per need into `dir`.
pub fn write_needs(dir: &Path, file_name: &str, needs: &[InfoNeed]) -> std::io::Result<()> {
    let mut w = tsv_writer();
    for n in needs {
        let rq = format!("need{:02}.rq", n.id);
        std::fs::write(dir.join(&rq), &n.sparql)?;
        w.serialize(NeedLine {
            id: n.id,
            description: n.description.clone(),
            keywords: n.keywords.clone(),
            date_from: n.date_from,
            date_to: n.date_to,
            sparql: rq,
        })
        .map_err(std::io::Error::other)?;
    }
    std::fs::write(
        dir.join(file_name),
        w.into_inner().map_err(std::io::Error::other)?,
    )
}

/// Reads tab-separated judgments with header `need doc label`.
pub fn load_judgments(path: &Path) -> Result<JudgmentSet, EvalError> {
    let mut set = JudgmentSet::default();
    for line in tsv_reader(path)?.deserialize::<JudgmentLine>() {
        let line = line.map_err(|source| EvalError::Format {
            path: path.into(),
            source,
        })?;
        set.labels.insert((line.need, line.doc), line.label);
    }
    Ok(set)
}

pub fn judgments_tsv(set: &JudgmentSet) -> String {
    let mut w = tsv_writer();
    for ((need, doc), label) in &set.labels {
        w.serialize(JudgmentLine {
            need: *need,
            doc: doc.clone(),
            label: *label,
        })
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// A document as the keyword baseline sees it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchDoc {
    pub key: String,
    pub date: NaiveDate,
    pub text: String,
}

impl SearchDoc {
    /// Keyed by the layer node of the article, so keys line up with SPARQL
    /// results and judgments.
    pub fn from_article(a: &NewsArticle) -> SearchDoc {
        SearchDoc {
            key: cell(Some(&document_node(&a.url, &a.id))),
            date: a.publication_date,
            text: format!("{}\n{}", a.title, a.body),
        }
    }

    /// Titles of dated layer nodes, for when the source corpus is not at
    /// hand. Mention-only nodes (no title) are skipped.
    pub fn from_layer(store: &GraphStore) -> Vec<SearchDoc> {
        let title = Term::iri(vocab::DCTERMS_TITLE);
        let date = Term::iri(vocab::DCTERMS_DATE);
        let mut docs: Vec<SearchDoc> = store
            .match_pattern(None, Some(&title), None)
            .filter_map(|t| {
                let day = store
                    .objects_of(&t.subject, &date)
                    .iter()
                    .filter_map(local_datetime)
                    .min()?
                    .date();
                Some(SearchDoc {
                    key: cell(Some(&t.subject)),
                    date: day,
                    text: t.object.as_literal()?.lexical().to_string(),
                })
            })
            .collect();
        docs.sort_by(|a, b| a.key.cmp(&b.key).then_with(|| a.text.cmp(&b.text)));
        docs
    }
}

fn tokens(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
}

/// Term-frequency baseline: documents in the date range ranked by the sum
/// of query-term occurrences; documents scoring zero are dropped. Ties go
/// to the smaller key.
pub fn keyword_search(
    docs: &[SearchDoc],
    keywords: &str,
    from: NaiveDate,
    to: NaiveDate,
) -> Vec<String> {
    let terms: HashSet<String> = tokens(keywords).collect();
    let mut scored: Vec<(usize, &str)> = docs
        .iter()
        .filter(|d| d.date >= from && d.date <= to)
        .map(|d| {
            (
                tokens(&d.text).filter(|t| terms.contains(t)).count(),
                d.key.as_str(),
            )
        })
        .filter(|(s, _)| *s > 0)
        .collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
    scored.into_iter().map(|(_, k)| k.to_string()).collect()
}

/// Documents answered by a query: the `article` column when present,
/// otherwise the first, deduplicated in result order.
pub fn result_documents(table: &ResultTable) -> Vec<String> {
    let col = table.column("article").unwrap_or(0);
    let mut seen = HashSet::new();
    table
        .rows
        .iter()
        .filter_map(|r| r.get(col).and_then(|t| t.as_ref()))
        .map(|t| cell(Some(t)))
        .filter(|k| seen.insert(k.clone()))
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NeedMetrics {
    pub need: u32,
    pub sparql_hits: usize,
    pub sparql_relevant: usize,
    pub baseline_hits: usize,
    pub baseline_relevant_in_sparql: usize,
    pub baseline_relevant_not_in_sparql: usize,
}

fn compile(need: &InfoNeed) -> Result<Query, EvalError> {
    parse_query(&need.sparql).map_err(|source| EvalError::Query {
        need: need.id,
        source,
    })
}

pub fn run_suite(
    needs: &[InfoNeed],
    judgments: &JudgmentSet,
    store: &GraphStore,
    registry: &ServiceRegistry,
    docs: &[SearchDoc],
) -> Result<Vec<NeedMetrics>, EvalError> {
    let mut out = Vec::with_capacity(needs.len());
    for need in needs {
        let query = compile(need)?;
        let table = evaluate(&query, store, registry).map_err(|source| EvalError::Query {
            need: need.id,
            source,
        })?;
        let hits = result_documents(&table);
        let relevant: HashSet<&str> = hits
            .iter()
            .filter(|d| judgments.is_relevant(need.id, d))
            .map(String::as_str)
            .collect();
        let hit_set: HashSet<&str> = hits.iter().map(String::as_str).collect();
        let baseline = keyword_search(docs, &need.keywords, need.date_from, need.date_to);
        let base_relevant = baseline
            .iter()
            .filter(|d| judgments.is_relevant(need.id, d));
        let (mut inside, mut outside) = (0, 0);
        for d in base_relevant {
            if relevant.contains(d.as_str()) {
                inside += 1;
            } else if !hit_set.contains(d.as_str()) {
                outside += 1;
            }
        }
        out.push(NeedMetrics {
            need: need.id,
            sparql_hits: hits.len(),
            sparql_relevant: relevant.len(),
            baseline_hits: baseline.len(),
            baseline_relevant_in_sparql: inside,
            baseline_relevant_not_in_sparql: outside,
        });
    }
    Ok(out)
}

pub fn metrics_csv(metrics: &[NeedMetrics]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for m in metrics {
        w.serialize(m).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn metrics_text(metrics: &[NeedMetrics]) -> String {
    let header = [
        "need",
        "sparql hits",
        "sparql relevant",
        "baseline hits",
        "baseline rel. in sparql",
        "baseline rel. not in sparql",
    ];
    let mut rows: Vec<Vec<String>> = metrics
        .iter()
        .map(|m| {
            vec![
                m.need.to_string(),
                m.sparql_hits.to_string(),
                m.sparql_relevant.to_string(),
                m.baseline_hits.to_string(),
                m.baseline_relevant_in_sparql.to_string(),
                m.baseline_relevant_not_in_sparql.to_string(),
            ]
        })
        .collect();
    let sum = |f: fn(&NeedMetrics) -> usize| metrics.iter().map(f).sum::<usize>().to_string();
    rows.push(vec![
        "total".into(),
        sum(|m| m.sparql_hits),
        sum(|m| m.sparql_relevant),
        sum(|m| m.baseline_hits),
        sum(|m| m.baseline_relevant_in_sparql),
        sum(|m| m.baseline_relevant_not_in_sparql),
    ]);
    align(&header.map(String::from), &rows)
}

fn align(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: &[String]| {
        let v: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        v.join("  ")
    };
    let mut out = line(header);
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct NeedTiming {
    pub need: u32,
    pub warmup_ms: f64,
    pub runs_ms: Vec<f64>,
    pub mean_ms: f64,
    /// Every measured run returned the warm-up rows.
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimingTable {
    pub runs: usize,
    pub needs: Vec<NeedTiming>,
    pub mean_ms: f64,
}

fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        0.0
    } else {
        v.iter().sum::<f64>() / v.len() as f64
    }
}

/// Times each need `runs` times after one warm-up run, sequentially.
pub fn time_queries(
    needs: &[InfoNeed],
    store: &GraphStore,
    registry: &ServiceRegistry,
    runs: usize,
) -> Result<TimingTable, EvalError> {
    let mut rows = Vec::with_capacity(needs.len());
    for need in needs {
        let query = compile(need)?;
        let timed = || -> Result<(f64, ResultTable), EvalError> {
            let start = Instant::now();
            let t = evaluate(&query, store, registry).map_err(|source| EvalError::Query {
                need: need.id,
                source,
            })?;
            Ok((start.elapsed().as_secs_f64() * 1e3, t))
        };
        let (warmup_ms, reference) = timed()?;
        let mut runs_ms = Vec::with_capacity(runs);
        let mut stable = true;
        for _ in 0..runs {
            let (ms, t) = timed()?;
            stable &= t == reference;
            runs_ms.push(ms);
        }
        rows.push(NeedTiming {
            need: need.id,
            warmup_ms,
            mean_ms: mean(&runs_ms),
            runs_ms,
            stable,
        });
    }
    let means: Vec<f64> = rows.iter().map(|r| r.mean_ms).collect();
    Ok(TimingTable {
        runs,
        mean_ms: mean(&means),
        needs: rows,
    })
}

impl TimingTable {
    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["need".to_string()];
        h.extend((1..=self.runs).map(|i| format!("R{i}")));
        h.push("Average (ms)".into());
        h
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows: Vec<Vec<String>> = self
            .needs
            .iter()
            .map(|n| {
                let mut r = vec![n.need.to_string()];
                r.extend(n.runs_ms.iter().map(|v| format!("{v:.3}")));
                r.push(format!("{:.3}", n.mean_ms));
                r
            })
            .collect();
        let mut last = vec!["Average".to_string()];
        for i in 0..self.runs {
            let col: Vec<f64> = self.needs.iter().map(|n| n.runs_ms[i]).collect();
            last.push(format!("{:.3}", mean(&col)));
        }
        last.push(format!("{:.3}", self.mean_ms));
        rows.push(last);
        rows
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header()).expect("in-memory write");
        for r in self.rows() {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = align(&self.header(), &self.rows());
        let unstable: Vec<String> = self
            .needs
            .iter()
            .filter(|n| !n.stable)
            .map(|n| n.need.to_string())
            .collect();
        if !unstable.is_empty() {
            let _ = writeln!(
                out,
                "result rows changed between runs for needs: {}",
                unstable.join(", ")
            );
        }
        out
    }
}
