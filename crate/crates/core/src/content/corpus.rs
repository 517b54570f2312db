//! Line-delimited JSON corpora.
//!
//! News: `{"id","url","title","date":"YYYY-MM-DD","body"}`.
//! Tweets: `{"id","text","created_at":ISO-8601,"favorite_count","retweet_count","screen_name"}`.

use std::collections::HashSet;
use std::io::BufRead;
use std::path::Path;

use chrono::{NaiveDate, NaiveDateTime};
use serde::{Deserialize, Serialize};

use crate::rdf::value::parse_instant;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewsArticle {
    pub id: String,
    pub url: String,
    pub title: String,
    pub publication_date: NaiveDate,
    pub body: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TweetRecord {
    pub id: String,
    pub text: String,
    /// UTC.
    pub created_at: NaiveDateTime,
    pub favorite_count: u64,
    pub retweet_count: u64,
    pub screen_name: String,
}

/// Parsed records plus the number of lines rejected.
#[derive(Clone, Debug, Default)]
pub struct Parsed<T> {
    pub records: Vec<T>,
    pub skipped: usize,
}

#[derive(Debug, thiserror::Error)]
#[error("cannot read {path}: {source}")]
pub struct CorpusIoError {
    pub path: String,
    #[source]
    pub source: std::io::Error,
}

#[derive(Serialize, Deserialize)]
pub struct NewsLine {
    pub id: String,
    pub url: String,
    pub title: String,
    pub date: String,
    #[serde(default)]
    pub body: String,
}

#[derive(Serialize, Deserialize)]
pub struct TweetLine {
    pub id: String,
    pub text: String,
    pub created_at: String,
    pub favorite_count: i64,
    pub retweet_count: i64,
    pub screen_name: String,
}

fn read_lines<T>(
    path: &Path,
    mut convert: impl FnMut(&str) -> Option<(String, T)>,
) -> Result<Parsed<T>, CorpusIoError> {
    let io = |source| CorpusIoError {
        path: path.display().to_string(),
        source,
    };
    let reader = crate::rdf::open_text(path).map_err(io)?;
    let mut out = Parsed {
        records: Vec::new(),
        skipped: 0,
    };
    let mut ids = HashSet::new();
    for line in reader.lines() {
        let line = line.map_err(io)?;
        if line.trim().is_empty() {
            continue;
        }
        match convert(&line) {
            Some((id, record)) if !ids.contains(&id) => {
                ids.insert(id);
                out.records.push(record);
            }
            _ => out.skipped += 1,
        }
    }
    Ok(out)
}

pub fn parse_news_line(line: &str) -> Option<NewsArticle> {
    let raw: NewsLine = serde_json::from_str(line).ok()?;
    let publication_date = NaiveDate::parse_from_str(raw.date.trim(), "%Y-%m-%d").ok()?;
    if raw.id.is_empty() || raw.url.is_empty() {
        return None;
    }
    Some(NewsArticle {
        id: raw.id,
        url: raw.url,
        title: raw.title,
        publication_date,
        body: raw.body,
    })
}

pub fn parse_tweet_line(line: &str) -> Option<TweetRecord> {
    let raw: TweetLine = serde_json::from_str(line).ok()?;
    if raw.id.is_empty() || raw.favorite_count < 0 || raw.retweet_count < 0 {
        return None;
    }
    // a bare date is not a creation time
    if !raw.created_at.contains('T') && !raw.created_at.contains(' ') {
        return None;
    }
    let created_at = parse_instant(&raw.created_at.replace(' ', "T"))?;
    Some(TweetRecord {
        id: raw.id,
        text: raw.text,
        created_at,
        favorite_count: raw.favorite_count as u64,
        retweet_count: raw.retweet_count as u64,
        screen_name: raw.screen_name,
    })
}

/// Reads a news corpus; invalid or repeated-id lines are skipped and counted.
pub fn parse_news_corpus(path: &Path) -> Result<Parsed<NewsArticle>, CorpusIoError> {
    read_lines(path, |l| parse_news_line(l).map(|a| (a.id.clone(), a)))
}

/// Reads a tweet stream; invalid or repeated-id lines are skipped and counted.
pub fn parse_tweet_stream(path: &Path) -> Result<Parsed<TweetRecord>, CorpusIoError> {
    read_lines(path, |l| parse_tweet_line(l).map(|t| (t.id.clone(), t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        std::io::Write::write_all(&mut f, lines.join("\n").as_bytes()).unwrap();
        f
    }

    #[test]
    fn news_skips_missing_date() {
        let f = write(&[
            r#"{"id":"a1","url":"http://n/a1","title":"A","date":"1989-06-15","body":"x"}"#,
            r#"{"id":"a2","url":"http://n/a2","title":"B","date":"1990-01-01","body":""}"#,
            r#"{"id":"a3","url":"http://n/a3","title":"C","body":"no date"}"#,
            r#"{"id":"a4","url":"http://n/a4","title":"D","date":"1991-02-03"}"#,
        ]);
        let parsed = parse_news_corpus(f.path()).unwrap();
        assert_eq!(parsed.records.len(), 3);
        assert_eq!(parsed.skipped, 1);
        assert_eq!(parsed.records[0].publication_date.to_string(), "1989-06-15");
    }

    #[test]
    fn tweets_reject_negative_counts() {
        let f = write(&[
            r#"{"id":"1","text":"hi","created_at":"2016-06-02T10:00:00Z","favorite_count":1,"retweet_count":51,"screen_name":"a"}"#,
            r#"{"id":"2","text":"hi","created_at":"2016-06-02T10:00:00Z","favorite_count":1,"retweet_count":-1,"screen_name":"a"}"#,
            r#"{"id":"3","text":"hi","created_at":"2016-06-02T12:00:00+02:00","favorite_count":0,"retweet_count":0,"screen_name":"b"}"#,
        ]);
        let parsed = parse_tweet_stream(f.path()).unwrap();
        assert_eq!(parsed.records.len(), 2);
        assert_eq!(parsed.skipped, 1);
        assert_eq!(
            parsed.records[1].created_at.to_string(),
            "2016-06-02 10:00:00"
        );
    }

    #[test]
    fn empty_and_duplicate_ids() {
        let f = write(&[]);
        assert!(parse_news_corpus(f.path()).unwrap().records.is_empty());
        let line = r#"{"id":"a1","url":"http://n/a1","title":"A","date":"1989-06-15"}"#;
        let f = write(&[line, line]);
        let parsed = parse_news_corpus(f.path()).unwrap();
        assert_eq!((parsed.records.len(), parsed.skipped), (1, 1));
    }
}
