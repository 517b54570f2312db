//! Gazetteer entity linking: longest-match segmentation over token n-grams,
//! log-scale confidence from the candidate prior and context keywords.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::io::BufRead;
use std::path::Path;
use std::time::{Duration, Instant};

use crate::rdf::is_valid_iri;

/// Default threshold for web archive and tweet layers.
pub const DEFAULT_THRESHOLD: f64 = -4.0;
/// Default per-document linking budget.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);
/// Tokens on each side of a mention searched for context keywords.
pub const CONTEXT_WINDOW: usize = 50;

/// Threshold for the news layer: a probability cut of 0.2 on the log scale.
pub fn news_threshold() -> f64 {
    0.2f64.ln()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub uri: String,
    pub prior: f64,
}

#[derive(Clone, Debug, Default)]
pub struct Gazetteer {
    entries: HashMap<String, Vec<Candidate>>,
    keywords: HashMap<String, BTreeSet<String>>,
    max_gram: usize,
}

/// Counters from reading a gazetteer file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GazetteerLoad {
    pub malformed_rows: usize,
    pub merged_duplicates: usize,
    /// Surfaces whose priors summed above 1 and were rescaled.
    pub renormalized: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum LinkerError {
    #[error("cannot read gazetteer {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("'{surface}' has no candidate {uri}")]
    UnknownCandidate { surface: String, uri: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntityMention {
    /// Text as it appears in the document.
    pub surface: String,
    /// Character offset of `surface`.
    pub position: usize,
    pub confidence: f64,
    pub uri: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinkResult {
    pub mentions: Vec<EntityMention>,
    /// Set when the timeout stopped the scan early.
    pub truncated: bool,
}

#[derive(Clone, Debug)]
struct Token {
    /// Char offsets.
    start: usize,
    end: usize,
    /// Byte offsets.
    byte_start: usize,
    byte_end: usize,
    norm: String,
}

/// Splits on anything that is not alphanumeric. Offsets are in chars.
fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current: Option<Token> = None;
    for (ci, (bi, c)) in text.char_indices().enumerate() {
        if c.is_alphanumeric() {
            let tok = current.get_or_insert_with(|| Token {
                start: ci,
                end: ci,
                byte_start: bi,
                byte_end: bi,
                norm: String::new(),
            });
            tok.end = ci + 1;
            tok.byte_end = bi + c.len_utf8();
            tok.norm.extend(c.to_lowercase());
        } else if let Some(tok) = current.take() {
            tokens.push(tok);
        }
    }
    tokens.extend(current);
    tokens
}

/// Lowercased tokens joined by single spaces.
pub fn normalize_surface(surface: &str) -> String {
    tokenize(surface)
        .into_iter()
        .map(|t| t.norm)
        .collect::<Vec<_>>()
        .join(" ")
}

impl Gazetteer {
    /// Builds from `(surface, uri, prior, keywords)` rows. Invalid rows are
    /// counted as malformed; repeated (surface, uri) pairs keep the larger
    /// prior; a surface whose priors sum above 1 is rescaled to sum 1.
    pub fn from_rows<'a, I>(rows: I) -> (Gazetteer, GazetteerLoad)
    where
        I: IntoIterator<Item = (&'a str, &'a str, f64, &'a [&'a str])>,
    {
        let mut g = Gazetteer::default();
        let mut load = GazetteerLoad::default();
        for (surface, uri, prior, keywords) in rows {
            g.add_row(surface, uri, prior, keywords.iter().copied(), &mut load);
        }
        g.finish(&mut load);
        (g, load)
    }

    fn add_row<'k>(
        &mut self,
        surface: &str,
        uri: &str,
        prior: f64,
        keywords: impl Iterator<Item = &'k str>,
        load: &mut GazetteerLoad,
    ) {
        let norm = normalize_surface(surface);
        if norm.is_empty() || !is_valid_iri(uri) || !(prior > 0.0 && prior <= 1.0) {
            load.malformed_rows += 1;
            return;
        }
        let kw = self.keywords.entry(uri.to_string()).or_default();
        for k in keywords {
            kw.extend(tokenize(k).into_iter().map(|t| t.norm));
        }
        let candidates = self.entries.entry(norm).or_default();
        match candidates.iter_mut().find(|c| c.uri == uri) {
            Some(c) => {
                c.prior = c.prior.max(prior);
                load.merged_duplicates += 1;
            }
            None => candidates.push(Candidate {
                uri: uri.to_string(),
                prior,
            }),
        }
    }

    fn finish(&mut self, load: &mut GazetteerLoad) {
        self.max_gram = 0;
        for (surface, candidates) in &mut self.entries {
            candidates.sort_by(|a, b| a.uri.cmp(&b.uri));
            let sum: f64 = candidates.iter().map(|c| c.prior).sum();
            if sum > 1.0 + 1e-12 {
                load.renormalized += 1;
                for c in candidates.iter_mut() {
                    c.prior /= sum;
                }
            }
            self.max_gram = self.max_gram.max(surface.split(' ').count());
        }
    }

    /// Reads `surface<TAB>uri<TAB>prior<TAB>kw,kw,...` rows. Blank lines and
    /// lines starting with `#` are ignored.
    pub fn load(path: &Path) -> Result<(Gazetteer, GazetteerLoad), LinkerError> {
        let io = |source| LinkerError::Io {
            path: path.display().to_string(),
            source,
        };
        let reader = crate::rdf::open_text(path).map_err(io)?;
        let mut g = Gazetteer::default();
        let mut load = GazetteerLoad::default();
        for line in reader.lines() {
            let line = line.map_err(io)?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if !(3..=4).contains(&fields.len()) {
                load.malformed_rows += 1;
                continue;
            }
            let Ok(prior) = fields[2].trim().parse::<f64>() else {
                load.malformed_rows += 1;
                continue;
            };
            let keywords = fields
                .get(3)
                .map(|k| {
                    k.split(',')
                        .filter(|k| !k.trim().is_empty())
                        .collect::<Vec<_>>()
                })
                .unwrap_or_default();
            g.add_row(
                fields[0],
                fields[1].trim(),
                prior,
                keywords.into_iter(),
                &mut load,
            );
        }
        g.finish(&mut load);
        Ok((g, load))
    }

    pub fn max_gram(&self) -> usize {
        self.max_gram
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Candidates for a surface form (normalized before lookup).
    pub fn lookup(&self, surface: &str) -> Option<&[Candidate]> {
        self.entries
            .get(&normalize_surface(surface))
            .map(Vec::as_slice)
    }

    pub fn keywords(&self, uri: &str) -> Option<&BTreeSet<String>> {
        self.keywords.get(uri)
    }

    /// Scores `uri` for `surface` against `context_text`. The keyword window
    /// is centred on the first occurrence of the surface in the context, or
    /// spans the whole context if the surface does not occur.
    pub fn score(&self, surface: &str, uri: &str, context_text: &str) -> Result<f64, LinkerError> {
        let norm = normalize_surface(surface);
        let candidate = self
            .entries
            .get(&norm)
            .and_then(|cs| cs.iter().find(|c| c.uri == uri))
            .ok_or_else(|| LinkerError::UnknownCandidate {
                surface: surface.to_string(),
                uri: uri.to_string(),
            })?;
        let tokens = tokenize(context_text);
        let want: Vec<&str> = norm.split(' ').collect();
        let found = tokens
            .windows(want.len())
            .position(|w| w.iter().zip(&want).all(|(t, n)| t.norm == *n));
        let overlap = match found {
            Some(i) => self.overlap(uri, &tokens, i, i + want.len()),
            None => self.overlap(uri, &tokens, 0, 0),
        };
        Ok(score_value(candidate.prior, overlap))
    }

    /// Distinct keywords of `uri` among the tokens within the window around
    /// `[start, end)`, excluding the mention itself.
    fn overlap(&self, uri: &str, tokens: &[Token], start: usize, end: usize) -> usize {
        let Some(keywords) = self.keywords.get(uri).filter(|k| !k.is_empty()) else {
            return 0;
        };
        let (lo, hi) = if start == end {
            (0, tokens.len())
        } else {
            (
                start.saturating_sub(CONTEXT_WINDOW),
                (end + CONTEXT_WINDOW).min(tokens.len()),
            )
        };
        let mut seen: HashSet<&str> = HashSet::new();
        for (i, tok) in tokens[lo..hi].iter().enumerate() {
            let i = lo + i;
            if (start..end).contains(&i) {
                continue;
            }
            if keywords.contains(&tok.norm) {
                seen.insert(&tok.norm);
            }
        }
        seen.len()
    }
}

/// `ln(prior) + ln(1 + overlap)`.
pub fn score_value(prior: f64, overlap: usize) -> f64 {
    prior.ln() + (1.0 + overlap as f64).ln()
}

/// Scans `text` left to right. At each token the longest n-gram found in
/// the gazetteer is taken and the scan resumes after it; the best-scoring
/// candidate (ties to the smaller URI) is emitted if it reaches
/// `threshold`. Segmentation does not depend on the threshold.
pub fn link(text: &str, gazetteer: &Gazetteer, threshold: f64, timeout: Duration) -> LinkResult {
    let deadline = Instant::now().checked_add(timeout);
    let tokens = tokenize(text);
    let mut result = LinkResult::default();
    let mut key = String::new();
    let mut i = 0;
    while i < tokens.len() {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            result.truncated = true;
            break;
        }
        let longest = gazetteer.max_gram.min(tokens.len() - i);
        let mut matched = None;
        for n in (1..=longest).rev() {
            key.clear();
            for (k, tok) in tokens[i..i + n].iter().enumerate() {
                if k > 0 {
                    key.push(' ');
                }
                key.push_str(&tok.norm);
            }
            if let Some(candidates) = gazetteer.entries.get(&key) {
                matched = Some((n, candidates));
                break;
            }
        }
        let Some((n, candidates)) = matched else {
            i += 1;
            continue;
        };
        let best = candidates
            .iter()
            .map(|c| {
                let overlap = gazetteer.overlap(&c.uri, &tokens, i, i + n);
                (score_value(c.prior, overlap), c)
            })
            .fold(None::<(f64, &Candidate)>, |best, (s, c)| match best {
                Some((bs, bc)) if bs > s || (bs == s && bc.uri <= c.uri) => Some((bs, bc)),
                _ => Some((s, c)),
            });
        if let Some((confidence, candidate)) = best {
            if confidence >= threshold {
                let (first, last) = (&tokens[i], &tokens[i + n - 1]);
                result.mentions.push(EntityMention {
                    surface: text[first.byte_start..last.byte_end].to_string(),
                    position: first.start,
                    confidence,
                    uri: candidate.uri.clone(),
                });
            }
        }
        i += n;
    }
    result
}
