use std::fmt;
use std::io::BufRead;
use std::path::{Path, PathBuf};

use chrono::NaiveDateTime;

use super::ArchiveError;

/// The 11-field legend used for every index this crate writes.
pub const DEFAULT_LEGEND: &str = "N b a m s k r M S V g";

/// Capture instant parsed from a 14-digit Wayback timestamp.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaptureTime(pub NaiveDateTime);

impl CaptureTime {
    /// Parses `YYYYMMDDhhmmss`; shorter inputs are right-padded with zeros.
    pub fn parse(text: &str) -> Option<CaptureTime> {
        if text.is_empty() || text.len() > 14 || !text.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut padded = text.to_string();
        // Month and day cannot be zero; pad those positions with 01.
        while padded.len() < 14 {
            let next = match padded.len() {
                4 | 6 => "01",
                5 | 7 => "1",
                _ => "0",
            };
            padded.push_str(next);
            padded.truncate(14);
        }
        NaiveDateTime::parse_from_str(&padded, "%Y%m%d%H%M%S")
            .ok()
            .map(CaptureTime)
    }

    pub fn to_wayback(self) -> String {
        self.0.format("%Y%m%d%H%M%S").to_string()
    }

    /// `xsd:dateTime` lexical form, UTC without zone designator.
    pub fn to_xsd(self) -> String {
        self.0.format("%Y-%m-%dT%H:%M:%S").to_string()
    }
}

impl fmt::Display for CaptureTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_wayback())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdxField {
    UrlKey,
    Timestamp,
    Original,
    Mime,
    Status,
    Digest,
    Redirect,
    Meta,
    CompressedSize,
    Offset,
    Filename,
}

impl CdxField {
    fn from_letter(letter: &str) -> Option<CdxField> {
        Some(match letter {
            "N" => CdxField::UrlKey,
            "b" => CdxField::Timestamp,
            "a" => CdxField::Original,
            "m" => CdxField::Mime,
            "s" => CdxField::Status,
            "k" => CdxField::Digest,
            "r" => CdxField::Redirect,
            "M" => CdxField::Meta,
            "S" => CdxField::CompressedSize,
            "V" => CdxField::Offset,
            "g" => CdxField::Filename,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            CdxField::UrlKey => "urlkey",
            CdxField::Timestamp => "timestamp",
            CdxField::Original => "original",
            CdxField::Mime => "mime",
            CdxField::Status => "status",
            CdxField::Digest => "digest",
            CdxField::Redirect => "redirect",
            CdxField::Meta => "meta",
            CdxField::CompressedSize => "size",
            CdxField::Offset => "offset",
            CdxField::Filename => "filename",
        }
    }
}

/// Field order of a CDX file, e.g. `N b a m s k r M S V g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdxLegend(Vec<CdxField>);

impl CdxLegend {
    /// Accepts the bare letters or a ` CDX ...` header line.
    pub fn parse(text: &str) -> Result<CdxLegend, ArchiveError> {
        let mut letters = text.split_whitespace().peekable();
        if letters.peek() == Some(&"CDX") {
            letters.next();
        }
        let fields = letters
            .map(|l| {
                CdxField::from_letter(l).ok_or_else(|| ArchiveError::MalformedCdx {
                    field: "legend".into(),
                    reason: format!("unknown field letter '{l}'"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if fields.is_empty() {
            return Err(ArchiveError::MalformedCdx {
                field: "legend".into(),
                reason: "empty legend".into(),
            });
        }
        Ok(CdxLegend(fields))
    }

    pub fn fields(&self) -> &[CdxField] {
        &self.0
    }

    pub fn header_line(&self) -> String {
        let letters: Vec<&str> = self
            .0
            .iter()
            .map(|f| match f {
                CdxField::UrlKey => "N",
                CdxField::Timestamp => "b",
                CdxField::Original => "a",
                CdxField::Mime => "m",
                CdxField::Status => "s",
                CdxField::Digest => "k",
                CdxField::Redirect => "r",
                CdxField::Meta => "M",
                CdxField::CompressedSize => "S",
                CdxField::Offset => "V",
                CdxField::Filename => "g",
            })
            .collect();
        format!(" CDX {}", letters.join(" "))
    }
}

impl Default for CdxLegend {
    fn default() -> Self {
        CdxLegend::parse(DEFAULT_LEGEND).expect("default legend is valid")
    }
}

/// One capture as described by a CDX line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdxRecord {
    pub surt_url: String,
    pub timestamp: CaptureTime,
    pub original_url: String,
    pub mime: String,
    pub status: Option<u16>,
    pub digest: String,
    pub redirect: Option<String>,
    pub meta_flags: Option<String>,
    pub compressed_size: u64,
    pub offset: u64,
    pub filename: String,
}

impl CdxRecord {
    /// Key used for index order and duplicate suppression.
    pub fn identity(&self) -> (&str, CaptureTime, u64, &str) {
        (&self.surt_url, self.timestamp, self.offset, &self.filename)
    }

    /// Renders the record with `legend`, writing `-` for absent fields.
    pub fn to_line(&self, legend: &CdxLegend) -> String {
        let cols: Vec<String> = legend
            .fields()
            .iter()
            .map(|f| match f {
                CdxField::UrlKey => self.surt_url.clone(),
                CdxField::Timestamp => self.timestamp.to_wayback(),
                CdxField::Original => self.original_url.clone(),
                CdxField::Mime => self.mime.clone(),
                CdxField::Status => self.status.map_or("-".into(), |s| s.to_string()),
                CdxField::Digest => self.digest.clone(),
                CdxField::Redirect => self.redirect.clone().unwrap_or_else(|| "-".into()),
                CdxField::Meta => self.meta_flags.clone().unwrap_or_else(|| "-".into()),
                CdxField::CompressedSize => self.compressed_size.to_string(),
                CdxField::Offset => self.offset.to_string(),
                CdxField::Filename => self.filename.clone(),
            })
            .collect();
        cols.join(" ")
    }
}

fn absent(v: &str) -> Option<String> {
    (v != "-").then(|| v.to_string())
}

/// Parses one CDX line against `legend`.
pub fn parse_cdx_line(line: &str, legend: &CdxLegend) -> Result<CdxRecord, ArchiveError> {
    let cols: Vec<&str> = line.split(' ').filter(|c| !c.is_empty()).collect();
    if cols.len() != legend.fields().len() {
        return Err(ArchiveError::MalformedCdx {
            field: "line".into(),
            reason: format!(
                "expected {} fields, found {}",
                legend.fields().len(),
                cols.len()
            ),
        });
    }
    let malformed = |field: CdxField, reason: String| ArchiveError::MalformedCdx {
        field: field.name().into(),
        reason,
    };
    let int = |field: CdxField, v: &str| -> Result<u64, ArchiveError> {
        v.parse()
            .map_err(|_| malformed(field, format!("not an integer: '{v}'")))
    };
    let mut rec = CdxRecord {
        surt_url: String::new(),
        timestamp: CaptureTime(NaiveDateTime::MIN),
        original_url: String::new(),
        mime: "-".into(),
        status: None,
        digest: "-".into(),
        redirect: None,
        meta_flags: None,
        compressed_size: 0,
        offset: 0,
        filename: String::new(),
    };
    let mut saw_timestamp = false;
    for (&field, &v) in legend.fields().iter().zip(&cols) {
        match field {
            CdxField::UrlKey => rec.surt_url = v.to_lowercase(),
            CdxField::Timestamp => {
                rec.timestamp = CaptureTime::parse(v)
                    .ok_or_else(|| malformed(field, format!("invalid timestamp '{v}'")))?;
                saw_timestamp = true;
            }
            CdxField::Original => rec.original_url = v.to_string(),
            CdxField::Mime => rec.mime = v.to_string(),
            CdxField::Status => {
                rec.status = match v {
                    "-" => None,
                    _ => Some(
                        v.parse()
                            .map_err(|_| malformed(field, format!("invalid status '{v}'")))?,
                    ),
                }
            }
            CdxField::Digest => rec.digest = v.to_string(),
            CdxField::Redirect => rec.redirect = absent(v),
            CdxField::Meta => rec.meta_flags = absent(v),
            CdxField::CompressedSize => {
                rec.compressed_size = if v == "-" { 0 } else { int(field, v)? }
            }
            CdxField::Offset => rec.offset = int(field, v)?,
            CdxField::Filename => rec.filename = v.to_string(),
        }
    }
    if !saw_timestamp {
        return Err(malformed(
            CdxField::Timestamp,
            "legend has no timestamp".into(),
        ));
    }
    Ok(rec)
}

/// Captures sorted by (surt_url, timestamp), unique by
/// (surt_url, timestamp, offset, filename).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CdxIndex {
    records: Vec<CdxRecord>,
}

impl CdxIndex {
    /// Sorts and removes duplicate identities (first occurrence wins).
    pub fn from_records(mut records: Vec<CdxRecord>) -> CdxIndex {
        records.sort_by(|a, b| {
            (&a.surt_url, a.timestamp, a.offset, &a.filename).cmp(&(
                &b.surt_url,
                b.timestamp,
                b.offset,
                &b.filename,
            ))
        });
        records.dedup_by(|b, a| a.identity() == b.identity());
        CdxIndex { records }
    }

    pub fn records(&self) -> &[CdxRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CdxRecord> {
        self.records.iter()
    }

    pub fn into_records(self) -> Vec<CdxRecord> {
        self.records
    }
}

/// Result of loading CDX files: the merged index plus the number of
/// lines that failed to parse.
#[derive(Clone, Debug, Default)]
pub struct CdxLoad {
    pub index: CdxIndex,
    pub skipped: usize,
}

/// Loads and merges plain or gzipped CDX files. Malformed lines are
/// counted, not fatal. A leading ` CDX` header overrides the default legend.
pub fn load_cdx_index<P: AsRef<Path>>(paths: &[P]) -> Result<CdxLoad, ArchiveError> {
    let mut records = Vec::new();
    let mut skipped = 0;
    for path in paths {
        let path = path.as_ref();
        let reader = crate::rdf::open_text(path).map_err(|source| ArchiveError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut legend = CdxLegend::default();
        for (n, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| ArchiveError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            let trimmed = line.trim_end_matches(['\r', '\n']);
            if trimmed.trim().is_empty() {
                continue;
            }
            if n == 0 && trimmed.trim_start().starts_with("CDX") {
                match CdxLegend::parse(trimmed) {
                    Ok(l) => legend = l,
                    Err(_) => skipped += 1,
                }
                continue;
            }
            match parse_cdx_line(trimmed, &legend) {
                Ok(rec) => records.push(rec),
                Err(_) => skipped += 1,
            }
        }
    }
    Ok(CdxLoad {
        index: CdxIndex::from_records(records),
        skipped,
    })
}

/// Keeps the records satisfying `predicate`, in index order. Works on the
/// index alone; no WARC data is touched.
pub fn filter_metadata<F>(index: &CdxIndex, predicate: F) -> CdxIndex
where
    F: Fn(&CdxRecord) -> bool,
{
    CdxIndex {
        records: index
            .records
            .iter()
            .filter(|r| predicate(r))
            .cloned()
            .collect(),
    }
}

/// Writes an index with a legend header.
pub fn write_cdx(path: &Path, index: &CdxIndex, legend: &CdxLegend) -> std::io::Result<PathBuf> {
    use std::io::Write;
    let file = std::fs::File::create(path)?;
    let mut out: Box<dyn Write> = if path.extension().is_some_and(|e| e == "gz") {
        Box::new(flate2::write::GzEncoder::new(
            file,
            flate2::Compression::default(),
        ))
    } else {
        Box::new(std::io::BufWriter::new(file))
    };
    writeln!(out, "{}", legend.header_line())?;
    for rec in index.iter() {
        writeln!(out, "{}", rec.to_line(legend))?;
    }
    out.flush()?;
    Ok(path.to_path_buf())
}
