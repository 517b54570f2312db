use std::fs::File;
use std::io::{BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use sha1::Digest as _;

use super::cdx::CdxRecord;
use super::ArchiveError;

/// A parsed WARC record. For `response` and `revisit` records carrying an
/// `application/http` block, the HTTP head is split off into
/// `http_status` / `http_headers` and `payload` holds the entity body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WarcRecord {
    pub warc_headers: Vec<(String, String)>,
    pub http_status: Option<u16>,
    pub http_headers: Option<Vec<(String, String)>>,
    pub payload: Vec<u8>,
}

fn lookup<'a>(headers: &'a [(String, String)], name: &str) -> Option<&'a str> {
    headers
        .iter()
        .find(|(k, _)| k.eq_ignore_ascii_case(name))
        .map(|(_, v)| v.as_str())
}

impl WarcRecord {
    pub fn header(&self, name: &str) -> Option<&str> {
        lookup(&self.warc_headers, name)
    }

    pub fn warc_type(&self) -> &str {
        self.header("WARC-Type").unwrap_or("")
    }

    pub fn http_header(&self, name: &str) -> Option<&str> {
        self.http_headers.as_deref().and_then(|h| lookup(h, name))
    }

    /// Charset declared in the HTTP Content-Type, if any.
    pub fn charset(&self) -> Option<&str> {
        let ct = self.http_header("Content-Type")?;
        ct.split(';')
            .filter_map(|part| part.trim().strip_prefix("charset="))
            .map(|c| c.trim_matches('"'))
            .next()
    }
}

/// Hash used for CDX digests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DigestAlgorithm {
    #[default]
    Sha1,
    Sha256,
}

impl DigestAlgorithm {
    pub fn label(self) -> &'static str {
        match self {
            DigestAlgorithm::Sha1 => "sha1",
            DigestAlgorithm::Sha256 => "sha256",
        }
    }

    /// Base32 digest of `bytes`, as written in CDX digest columns.
    pub fn digest(self, bytes: &[u8]) -> String {
        let raw: Vec<u8> = match self {
            DigestAlgorithm::Sha1 => sha1::Sha1::digest(bytes).to_vec(),
            DigestAlgorithm::Sha256 => {
                use sha2::Digest as _;
                sha2::Sha256::digest(bytes).to_vec()
            }
        };
        data_encoding::BASE32.encode(&raw)
    }
}

impl std::str::FromStr for DigestAlgorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sha1" | "sha-1" => Ok(DigestAlgorithm::Sha1),
            "sha256" | "sha-256" => Ok(DigestAlgorithm::Sha256),
            other => Err(format!("unknown digest algorithm '{other}'")),
        }
    }
}

/// Reads exactly one record starting at `offset`. Gzip members are
/// detected by their magic bytes; otherwise the file is read raw.
pub fn read_warc_record(path: &Path, offset: u64) -> Result<WarcRecord, ArchiveError> {
    let io_err = |source| ArchiveError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = File::open(path).map_err(io_err)?;
    file.seek(SeekFrom::Start(offset)).map_err(io_err)?;
    let mut reader = BufReader::new(file);
    let head = reader.fill_buf().map_err(io_err)?;
    if head.len() >= 2 && head[0] == 0x1f && head[1] == 0x8b {
        let mut gz = BufReader::new(GzDecoder::new(reader));
        parse_record(&mut gz).map_err(|e| e.with_path(path))
    } else {
        parse_record(&mut reader).map_err(|e| e.with_path(path))
    }
}

fn malformed(reason: impl Into<String>) -> ArchiveError {
    ArchiveError::MalformedWarc(reason.into())
}

fn read_line_bytes<R: BufRead>(r: &mut R) -> Result<Vec<u8>, ArchiveError> {
    let mut buf = Vec::new();
    r.read_until(b'\n', &mut buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::InvalidInput
            || e.kind() == std::io::ErrorKind::InvalidData
        {
            malformed(format!("corrupt data: {e}"))
        } else {
            ArchiveError::Io {
                path: PathBuf::new(),
                source: e,
            }
        }
    })?;
    Ok(buf)
}

fn parse_headers(block: &[u8]) -> Result<Vec<(String, String)>, ArchiveError> {
    let text = String::from_utf8_lossy(block);
    let mut headers: Vec<(String, String)> = Vec::new();
    for line in text.split("\r\n").flat_map(|l| l.split('\n')) {
        if line.is_empty() {
            continue;
        }
        if line.starts_with([' ', '\t']) {
            match headers.last_mut() {
                Some((_, v)) => {
                    v.push(' ');
                    v.push_str(line.trim());
                }
                None => return Err(malformed("continuation line without header")),
            }
            continue;
        }
        let (name, value) = line
            .split_once(':')
            .ok_or_else(|| malformed(format!("invalid header line '{line}'")))?;
        headers.push((name.trim().to_string(), value.trim().to_string()));
    }
    Ok(headers)
}

fn parse_record<R: BufRead>(r: &mut R) -> Result<WarcRecord, ArchiveError> {
    let version = read_line_bytes(r)?;
    let version = String::from_utf8_lossy(&version);
    if !version.trim_end().starts_with("WARC/1.") {
        return Err(malformed("missing WARC version line"));
    }
    let mut head = Vec::new();
    loop {
        let line = read_line_bytes(r)?;
        if line.is_empty() {
            return Err(malformed("unexpected end of headers"));
        }
        if line == b"\r\n" || line == b"\n" {
            break;
        }
        head.extend_from_slice(&line);
    }
    let warc_headers = parse_headers(&head)?;
    let length: usize = lookup(&warc_headers, "Content-Length")
        .ok_or_else(|| malformed("missing Content-Length"))?
        .parse()
        .map_err(|_| malformed("Content-Length is not a number"))?;
    if lookup(&warc_headers, "WARC-Type").is_none() {
        return Err(malformed("missing WARC-Type"));
    }
    let mut block = vec![0u8; length];
    r.read_exact(&mut block)
        .map_err(|_| malformed("block shorter than Content-Length"))?;
    let mut trailer = [0u8; 4];
    r.read_exact(&mut trailer)
        .map_err(|_| malformed("missing record trailer"))?;
    if &trailer != b"\r\n\r\n" {
        return Err(malformed("block length does not match Content-Length"));
    }

    let warc_type = lookup(&warc_headers, "WARC-Type").unwrap_or("");
    let is_http =
        lookup(&warc_headers, "Content-Type").is_some_and(|ct| ct.starts_with("application/http"));
    if is_http && matches!(warc_type, "response" | "revisit") && !block.is_empty() {
        let (status, headers, payload) = split_http(&block)?;
        return Ok(WarcRecord {
            warc_headers,
            http_status: status,
            http_headers: Some(headers),
            payload,
        });
    }
    Ok(WarcRecord {
        warc_headers,
        http_status: None,
        http_headers: None,
        payload: block,
    })
}

#[allow(clippy::type_complexity)]
fn split_http(block: &[u8]) -> Result<(Option<u16>, Vec<(String, String)>, Vec<u8>), ArchiveError> {
    let (head_end, body_start) = match find(block, b"\r\n\r\n") {
        Some(i) => (i, i + 4),
        None => match find(block, b"\n\n") {
            Some(i) => (i, i + 2),
            // head only, no body (typical for revisits)
            None => (block.len(), block.len()),
        },
    };
    let head = &block[..head_end];
    let (status_line, rest) = match find(head, b"\n") {
        Some(i) => (&head[..i], &head[i + 1..]),
        None => (head, &head[head.len()..]),
    };
    let status_line = String::from_utf8_lossy(status_line);
    if !status_line.starts_with("HTTP/") {
        return Err(malformed("response block without HTTP status line"));
    }
    let status = status_line
        .split_whitespace()
        .nth(1)
        .and_then(|s| s.parse().ok());
    Ok((status, parse_headers(rest)?, block[body_start..].to_vec()))
}

fn find(hay: &[u8], needle: &[u8]) -> Option<usize> {
    hay.windows(needle.len()).position(|w| w == needle)
}

/// Resolves WARC file names from CDX records against a directory and
/// counts how many record reads were performed.
#[derive(Debug)]
pub struct WarcReader {
    root: PathBuf,
    reads: AtomicUsize,
}

impl WarcReader {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        WarcReader {
            root: root.into(),
            reads: AtomicUsize::new(0),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn read_at(&self, filename: &str, offset: u64) -> Result<WarcRecord, ArchiveError> {
        self.reads.fetch_add(1, Ordering::Relaxed);
        read_warc_record(&self.root.join(filename), offset)
    }

    pub fn read(&self, record: &CdxRecord) -> Result<WarcRecord, ArchiveError> {
        self.read_at(&record.filename, record.offset)
    }

    /// Number of WARC reads issued so far.
    pub fn reads(&self) -> usize {
        self.reads.load(Ordering::Relaxed)
    }
}

/// Location of a written record inside its WARC file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecordLocation {
    pub offset: u64,
    pub compressed_size: u64,
}

/// Appends records to a gzip-per-record WARC file.
pub struct WarcWriter<W: Write> {
    out: W,
    position: u64,
    counter: u64,
}

impl WarcWriter<std::io::BufWriter<File>> {
    pub fn create(path: &Path) -> std::io::Result<Self> {
        Ok(WarcWriter::new(std::io::BufWriter::new(File::create(
            path,
        )?)))
    }
}

impl<W: Write> WarcWriter<W> {
    pub fn new(out: W) -> Self {
        WarcWriter {
            out,
            position: 0,
            counter: 0,
        }
    }

    /// Writes one record as its own gzip member.
    pub fn write_record(
        &mut self,
        headers: &[(&str, String)],
        block: &[u8],
    ) -> std::io::Result<RecordLocation> {
        let mut raw = Vec::with_capacity(block.len() + 512);
        raw.extend_from_slice(b"WARC/1.0\r\n");
        for (k, v) in headers {
            raw.extend_from_slice(format!("{k}: {v}\r\n").as_bytes());
        }
        raw.extend_from_slice(format!("Content-Length: {}\r\n\r\n", block.len()).as_bytes());
        raw.extend_from_slice(block);
        raw.extend_from_slice(b"\r\n\r\n");

        let mut gz = GzEncoder::new(Vec::new(), Compression::default());
        gz.write_all(&raw)?;
        let member = gz.finish()?;
        self.out.write_all(&member)?;
        let loc = RecordLocation {
            offset: self.position,
            compressed_size: member.len() as u64,
        };
        self.position += member.len() as u64;
        self.counter += 1;
        Ok(loc)
    }

    fn record_id(&self) -> String {
        format!("<urn:uuid:00000000-0000-4000-8000-{:012x}>", self.counter)
    }

    /// Writes a `response` record with an HTTP/1.1 head and `body`.
    pub fn write_response(
        &mut self,
        target_uri: &str,
        date: &str,
        http_status: u16,
        content_type: &str,
        body: &[u8],
        payload_digest: &str,
    ) -> std::io::Result<RecordLocation> {
        let mut block = format!(
            "HTTP/1.1 {http_status} OK\r\nContent-Type: {content_type}\r\nContent-Length: {}\r\n\r\n",
            body.len()
        )
        .into_bytes();
        block.extend_from_slice(body);
        let headers = [
            ("WARC-Type", "response".to_string()),
            ("WARC-Record-ID", self.record_id()),
            ("WARC-Date", date.to_string()),
            ("WARC-Target-URI", target_uri.to_string()),
            ("WARC-Payload-Digest", format!("sha1:{payload_digest}")),
            (
                "Content-Type",
                "application/http; msgtype=response".to_string(),
            ),
        ];
        self.write_record(&headers, &block)
    }

    /// Writes a `revisit` record (identical-payload-digest profile): HTTP
    /// head only, no body.
    pub fn write_revisit(
        &mut self,
        target_uri: &str,
        date: &str,
        content_type: &str,
        payload_digest: &str,
        refers_to_date: &str,
    ) -> std::io::Result<RecordLocation> {
        let block = format!("HTTP/1.1 200 OK\r\nContent-Type: {content_type}\r\n\r\n").into_bytes();
        let headers = [
            ("WARC-Type", "revisit".to_string()),
            ("WARC-Record-ID", self.record_id()),
            ("WARC-Date", date.to_string()),
            ("WARC-Target-URI", target_uri.to_string()),
            ("WARC-Payload-Digest", format!("sha1:{payload_digest}")),
            (
                "WARC-Profile",
                "http://netpreserve.org/warc/1.0/revisit/identical-payload-digest".to_string(),
            ),
            ("WARC-Refers-To-Date", refers_to_date.to_string()),
            (
                "Content-Type",
                "application/http; msgtype=response".to_string(),
            ),
        ];
        self.write_record(&headers, &block)
    }

    pub fn finish(mut self) -> std::io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> (tempfile::TempDir, PathBuf, Vec<RecordLocation>) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.warc.gz");
        let mut w = WarcWriter::create(&path).unwrap();
        let body = b"<html><title>Hi</title><p>x</p></html>";
        let digest = DigestAlgorithm::Sha1.digest(body);
        let a = w
            .write_response(
                "http://x.org/",
                "2012-01-01T00:00:00Z",
                200,
                "text/html",
                body,
                &digest,
            )
            .unwrap();
        let b = w
            .write_revisit(
                "http://x.org/",
                "2012-02-01T00:00:00Z",
                "text/html",
                &digest,
                "2012-01-01T00:00:00Z",
            )
            .unwrap();
        w.finish().unwrap();
        (dir, path, vec![a, b])
    }

    #[test]
    fn response_round_trip() {
        let (_dir, path, locs) = fixture();
        let rec = read_warc_record(&path, locs[0].offset).unwrap();
        assert_eq!(rec.warc_type(), "response");
        assert_eq!(rec.http_status, Some(200));
        assert_eq!(rec.payload, b"<html><title>Hi</title><p>x</p></html>");
        assert_eq!(rec.http_header("content-type"), Some("text/html"));
    }

    #[test]
    fn revisit_has_empty_payload() {
        let (_dir, path, locs) = fixture();
        let rec = read_warc_record(&path, locs[1].offset).unwrap();
        assert_eq!(rec.warc_type(), "revisit");
        assert!(rec.payload.is_empty());
        assert!(rec.header("WARC-Refers-To-Date").is_some());
    }

    #[test]
    fn mid_record_offset_is_malformed() {
        let (_dir, path, locs) = fixture();
        let err = read_warc_record(&path, locs[0].offset + 7).unwrap_err();
        assert!(matches!(err, ArchiveError::MalformedWarc(_)), "{err:?}");
    }

    #[test]
    fn raw_record_with_bad_length_is_malformed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("raw.warc");
        std::fs::write(
            &path,
            b"WARC/1.0\r\nWARC-Type: resource\r\nContent-Length: 3\r\n\r\nabcdef\r\n\r\n",
        )
        .unwrap();
        assert!(matches!(
            read_warc_record(&path, 0),
            Err(ArchiveError::MalformedWarc(_))
        ));
    }

    #[test]
    fn uncompressed_records_are_read() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("raw.warc");
        std::fs::write(
            &path,
            b"WARC/1.0\r\nWARC-Type: resource\r\nContent-Length: 3\r\n\r\nabc\r\n\r\n",
        )
        .unwrap();
        let rec = read_warc_record(&path, 0).unwrap();
        assert_eq!(rec.payload, b"abc");
    }

    #[test]
    fn digests_are_base32() {
        let d = DigestAlgorithm::Sha1.digest(b"");
        assert_eq!(d, "3I42H3S6NNFQ2MSVX7XZKYAYSCX5QBYJ");
        assert_eq!(DigestAlgorithm::Sha256.digest(b"").len(), 56);
    }
}
