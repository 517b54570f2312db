//! CDX and WARC access with metadata-first loading: indexes are filtered on
//! their own and payloads are only read on demand through file offsets.

pub mod cdx;
pub mod warc;

use std::path::{Path, PathBuf};

pub use cdx::{
    filter_metadata, load_cdx_index, parse_cdx_line, write_cdx, CaptureTime, CdxField, CdxIndex,
    CdxLegend, CdxLoad, CdxRecord, DEFAULT_LEGEND,
};
pub use warc::{
    read_warc_record, DigestAlgorithm, RecordLocation, WarcReader, WarcRecord, WarcWriter,
};

#[derive(Debug, thiserror::Error)]
pub enum ArchiveError {
    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CDX field '{field}': {reason}")]
    MalformedCdx { field: String, reason: String },
    #[error("malformed WARC record: {0}")]
    MalformedWarc(String),
}

impl ArchiveError {
    pub(crate) fn with_path(self, path: &Path) -> Self {
        match self {
            ArchiveError::Io { path: p, source } if p.as_os_str().is_empty() => ArchiveError::Io {
                path: path.to_path_buf(),
                source,
            },
            other => other,
        }
    }
}
