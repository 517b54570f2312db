//! RDF terms, the N3-subset reader, and the indexed in-memory store.

mod parse;
mod store;
mod term;
pub mod value;

use std::fs::File;
use std::io::{BufReader, Read};
use std::path::{Path, PathBuf};

use flate2::read::MultiGzDecoder;

pub use parse::{parse, parse_into, ParseError};
pub use store::{GraphStore, IndexKind, TermId};
pub use term::{
    compact_iri, format_double, is_safe_local, is_valid_blank_label, is_valid_iri, Literal,
    LiteralKind, Term, Triple, UnserializableTerm,
};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
}

/// Opens a text file for line reading; `.gz` inputs are gunzipped.
pub fn open_text(path: &Path) -> std::io::Result<Box<dyn std::io::BufRead>> {
    let reader = BufReader::new(File::open(path)?);
    if path.extension().is_some_and(|e| e == "gz") {
        Ok(Box::new(BufReader::new(MultiGzDecoder::new(reader))))
    } else {
        Ok(Box::new(reader))
    }
}

/// Reads a text file, transparently gunzipping `.gz` inputs.
pub fn read_text(path: &Path) -> std::io::Result<String> {
    let file = File::open(path)?;
    let mut text = String::new();
    if path.extension().is_some_and(|e| e == "gz") {
        MultiGzDecoder::new(BufReader::new(file)).read_to_string(&mut text)?;
    } else {
        BufReader::new(file).read_to_string(&mut text)?;
    }
    Ok(text)
}

/// Parses an N3/N-Triples file (optionally gzipped).
pub fn load_file(path: &Path) -> Result<Vec<Triple>, LoadError> {
    let text = read_text(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text, None).map_err(|source| LoadError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads several files into one store.
pub fn load_store<P: AsRef<Path>>(paths: &[P]) -> Result<GraphStore, LoadError> {
    let mut store = GraphStore::new();
    for path in paths {
        store.extend(load_file(path.as_ref())?);
    }
    Ok(store)
}
