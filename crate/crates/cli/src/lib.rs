//! Shared pieces of the `owa` command: exit codes, store loading and the
//! SPARQL endpoint.

pub mod endpoint;

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use owa_core::eval::EvalError;
use owa_core::pipeline::BuildError;
use owa_core::rdf::{load_store, GraphStore, LoadError};
use owa_core::sparql::{QueryError, ServiceRegistry};
use owa_core::vocab;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    /// Any failure without a more specific code.
    pub const FAILURE: u8 = 1;
    /// Invalid or incomplete build config.
    pub const CONFIG: u8 = 2;
    /// The query does not parse.
    pub const SYNTAX: u8 = 3;
    /// The query uses a SERVICE IRI with no mounted store.
    pub const UNREGISTERED_SERVICE: u8 = 4;
    /// The endpoint could not bind its address.
    pub const BIND: u8 = 5;
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn failure(message: impl fmt::Display) -> Self {
        CliError::new(exit::FAILURE, message.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub fn query_exit_code(e: &QueryError) -> u8 {
    match e {
        QueryError::Syntax { .. } => exit::SYNTAX,
        QueryError::UnregisteredService(_) => exit::UNREGISTERED_SERVICE,
    }
}

impl From<QueryError> for CliError {
    fn from(e: QueryError) -> Self {
        CliError::new(query_exit_code(&e), e.to_string())
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        let code = if matches!(e, BuildError::Config(_)) {
            exit::CONFIG
        } else {
            exit::FAILURE
        };
        CliError::new(code, e.to_string())
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match &e {
            EvalError::Query { source, .. } => {
                CliError::new(query_exit_code(source), e.to_string())
            }
            _ => CliError::failure(e),
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        CliError::failure(e)
    }
}

/// A knowledge base mounted under a SERVICE IRI: `iri=path`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mount {
    pub iri: String,
    pub path: PathBuf,
}

impl std::str::FromStr for Mount {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // IRIs may contain '=' in their query part; paths rarely do
        let (iri, path) = s
            .rsplit_once('=')
            .ok_or_else(|| format!("expected IRI=PATH, got '{s}'"))?;
        if iri.is_empty() || path.is_empty() {
            return Err(format!("expected IRI=PATH, got '{s}'"));
        }
        Ok(Mount {
            iri: iri.to_string(),
            path: PathBuf::from(path),
        })
    }
}

pub fn load_layers(paths: &[PathBuf]) -> Result<GraphStore, CliError> {
    Ok(load_store(paths)?)
}

pub fn load_registry(mounts: &[Mount]) -> Result<ServiceRegistry, CliError> {
    let mut registry = ServiceRegistry::new();
    for m in mounts {
        registry.register(m.iri.clone(), Arc::new(load_store(&[&m.path])?));
    }
    Ok(registry)
}

/// Expands `prefix:local` with the predeclared query prefixes; full IRIs
/// and unknown prefixes pass through.
pub fn expand_iri(text: &str) -> String {
    let text = text.trim().trim_start_matches('<').trim_end_matches('>');
    if let Some((prefix, local)) = text.split_once(':') {
        if !local.starts_with("//") {
            if let Some(ns) = vocab::query_prefixes().get(prefix) {
                return format!("{ns}{local}");
            }
        }
    }
    text.to_string()
}

pub fn read_query(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::failure(format!("cannot read {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mounts_split_on_last_equals() {
        let m: Mount = "http://dbpedia.org/sparql=kb.nt".parse().unwrap();
        assert_eq!(m.iri, "http://dbpedia.org/sparql");
        assert_eq!(m.path, PathBuf::from("kb.nt"));
        let m: Mount = "http://x.org/q?a=1=kb.nt".parse().unwrap();
        assert_eq!(m.iri, "http://x.org/q?a=1");
        assert!("kb.nt".parse::<Mount>().is_err());
        assert!("=kb.nt".parse::<Mount>().is_err());
    }

    #[test]
    fn prefixed_names_expand() {
        assert_eq!(
            expand_iri("dbr:Barack_Obama"),
            "http://dbpedia.org/resource/Barack_Obama"
        );
        assert_eq!(expand_iri("<http://x.org/a>"), "http://x.org/a");
        assert_eq!(expand_iri("http://x.org/a"), "http://x.org/a");
        assert_eq!(expand_iri("zz:a"), "zz:a");
    }
}
