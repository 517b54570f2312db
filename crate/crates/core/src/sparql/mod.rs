//! SPARQL SELECT subset: parser, evaluator over [`GraphStore`], and
//! federation through registered SERVICE endpoints.

mod ast;
mod eval;
mod expr;
mod lexer;
mod parser;
mod results;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::rdf::GraphStore;

pub use ast::*;
pub use eval::{evaluate, evaluate_with, explain, EvalOptions, JoinOrder};
pub use expr::{aggregate, eval as eval_expr, passes, Env};
pub use parser::parse_query;
pub use results::{cell, ResultTable};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("syntax error at line {line}, column {column}: expected {expected}")]
    Syntax {
        line: usize,
        column: usize,
        offset: usize,
        expected: String,
    },
    #[error("SERVICE endpoint not registered: <{0}>")]
    UnregisteredService(String),
}

impl QueryError {
    /// Builds a syntax error at byte `pos` of `text`, with 1-based line and
    /// character column.
    pub fn syntax(text: &str, pos: usize, expected: &str) -> QueryError {
        let pos = pos.min(text.len());
        let before = &text[..pos];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = before[line_start..].chars().count() + 1;
        QueryError::Syntax {
            line,
            column,
            offset: pos,
            expected: expected.to_string(),
        }
    }
}

/// SERVICE endpoints, keyed by IRI. Each endpoint is a read-only store.
#[derive(Clone, Debug, Default)]
pub struct ServiceRegistry {
    stores: BTreeMap<String, Arc<GraphStore>>,
}

impl ServiceRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `store` under `iri`, replacing any previous registration.
    pub fn register(&mut self, iri: impl Into<String>, store: Arc<GraphStore>) {
        self.stores.insert(iri.into(), store);
    }

    pub fn get(&self, iri: &str) -> Option<&GraphStore> {
        self.stores.get(iri).map(|s| s.as_ref())
    }

    pub fn iris(&self) -> impl Iterator<Item = &str> {
        self.stores.keys().map(String::as_str)
    }
}

/// Parses and evaluates `text` in one step.
pub fn run_query(
    text: &str,
    store: &GraphStore,
    registry: &ServiceRegistry,
) -> Result<ResultTable, QueryError> {
    evaluate(&parse_query(text)?, store, registry)
}
