//! Semantic layers for web archives: parse WARC/CDX collections, news and
//! tweet corpora, link entities, emit Open Web Archive RDF, and query the
//! result with an embedded SPARQL subset that supports local federation.

pub mod analytics;
pub mod archive;
pub mod content;
pub mod eval;
pub mod layer;
pub mod linker;
pub mod pipeline;
pub mod rdf;
pub mod sparql;
pub mod synth;
pub mod vocab;
