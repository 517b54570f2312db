//! Open Web Archive triples: capture grouping, duplicate detection,
//! per-document emission and deterministic serialization.

mod emit;
mod serialize;
mod versions;

pub use emit::{
    article_link_text, document_node, emit_archived_doc, emit_article, emit_mentions, emit_sameas,
    emit_tweet, emit_version, enrich_entities, stable_hash_hex, tweet_node, version_node,
    AnnotationMode,
};
pub use serialize::{serialize_layer, write_layer_file, Manifest};
pub use versions::{detect_duplicates, group_versions, is_html_response, Assignment};
