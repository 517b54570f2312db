//! Helpers shared by integration tests (also included by the cli tests).

#![allow(dead_code)]

pub mod naive;
pub mod random_queries;

use std::path::{Path, PathBuf};

use owa_core::pipeline::{build_layer, BuildConfig};
use owa_core::rdf::{load_file, parse, GraphStore};
use owa_core::synth::{self, paths, SynthParams};

/// Layers of a small generated collection, parsed back from their text.
pub struct SmallLayers {
    pub dir: PathBuf,
    pub news: GraphStore,
    pub tweets: GraphStore,
    pub warc: GraphStore,
    pub kb: GraphStore,
}

pub fn build_text(config: &Path, threads: usize) -> String {
    let mut config = BuildConfig::load(config).expect("config");
    config.threads = threads;
    build_layer(&config).expect("build").text
}

pub fn store_of(text: &str) -> GraphStore {
    GraphStore::from_triples(parse(text, None).expect("layer parses"))
}

/// Generates the small collection in `dir` and builds its three layers.
pub fn small_layers(dir: &Path, seed: u64) -> SmallLayers {
    synth::generate(dir, &SynthParams::small(seed)).expect("generate");
    let layer = |cfg: &str| store_of(&build_text(&dir.join(cfg), 1));
    SmallLayers {
        dir: dir.to_path_buf(),
        news: layer(paths::NEWS_CONFIG),
        tweets: layer(paths::TWEETS_CONFIG),
        warc: layer(paths::WARC_CONFIG),
        kb: GraphStore::from_triples(load_file(&dir.join(paths::KB)).expect("kb")),
    }
}

impl SmallLayers {
    /// The store a shipped query runs against.
    pub fn for_layer(&self, name: &str) -> GraphStore {
        match name {
            "news" => self.news.clone(),
            "tweets" => self.tweets.clone(),
            "warc" => self.warc.clone(),
            "news+tweets" => GraphStore::from_triples(self.news.iter().chain(self.tweets.iter())),
            other => panic!("unknown layer {other}"),
        }
    }
}
