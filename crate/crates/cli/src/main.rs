use std::path::PathBuf;
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};

use owa_cli::endpoint::{Endpoint, State};
use owa_cli::{exit, expand_iri, load_layers, load_registry, read_query, CliError, Mount};
use owa_core::analytics::{self, DateRange, KbClass, Ranked};
use owa_core::content::parse_news_corpus;
use owa_core::eval::{
    load_judgments, load_needs, metrics_csv, metrics_text, run_suite, time_queries, SearchDoc,
};
use owa_core::pipeline::{run_build, BuildConfig, BuildError};
use owa_core::rdf::Term;
use owa_core::sparql::{cell, evaluate, explain, parse_query};
use owa_core::synth::{self, SynthParams};

/// Build, query and serve semantic layers over web archive collections.
///
/// Exit codes: 0 ok, 1 failure, 2 invalid config, 3 query syntax error,
/// 4 unregistered SERVICE IRI, 5 endpoint bind failure.
#[derive(Parser)]
#[command(name = "owa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a layer from a config file.
    Build {
        #[arg(short, long)]
        config: PathBuf,
        /// Worker threads; overrides the config (0 = all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run a query file against layers and mounted knowledge bases.
    Query {
        #[command(flatten)]
        stores: Stores,
        #[arg(short, long)]
        query: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Print the evaluation plan to stderr first.
        #[arg(long)]
        explain: bool,
    },
    /// Serve layers over HTTP at /sparql.
    Serve {
        #[command(flatten)]
        stores: Stores,
        #[arg(short, long, default_value = "127.0.0.1:8890")]
        bind: String,
        #[arg(long, default_value_t = 4)]
        workers: usize,
    },
    /// Compare needs' SPARQL queries with a keyword baseline and time them.
    Eval {
        #[command(flatten)]
        stores: Stores,
        #[arg(long)]
        needs: PathBuf,
        #[arg(long)]
        judgments: PathBuf,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        /// News corpus searched by the baseline; layer titles otherwise.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Directory for metrics.csv, timing.csv and summary.txt.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ready-made analyses.
    Analytics {
        #[command(subcommand)]
        kind: Analysis,
    },
    /// Generate a synthetic collection with configs, queries and an eval suite.
    Synth {
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// A reduced collection for quick runs.
        #[arg(long)]
        small: bool,
    },
}

#[derive(Args)]
struct Stores {
    /// Layer files (N3 / N-Triples, optionally gzipped).
    #[arg(short, long = "layer", required = true)]
    layers: Vec<PathBuf>,
    /// Knowledge base mounted for SERVICE, as IRI=PATH.
    #[arg(short, long = "kb")]
    kbs: Vec<Mount>,
}

#[derive(Args)]
struct Ranking {
    #[arg(long, default_value_t = 10)]
    top: usize,
    /// Run the SPARQL formulation instead of the direct scan.
    #[arg(long)]
    via_sparql: bool,
    /// Print the SPARQL formulation and exit.
    #[arg(long)]
    show_query: bool,
}

#[derive(Args)]
struct Range {
    #[arg(long)]
    from: NaiveDate,
    #[arg(long)]
    to: NaiveDate,
}

impl Range {
    fn get(&self) -> DateRange {
        DateRange {
            from: self.from,
            to: self.to,
        }
    }
}

#[derive(Subcommand)]
enum Analysis {
    /// Monthly share of documents mentioning an entity.
    Popularity {
        #[command(flatten)]
        stores: Stores,
        #[arg(long)]
        entity: String,
        #[arg(long)]
        year: i32,
        #[arg(long)]
        via_sparql: bool,
        #[arg(long)]
        show_query: bool,
    },
    /// Entities mentioned together with a seed entity.
    Cooccur {
        #[command(flatten)]
        stores: Stores,
        #[arg(long)]
        seed: String,
        /// Only instances of this class at the DBpedia mount.
        #[arg(long)]
        class: Option<String>,
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        ranking: Ranking,
    },
    /// Documents sharing the most entities with a document.
    Similar {
        #[command(flatten)]
        stores: Stores,
        #[arg(long)]
        doc: String,
        #[command(flatten)]
        ranking: Ranking,
    },
    /// Most discussed instances of a class.
    Top {
        #[command(flatten)]
        stores: Stores,
        #[arg(long)]
        class: String,
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        ranking: Ranking,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Table,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::from(exit::OK),
        Err(e) => {
            eprintln!("owa: {e}");
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build { config, threads } => {
            let mut config = BuildConfig::load(&config).map_err(BuildError::from)?;
            if let Some(t) = threads {
                config.threads = t;
            }
            let out = run_build(&config)?;
            println!("# layer: {}", config.output.display());
            print!("{}", out.manifest.to_toml());
        }
        Command::Query {
            stores,
            query,
            format,
            explain: show_plan,
        } => {
            let text = read_query(&query)?;
            let parsed = parse_query(&text)?;
            let store = load_layers(&stores.layers)?;
            let registry = load_registry(&stores.kbs)?;
            if show_plan {
                eprint!("{}", explain(&parsed, &store, &registry));
            }
            let table = evaluate(&parsed, &store, &registry)?;
            match format {
                Format::Csv => print!("{}", table.to_csv()),
                Format::Table => print!("{}", table.to_table()),
            }
        }
        Command::Serve {
            stores,
            bind,
            workers,
        } => {
            let state = State {
                store: load_layers(&stores.layers)?,
                registry: load_registry(&stores.kbs)?,
            };
            let triples = state.store.len();
            let endpoint =
                Endpoint::bind(&bind, state).map_err(|e| CliError::new(exit::BIND, e))?;
            let addr = endpoint.local_addr().map_or(bind, |a| a.to_string());
            eprintln!("serving {triples} triples at http://{addr}/sparql");
            endpoint.spawn(workers).wait();
        }
        Command::Eval {
            stores,
            needs,
            judgments,
            runs,
            corpus,
            out,
        } => {
            let needs = load_needs(&needs)?;
            let judgments = load_judgments(&judgments)?;
            let store = load_layers(&stores.layers)?;
            let registry = load_registry(&stores.kbs)?;
            let docs = match corpus {
                Some(path) => parse_news_corpus(&path)
                    .map_err(CliError::failure)?
                    .records
                    .iter()
                    .map(SearchDoc::from_article)
                    .collect(),
                None => SearchDoc::from_layer(&store),
            };
            let metrics = run_suite(&needs, &judgments, &store, &registry, &docs)?;
            let timing = time_queries(&needs, &store, &registry, runs)?;
            let summary = format!("{}\n{}", metrics_text(&metrics), timing.to_text());
            print!("{summary}");
            if let Some(dir) = out {
                let write = |name: &str, text: &str| {
                    std::fs::create_dir_all(&dir)
                        .and_then(|_| std::fs::write(dir.join(name), text))
                        .map_err(|e| {
                            CliError::failure(format!(
                                "cannot write {}: {e}",
                                dir.join(name).display()
                            ))
                        })
                };
                write("metrics.csv", &metrics_csv(&metrics))?;
                write("timing.csv", &timing.to_csv())?;
                write("summary.txt", &summary)?;
            }
        }
        Command::Analytics { kind } => run_analysis(kind)?,
        Command::Synth { out, seed, small } => {
            let params = if small {
                SynthParams::small(seed)
            } else {
                SynthParams {
                    seed,
                    ..SynthParams::default()
                }
            };
            let s = synth::generate(&out, &params)
                .map_err(|e| CliError::failure(format!("cannot write {}: {e}", out.display())))?;
            println!("urls = {}", s.urls);
            println!("captures = {}", s.captures);
            println!("duplicate_captures = {}", s.duplicate_captures);
            println!("revisit_records = {}", s.revisit_records);
            println!("articles = {}", s.articles);
            println!("relevant_articles = {}", s.relevant_articles);
            println!("tweets = {}", s.tweets);
            println!("needs = {}", s.needs);
            println!("judgments = {}", s.judgments);
            println!("gazetteer_rows = {}", s.gazetteer_rows);
            println!("kb_triples = {}", s.kb_triples);
        }
    }
    Ok(())
}

fn print_ranked(rows: &[Ranked]) {
    let cells: Vec<String> = rows.iter().map(|r| cell(Some(&r.term))).collect();
    let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(0);
    for (c, r) in cells.iter().zip(rows) {
        println!("{c:<width$}  {}", r.count);
    }
}

fn run_analysis(kind: Analysis) -> Result<(), CliError> {
    let analytics_err = |e: analytics::AnalyticsError| match e {
        analytics::AnalyticsError::Query(q) => CliError::from(q),
        other => CliError::failure(other),
    };
    match kind {
        Analysis::Popularity {
            stores,
            entity,
            year,
            via_sparql,
            show_query,
        } => {
            let entity = expand_iri(&entity);
            let text = analytics::popularity_sparql(&entity, year);
            if show_query {
                println!("{text}");
                return Ok(());
            }
            let store = load_layers(&stores.layers)?;
            let series = if via_sparql {
                let registry = load_registry(&stores.kbs)?;
                let table = owa_core::sparql::run_query(&text, &store, &registry)?;
                analytics::popularity_from_table(&table).map_err(analytics_err)?
            } else {
                analytics::popularity_series(&store, &entity, year)
            };
            for (month, share) in series {
                println!("{month:>2}  {share:.4}");
            }
        }
        Analysis::Cooccur {
            stores,
            seed,
            class,
            range,
            ranking,
        } => {
            let seed = expand_iri(&seed);
            let class = class.map(|c| KbClass::dbpedia(expand_iri(&c)));
            let text =
                analytics::cooccurring_sparql(&seed, class.as_ref(), range.get(), ranking.top);
            ranked(&stores, &ranking, &text, |store, registry| {
                analytics::top_cooccurring(
                    store,
                    registry,
                    &seed,
                    class.as_ref(),
                    range.get(),
                    ranking.top,
                )
                .map_err(CliError::from)
            })?;
        }
        Analysis::Similar {
            stores,
            doc,
            ranking,
        } => {
            let doc = Term::iri(expand_iri(&doc));
            let text = analytics::similar_sparql(&doc, ranking.top).map_err(analytics_err)?;
            ranked(&stores, &ranking, &text, |store, _| {
                analytics::similar_documents(store, &doc, ranking.top).map_err(analytics_err)
            })?;
        }
        Analysis::Top {
            stores,
            class,
            range,
            ranking,
        } => {
            let class = KbClass::dbpedia(expand_iri(&class));
            if ranking.show_query {
                // the shape depends on whether the layer is versioned
                let store = load_layers(&stores.layers)?;
                let versioned = analytics::is_versioned(&store);
                println!(
                    "{}",
                    analytics::top_entities_sparql(&class, range.get(), ranking.top, versioned)
                );
                return Ok(());
            }
            let store = load_layers(&stores.layers)?;
            let registry = load_registry(&stores.kbs)?;
            let rows = if ranking.via_sparql {
                let text = analytics::top_entities_sparql(
                    &class,
                    range.get(),
                    ranking.top,
                    analytics::is_versioned(&store),
                );
                analytics::run_ranked(&text, &store, &registry).map_err(analytics_err)?
            } else {
                analytics::top_entities(&store, &registry, &class, range.get(), ranking.top)?
            };
            print_ranked(&rows);
        }
    }
    Ok(())
}

/// Shared driver for ranking analyses with a fixed SPARQL text.
fn ranked<F>(stores: &Stores, ranking: &Ranking, text: &str, native: F) -> Result<(), CliError>
where
    F: FnOnce(
        &owa_core::rdf::GraphStore,
        &owa_core::sparql::ServiceRegistry,
    ) -> Result<Vec<Ranked>, CliError>,
{
    if ranking.show_query {
        println!("{text}");
        return Ok(());
    }
    let store = load_layers(&stores.layers)?;
    let registry = load_registry(&stores.kbs)?;
    let rows = if ranking.via_sparql {
        analytics::run_ranked(text, &store, &registry).map_err(|e| match e {
            analytics::AnalyticsError::Query(q) => CliError::from(q),
            other => CliError::failure(other),
        })?
    } else {
        native(&store, &registry)?
    };
    print_ranked(&rows);
    Ok(())
}
