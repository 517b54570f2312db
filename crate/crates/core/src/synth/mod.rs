//! Deterministic synthetic collections.
//!
//! One seed yields an occupy-themed crawl (WARC + CDX), a news corpus, a
//! tweet stream, the gazetteer and knowledge base they link against, build
//! configs, example queries and an evaluation suite whose judgments come
//! from the generator's own ground truth.

mod catalog;
pub mod queries;

use std::collections::{BTreeSet, HashSet};
use std::io;
use std::path::Path;

use chrono::{Duration, NaiveDate, NaiveDateTime};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha1::{Digest, Sha1};

use crate::archive::{
    write_cdx, CaptureTime, CdxIndex, CdxLegend, CdxRecord, DigestAlgorithm, WarcWriter,
};
use crate::content::{NewsLine, TweetLine};
use crate::eval::{judgments_tsv, write_needs, InfoNeed, JudgmentSet, Label};
use crate::linker::news_threshold;
use crate::rdf::Term;
use crate::vocab;

pub use catalog::GOLF_ARTICLE_ID;
use catalog::{Entity, Group, NeedSpec, Target};

/// File layout of a generated collection, relative to its root.
pub mod paths {
    pub const GAZETTEER: &str = "gazetteer.tsv";
    pub const KB: &str = "kb/dbpedia.nt";
    pub const NEWS: &str = "news/articles.jsonl";
    pub const TWEETS: &str = "tweets/tweets.jsonl";
    pub const WARC: &str = "warc/occupy.warc.gz";
    pub const CDX: &str = "warc/occupy.cdx";
    pub const NEEDS: &str = "eval/needs.tsv";
    pub const JUDGMENTS: &str = "eval/judgments.tsv";
    pub const QUERIES: &str = "queries";
    pub const NEWS_CONFIG: &str = "configs/news.toml";
    pub const TWEETS_CONFIG: &str = "configs/tweets.toml";
    pub const WARC_CONFIG: &str = "configs/warc.toml";
    pub const NEWS_LAYER: &str = "layers/news.n3";
    pub const TWEETS_LAYER: &str = "layers/tweets.n3";
    pub const WARC_LAYER: &str = "layers/warc.n3";
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthParams {
    pub seed: u64,
    pub urls: usize,
    pub captures_per_url: usize,
    /// Share of all captures that repeat an earlier digest of their URL.
    pub duplicate_percent: usize,
    pub articles: usize,
    pub tweets: usize,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            seed: 42,
            urls: 150,
            captures_per_url: 4,
            duplicate_percent: 15,
            articles: 1500,
            tweets: 900,
        }
    }
}

impl SynthParams {
    /// A collection small enough for quick tests.
    pub fn small(seed: u64) -> Self {
        SynthParams {
            seed,
            urls: 20,
            captures_per_url: 4,
            duplicate_percent: 15,
            articles: 120,
            tweets: 100,
        }
    }
}

/// What was written.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SynthSummary {
    pub urls: usize,
    pub captures: usize,
    pub duplicate_captures: usize,
    pub revisit_records: usize,
    pub articles: usize,
    pub relevant_articles: usize,
    pub tweets: usize,
    pub needs: usize,
    pub judgments: usize,
    pub gazetteer_rows: usize,
    pub kb_triples: usize,
}

/// Writes a complete collection under `dir`.
pub fn generate(dir: &Path, params: &SynthParams) -> io::Result<SynthSummary> {
    for sub in ["kb", "news", "tweets", "warc", "eval", "queries", "configs"] {
        std::fs::create_dir_all(dir.join(sub))?;
    }
    let mut summary = SynthSummary::default();
    // Each part draws from its own stream so changing one size leaves the
    // other parts unchanged.
    let stream =
        |n: u64| ChaCha8Rng::seed_from_u64(params.seed.wrapping_mul(0x9E37_79B9).wrapping_add(n));

    let rows = gazetteer_rows();
    summary.gazetteer_rows = rows.len();
    let mut gaz = String::from("# surface\turi\tprior\tkeywords\n");
    for r in &rows {
        gaz.push_str(r);
        gaz.push('\n');
    }
    std::fs::write(dir.join(paths::GAZETTEER), gaz)?;

    let kb = kb_lines();
    summary.kb_triples = kb.len();
    std::fs::write(dir.join(paths::KB), kb.join("\n") + "\n")?;

    let articles = news(&mut stream(1), params);
    summary.articles = articles.len();
    summary.relevant_articles = articles.iter().filter(|a| a.story.is_some()).count();
    let mut out = String::new();
    for a in &articles {
        let line = NewsLine {
            id: a.id.clone(),
            url: format!("http://data.nytimes.com/{}", a.id),
            title: a.title.clone(),
            date: a.date.format("%Y-%m-%d").to_string(),
            body: a.body.clone(),
        };
        out.push_str(&serde_json::to_string(&line).map_err(io::Error::other)?);
        out.push('\n');
    }
    std::fs::write(dir.join(paths::NEWS), out)?;

    let (needs, judgments) = eval_suite(&articles);
    summary.needs = needs.len();
    summary.judgments = judgments.labels.len();
    write_needs(&dir.join("eval"), "needs.tsv", &needs)?;
    std::fs::write(dir.join(paths::JUDGMENTS), judgments_tsv(&judgments))?;

    let tweets = tweets(&mut stream(2), params.tweets);
    summary.tweets = tweets.len();
    let mut out = String::new();
    for t in &tweets {
        out.push_str(&serde_json::to_string(t).map_err(io::Error::other)?);
        out.push('\n');
    }
    std::fs::write(dir.join(paths::TWEETS), out)?;

    let crawl = crawl(&mut stream(3), params);
    summary.urls = params.urls;
    summary.captures = crawl.len();
    summary.duplicate_captures = crawl.iter().filter(|c| c.duplicate).count();
    summary.revisit_records = crawl.iter().filter(|c| c.refers_to.is_some()).count();
    write_crawl(dir, &crawl)?;

    for (name, _, text) in queries::ALL {
        std::fs::write(dir.join(paths::QUERIES).join(name), text)?;
    }
    write_configs(dir)?;
    Ok(summary)
}

fn expand(curie: &str) -> String {
    let (prefix, local) = curie.split_once(':').expect("curie");
    let ns = match prefix {
        "dbo" => vocab::DBO,
        "dbr" => vocab::DBR,
        "dbc" => vocab::DBC,
        "yago" => vocab::YAGO,
        "owl" => vocab::OWL,
        other => panic!("unknown prefix {other}"),
    };
    format!("{ns}{local}")
}

fn dbr(id: &str) -> String {
    format!("{}{id}", vocab::DBR)
}

fn gazetteer_rows() -> Vec<String> {
    let mut rows: Vec<String> = catalog::ENTITIES
        .iter()
        .flat_map(|e| {
            e.surfaces
                .iter()
                .map(move |(s, p)| format!("{s}\t{}\t{p}\t{}", dbr(e.id), e.keywords.join(",")))
        })
        .collect();
    rows.sort();
    rows
}

fn kb_lines() -> Vec<String> {
    let mut lines = BTreeSet::new();
    let mut add = |s: &str, p: &str, o: Term| {
        lines.insert(format!(
            "{} {} {} .",
            Term::iri(s).to_nt(),
            Term::iri(p).to_nt(),
            o.to_nt()
        ));
    };
    let birth_place = format!("{}birthPlace", vocab::DBO);
    let birth_date = format!("{}birthDate", vocab::DBO);
    let abstract_ = format!("{}abstract", vocab::DBO);
    let label = format!("{}label", vocab::RDFS);
    for e in catalog::ENTITIES {
        let s = dbr(e.id);
        add(&s, &label, Term::lang_string(e.id.replace('_', " "), "en"));
        for t in catalog::kb_types(e.group) {
            add(&s, vocab::RDF_TYPE, Term::iri(expand(t)));
        }
        let subject = match e.group {
            Group::Laker => Some("dbc:Los_Angeles_Lakers_players"),
            Group::Lawyer => Some("dbc:New_York_lawyers"),
            Group::Politician => Some("dbc:American_politicians"),
            Group::Leader => Some("dbc:Presidents_of_South_Africa"),
            Group::Golfer => Some("dbc:Golfers"),
            _ => None,
        };
        if let Some(c) = subject {
            add(&s, vocab::DCTERMS_SUBJECT, Term::iri(expand(c)));
        }
    }
    for (id, place, date, fr) in catalog::LAWYERS {
        let s = dbr(id);
        add(&s, &birth_place, Term::iri(dbr(place)));
        if let Some(d) = date {
            add(&s, &birth_date, Term::typed(*d, vocab::XSD_DATE));
        }
        add(&s, &abstract_, Term::lang_string(*fr, "fr"));
        add(
            &s,
            &abstract_,
            Term::lang_string(
                format!("{} is a lawyer from New York.", id.replace('_', " ")),
                "en",
            ),
        );
    }
    for (id, class) in catalog::KB_ONLY {
        add(
            &dbr(id),
            vocab::RDF_TYPE,
            Term::iri(expand(&format!("dbo:{class}"))),
        );
    }
    lines.into_iter().collect()
}

// ---- news ----

struct Article {
    id: String,
    date: NaiveDate,
    title: String,
    body: String,
    /// Need this article was written for.
    story: Option<u32>,
}

fn date(text: &str) -> NaiveDate {
    NaiveDate::parse_from_str(text, "%Y-%m-%d").expect("catalog date")
}

fn day_in(rng: &mut ChaCha8Rng, from: NaiveDate, to: NaiveDate) -> NaiveDate {
    from + Duration::days(rng.gen_range(0..=(to - from).num_days()))
}

fn article_id(seed: u64, i: usize) -> String {
    let digest = Sha1::digest(format!("article/{seed}/{i}").as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02X}")).collect();
    hex[..34].to_string()
}

/// Whether a mention of `e` can make an article match `spec`'s query.
fn qualifies(e: &Entity, spec: &NeedSpec) -> bool {
    match spec.target {
        Target::Entity(id) => e.id == id,
        Target::WithObama => false,
        Target::Class(pattern) => {
            if pattern.contains("New_York_lawyers") {
                e.group == Group::Lawyer
            } else if pattern.contains("Lakers_players") {
                e.group == Group::Laker
            } else {
                catalog::kb_types(e.group)
                    .iter()
                    .any(|t| pattern.contains(t))
            }
        }
    }
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn filler(rng: &mut ChaCha8Rng) -> String {
    catalog::FILLER
        .choose(rng)
        .unwrap()
        .replace("{n}", catalog::NOUNS.choose(rng).unwrap())
        .replace("{v}", catalog::VERBS.choose(rng).unwrap())
        .replace("{p}", catalog::PERIODS.choose(rng).unwrap())
        .replace("{a}", catalog::ADJECTIVES.choose(rng).unwrap())
        .replace("{g}", catalog::AUDIENCES.choose(rng).unwrap())
}

/// Chooses how to refer to entities within one article: full name first,
/// any listed surface afterwards, or a description when unlinked.
struct Naming {
    named: HashSet<&'static str>,
    unlinked: bool,
}

impl Naming {
    fn new(unlinked: bool) -> Self {
        Naming {
            named: HashSet::new(),
            unlinked,
        }
    }

    fn refer(&mut self, rng: &mut ChaCha8Rng, e: &'static Entity, cast: bool) -> String {
        if self.unlinked && cast {
            return if e.id == "Barack_Obama" {
                "the senator from Illinois".to_string()
            } else {
                catalog::description(e.group).to_string()
            };
        }
        if self.named.insert(e.id) {
            e.surfaces[0].0.to_string()
        } else {
            e.surfaces.choose(rng).unwrap().0.to_string()
        }
    }
}

fn sentence_about(
    rng: &mut ChaCha8Rng,
    naming: &mut Naming,
    e: &'static Entity,
    cast: bool,
) -> String {
    let template = catalog::sentences(e.group).choose(rng).unwrap();
    capitalize(&template.replacen("{}", &naming.refer(rng, e, cast), 1))
}

fn paragraphs(rng: &mut ChaCha8Rng, sentences: Vec<String>) -> String {
    let mut out = Vec::new();
    let mut rest = &sentences[..];
    while !rest.is_empty() {
        let n = rng.gen_range(3..=4).min(rest.len());
        out.push(rest[..n].join(" "));
        rest = &rest[n..];
    }
    out.join("\n\n")
}

fn background_entity(rng: &mut ChaCha8Rng) -> &'static Entity {
    catalog::entity(catalog::NEWS_BACKGROUND.choose(rng).unwrap())
}

fn story(
    rng: &mut ChaCha8Rng,
    spec: &NeedSpec,
    id: String,
    date: NaiveDate,
    unlinked: bool,
    fixed_cast: bool,
) -> Article {
    let k = rng.gen_range(1..=3).min(spec.pool.len());
    let mut cast: Vec<&'static Entity> = if fixed_cast {
        spec.pool[..k.max(3).min(spec.pool.len())]
            .iter()
            .map(|id| catalog::entity(id))
            .collect()
    } else {
        spec.pool
            .choose_multiple(rng, k)
            .map(|id| catalog::entity(id))
            .collect()
    };
    if matches!(spec.target, Target::WithObama) {
        cast.insert(0, catalog::entity("Barack_Obama"));
    }
    let mut naming = Naming::new(unlinked);
    let lead = cast[0];
    let title_template = catalog::titles(lead.group).choose(rng).unwrap();
    let title =
        capitalize(&title_template.replacen("{}", &capitalize(&naming.refer(rng, lead, true)), 1));

    let mut body = vec![sentence_about(rng, &mut naming, lead, true)];
    let mut rest = Vec::new();
    for _ in 0..rng.gen_range(6..=10) {
        let e = if rng.gen_bool(0.4) {
            lead
        } else {
            cast.choose(rng).copied().unwrap()
        };
        rest.push(sentence_about(rng, &mut naming, e, true));
    }
    for _ in 0..rng.gen_range(2..=4) {
        let e = background_entity(rng);
        rest.push(sentence_about(rng, &mut naming, e, false));
    }
    if rng.gen_bool(0.65) {
        rest.push(catalog::topic_sentence(spec.group).to_string());
    }
    for _ in 0..rng.gen_range(3..=5) {
        rest.push(filler(rng));
    }
    rest.shuffle(rng);
    body.extend(rest);
    Article {
        id,
        date,
        title,
        body: paragraphs(rng, body),
        story: Some(spec.id),
    }
}

fn background(rng: &mut ChaCha8Rng, id: String, date: NaiveDate) -> Article {
    let mut naming = Naming::new(false);
    let title = catalog::BACKGROUND_TITLES.choose(rng).unwrap().to_string();
    let mut body = Vec::new();
    for _ in 0..rng.gen_range(8..=13) {
        let e = background_entity(rng);
        body.push(sentence_about(rng, &mut naming, e, false));
    }
    for _ in 0..rng.gen_range(3..=6) {
        body.push(filler(rng));
    }
    if rng.gen_bool(0.25) {
        body.push(catalog::KEYWORD_NOISE.choose(rng).unwrap().to_string());
    }
    body.shuffle(rng);
    Article {
        id,
        date,
        title,
        body: paragraphs(rng, body),
        story: None,
    }
}

fn news(rng: &mut ChaCha8Rng, params: &SynthParams) -> Vec<Article> {
    let per_need = (params.articles * 35 / 100 / catalog::NEEDS.len()).max(1);
    let distractors = (per_need / 8).max(1);
    let mut next = 0usize;
    let mut fresh_id = |golf: bool| {
        if golf {
            return GOLF_ARTICLE_ID.to_string();
        }
        next += 1;
        article_id(params.seed, next)
    };
    let mut out = Vec::new();

    for spec in catalog::NEEDS {
        let (from, to) = (date(spec.from), date(spec.to));
        for i in 0..per_need {
            let golf = spec.id == 8 && i == 0;
            let unlinked = !golf && rng.gen_bool(0.15);
            let d = day_in(rng, from, to);
            out.push(story(rng, spec, fresh_id(golf), d, unlinked, golf));
        }
        for _ in 0..distractors {
            let d = day_in(rng, from, to);
            let mut a = background(rng, fresh_id(false), d);
            let e = catalog::entity(spec.pool.choose(rng).unwrap());
            a.body.push_str(&format!(
                "\n\nAmong those attending was {}.",
                e.surfaces[0].0
            ));
            out.push(a);
        }
    }

    // Mandela outside his need's year, rising to a peak around it
    let mandela = catalog::entity("Nelson_Mandela");
    let spec16 = catalog::NEEDS.iter().find(|n| n.id == 16).expect("need 16");
    let scale = per_need as f64 / 13.0;
    for (year, base) in [
        (1986, 2),
        (1987, 3),
        (1988, 5),
        (1989, 8),
        (1991, 10),
        (1992, 7),
        (1993, 5),
        (1994, 4),
        (1995, 3),
    ] {
        let n = (base as f64 * scale).round().max(1.0) as usize;
        let (from, to) = (
            NaiveDate::from_ymd_opt(year, 1, 1).unwrap(),
            NaiveDate::from_ymd_opt(year, 12, 31).unwrap(),
        );
        for _ in 0..n {
            let d = loop {
                let d = day_in(rng, from, to);
                let clash = catalog::NEEDS
                    .iter()
                    .any(|s| qualifies(mandela, s) && d >= date(s.from) && d <= date(s.to));
                if !clash {
                    break d;
                }
            };
            let mut a = story(rng, spec16, fresh_id(false), d, false, false);
            a.story = None;
            out.push(a);
        }
    }

    let (from, to) = (date("1985-01-01"), date("2016-12-31"));
    while out.len() < params.articles {
        let d = day_in(rng, from, to);
        out.push(background(rng, fresh_id(false), d));
    }
    out.sort_by(|a, b| a.date.cmp(&b.date).then_with(|| a.id.cmp(&b.id)));
    out
}

fn need_sparql(spec: &NeedSpec) -> String {
    let window = format!(
        " ?article dc:date ?date FILTER(?date >= \"{}\"^^xsd:date && ?date <= \"{}\"^^xsd:date)\n",
        spec.from, spec.to
    );
    match spec.target {
        Target::Class(pattern) => format!(
            "SELECT DISTINCT ?article WHERE {{\n SERVICE <{}> {{\n   {pattern} }}\n{window} ?article schema:mentions ?m .\n ?m oae:hasMatchedURI ?e\n}}\n",
            vocab::DBPEDIA_SPARQL
        ),
        Target::Entity(id) => format!(
            "SELECT DISTINCT ?article WHERE {{\n{window} ?article schema:mentions ?m .\n ?m oae:hasMatchedURI dbr:{id}\n}}\n"
        ),
        Target::WithObama => format!(
            "SELECT DISTINCT ?article WHERE {{\n SERVICE <{}> {{\n   ?e a dbo:Politician }}\n{window} ?article schema:mentions ?m .\n ?m oae:hasMatchedURI dbr:Barack_Obama .\n ?article schema:mentions ?m2 .\n ?m2 oae:hasMatchedURI ?e FILTER(?e != dbr:Barack_Obama)\n}}\n",
            vocab::DBPEDIA_SPARQL
        ),
    }
}

/// Needs plus a judgment for every article inside each need's range:
/// relevant exactly when the article was written for that need.
fn eval_suite(articles: &[Article]) -> (Vec<InfoNeed>, JudgmentSet) {
    let mut needs = Vec::new();
    let mut judgments = JudgmentSet::default();
    for spec in catalog::NEEDS {
        let (from, to) = (date(spec.from), date(spec.to));
        needs.push(InfoNeed {
            id: spec.id,
            description: spec.description.to_string(),
            sparql: need_sparql(spec),
            keywords: spec.keywords.to_string(),
            date_from: from,
            date_to: to,
        });
        for a in articles.iter().filter(|a| a.date >= from && a.date <= to) {
            let label = if a.story == Some(spec.id) {
                Label::Relevant
            } else {
                Label::Irrelevant
            };
            judgments.labels.insert(
                (spec.id, format!("http://data.nytimes.com/{}", a.id)),
                label,
            );
        }
    }
    (needs, judgments)
}

// ---- tweets ----

/// Share of tweets about Obama per month of 2016.
const OBAMA_SHARE: [f64; 12] = [
    0.15, 0.12, 0.12, 0.10, 0.10, 0.12, 0.15, 0.12, 0.15, 0.20, 0.35, 0.25,
];

fn tweets(rng: &mut ChaCha8Rng, n: usize) -> Vec<TweetLine> {
    let obama = catalog::entity("Barack_Obama");
    let players = catalog::NEEDS
        .iter()
        .find(|s| s.id == 12)
        .expect("need 12")
        .pool;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (year, month) = if rng.gen_bool(0.03) {
            (2015, 12)
        } else {
            (2016, rng.gen_range(1..=12u32))
        };
        let first = NaiveDate::from_ymd_opt(year, month, 1).unwrap();
        let next = if month == 12 {
            NaiveDate::from_ymd_opt(year + 1, 1, 1)
        } else {
            NaiveDate::from_ymd_opt(year, month + 1, 1)
        };
        let day = day_in(rng, first, next.unwrap() - Duration::days(1));
        let at: NaiveDateTime = day
            .and_hms_opt(
                rng.gen_range(0..24),
                rng.gen_range(0..60),
                rng.gen_range(0..60),
            )
            .unwrap();
        let summer = year == 2016 && (6..=8).contains(&month);
        let p_obama = if year == 2016 {
            OBAMA_SHARE[month as usize - 1]
        } else {
            0.1
        };
        let p_lakers = if summer { 0.3 } else { 0.08 };
        let roll: f64 = rng.gen();
        let (text, lakers) = if roll < p_obama {
            let surface = obama.surfaces.choose(rng).unwrap().0;
            (
                catalog::TWEET_OBAMA
                    .choose(rng)
                    .unwrap()
                    .replacen("{}", surface, 1),
                false,
            )
        } else if roll < p_obama + p_lakers {
            let player = catalog::entity(players.choose(rng).unwrap());
            let surface = player.surfaces.choose(rng).unwrap().0;
            (
                catalog::TWEET_LAKERS
                    .choose(rng)
                    .unwrap()
                    .replacen("{}", surface, 1),
                true,
            )
        } else {
            let place = catalog::entity(catalog::TWEET_PLACES.choose(rng).unwrap());
            (
                catalog::TWEET_CHATTER
                    .choose(rng)
                    .unwrap()
                    .replacen("{}", place.surfaces[0].0, 1),
                false,
            )
        };
        let retweets: i64 = if lakers && summer && rng.gen_bool(0.35) {
            rng.gen_range(51..=900)
        } else if rng.gen_bool(0.8) {
            rng.gen_range(0..=12)
        } else {
            rng.gen_range(13..=50)
        };
        out.push(TweetLine {
            id: (740_000_000_000_000_000u64 + i as u64 * 10_000 + rng.gen_range(0..10_000))
                .to_string(),
            text,
            created_at: at.format("%Y-%m-%dT%H:%M:%SZ").to_string(),
            favorite_count: retweets * 2 + rng.gen_range(0..=30),
            retweet_count: retweets,
            screen_name: catalog::SCREEN_NAMES.choose(rng).unwrap().to_string(),
        });
    }
    out.sort_by(|a, b| {
        a.created_at
            .cmp(&b.created_at)
            .then_with(|| a.id.cmp(&b.id))
    });
    out
}

// ---- web archive ----

struct Capture {
    url: String,
    time: NaiveDateTime,
    body: std::rc::Rc<Vec<u8>>,
    digest: String,
    duplicate: bool,
    /// Set for revisit records: time of the capture whose payload repeats.
    refers_to: Option<NaiveDateTime>,
}

/// SURT form of an absolute URL: reversed host, `)`, lowercased path.
pub fn surt(url: &str) -> String {
    match url::Url::parse(url) {
        Ok(u) => {
            let host = u.host_str().unwrap_or("").trim_start_matches("www.");
            let mut parts: Vec<&str> = host.split('.').collect();
            parts.reverse();
            let mut out = format!("{}){}", parts.join(","), u.path().to_lowercase());
            if let Some(q) = u.query() {
                out.push('?');
                out.push_str(q);
            }
            out
        }
        Err(_) => url.to_lowercase(),
    }
}

fn occupy_sentence(rng: &mut ChaCha8Rng) -> String {
    let roll = rng.gen_range(0..10);
    if roll < 4 {
        let total: u32 = catalog::OCCUPY_JOURNALISTS.iter().map(|j| j.1).sum();
        let mut pick = rng.gen_range(0..total);
        let id = catalog::OCCUPY_JOURNALISTS
            .iter()
            .find(|(_, w)| {
                if pick < *w {
                    true
                } else {
                    pick -= w;
                    false
                }
            })
            .unwrap()
            .0;
        let e = catalog::entity(id);
        let surface = if rng.gen_bool(0.7) {
            e.surfaces[0].0
        } else {
            e.surfaces.choose(rng).unwrap().0
        };
        capitalize(
            &catalog::OCCUPY_PERSON
                .choose(rng)
                .unwrap()
                .replacen("{}", surface, 1),
        )
    } else if roll < 9 {
        let e = catalog::entity(catalog::OCCUPY_OTHERS.choose(rng).unwrap());
        let templates = match e.group {
            Group::Place => catalog::OCCUPY_PLACE,
            Group::Org => catalog::OCCUPY_ORG,
            _ => catalog::OCCUPY_PERSON,
        };
        capitalize(
            &templates
                .choose(rng)
                .unwrap()
                .replacen("{}", e.surfaces[0].0, 1),
        )
    } else {
        catalog::OCCUPY_FILLER.choose(rng).unwrap().to_string()
    }
}

fn occupy_paragraph(rng: &mut ChaCha8Rng) -> String {
    (0..rng.gen_range(2..=4))
        .map(|_| occupy_sentence(rng))
        .collect::<Vec<_>>()
        .join(" ")
}

fn page_html(host: &str, title: &str, paragraphs: &[String], link: &str) -> Vec<u8> {
    let mut html = format!(
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>{title}</title></head>\n<body>\n\
         <div class=\"nav\"><a href=\"http://{host}/\">Home</a> | <a href=\"http://{host}/about/\">About</a> | \
         <a href=\"http://{host}/events/\">Events</a> | <a href=\"http://{host}/donate/\">Donate</a> | \
         <a href=\"http://{host}/contact/\">Contact</a></div>\n<div class=\"content\">\n<h1>{title}</h1>\n"
    );
    for (i, p) in paragraphs.iter().enumerate() {
        if i == 1 {
            html.push_str(&format!(
                "<p>{p} See also <a href=\"{link}\">this report</a>.</p>\n"
            ));
        } else {
            html.push_str(&format!("<p>{p}</p>\n"));
        }
    }
    html.push_str(&format!(
        "</div>\n<div class=\"footer\">Posted by the media working group. | <a href=\"http://{host}/feed/\">RSS</a> | \
         <a href=\"http://{host}/privacy/\">Privacy</a></div>\n</body></html>\n"
    ));
    html.into_bytes()
}

fn crawl(rng: &mut ChaCha8Rng, params: &SynthParams) -> Vec<Capture> {
    let per_url = params.captures_per_url.max(1);
    let total = params.urls * per_url;
    let mut slots: Vec<(usize, usize)> = (0..params.urls)
        .flat_map(|u| (1..per_url).map(move |k| (u, k)))
        .collect();
    slots.shuffle(rng);
    let wanted = (total * params.duplicate_percent / 100).min(slots.len());
    let duplicate: HashSet<(usize, usize)> = slots[..wanted].iter().copied().collect();

    let urls: Vec<(String, String)> = (0..params.urls)
        .map(|u| {
            let host = catalog::OCCUPY_HOSTS[u % catalog::OCCUPY_HOSTS.len()];
            let section = catalog::OCCUPY_SECTIONS.choose(rng).unwrap();
            let topic = catalog::OCCUPY_TOPICS.choose(rng).unwrap();
            let slug = topic.to_lowercase().replace(' ', "-");
            (
                host.to_string(),
                format!("http://{host}/{section}/{slug}-{u}/"),
            )
        })
        .collect();

    let mut out = Vec::with_capacity(total);
    let start = NaiveDate::from_ymd_opt(2011, 10, 1)
        .unwrap()
        .and_hms_opt(0, 0, 0)
        .unwrap();
    for (u, (host, url)) in urls.iter().enumerate() {
        let topic = catalog::OCCUPY_TOPICS.choose(rng).unwrap();
        let title = format!("{topic} | {host}");
        let base: Vec<String> = (0..rng.gen_range(3..=5))
            .map(|_| occupy_paragraph(rng))
            .collect();
        let link = &urls[rng.gen_range(0..urls.len())].1;
        let mut time = start
            + Duration::days(rng.gen_range(0..60))
            + Duration::seconds(rng.gen_range(0..86_400));
        let mut history: Vec<(NaiveDateTime, std::rc::Rc<Vec<u8>>, String)> = Vec::new();
        let mut paragraphs = base;
        for k in 0..per_url {
            if k > 0 {
                time += Duration::days(rng.gen_range(7..45))
                    + Duration::seconds(rng.gen_range(0..86_400));
            }
            if duplicate.contains(&(u, k)) {
                let source = if k >= 2 && rng.gen_bool(0.3) {
                    k - 2
                } else {
                    k - 1
                };
                let (src_time, body, digest) = history[source].clone();
                let revisit = rng.gen_bool(0.5);
                out.push(Capture {
                    url: url.clone(),
                    time,
                    body: body.clone(),
                    digest: digest.clone(),
                    duplicate: true,
                    refers_to: revisit.then_some(src_time),
                });
                history.push((time, body, digest));
            } else {
                if k > 0 {
                    let update = format!(
                        "Update {}: {}",
                        time.format("%B %-d"),
                        occupy_paragraph(rng)
                    );
                    paragraphs.push(update);
                }
                let body = std::rc::Rc::new(page_html(host, &title, &paragraphs, link));
                let digest = DigestAlgorithm::Sha1.digest(&body);
                out.push(Capture {
                    url: url.clone(),
                    time,
                    body: body.clone(),
                    digest: digest.clone(),
                    duplicate: false,
                    refers_to: None,
                });
                history.push((time, body, digest));
            }
        }
    }
    out.sort_by(|a, b| a.time.cmp(&b.time).then_with(|| a.url.cmp(&b.url)));
    out
}

fn write_crawl(dir: &Path, crawl: &[Capture]) -> io::Result<()> {
    let warc_name = Path::new(paths::WARC)
        .file_name()
        .unwrap()
        .to_string_lossy()
        .to_string();
    let mut writer = WarcWriter::create(&dir.join(paths::WARC))?;
    let mut records = Vec::with_capacity(crawl.len());
    for c in crawl {
        let when = c.time.format("%Y-%m-%dT%H:%M:%SZ").to_string();
        let (loc, mime, status) = match c.refers_to {
            Some(src) => {
                let refers = src.format("%Y-%m-%dT%H:%M:%SZ").to_string();
                (
                    writer.write_revisit(&c.url, &when, "text/html", &c.digest, &refers)?,
                    "warc/revisit",
                    None,
                )
            }
            None => (
                writer.write_response(
                    &c.url,
                    &when,
                    200,
                    "text/html; charset=utf-8",
                    &c.body,
                    &c.digest,
                )?,
                "text/html",
                Some(200),
            ),
        };
        records.push(CdxRecord {
            surt_url: surt(&c.url),
            timestamp: CaptureTime(c.time),
            original_url: c.url.clone(),
            mime: mime.to_string(),
            status,
            digest: c.digest.clone(),
            redirect: None,
            meta_flags: None,
            compressed_size: loc.compressed_size,
            offset: loc.offset,
            filename: warc_name.clone(),
        });
    }
    writer.finish()?;
    write_cdx(
        &dir.join(paths::CDX),
        &CdxIndex::from_records(records),
        &CdxLegend::default(),
    )?;
    Ok(())
}

fn write_configs(dir: &Path) -> io::Result<()> {
    let news = format!(
        "corpus = \"news\"\ninputs = [\"../{}\"]\ngazetteer = \"../{}\"\nkb = \"../{}\"\noutput = \"../{}\"\n\
         # probability cut of 0.2 on the log scale\nthreshold = {}\n",
        paths::NEWS,
        paths::GAZETTEER,
        paths::KB,
        paths::NEWS_LAYER,
        news_threshold()
    );
    let tweets = format!(
        "corpus = \"tweets\"\ninputs = [\"../{}\"]\ngazetteer = \"../{}\"\nkb = \"../{}\"\noutput = \"../{}\"\n",
        paths::TWEETS,
        paths::GAZETTEER,
        paths::KB,
        paths::TWEETS_LAYER
    );
    let warc = format!(
        "corpus = \"warc\"\ninputs = [\"../{}\"]\nwarc_dir = \"../warc\"\ngazetteer = \"../{}\"\nkb = \"../{}\"\n\
         output = \"../{}\"\nversion_url_base = \"http://web.archive.org/web\"\n",
        paths::CDX,
        paths::GAZETTEER,
        paths::KB,
        paths::WARC_LAYER
    );
    std::fs::write(dir.join(paths::NEWS_CONFIG), news)?;
    std::fs::write(dir.join(paths::TWEETS_CONFIG), tweets)?;
    std::fs::write(dir.join(paths::WARC_CONFIG), warc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surt_reverses_host() {
        assert_eq!(
            surt("http://www.occupywallst.org/News/a-1/"),
            "org,occupywallst)/news/a-1/"
        );
        assert_eq!(surt("http://nycga.net/x?y=1"), "net,nycga)/x?y=1");
    }

    #[test]
    fn every_need_pool_member_qualifies() {
        for spec in catalog::NEEDS {
            if matches!(spec.target, Target::WithObama) {
                continue;
            }
            for id in spec.pool {
                assert!(
                    qualifies(catalog::entity(id), spec),
                    "{id} for need {}",
                    spec.id
                );
            }
        }
    }

    #[test]
    fn background_entities_never_qualify() {
        for id in catalog::NEWS_BACKGROUND {
            let e = catalog::entity(id);
            assert!(catalog::NEEDS.iter().all(|s| !qualifies(e, s)), "{id}");
        }
    }

    #[test]
    fn article_ids_look_like_the_fixed_one() {
        let id = article_id(1, 1);
        assert_eq!(id.len(), GOLF_ARTICLE_ID.len());
        assert!(id
            .chars()
            .all(|c| c.is_ascii_hexdigit() && !c.is_ascii_lowercase()));
    }

    #[test]
    fn same_seed_same_bytes() {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let p = SynthParams::small(7);
        let sa = generate(a.path(), &p).unwrap();
        let sb = generate(b.path(), &p).unwrap();
        assert_eq!(sa, sb);
        for f in [
            paths::NEWS,
            paths::TWEETS,
            paths::WARC,
            paths::CDX,
            paths::JUDGMENTS,
            paths::KB,
        ] {
            assert_eq!(
                std::fs::read(a.path().join(f)).unwrap(),
                std::fs::read(b.path().join(f)).unwrap(),
                "{f}"
            );
        }
    }

    #[test]
    fn duplicate_share_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let s = generate(dir.path(), &SynthParams::small(3)).unwrap();
        assert_eq!(s.captures, 80);
        assert_eq!(s.duplicate_captures, 12);
        assert!(s.revisit_records <= s.duplicate_captures);
    }
}
