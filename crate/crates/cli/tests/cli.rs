use std::io::{Read, Write};
use std::net::{TcpListener, TcpStream};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::{Arc, OnceLock};

use owa_cli::endpoint::{respond, Endpoint, State};
use owa_cli::exit;
use owa_core::rdf::load_store;
use owa_core::sparql::ServiceRegistry;
use owa_core::synth::paths;
use owa_core::vocab;

const KB: &str = "http://dbpedia.org/sparql";

fn owa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_owa"))
        .args(args)
        .output()
        .expect("runs owa")
}

fn code(out: &Output) -> u8 {
    out.status.code().expect("exit code") as u8
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A small collection generated and built through the binary.
fn collection() -> &'static Path {
    static DIR: OnceLock<PathBuf> = OnceLock::new();
    DIR.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap().keep();
        let out = owa(&["synth", "-o", s(&dir), "--small", "--seed", "5"]);
        assert_eq!(code(&out), exit::OK, "{}", stderr(&out));
        for cfg in [paths::NEWS_CONFIG, paths::TWEETS_CONFIG, paths::WARC_CONFIG] {
            let out = owa(&["build", "-c", s(&dir.join(cfg))]);
            assert_eq!(code(&out), exit::OK, "{}", stderr(&out));
        }
        dir
    })
}

fn kb_mount(dir: &Path) -> String {
    format!("{KB}={}", s(&dir.join(paths::KB)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn build_prints_manifest_and_is_reproducible() {
    let dir = collection();
    let layer = std::fs::read(dir.join(paths::NEWS_LAYER)).unwrap();
    let out = owa(&[
        "build",
        "-c",
        s(&dir.join(paths::NEWS_CONFIG)),
        "--threads",
        "8",
    ]);
    assert_eq!(code(&out), exit::OK);
    let text = stdout(&out);
    assert!(text.contains("documents = 120"), "{text}");
    assert!(text.contains("triples = "), "{text}");
    assert_eq!(std::fs::read(dir.join(paths::NEWS_LAYER)).unwrap(), layer);
}

#[test]
fn missing_gazetteer_exits_2_naming_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "c.toml",
        "corpus = \"news\"\ninputs = [\"a.jsonl\"]\ngazetteer = \"missing.tsv\"\noutput = \"out.n3\"\n",
    );
    let out = owa(&["build", "-c", s(&cfg)]);
    assert_eq!(code(&out), exit::CONFIG);
    assert!(stderr(&out).contains("gazetteer"), "{}", stderr(&out));

    let cfg = write(tmp.path(), "bad.toml", "corpus = \"news\"\n");
    assert_eq!(code(&owa(&["build", "-c", s(&cfg)])), exit::CONFIG);
}

#[test]
fn query_exit_codes() {
    let dir = collection();
    let layer = dir.join(paths::NEWS_LAYER);
    let kb = kb_mount(dir);
    let q = dir.join(paths::QUERIES).join("drugs_1987.rq");
    let out = owa(&[
        "query",
        "-l",
        s(&layer),
        "-k",
        &kb,
        "-q",
        s(&q),
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), exit::OK, "{}", stderr(&out));
    assert!(stdout(&out).starts_with("drug,numOfArticles\n"));

    let out = owa(&["query", "-l", s(&layer), "-q", s(&q)]);
    assert_eq!(code(&out), exit::UNREGISTERED_SERVICE);
    assert!(stderr(&out).contains(KB));

    let tmp = tempfile::tempdir().unwrap();
    let bad = write(tmp.path(), "bad.rq", "SELECT ?x WHERE { ?x ?y }");
    let out = owa(&["query", "-l", s(&layer), "-q", s(&bad)]);
    assert_eq!(code(&out), exit::SYNTAX);
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));

    let out = owa(&["query", "-l", s(&tmp.path().join("none.n3")), "-q", s(&q)]);
    assert_eq!(code(&out), exit::FAILURE);
}

#[test]
fn query_output_formats() {
    let dir = collection();
    let q = dir.join(paths::QUERIES).join("mandela_per_year.rq");
    let layer = dir.join(paths::NEWS_LAYER);
    let table = stdout(&owa(&["query", "-l", s(&layer), "-q", s(&q)]));
    assert!(table.starts_with("?year"), "{table}");
    assert!(table.trim_end().ends_with("rows)"), "{table}");
    let csv = stdout(&owa(&[
        "query",
        "-l",
        s(&layer),
        "-q",
        s(&q),
        "--format",
        "csv",
    ]));
    assert!(csv.starts_with("year,num\n"));
}

#[test]
fn eval_writes_tables() {
    let dir = collection();
    let tmp = tempfile::tempdir().unwrap();
    let out = owa(&[
        "eval",
        "-l",
        s(&dir.join(paths::NEWS_LAYER)),
        "-k",
        &kb_mount(dir),
        "--needs",
        s(&dir.join(paths::NEEDS)),
        "--judgments",
        s(&dir.join(paths::JUDGMENTS)),
        "--runs",
        "3",
        "--out",
        s(tmp.path()),
    ]);
    assert_eq!(code(&out), exit::OK, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("R1") && text.contains("R3") && !text.contains("R4"));
    for f in ["metrics.csv", "timing.csv", "summary.txt"] {
        assert!(tmp.path().join(f).exists(), "{f}");
    }
    let timing = std::fs::read_to_string(tmp.path().join("timing.csv")).unwrap();
    assert!(
        timing.starts_with("need,R1,R2,R3,Average (ms)\n"),
        "{timing}"
    );
}

#[test]
fn analytics_commands() {
    let dir = collection();
    let news = dir.join(paths::NEWS_LAYER);
    let kb = kb_mount(dir);
    let run = |args: &[&str]| {
        let out = owa(args);
        assert_eq!(code(&out), exit::OK, "{args:?}: {}", stderr(&out));
        stdout(&out)
    };
    let pop = run(&[
        "analytics",
        "popularity",
        "-l",
        s(&news),
        "--entity",
        "dbr:Nelson_Mandela",
        "--year",
        "1990",
    ]);
    let via = run(&[
        "analytics",
        "popularity",
        "-l",
        s(&news),
        "--entity",
        "dbr:Nelson_Mandela",
        "--year",
        "1990",
        "--via-sparql",
    ]);
    assert_eq!(pop, via);

    let args = [
        "analytics",
        "cooccur",
        "-l",
        s(&news),
        "-k",
        &kb,
        "--seed",
        "dbr:Barack_Obama",
        "--from",
        "1985-01-01",
        "--to",
        "2016-12-31",
        "--top",
        "5",
    ];
    let direct = run(&args);
    assert!(!direct.contains("Barack_Obama"), "{direct}");
    let mut with_sparql = args.to_vec();
    with_sparql.push("--via-sparql");
    assert_eq!(direct, run(&with_sparql));

    let top = run(&[
        "analytics",
        "top",
        "-l",
        s(&news),
        "-k",
        &kb,
        "--class",
        "dbo:Drug",
        "--from",
        "1985-01-01",
        "--to",
        "2016-12-31",
    ]);
    assert!(!top.is_empty());
    let shown = run(&[
        "analytics",
        "similar",
        "-l",
        s(&news),
        "--doc",
        "nyt:X",
        "--show-query",
    ]);
    assert!(shown.contains("<http://data.nytimes.com/X>"), "{shown}");
    let out = owa(&[
        "analytics",
        "similar",
        "-l",
        s(&news),
        "--doc",
        "nyt:missing",
    ]);
    assert_eq!(code(&out), exit::FAILURE);
}

#[test]
fn serve_exits_5_when_the_address_is_taken() {
    let dir = collection();
    let taken = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = taken.local_addr().unwrap().to_string();
    let out = owa(&["serve", "-l", s(&dir.join(paths::NEWS_LAYER)), "-b", &addr]);
    assert_eq!(code(&out), exit::BIND);
    assert!(stderr(&out).contains(&addr));
}

fn state(dir: &Path) -> State {
    let mut registry = ServiceRegistry::new();
    registry.register(
        vocab::DBPEDIA_SPARQL,
        Arc::new(load_store(&[dir.join(paths::KB)]).unwrap()),
    );
    State {
        store: load_store(&[dir.join(paths::NEWS_LAYER)]).unwrap(),
        registry,
    }
}

/// Raw HTTP/1.0 exchange: status code and body.
fn http(addr: &str, request: &str) -> (u16, String) {
    let mut stream = TcpStream::connect(addr).unwrap();
    stream.write_all(request.as_bytes()).unwrap();
    let mut response = String::new();
    stream.read_to_string(&mut response).unwrap();
    let status = response[9..12].parse().unwrap();
    let body = response
        .split_once("\r\n\r\n")
        .map(|(_, b)| b.to_string())
        .unwrap_or_default();
    (status, body)
}

fn encode(q: &str) -> String {
    url::form_urlencoded::byte_serialize(q.as_bytes()).collect()
}

#[test]
fn endpoint_answers_get_and_post() {
    let dir = collection();
    let endpoint = Endpoint::bind("127.0.0.1:0", state(dir)).unwrap();
    let addr = endpoint.local_addr().unwrap().to_string();
    let running = endpoint.spawn(4);
    let query =
        std::fs::read_to_string(dir.join(paths::QUERIES).join("mandela_per_year.rq")).unwrap();

    let (status, get_body) = http(
        &addr,
        &format!("GET /sparql?query={} HTTP/1.0\r\n\r\n", encode(&query)),
    );
    assert_eq!(status, 200);
    assert!(
        get_body.starts_with("year,num\r\n") || get_body.starts_with("year,num\n"),
        "{get_body}"
    );

    let post = format!(
        "POST /sparql HTTP/1.0\r\nContent-Length: {}\r\n\r\n{query}",
        query.len()
    );
    assert_eq!(http(&addr, &post), (200, get_body.clone()));

    let (status, table) = http(
        &addr,
        &format!(
            "GET /sparql?format=table&query={} HTTP/1.0\r\n\r\n",
            encode(&query)
        ),
    );
    assert_eq!(status, 200);
    assert!(table.starts_with("?year"));

    let (status, body) = http(
        &addr,
        &format!(
            "GET /sparql?query={} HTTP/1.0\r\n\r\n",
            encode("SELECT ?x {")
        ),
    );
    assert_eq!(status, 400);
    assert!(body.contains("syntax error"), "{body}");
    assert_eq!(http(&addr, "GET /sparql HTTP/1.0\r\n\r\n").0, 400);
    assert_eq!(http(&addr, "GET /other HTTP/1.0\r\n\r\n").0, 404);

    // concurrent identical requests
    let request = format!("GET /sparql?query={} HTTP/1.0\r\n\r\n", encode(&query));
    let bodies: Vec<(u16, String)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..16)
            .map(|_| scope.spawn(|| http(&addr, &request)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert!(bodies.iter().all(|b| *b == (200, get_body.clone())));
    running.shutdown();
}

#[test]
fn respond_maps_errors_to_400() {
    let dir = collection();
    let st = state(dir);
    let q = encode("SELECT ?s WHERE { SERVICE <http://nowhere.example/sparql> { ?s ?p ?o } }");
    let r = respond(&st, "GET", &format!("/sparql?query={q}"), "");
    assert_eq!(r.status, 400);
    assert!(r.body.contains("nowhere.example"));
    let r = respond(&st, "GET", &format!("/sparql?format=xml&query={q}"), "");
    assert_eq!(r.status, 400);
    assert_eq!(respond(&st, "DELETE", "/sparql", "").status, 405);

    let text = "SELECT ?year WHERE { ?a <http://purl.org/dc/terms/date> ?d } LIMIT 1";
    let raw = respond(&st, "POST", "/sparql?format=table", text);
    let form = respond(
        &st,
        "POST",
        "/sparql",
        &format!("query={}&format=table", encode(text)),
    );
    assert_eq!((raw.status, &raw.body), (200, &form.body));
}
