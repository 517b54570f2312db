//! Minimal SPARQL-over-HTTP endpoint.
//!
//! `GET /sparql?query=...` and `POST /sparql`, whose body is either the
//! query itself or a form with a `query` field. The optional `format`
//! parameter selects `csv` (default) or `table`. Failures return
//! 400 with the diagnostic as plain text.

use std::net::SocketAddr;
use std::sync::Arc;
use std::thread::JoinHandle;

use owa_core::rdf::GraphStore;
use owa_core::sparql::{evaluate, parse_query, ServiceRegistry};
use tiny_http::{Header, Method, Request, Response, Server};

/// The sealed store and its mounted knowledge bases.
pub struct State {
    pub store: GraphStore,
    pub registry: ServiceRegistry,
}

/// Status, content type and body of a reply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reply {
    pub status: u16,
    pub content_type: &'static str,
    pub body: String,
}

impl Reply {
    fn text(status: u16, body: impl Into<String>) -> Reply {
        Reply {
            status,
            content_type: "text/plain; charset=utf-8",
            body: body.into(),
        }
    }
}

fn param(url: &url::Url, name: &str) -> Option<String> {
    url.query_pairs()
        .find(|(k, _)| k == name)
        .map(|(_, v)| v.into_owned())
}

/// Answers one request. `target` is the request path with query string.
pub fn respond(state: &State, method: &str, target: &str, body: &str) -> Reply {
    let Ok(url) = url::Url::parse("http://endpoint").and_then(|base| base.join(target)) else {
        return Reply::text(400, "malformed request target\n");
    };
    if url.path() != "/sparql" {
        return Reply::text(404, "not found; use /sparql\n");
    }
    let query = match method {
        "GET" => match param(&url, "query") {
            Some(q) => q,
            None => return Reply::text(400, "missing query parameter\n"),
        },
        "POST" if body.starts_with("query=") => {
            match url::form_urlencoded::parse(body.as_bytes()).find(|(k, _)| k == "query") {
                Some((_, q)) => q.into_owned(),
                None => return Reply::text(400, "missing query field\n"),
            }
        }
        "POST" => body.to_string(),
        _ => return Reply::text(405, "use GET or POST\n"),
    };
    let form_format = || {
        url::form_urlencoded::parse(body.as_bytes())
            .find(|(k, _)| k == "format")
            .map(|(_, v)| v.into_owned())
    };
    let format = param(&url, "format")
        .or_else(|| (method == "POST").then(form_format).flatten())
        .unwrap_or_else(|| "csv".to_string());
    if format != "csv" && format != "table" {
        return Reply::text(
            400,
            format!("unknown format '{format}'; use csv or table\n"),
        );
    }
    let parsed = match parse_query(&query) {
        Ok(q) => q,
        Err(e) => return Reply::text(400, format!("{e}\n")),
    };
    match evaluate(&parsed, &state.store, &state.registry) {
        Ok(table) if format == "csv" => Reply {
            status: 200,
            content_type: "text/csv; charset=utf-8",
            body: table.to_csv(),
        },
        Ok(table) => Reply::text(200, table.to_table()),
        Err(e) => Reply::text(400, format!("{e}\n")),
    }
}

fn handle(state: &State, mut request: Request) {
    let mut body = String::new();
    if *request.method() == Method::Post {
        if let Err(e) = request.as_reader().read_to_string(&mut body) {
            let _ = request.respond(
                Response::from_string(format!("cannot read body: {e}\n")).with_status_code(400),
            );
            return;
        }
    }
    let reply = respond(state, request.method().as_str(), request.url(), &body);
    let header = Header::from_bytes("Content-Type", reply.content_type).expect("static header");
    let _ = request.respond(
        Response::from_string(reply.body)
            .with_status_code(reply.status)
            .with_header(header),
    );
}

/// A bound, not yet serving endpoint.
pub struct Endpoint {
    server: Arc<Server>,
    state: Arc<State>,
}

/// Worker threads serving requests until [`Running::shutdown`].
pub struct Running {
    server: Arc<Server>,
    workers: Vec<JoinHandle<()>>,
}

impl Endpoint {
    pub fn bind(addr: &str, state: State) -> Result<Endpoint, String> {
        let server = Server::http(addr).map_err(|e| format!("cannot bind {addr}: {e}"))?;
        Ok(Endpoint {
            server: Arc::new(server),
            state: Arc::new(state),
        })
    }

    pub fn local_addr(&self) -> Option<SocketAddr> {
        self.server.server_addr().to_ip()
    }

    /// Serves with `workers` threads sharing the store.
    pub fn spawn(self, workers: usize) -> Running {
        let workers = (0..workers.max(1))
            .map(|_| {
                let (server, state) = (Arc::clone(&self.server), Arc::clone(&self.state));
                std::thread::spawn(move || {
                    while let Ok(request) = server.recv() {
                        handle(&state, request);
                    }
                })
            })
            .collect();
        Running {
            server: self.server,
            workers,
        }
    }
}

impl Running {
    /// Blocks until every worker stops.
    pub fn wait(self) {
        for w in self.workers {
            let _ = w.join();
        }
    }

    pub fn shutdown(self) {
        for _ in &self.workers {
            self.server.unblock();
        }
        self.wait();
    }
}
