use std::borrow::Cow;

use encoding_rs::Encoding;
use scraper::{ElementRef, Html, Node, Selector};
use url::Url;

/// Title, outgoing links and main text of one HTML page.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PageContent {
    pub title: Option<String>,
    pub links: Vec<String>,
    pub main_text: String,
}

/// Parameters of the block text-density heuristic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoilerplateParams {
    /// Minimum words for a block to count as content.
    pub min_words: usize,
    /// Maximum share of words that sit inside anchors.
    pub max_link_ratio: f64,
}

impl Default for BoilerplateParams {
    fn default() -> Self {
        BoilerplateParams {
            min_words: 10,
            max_link_ratio: 0.33,
        }
    }
}

const SKIPPED: &[&str] = &[
    "script", "style", "noscript", "nav", "template", "head", "iframe", "svg", "button", "select",
];

const BLOCKS: &[&str] = &[
    "address",
    "article",
    "aside",
    "blockquote",
    "body",
    "br",
    "dd",
    "details",
    "div",
    "dl",
    "dt",
    "fieldset",
    "figcaption",
    "figure",
    "footer",
    "form",
    "h1",
    "h2",
    "h3",
    "h4",
    "h5",
    "h6",
    "header",
    "hr",
    "html",
    "li",
    "main",
    "ol",
    "p",
    "pre",
    "section",
    "summary",
    "table",
    "tbody",
    "td",
    "tfoot",
    "th",
    "thead",
    "tr",
    "ul",
];

/// Decodes HTML bytes. The charset comes from `hint` (typically the HTTP
/// header), then a `<meta>` declaration in the first 1024 bytes, then
/// UTF-8; undecodable sequences become U+FFFD.
pub fn decode_html<'a>(bytes: &'a [u8], hint: Option<&str>) -> Cow<'a, str> {
    let encoding = hint
        .and_then(|h| Encoding::for_label(h.trim().as_bytes()))
        .or_else(|| sniff_meta_charset(bytes))
        .unwrap_or(encoding_rs::UTF_8);
    let (text, _, _) = encoding.decode(bytes);
    text
}

fn sniff_meta_charset(bytes: &[u8]) -> Option<&'static Encoding> {
    let head = &bytes[..bytes.len().min(1024)];
    let head = String::from_utf8_lossy(head).to_ascii_lowercase();
    let at = head.find("charset=")? + "charset=".len();
    let rest = head[at..].trim_start_matches(['"', '\'']);
    let end = rest
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-' || c == '_'))
        .unwrap_or(rest.len());
    Encoding::for_label(rest[..end].as_bytes())
}

fn collapse(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn title_of(doc: &Html) -> Option<String> {
    let sel = Selector::parse("title").expect("static selector");
    let title = collapse(&doc.select(&sel).next()?.text().collect::<String>());
    Some(title)
}

/// Text of the first `<title>`, whitespace-collapsed.
pub fn extract_title(html: &[u8], encoding_hint: Option<&str>) -> Option<String> {
    title_of(&Html::parse_document(&decode_html(html, encoding_hint)))
}

fn links_of(doc: &Html, base: &Url) -> Vec<String> {
    let sel = Selector::parse("a[href]").expect("static selector");
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for a in doc.select(&sel) {
        let href = a.value().attr("href").unwrap_or("").trim();
        if href.is_empty() || href.starts_with('#') {
            continue;
        }
        let Ok(url) = base.join(href) else { continue };
        if !matches!(url.scheme(), "http" | "https") {
            continue;
        }
        let url = url.to_string();
        if seen.insert(url.clone()) {
            out.push(url);
        }
    }
    out
}

/// Anchor targets resolved against `base_url`, in document order without
/// duplicates. Fragment-only and non-http(s) links are dropped.
pub fn extract_links(html: &[u8], base_url: &str) -> Vec<String> {
    let Ok(base) = Url::parse(base_url) else {
        return Vec::new();
    };
    links_of(&Html::parse_document(&decode_html(html, None)), &base)
}

#[derive(Default)]
struct Block {
    text: String,
    link_words: usize,
}

struct Segmenter {
    blocks: Vec<Block>,
    current: Block,
}

impl Segmenter {
    fn flush(&mut self) {
        let block = std::mem::take(&mut self.current);
        if !block.text.trim().is_empty() {
            self.blocks.push(block);
        }
    }

    fn walk(&mut self, el: ElementRef<'_>, in_link: bool) {
        for child in el.children() {
            match child.value() {
                Node::Text(text) => {
                    self.current.text.push_str(text);
                    if in_link {
                        self.current.link_words += text.split_whitespace().count();
                    }
                }
                Node::Element(e) => {
                    let name = e.name();
                    if SKIPPED.contains(&name) {
                        continue;
                    }
                    let child = ElementRef::wrap(child).expect("element node");
                    let block = BLOCKS.contains(&name);
                    if block {
                        self.flush();
                    } else {
                        // inline boundary: keep words apart
                        self.current.text.push(' ');
                    }
                    self.walk(child, in_link || name == "a");
                    if block {
                        self.flush();
                    } else {
                        self.current.text.push(' ');
                    }
                }
                _ => {}
            }
        }
    }
}

fn main_text_of(doc: &Html, params: BoilerplateParams) -> String {
    let mut seg = Segmenter {
        blocks: Vec::new(),
        current: Block::default(),
    };
    seg.walk(doc.root_element(), false);
    seg.flush();

    if seg.blocks.len() == 1 {
        return collapse(&seg.blocks[0].text);
    }
    let keep = |b: &Block| {
        let words = b.text.split_whitespace().count();
        words >= params.min_words && (b.link_words as f64) < params.max_link_ratio * words as f64
    };
    let mut runs: Vec<String> = Vec::new();
    let mut previous_kept = false;
    for block in &seg.blocks {
        if keep(block) {
            let text = collapse(&block.text);
            match runs.last_mut() {
                Some(run) if previous_kept => {
                    run.push(' ');
                    run.push_str(&text);
                }
                _ => runs.push(text),
            }
            previous_kept = true;
        } else {
            previous_kept = false;
        }
    }
    runs.join("\n\n")
}

/// Boilerplate-stripped text: blocks with enough words and a low share of
/// anchor text, adjacent kept blocks merged. A page that forms a single
/// block is returned whole.
pub fn extract_main_text(html: &[u8]) -> String {
    extract_main_text_with(html, None, BoilerplateParams::default())
}

pub fn extract_main_text_with(
    html: &[u8],
    encoding_hint: Option<&str>,
    params: BoilerplateParams,
) -> String {
    main_text_of(
        &Html::parse_document(&decode_html(html, encoding_hint)),
        params,
    )
}

/// Parses once and runs all three extractors.
pub fn extract_page(
    html: &[u8],
    base_url: &str,
    encoding_hint: Option<&str>,
    params: BoilerplateParams,
) -> PageContent {
    let doc = Html::parse_document(&decode_html(html, encoding_hint));
    PageContent {
        title: title_of(&doc),
        links: Url::parse(base_url)
            .map(|base| links_of(&doc, &base))
            .unwrap_or_default(),
        main_text: main_text_of(&doc, params),
    }
}
