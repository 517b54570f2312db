use super::QueryError;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Var(String),
    Iri(String),
    PName(String, String),
    Blank(String),
    Str(String),
    LangTag(String),
    Integer(String),
    Decimal(String),
    Double(String),
    /// Bare word: keyword, function name, `a`, `true`.
    Word(String),
    Punct(&'static str),
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    /// Byte offset in the query text.
    pub pos: usize,
}

const PUNCT: &[&str] = &[
    "^^", "&&", "||", "!=", "<=", ">=", "{", "}", "(", ")", ".", ";", ",", "*", "=", "<", ">", "!",
    "+", "-", "/",
];

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn is_local_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '%')
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, QueryError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, expected: &str| QueryError::syntax(text, pos, expected);
    while i < text.len() {
        let c = text[i..].chars().next().expect("in bounds");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c == '#' {
            i = text[i..].find('\n').map_or(text.len(), |n| i + n);
            continue;
        }
        let start = i;
        let tok = match c {
            '?' | '$' => {
                let name: String = text[i + 1..]
                    .chars()
                    .take_while(|&c| is_name_char(c))
                    .collect();
                if name.is_empty() {
                    return Err(err(i, "variable name"));
                }
                i += 1 + name.len();
                Tok::Var(name)
            }
            '<' => {
                // IRI if a well-formed <...> follows, else an operator
                let rest = &text[i + 1..];
                let end = rest.find(|c: char| {
                    c == '>'
                        || c.is_whitespace()
                        || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
                });
                match end {
                    Some(n) if rest[n..].starts_with('>') => {
                        i += n + 2;
                        Tok::Iri(rest[..n].to_string())
                    }
                    _ => {
                        let p = if rest.starts_with('=') { "<=" } else { "<" };
                        i += p.len();
                        Tok::Punct(p)
                    }
                }
            }
            '"' | '\'' => {
                let (s, len) =
                    lex_string(&text[i..]).ok_or_else(|| err(i, "closed string literal"))?;
                i += len;
                Tok::Str(s)
            }
            '@' => {
                let tag: String = text[i + 1..]
                    .chars()
                    .take_while(|c| c.is_ascii_alphanumeric() || *c == '-')
                    .collect();
                if tag.is_empty() {
                    return Err(err(i, "language tag"));
                }
                i += 1 + tag.len();
                Tok::LangTag(tag.to_ascii_lowercase())
            }
            '_' if text[i..].starts_with("_:") => {
                let label: String = text[i + 2..]
                    .chars()
                    .take_while(|&c| is_name_char(c) || c == '-')
                    .collect();
                if label.is_empty() {
                    return Err(err(i, "blank node label"));
                }
                i += 2 + label.len();
                Tok::Blank(label)
            }
            c if c.is_ascii_digit()
                || (c == '.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) =>
            {
                let (tok, len) = lex_number(&text[i..]);
                i += len;
                tok
            }
            c if c.is_alphabetic() || c == ':' => {
                let word: String = text[i..]
                    .chars()
                    .take_while(|&c| is_name_char(c) || c == '-')
                    .collect();
                let after = i + word.len();
                if text[after..].starts_with(':') {
                    let local_start = after + 1;
                    let mut local: String = text[local_start..]
                        .chars()
                        .take_while(|&c| is_local_char(c))
                        .collect();
                    while local.ends_with('.') {
                        local.pop();
                    }
                    i = local_start + local.len();
                    Tok::PName(word, local)
                } else if word.is_empty() {
                    return Err(err(i, "token"));
                } else {
                    i = after;
                    Tok::Word(word)
                }
            }
            _ => {
                let p = PUNCT
                    .iter()
                    .find(|p| text[i..].starts_with(**p))
                    .ok_or_else(|| err(i, "token"))?;
                i += p.len();
                Tok::Punct(p)
            }
        };
        out.push(Token { tok, pos: start });
    }
    Ok(out)
}

fn lex_number(s: &str) -> (Tok, usize) {
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut decimal = false;
    if i < b.len() && b[i] == b'.' && b.get(i + 1).is_some_and(u8::is_ascii_digit) {
        decimal = true;
        i += 1;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        if j < b.len() && b[j].is_ascii_digit() {
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            return (Tok::Double(s[..j].to_string()), j);
        }
    }
    let text = s[..i].to_string();
    (
        if decimal {
            Tok::Decimal(text)
        } else {
            Tok::Integer(text)
        },
        i,
    )
}

/// Returns the decoded string and the consumed byte length.
fn lex_string(s: &str) -> Option<(String, usize)> {
    let quote = s.chars().next()?;
    let mut out = String::new();
    let mut chars = s.char_indices().skip(1);
    while let Some((i, c)) = chars.next() {
        match c {
            c if c == quote => return Some((out, i + 1)),
            '\\' => {
                let (_, e) = chars.next()?;
                match e {
                    'n' => out.push('\n'),
                    'r' => out.push('\r'),
                    't' => out.push('\t'),
                    'b' => out.push('\u{8}'),
                    'f' => out.push('\u{c}'),
                    '"' | '\'' | '\\' => out.push(e),
                    'u' | 'U' => {
                        let n = if e == 'u' { 4 } else { 8 };
                        let hex: String = (0..n)
                            .filter_map(|_| chars.next().map(|(_, c)| c))
                            .collect();
                        out.push(char::from_u32(u32::from_str_radix(&hex, 16).ok()?)?);
                    }
                    _ => return None,
                }
            }
            '\n' | '\r' => return None,
            c => out.push(c),
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn less_than_vs_iri() {
        assert_eq!(
            toks("?date<=\"1989\""),
            vec![
                Tok::Var("date".into()),
                Tok::Punct("<="),
                Tok::Str("1989".into())
            ]
        );
        assert_eq!(toks("<http://x/a>"), vec![Tok::Iri("http://x/a".into())]);
        assert_eq!(
            toks("?a < ?b"),
            vec![Tok::Var("a".into()), Tok::Punct("<"), Tok::Var("b".into())]
        );
    }

    #[test]
    fn pname_trailing_dot() {
        assert_eq!(
            toks("?x schema:mentions ?entityPolit."),
            vec![
                Tok::Var("x".into()),
                Tok::PName("schema".into(), "mentions".into()),
                Tok::Var("entityPolit".into()),
                Tok::Punct(".")
            ]
        );
        assert_eq!(
            toks("dbr:Brooklyn ."),
            vec![Tok::PName("dbr".into(), "Brooklyn".into()), Tok::Punct(".")]
        );
        assert_eq!(
            toks("nyt:9504E4"),
            vec![Tok::PName("nyt".into(), "9504E4".into())]
        );
    }

    #[test]
    fn literals() {
        assert_eq!(
            toks(r#""fr"@FR "5"^^xsd:integer 5. 1.5 2e3"#),
            vec![
                Tok::Str("fr".into()),
                Tok::LangTag("fr".into()),
                Tok::Str("5".into()),
                Tok::Punct("^^"),
                Tok::PName("xsd".into(), "integer".into()),
                Tok::Integer("5".into()),
                Tok::Punct("."),
                Tok::Decimal("1.5".into()),
                Tok::Double("2e3".into()),
            ]
        );
    }
}
