//! Text syntax for graph builds.
//!
//! ```text
//! spec    := family '(' args ')'
//! family  := path | cycle | complete | star | null      one count
//!          | kbip                                       two counts
//!          | union '(' spec (',' spec)* ')'
//!          | corona '(' spec ',' spec ')'
//!          | bristle '(' spec ',' count ')'
//!          | graph '(' count ';' [edge (',' edge)*] ')'  edges as a-b, 1-based
//! grid    := side 'x' side
//! side    := pattern | '{' pattern (',' pattern)* '}'
//! pattern := spec, where counts of the simple families may be ranges a..b
//! ```
//!
//! Keywords are case-insensitive and whitespace is ignored everywhere.

use crate::error::{Error, Result};
use crate::graph::GraphSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(usize),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Dash,
    DotDot,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("'{s}'"),
            Token::Int(n) => format!("'{n}'"),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::LBrace => "'{'".into(),
            Token::RBrace => "'}'".into(),
            Token::Comma => "','".into(),
            Token::Semi => "';'".into(),
            Token::Dash => "'-'".into(),
            Token::DotDot => "'..'".into(),
            Token::End => "end of input".into(),
        }
    }
}

const SIMPLE_FAMILIES: [&str; 6] = ["path", "cycle", "complete", "star", "null", "kbip"];
const ALL_FAMILIES: [&str; 10] =
    ["path", "cycle", "complete", "star", "null", "kbip", "union", "corona", "bristle", "graph"];

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b if b.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'{' => Token::LBrace,
            b'}' => Token::RBrace,
            b',' => Token::Comma,
            b';' => Token::Semi,
            b'-' => Token::Dash,
            b'.' if bytes.get(i + 1) == Some(&b'.') => {
                i += 1;
                Token::DotDot
            }
            b if b.is_ascii_digit() => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..=i];
                let n = digits.parse().map_err(|_| Error::Parse {
                    position: start,
                    expected: vec!["a count that fits in usize".into()],
                    found: format!("'{digits}'"),
                })?;
                Token::Int(n)
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Token::Ident(text[start..=i].to_ascii_lowercase())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    position: start,
                    expected: vec!["a keyword, number or punctuation".into()],
                    found: format!("'{ch}'"),
                });
            }
        };
        i += 1;
        out.push((token, start));
    }
    out.push((Token::End, text.len()));
    Ok(out)
}

/// One argument of a pattern: a fixed count or an inclusive range.
fn counts(lo: usize, hi: usize) -> Vec<usize> {
    (lo..=hi).collect()
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser { tokens: tokenize(text)?, pos: 0 })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T> {
        let (token, position) = &self.tokens[self.pos];
        Err(Error::Parse {
            position: *position,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: token.describe(),
        })
    }

    fn expect(&mut self, token: Token, name: &str) -> Result<()> {
        if *self.peek() == token {
            self.pos += 1;
            Ok(())
        } else {
            self.error(&[name])
        }
    }

    fn int(&mut self) -> Result<usize> {
        match *self.peek() {
            Token::Int(n) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.error(&["a number"]),
        }
    }

    fn count_or_range(&mut self, allow_range: bool) -> Result<Vec<usize>> {
        let lo = self.int()?;
        if allow_range && *self.peek() == Token::DotDot {
            self.pos += 1;
            let hi = self.int()?;
            return Ok(counts(lo, hi));
        }
        Ok(vec![lo])
    }

    fn family(&mut self, allowed: &[&str]) -> Result<String> {
        match self.peek() {
            Token::Ident(name) if allowed.contains(&name.as_str()) => {
                let name = name.clone();
                self.pos += 1;
                Ok(name)
            }
            _ => self.error(allowed),
        }
    }

    /// A spec, or with `ranges` a pattern expanding to several specs.
    fn pattern(&mut self, ranges: bool) -> Result<Vec<GraphSpec>> {
        let name = self.family(&ALL_FAMILIES)?;
        self.expect(Token::LParen, "'('")?;
        let specs = if SIMPLE_FAMILIES.contains(&name.as_str()) {
            let first = self.count_or_range(ranges)?;
            if name == "kbip" {
                self.expect(Token::Comma, "','")?;
                let second = self.count_or_range(ranges)?;
                first.iter().flat_map(|&u| second.iter().map(move |&v| GraphSpec::CompleteBipartite(u, v))).collect()
            } else {
                first.into_iter().map(|n| simple(&name, n)).collect()
            }
        } else {
            vec![self.compound(&name)?]
        };
        self.expect(Token::RParen, "')'")?;
        Ok(specs)
    }

    fn spec(&mut self) -> Result<GraphSpec> {
        Ok(self.pattern(false)?.pop().expect("a spec without ranges is a single build"))
    }

    fn compound(&mut self, name: &str) -> Result<GraphSpec> {
        match name {
            "union" => {
                let mut parts = vec![self.spec()?];
                while *self.peek() == Token::Comma {
                    self.pos += 1;
                    parts.push(self.spec()?);
                }
                Ok(GraphSpec::Union(parts))
            }
            "corona" => {
                let x = self.spec()?;
                self.expect(Token::Comma, "','")?;
                let h = self.spec()?;
                Ok(GraphSpec::corona(x, h))
            }
            "bristle" => {
                let x = self.spec()?;
                self.expect(Token::Comma, "','")?;
                let t = self.int()?;
                Ok(GraphSpec::bristle(x, t))
            }
            "graph" => {
                let n = self.int()?;
                self.expect(Token::Semi, "';'")?;
                let mut edges = Vec::new();
                if matches!(self.peek(), Token::Int(_)) {
                    loop {
                        let a = self.int()?;
                        self.expect(Token::Dash, "'-'")?;
                        let b = self.int()?;
                        edges.push((a, b));
                        if *self.peek() != Token::Comma {
                            break;
                        }
                        self.pos += 1;
                    }
                }
                Ok(GraphSpec::Explicit(n, edges))
            }
            _ => unreachable!("family names are checked by the caller"),
        }
    }

    fn side(&mut self) -> Result<Vec<GraphSpec>> {
        if *self.peek() != Token::LBrace {
            return self.pattern(true);
        }
        self.pos += 1;
        let mut out = self.pattern(true)?;
        while *self.peek() == Token::Comma {
            self.pos += 1;
            out.extend(self.pattern(true)?);
        }
        self.expect(Token::RBrace, "'}'")?;
        Ok(out)
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Token::End {
            Ok(())
        } else {
            self.error(&["end of input"])
        }
    }
}

fn simple(name: &str, n: usize) -> GraphSpec {
    match name {
        "path" => GraphSpec::Path(n),
        "cycle" => GraphSpec::Cycle(n),
        "complete" => GraphSpec::Complete(n),
        "star" => GraphSpec::Star(n),
        "null" => GraphSpec::Null(n),
        _ => unreachable!("not a one-count family: {name}"),
    }
}

/// Parses a single graph spec. Parameter ranges are checked later, when the
/// spec is built.
pub fn parse_spec(text: &str) -> Result<GraphSpec> {
    let mut p = Parser::new(text)?;
    let spec = p.spec()?;
    p.finish()?;
    Ok(spec)
}

/// Parses either a single spec or a grid `spines x fibers`, returning the
/// instances in input order (spines outermost). A grid expands to the
/// coronas of every spine with every fiber.
pub fn parse_instances(text: &str) -> Result<Vec<GraphSpec>> {
    let mut p = Parser::new(text)?;
    let left = p.side()?;
    if *p.peek() == Token::End {
        return Ok(left);
    }
    p.family(&["x"])?;
    let right = p.side()?;
    p.finish()?;
    Ok(left.iter().flat_map(|x| right.iter().map(move |h| GraphSpec::corona(x.clone(), h.clone()))).collect())
}
