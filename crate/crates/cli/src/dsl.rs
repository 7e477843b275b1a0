//! Text syntax for module expressions.
//!
//! ```text
//! expr := "triv" | "def(" n ")" | "ad(" n ")" | "dual(" expr ")"
//!       | "sum(" expr "," expr ")" | "ten(" expr "," expr ")"
//!       | "sym(" d "," expr ")" | "ext(" d "," expr ")" | "tw(" expr "," r ")"
//! ```
//!
//! Whitespace between tokens is ignored. Printing a [`ModuleExpr`] with
//! `Display` gives the canonical form, which parses back to the same tree.

use std::fmt;

use nilsupport_core::{Error, ModuleExpr, Node};

const MAX_DEPTH: usize = 200;

/// A syntax or validation error. `offset` is the 1-based byte position of
/// the offending input; end of input is `len + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: {}",
            self.offset, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(c) => format!("'{}'", c as char),
        }
    }

    fn expect(&mut self, want: u8) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            let found = self.describe();
            self.error(format!("expected '{}', found {found}", want as char))
        }
    }

    fn word(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_lowercase() {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.describe();
            return self.error(format!("expected a constructor name, found {found}"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn natural(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.describe();
            return self.error(format!("expected a decimal number, found {found}"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().or_else(|_| {
            self.pos = start;
            self.error("number too large")
        })
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.error(format!("nesting deeper than {MAX_DEPTH}"));
        }
        let start = {
            self.skip_ws();
            self.pos
        };
        let name = self.word()?;
        let node = match name {
            "triv" => Node::Triv,
            "def" | "ad" => {
                self.expect(b'(')?;
                let n = self.natural()?;
                self.expect(b')')?;
                if name == "def" {
                    Node::Def(n)
                } else {
                    Node::Ad(n)
                }
            }
            "dual" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Node::dual(e)
            }
            "sum" | "ten" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                if name == "sum" {
                    Node::sum(a, b)
                } else {
                    Node::tensor(a, b)
                }
            }
            "sym" | "ext" => {
                self.expect(b'(')?;
                let d = self.natural()?;
                self.expect(b',')?;
                let e = self.expr()?;
                self.expect(b')')?;
                if name == "sym" {
                    Node::sym(d, e)
                } else {
                    Node::ext(d, e)
                }
            }
            "tw" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b',')?;
                let r_at = self.pos;
                let r = self.natural()?;
                let r = u32::try_from(r).or_else(|_| {
                    self.pos = r_at;
                    self.error("twist exponent too large")
                })?;
                self.expect(b')')?;
                Node::twist(e, r)
            }
            other => {
                self.pos = start;
                return self.error(format!("unknown constructor '{other}'"));
            }
        };
        self.depth -= 1;
        Ok(node)
    }
}

/// Parses the tree only, without checking leaf sizes or dimensions.
pub fn parse_node(text: &str) -> Result<Node, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let node = p.expr()?;
    if p.peek().is_some() {
        let found = p.describe();
        return p.error(format!("unexpected {found} after expression"));
    }
    Ok(node)
}

/// Parses and validates a module expression.
pub fn parse(text: &str) -> Result<ModuleExpr, ParseError> {
    let node = parse_node(text)?;
    ModuleExpr::new(node).map_err(|e| ParseError {
        offset: 1,
        message: match e {
            Error::InvalidModule(m) => m,
            other => other.to_string(),
        },
    })
}
