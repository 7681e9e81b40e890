//! Signature strings.
//!
//! ```text
//! signature := term ( '+' term )*
//! term      := [ integer ] cycle
//! cycle     := compact | extended
//! compact   := letter+                       one node per ASCII letter
//! extended  := '(' ident ( ',' ident )* ')'
//! integer   := nonzero digit, then digits    omitted means 1
//! ```
//!
//! Whitespace is allowed between tokens. Positions in syntax errors are
//! character offsets into the input.

use crate::cycle::{is_label_char, NodeId};
use crate::error::{Error, Result};
use crate::signature::{normalize_signature, Signature};

/// Largest coefficient accepted in text. Keeps every derived flow sum
/// comfortably inside `u64`.
pub const MAX_COEFFICIENT: u64 = u32::MAX as u64;

pub fn parse_signature(text: &str) -> Result<Signature> {
    if text.trim().is_empty() {
        return Err(Error::EmptySignature);
    }
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let mut raw = Vec::new();
    loop {
        raw.push(parser.term()?);
        parser.skip_ws();
        match parser.peek() {
            None => break,
            Some('+') => parser.pos += 1,
            Some(c) => {
                return Err(parser.error(format!("expected '+' or end of input, found {c:?}")))
            }
        }
    }
    normalize_signature(raw)
}

/// Renders a normalized signature. Uses the compact form when every label
/// is a single letter, the parenthesized form otherwise.
pub fn render_signature(sig: &Signature) -> String {
    let compact = sig.nodes().iter().all(NodeId::is_single_letter);
    sig.terms()
        .iter()
        .map(|t| {
            let cycle = render_nodes(t.cycle.nodes(), compact);
            if t.coefficient == 1 {
                cycle
            } else {
                format!("{}{}", t.coefficient, cycle)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Renders a node sequence (a cycle or a pivot path). `compact` must only be
/// set when every label is a single letter.
pub fn render_nodes(nodes: &[NodeId], compact: bool) -> String {
    if compact {
        nodes.iter().map(NodeId::as_str).collect()
    } else {
        let inner: Vec<&str> = nodes.iter().map(NodeId::as_str).collect();
        format!("({})", inner.join(","))
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn term(&mut self) -> Result<(i64, Vec<NodeId>)> {
        self.skip_ws();
        let coefficient = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coefficient()?;
                self.skip_ws();
                c
            }
            _ => 1,
        };
        let nodes = match self.peek() {
            Some('(') => self.extended()?,
            Some(c) if c.is_ascii_alphabetic() => self.compact(),
            Some(c) => return Err(self.error(format!("expected a cycle, found {c:?}"))),
            None => return Err(self.error("expected a cycle, found end of input")),
        };
        Ok((coefficient as i64, nodes))
    }

    fn coefficient(&mut self) -> Result<u64> {
        let start = self.pos;
        if self.peek() == Some('0') {
            return Err(self.error("coefficient must start with a nonzero digit"));
        }
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(d)))
                .filter(|&v| v <= MAX_COEFFICIENT)
                .ok_or_else(|| Error::Syntax {
                    position: start,
                    message: format!("coefficient exceeds {MAX_COEFFICIENT}"),
                })?;
            self.pos += 1;
        }
        Ok(value)
    }

    fn compact(&mut self) -> Vec<NodeId> {
        let mut nodes = Vec::new();
        while let Some(c) = self.peek().filter(char::is_ascii_alphabetic) {
            nodes.push(NodeId::new(c.to_string()).expect("ASCII letters are valid labels"));
            self.pos += 1;
        }
        nodes
    }

    fn extended(&mut self) -> Result<Vec<NodeId>> {
        self.pos += 1; // '('
        let mut nodes = Vec::new();
        loop {
            self.skip_ws();
            nodes.push(self.ident()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    return Ok(nodes);
                }
                Some(c) => return Err(self.error(format!("expected ',' or ')', found {c:?}"))),
                None => return Err(self.error("unclosed '('")),
            }
        }
    }

    fn ident(&mut self) -> Result<NodeId> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                return Err(self.error("node label must not start with a digit"))
            }
            Some(c) if is_label_char(c) => {}
            Some(c) => return Err(self.error(format!("expected a node label, found {c:?}"))),
            None => return Err(self.error("expected a node label, found end of input")),
        }
        while self.peek().is_some_and(is_label_char) {
            self.pos += 1;
        }
        let label: String = self.chars[start..self.pos].iter().collect();
        NodeId::new(label)
    }
}
