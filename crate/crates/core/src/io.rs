//! The `.snr` table file format.
//!
//! ```text
//! # comment
//! structure b2
//! carrier 2
//! f 2
//! 0 1
//! 1 1
//! g 2
//! 0 0
//! 0 1
//! end
//! ```
//!
//! Entries are listed in row-major argument order: the entry for
//! `(a_1, …, a_r)` sits at index `Σ a_i·k^(r−i)`.

use std::fmt::Write as _;

use crate::carrier::{tuple_count, FinStructure, OpTable, MAX_CARRIER, MAX_TABLE_ENTRIES};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
struct Token<'t> {
    text: &'t str,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (l, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut rest = body;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            out.push(Token { text: &tail[..len], line: l + 1, column: offset + start + 1 });
            offset += start + len;
            rest = &tail[len..];
        }
    }
    out
}

struct Cursor<'t> {
    tokens: Vec<Token<'t>>,
    pos: usize,
    end: (usize, usize),
}

impl<'t> Cursor<'t> {
    fn peek(&self) -> Option<Token<'t>> {
        self.tokens.get(self.pos).copied()
    }

    fn next(&mut self, what: &str) -> Result<Token<'t>> {
        let tok = self.peek().ok_or_else(|| Error::Syntax {
            line: self.end.0,
            column: self.end.1,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(tok)
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let tok = self.next(&format!("`{word}`"))?;
        if tok.text == word {
            Ok(())
        } else {
            Err(syntax(tok, format!("expected `{word}`, found `{}`", tok.text)))
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let tok = self.next(what)?;
        tok.text.parse().map_err(|_| syntax(tok, format!("expected {what}, found `{}`", tok.text)))
    }
}

fn syntax(tok: Token, message: String) -> Error {
    Error::Syntax { line: tok.line, column: tok.column, message }
}

fn valid_identifier(s: &str) -> bool {
    s.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

fn read_table(cur: &mut Cursor, symbol: char, k: usize) -> Result<OpTable> {
    cur.keyword(&symbol.to_string())?;
    let arity = cur.number("an arity")?;
    if arity < 2 {
        return Err(Error::ArityTooSmall(arity));
    }
    let expected = tuple_count(k, arity)
        .filter(|&c| c <= MAX_TABLE_ENTRIES)
        .ok_or_else(|| Error::SizeCap(format!("{symbol} table of size {k}^{arity} exceeds {MAX_TABLE_ENTRIES} entries")))?;
    let mut entries = Vec::with_capacity(expected);
    while let Some(tok) = cur.peek() {
        let Ok(value) = tok.text.parse::<u64>() else { break };
        if value >= k as u64 {
            return Err(Error::EntryOutOfRange { line: tok.line, column: tok.column, value, k });
        }
        if entries.len() == expected {
            return Err(Error::WrongEntryCount { op: symbol, expected, found: expected + 1 + count_more(cur) });
        }
        entries.push(value as usize);
        cur.pos += 1;
    }
    if entries.len() != expected {
        return Err(Error::WrongEntryCount { op: symbol, expected, found: entries.len() });
    }
    OpTable::new(arity, k, &entries)
}

/// Integer tokens remaining after the current one.
fn count_more(cur: &Cursor) -> usize {
    cur.tokens[cur.pos + 1..].iter().take_while(|t| t.text.parse::<u64>().is_ok()).count()
}

/// Parse one structure; errors carry the line and column of the offending token.
pub fn parse_structure(text: &str) -> Result<FinStructure> {
    let lines = text.lines().count();
    let last_len = text.lines().last().map_or(0, |l| l.chars().count());
    let mut cur = Cursor { tokens: tokenize(text), pos: 0, end: (lines.max(1), last_len + 1) };

    cur.keyword("structure")?;
    let name_tok = cur.next("a structure name")?;
    if !valid_identifier(name_tok.text) {
        return Err(syntax(name_tok, format!("invalid structure name `{}`", name_tok.text)));
    }
    cur.keyword("carrier")?;
    let k_tok = cur.peek();
    let k = cur.number("a carrier size")?;
    if k == 0 || k > MAX_CARRIER {
        let tok = k_tok.expect("number token was consumed");
        return Err(syntax(tok, format!("carrier size must be between 1 and {MAX_CARRIER}")));
    }
    let f = read_table(&mut cur, 'f', k)?;
    let g = read_table(&mut cur, 'g', k)?;
    cur.keyword("end")?;
    if let Some(tok) = cur.peek() {
        return Err(syntax(tok, format!("unexpected `{}` after `end`", tok.text)));
    }
    FinStructure::new(name_tok.text, f, g)
}

fn write_table(out: &mut String, symbol: char, table: &OpTable) {
    let _ = writeln!(out, "{symbol} {}", table.arity());
    let k = table.carrier_size();
    let entries: Vec<String> = table.entries().map(|e| e.to_string()).collect();
    for row in entries.chunks(k) {
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

/// Canonical text: single spaces, `k` entries per line, trailing newline.
pub fn serialize_structure(s: &FinStructure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "structure {}", s.name());
    let _ = writeln!(out, "carrier {}", s.k());
    write_table(&mut out, 'f', s.f());
    write_table(&mut out, 'g', s.g());
    out.push_str("end\n");
    out
}
