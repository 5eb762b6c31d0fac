//! Shared tokenizer for the text file formats.
//!
//! All formats are whitespace-separated tokens with `#` starting a comment
//! that runs to the end of the line. Parse errors carry the 1-based line and
//! column of the offending token.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, col {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

pub struct Tokens<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    col: usize,
    last: (usize, usize),
}

impl<'a> Tokens<'a> {
    pub fn new(text: &'a str) -> Tokens<'a> {
        Tokens {
            text,
            pos: 0,
            line: 1,
            col: 1,
            last: (1, 1),
        }
    }

    fn advance(&mut self, c: char) {
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
    }

    /// Next whitespace-separated token, skipping comments.
    pub fn next_token(&mut self) -> Option<&'a str> {
        let mut in_comment = false;
        let mut chars = self.text[self.pos..].chars();
        while let Some(c) = chars.next() {
            if in_comment {
                if c == '\n' {
                    in_comment = false;
                }
                self.advance(c);
            } else if c == '#' {
                in_comment = true;
                self.advance(c);
            } else if c.is_whitespace() {
                self.advance(c);
            } else {
                break;
            }
        }
        if self.pos >= self.text.len() {
            return None;
        }
        let start = self.pos;
        self.last = (self.line, self.col);
        for c in self.text[self.pos..].chars() {
            if c.is_whitespace() || c == '#' {
                break;
            }
            self.advance(c);
        }
        Some(&self.text[start..self.pos])
    }

    pub fn error_at_last(&self, msg: impl fmt::Display) -> ParseError {
        ParseError {
            line: self.last.0,
            col: self.last.1,
            msg: msg.to_string(),
        }
    }

    fn error_here(&self, msg: impl fmt::Display) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            msg: msg.to_string(),
        }
    }

    pub fn field<T>(&mut self, what: &str) -> Result<T, ParseError>
    where
        T: FromStr,
        T::Err: fmt::Display,
    {
        match self.next_token() {
            None => Err(self.error_here(format!("missing {what}"))),
            Some(tok) => tok
                .parse()
                .map_err(|e| self.error_at_last(format!("invalid {what} `{tok}`: {e}"))),
        }
    }

    pub fn usize_field(&mut self, what: &str) -> Result<usize, ParseError> {
        self.field(what)
    }

    pub fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.next_token() {
            None => Ok(()),
            Some(tok) => Err(self.error_at_last(format!("unexpected trailing `{tok}`"))),
        }
    }
}
