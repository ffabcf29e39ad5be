//! Line cursor shared by the SSET, BSS and CAT text formats.

use crate::error::{Error, Result};

/// Non-blank, comment-stripped lines with their 1-based line numbers.
pub(crate) struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(k, l)| {
                let l = l.split('#').next().unwrap_or("").trim();
                (!l.is_empty()).then_some((k + 1, l))
            })
            .collect();
        Cursor { lines, pos: 0 }
    }

    pub(crate) fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    pub(crate) fn peek_keyword(&self) -> Option<&'a str> {
        self.peek().and_then(|(_, l)| l.split_whitespace().next())
    }

    pub(crate) fn next_line(&mut self) -> Option<(usize, &'a str)> {
        let l = self.peek();
        if l.is_some() {
            self.pos += 1;
        }
        l
    }

    /// Line number for errors at the current position.
    pub(crate) fn line(&self) -> usize {
        self.peek().map(|(n, _)| n).unwrap_or_else(|| self.lines.last().map(|(n, _)| n + 1).unwrap_or(1))
    }

    pub(crate) fn expect(&mut self, keyword: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.next_line() {
            Some((n, l)) => {
                let words: Vec<&str> = l.split_whitespace().collect();
                if words[0] != keyword {
                    return Err(Error::parse(n, format!("expected `{keyword}`, found `{}`", words[0])));
                }
                Ok((n, words))
            }
            None => Err(Error::parse(self.line(), format!("expected `{keyword}`, found end of input"))),
        }
    }
}

pub(crate) fn parse_num<T: std::str::FromStr>(line: usize, word: Option<&&str>, what: &str) -> Result<T> {
    let w = word.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    w.parse().map_err(|_| Error::parse(line, format!("invalid {what} `{w}`")))
}
