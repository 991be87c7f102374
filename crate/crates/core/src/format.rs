//! Text formats for lexicons.
//!
//! ```text
//! entry      := head ":" disjuncts
//! head       := word ("," word)*
//! disjuncts  := disjunct ("|" disjunct)*
//! disjunct   := "(" "(" connlist ")" "(" connlist ")" ")"
//! connlist   := /* empty */ | connector ("," connector)*
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment. The tagged variant
//! used for semantic lexicons additionally allows `_tag` after a connector
//! and `;support=N` after a disjunct.

use thiserror::Error;

use crate::disjunct::{Connector, Disjunct, Side, Slot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: word `{word}` is defined more than once")]
    DuplicateWord { line: usize, word: String },
    #[error("line {line}: duplicate disjunct {disjunct} for `{word}`")]
    DuplicateDisjunct {
        line: usize,
        word: String,
        disjunct: String,
    },
}

impl FormatError {
    pub fn line(&self) -> usize {
        match self {
            FormatError::Syntax { line, .. }
            | FormatError::DuplicateWord { line, .. }
            | FormatError::DuplicateDisjunct { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Open,
    Close,
    Comma,
    Colon,
    Bar,
    Semi,
    Eq,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Open => "`(`".into(),
            Tok::Close => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '-' | '.')
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut chars = content.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            let tok = match c {
                c if c.is_whitespace() => {
                    chars.next();
                    continue;
                }
                '(' => Tok::Open,
                ')' => Tok::Close,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                '|' => Tok::Bar,
                ';' => Tok::Semi,
                '=' => Tok::Eq,
                c if is_ident_char(c) => {
                    let mut end = start;
                    while let Some(&(j, c)) = chars.peek() {
                        if !is_ident_char(c) {
                            break;
                        }
                        end = j + c.len_utf8();
                        chars.next();
                    }
                    out.push((Tok::Ident(content[start..end].to_owned()), line));
                    continue;
                }
                other => {
                    return Err(FormatError::Syntax {
                        line,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            };
            chars.next();
            out.push((tok, line));
        }
    }
    Ok(out)
}

/// A disjunct as read from a file, before tags are resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawDisjunct {
    pub disjunct: Disjunct,
    pub tags: Vec<(Slot, String)>,
    pub support: Option<usize>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawEntry {
    pub words: Vec<String>,
    pub disjuncts: Vec<RawDisjunct>,
    pub line: usize,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    tagged: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(1, |(_, l)| *l)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError::Syntax {
            line: self.line(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok, context: &str) -> Result<(), FormatError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let found = t.describe();
                self.err(format!(
                    "expected {} {context}, found {found}",
                    want.describe()
                ))
            }
            None => self.err(format!(
                "expected {} {context}, found end of input",
                want.describe()
            )),
        }
    }

    fn ident(&mut self, context: &str) -> Result<String, FormatError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => {
                let found = t.describe();
                self.err(format!("expected {context}, found {found}"))
            }
            None => self.err(format!("expected {context}, found end of input")),
        }
    }

    fn entries(&mut self) -> Result<Vec<RawEntry>, FormatError> {
        let mut out = Vec::new();
        while self.peek().is_some() {
            out.push(self.entry()?);
        }
        Ok(out)
    }

    fn entry(&mut self) -> Result<RawEntry, FormatError> {
        let line = self.line();
        let mut words = vec![self.word()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            words.push(self.word()?);
        }
        self.expect(Tok::Colon, "after entry head")?;
        if self.peek() != Some(&Tok::Open) {
            return self.err("empty disjunct list");
        }
        let mut disjuncts = vec![self.disjunct()?];
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            disjuncts.push(self.disjunct()?);
        }
        Ok(RawEntry {
            words,
            disjuncts,
            line,
        })
    }

    fn word(&mut self) -> Result<String, FormatError> {
        let w = self.ident("a word")?;
        Ok(w.to_lowercase())
    }

    fn disjunct(&mut self) -> Result<RawDisjunct, FormatError> {
        let line = self.line();
        self.expect(Tok::Open, "to open a disjunct")?;
        let mut tags = Vec::new();
        let left = self.connlist(Side::Left, &mut tags)?;
        let right = self.connlist(Side::Right, &mut tags)?;
        self.expect(Tok::Close, "to close the disjunct")?;
        let mut support = None;
        if self.tagged && self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            let key = self.ident("`support`")?;
            if key != "support" {
                return self.err(format!("unknown annotation `{key}`"));
            }
            self.expect(Tok::Eq, "after `support`")?;
            let n = self.ident("a support count")?;
            match n.parse::<usize>() {
                Ok(n) if n >= 1 => support = Some(n),
                _ => return self.err(format!("invalid support count `{n}`")),
            }
        }
        Ok(RawDisjunct {
            disjunct: Disjunct::new(left, right),
            tags,
            support,
            line,
        })
    }

    fn connlist(
        &mut self,
        side: Side,
        tags: &mut Vec<(Slot, String)>,
    ) -> Result<Vec<Connector>, FormatError> {
        self.expect(Tok::Open, "to open a connector list")?;
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            let raw = self.ident("a connector")?;
            let (name, tag) = match raw.split_once('_') {
                Some((name, tag)) if self.tagged && !tag.is_empty() => (name, Some(tag)),
                _ => (raw.as_str(), None),
            };
            let conn = match name.parse::<Connector>() {
                Ok(c) => c,
                Err(e) => return self.err(e.to_string()),
            };
            if let Some(tag) = tag {
                let slot = Slot {
                    side,
                    index: out.len(),
                };
                tags.push((slot, tag.to_lowercase()));
            }
            out.push(conn);
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::Close) => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(t) => {
                    let found = t.describe();
                    return self.err(format!(
                        "expected `,` or `)` in connector list, found {found}"
                    ));
                }
                None => return self.err("unbalanced parentheses: connector list not closed"),
            }
        }
    }
}

pub(crate) fn parse_entries(text: &str, tagged: bool) -> Result<Vec<RawEntry>, FormatError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        tagged,
    };
    p.entries()
}

/// Parses a single disjunct in display form.
pub fn parse_disjunct(text: &str) -> Result<Disjunct, FormatError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        tagged: false,
    };
    let d = p.disjunct()?;
    if p.peek().is_some() {
        return p.err("trailing input after disjunct");
    }
    Ok(d.disjunct)
}

/// Lowercases, splits on whitespace and strips trailing `.`, `,`, `!` and
/// `?` from each token.
pub fn tokenize(line: &str) -> Vec<String> {
    line.split_whitespace()
        .map(|t| t.trim_end_matches(['.', ',', '!', '?']).to_lowercase())
        .filter(|t| !t.is_empty())
        .collect()
}

/// Non-blank, non-comment lines of a corpus with their 1-based line
/// numbers, tokenized.
pub fn corpus_lines(text: &str) -> impl Iterator<Item = (usize, Vec<String>)> + '_ {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, tokenize(l)))
        .filter(|(_, words)| !words.is_empty())
}
