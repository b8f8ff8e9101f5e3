//! Canonical encodings for composite element labels.
//!
//! Every element of a constructed set (pairs, subsets, extension elements,
//! comprehension elements) is a string label. The label is the canonical
//! rendering of a [`Term`], so equal values always get syntactically equal
//! labels and a label can be parsed back into its components.
//!
//! Grammar:
//!
//! ```text
//! term  := atom | quoted | head '(' terms ')' | '(' terms ')' | '{' terms '}'
//! terms := <empty> | term (',' term)*
//! ```
//!
//! A bare atom is any non-empty run of characters other than whitespace and
//! `(){},"\`. Anything else is written as a double-quoted string with `\"`
//! and `\\` escapes.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Atom(String),
    /// A head symbol applied to at least one argument.
    App(String, Vec<Term>),
    Tuple(Vec<Term>),
    /// Kept sorted by rendering and free of duplicates.
    Set(Vec<Term>),
}

impl Term {
    pub fn atom(s: impl Into<String>) -> Term {
        Term::Atom(s.into())
    }

    pub fn app(head: impl Into<String>, args: Vec<Term>) -> Term {
        if args.is_empty() {
            Term::Atom(head.into())
        } else {
            Term::App(head.into(), args)
        }
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Tuple(vec![a, b])
    }

    pub fn set(items: impl IntoIterator<Item = Term>) -> Term {
        let mut keyed: Vec<(String, Term)> =
            items.into_iter().map(|t| (t.to_string(), t)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        Term::Set(keyed.into_iter().map(|(_, t)| t).collect())
    }

    /// Embeds an arbitrary label. Labels that are already canonical renderings
    /// are embedded structurally, everything else becomes an atom.
    pub fn from_label(label: &str) -> Term {
        match Term::parse(label) {
            Ok(t) if t.to_string() == label => t,
            _ => Term::Atom(label.to_string()),
        }
    }

    /// Inverse of [`Term::from_label`].
    pub fn to_label(&self) -> String {
        match self {
            Term::Atom(s) => s.clone(),
            other => other.to_string(),
        }
    }

    pub fn parse(text: &str) -> Result<Term> {
        let mut p = Parser {
            chars: text.char_indices().peekable(),
            text,
        };
        p.skip_ws();
        let t = p.term()?;
        p.skip_ws();
        if let Some((pos, c)) = p.chars.next() {
            return Err(Error::Encoding(format!(
                "trailing input {c:?} at offset {pos} in {text:?}"
            )));
        }
        Ok(t)
    }

    pub fn as_tuple(&self) -> Option<&[Term]> {
        match self {
            Term::Tuple(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&[Term]> {
        match self {
            Term::Set(v) => Some(v),
            _ => None,
        }
    }

    /// Splits a shape application into head and arguments. Atoms are nullary
    /// applications.
    pub fn as_app(&self) -> Option<(&str, &[Term])> {
        match self {
            Term::Atom(s) => Some((s, &[])),
            Term::App(h, args) => Some((h, args)),
            _ => None,
        }
    }
}

fn is_bare_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | '{' | '}' | ',' | '"' | '\\')
}

fn write_atom(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    if !s.is_empty() && s.chars().all(is_bare_char) {
        f.write_str(s)
    } else {
        f.write_str("\"")?;
        for c in s.chars() {
            if c == '"' || c == '\\' {
                write!(f, "\\")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("\"")
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Term]) -> fmt::Result {
    for (k, t) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Atom(s) => write_atom(f, s),
            Term::App(h, args) => {
                write_atom(f, h)?;
                f.write_str("(")?;
                write_list(f, args)?;
                f.write_str(")")
            }
            Term::Tuple(items) => {
                f.write_str("(")?;
                write_list(f, items)?;
                f.write_str(")")
            }
            Term::Set(items) => {
                f.write_str("{")?;
                write_list(f, items)?;
                f.write_str("}")
            }
        }
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Encoding(format!("{msg} in {:?}", self.text))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.chars.peek().copied() {
            Some((_, '(')) => {
                self.chars.next();
                Ok(Term::Tuple(self.list(')')?))
            }
            Some((_, '{')) => {
                self.chars.next();
                Ok(Term::set(self.list('}')?))
            }
            Some((_, '"')) => {
                let s = self.quoted()?;
                self.maybe_app(s)
            }
            Some((_, c)) if is_bare_char(c) => {
                let mut s = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if !is_bare_char(c) {
                        break;
                    }
                    s.push(c);
                    self.chars.next();
                }
                self.maybe_app(s)
            }
            Some((pos, c)) => Err(self.err(&format!("unexpected {c:?} at offset {pos}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn maybe_app(&mut self, head: String) -> Result<Term> {
        if let Some((_, '(')) = self.chars.peek() {
            self.chars.next();
            let args = self.list(')')?;
            if args.is_empty() {
                return Err(self.err("empty argument list"));
            }
            Ok(Term::App(head, args))
        } else {
            Ok(Term::Atom(head))
        }
    }

    fn quoted(&mut self) -> Result<String> {
        self.chars.next();
        let mut s = String::new();
        loop {
            match self.chars.next() {
                Some((_, '"')) => return Ok(s),
                Some((_, '\\')) => match self.chars.next() {
                    Some((_, c)) => s.push(c),
                    None => return Err(self.err("dangling escape")),
                },
                Some((_, c)) => s.push(c),
                None => return Err(self.err("unterminated string")),
            }
        }
    }

    fn list(&mut self, close: char) -> Result<Vec<Term>> {
        let mut items = Vec::new();
        self.skip_ws();
        if let Some(&(_, c)) = self.chars.peek() {
            if c == close {
                self.chars.next();
                return Ok(items);
            }
        }
        loop {
            self.skip_ws();
            items.push(self.term()?);
            self.skip_ws();
            match self.chars.next() {
                Some((_, ',')) => continue,
                Some((_, c)) if c == close => return Ok(items),
                Some((pos, c)) => {
                    return Err(self.err(&format!(
                        "expected ',' or {close:?}, found {c:?} at offset {pos}"
                    )))
                }
                None => return Err(self.err("unexpected end of input")),
            }
        }
    }
}
