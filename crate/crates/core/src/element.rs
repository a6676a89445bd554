//! Canonical structural terms naming basis elements.
//!
//! Every universe built by this crate (flat bases, sums, products, sequence
//! domains, records, function spaces) draws its elements from [`Element`].
//! Structural equality of terms is element identity, so stage carriers of an
//! iterated construction can be compared and nested literally.
//!
//! The textual rendering is canonical:
//!
//! ```text
//! bot  atom:NAME  inl(T)  inr(T)  pair(T,T)  seq[T,...]  rec{L:T,...}  am{(T,T),...}
//! ```
//!
//! Record labels and mapping pairs are rendered in sorted order, so
//! `to_string` followed by `parse` is the identity on valid terms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{DomainError, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Bottom,
    Atom(String),
    InL(Box<Element>),
    InR(Box<Element>),
    Pair(Box<Element>, Box<Element>),
    Seq(Vec<Element>),
    Rec(BTreeMap<String, Element>),
    /// A mapping element, named by its generating step pairs.
    Am(BTreeSet<(Element, Element)>),
}

impl Element {
    pub fn atom(name: impl Into<String>) -> Self {
        Element::Atom(name.into())
    }

    pub fn inl(e: Element) -> Self {
        Element::InL(Box::new(e))
    }

    pub fn inr(e: Element) -> Self {
        Element::InR(Box::new(e))
    }

    pub fn pair(a: Element, b: Element) -> Self {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Element::Bottom)
    }

    /// Checks the strictness invariant: no `bot` inside a pair, sequence or
    /// record value.
    pub fn validate(&self) -> Result<(), DomainError> {
        let strict = |e: &Element, ctx: &str| -> Result<(), DomainError> {
            if e.is_bottom() {
                Err(DomainError::Input(format!("`bot` may not appear inside {ctx} in `{self}`")))
            } else {
                e.validate()
            }
        };
        match self {
            Element::Bottom | Element::Atom(_) => Ok(()),
            Element::InL(e) | Element::InR(e) => e.validate(),
            Element::Pair(a, b) => {
                strict(a, "a pair")?;
                strict(b, "a pair")
            }
            Element::Seq(xs) => xs.iter().try_for_each(|x| strict(x, "a sequence")),
            Element::Rec(m) => m.values().try_for_each(|x| strict(x, "a record")),
            Element::Am(ps) => ps.iter().try_for_each(|(a, b)| {
                a.validate()?;
                b.validate()
            }),
        }
    }
}

fn write_list<T>(
    f: &mut fmt::Formatter<'_>,
    items: impl IntoIterator<Item = T>,
    mut each: impl FnMut(&mut fmt::Formatter<'_>, T) -> fmt::Result,
) -> fmt::Result {
    for (i, item) in items.into_iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        each(f, item)?;
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Bottom => f.write_str("bot"),
            Element::Atom(n) => write!(f, "atom:{n}"),
            Element::InL(e) => write!(f, "inl({e})"),
            Element::InR(e) => write!(f, "inr({e})"),
            Element::Pair(a, b) => write!(f, "pair({a},{b})"),
            Element::Seq(xs) => {
                f.write_str("seq[")?;
                write_list(f, xs, |f, x| write!(f, "{x}"))?;
                f.write_str("]")
            }
            Element::Rec(m) => {
                f.write_str("rec{")?;
                write_list(f, m, |f, (l, v)| write!(f, "{l}:{v}"))?;
                f.write_str("}")
            }
            Element::Am(ps) => {
                f.write_str("am{")?;
                write_list(f, ps, |f, (a, b)| write!(f, "({a},{b})"))?;
                f.write_str("}")
            }
        }
    }
}

impl FromStr for Element {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Characters allowed in atom names and record labels.
pub fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | '[' | ']' | '{' | '}' | ',' | ':' | '"')
}

pub fn validate_name(name: &str) -> Result<(), DomainError> {
    if name.is_empty() || !name.chars().all(is_name_char) {
        return Err(DomainError::Input(format!("invalid name `{name}`")));
    }
    Ok(())
}

/// Parses one term. Error columns are 1-based byte offsets into `s`.
pub fn parse_term(s: &str) -> Result<Element, SyntaxError> {
    let trimmed_start = s.len() - s.trim_start().len();
    let e = Parser { src: s }.term(trimmed_start, s.trim_end().len())?;
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, at: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError { line: 1, column: at + 1, message: message.into() }
    }

    /// Parses the term occupying `src[start..end]` (surrounding whitespace allowed).
    fn term(&self, start: usize, end: usize) -> Result<Element, SyntaxError> {
        let raw = &self.src[start..end];
        let lead = raw.len() - raw.trim_start().len();
        let start = start + lead;
        let end = start + raw.trim().len();
        let text = &self.src[start..end];
        if text.is_empty() {
            return Err(self.err(start, "empty term"));
        }
        if text == "bot" {
            return Ok(Element::Bottom);
        }
        if let Some(name) = text.strip_prefix("atom:") {
            if name.is_empty() || !name.chars().all(is_name_char) {
                return Err(self.err(start + 5, format!("invalid atom name `{name}`")));
            }
            return Ok(Element::Atom(name.to_string()));
        }
        let tag_len = text.find(|c: char| !c.is_ascii_alphanumeric() && c != '_').unwrap_or(text.len());
        let tag = &text[..tag_len];
        let open = text[tag_len..].chars().next();
        let (Some(open), true) = (open, tag_len > 0) else {
            return Err(self.err(start, format!("unknown term tag in `{text}`")));
        };
        let close = match open {
            '(' => ')',
            '[' => ']',
            '{' => '}',
            _ => return Err(self.err(start, format!("unknown term tag `{text}`"))),
        };
        let inner_start = start + tag_len + 1;
        let close_at = self.matching(start + tag_len, open, close)?;
        if close_at + 1 != end {
            return Err(self.err(close_at + 1, format!("trailing input after `{tag}` term")));
        }
        let parts = self.split_top(inner_start, close_at)?;
        let arity = |n: usize| -> Result<(), SyntaxError> {
            if parts.len() != n {
                Err(self.err(start, format!("`{tag}` expects {n} argument(s), found {}", parts.len())))
            } else {
                Ok(())
            }
        };
        match (tag, open) {
            ("inl", '(') | ("inr", '(') => {
                arity(1)?;
                let e = self.term(parts[0].0, parts[0].1)?;
                Ok(if tag == "inl" { Element::inl(e) } else { Element::inr(e) })
            }
            ("pair", '(') => {
                arity(2)?;
                let a = self.term(parts[0].0, parts[0].1)?;
                let b = self.term(parts[1].0, parts[1].1)?;
                Ok(Element::pair(a, b))
            }
            ("seq", '[') => {
                let xs = parts.iter().map(|&(s, e)| self.term(s, e)).collect::<Result<_, _>>()?;
                Ok(Element::Seq(xs))
            }
            ("rec", '{') => {
                let mut m = BTreeMap::new();
                for &(s, e) in &parts {
                    let entry = &self.src[s..e];
                    let Some(colon) = entry.find(':') else {
                        return Err(self.err(s, "record entry must be `label:term`"));
                    };
                    let label = entry[..colon].trim();
                    if label.is_empty() || !label.chars().all(is_name_char) {
                        return Err(self.err(s, format!("invalid record label `{label}`")));
                    }
                    let v = self.term(s + colon + 1, e)?;
                    if m.insert(label.to_string(), v).is_some() {
                        return Err(self.err(s, format!("duplicate record label `{label}`")));
                    }
                }
                Ok(Element::Rec(m))
            }
            ("am", '{') => {
                let mut ps = BTreeSet::new();
                for &(s, e) in &parts {
                    let entry = self.src[s..e].trim_start();
                    let s = s + (self.src[s..e].len() - entry.len());
                    if !entry.starts_with('(') {
                        return Err(self.err(s, "mapping entry must be `(term,term)`"));
                    }
                    let c = self.matching(s, '(', ')')?;
                    if self.src[c + 1..e].trim() != "" {
                        return Err(self.err(c + 1, "trailing input after mapping pair"));
                    }
                    let inner = self.split_top(s + 1, c)?;
                    if inner.len() != 2 {
                        return Err(self.err(s, format!("mapping pair expects 2 terms, found {}", inner.len())));
                    }
                    let a = self.term(inner[0].0, inner[0].1)?;
                    let b = self.term(inner[1].0, inner[1].1)?;
                    ps.insert((a, b));
                }
                Ok(Element::Am(ps))
            }
            _ => Err(self.err(start, format!("unknown term tag `{tag}{open}`"))),
        }
    }

    /// Returns the index of the bracket closing the one at `open_at`.
    fn matching(&self, open_at: usize, open: char, close: char) -> Result<usize, SyntaxError> {
        let mut stack = Vec::new();
        for (i, c) in self.src[open_at..].char_indices() {
            match c {
                '(' | '[' | '{' => stack.push(c),
                ')' | ']' | '}' => {
                    let expected = match stack.pop() {
                        Some('(') => ')',
                        Some('[') => ']',
                        Some('{') => '}',
                        _ => return Err(self.err(open_at + i, format!("unbalanced `{c}`"))),
                    };
                    if c != expected {
                        return Err(self.err(open_at + i, format!("expected `{expected}`, found `{c}`")));
                    }
                    if stack.is_empty() {
                        debug_assert_eq!(c, close);
                        return Ok(open_at + i);
                    }
                }
                _ => {}
            }
        }
        Err(self.err(open_at, format!("unclosed `{open}`")))
    }

    /// Splits `src[start..end]` on commas at bracket depth zero. An all-blank
    /// range yields no parts.
    fn split_top(&self, start: usize, end: usize) -> Result<Vec<(usize, usize)>, SyntaxError> {
        let body = &self.src[start..end];
        if body.trim().is_empty() {
            return Ok(Vec::new());
        }
        let mut parts = Vec::new();
        let mut depth = 0i32;
        let mut from = start;
        for (i, c) in body.char_indices() {
            match c {
                '(' | '[' | '{' => depth += 1,
                ')' | ']' | '}' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push((from, start + i));
                    from = start + i + 1;
                }
                _ => {}
            }
        }
        parts.push((from, end));
        Ok(parts)
    }
}
