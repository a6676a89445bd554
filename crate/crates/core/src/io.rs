//! The JSON basis format and DOT export.
//!
//! ```json
//! {"name": "flat3", "elements": ["bot", "atom:f", "atom:t"], "bottom": "bot",
//!  "order": [["bot", "atom:f"], ["bot", "atom:t"]], "closure": "auto"}
//! ```
//!
//! Serialization is canonical: elements sorted, order written as covers with
//! `"closure": "auto"`, so `serialize(parse(serialize(b)))` is byte-identical.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::basis::{Closure, FiniteBasis, Poset, Term};
use crate::completion::CompletedDomain;
use crate::element::{parse_term, Element};
use crate::error::{DomainError, Result, SyntaxError};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBasis {
    #[serde(default)]
    name: Option<String>,
    elements: Vec<String>,
    #[serde(default)]
    bottom: Option<String>,
    #[serde(default)]
    order: Vec<(String, String)>,
    #[serde(default)]
    closure: Option<String>,
}

#[derive(Debug, Serialize)]
struct OutBasis<'a> {
    name: &'a str,
    elements: Vec<String>,
    bottom: Option<String>,
    order: Vec<(String, String)>,
    closure: &'static str,
}

/// 1-based line/column of `needle` in `text`, searching from byte `from`.
fn locate(text: &str, needle: &str, from: usize) -> Option<(usize, usize, usize)> {
    let at = from + text.get(from..)?.find(needle)?;
    let before = &text[..at];
    let line = before.matches('\n').count() + 1;
    let col = at - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    Some((line, col, at))
}

/// Parses a term string taken from `text`, translating error positions to
/// the file. `cursor` walks forward so repeated strings map to their own
/// occurrence.
fn parse_located(text: &str, raw: &str, cursor: &mut usize) -> Result<Element> {
    let quoted = serde_json::to_string(raw).expect("string serializes");
    let found = locate(text, &quoted, *cursor);
    if let Some((_, _, at)) = found {
        *cursor = at + quoted.len();
    }
    parse_term(raw).map_err(|e| {
        let (line, column) = match found {
            // Escapes are rare in terms; positions are exact without them.
            Some((line, col, _)) => (line, col + e.column),
            None => (e.line, e.column),
        };
        DomainError::Syntax(SyntaxError { line, column, message: e.message })
    })
}

fn json_error(e: serde_json::Error) -> DomainError {
    DomainError::Syntax(SyntaxError { line: e.line(), column: e.column(), message: e.to_string() })
}

/// Parses a possibly unpointed poset. A declared bottom must be the least
/// element.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let raw: RawBasis = serde_json::from_str(text).map_err(json_error)?;
    let closure = match raw.closure.as_deref() {
        None | Some("auto") => Closure::Auto,
        Some("given") => Closure::Given,
        Some(other) => return Err(DomainError::Input(format!("unknown closure mode `{other}` (expected auto|given)"))),
    };
    let mut cursor = 0;
    let mut elements = Vec::with_capacity(raw.elements.len());
    let mut seen = BTreeSet::new();
    for s in &raw.elements {
        let e = parse_located(text, s, &mut cursor)?;
        e.validate()?;
        if !seen.insert(e.clone()) {
            return Err(DomainError::Input(format!("duplicate element `{e}`")));
        }
        elements.push(e);
    }
    let bottom = raw.bottom.as_ref().map(|s| parse_located(text, s, &mut cursor)).transpose()?;
    let mut order = Vec::with_capacity(raw.order.len());
    for (lo, hi) in &raw.order {
        order.push((parse_located(text, lo, &mut cursor)?, parse_located(text, hi, &mut cursor)?));
    }
    let name = raw.name.unwrap_or_else(|| "basis".into());
    let poset = Poset::from_relation(name, elements, &order, closure)?;
    if let Some(b) = bottom {
        match poset.least() {
            Some(l) if *l == b => {}
            Some(l) => return Err(DomainError::Input(format!("declared bottom `{b}` is not the least element `{l}`"))),
            None => return Err(DomainError::Input(format!("declared bottom `{b}` is not below every element"))),
        }
    }
    Ok(poset)
}

/// Parses a pointed basis (the lub condition is not checked here).
pub fn parse_basis(text: &str) -> Result<FiniteBasis> {
    FiniteBasis::try_from(parse_poset(text)?)
}

fn to_out<T: Term>(p: &Poset<T>) -> OutBasis<'_> {
    OutBasis {
        name: p.name(),
        elements: p.elements().iter().map(ToString::to_string).collect(),
        bottom: p.least().map(ToString::to_string),
        order: p.covers().iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        closure: "auto",
    }
}

/// Canonical pretty-printed JSON, newline-terminated.
pub fn serialize_poset<T: Term>(p: &Poset<T>) -> String {
    let mut s = serde_json::to_string_pretty(&to_out(p)).expect("basis serializes");
    s.push('\n');
    s
}

pub fn serialize_basis<T: Term>(b: &FiniteBasis<T>) -> String {
    serialize_poset(b.poset())
}

/// The completed domain in the basis format; each ideal renders as its sorted
/// member list, e.g. `{bot,atom:t}`.
pub fn serialize_completion(c: &CompletedDomain) -> String {
    serialize_basis(c.domain())
}

fn dot_id(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

/// DOT digraph of the Hasse diagram (or of the full order), bottom drawn at
/// the bottom. Nodes and edges are emitted in sorted order.
pub fn export_dot<T: Term>(p: &Poset<T>, full_order: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", dot_id(p.name()));
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    for e in p.elements() {
        let _ = writeln!(out, "  {};", dot_id(&e.to_string()));
    }
    let mut edges: Vec<(String, String)> = if full_order {
        p.relation().into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.to_string(), b.to_string())).collect()
    } else {
        p.covers().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    };
    edges.sort();
    for (a, b) in edges {
        let _ = writeln!(out, "  {} -> {};", dot_id(&a), dot_id(&b));
    }
    out.push_str("}\n");
    out
}
