//! Text format for families and the JSON analysis report.
//!
//! ```text
//! # optional comments
//! ground 3
//! empty
//! 0
//! 0 2
//! ```

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abundance::analyze;
use crate::error::Error;
use crate::family::{canonicalize, is_union_closed, GroundSize, MemberSet, SetFamily};
use crate::twins::is_twin_free;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    Header(String),
    BadToken(String),
    NotIncreasing,
    ElementOutOfRange(u64),
    DuplicateSet,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => f.write_str("missing 'ground <n>' header"),
            ParseErrorKind::Header(s) => write!(f, "bad header '{s}'"),
            ParseErrorKind::BadToken(t) => write!(f, "bad token '{t}'"),
            ParseErrorKind::NotIncreasing => f.write_str("elements must be strictly increasing"),
            ParseErrorKind::ElementOutOfRange(e) => write!(f, "element {e} outside the ground set"),
            ParseErrorKind::DuplicateSet => f.write_str("duplicate set"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number; 0 when the document ended early.
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn parse_header(line: &str, lineno: usize) -> Result<GroundSize, ParseError> {
    let bad = || err(lineno, ParseErrorKind::Header(line.to_string()));
    let mut parts = line.split_whitespace();
    if parts.next() != Some("ground") {
        return Err(bad());
    }
    let n: u32 = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    GroundSize::new(n).map_err(|_| bad())
}

fn parse_set(line: &str, lineno: usize, ground: GroundSize) -> Result<MemberSet, ParseError> {
    if line == "empty" {
        return Ok(MemberSet::EMPTY);
    }
    let mut set = MemberSet::EMPTY;
    let mut prev: Option<u64> = None;
    for tok in line.split_whitespace() {
        let e: u64 = tok
            .parse()
            .map_err(|_| err(lineno, ParseErrorKind::BadToken(tok.to_string())))?;
        if e >= ground.get() as u64 {
            return Err(err(lineno, ParseErrorKind::ElementOutOfRange(e)));
        }
        if prev.is_some_and(|p| e <= p) {
            return Err(err(lineno, ParseErrorKind::NotIncreasing));
        }
        prev = Some(e);
        set = set.with(e as usize);
    }
    Ok(set)
}

pub fn parse_family(doc: &str) -> Result<SetFamily, ParseError> {
    let mut ground = None;
    let mut sets = Vec::new();
    let mut lines_of = Vec::new();
    for (i, raw) in doc.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        match ground {
            None => ground = Some(parse_header(line, lineno)?),
            Some(g) => {
                sets.push(parse_set(line, lineno, g)?);
                lines_of.push(lineno);
            }
        }
    }
    let ground = ground.ok_or_else(|| err(0, ParseErrorKind::MissingHeader))?;
    canonicalize(sets.clone(), ground).map_err(|e| match e {
        Error::DuplicateSet(mask) => {
            // Report the second occurrence.
            let line = sets
                .iter()
                .zip(&lines_of)
                .filter(|(s, _)| s.mask() == mask)
                .nth(1)
                .map_or(0, |(_, &l)| l);
            err(line, ParseErrorKind::DuplicateSet)
        }
        other => unreachable!("elements were range-checked while parsing: {other}"),
    })
}

/// Canonical text form; `parse_family(&emit_family(f)) == f`.
pub fn emit_family(family: &SetFamily) -> String {
    let mut out = String::with_capacity(16 + family.len() * 8);
    writeln!(out, "ground {}", family.ground().get()).unwrap();
    for set in family.iter() {
        if set.is_empty() {
            out.push_str("empty\n");
            continue;
        }
        let mut first = true;
        for e in set.elements() {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{e}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub f: usize,
    pub contains_empty: bool,
    pub union_closed: bool,
    pub twin_free: bool,
    pub abundant: Vec<usize>,
    pub at_least_half: Vec<usize>,
    pub frequencies: Vec<usize>,
    pub strict_minority_rest: bool,
}

impl AnalysisDocument {
    pub fn of(family: &SetFamily) -> crate::Result<Self> {
        let report = analyze(family)?;
        Ok(AnalysisDocument {
            m: report.m,
            k: report.smallest_size(),
            n: report.n_max,
            f: report.f,
            contains_empty: report.contains_empty,
            union_closed: is_union_closed(family),
            twin_free: is_twin_free(family),
            abundant: report.abundant,
            at_least_half: report.at_least_half,
            frequencies: report.freq,
            strict_minority_rest: report.strict_minority_rest,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Aligned key/value table for terminals.
    pub fn to_table(&self) -> String {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let rows = [
            ("m", self.m.to_string()),
            ("k", self.k.to_string()),
            ("n", self.n.to_string()),
            ("f", self.f.to_string()),
            ("contains_empty", self.contains_empty.to_string()),
            ("union_closed", self.union_closed.to_string()),
            ("twin_free", self.twin_free.to_string()),
            ("abundant", list(&self.abundant)),
            ("at_least_half", list(&self.at_least_half)),
            ("frequencies", list(&self.frequencies)),
            (
                "strict_minority_rest",
                self.strict_minority_rest.to_string(),
            ),
        ];
        let mut out = String::new();
        for (key, value) in rows {
            writeln!(out, "{key:<22}{value}").unwrap();
        }
        out
    }
}
