//! Line-oriented corpus of named diagrams:
//! `name | notation | data | [framings] | [key=value ...]`, `#` comments.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::diagram::{braid_closure, parse_pd, BraidWord, FramedLink, LinkDiagram};
use crate::error::{Error, Result};

pub const BUNDLED_CORPUS: &str = include_str!("../../corpus/knots.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Notation {
    Pd,
    Braid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub notation: Notation,
    pub data: String,
    pub framings: Option<Vec<i64>>,
    pub expected: BTreeMap<String, Rational>,
    /// 1-based source line.
    pub line: usize,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<LinkDiagram> {
        match self.notation {
            Notation::Braid => Ok(braid_closure(&self.data.parse::<BraidWord>()?)),
            Notation::Pd => parse_pd(&self.data),
        }
    }

    /// The diagram with its listed framings, or `default` on every component.
    pub fn framed(&self, default: i64) -> Result<FramedLink> {
        let d = self.diagram()?;
        let f = self.framings.clone().unwrap_or_else(|| vec![default; d.component_count()]);
        FramedLink::new(d, f)
    }

    pub fn expected(&self, key: &str) -> Option<&Rational> {
        self.expected.get(key)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
}

fn corpus_err(line: usize, message: impl Into<String>) -> Error {
    Error::Corpus { line, message: message.into() }
}

fn parse_line(line: usize, text: &str) -> Result<CorpusEntry> {
    let fields: Vec<&str> = text.split('|').map(str::trim).collect();
    if !(3..=5).contains(&fields.len()) {
        return Err(corpus_err(line, format!("expected 3 to 5 '|'-separated fields, found {}", fields.len())));
    }
    let name = fields[0];
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(corpus_err(line, format!("bad entry name {name:?}")));
    }
    let notation = match fields[1] {
        "pd" => Notation::Pd,
        "braid" => Notation::Braid,
        "dt" => return Err(corpus_err(line, "DT codes are not supported; use pd or braid")),
        other => return Err(corpus_err(line, format!("unknown notation {other:?}"))),
    };
    let framings = match fields.get(3).copied().unwrap_or("") {
        "" => None,
        f => Some(
            f.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| corpus_err(line, format!("bad framing list {f:?}")))?,
        ),
    };
    let mut expected = BTreeMap::new();
    for kv in fields.get(4).copied().unwrap_or("").split_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| corpus_err(line, format!("expected key=value, got {kv:?}")))?;
        let v: Rational = v.parse().map_err(|_| corpus_err(line, format!("value of {k} is not a rational: {v:?}")))?;
        expected.insert(k.to_string(), v);
    }
    let entry = CorpusEntry {
        name: name.to_string(),
        notation,
        data: fields[2].to_string(),
        framings,
        expected,
        line,
    };
    let d = entry.diagram().map_err(|e| corpus_err(line, e.to_string()))?;
    if let Some(f) = &entry.framings {
        if f.len() != d.component_count() {
            return Err(corpus_err(line, format!("{} framings for {} components", f.len(), d.component_count())));
        }
    }
    Ok(entry)
}

impl Corpus {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<CorpusEntry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let e = parse_line(i + 1, body)?;
            if entries.iter().any(|x| x.name == e.name) {
                return Err(corpus_err(i + 1, format!("duplicate entry {:?}", e.name)));
            }
            entries.push(e);
        }
        Ok(Self { entries })
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_CORPUS).expect("bundled corpus parses")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Entries whose diagram is a knot.
    pub fn knots(&self) -> Vec<&CorpusEntry> {
        self.entries
            .iter()
            .filter(|e| e.diagram().map(|d| d.is_knot()).unwrap_or(false))
            .collect()
    }
}

/// Resolves `braid:<n>:<word>`, `pd:<code>`, a bare PD code `X(...)`, or a
/// corpus entry name.
pub fn resolve_diagram(spec: &str, corpus: &Corpus) -> Result<LinkDiagram> {
    let s = spec.trim();
    if let Some(body) = s.strip_prefix("braid:") {
        return Ok(braid_closure(&body.parse::<BraidWord>()?));
    }
    if let Some(body) = s.strip_prefix("pd:") {
        return parse_pd(body);
    }
    if s.starts_with("X(") || s.starts_with("X[") {
        return parse_pd(s);
    }
    corpus
        .get(s)
        .ok_or_else(|| Error::Parse(format!("{s:?} is neither a diagram nor a corpus entry")))?
        .diagram()
}
