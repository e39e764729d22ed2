//! JSON and DOT encodings of [`ColoredQuiver`].
//!
//! JSON: `{"vertices":[{"id":..}],"arrows":[{"src":..,"dst":..,"color":int|null,"mult":int}]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{Arrow, ColoredQuiver, QuiverError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Invalid(#[from] QuiverError),
}

impl FormatError {
    pub(crate) fn from_json(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => FormatError::Schema(e.to_string()),
            _ => FormatError::Parse { line: e.line(), column: e.column(), message: e.to_string() },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDto {
    id: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDto {
    src: String,
    dst: String,
    color: Option<u32>,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct QuiverDto {
    vertices: Vec<VertexDto>,
    arrows: Vec<ArrowDto>,
}

impl From<&ColoredQuiver> for QuiverDto {
    fn from(q: &ColoredQuiver) -> Self {
        QuiverDto {
            vertices: q.vertices().iter().map(|id| VertexDto { id: id.clone() }).collect(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowDto { src: a.src.clone(), dst: a.dst.clone(), color: a.color, mult: a.mult.into() })
                .collect(),
        }
    }
}

impl TryFrom<QuiverDto> for ColoredQuiver {
    type Error = QuiverError;

    fn try_from(dto: QuiverDto) -> Result<Self, QuiverError> {
        let mut arrows = Vec::with_capacity(dto.arrows.len());
        for a in dto.arrows {
            let mult = u32::try_from(a.mult).ok().filter(|&m| m >= 1).ok_or_else(|| QuiverError::NonPositiveMult {
                src: a.src.clone(),
                dst: a.dst.clone(),
                mult: a.mult,
            })?;
            arrows.push(Arrow { src: a.src, dst: a.dst, color: a.color, mult });
        }
        ColoredQuiver::try_from_parts(dto.vertices.into_iter().map(|v| v.id).collect(), arrows)
    }
}

impl Serialize for ColoredQuiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuiverDto::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColoredQuiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let dto = QuiverDto::deserialize(d)?;
        ColoredQuiver::try_from(dto).map_err(serde::de::Error::custom)
    }
}

/// Compact JSON, fields in schema order, vertices and arrows in quiver order.
pub fn serialize(q: &ColoredQuiver) -> String {
    serde_json::to_string(&QuiverDto::from(q)).expect("quiver JSON is infallible")
}

pub fn deserialize(text: &str) -> Result<ColoredQuiver, FormatError> {
    let dto: QuiverDto = serde_json::from_str(text).map_err(FormatError::from_json)?;
    Ok(ColoredQuiver::try_from(dto)?)
}

/// How arrow multiplicities are drawn in DOT.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DotMultiplicity {
    /// One edge carrying `label="×m"` when `m > 1`.
    #[default]
    Label,
    /// `m` parallel edges.
    Repeat,
}

fn dot_id(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn to_dot(q: &ColoredQuiver) -> String {
    to_dot_with(q, DotMultiplicity::Label)
}

pub fn to_dot_with(q: &ColoredQuiver, style: DotMultiplicity) -> String {
    let mut out = String::from("digraph Q {\n");
    for v in q.vertices() {
        out.push_str(&format!("  {};\n", dot_id(v)));
    }
    for a in q.arrows() {
        let mut attrs = Vec::new();
        let copies = match style {
            DotMultiplicity::Label => {
                if a.mult > 1 {
                    attrs.push(format!("label=\"×{}\"", a.mult));
                }
                1
            }
            DotMultiplicity::Repeat => a.mult,
        };
        if let Some(c) = a.color {
            attrs.push(format!("color=\"c{c}\""));
        }
        let tail = if attrs.is_empty() { String::new() } else { format!(" [{}]", attrs.join(", ")) };
        for _ in 0..copies {
            out.push_str(&format!("  {} -> {}{};\n", dot_id(&a.src), dot_id(&a.dst), tail));
        }
    }
    out.push_str("}\n");
    out
}

/// Reads back the DOT dialect written by [`to_dot_with`] (either multiplicity style).
/// Unlabelled repeated edges are merged into one record.
pub fn from_dot(text: &str) -> Result<ColoredQuiver, FormatError> {
    let mut p = DotParser { src: text, pos: 0 };
    p.ws();
    p.keyword("digraph")?;
    p.ws();
    if p.peek() != Some('{') {
        p.id()?;
        p.ws();
    }
    p.expect('{')?;
    let mut q = ColoredQuiver::new();
    loop {
        p.ws();
        match p.peek() {
            Some('}') => {
                p.pos += 1;
                break;
            }
            None => return Err(p.error("unexpected end of input")),
            _ => {}
        }
        let first = p.id()?;
        p.ws();
        if p.src[p.pos..].starts_with("->") {
            p.pos += 2;
            p.ws();
            let second = p.id()?;
            p.ws();
            let (mut mult, mut color) = (1u32, None);
            if p.peek() == Some('[') {
                for (k, v) in p.attrs()? {
                    match k.as_str() {
                        "label" => {
                            mult = v
                                .strip_prefix('×')
                                .and_then(|m| m.parse().ok())
                                .ok_or_else(|| FormatError::Schema(format!("bad multiplicity label `{v}`")))?;
                        }
                        "color" => {
                            color = Some(
                                v.strip_prefix('c')
                                    .and_then(|c| c.parse().ok())
                                    .ok_or_else(|| FormatError::Schema(format!("bad color `{v}`")))?,
                            );
                        }
                        other => return Err(FormatError::Schema(format!("unsupported edge attribute `{other}`"))),
                    }
                }
            }
            q.add_arrow(first, second, color, mult)?;
        } else {
            if p.peek() == Some('[') {
                p.attrs()?;
            }
            q.add_vertex(first)?;
        }
        p.ws();
        if p.peek() == Some(';') {
            p.pos += 1;
        }
    }
    p.ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input after graph"));
    }
    Ok(q)
}

struct DotParser<'a> {
    src: &'a str,
    pos: usize,
}

impl DotParser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn error(&self, message: &str) -> FormatError {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        FormatError::Parse { line, column, message: message.to_string() }
    }

    fn expect(&mut self, c: char) -> Result<(), FormatError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), FormatError> {
        if self.src[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{kw}`")))
        }
    }

    fn id(&mut self) -> Result<String, FormatError> {
        if self.peek() == Some('"') {
            self.pos += 1;
            let mut out = String::new();
            loop {
                let c = self.peek().ok_or_else(|| self.error("unterminated string"))?;
                self.pos += c.len_utf8();
                match c {
                    '"' => return Ok(out),
                    '\\' => {
                        let n = self.peek().ok_or_else(|| self.error("unterminated escape"))?;
                        self.pos += n.len_utf8();
                        out.push(n);
                    }
                    _ => out.push(c),
                }
            }
        }
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' && self.pos == start {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.error("expected an identifier"));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn attrs(&mut self) -> Result<Vec<(String, String)>, FormatError> {
        self.expect('[')?;
        let mut out = Vec::new();
        loop {
            self.ws();
            if self.peek() == Some(']') {
                self.pos += 1;
                return Ok(out);
            }
            let k = self.id()?;
            self.ws();
            self.expect('=')?;
            self.ws();
            let v = self.id()?;
            out.push((k, v));
            self.ws();
            if matches!(self.peek(), Some(',') | Some(';')) {
                self.pos += 1;
            }
        }
    }
}
