//! Appendix list text and the JSON configuration document.
//!
//! The appendix format is a bracketed list of 7-tuples
//! `[x1,x2,y1,y2,z1,z2,color]`, one per cuboid, with arbitrary whitespace.
//! It carries no dimensions or freedom class; those come from the caller.

use boxchroma_core::geometry::Violation;
use boxchroma_core::{Coloring, Configuration, Cuboid, DimTriple, Freedom, GeometryError};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// One tuple of an appendix listing, in source order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AppendixRecord {
    pub x1: i32,
    pub x2: i32,
    pub y1: i32,
    pub y2: i32,
    pub z1: i32,
    pub z2: i32,
    pub color: u32,
}

impl AppendixRecord {
    fn intervals(&self) -> [(i32, i32); 3] {
        [(self.x1, self.x2), (self.y1, self.y2), (self.z1, self.z2)]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CuboidEntry {
    pub min: [i32; 3],
    pub max: [i32; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<u32>,
}

impl CuboidEntry {
    pub fn cuboid(&self) -> Result<Cuboid, GeometryError> {
        Cuboid::from_corners(self.min, self.max)
    }
}

/// A configuration with its metadata and optional stored colors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawDocument", into = "RawDocument")]
pub struct ConfigDocument {
    pub dims: DimTriple,
    pub freedom: Freedom,
    /// Chromatic number claimed by the source.
    pub declared_chi: Option<u32>,
    pub cuboids: Vec<CuboidEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    dims: [u32; 3],
    freedom: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chi: Option<u32>,
    cuboids: Vec<CuboidEntry>,
}

impl TryFrom<RawDocument> for ConfigDocument {
    type Error = String;

    fn try_from(raw: RawDocument) -> Result<Self, String> {
        let [a, b, c] = raw.dims;
        let dims = DimTriple::new(a, b, c).map_err(|e| e.to_string())?;
        let freedom = Freedom::from_level(raw.freedom)
            .ok_or_else(|| format!("freedom must be 1, 2 or 3, got {}", raw.freedom))?;
        Ok(ConfigDocument { dims, freedom, declared_chi: raw.chi, cuboids: raw.cuboids })
    }
}

impl From<ConfigDocument> for RawDocument {
    fn from(doc: ConfigDocument) -> Self {
        RawDocument {
            dims: doc.dims.as_array(),
            freedom: doc.freedom.level(),
            chi: doc.declared_chi,
            cuboids: doc.cuboids,
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("empty cuboid list")]
    Empty,
    #[error("expected {expected} at byte {pos}")]
    Syntax { pos: usize, expected: &'static str },
    #[error("tuple {index} has {found} entries, expected 7")]
    Arity { index: usize, found: usize },
    #[error("tuple {index}: {token:?} is not an integer")]
    Token { index: usize, token: String },
    #[error("tuple {index}: color must be positive")]
    Color { index: usize },
    #[error("tuple {index}: empty interval on axis {axis}")]
    ZeroLength { index: usize, axis: usize },
    #[error("tuple {index}: {source}")]
    Geometry { index: usize, source: GeometryError },
    #[error("invalid JSON document: {0}")]
    Json(#[from] serde_json::Error),
}

/// Something accepted but suspicious.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParseWarning {
    /// The interval on `axis` was given max first and has been swapped.
    ReversedInterval { index: usize, axis: usize },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::ReversedInterval { index, axis } => {
                write!(f, "tuple {index}: reversed interval on axis {} swapped", ["x", "y", "z"][*axis])
            }
        }
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8, what: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax { pos: self.pos, expected: what })
        }
    }

    /// Raw token up to the next separator.
    fn token(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && !matches!(self.s[self.pos], b',' | b']' | b'[')
            && !self.s[self.pos].is_ascii_whitespace()
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }
}

/// Parses the tuples of an appendix listing without interpreting them.
pub fn parse_records(text: &str) -> Result<Vec<AppendixRecord>, ParseError> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    lx.expect(b'[', "'['")?;
    let mut out = Vec::new();
    if lx.peek() == Some(b']') {
        return Err(ParseError::Empty);
    }
    loop {
        let index = out.len();
        lx.expect(b'[', "'[' opening a tuple")?;
        let mut vals = Vec::with_capacity(7);
        loop {
            let tok = lx.token();
            let v: i64 = tok.parse().map_err(|_| ParseError::Token { index, token: tok.to_string() })?;
            let v = i32::try_from(v).map_err(|_| ParseError::Token { index, token: tok.to_string() })?;
            vals.push(v);
            match lx.peek() {
                Some(b',') => lx.pos += 1,
                Some(b']') => {
                    lx.pos += 1;
                    break;
                }
                _ => return Err(ParseError::Syntax { pos: lx.pos, expected: "',' or ']' in a tuple" }),
            }
        }
        if vals.len() != 7 {
            return Err(ParseError::Arity { index, found: vals.len() });
        }
        if vals[6] <= 0 {
            return Err(ParseError::Color { index });
        }
        out.push(AppendixRecord {
            x1: vals[0],
            x2: vals[1],
            y1: vals[2],
            y2: vals[3],
            z1: vals[4],
            z2: vals[5],
            color: vals[6] as u32,
        });
        match lx.peek() {
            Some(b',') => lx.pos += 1,
            Some(b']') => {
                lx.pos += 1;
                break;
            }
            _ => return Err(ParseError::Syntax { pos: lx.pos, expected: "',' or ']' after a tuple" }),
        }
    }
    // a trailing statement terminator is tolerated
    if lx.peek() == Some(b';') {
        lx.pos += 1;
    }
    if lx.peek().is_some() {
        return Err(ParseError::Syntax { pos: lx.pos, expected: "end of input" });
    }
    Ok(out)
}

/// Parses an appendix listing into a normalized document. Reversed
/// intervals are swapped and reported.
pub fn parse_appendix(
    text: &str,
    dims: DimTriple,
    freedom: Freedom,
) -> Result<(ConfigDocument, Vec<ParseWarning>), ParseError> {
    let records = parse_records(text)?;
    let mut warnings = Vec::new();
    let mut cuboids = Vec::with_capacity(records.len());
    for (index, r) in records.iter().enumerate() {
        let mut min = [0; 3];
        let mut max = [0; 3];
        for (axis, (lo, hi)) in r.intervals().into_iter().enumerate() {
            if lo == hi {
                return Err(ParseError::ZeroLength { index, axis });
            }
            if lo > hi {
                warnings.push(ParseWarning::ReversedInterval { index, axis });
            }
            min[axis] = lo.min(hi);
            max[axis] = lo.max(hi);
        }
        let entry = CuboidEntry { min, max, color: Some(r.color) };
        entry.cuboid().map_err(|source| ParseError::Geometry { index, source })?;
        cuboids.push(entry);
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok((ConfigDocument { dims, freedom, declared_chi: None, cuboids }, warnings))
}

impl ConfigDocument {
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let doc: ConfigDocument = serde_json::from_str(text)?;
        for (index, e) in doc.cuboids.iter().enumerate() {
            for axis in 0..3 {
                if e.min[axis] >= e.max[axis] {
                    return Err(ParseError::ZeroLength { index, axis });
                }
            }
            if e.color == Some(0) {
                return Err(ParseError::Color { index });
            }
            e.cuboid().map_err(|source| ParseError::Geometry { index, source })?;
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Document for `cfg`, with colors when given.
    pub fn from_configuration(cfg: &Configuration, colors: Option<&Coloring>, declared_chi: Option<u32>) -> Self {
        let cuboids = cfg
            .cuboids
            .iter()
            .enumerate()
            .map(|(i, c)| CuboidEntry { min: c.root(), max: c.upper(), color: colors.map(|k| k.0[i]) })
            .collect();
        ConfigDocument { dims: cfg.dims, freedom: cfg.freedom, declared_chi, cuboids }
    }

    /// The cuboids, without checking orientations or collisions.
    pub fn configuration(&self) -> Configuration {
        let cuboids = self.cuboids.iter().map(|e| e.cuboid().expect("entries are checked on construction")).collect();
        Configuration::new(self.dims, self.freedom, cuboids)
    }

    /// Orientation and collision check.
    pub fn validate(&self) -> Result<Configuration, Violation> {
        let cfg = self.configuration();
        cfg.validate()?;
        Ok(cfg)
    }

    /// Stored colors, if every cuboid has one.
    pub fn coloring(&self) -> Option<Coloring> {
        self.cuboids.iter().map(|e| e.color).collect::<Option<Vec<_>>>().map(Coloring)
    }

    /// Overrides the metadata, as when a listing is read with explicit flags.
    pub fn with_metadata(mut self, dims: Option<DimTriple>, freedom: Option<Freedom>) -> Self {
        if let Some(d) = dims {
            self.dims = d;
        }
        if let Some(f) = freedom {
            self.freedom = f;
        }
        self
    }
}
