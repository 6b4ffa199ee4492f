//! Exporters: JSON, the appendix list syntax, and Wavefront OBJ.

use crate::format::{ConfigDocument, CuboidEntry};
use std::fmt::Write;
use std::str::FromStr;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExportFormat {
    Json,
    Maple,
    Obj,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExportError {
    #[error("unknown export format {0:?} (expected json, maple or obj)")]
    UnknownFormat(String),
    #[error("bad explode spec {0:?} (expected AXIS:GAP, e.g. z:4)")]
    BadExplode(String),
}

impl FromStr for ExportFormat {
    type Err = ExportError;

    fn from_str(s: &str) -> Result<Self, ExportError> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "maple" => Ok(ExportFormat::Maple),
            "obj" => Ok(ExportFormat::Obj),
            _ => Err(ExportError::UnknownFormat(s.into())),
        }
    }
}

/// Layer separation along one axis: the interval `[lo, hi]` becomes
/// `[(gap+1)·lo, gap·lo + hi]`, so each cuboid keeps its size and layer `l`
/// moves by `gap·l`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Explode {
    pub axis: usize,
    pub gap: i32,
}

impl FromStr for Explode {
    type Err = ExportError;

    fn from_str(s: &str) -> Result<Self, ExportError> {
        let bad = || ExportError::BadExplode(s.into());
        let (axis, gap) = s.split_once(':').ok_or_else(bad)?;
        let axis = match axis {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            _ => return Err(bad()),
        };
        let gap = gap.parse().map_err(|_| bad())?;
        Ok(Explode { axis, gap })
    }
}

impl Explode {
    pub fn apply(&self, doc: &ConfigDocument) -> ConfigDocument {
        let mut out = doc.clone();
        for e in &mut out.cuboids {
            let (lo, hi) = (e.min[self.axis], e.max[self.axis]);
            e.min[self.axis] = (self.gap + 1) * lo;
            e.max[self.axis] = self.gap * lo + hi;
        }
        out
    }
}

/// Color names for OBJ materials. The first six follow the appendix
/// drawing palette.
pub const PALETTE: [&str; 12] =
    ["yellow", "red", "blue", "white", "black", "green", "cyan", "magenta", "orange", "purple", "brown", "gray"];

const RGB: [[f32; 3]; 12] = [
    [1.0, 1.0, 0.0],
    [1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0],
    [1.0, 1.0, 1.0],
    [0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, 1.0, 1.0],
    [1.0, 0.0, 1.0],
    [1.0, 0.5, 0.0],
    [0.5, 0.0, 0.5],
    [0.6, 0.3, 0.1],
    [0.5, 0.5, 0.5],
];

/// Material name of a 1-based color. Past the palette, names cycle with a
/// numeric suffix: `yellow2`, `red2`, ...
pub fn material_name(color: u32) -> String {
    let i = (color.max(1) - 1) as usize;
    let (name, round) = (PALETTE[i % PALETTE.len()], i / PALETTE.len());
    if round == 0 {
        name.to_string()
    } else {
        format!("{name}{}", round + 1)
    }
}

/// MTL text defining every material used by `doc`.
pub fn mtl(doc: &ConfigDocument) -> String {
    let max = doc.cuboids.iter().map(|e| e.color.unwrap_or(1)).max().unwrap_or(1);
    let mut s = String::new();
    for c in 1..=max {
        let [r, g, b] = RGB[(c - 1) as usize % RGB.len()];
        writeln!(s, "newmtl {}\nKd {r} {g} {b}\n", material_name(c)).unwrap();
    }
    s
}

fn color_of(e: &CuboidEntry) -> u32 {
    e.color.unwrap_or(1)
}

/// The appendix list syntax on one line. Cuboids without a color get 1.
pub fn to_maple(doc: &ConfigDocument) -> String {
    let items: Vec<String> = doc
        .cuboids
        .iter()
        .map(|e| {
            format!("[{},{},{},{},{},{},{}]", e.min[0], e.max[0], e.min[1], e.max[1], e.min[2], e.max[2], color_of(e))
        })
        .collect();
    format!("[{}]\n", items.join(","))
}

const FACES: [[usize; 3]; 12] = [
    [1, 3, 2],
    [1, 4, 3],
    [5, 6, 7],
    [5, 7, 8],
    [1, 2, 6],
    [1, 6, 5],
    [2, 3, 7],
    [2, 7, 6],
    [3, 4, 8],
    [3, 8, 7],
    [4, 1, 5],
    [4, 5, 8],
];

/// One box per cuboid: 8 vertices, 12 outward triangles, and a material
/// per color.
pub fn to_obj(doc: &ConfigDocument) -> String {
    let mut s = String::from("mtllib boxchroma.mtl\n");
    for (i, e) in doc.cuboids.iter().enumerate() {
        let (lo, hi) = (e.min, e.max);
        writeln!(s, "o cuboid{}\nusemtl {}", i + 1, material_name(color_of(e))).unwrap();
        // bottom face counter-clockwise from the root, then the top face
        for (x, y) in [(lo[0], lo[1]), (hi[0], lo[1]), (hi[0], hi[1]), (lo[0], hi[1])] {
            writeln!(s, "v {x} {y} {}", lo[2]).unwrap();
        }
        for (x, y) in [(lo[0], lo[1]), (hi[0], lo[1]), (hi[0], hi[1]), (lo[0], hi[1])] {
            writeln!(s, "v {x} {y} {}", hi[2]).unwrap();
        }
        let base = 8 * i;
        for f in FACES {
            writeln!(s, "f {} {} {}", base + f[0], base + f[1], base + f[2]).unwrap();
        }
    }
    s
}

pub fn export(doc: &ConfigDocument, format: ExportFormat, explode: Option<Explode>) -> String {
    let exploded;
    let doc = match explode {
        Some(e) => {
            exploded = e.apply(doc);
            &exploded
        }
        None => doc,
    };
    match format {
        ExportFormat::Json => doc.to_json() + "\n",
        ExportFormat::Maple => to_maple(doc),
        ExportFormat::Obj => to_obj(doc),
    }
}
