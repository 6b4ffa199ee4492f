//! Periodic colorings of all cuboids of a family.
//!
//! A periodic coloring assigns a color to every (root, orientation) pair of
//! the integer lattice and is invariant under translation by its period. Any
//! configuration inherits a proper coloring from a proper periodic one by
//! looking up each cuboid's root modulo the period.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::budget::Budget;
use crate::chroma::{chromatic_number, ChromaTimeout, SolveOptions};
use crate::geometry::{orientations, touch, Cuboid, DimTriple, Freedom};
use crate::graph::ContactGraph;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodicColoring {
    pub dims: DimTriple,
    pub freedom: Freedom,
    pub period: [u32; 3],
    /// Allowed orientations, in the order used by `table`.
    pub orientations: Vec<[u32; 3]>,
    /// Colors indexed by `((z*Y + y)*X + x) * orientations.len() + o`.
    table: Vec<u32>,
    /// Palette size; every color lies in `1..=k`.
    pub k: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PeriodicError {
    IncompatibleDims(String),
    UnknownName(String),
    ZeroPeriod,
}

impl fmt::Display for PeriodicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodicError::IncompatibleDims(why) => write!(f, "incompatible dimensions: {why}"),
            PeriodicError::UnknownName(name) => write!(f, "unknown coloring name {name:?}"),
            PeriodicError::ZeroPeriod => f.write_str("period components must be positive"),
        }
    }
}

impl core::error::Error for PeriodicError {}

fn incompatible(why: &str) -> PeriodicError {
    PeriodicError::IncompatibleDims(why.into())
}

impl PeriodicColoring {
    /// Tabulates `kappa` over the fundamental domain. `kappa` receives roots
    /// in `[0,X)×[0,Y)×[0,Z)` and an allowed orientation.
    pub fn from_fn(
        dims: DimTriple,
        freedom: Freedom,
        period: [u32; 3],
        mut kappa: impl FnMut([i64; 3], [u32; 3]) -> u32,
    ) -> Result<Self, PeriodicError> {
        if period.contains(&0) {
            return Err(PeriodicError::ZeroPeriod);
        }
        let ors = orientations(dims, freedom);
        let [px, py, pz] = period;
        let mut table = Vec::with_capacity((px * py * pz) as usize * ors.len());
        for z in 0..pz {
            for y in 0..py {
                for x in 0..px {
                    for o in &ors {
                        table.push(kappa([x as i64, y as i64, z as i64], *o));
                    }
                }
            }
        }
        let k = table.iter().copied().max().unwrap_or(0);
        Ok(PeriodicColoring { dims, freedom, period, orientations: ors, table, k })
    }

    pub fn orientation_index(&self, o: [u32; 3]) -> Option<usize> {
        self.orientations.iter().position(|&p| p == o)
    }

    fn cell_index(&self, root: [i64; 3]) -> usize {
        let f = |i: usize| root[i].rem_euclid(self.period[i] as i64) as usize;
        let (x, y, z) = (f(0), f(1), f(2));
        (z * self.period[1] as usize + y) * self.period[0] as usize + x
    }

    /// Color of the cuboid with the given root and orientation, or `None`
    /// when the orientation is not allowed.
    pub fn color(&self, root: [i64; 3], o: [u32; 3]) -> Option<u32> {
        let oi = self.orientation_index(o)?;
        Some(self.table[self.cell_index(root) * self.orientations.len() + oi])
    }

    /// Color of a cuboid of the family.
    pub fn color_of(&self, c: &Cuboid) -> Option<u32> {
        let r = c.root();
        self.color([r[0] as i64, r[1] as i64, r[2] as i64], c.dims())
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut t = self.table.clone();
        t.sort_unstable();
        t.dedup();
        t.len()
    }
}

/// Two touching cuboids with the same color.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Counterexample {
    pub first: Cuboid,
    pub second: Cuboid,
    pub color: u32,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} and {} touch and both have color {}", self.first, self.second, self.color)
    }
}

impl core::error::Error for Counterexample {}

/// Checks that no two touching cuboids of the family share a color.
pub fn verify_periodic(pc: &PeriodicColoring) -> Result<(), Counterexample> {
    verify_periodic_with_margin(pc, 0)
}

/// As [`verify_periodic`], with the window of second roots widened by
/// `margin` on every side.
pub fn verify_periodic_with_margin(pc: &PeriodicColoring, margin: i64) -> Result<(), Counterexample> {
    let mut found = None;
    for_each_touching_pair(pc.period, &pc.orientations, margin, |p, oi, q, oj| {
        let cp = pc.table[pc.cell_index(p) * pc.orientations.len() + oi];
        let cq = pc.table[pc.cell_index(q) * pc.orientations.len() + oj];
        if cp == cq {
            found = Some(Counterexample {
                first: cuboid_at(p, pc.orientations[oi]),
                second: cuboid_at(q, pc.orientations[oj]),
                color: cp,
            });
            return false;
        }
        true
    });
    found.map_or(Ok(()), Err)
}

fn cuboid_at(root: [i64; 3], o: [u32; 3]) -> Cuboid {
    Cuboid::new([root[0] as i32, root[1] as i32, root[2] as i32], o).expect("window roots are small")
}

/// Calls `visit(p, o1, q, o2)` for every root `p` in the fundamental domain
/// and every `q` whose cuboid touches `p`'s. Stops when `visit` returns false.
fn for_each_touching_pair(
    period: [u32; 3],
    ors: &[[u32; 3]],
    margin: i64,
    mut visit: impl FnMut([i64; 3], usize, [i64; 3], usize) -> bool,
) {
    for z in 0..period[2] as i64 {
        for y in 0..period[1] as i64 {
            for x in 0..period[0] as i64 {
                let p = [x, y, z];
                for (oi, &o1) in ors.iter().enumerate() {
                    let cp = cuboid_at(p, o1);
                    for (oj, &o2) in ors.iter().enumerate() {
                        let lo = |i: usize| p[i] - o2[i] as i64 - margin;
                        let hi = |i: usize| p[i] + o1[i] as i64 + margin;
                        for qx in lo(0)..=hi(0) {
                            for qy in lo(1)..=hi(1) {
                                for qz in lo(2)..=hi(2) {
                                    let q = [qx, qy, qz];
                                    if touch(&cp, &cuboid_at(q, o2)) && !visit(p, oi, q, oj) {
                                        return;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Closed-form colorings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Formula {
    /// Octant of the `2a×2b×2c` block, one orientation only.
    Octant8F1,
    /// `(x mod 2, y mod 2, (z mod 2c)/c)` for odd `a`, `b`, two orientations.
    OddXy8F2,
    /// `(x mod 2, y mod 2, z mod 2)` for all sides odd, six orientations.
    AllOdd8F3,
    /// Parity of `x+y+z` for the unit cube.
    Checkerboard2,
    /// `(x mod 2a)/a` and the parity of `y+z` for `a×1×1`.
    Stripes4,
}

impl Formula {
    pub const ALL: [Formula; 5] =
        [Formula::Octant8F1, Formula::OddXy8F2, Formula::AllOdd8F3, Formula::Checkerboard2, Formula::Stripes4];

    pub fn id(self) -> &'static str {
        match self {
            Formula::Octant8F1 => "octant8_F1",
            Formula::OddXy8F2 => "oddxy8_F2",
            Formula::AllOdd8F3 => "allodd8_F3",
            Formula::Checkerboard2 => "checkerboard2",
            Formula::Stripes4 => "stripes4_ax1x1",
        }
    }

    pub fn from_id(id: &str) -> Result<Formula, PeriodicError> {
        Formula::ALL.into_iter().find(|f| f.id() == id).ok_or_else(|| PeriodicError::UnknownName(id.into()))
    }
}

pub fn formula_coloring(name: Formula, dims: DimTriple) -> Result<PeriodicColoring, PeriodicError> {
    let [a, b, c] = dims.as_array();
    let m = |v: i64, n: u32| v.rem_euclid(n as i64) as u32;
    match name {
        Formula::Octant8F1 => PeriodicColoring::from_fn(dims, Freedom::F1, [2 * a, 2 * b, 2 * c], |p, _| {
            1 + m(p[0], 2 * a) / a + 2 * (m(p[1], 2 * b) / b) + 4 * (m(p[2], 2 * c) / c)
        }),
        Formula::OddXy8F2 => {
            if a % 2 == 0 || b % 2 == 0 {
                return Err(incompatible("oddxy8_F2 needs odd a and b"));
            }
            PeriodicColoring::from_fn(dims, Freedom::F2, [2, 2, 2 * c], |p, _| {
                1 + m(p[0], 2) + 2 * m(p[1], 2) + 4 * (m(p[2], 2 * c) / c)
            })
        }
        Formula::AllOdd8F3 => {
            if a % 2 == 0 || b % 2 == 0 || c % 2 == 0 {
                return Err(incompatible("allodd8_F3 needs all sides odd"));
            }
            PeriodicColoring::from_fn(dims, Freedom::F3, [2, 2, 2], |p, _| {
                1 + m(p[0], 2) + 2 * m(p[1], 2) + 4 * m(p[2], 2)
            })
        }
        Formula::Checkerboard2 => {
            if [a, b, c] != [1, 1, 1] {
                return Err(incompatible("checkerboard2 needs the unit cube"));
            }
            PeriodicColoring::from_fn(dims, Freedom::F1, [2, 2, 2], |p, _| 1 + m(p[0] + p[1] + p[2], 2))
        }
        Formula::Stripes4 => {
            if b != 1 || c != 1 {
                return Err(incompatible("stripes4_ax1x1 needs dims a×1×1"));
            }
            PeriodicColoring::from_fn(dims, Freedom::F1, [2 * a, 2, 2], |p, _| {
                1 + m(p[0], 2 * a) / a + 2 * m(p[1] + p[2], 2)
            })
        }
    }
}

/// Tabulated colorings. The stripe-shift families take the long side `a`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fixture {
    B2x1x1,
    D2x2x1,
    E(u32),
    F(u32),
    G(u32),
    Chi2Domino,
    Chi3Knight,
}

impl Fixture {
    pub const IDS: [&'static str; 7] = [
        "b_2x1x1_3col",
        "d_2x2x1_5col",
        "e_ax2x1_6col",
        "f_ax3x1_7col",
        "g_ax4x1_7col",
        "chi2_2x1x1_5col",
        "chi3_2x1x1_6col",
    ];

    pub fn id(self) -> &'static str {
        let i = match self {
            Fixture::B2x1x1 => 0,
            Fixture::D2x2x1 => 1,
            Fixture::E(_) => 2,
            Fixture::F(_) => 3,
            Fixture::G(_) => 4,
            Fixture::Chi2Domino => 5,
            Fixture::Chi3Knight => 6,
        };
        Self::IDS[i]
    }

    /// Parses an id; the stripe-shift families need `a`.
    pub fn from_id(id: &str, a: Option<u32>) -> Result<Fixture, PeriodicError> {
        let need = |b: u32| match a {
            Some(a) if a >= b => Ok(a),
            Some(_) => Err(incompatible("stripe-shift colorings need a >= b")),
            None => Err(incompatible("stripe-shift colorings need the parameter a")),
        };
        Ok(match id {
            "b_2x1x1_3col" => Fixture::B2x1x1,
            "d_2x2x1_5col" => Fixture::D2x2x1,
            "e_ax2x1_6col" => Fixture::E(need(2)?),
            "f_ax3x1_7col" => Fixture::F(need(3)?),
            "g_ax4x1_7col" => Fixture::G(need(4)?),
            "chi2_2x1x1_5col" => Fixture::Chi2Domino,
            "chi3_2x1x1_6col" => Fixture::Chi3Knight,
            _ => return Err(PeriodicError::UnknownName(id.into())),
        })
    }
}

/// Parses a whitespace-separated grid; `_` marks an unused cell (stored as 0).
fn grid(text: &str) -> Vec<Vec<u32>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(|t| if t == "_" { 0 } else { t.parse().unwrap() }).collect())
        .collect()
}

const B_LAYERS: [&str; 2] = ["1 1 2 2 3 3\n2 3 3 1 1 2", "2 3 3 1 1 2\n1 1 2 2 3 3"];

const D_LAYERS: [&str; 2] = [
    "1 1 2 2 3 3 4 4 5 5
     1 1 2 2 3 3 4 4 5 5
     4 4 5 5 1 1 2 2 3 3
     4 4 5 5 1 1 2 2 3 3
     2 2 3 3 4 4 5 5 1 1
     2 2 3 3 4 4 5 5 1 1
     5 5 1 1 2 2 3 3 4 4
     5 5 1 1 2 2 3 3 4 4
     3 3 4 4 5 5 1 1 2 2
     3 3 4 4 5 5 1 1 2 2",
    "4 5 5 1 1 2 2 3 3 4
     2 3 3 4 4 5 5 1 1 2
     2 3 3 4 4 5 5 1 1 2
     5 1 1 2 2 3 3 4 4 5
     5 1 1 2 2 3 3 4 4 5
     3 4 4 5 5 1 1 2 2 3
     3 4 4 5 5 1 1 2 2 3
     1 2 2 3 3 4 4 5 5 1
     1 2 2 3 3 4 4 5 5 1
     4 5 5 1 1 2 2 3 3 4",
];

/// Square-case stripe-shift rows: layer 0 half 0, layer 0 half 1, layer 1
/// half 0, layer 1 half 1.
const E_ROWS: &str = "1 1 2 2 3 3 4 4 5 5 6 6
4 4 5 5 6 6 1 1 2 2 3 3
5 6 6 1 1 2 2 3 3 4 4 5
2 3 3 4 4 5 5 6 6 1 1 2";

const F_ROWS: &str = "1 1 1 2 2 2 3 3 3 4 4 4 5 5 5 6 6 6 7 7 7
4 5 5 5 6 6 6 7 7 7 1 1 1 2 2 2 3 3 3 4 4
6 6 7 7 7 1 1 1 2 2 2 3 3 3 4 4 4 5 5 5 6
3 3 3 4 4 4 5 5 5 6 6 6 7 7 7 1 1 1 2 2 2";

const G_ROWS: &str = "1 1 1 1 2 2 2 2 3 3 3 3 4 4 4 4 5 5 5 5 6 6 6 6 7 7 7 7
4 4 5 5 5 5 6 6 6 6 7 7 7 7 1 1 1 1 2 2 2 2 3 3 3 3 4 4
6 6 6 7 7 7 7 1 1 1 1 2 2 2 2 3 3 3 3 4 4 4 4 5 5 5 5 6
2 3 3 3 3 4 4 4 4 5 5 5 5 6 6 6 6 7 7 7 7 1 1 1 1 2 2 2";

/// Colors of the unit cells with even coordinate sum, levels z = 0 and 1.
const CHI2_LEVELS: [&str; 2] = [
    "1 _ 2 _ 3 _ 4 _ 5 _
     _ 3 _ 4 _ 5 _ 1 _ 2
     4 _ 5 _ 1 _ 2 _ 3 _
     _ 1 _ 2 _ 3 _ 4 _ 5
     2 _ 3 _ 4 _ 5 _ 1 _
     _ 4 _ 5 _ 1 _ 2 _ 3
     5 _ 1 _ 2 _ 3 _ 4 _
     _ 2 _ 3 _ 4 _ 5 _ 1
     3 _ 4 _ 5 _ 1 _ 2 _
     _ 5 _ 1 _ 2 _ 3 _ 4",
    "_ 4 _ 5 _ 1 _ 2 _ 3
     5 _ 1 _ 2 _ 3 _ 4 _
     _ 2 _ 3 _ 4 _ 5 _ 1
     3 _ 4 _ 5 _ 1 _ 2 _
     _ 5 _ 1 _ 2 _ 3 _ 4
     1 _ 2 _ 3 _ 4 _ 5 _
     _ 3 _ 4 _ 5 _ 1 _ 2
     4 _ 5 _ 1 _ 2 _ 3 _
     _ 1 _ 2 _ 3 _ 4 _ 5
     2 _ 3 _ 4 _ 5 _ 1 _",
];

/// Base layer of the six-color knight-shift coloring; rows listed from the
/// top (y = 11) down.
const CHI3_BASE: &str = "_ 3 _ 6 _ 3 _ 6 _ 3 _ 6
2 _ 5 _ 2 _ 5 _ 2 _ 5 _
_ 4 _ 1 _ 4 _ 1 _ 4 _ 1
3 _ 6 _ 3 _ 6 _ 3 _ 6 _
_ 5 _ 2 _ 5 _ 2 _ 5 _ 2
4 _ 1 _ 4 _ 1 _ 4 _ 1 _
_ 6 _ 3 _ 6 _ 3 _ 6 _ 3
5 _ 2 _ 5 _ 2 _ 5 _ 2 _
_ 1 _ 4 _ 1 _ 4 _ 1 _ 4
6 _ 3 _ 6 _ 3 _ 6 _ 3 _
_ 2 _ 5 _ 2 _ 5 _ 2 _ 5
1 _ 4 _ 1 _ 4 _ 1 _ 4 _";

/// Extends a coloring `k0` of the even-sum unit cells to `2×1×1` dominoes:
/// every domino covers exactly one even-sum cell and takes its color.
fn domino(k0: impl Fn(i64, i64, i64) -> u32) -> impl Fn([i64; 3], [u32; 3]) -> u32 {
    move |[x, y, z], o| {
        if (x + y + z).rem_euclid(2) == 0 {
            k0(x, y, z)
        } else if o[0] == 2 {
            k0(x + 1, y, z)
        } else if o[1] == 2 {
            k0(x, y + 1, z)
        } else {
            k0(x, y, z + 1)
        }
    }
}

fn stripe_shift(a: u32, b: u32, rows: &str) -> Result<PeriodicColoring, PeriodicError> {
    let t = grid(rows);
    let len = t[0].len() as u32;
    let dims = DimTriple::new(a, b, 1).map_err(|_| incompatible("side too large"))?;
    PeriodicColoring::from_fn(dims, Freedom::F1, [2 * a, len, 2], |[x, y, z], _| {
        let half = (x.rem_euclid(2 * a as i64) / a as i64) as usize;
        t[2 * z.rem_euclid(2) as usize + half][y.rem_euclid(len as i64) as usize]
    })
}

pub fn fixture_coloring(name: Fixture) -> Result<PeriodicColoring, PeriodicError> {
    let d = |a, b, c| DimTriple::new(a, b, c).expect("fixture dims are valid");
    match name {
        Fixture::B2x1x1 | Fixture::D2x2x1 => {
            let (layers, dims): (Vec<Vec<Vec<u32>>>, _) = if name == Fixture::B2x1x1 {
                (B_LAYERS.iter().map(|l| grid(l)).collect(), d(2, 1, 1))
            } else {
                (D_LAYERS.iter().map(|l| grid(l)).collect(), d(2, 2, 1))
            };
            let period = [layers[0][0].len() as u32, layers[0].len() as u32, 2];
            PeriodicColoring::from_fn(dims, Freedom::F1, period, |[x, y, z], _| {
                layers[z as usize][y as usize][x as usize]
            })
        }
        Fixture::E(a) => stripe_shift(a, 2, E_ROWS),
        Fixture::F(a) => stripe_shift(a, 3, F_ROWS),
        Fixture::G(a) => stripe_shift(a, 4, G_ROWS),
        Fixture::Chi2Domino => {
            let levels: Vec<Vec<Vec<u32>>> = CHI2_LEVELS.iter().map(|l| grid(l)).collect();
            let k0 = |x: i64, y: i64, z: i64| {
                levels[z.rem_euclid(2) as usize][y.rem_euclid(10) as usize][x.rem_euclid(10) as usize]
            };
            PeriodicColoring::from_fn(d(2, 1, 1), Freedom::F2, [10, 10, 2], domino(k0))
        }
        Fixture::Chi3Knight => {
            let base = grid(CHI3_BASE);
            // level z is the base shifted one row down and two columns across per level
            let k0 = |x: i64, y: i64, z: i64| {
                let l = z.rem_euclid(12);
                let row = (11 - y.rem_euclid(12) + l).rem_euclid(12);
                let col = (x.rem_euclid(12) + 2 * l).rem_euclid(12);
                base[row as usize][col as usize]
            };
            PeriodicColoring::from_fn(d(2, 1, 1), Freedom::F3, [12, 12, 12], domino(k0))
        }
    }
}

/// How the cuboids of a richer family are split into classes, each colored
/// by a copy of the base coloring with its own block of colors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Partition {
    /// The base unchanged.
    Identity,
    /// One class per allowed orientation of the target freedom; the base
    /// (a single-orientation coloring) is applied with axes permuted.
    OrientationClass(Freedom),
    /// Flat cuboids (`c = 1`) split by the parity of the root's `z`; each
    /// class copies the base's `z = 0` layer to every level.
    ZParityLayers,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// `axes[j]` is the axis of `o` carrying side `dims[j]`.
fn axis_map(dims: [u32; 3], o: [u32; 3]) -> [usize; 3] {
    let mut used = [false; 3];
    let mut axes = [0; 3];
    for j in 0..3 {
        let i = (0..3).find(|&i| !used[i] && o[i] == dims[j]).expect("o is a permutation of dims");
        used[i] = true;
        axes[j] = i;
    }
    axes
}

pub fn product_coloring(base: &PeriodicColoring, partition: Partition) -> Result<PeriodicColoring, PeriodicError> {
    let k = base.k;
    match partition {
        Partition::Identity => Ok(base.clone()),
        Partition::OrientationClass(target) => {
            if base.orientations.len() != 1 {
                return Err(incompatible("orientation classes need a single-orientation base"));
            }
            let dims = base.dims.as_array();
            let classes = orientations(base.dims, target);
            let maps: Vec<[usize; 3]> = classes.iter().map(|&o| axis_map(dims, o)).collect();
            let mut period = [1u32; 3];
            for axes in &maps {
                for j in 0..3 {
                    period[axes[j]] = lcm(period[axes[j]], base.period[j]);
                }
            }
            let o0 = base.orientations[0];
            PeriodicColoring::from_fn(base.dims, target, period, |p, o| {
                let ci = classes.iter().position(|&c| c == o).unwrap();
                let axes = maps[ci];
                let q = [p[axes[0]], p[axes[1]], p[axes[2]]];
                ci as u32 * k + base.color(q, o0).unwrap()
            })
        }
        Partition::ZParityLayers => {
            if base.dims.c() != 1 {
                return Err(incompatible("z-parity layers need c = 1"));
            }
            let period = [base.period[0], base.period[1], 2];
            PeriodicColoring::from_fn(base.dims, base.freedom, period, |p, o| {
                p[2].rem_euclid(2) as u32 * k + base.color([p[0], p[1], 0], o).unwrap()
            })
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PercoResult {
    /// Least palette of a periodic coloring with this period, and one such coloring.
    Finite(u32, PeriodicColoring),
    /// Some cuboid touches one of its own translates.
    Infinite,
    /// The torus graph needs more than `max_k` colors.
    ExceedsMaxK { at_least: u32 },
}

impl PercoResult {
    pub fn value(&self) -> Option<u32> {
        match self {
            PercoResult::Finite(k, _) => Some(*k),
            _ => None,
        }
    }
}

/// The torus graph of a period: one vertex per (fundamental-domain root,
/// orientation), joined when some translates of the two cuboids touch.
/// Returns `None` when a cuboid touches its own translate.
pub fn torus_graph(dims: DimTriple, freedom: Freedom, period: [u32; 3]) -> Option<(ContactGraph, Vec<[u32; 3]>)> {
    let ors = orientations(dims, freedom);
    let cells = (period[0] * period[1] * period[2]) as usize;
    let mut g = ContactGraph::new(cells * ors.len());
    let vertex = |r: [i64; 3], o: usize| {
        let f = |i: usize| r[i].rem_euclid(period[i] as i64) as usize;
        ((f(2) * period[1] as usize + f(1)) * period[0] as usize + f(0)) * ors.len() + o
    };
    let mut has_loop = false;
    for_each_touching_pair(period, &ors, 0, |p, oi, q, oj| {
        let (u, v) = (vertex(p, oi), vertex(q, oj));
        if u == v {
            has_loop = true;
            return false;
        }
        g.add_edge(u, v);
        true
    });
    if has_loop {
        None
    } else {
        Some((g, ors))
    }
}

/// Least number of colors of a periodic coloring with the given period.
pub fn perco(
    dims: DimTriple,
    freedom: Freedom,
    period: [u32; 3],
    max_k: u32,
    opts: SolveOptions,
    budget: &mut dyn Budget,
) -> Result<PercoResult, ChromaTimeout> {
    assert!(!period.contains(&0), "period components must be positive");
    let Some((g, ors)) = torus_graph(dims, freedom, period) else {
        return Ok(PercoResult::Infinite);
    };
    let lower = g.clique_number() as u32;
    if lower > max_k {
        return Ok(PercoResult::ExceedsMaxK { at_least: lower });
    }
    let r = chromatic_number(&g, opts, budget)?;
    if r.chi > max_k {
        return Ok(PercoResult::ExceedsMaxK { at_least: r.chi });
    }
    let n_or = ors.len();
    let mut colors = vec![0u32; g.vertex_count()];
    colors.copy_from_slice(r.witness.colors());
    let pc = PeriodicColoring::from_fn(dims, freedom, period, |p, o| {
        let oi = ors.iter().position(|&c| c == o).unwrap();
        let cell = (p[2] as usize * period[1] as usize + p[1] as usize) * period[0] as usize + p[0] as usize;
        colors[cell * n_or + oi]
    })
    .expect("period is positive");
    Ok(PercoResult::Finite(r.chi, pc))
}
