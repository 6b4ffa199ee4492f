//! Integer box arithmetic: cuboids, orientation classes, contact predicates
//! and rescaling.
//!
//! A cuboid is stored as its root (minimal corner) plus its oriented side
//! lengths, so `[x, x+a'] x [y, y+b'] x [z, z+c']`. All six face coordinates
//! must fit in `i32`; constructors reject anything else.

use alloc::vec::Vec;
use core::fmt;

/// Side lengths `(a, b, c)` of the congruence class, as given by the user.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DimTriple([u32; 3]);

impl DimTriple {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self, GeometryError> {
        if a == 0 || b == 0 || c == 0 {
            return Err(GeometryError::ZeroLength);
        }
        if [a, b, c].iter().any(|&s| s > i32::MAX as u32) {
            return Err(GeometryError::Overflow);
        }
        Ok(DimTriple([a, b, c]))
    }

    pub fn a(&self) -> u32 {
        self.0[0]
    }

    pub fn b(&self) -> u32 {
        self.0[1]
    }

    pub fn c(&self) -> u32 {
        self.0[2]
    }

    pub fn as_array(&self) -> [u32; 3] {
        self.0
    }

    /// Entries in ascending order, for congruence checks.
    pub fn sorted(&self) -> [u32; 3] {
        let mut s = self.0;
        s.sort_unstable();
        s
    }

    /// Largest side per axis over all orientations permitted by `freedom`.
    pub fn max_extent(&self, freedom: Freedom) -> [u32; 3] {
        let mut out = [0; 3];
        for o in orientations(*self, freedom) {
            for i in 0..3 {
                out[i] = out[i].max(o[i]);
            }
        }
        out
    }
}

impl fmt::Display for DimTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{}", self.0[0], self.0[1], self.0[2])
    }
}

/// Which axis permutations of the dimension triple a configuration may use.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Freedom {
    /// Translates of `(a, b, c)` only.
    F1,
    /// `(a, b, c)` and the horizontal swap `(b, a, c)`.
    F2,
    /// All six axis permutations.
    F3,
}

impl Freedom {
    pub fn level(self) -> u8 {
        match self {
            Freedom::F1 => 1,
            Freedom::F2 => 2,
            Freedom::F3 => 3,
        }
    }

    pub fn from_level(level: u8) -> Option<Self> {
        match level {
            1 => Some(Freedom::F1),
            2 => Some(Freedom::F2),
            3 => Some(Freedom::F3),
            _ => None,
        }
    }
}

impl fmt::Display for Freedom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.level())
    }
}

/// Oriented side lengths permitted by `freedom`, duplicates removed, in the
/// fixed order `(a,b,c), (b,a,c), (a,c,b), (c,a,b), (b,c,a), (c,b,a)`.
pub fn orientations(dims: DimTriple, freedom: Freedom) -> Vec<[u32; 3]> {
    let [a, b, c] = dims.0;
    let all = [[a, b, c], [b, a, c], [a, c, b], [c, a, b], [b, c, a], [c, b, a]];
    let take = match freedom {
        Freedom::F1 => 1,
        Freedom::F2 => 2,
        Freedom::F3 => 6,
    };
    let mut out: Vec<[u32; 3]> = Vec::with_capacity(take);
    for o in &all[..take] {
        if !out.contains(o) {
            out.push(*o);
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeometryError {
    ZeroLength,
    /// A face coordinate left the `i32` range.
    Overflow,
    /// Rescaling is only defined for translate-only configurations.
    RescaleNeedsF1,
    /// Rescaling target is smaller than the source on some axis.
    RescaleShrinks {
        axis: usize,
    },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::ZeroLength => f.write_str("side lengths must be positive"),
            GeometryError::Overflow => f.write_str("coordinate outside the 32-bit signed range"),
            GeometryError::RescaleNeedsF1 => f.write_str("rescaling requires freedom class 1"),
            GeometryError::RescaleShrinks { axis } => {
                write!(f, "rescale target is smaller than the source on axis {axis}")
            }
        }
    }
}

impl core::error::Error for GeometryError {}

/// A closed integer box `[x, x+a'] x [y, y+b'] x [z, z+c']`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cuboid {
    root: [i32; 3],
    dims: [u32; 3],
}

impl Cuboid {
    pub fn new(root: [i32; 3], dims: [u32; 3]) -> Result<Self, GeometryError> {
        for i in 0..3 {
            if dims[i] == 0 {
                return Err(GeometryError::ZeroLength);
            }
            if root[i] as i64 + dims[i] as i64 > i32::MAX as i64 {
                return Err(GeometryError::Overflow);
            }
        }
        Ok(Cuboid { root, dims })
    }

    /// Builds a cuboid from two opposite corners in any order.
    pub fn from_corners(p: [i32; 3], q: [i32; 3]) -> Result<Self, GeometryError> {
        let mut root = [0; 3];
        let mut dims = [0; 3];
        for i in 0..3 {
            let (lo, hi) = if p[i] <= q[i] { (p[i], q[i]) } else { (q[i], p[i]) };
            let len = hi as i64 - lo as i64;
            if len == 0 {
                return Err(GeometryError::ZeroLength);
            }
            root[i] = lo;
            dims[i] = u32::try_from(len).map_err(|_| GeometryError::Overflow)?;
        }
        Cuboid::new(root, dims)
    }

    pub fn root(&self) -> [i32; 3] {
        self.root
    }

    pub fn dims(&self) -> [u32; 3] {
        self.dims
    }

    /// The maximal corner; fits in `i32` by construction.
    pub fn upper(&self) -> [i32; 3] {
        [0, 1, 2].map(|i| (self.root[i] as i64 + self.dims[i] as i64) as i32)
    }

    #[inline]
    fn interval(&self, axis: usize) -> (i64, i64) {
        let lo = self.root[axis] as i64;
        (lo, lo + self.dims[axis] as i64)
    }

    pub fn translated(&self, by: [i64; 3]) -> Result<Self, GeometryError> {
        let mut root = [0; 3];
        for i in 0..3 {
            root[i] = i32::try_from(self.root[i] as i64 + by[i]).map_err(|_| GeometryError::Overflow)?;
        }
        Cuboid::new(root, self.dims)
    }

    /// Closed-box membership of an integer point.
    pub fn contains_point(&self, p: [i64; 3]) -> bool {
        (0..3).all(|i| {
            let (lo, hi) = self.interval(i);
            lo <= p[i] && p[i] <= hi
        })
    }

    pub fn collides(&self, other: &Cuboid) -> bool {
        collide(self, other)
    }

    pub fn touches(&self, other: &Cuboid) -> bool {
        touch(self, other)
    }
}

impl fmt::Display for Cuboid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = self.upper();
        write!(f, "[{},{}]x[{},{}]x[{},{}]", self.root[0], u[0], self.root[1], u[1], self.root[2], u[2])
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum AxisRelation {
    /// Open intervals intersect (closed overlap of positive length).
    Overlap,
    /// Intervals share exactly one endpoint.
    Abut,
    Apart,
}

#[inline]
fn axis_relation(p: (i64, i64), q: (i64, i64)) -> AxisRelation {
    if p.0 < q.1 && q.0 < p.1 {
        AxisRelation::Overlap
    } else if p.1 == q.0 || q.1 == p.0 {
        AxisRelation::Abut
    } else {
        AxisRelation::Apart
    }
}

/// True iff the open interiors intersect.
pub fn collide(p: &Cuboid, q: &Cuboid) -> bool {
    (0..3).all(|i| axis_relation(p.interval(i), q.interval(i)) == AxisRelation::Overlap)
}

/// True iff the boxes meet in a non-degenerate rectangle: one axis abuts and
/// the other two overlap with positive length.
pub fn touch(p: &Cuboid, q: &Cuboid) -> bool {
    let mut overlap = 0;
    let mut abut = 0;
    for i in 0..3 {
        match axis_relation(p.interval(i), q.interval(i)) {
            AxisRelation::Overlap => overlap += 1,
            AxisRelation::Abut => abut += 1,
            AxisRelation::Apart => return false,
        }
    }
    overlap == 2 && abut == 1
}

/// The axis perpendicular to the shared face of two touching cuboids.
pub fn touch_axis(p: &Cuboid, q: &Cuboid) -> Option<usize> {
    if !touch(p, q) {
        return None;
    }
    (0..3).find(|&i| axis_relation(p.interval(i), q.interval(i)) == AxisRelation::Abut)
}

/// Why a configuration is not valid.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Violation {
    /// Two cuboids share interior points.
    Collision { first: usize, second: usize },
    /// A cuboid's oriented sides are not permitted by the freedom class.
    BadOrientation { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Collision { first, second } => {
                write!(f, "cuboids {first} and {second} collide")
            }
            Violation::BadOrientation { index } => {
                write!(f, "cuboid {index} has an orientation outside the freedom class")
            }
        }
    }
}

impl core::error::Error for Violation {}

/// A finite set of congruent cuboids, kept in input order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Configuration {
    pub dims: DimTriple,
    pub freedom: Freedom,
    pub cuboids: Vec<Cuboid>,
}

impl Configuration {
    pub fn new(dims: DimTriple, freedom: Freedom, cuboids: Vec<Cuboid>) -> Self {
        Configuration { dims, freedom, cuboids }
    }

    pub fn empty(dims: DimTriple, freedom: Freedom) -> Self {
        Configuration::new(dims, freedom, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.cuboids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuboids.is_empty()
    }

    /// Checks orientations, then pairwise interior disjointness. Reports the
    /// first offending index (or pair, lexicographically smallest).
    pub fn validate(&self) -> Result<(), Violation> {
        let allowed = orientations(self.dims, self.freedom);
        if let Some(index) = self.cuboids.iter().position(|c| !allowed.contains(&c.dims())) {
            return Err(Violation::BadOrientation { index });
        }
        for (i, p) in self.cuboids.iter().enumerate() {
            for (j, q) in self.cuboids.iter().enumerate().skip(i + 1) {
                if collide(p, q) {
                    return Err(Violation::Collision { first: i, second: j });
                }
            }
        }
        Ok(())
    }

    /// Copy without the cuboid at `index`.
    pub fn without(&self, index: usize) -> Configuration {
        let mut cuboids = self.cuboids.clone();
        cuboids.remove(index);
        Configuration::new(self.dims, self.freedom, cuboids)
    }
}

/// Maps a translate-only configuration over `cfg.dims` to one over `target`
/// with the same contact graph, by writing each root coordinate as
/// `q * old + r` with `0 <= r < old` and sending it to `q * new + r`.
pub fn rescale(cfg: &Configuration, target: DimTriple) -> Result<Configuration, GeometryError> {
    if cfg.freedom != Freedom::F1 {
        return Err(GeometryError::RescaleNeedsF1);
    }
    let old = cfg.dims.as_array();
    let new = target.as_array();
    if let Some(axis) = (0..3).find(|&i| new[i] < old[i]) {
        return Err(GeometryError::RescaleShrinks { axis });
    }
    let mut cuboids = Vec::with_capacity(cfg.cuboids.len());
    for c in &cfg.cuboids {
        let mut root = [0i32; 3];
        for i in 0..3 {
            let x = c.root()[i] as i64;
            let q = x.div_euclid(old[i] as i64);
            let r = x.rem_euclid(old[i] as i64);
            root[i] = i32::try_from(q * new[i] as i64 + r).map_err(|_| GeometryError::Overflow)?;
        }
        cuboids.push(Cuboid::new(root, new)?);
    }
    Ok(Configuration::new(target, Freedom::F1, cuboids))
}
