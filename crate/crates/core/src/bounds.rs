//! The free-corner neighbor bound.
//!
//! Fix a center cuboid `c0 = [0,A]×[0,B]×[0,C]`. Its admissible neighbors are
//! the cuboids of the family that touch `c0` and sit on the side of it that
//! is already built when `c0` is placed with its right face (`x = A`), front
//! face (`y = 0`) and everything above its top still open. Concretely a touching
//! cuboid with root `(x,y,z)` and oriented sides `o` is admissible iff
//!
//! ```text
//! z >= 0  and  not (z == 0 and (x == A or y + o[1] == 0))
//! ```
//!
//! The largest number of pairwise non-colliding admissible neighbors is an
//! independence number of the collision graph over the candidates. One plus
//! its maximum over center orientations bounds the chromatic number of the
//! family, since every configuration has a cuboid of at most that degree.

use alloc::vec::Vec;

use crate::geometry::{collide, orientations, touch, Cuboid, DimTriple, Freedom};
use crate::graph::ContactGraph;

/// A potential neighbor of the center.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct NeighborCandidate {
    pub cuboid: Cuboid,
}

/// Whether a cuboid rooted at `root` with sides `o`, already known to touch
/// the center with sides `center`, is on the built side of the center.
pub fn admissible(root: [i32; 3], o: [u32; 3], center: [u32; 3]) -> bool {
    let [x, y, z] = root;
    z >= 0 && !(z == 0 && (x == center[0] as i32 || y + o[1] as i32 == 0))
}

/// All admissible neighbors of the center with sides `center`, in order of
/// allowed orientation, then root (x, y, z lexicographic).
pub fn enumerate_neighbors(center: [u32; 3], dims: DimTriple, freedom: Freedom) -> Vec<NeighborCandidate> {
    enumerate_neighbors_with_margin(center, dims, freedom, 0)
}

/// As [`enumerate_neighbors`], with the root window widened by `margin` on
/// every side. Any margin gives the same list; the parameter exists so that
/// completeness can be checked.
pub fn enumerate_neighbors_with_margin(
    center: [u32; 3],
    dims: DimTriple,
    freedom: Freedom,
    margin: i32,
) -> Vec<NeighborCandidate> {
    let c0 = Cuboid::new([0, 0, 0], center).expect("center sides are positive and small");
    let mut out = Vec::new();
    for o in orientations(dims, freedom) {
        let lo = |i: usize| -(o[i] as i32) - margin;
        let hi = |i: usize| center[i] as i32 + margin;
        for x in lo(0)..=hi(0) {
            for y in lo(1)..=hi(1) {
                for z in lo(2)..=hi(2) {
                    let q = Cuboid::new([x, y, z], o).expect("window roots are small");
                    if touch(&c0, &q) && admissible([x, y, z], o, center) {
                        out.push(NeighborCandidate { cuboid: q });
                    }
                }
            }
        }
    }
    out
}

/// Graph on the candidates with an edge for every colliding pair.
pub fn collision_graph(candidates: &[NeighborCandidate]) -> ContactGraph {
    let mut g = ContactGraph::new(candidates.len());
    for (i, p) in candidates.iter().enumerate() {
        for (j, q) in candidates.iter().enumerate().skip(i + 1) {
            if collide(&p.cuboid, &q.cuboid) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Largest number of pairwise non-colliding candidates.
pub fn independence_number(candidates: &[NeighborCandidate]) -> usize {
    collision_graph(candidates).independence_number()
}

/// A maximum family of pairwise non-colliding candidates.
pub fn max_neighbor_set(candidates: &[NeighborCandidate]) -> Vec<NeighborCandidate> {
    collision_graph(candidates).max_independent_set().into_iter().map(|i| candidates[i]).collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundResult {
    pub n_value: usize,
    /// Center orientation and its independence number, for every orientation
    /// actually computed.
    pub per_orientation: Vec<([u32; 3], usize)>,
}

impl BoundResult {
    /// Upper bound on the chromatic number of the family.
    pub fn chi_upper(&self) -> usize {
        self.n_value + 1
    }
}

/// Center orientations computed by [`n_bound`]: swapping the first two sides
/// mirrors the admissible region onto itself, so of each pair `(p,q,r)`,
/// `(q,p,r)` that are both allowed only the one with `p >= q` is kept.
pub fn representative_orientations(dims: DimTriple, freedom: Freedom) -> Vec<[u32; 3]> {
    let all = orientations(dims, freedom);
    all.iter().copied().filter(|o| o[0] >= o[1] || !all.contains(&[o[1], o[0], o[2]])).collect()
}

fn bound_over(dims: DimTriple, freedom: Freedom, centers: Vec<[u32; 3]>) -> BoundResult {
    let per_orientation: Vec<([u32; 3], usize)> =
        centers.into_iter().map(|o| (o, independence_number(&enumerate_neighbors(o, dims, freedom)))).collect();
    let n_value = per_orientation.iter().map(|&(_, v)| v).max().unwrap_or(0);
    BoundResult { n_value, per_orientation }
}

/// The neighbor bound over the mirror representatives.
pub fn n_bound(dims: DimTriple, freedom: Freedom) -> BoundResult {
    bound_over(dims, freedom, representative_orientations(dims, freedom))
}

/// The neighbor bound computed for every allowed center orientation.
pub fn n_bound_all(dims: DimTriple, freedom: Freedom) -> BoundResult {
    bound_over(dims, freedom, orientations(dims, freedom))
}
