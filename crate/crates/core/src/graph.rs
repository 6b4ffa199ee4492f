//! Contact graphs and clique search.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::clique::CliqueSearch;
use crate::geometry::{touch, Configuration, Cuboid, Violation};

/// Simple undirected graph on `0..n`, stored both as sorted adjacency lists
/// and as bitset rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContactGraph {
    adjacency: Vec<Vec<usize>>,
    rows: Vec<BitSet>,
}

impl ContactGraph {
    pub fn new(n: usize) -> Self {
        ContactGraph { adjacency: vec![Vec::new(); n], rows: vec![BitSet::new(n); n] }
    }

    /// Builds a graph from an edge list. Self-loops and repeats are ignored.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = ContactGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Contact graph of a valid configuration, one vertex per cuboid in
    /// input order. Uses the plain pairwise scan.
    pub fn from_configuration(cfg: &Configuration) -> Result<Self, Violation> {
        cfg.validate()?;
        Ok(Self::from_cuboids(&cfg.cuboids))
    }

    /// Contact graph of an arbitrary cuboid list, no validation.
    pub fn from_cuboids(cuboids: &[Cuboid]) -> Self {
        let mut g = ContactGraph::new(cuboids.len());
        for (i, p) in cuboids.iter().enumerate() {
            for (j, q) in cuboids.iter().enumerate().skip(i + 1) {
                if touch(p, q) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Same edge set as [`from_cuboids`](Self::from_cuboids), computed with a
    /// sweep along the x axis so only pairs whose x-extents meet are tested.
    pub fn from_cuboids_sweep(cuboids: &[Cuboid]) -> Self {
        let mut order: Vec<usize> = (0..cuboids.len()).collect();
        order.sort_by_key(|&i| cuboids[i].root()[0]);
        let mut g = ContactGraph::new(cuboids.len());
        for (pos, &i) in order.iter().enumerate() {
            let hi = cuboids[i].upper()[0];
            for &j in &order[pos + 1..] {
                if cuboids[j].root()[0] > hi {
                    break;
                }
                if touch(&cuboids[i], &cuboids[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v || self.rows[u].contains(v) {
            return;
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        let pos = self.adjacency[u].binary_search(&v).unwrap_err();
        self.adjacency[u].insert(pos, v);
        let pos = self.adjacency[v].binary_search(&u).unwrap_err();
        self.adjacency[v].insert(pos, u);
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn row(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, adj)| adj.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn complement(&self) -> ContactGraph {
        let n = self.vertex_count();
        let mut g = ContactGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> ContactGraph {
        let mut g = ContactGraph::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// The graph with vertex `v` deleted; later vertices shift down by one.
    pub fn without_vertex(&self, v: usize) -> ContactGraph {
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Maximum clique, exact (branch and bound with greedy-coloring bounds).
    pub fn max_clique(&self) -> Vec<usize> {
        CliqueSearch::new(self.vertex_count(), |v| self.adjacency[v].clone()).run()
    }

    /// Size of a maximum clique; zero for the empty graph.
    pub fn clique_number(&self) -> usize {
        self.max_clique().len()
    }

    /// Maximum independent set, via a maximum clique of the complement.
    pub fn max_independent_set(&self) -> Vec<usize> {
        self.complement().max_clique()
    }

    pub fn independence_number(&self) -> usize {
        self.max_independent_set().len()
    }
}

/// A point common to all the given closed boxes, or `None` when some pair is
/// disjoint. The witness is the componentwise maximum of the lower corners.
pub fn common_point(boxes: &[Cuboid]) -> Option<[i64; 3]> {
    let mut lower = [i64::MIN; 3];
    let mut upper = [i64::MAX; 3];
    for b in boxes {
        for i in 0..3 {
            lower[i] = lower[i].max(b.root()[i] as i64);
            upper[i] = upper[i].min(b.upper()[i] as i64);
        }
    }
    if boxes.is_empty() || (0..3).any(|i| lower[i] > upper[i]) {
        return None;
    }
    Some(lower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{DimTriple, Freedom};

    fn cub(lo: [i32; 3], hi: [i32; 3]) -> Cuboid {
        Cuboid::from_corners(lo, hi).unwrap()
    }

    #[test]
    fn tiny_graphs() {
        let d = DimTriple::new(1, 1, 1).unwrap();
        let one = Configuration::new(d, Freedom::F1, vec![cub([0, 0, 0], [1, 1, 1])]);
        let g = ContactGraph::from_configuration(&one).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        assert_eq!(g.clique_number(), 1);

        let two = Configuration::new(d, Freedom::F1, vec![cub([0, 0, 0], [1, 1, 1]), cub([0, 1, 0], [1, 2, 1])]);
        let g = ContactGraph::from_configuration(&two).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn invalid_configuration_is_rejected() {
        let d = DimTriple::new(1, 1, 1).unwrap();
        let cfg = Configuration::new(d, Freedom::F1, vec![cub([0, 0, 0], [1, 1, 1]); 2]);
        assert_eq!(ContactGraph::from_configuration(&cfg), Err(Violation::Collision { first: 0, second: 1 }));
    }

    #[test]
    fn clique_of_complete_and_cycle() {
        let k5 = ContactGraph::from_edges(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))));
        assert_eq!(k5.clique_number(), 5);
        assert_eq!(k5.independence_number(), 1);
        let c5 = ContactGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        assert_eq!(c5.clique_number(), 2);
        assert_eq!(c5.independence_number(), 2);
        assert_eq!(ContactGraph::new(0).clique_number(), 0);
        assert_eq!(ContactGraph::new(4).independence_number(), 4);
    }

    #[test]
    fn common_point_examples() {
        let boxes = [cub([0, 0, 0], [2, 2, 2]), cub([1, 1, 1], [3, 3, 3]), cub([1, 0, 0], [2, 2, 3])];
        assert_eq!(common_point(&boxes), Some([1, 1, 1]));
        assert_eq!(common_point(&[cub([0, 0, 0], [1, 1, 1]), cub([5, 5, 5], [6, 6, 6])]), None);
        assert_eq!(common_point(&[]), None);
    }

    #[test]
    fn without_vertex_relabels() {
        let g = ContactGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        let h = g.without_vertex(1);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }
}
