//! Exact maximum clique on bitset adjacency.
//!
//! Vertices are relabelled by a degeneracy order and candidates are colored
//! greedily at every node, only vertices whose color could still beat the
//! incumbent are branched on, and a vertex landing in such a color class is
//! first offered a swap into a lower class (the usual re-numbering step).

use alloc::vec;
use alloc::vec::Vec;

type Words = Vec<u64>;

#[cfg(test)]
fn test(s: &[u64], i: usize) -> bool {
    s[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
fn set(s: &mut [u64], i: usize) {
    s[i >> 6] |= 1 << (i & 63);
}

#[inline]
fn clear(s: &mut [u64], i: usize) {
    s[i >> 6] &= !(1 << (i & 63));
}

fn first(s: &[u64]) -> Option<usize> {
    s.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn is_empty(s: &[u64]) -> bool {
    s.iter().all(|&w| w == 0)
}

#[cfg(test)]
fn count(s: &[u64]) -> usize {
    s.iter().map(|w| w.count_ones() as usize).sum()
}

/// Number of set bits of `a & b`, stopping once it exceeds `limit`.
fn common_up_to(a: &[u64], b: &[u64], limit: usize) -> usize {
    let mut n = 0;
    for (x, y) in a.iter().zip(b) {
        n += (x & y).count_ones() as usize;
        if n > limit {
            break;
        }
    }
    n
}

pub(crate) struct CliqueSearch {
    n: usize,
    words: usize,
    /// Adjacency rows in relabelled indices.
    rows: Vec<Words>,
    /// `label[i]` is the original vertex of relabelled index `i`.
    label: Vec<usize>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl CliqueSearch {
    /// `neighbors(v)` must describe a simple undirected graph.
    pub(crate) fn new(n: usize, neighbors: impl Fn(usize) -> Vec<usize>) -> Self {
        let lists: Vec<Vec<usize>> = (0..n).map(&neighbors).collect();
        let label = degeneracy_order(&lists);
        let mut position = vec![0; n];
        for (i, &v) in label.iter().enumerate() {
            position[v] = i;
        }
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; n];
        for (v, adj) in lists.iter().enumerate() {
            for &u in adj {
                set(&mut rows[position[v]], position[u]);
            }
        }
        CliqueSearch { n, words, rows, label, best: Vec::new(), current: Vec::new() }
    }

    pub(crate) fn run(mut self) -> Vec<usize> {
        if self.n == 0 {
            return Vec::new();
        }
        // greedy start in the chosen order
        let mut p = vec![!0u64; self.words];
        for i in self.n..self.words * 64 {
            clear(&mut p, i);
        }
        let mut cand = p.clone();
        let mut greedy = Vec::new();
        while let Some(v) = first(&cand) {
            greedy.push(v);
            for (c, r) in cand.iter_mut().zip(&self.rows[v]) {
                *c &= r;
            }
        }
        self.best = greedy;
        self.expand(p);
        let mut out: Vec<usize> = self.best.iter().map(|&i| self.label[i]).collect();
        out.sort_unstable();
        out
    }

    /// Greedy coloring of `p`. Returns the vertices whose color is at least
    /// `kmin`, with their colors, in non-decreasing color order.
    fn color(&self, p: &[u64], kmin: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut uncolored = p.to_vec();
        let mut classes: Vec<Words> = Vec::new();
        let mut k = 0;
        while !is_empty(&uncolored) {
            k += 1;
            let mut q = uncolored.clone();
            let mut class = vec![0u64; self.words];
            while let Some(v) = first(&q) {
                clear(&mut q, v);
                clear(&mut uncolored, v);
                if k >= kmin && kmin >= 2 && self.renumber(v, kmin, &mut classes) {
                    continue;
                }
                for (x, r) in q.iter_mut().zip(&self.rows[v]) {
                    *x &= !r;
                }
                set(&mut class, v);
                if k >= kmin {
                    out.push((v, k));
                }
            }
            classes.push(class);
        }
        out
    }

    /// Tries to move `v` into a class `i < kmin - 1` where it has exactly one
    /// neighbor `w`, which in turn moves to a later class `j < kmin - 1` free
    /// of its neighbors.
    fn renumber(&self, v: usize, kmin: usize, classes: &mut [Words]) -> bool {
        let limit = (kmin - 1).min(classes.len());
        let row_v = &self.rows[v];
        for i in 0..limit {
            if common_up_to(row_v, &classes[i], 1) != 1 {
                continue;
            }
            let w = (0..self.words)
                .find_map(|k| {
                    let x = row_v[k] & classes[i][k];
                    (x != 0).then(|| k * 64 + x.trailing_zeros() as usize)
                })
                .unwrap();
            let row_w = &self.rows[w];
            for j in i + 1..limit {
                if common_up_to(row_w, &classes[j], 0) == 0 {
                    clear(&mut classes[i], w);
                    set(&mut classes[i], v);
                    set(&mut classes[j], w);
                    return true;
                }
            }
        }
        false
    }

    fn expand(&mut self, mut p: Words) {
        let kmin = (self.best.len() + 1).saturating_sub(self.current.len()).max(1);
        let ordered = self.color(&p, kmin);
        for &(v, k) in ordered.iter().rev() {
            if self.current.len() + k <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next: Words = p.iter().zip(&self.rows[v]).map(|(a, b)| a & b).collect();
            if is_empty(&next) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            clear(&mut p, v);
        }
    }
}

/// Vertices ordered so that each has the largest degree among those not yet
/// taken into the tail: repeatedly remove a minimum-degree vertex and put it
/// last.
fn degeneracy_order(lists: &[Vec<usize>]) -> Vec<usize> {
    let n = lists.len();
    let mut degree: Vec<usize> = lists.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut order = vec![0; n];
    for slot in (0..n).rev() {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (degree[v], v)).unwrap();
        removed[v] = true;
        order[slot] = v;
        for &u in &lists[v] {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    order
}
