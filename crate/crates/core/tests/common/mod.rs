#![allow(dead_code)]

use boxchroma_core::geometry::{collide, orientations};
use boxchroma_core::{Configuration, ContactGraph, Cuboid, DimTriple, Freedom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A valid configuration of up to `n` cuboids, drawn by rejection inside a
/// box a few sides wide so that contacts are frequent.
pub fn random_configuration(dims: DimTriple, freedom: Freedom, n: usize, seed: u64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ors = orientations(dims, freedom);
    let side = 2 * dims.sorted()[2] as i32 + 2;
    let mut cuboids: Vec<Cuboid> = Vec::new();
    for _ in 0..40 * n {
        if cuboids.len() == n {
            break;
        }
        let o = ors[rng.gen_range(0..ors.len())];
        let root = [0, 1, 2].map(|_| rng.gen_range(-side..=side));
        let c = Cuboid::new(root, o).unwrap();
        if cuboids.iter().all(|p| !collide(p, &c)) {
            cuboids.push(c);
        }
    }
    Configuration::new(dims, freedom, cuboids)
}

/// Uniform random graph on `n` vertices with edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> ContactGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = ContactGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Chromatic number by trying every assignment with k colors, k = 0, 1, ...
pub fn brute_force_chi(g: &ContactGraph) -> u32 {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for k in 1..=n as u32 {
        let mut colors = vec![0u32; n];
        loop {
            if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                return k;
            }
            let mut i = 0;
            while i < n {
                colors[i] += 1;
                if colors[i] < k {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    n as u32
}

/// Size of a largest clique by checking every subset.
pub fn brute_force_clique(g: &ContactGraph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|u| s >> u & 1 == 0 || (u + 1..n).all(|v| s >> v & 1 == 0 || g.has_edge(u, v))))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest independent set by exhaustive extension of independent sets.
pub fn brute_force_independence(g: &ContactGraph) -> usize {
    fn go(g: &ContactGraph, next: usize, chosen: &mut Vec<usize>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for v in next..g.vertex_count() {
            if chosen.iter().all(|&u| !g.has_edge(u, v)) {
                chosen.push(v);
                go(g, v + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    go(g, 0, &mut Vec::new(), &mut best);
    best
}
