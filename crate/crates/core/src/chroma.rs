//! Graph coloring: verification, k-colorability and chromatic numbers.
//!
//! Colors are 1-based throughout. Two exact engines are available: a direct
//! SAT encoding handed to the built-in CDCL solver, and a DSATUR branch and
//! bound. Both can pre-assign a maximum clique to colors `1..=ω`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::budget::Budget;
use crate::graph::ContactGraph;
use crate::sat::{Cnf, Lit, SatResult};

/// A vertex coloring, `colors[v]` in `1..=k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Coloring(pub Vec<u32>);

impl Coloring {
    pub fn colors(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest color used, zero when empty.
    pub fn max_color(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Number of distinct colors used.
    pub fn distinct(&self) -> usize {
        let mut c = self.0.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Relabels so that colors appear as `1, 2, ...` in vertex order.
    pub fn normalized(&self) -> Coloring {
        let mut map: Vec<(u32, u32)> = Vec::new();
        let mut out = Vec::with_capacity(self.0.len());
        for &c in &self.0 {
            let new = match map.iter().find(|(old, _)| *old == c) {
                Some(&(_, n)) => n,
                None => {
                    let n = map.len() as u32 + 1;
                    map.push((c, n));
                    n
                }
            };
            out.push(new);
        }
        Coloring(out)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ColoringError {
    LengthMismatch { expected: usize, found: usize },
    ZeroColor { vertex: usize },
    Monochromatic { u: usize, v: usize, color: u32 },
}

impl fmt::Display for ColoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringError::LengthMismatch { expected, found } => {
                write!(f, "coloring has {found} entries, graph has {expected} vertices")
            }
            ColoringError::ZeroColor { vertex } => write!(f, "vertex {vertex} has color 0"),
            ColoringError::Monochromatic { u, v, color } => {
                write!(f, "vertices {u} and {v} touch and share color {color}")
            }
        }
    }
}

impl core::error::Error for ColoringError {}

/// Checks that `coloring` is proper on `g`. Reports the lexicographically
/// first offending edge.
pub fn verify_coloring(g: &ContactGraph, coloring: &Coloring) -> Result<(), ColoringError> {
    if coloring.len() != g.vertex_count() {
        return Err(ColoringError::LengthMismatch { expected: g.vertex_count(), found: coloring.len() });
    }
    if let Some(vertex) = coloring.0.iter().position(|&c| c == 0) {
        return Err(ColoringError::ZeroColor { vertex });
    }
    for (u, v) in g.edges() {
        if coloring.0[u] == coloring.0[v] {
            return Err(ColoringError::Monochromatic { u, v, color: coloring.0[u] });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Engine {
    #[default]
    Sat,
    Dsatur,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SolveOptions {
    pub engine: Engine,
    /// Pre-assign a maximum clique to colors `1..=ω`.
    pub symmetry_breaking: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { engine: Engine::Sat, symmetry_breaking: true }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Decision {
    Colorable(Coloring),
    Uncolorable,
    Timeout,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChromaResult {
    pub chi: u32,
    /// A proper coloring using exactly `chi` colors.
    pub witness: Coloring,
    /// The maximum clique used as lower bound.
    pub clique: Vec<usize>,
}

/// Returned when a `k` decision in the sweep ran out of budget. Carries the
/// bounds known at that point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChromaTimeout {
    pub lower: u32,
    pub upper: u32,
    pub best: Coloring,
}

impl fmt::Display for ChromaTimeout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "timed out with {} <= chi <= {}", self.lower, self.upper)
    }
}

impl core::error::Error for ChromaTimeout {}

/// Direct encoding: variable `v*k + (i-1)` means "vertex v has color i".
/// One at-least-one clause per vertex and one binary clause per edge and
/// color; at-most-one is left out since any true color is usable.
/// `fixed` lists vertices forced to a given color.
pub fn coloring_cnf(g: &ContactGraph, k: u32, fixed: &[(usize, u32)]) -> Cnf {
    let n = g.vertex_count();
    let var = |v: usize, c: u32| (v as u32) * k + (c - 1);
    let mut f = Cnf::new(n as u32 * k);
    for v in 0..n {
        f.add((1..=k).map(|c| Lit::positive(var(v, c))).collect());
    }
    for (u, v) in g.edges() {
        for c in 1..=k {
            f.add(vec![Lit::negative(var(u, c)), Lit::negative(var(v, c))]);
        }
    }
    for &(v, c) in fixed {
        f.add(vec![Lit::positive(var(v, c))]);
    }
    f
}

/// Decodes a model of [`coloring_cnf`], giving each vertex its lowest true color.
pub fn decode_model(n: usize, k: u32, model: &[bool]) -> Coloring {
    Coloring((0..n).map(|v| (1..=k).find(|&c| model[v * k as usize + (c - 1) as usize]).unwrap_or(0)).collect())
}

/// Decides whether `g` has a proper `k`-coloring.
pub fn k_colorable(g: &ContactGraph, k: u32, opts: SolveOptions, budget: &mut dyn Budget) -> Decision {
    let clique = if opts.symmetry_breaking { g.max_clique() } else { Vec::new() };
    decide(g, k, opts, &clique, budget)
}

fn decide(g: &ContactGraph, k: u32, opts: SolveOptions, clique: &[usize], budget: &mut dyn Budget) -> Decision {
    let n = g.vertex_count();
    if n == 0 {
        return Decision::Colorable(Coloring::default());
    }
    if k == 0 {
        return Decision::Uncolorable;
    }
    let fixed: Vec<(usize, u32)> = if opts.symmetry_breaking {
        if clique.len() as u32 > k {
            return Decision::Uncolorable;
        }
        clique.iter().enumerate().map(|(i, &v)| (v, i as u32 + 1)).collect()
    } else {
        Vec::new()
    };
    let decision = match opts.engine {
        Engine::Sat => match coloring_cnf(g, k, &fixed).solve(budget) {
            SatResult::Sat(model) => Decision::Colorable(decode_model(n, k, &model)),
            SatResult::Unsat => Decision::Uncolorable,
            SatResult::Unknown => Decision::Timeout,
        },
        Engine::Dsatur => Dsatur::new(g, k, budget).run(&fixed),
    };
    if let Decision::Colorable(c) = &decision {
        debug_assert_eq!(verify_coloring(g, c), Ok(()));
    }
    decision
}

/// DSATUR greedy coloring: repeatedly colors the vertex with the most
/// distinct neighbor colors (ties: higher degree, then lower index) with the
/// smallest free color. Gives an upper bound on the chromatic number.
pub fn greedy_bound(g: &ContactGraph) -> Coloring {
    let n = g.vertex_count();
    let mut colors = vec![0u32; n];
    let mut neighbor_colors: Vec<Vec<u32>> = vec![Vec::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == 0)
            .max_by(|&a, &b| {
                neighbor_colors[a]
                    .len()
                    .cmp(&neighbor_colors[b].len())
                    .then(g.degree(a).cmp(&g.degree(b)))
                    .then(b.cmp(&a))
            })
            .unwrap();
        let c = (1..).find(|c| !neighbor_colors[v].contains(c)).unwrap();
        colors[v] = c;
        for &w in g.neighbors(v) {
            if !neighbor_colors[w].contains(&c) {
                neighbor_colors[w].push(c);
            }
        }
    }
    Coloring(colors)
}

/// Exact chromatic number. Starts from the DSATUR greedy bound and lowers
/// `k` until the graph is not `k`-colorable or `k` reaches the clique size.
pub fn chromatic_number(
    g: &ContactGraph,
    opts: SolveOptions,
    budget: &mut dyn Budget,
) -> Result<ChromaResult, ChromaTimeout> {
    let clique = g.max_clique();
    let mut best = greedy_bound(g);
    let lower = clique.len() as u32;
    loop {
        let upper = best.max_color();
        if upper <= lower {
            break;
        }
        budget.start();
        let sb_clique: &[usize] = if opts.symmetry_breaking { &clique } else { &[] };
        match decide(g, upper - 1, opts, sb_clique, budget) {
            Decision::Colorable(c) => best = c,
            Decision::Uncolorable => break,
            Decision::Timeout => return Err(ChromaTimeout { lower, upper, best }),
        }
    }
    Ok(ChromaResult { chi: best.max_color(), witness: best, clique })
}

/// Exact DSATUR branch and bound for a fixed `k`.
struct Dsatur<'a> {
    g: &'a ContactGraph,
    k: u32,
    colors: Vec<u32>,
    /// `counts[v*k + c-1]`: neighbors of v with color c.
    counts: Vec<u32>,
    saturation: Vec<u32>,
    budget: &'a mut dyn Budget,
    nodes: u64,
    timed_out: bool,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a ContactGraph, k: u32, budget: &'a mut dyn Budget) -> Self {
        let n = g.vertex_count();
        Dsatur {
            g,
            k,
            colors: vec![0; n],
            counts: vec![0; n * k as usize],
            saturation: vec![0; n],
            budget,
            nodes: 0,
            timed_out: false,
        }
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.colors[v] = c;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.k as usize + (c - 1) as usize];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = 0;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.k as usize + (c - 1) as usize];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn run(mut self, fixed: &[(usize, u32)]) -> Decision {
        for &(v, c) in fixed {
            if self.counts[v * self.k as usize + (c - 1) as usize] > 0 {
                return Decision::Uncolorable;
            }
            self.assign(v, c);
        }
        let used = fixed.iter().map(|&(_, c)| c).max().unwrap_or(0);
        let remaining = self.colors.iter().filter(|&&c| c == 0).count();
        if self.search(remaining, used) {
            Decision::Colorable(Coloring(self.colors))
        } else if self.timed_out {
            Decision::Timeout
        } else {
            Decision::Uncolorable
        }
    }

    fn search(&mut self, remaining: usize, used: u32) -> bool {
        if remaining == 0 {
            return true;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && self.budget.exhausted() {
            self.timed_out = true;
            return false;
        }
        let n = self.g.vertex_count();
        let mut v = usize::MAX;
        for u in 0..n {
            if self.colors[u] != 0 {
                continue;
            }
            if v == usize::MAX
                || self.saturation[u] > self.saturation[v]
                || (self.saturation[u] == self.saturation[v] && self.g.degree(u) > self.g.degree(v))
            {
                v = u;
            }
        }
        if self.saturation[v] >= self.k {
            return false;
        }
        // colors above `used` are interchangeable, so only the first is tried
        let top = (used + 1).min(self.k);
        for c in 1..=top {
            if self.counts[v * self.k as usize + (c - 1) as usize] > 0 {
                continue;
            }
            self.assign(v, c);
            if self.search(remaining - 1, used.max(c)) {
                return true;
            }
            self.unassign(v);
            if self.timed_out {
                return false;
            }
        }
        false
    }
}
