//! Randomized greedy configuration search and criticality reduction.
//!
//! A trial seeds a few pairwise non-touching cuboids in the box `[0,M]³`,
//! then keeps adding the legal placement that looks most constraining:
//! with [`Algorithm::A1`] the one seeing the most distinct colors among its
//! would-be neighbors (recoloring exactly after every step), with
//! [`Algorithm::A2`] the one with the most would-be neighbors (computing the
//! chromatic number once at the end). Ties are drawn uniformly with a
//! ChaCha8 generator seeded from `seed + trial`, over candidates listed by
//! root (x, y, z lexicographic) and then orientation.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::chroma::{chromatic_number, k_colorable, ChromaTimeout, Coloring, Decision, SolveOptions};
use crate::geometry::{collide, orientations, touch, Configuration, Cuboid, DimTriple, Freedom};
use crate::graph::ContactGraph;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Algorithm {
    /// Score by distinct neighbor colors, recolor every step.
    #[default]
    A1,
    /// Score by neighbor count, color once at the end.
    A2,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchParams {
    pub dims: DimTriple,
    pub freedom: Freedom,
    /// Side `M` of the box `[0,M]³`.
    pub box_size: u32,
    /// Number of non-touching seed cuboids.
    pub n00: usize,
    /// Maximum number of cuboids.
    pub n0: usize,
    /// Target chromatic number.
    pub chi0: u32,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub trials: u32,
}

impl SearchParams {
    /// Defaults: three seeds, box side four times the longest side, one trial.
    pub fn new(dims: DimTriple, freedom: Freedom, chi0: u32, n0: usize) -> Self {
        let longest = dims.sorted()[2];
        SearchParams {
            dims,
            freedom,
            box_size: 4 * longest,
            n00: 3,
            n0,
            chi0,
            seed: 0,
            algorithm: Algorithm::A1,
            trials: 1,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.n00 > self.n0 {
            return Err(SearchError::InvalidParams("n00 exceeds n0"));
        }
        if self.chi0 < 2 {
            return Err(SearchError::InvalidParams("chi0 must be at least 2"));
        }
        if self.box_size > 4096 {
            return Err(SearchError::InvalidParams("box side too large"));
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchError {
    InvalidParams(&'static str),
    /// Seeding gave up after its retry budget.
    SeedFailed {
        placed: usize,
    },
    Timeout(ChromaTimeout),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::InvalidParams(why) => write!(f, "invalid search parameters: {why}"),
            SearchError::SeedFailed { placed } => {
                write!(f, "could only place {placed} non-touching seed cuboids")
            }
            SearchError::Timeout(t) => write!(f, "solver {t}"),
        }
    }
}

impl core::error::Error for SearchError {}

/// One placement.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TraceStep {
    pub trial: u32,
    pub step: usize,
    pub root: [i32; 3],
    pub orientation: [u32; 3],
    pub score: usize,
    /// Cuboid count after the placement.
    pub n: usize,
    /// Chromatic number after the placement, when computed.
    pub chi: Option<u32>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.root;
        let [a, b, c] = self.orientation;
        write!(
            f,
            "trial={} step={} root={x},{y},{z} orient={a}x{b}x{c} score={} n={}",
            self.trial, self.step, self.score, self.n
        )?;
        if let Some(chi) = self.chi {
            write!(f, " chi={chi}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchOutcome {
    pub found: bool,
    /// Critical when `found`; otherwise the final configuration of the last trial.
    pub configuration: Configuration,
    pub chi: u32,
    pub witness: Coloring,
    /// Trial that produced the outcome.
    pub trial: u32,
    pub trace: Vec<TraceStep>,
}

/// Places `n00` pairwise non-touching, non-colliding cuboids in the box by
/// rejection sampling, with up to `1000 * (n00 + 1)` draws.
pub fn seed_nontouching(
    dims: DimTriple,
    freedom: Freedom,
    box_size: u32,
    n00: usize,
    rng: &mut impl Rng,
) -> Result<Configuration, SearchError> {
    let ors: Vec<[u32; 3]> =
        orientations(dims, freedom).into_iter().filter(|o| o.iter().all(|&s| s <= box_size)).collect();
    let mut cfg = Configuration::empty(dims, freedom);
    if n00 == 0 {
        return Ok(cfg);
    }
    if ors.is_empty() {
        return Err(SearchError::SeedFailed { placed: 0 });
    }
    let mut tries = 1000 * (n00 + 1);
    while cfg.len() < n00 {
        if tries == 0 {
            return Err(SearchError::SeedFailed { placed: cfg.len() });
        }
        tries -= 1;
        let o = ors[rng.gen_range(0..ors.len())];
        let root = [0, 1, 2].map(|i| rng.gen_range(0..=box_size - o[i]) as i32);
        let c = Cuboid::new(root, o).expect("box coordinates are small");
        if cfg.cuboids.iter().all(|p| !collide(p, &c) && !touch(p, &c)) {
            cfg.cuboids.push(c);
        }
    }
    Ok(cfg)
}

/// Legal placements in the box, maintained incrementally.
struct Candidates {
    box_size: i32,
    ors: Vec<[u32; 3]>,
    cuboids: Vec<Option<Cuboid>>,
    blocked: Vec<bool>,
    /// Indices of placed cuboids each candidate would touch.
    touching: Vec<Vec<usize>>,
}

impl Candidates {
    fn new(dims: DimTriple, freedom: Freedom, box_size: u32) -> Self {
        let ors = orientations(dims, freedom);
        let side = box_size as usize + 1;
        let total = side * side * side * ors.len();
        let mut cuboids = Vec::with_capacity(total);
        for x in 0..=box_size {
            for y in 0..=box_size {
                for z in 0..=box_size {
                    for o in &ors {
                        let fits = x + o[0] <= box_size && y + o[1] <= box_size && z + o[2] <= box_size;
                        cuboids.push(fits.then(|| Cuboid::new([x as i32, y as i32, z as i32], *o).unwrap()));
                    }
                }
            }
        }
        let blocked = cuboids.iter().map(Option::is_none).collect();
        Candidates { box_size: box_size as i32, ors, cuboids, blocked, touching: vec![Vec::new(); total] }
    }

    fn index(&self, root: [i32; 3], oi: usize) -> usize {
        let side = self.box_size as usize + 1;
        ((root[0] as usize * side + root[1] as usize) * side + root[2] as usize) * self.ors.len() + oi
    }

    /// Records placed cuboid number `id`.
    fn place(&mut self, id: usize, p: &Cuboid) {
        let (r, s) = (p.root(), p.dims());
        for oi in 0..self.ors.len() {
            let o = self.ors[oi];
            let lo = |i: usize| (r[i] - o[i] as i32).max(0);
            let hi = |i: usize| (r[i] + s[i] as i32).min(self.box_size);
            for x in lo(0)..=hi(0) {
                for y in lo(1)..=hi(1) {
                    for z in lo(2)..=hi(2) {
                        let idx = self.index([x, y, z], oi);
                        if self.blocked[idx] {
                            continue;
                        }
                        let q = self.cuboids[idx].unwrap();
                        if collide(p, &q) {
                            self.blocked[idx] = true;
                        } else if touch(p, &q) {
                            self.touching[idx].push(id);
                        }
                    }
                }
            }
        }
    }
}

/// Runs up to `params.trials` trials and returns the first success, or the
/// last trial's result.
pub fn run_search(
    params: &SearchParams,
    opts: SolveOptions,
    budget: &mut dyn Budget,
) -> Result<SearchOutcome, SearchError> {
    params.validate()?;
    let mut last = None;
    for trial in 0..params.trials.max(1) {
        let outcome = run_trial(params, trial, opts, budget)?;
        if outcome.found {
            return Ok(outcome);
        }
        last = Some(outcome);
    }
    Ok(last.unwrap())
}

fn run_trial(
    params: &SearchParams,
    trial: u32,
    opts: SolveOptions,
    budget: &mut dyn Budget,
) -> Result<SearchOutcome, SearchError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed.wrapping_add(trial as u64));
    let mut cfg = seed_nontouching(params.dims, params.freedom, params.box_size, params.n00, &mut rng)?;
    let mut cands = Candidates::new(params.dims, params.freedom, params.box_size);
    for (i, c) in cfg.cuboids.iter().enumerate() {
        cands.place(i, c);
    }
    // seeds form an edgeless graph
    let mut g = ContactGraph::new(cfg.len());
    let mut coloring = Coloring(vec![1; cfg.len()]);
    let mut chi = u32::from(!cfg.is_empty());
    let mut trace = Vec::new();

    while cfg.len() < params.n0 && (params.algorithm == Algorithm::A2 || chi < params.chi0) {
        let mut best = 0;
        let mut ties: Vec<usize> = Vec::new();
        for idx in 0..cands.cuboids.len() {
            if cands.blocked[idx] {
                continue;
            }
            let score = match params.algorithm {
                Algorithm::A1 => distinct_colors(&cands.touching[idx], &coloring),
                Algorithm::A2 => cands.touching[idx].len(),
            };
            if ties.is_empty() || score > best {
                best = score;
                ties.clear();
                ties.push(idx);
            } else if score == best {
                ties.push(idx);
            }
        }
        if ties.is_empty() {
            break;
        }
        let idx = ties[rng.gen_range(0..ties.len())];
        let c = cands.cuboids[idx].unwrap();
        let neighbors = cands.touching[idx].clone();
        let id = cfg.len();
        cfg.cuboids.push(c);
        cands.place(id, &c);
        g = grow(&g, &neighbors);

        let step_chi = match params.algorithm {
            Algorithm::A1 => {
                let (new_chi, new_col) = recolor(&g, chi, &coloring, &neighbors, opts, budget)?;
                chi = new_chi;
                coloring = new_col;
                Some(chi)
            }
            Algorithm::A2 => None,
        };
        trace.push(TraceStep {
            trial,
            step: trace.len() + 1,
            root: c.root(),
            orientation: c.dims(),
            score: best,
            n: cfg.len(),
            chi: step_chi,
        });
    }

    if params.algorithm == Algorithm::A2 {
        budget.start();
        let r = chromatic_number(&g, opts, budget).map_err(SearchError::Timeout)?;
        chi = r.chi;
        coloring = r.witness;
    }

    if chi < params.chi0 {
        return Ok(SearchOutcome { found: false, configuration: cfg, chi, witness: coloring, trial, trace });
    }
    // drop the latest cuboids until the target is met exactly
    while chi > params.chi0 {
        cfg.cuboids.pop();
        let h = ContactGraph::from_cuboids(&cfg.cuboids);
        budget.start();
        let r = chromatic_number(&h, opts, budget).map_err(SearchError::Timeout)?;
        chi = r.chi;
    }
    let critical = criticality_reduce(&cfg, params.chi0, opts, budget)?;
    let h = ContactGraph::from_cuboids(&critical.cuboids);
    budget.start();
    let r = chromatic_number(&h, opts, budget).map_err(SearchError::Timeout)?;
    Ok(SearchOutcome { found: true, configuration: critical, chi: r.chi, witness: r.witness, trial, trace })
}

/// `g` plus one vertex adjacent to `neighbors`.
fn grow(g: &ContactGraph, neighbors: &[usize]) -> ContactGraph {
    let n = g.vertex_count();
    let mut h = ContactGraph::from_edges(n + 1, g.edges());
    for &u in neighbors {
        h.add_edge(u, n);
    }
    h
}

fn distinct_colors(neighbors: &[usize], coloring: &Coloring) -> usize {
    let mut cs: Vec<u32> = neighbors.iter().map(|&u| coloring.0[u]).collect();
    cs.sort_unstable();
    cs.dedup();
    cs.len()
}

/// Exact chromatic number after the last vertex of `g` was added, starting
/// from a `chi`-coloring of the others. Adding a vertex raises the chromatic
/// number by at most one, so one decision at `chi` settles it.
fn recolor(
    g: &ContactGraph,
    chi: u32,
    previous: &Coloring,
    neighbors: &[usize],
    opts: SolveOptions,
    budget: &mut dyn Budget,
) -> Result<(u32, Coloring), SearchError> {
    let mut colors = previous.0.clone();
    if let Some(free) = (1..=chi).find(|c| neighbors.iter().all(|&u| previous.0[u] != *c)) {
        colors.push(free);
        return Ok((chi, Coloring(colors)));
    }
    budget.start();
    match k_colorable(g, chi, opts, budget) {
        Decision::Colorable(c) => Ok((chi, c)),
        Decision::Uncolorable => {
            colors.push(chi + 1);
            Ok((chi + 1, Coloring(colors)))
        }
        Decision::Timeout => {
            Err(SearchError::Timeout(ChromaTimeout { lower: chi, upper: chi + 1, best: Coloring(colors) }))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ReduceError {
    /// The input's chromatic number differs from the target.
    WrongChi {
        found: u32,
        target: u32,
    },
    Timeout(ChromaTimeout),
}

impl fmt::Display for ReduceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReduceError::WrongChi { found, target } => {
                write!(f, "configuration has chromatic number {found}, expected {target}")
            }
            ReduceError::Timeout(t) => write!(f, "solver {t}"),
        }
    }
}

impl core::error::Error for ReduceError {}

impl From<ReduceError> for SearchError {
    fn from(e: ReduceError) -> Self {
        match e {
            ReduceError::Timeout(t) => SearchError::Timeout(t),
            ReduceError::WrongChi { .. } => SearchError::InvalidParams("reduction target mismatch"),
        }
    }
}

fn timeout_at(chi: u32) -> ChromaTimeout {
    ChromaTimeout { lower: chi.saturating_sub(1), upper: chi, best: Coloring::default() }
}

/// Deletes cuboids whose removal keeps the chromatic number at `chi_target`,
/// scanning in index order and restarting after every deletion, until every
/// remaining cuboid is needed.
pub fn criticality_reduce(
    cfg: &Configuration,
    chi_target: u32,
    opts: SolveOptions,
    budget: &mut dyn Budget,
) -> Result<Configuration, ReduceError> {
    let g = ContactGraph::from_cuboids(&cfg.cuboids);
    budget.start();
    let chi = chromatic_number(&g, opts, budget).map_err(ReduceError::Timeout)?.chi;
    if chi != chi_target {
        return Err(ReduceError::WrongChi { found: chi, target: chi_target });
    }
    let mut cur = cfg.clone();
    let mut g = g;
    let mut i = 0;
    while i < cur.len() {
        let h = g.without_vertex(i);
        budget.start();
        match k_colorable(&h, chi_target - 1, opts, budget) {
            Decision::Uncolorable => {
                cur = cur.without(i);
                g = h;
                i = 0;
            }
            Decision::Colorable(_) => i += 1,
            Decision::Timeout => return Err(ReduceError::Timeout(timeout_at(chi_target))),
        }
    }
    Ok(cur)
}

/// True iff deleting any single cuboid lowers the chromatic number.
pub fn is_critical(cfg: &Configuration, opts: SolveOptions, budget: &mut dyn Budget) -> Result<bool, ChromaTimeout> {
    let g = ContactGraph::from_cuboids(&cfg.cuboids);
    budget.start();
    let chi = chromatic_number(&g, opts, budget)?.chi;
    if chi == 0 {
        return Ok(true);
    }
    for v in 0..g.vertex_count() {
        budget.start();
        match k_colorable(&g.without_vertex(v), chi - 1, opts, budget) {
            Decision::Colorable(_) => {}
            Decision::Uncolorable => return Ok(false),
            Decision::Timeout => return Err(timeout_at(chi)),
        }
    }
    Ok(true)
}
