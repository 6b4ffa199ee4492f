//! A small conflict-driven clause-learning SAT solver.
//!
//! Two-watched-literal propagation, first-UIP learning with local clause
//! minimization, VSIDS branching with phase saving, Luby restarts and
//! LBD-based learnt clause reduction. There is no randomness; a given clause
//! list always produces the same search.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::budget::Budget;

/// A literal: variable index shifted left once, low bit set when negated.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Lit(u32);

impl Lit {
    pub fn positive(var: u32) -> Lit {
        Lit(var << 1)
    }

    pub fn negative(var: u32) -> Lit {
        Lit(var << 1 | 1)
    }

    pub fn var(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    fn index(self) -> usize {
        self.0 as usize
    }
}

impl core::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var() as i64 + 1;
        write!(f, "{}", if self.is_negated() { -v } else { v })
    }
}

/// A CNF formula over variables `0..num_vars`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: u32,
    pub clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    pub fn new(num_vars: u32) -> Self {
        Cnf { num_vars, clauses: Vec::new() }
    }

    pub fn add(&mut self, clause: Vec<Lit>) {
        self.clauses.push(clause);
    }

    /// DIMACS text, variables numbered from 1.
    pub fn to_dimacs(&self) -> alloc::string::String {
        let mut out = alloc::string::String::new();
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{} ", l);
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn solve(&self, budget: &mut dyn Budget) -> SatResult {
        let mut s = Solver::new(self.num_vars);
        for c in &self.clauses {
            if !s.add_clause(c) {
                return SatResult::Unsat;
            }
        }
        s.solve(budget)
    }

    /// True iff `model` satisfies every clause.
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| model[l.var() as usize] != l.is_negated()))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SatResult {
    /// A model, indexed by variable.
    Sat(Vec<bool>),
    Unsat,
    /// The budget ran out first.
    Unknown,
}

const UNDEF: i8 = 0;
const TRUE: i8 = 1;
const FALSE: i8 = -1;
const NO_REASON: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Watcher {
    clause: u32,
    blocker: Lit,
}

#[derive(Debug)]
struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    removed: bool,
    lbd: u32,
    activity: f64,
}

/// Binary max-heap of variables keyed by activity.
#[derive(Debug, Default)]
struct VarHeap {
    heap: Vec<u32>,
    position: Vec<i32>,
}

impl VarHeap {
    fn new(n: u32) -> Self {
        VarHeap { heap: Vec::with_capacity(n as usize), position: vec![-1; n as usize] }
    }

    fn contains(&self, v: u32) -> bool {
        self.position[v as usize] >= 0
    }

    fn insert(&mut self, v: u32, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.position[v as usize] = self.heap.len() as i32;
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn bumped(&mut self, v: u32, act: &[f64]) {
        if self.contains(v) {
            self.sift_up(self.position[v as usize] as usize, act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<u32> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap[0];
        let last = self.heap.pop().unwrap();
        self.position[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.position[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn better(a: u32, b: u32, act: &[f64]) -> bool {
        let (x, y) = (act[a as usize], act[b as usize]);
        x > y || (x == y && a < b)
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if !Self::better(v, self.heap[parent], act) {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.position[self.heap[i] as usize] = i as i32;
            i = parent;
        }
        self.heap[i] = v;
        self.position[v as usize] = i as i32;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let left = 2 * i + 1;
            if left >= n {
                break;
            }
            let right = left + 1;
            let child = if right < n && Self::better(self.heap[right], self.heap[left], act) { right } else { left };
            if !Self::better(self.heap[child], v, act) {
                break;
            }
            self.heap[i] = self.heap[child];
            self.position[self.heap[i] as usize] = i as i32;
            i = child;
        }
        self.heap[i] = v;
        self.position[v as usize] = i as i32;
    }
}

/// Incremental front end; clauses are added at decision level zero, then
/// [`solve`](Solver::solve) is called once.
#[derive(Debug)]
pub struct Solver {
    num_vars: u32,
    clauses: Vec<Clause>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watcher>>,
    values: Vec<i8>,
    levels: Vec<u32>,
    reasons: Vec<u32>,
    polarity: Vec<bool>,
    activity: Vec<f64>,
    var_inc: f64,
    clause_inc: f64,
    heap: VarHeap,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    seen: Vec<bool>,
    ok: bool,
    pub conflicts: u64,
    pub decisions: u64,
}

impl Solver {
    pub fn new(num_vars: u32) -> Self {
        let n = num_vars as usize;
        let mut heap = VarHeap::new(num_vars);
        let activity = vec![0.0; n];
        for v in 0..num_vars {
            heap.insert(v, &activity);
        }
        Solver {
            num_vars,
            clauses: Vec::new(),
            learnts: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            values: vec![UNDEF; n],
            levels: vec![0; n],
            reasons: vec![NO_REASON; n],
            polarity: vec![false; n],
            activity,
            var_inc: 1.0,
            clause_inc: 1.0,
            heap,
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            seen: vec![false; n],
            ok: true,
            conflicts: 0,
            decisions: 0,
        }
    }

    #[inline]
    fn value(&self, l: Lit) -> i8 {
        let v = self.values[l.var() as usize];
        if l.is_negated() {
            -v
        } else {
            v
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var() as usize;
        self.values[v] = if l.is_negated() { FALSE } else { TRUE };
        self.levels[v] = self.decision_level();
        self.reasons[v] = reason;
        self.trail.push(l);
    }

    /// Adds a clause at level zero. Returns `false` once the formula is
    /// known to be unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        debug_assert_eq!(self.decision_level(), 0);
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] == !w[1]) {
            return true;
        }
        if c.iter().any(|&l| self.value(l) == TRUE) {
            return true;
        }
        c.retain(|&l| self.value(l) != FALSE);
        match c.len() {
            0 => {
                self.ok = false;
                false
            }
            1 => {
                self.enqueue(c[0], NO_REASON);
                if self.propagate().is_some() {
                    self.ok = false;
                }
                self.ok
            }
            _ => {
                self.attach(c, false, 0);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool, lbd: u32) -> u32 {
        let idx = self.clauses.len() as u32;
        self.watches[(!lits[0]).index()].push(Watcher { clause: idx, blocker: lits[1] });
        self.watches[(!lits[1]).index()].push(Watcher { clause: idx, blocker: lits[0] });
        self.clauses.push(Clause { lits, learnt, removed: false, lbd, activity: 0.0 });
        if learnt {
            self.learnts.push(idx);
        }
        idx
    }

    /// Unit propagation; returns a conflicting clause if one arises.
    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() && conflict.is_none() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = !p;
            let mut ws = core::mem::take(&mut self.watches[p.index()]);
            let mut i = 0;
            let mut j = 0;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.clause as usize;
                if self.clauses[cref].removed {
                    continue;
                }
                {
                    let lits = &mut self.clauses[cref].lits;
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                }
                let first = self.clauses[cref].lits[0];
                let kept = Watcher { clause: w.clause, blocker: first };
                if first != w.blocker && self.value(first) == TRUE {
                    ws[j] = kept;
                    j += 1;
                    continue;
                }
                let len = self.clauses[cref].lits.len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[cref].lits[k];
                    if self.value(l) != FALSE {
                        self.clauses[cref].lits.swap(1, k);
                        self.watches[(!l).index()].push(kept);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = kept;
                j += 1;
                if self.value(first) == FALSE {
                    conflict = Some(w.clause);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, w.clause);
                }
            }
            ws.truncate(j);
            self.watches[p.index()] = ws;
        }
        conflict
    }

    fn bump_var(&mut self, v: u32) {
        self.activity[v as usize] += self.var_inc;
        if self.activity[v as usize] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v, &self.activity);
    }

    fn bump_clause(&mut self, c: u32) {
        let cl = &mut self.clauses[c as usize];
        if !cl.learnt {
            return;
        }
        cl.activity += self.clause_inc;
        if cl.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.clause_inc *= 1e-20;
        }
    }

    /// First-UIP analysis. Returns the learnt clause (asserting literal
    /// first, highest remaining level second) and the backjump level.
    fn analyze(&mut self, conflict: u32) -> (Vec<Lit>, u32) {
        let mut learnt = vec![Lit(0)];
        let mut pending = 0;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let mut cref = conflict;
        loop {
            self.bump_clause(cref);
            let start = usize::from(p.is_some());
            let len = self.clauses[cref as usize].lits.len();
            for k in start..len {
                let q = self.clauses[cref as usize].lits[k];
                let v = q.var() as usize;
                if !self.seen[v] && self.levels[v] > 0 {
                    self.bump_var(q.var());
                    self.seen[v] = true;
                    if self.levels[v] >= self.decision_level() {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var() as usize] {
                    break;
                }
            }
            let lit = self.trail[idx];
            p = Some(lit);
            cref = self.reasons[lit.var() as usize];
            self.seen[lit.var() as usize] = false;
            pending -= 1;
            if pending == 0 {
                break;
            }
        }
        learnt[0] = !p.unwrap();

        // local minimization: drop literals implied by other learnt literals
        let mut kept = vec![learnt[0]];
        for &l in &learnt[1..] {
            let reason = self.reasons[l.var() as usize];
            let redundant = reason != NO_REASON
                && self.clauses[reason as usize].lits[1..].iter().all(|q| {
                    let v = q.var() as usize;
                    self.seen[v] || self.levels[v] == 0
                });
            if !redundant {
                kept.push(l);
            }
        }
        for &l in &learnt {
            self.seen[l.var() as usize] = false;
        }
        let mut learnt = kept;

        let mut back = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.levels[learnt[i].var() as usize] > self.levels[learnt[max_i].var() as usize] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            back = self.levels[learnt[1].var() as usize];
        }
        (learnt, back)
    }

    fn lbd(&mut self, lits: &[Lit]) -> u32 {
        let mut levels: Vec<u32> = lits.iter().map(|l| self.levels[l.var() as usize]).collect();
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for i in (lim..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var() as usize;
            self.values[v] = UNDEF;
            self.reasons[v] = NO_REASON;
            self.polarity[v] = !l.is_negated();
            self.heap.insert(l.var(), &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = lim;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.values[v as usize] == UNDEF {
                return Some(if self.polarity[v as usize] { Lit::positive(v) } else { Lit::negative(v) });
            }
        }
        None
    }

    fn locked(&self, c: u32) -> bool {
        let l0 = self.clauses[c as usize].lits[0];
        self.reasons[l0.var() as usize] == c && self.value(l0) == TRUE
    }

    fn reduce_learnts(&mut self) {
        let mut order = core::mem::take(&mut self.learnts);
        order.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            cb.lbd.cmp(&ca.lbd).then(ca.activity.partial_cmp(&cb.activity).unwrap_or(core::cmp::Ordering::Equal))
        });
        let target = order.len() / 2;
        let mut removed = 0;
        let mut keep = Vec::with_capacity(order.len());
        for c in order {
            let cl = &self.clauses[c as usize];
            if removed < target && cl.lbd > 2 && cl.lits.len() > 2 && !self.locked(c) {
                let cl = &mut self.clauses[c as usize];
                cl.removed = true;
                cl.lits = Vec::new();
                removed += 1;
            } else {
                keep.push(c);
            }
        }
        self.learnts = keep;
    }

    pub fn solve(&mut self, budget: &mut dyn Budget) -> SatResult {
        if !self.ok {
            return SatResult::Unsat;
        }
        if self.propagate().is_some() {
            self.ok = false;
            return SatResult::Unsat;
        }
        let mut restart_index = 0u32;
        let mut max_learnts = (self.clauses.len() as f64 / 3.0).max(2000.0);
        let mut polls = 0u32;
        loop {
            let limit = luby(restart_index) * 100;
            restart_index += 1;
            let mut conflicts_here = 0u64;
            loop {
                polls += 1;
                if polls.is_multiple_of(256) && budget.exhausted() {
                    self.cancel_until(0);
                    return SatResult::Unknown;
                }
                if let Some(conflict) = self.propagate() {
                    self.conflicts += 1;
                    conflicts_here += 1;
                    if self.decision_level() == 0 {
                        self.ok = false;
                        return SatResult::Unsat;
                    }
                    let (learnt, back) = self.analyze(conflict);
                    self.cancel_until(back);
                    if learnt.len() == 1 {
                        self.enqueue(learnt[0], NO_REASON);
                    } else {
                        let lbd = self.lbd(&learnt);
                        let asserting = learnt[0];
                        let c = self.attach(learnt, true, lbd);
                        self.bump_clause(c);
                        self.enqueue(asserting, c);
                    }
                    self.var_inc /= 0.95;
                    self.clause_inc /= 0.999;
                } else {
                    if conflicts_here >= limit {
                        self.cancel_until(0);
                        break;
                    }
                    if self.learnts.len() as f64 >= max_learnts + self.trail.len() as f64 {
                        self.reduce_learnts();
                        max_learnts *= 1.1;
                    }
                    match self.pick_branch() {
                        None => {
                            let model = self.values.iter().map(|&v| v == TRUE).collect();
                            self.cancel_until(0);
                            return SatResult::Sat(model);
                        }
                        Some(l) => {
                            self.decisions += 1;
                            self.trail_lim.push(self.trail.len());
                            self.enqueue(l, NO_REASON);
                        }
                    }
                }
            }
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }
}

/// The Luby restart sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(mut i: u32) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i as u64 + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i as u64 {
        size = (size - 1) >> 1;
        seq -= 1;
        i %= size as u32;
    }
    1u64 << seq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::{StepBudget, Unlimited};

    fn lit(x: i32) -> Lit {
        if x > 0 {
            Lit::positive(x as u32 - 1)
        } else {
            Lit::negative((-x) as u32 - 1)
        }
    }

    fn cnf(n: u32, clauses: &[&[i32]]) -> Cnf {
        let mut f = Cnf::new(n);
        for c in clauses {
            f.add(c.iter().map(|&x| lit(x)).collect());
        }
        f
    }

    #[test]
    fn luby_prefix() {
        let seq: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn trivial_formulas() {
        assert_eq!(cnf(1, &[&[1], &[-1]]).solve(&mut Unlimited), SatResult::Unsat);
        assert_eq!(cnf(1, &[&[]]).solve(&mut Unlimited), SatResult::Unsat);
        let f = cnf(3, &[&[1, 2], &[-1, 3], &[-3]]);
        match f.solve(&mut Unlimited) {
            SatResult::Sat(m) => assert!(f.satisfied_by(&m)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Cnf::new(0).solve(&mut Unlimited), SatResult::Sat(_)));
    }

    /// Pigeonhole: n+1 pigeons, n holes.
    fn pigeonhole(n: u32) -> Cnf {
        let var = |p: u32, h: u32| p * n + h;
        let mut f = Cnf::new((n + 1) * n);
        for p in 0..=n {
            f.add((0..n).map(|h| Lit::positive(var(p, h))).collect());
        }
        for h in 0..n {
            for p in 0..=n {
                for q in p + 1..=n {
                    f.add(vec![Lit::negative(var(p, h)), Lit::negative(var(q, h))]);
                }
            }
        }
        f
    }

    #[test]
    fn pigeonhole_is_unsat() {
        for n in 1..=7 {
            assert_eq!(pigeonhole(n).solve(&mut Unlimited), SatResult::Unsat, "php {n}");
        }
    }

    #[test]
    fn budget_stops_search() {
        assert_eq!(pigeonhole(10).solve(&mut StepBudget::new(1)), SatResult::Unknown);
    }

    #[test]
    fn dimacs_text() {
        let f = cnf(2, &[&[1, -2], &[2]]);
        assert_eq!(f.to_dimacs(), "p cnf 2 2\n1 -2 0\n2 0\n");
    }
}
