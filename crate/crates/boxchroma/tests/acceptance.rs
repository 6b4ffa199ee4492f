//! Acceptance run: one line per criterion.
//!
//! The slow exact-χ tier runs only with `--ignored` (or
//! `--include-ignored`):
//! `cargo test -p boxchroma --test acceptance -- --ignored`.
//!
//! Criteria that fail for a documented reason in the data are listed in
//! `KNOWN`; they print FAIL but do not fail the run. Any other failure, or a
//! known failure that starts passing, makes the process exit non-zero.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use boxchroma::{fixture, ConfigDocument, TimeBudget, FIXTURES};
use boxchroma_core::bounds::n_bound;
use boxchroma_core::chroma::verify_coloring;
use boxchroma_core::geometry::{collide, rescale, touch};
use boxchroma_core::periodic::{
    fixture_coloring, formula_coloring, perco, verify_periodic, Fixture, Formula, PercoResult, PeriodicColoring,
};
use boxchroma_core::search::{is_critical, run_search, Algorithm, SearchParams};
use boxchroma_core::{
    chromatic_number, Budget, Coloring, ContactGraph, Cuboid, DimTriple, Freedom, SolveOptions, Unlimited,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// Criteria expected to fail, with the reason.
const KNOWN: &[(u32, &str)] = &[
    (1, "the 311/1/4 listing uses two orientations, which its translation-only title forbids"),
    (2, "the 311/1/4 listing is identical to 311/2/5 and has chromatic number 5"),
];

type Criterion = (u32, &'static str, fn() -> Report);

struct Report {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Report {
    Report { passed: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Report {
    Report { passed: false, detail: detail.into() }
}

fn d(a: u32, b: u32, c: u32) -> DimTriple {
    DimTriple::new(a, b, c).unwrap()
}

fn chi_of(doc: &ConfigDocument, budget: &mut dyn Budget) -> Result<u32, String> {
    let g = ContactGraph::from_cuboids(&doc.configuration().cuboids);
    chromatic_number(&g, SolveOptions::default(), budget).map(|r| r.chi).map_err(|t| t.to_string())
}

fn exact_chi(cases: &[(&str, u32)], limit: Duration) -> Report {
    let mut wrong = Vec::new();
    for &(label, expected) in cases {
        let doc = fixture(label).unwrap().document();
        match chi_of(&doc, &mut TimeBudget::new(Some(limit))) {
            Ok(chi) if chi == expected => {}
            Ok(chi) => wrong.push(format!("{label}: {chi} (expected {expected})")),
            Err(t) => wrong.push(format!("{label}: {t}")),
        }
    }
    if wrong.is_empty() {
        pass(format!("{} fixtures", cases.len()))
    } else {
        fail(wrong.join("; "))
    }
}

fn criterion1() -> Report {
    let mut problems = Vec::new();
    for f in &FIXTURES {
        let meta = f.document();
        let parsed = boxchroma::parse_appendix(f.appendix, meta.dims, meta.freedom);
        let doc = match parsed {
            Ok((doc, _)) => doc,
            Err(e) => {
                problems.push(format!("{}: {e}", f.label));
                continue;
            }
        };
        match doc.validate() {
            Ok(cfg) => {
                let g = ContactGraph::from_cuboids(&cfg.cuboids);
                if let Err(e) = verify_coloring(&g, &doc.coloring().unwrap()) {
                    problems.push(format!("{}: {e}", f.label));
                }
            }
            Err(v) => problems.push(format!("{}: {v}", f.label)),
        }
    }
    if problems.is_empty() {
        pass("17 listings parse, validate and carry proper colorings")
    } else {
        fail(problems.join("; "))
    }
}

fn criterion2() -> Report {
    let cases =
        [("821", 6), ("311-1", 4), ("221", 5), ("611", 6), ("421", 6), ("421alt", 6), ("411-2", 5), ("311-2", 5)];
    exact_chi(&cases, Duration::from_secs(60))
}

fn criterion3() -> Report {
    let cases =
        [("521", 6), ("511", 6), ("222", 6), ("431", 6), ("211", 5), ("212", 6), ("312", 6), ("412", 6), ("411-3", 6)];
    exact_chi(&cases, Duration::from_secs(30 * 60))
}

fn criterion4() -> Report {
    let mut problems = Vec::new();
    for (label, chi) in [("221", 5), ("421", 6)] {
        let cfg = fixture(label).unwrap().document().configuration();
        let g = ContactGraph::from_cuboids(&cfg.cuboids);
        for v in 0..g.vertex_count() {
            let h = g.without_vertex(v);
            let r = chromatic_number(&h, SolveOptions::default(), &mut Unlimited).unwrap();
            if r.chi != chi - 1 {
                problems.push(format!("{label} without {v}: {}", r.chi));
            }
        }
    }
    if problems.is_empty() {
        pass("11 + 23 deletions each drop χ by one")
    } else {
        fail(problems.join("; "))
    }
}

fn criterion5() -> Report {
    let cases: [([u32; 3], Freedom, usize); 13] = [
        ([1, 1, 2], Freedom::F2, 5),
        ([1, 2, 2], Freedom::F2, 8),
        ([1, 3, 2], Freedom::F2, 11),
        ([2, 2, 2], Freedom::F2, 7),
        ([2, 3, 2], Freedom::F2, 9),
        ([3, 3, 2], Freedom::F2, 7),
        ([1, 1, 1], Freedom::F3, 3),
        ([2, 1, 1], Freedom::F3, 7),
        ([2, 2, 1], Freedom::F3, 11),
        ([3, 2, 1], Freedom::F3, 16),
        ([2, 2, 2], Freedom::F3, 7),
        ([3, 2, 2], Freedom::F3, 10),
        ([3, 3, 3], Freedom::F3, 7),
    ];
    let wrong: Vec<String> = cases
        .iter()
        .filter_map(|&([a, b, c], f, want)| {
            let got = n_bound(d(a, b, c), f).n_value;
            (got != want).then(|| format!("n{}([{a},{b},{c}]) = {got}, expected {want}", f.level()))
        })
        .collect();
    if wrong.is_empty() {
        pass("13 table entries")
    } else {
        fail(wrong.join("; "))
    }
}

fn criterion6() -> Report {
    let mut cases: Vec<(String, Result<PeriodicColoring, String>, u32)> = Vec::new();
    let mut formula = |label: &str, f: Formula, dims: DimTriple, k: u32| {
        cases.push((label.into(), formula_coloring(f, dims).map_err(|e| e.to_string()), k));
    };
    formula("checkerboard", Formula::Checkerboard2, d(1, 1, 1), 2);
    for a in [3, 4, 7] {
        formula(&format!("stripes4 a={a}"), Formula::Stripes4, d(a, 1, 1), 4);
    }
    formula("octant8 222", Formula::Octant8F1, d(2, 2, 2), 8);
    formula("octant8 321", Formula::Octant8F1, d(3, 2, 1), 8);
    formula("oddxy8 332", Formula::OddXy8F2, d(3, 3, 2), 8);
    formula("allodd8 311", Formula::AllOdd8F3, d(3, 1, 1), 8);
    let fixtures = [
        ("b", Fixture::B2x1x1, 3),
        ("d", Fixture::D2x2x1, 5),
        ("e a=2", Fixture::E(2), 6),
        ("e a=5", Fixture::E(5), 6),
        ("f a=3", Fixture::F(3), 7),
        ("f a=6", Fixture::F(6), 7),
        ("g a=4", Fixture::G(4), 7),
        ("g a=7", Fixture::G(7), 7),
        ("chi2 domino", Fixture::Chi2Domino, 5),
        ("chi3 knight", Fixture::Chi3Knight, 6),
    ];
    for (label, f, k) in fixtures {
        cases.push((label.into(), fixture_coloring(f).map_err(|e| e.to_string()), k));
    }
    let mut problems = Vec::new();
    for (label, pc, k) in &cases {
        match pc {
            Err(e) => problems.push(format!("{label}: {e}")),
            Ok(pc) if pc.k != *k => problems.push(format!("{label}: {} colors", pc.k)),
            Ok(pc) => {
                if let Err(c) = verify_periodic(pc) {
                    problems.push(format!("{label}: {c}"));
                }
            }
        }
    }
    if let Ok(pc) = fixture_coloring(Fixture::B2x1x1) {
        if pc.period != [6, 2, 2] {
            problems.push(format!("b: period {:?}", pc.period));
        }
    }
    if let Ok(pc) = fixture_coloring(Fixture::Chi3Knight) {
        if pc.period != [12, 12, 12] {
            problems.push(format!("chi3: period {:?}", pc.period));
        }
    }
    if problems.is_empty() {
        pass(format!("{} colorings", cases.len()))
    } else {
        fail(problems.join("; "))
    }
}

fn criterion7() -> Report {
    let cases: [(DimTriple, Freedom, [u32; 3], Option<u32>); 5] = [
        (d(1, 1, 1), Freedom::F1, [2, 2, 2], Some(2)),
        (d(2, 1, 1), Freedom::F1, [6, 2, 2], Some(3)),
        (d(2, 2, 1), Freedom::F1, [10, 10, 2], Some(5)),
        (d(2, 1, 1), Freedom::F2, [10, 10, 2], Some(5)),
        (d(2, 1, 1), Freedom::F1, [1, 1, 1], None),
    ];
    let mut problems = Vec::new();
    for (dims, f, period, want) in cases {
        let mut budget = TimeBudget::new(Some(Duration::from_secs(600)));
        match perco(dims, f, period, 8, SolveOptions::default(), &mut budget) {
            Ok(PercoResult::Finite(k, pc)) if want == Some(k) && verify_periodic(&pc).is_ok() => {}
            Ok(PercoResult::Infinite) if want.is_none() => {}
            other => problems.push(format!("{dims} {f} {period:?}: {other:?}")),
        }
    }
    if problems.is_empty() {
        pass("2, 3, 5, 5 and ∞")
    } else {
        fail(problems.join("; "))
    }
}

fn measure_oracle(p: &Cuboid, q: &Cuboid) -> (bool, bool) {
    let lengths: Vec<i64> =
        (0..3).map(|i| p.upper()[i].min(q.upper()[i]) as i64 - p.root()[i].max(q.root()[i]) as i64).collect();
    if lengths.iter().any(|&l| l < 0) {
        return (false, false);
    }
    let zeros = lengths.iter().filter(|&&l| l == 0).count();
    (zeros == 1, zeros == 0)
}

fn criterion8() -> Report {
    let mut problems = Vec::new();
    let all_dims = [d(1, 1, 1), d(2, 1, 1), d(2, 2, 1), d(3, 2, 1), d(2, 2, 2), d(4, 3, 2), d(3, 1, 2)];
    let freedoms = [Freedom::F1, Freedom::F2, Freedom::F3];

    let mut worst = 0;
    for i in 0..1000u64 {
        let cfg = common::random_configuration(all_dims[i as usize % 7], freedoms[i as usize % 3], 20, i);
        worst = worst.max(ContactGraph::from_cuboids(&cfg.cuboids).clique_number());
    }
    if worst > 4 {
        problems.push(format!("clique of size {worst}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let random_cuboid = |rng: &mut ChaCha8Rng| {
        let root = [0; 3].map(|_| rng.gen_range(-4..4));
        let dims = [0; 3].map(|_| rng.gen_range(1..4));
        Cuboid::new(root, dims).unwrap()
    };
    for _ in 0..10_000 {
        let (p, q) = (random_cuboid(&mut rng), random_cuboid(&mut rng));
        if (touch(&p, &q), collide(&p, &q)) != measure_oracle(&p, &q) || touch(&p, &q) != touch(&q, &p) {
            problems.push(format!("touch disagrees on {p} {q}"));
            break;
        }
    }

    for i in 0..200u64 {
        let from = all_dims[i as usize % 7];
        let [a, b, c] = from.as_array();
        let to = d(a + (i % 3) as u32, b + (i % 2) as u32, c + 1);
        let cfg = common::random_configuration(from, Freedom::F1, 20, 1000 + i);
        let out = rescale(&cfg, to).unwrap();
        let before: Vec<_> = ContactGraph::from_cuboids(&cfg.cuboids).edges().collect();
        let after: Vec<_> = ContactGraph::from_cuboids(&out.cuboids).edges().collect();
        if before != after || out.validate().is_err() {
            problems.push(format!("rescale {from} -> {to} changed seed {i}"));
            break;
        }
    }

    for i in 0..100u64 {
        let g = common::random_graph(1 + (i % 9) as usize, 0.2 + 0.6 * (i % 5) as f64 / 4.0, 2000 + i);
        let chi = chromatic_number(&g, SolveOptions::default(), &mut Unlimited).unwrap().chi;
        if chi != common::brute_force_chi(&g) {
            problems.push(format!("chromatic number wrong on graph {i}"));
            break;
        }
    }

    let periodic = [
        fixture_coloring(Fixture::D2x2x1).unwrap(),
        fixture_coloring(Fixture::Chi2Domino).unwrap(),
        fixture_coloring(Fixture::Chi3Knight).unwrap(),
        formula_coloring(Formula::AllOdd8F3, d(3, 1, 1)).unwrap(),
    ];
    for i in 0..200u64 {
        let pc = &periodic[i as usize % periodic.len()];
        let cfg = common::random_configuration(pc.dims, pc.freedom, 30, 3000 + i);
        let colors = Coloring(cfg.cuboids.iter().map(|c| pc.color_of(c).unwrap()).collect());
        if verify_coloring(&ContactGraph::from_cuboids(&cfg.cuboids), &colors).is_err() {
            problems.push(format!("inherited coloring improper, seed {i}"));
            break;
        }
    }

    if problems.is_empty() {
        pass("cliques, touch oracle, rescale, χ oracle, inherited colorings")
    } else {
        fail(problems.join("; "))
    }
}

fn criterion9() -> Report {
    let mut p = SearchParams::new(d(2, 2, 1), Freedom::F1, 5, 60);
    p.algorithm = Algorithm::A2;
    p.box_size = 12;
    p.trials = 200;
    p.seed = 0;
    let opts = SolveOptions::default();
    let out = match run_search(&p, opts, &mut TimeBudget::new(Some(Duration::from_secs(60)))) {
        Ok(out) => out,
        Err(e) => return fail(format!("search error: {e}")),
    };
    let trace = |out: &boxchroma_core::search::SearchOutcome| -> String {
        out.trace.iter().map(|s| format!("{s}\n")).collect()
    };
    // rerun the reported trial on its own
    let mut again = p;
    again.seed = p.seed + out.trial as u64;
    again.trials = 1;
    let rerun = run_search(&again, opts, &mut Unlimited).unwrap();
    let same = trace(&out).replace(&format!("trial={} ", out.trial), "trial=0 ") == trace(&rerun);
    if !same {
        return fail(format!("trial {} did not reproduce its trace", out.trial));
    }
    if !out.found {
        return pass("no χ=5 configuration in 200 trials (logged, not a failure); traces reproduce");
    }
    let cfg = &out.configuration;
    let chi = chromatic_number(&ContactGraph::from_cuboids(&cfg.cuboids), opts, &mut Unlimited).unwrap().chi;
    let critical = is_critical(cfg, opts, &mut Unlimited).unwrap();
    if cfg.validate().is_ok() && chi == 5 && critical {
        pass(format!(
            "trial {} found a critical χ=5 configuration of {} cuboids; trace reproduces",
            out.trial,
            cfg.len()
        ))
    } else {
        fail(format!("found configuration: valid={} χ={chi} critical={critical}", cfg.validate().is_ok()))
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        // test-runner discovery
        println!("acceptance: test");
        return;
    }
    let slow = args.iter().any(|a| a == "--ignored" || a == "--include-ignored");
    let criteria: [Criterion; 9] = [
        (1, "appendix regression", criterion1),
        (2, "exact χ, small fixtures", criterion2),
        (3, "exact χ, slow tier", criterion3),
        (4, "criticality of 221 and 421", criterion4),
        (5, "neighbor bound tables", criterion5),
        (6, "periodic colorings", criterion6),
        (7, "perco exactness", criterion7),
        (8, "property suites", criterion8),
        (9, "search smoke", criterion9),
    ];
    let mut unexpected = 0;
    for (n, name, run) in criteria {
        if n == 3 && !slow {
            println!("criterion 3 ({name}): SKIP (opt-in, pass --ignored)");
            continue;
        }
        let start = Instant::now();
        let r = run();
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN.iter().find(|k| k.0 == n);
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {n} ({name}): {verdict} in {secs:.2}s: {}", r.detail);
        match (r.passed, known) {
            (false, Some((_, why))) => println!("  known: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => {
                println!("  listed as a known failure but passed");
                unexpected += 1;
            }
            (true, None) => {}
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria did not behave as recorded");
        std::process::exit(1);
    }
}
