mod common;

use boxchroma_core::search::{
    criticality_reduce, is_critical, run_search, seed_nontouching, Algorithm, ReduceError, SearchError, SearchParams,
};
use boxchroma_core::{chromatic_number, ContactGraph, Cuboid, DimTriple, Freedom, SolveOptions, StepBudget, Unlimited};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn d(a: u32, b: u32, c: u32) -> DimTriple {
    DimTriple::new(a, b, c).unwrap()
}

fn chi(cfg: &boxchroma_core::Configuration) -> u32 {
    let g = ContactGraph::from_configuration(cfg).unwrap();
    chromatic_number(&g, SolveOptions::default(), &mut Unlimited).unwrap().chi
}

fn trace_text(p: &SearchParams) -> String {
    let out = run_search(p, SolveOptions::default(), &mut Unlimited).unwrap();
    out.trace.iter().map(|s| format!("{s}\n")).collect()
}

#[test]
fn seeding() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    assert!(seed_nontouching(d(2, 2, 1), Freedom::F1, 20, 0, &mut rng).unwrap().is_empty());
    for n in [2, 5] {
        let cfg = seed_nontouching(d(2, 2, 1), Freedom::F1, 20, n, &mut rng).unwrap();
        assert_eq!(cfg.len(), n);
        assert_eq!(cfg.validate(), Ok(()));
        assert_eq!(ContactGraph::from_configuration(&cfg).unwrap().edge_count(), 0);
        assert!(cfg.cuboids.iter().all(|c| c.upper().iter().all(|&u| u <= 20)));
    }
    assert!(matches!(seed_nontouching(d(2, 2, 1), Freedom::F1, 3, 5, &mut rng), Err(SearchError::SeedFailed { .. })));
}

#[test]
fn parameters_are_checked() {
    let mut p = SearchParams::new(d(2, 1, 1), Freedom::F1, 3, 10);
    p.n00 = 11;
    assert!(p.validate().is_err());
    let mut p = SearchParams::new(d(2, 1, 1), Freedom::F1, 1, 10);
    assert!(run_search(&p, SolveOptions::default(), &mut Unlimited).is_err());
    p.chi0 = 2;
    assert_eq!(p.validate(), Ok(()));
}

#[test]
fn single_cuboid_search() {
    let mut p = SearchParams::new(d(2, 1, 1), Freedom::F1, 2, 1);
    p.n00 = 1;
    let out = run_search(&p, SolveOptions::default(), &mut Unlimited).unwrap();
    assert!(!out.found);
    assert_eq!(out.configuration.len(), 1);
    assert_eq!(out.chi, 1);
    assert!(out.trace.is_empty());
}

#[test]
fn a1_trace_is_monotone_and_reproducible() {
    for seed in 0..4 {
        let mut p = SearchParams::new(d(2, 1, 1), Freedom::F2, 4, 40);
        p.seed = seed;
        p.box_size = 8;
        let out = run_search(&p, SolveOptions::default(), &mut Unlimited).unwrap();
        assert_eq!(out.configuration.validate(), Ok(()));
        let chis: Vec<u32> = out.trace.iter().map(|s| s.chi.unwrap()).collect();
        for w in chis.windows(2) {
            assert!(w[1] >= w[0] && w[1] <= w[0] + 1, "{chis:?}");
        }
        for (i, s) in out.trace.iter().enumerate() {
            assert_eq!(s.step, i + 1);
            assert!(s.root.iter().zip(s.orientation).all(|(&r, o)| r >= 0 && r as u32 + o <= 8));
        }
        if out.found {
            assert_eq!(chi(&out.configuration), 4);
            assert_eq!(out.chi, 4);
            assert!(is_critical(&out.configuration, SolveOptions::default(), &mut Unlimited).unwrap());
        }
        assert_eq!(trace_text(&p), trace_text(&p));
    }
}

#[test]
fn a2_colors_once() {
    let mut p = SearchParams::new(d(2, 2, 1), Freedom::F1, 4, 25);
    p.algorithm = Algorithm::A2;
    p.box_size = 8;
    p.seed = 3;
    let out = run_search(&p, SolveOptions::default(), &mut Unlimited).unwrap();
    assert!(out.trace.iter().all(|s| s.chi.is_none()));
    if out.found {
        assert_eq!(chi(&out.configuration), 4);
        assert!(is_critical(&out.configuration, SolveOptions::default(), &mut Unlimited).unwrap());
    } else {
        assert!(out.chi < 4);
    }
}

#[test]
fn tiny_budget_reports_cleanly() {
    let mut p = SearchParams::new(d(8, 2, 1), Freedom::F2, 7, 12);
    p.box_size = 16;
    match run_search(&p, SolveOptions::default(), &mut StepBudget::new(50)) {
        Ok(out) => assert!(!out.found || chi(&out.configuration) == 7),
        Err(SearchError::Timeout(_)) => {}
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn reduction_to_critical() {
    let mut p = SearchParams::new(d(2, 1, 1), Freedom::F2, 4, 60);
    p.box_size = 8;
    p.algorithm = Algorithm::A2;
    p.n0 = 30;
    let opts = SolveOptions::default();
    let mut reduced = 0;
    for seed in 0..20 {
        p.seed = seed;
        let mut out = run_search(&p, opts, &mut Unlimited).unwrap();
        if !out.found {
            continue;
        }
        // the critical result is a fixed point
        let again = criticality_reduce(&out.configuration, 4, opts, &mut Unlimited).unwrap();
        assert_eq!(again, out.configuration);

        // a far-away isolated cuboid is dropped
        let n = out.configuration.len();
        out.configuration.cuboids.push(Cuboid::new([100, 100, 100], [2, 1, 1]).unwrap());
        let back = criticality_reduce(&out.configuration, 4, opts, &mut Unlimited).unwrap();
        assert_eq!(back.len(), n);
        assert!(back.cuboids.iter().all(|c| c.root() != [100, 100, 100]));
        reduced += 1;
    }
    assert!(reduced > 0, "no seed reached chi 4");
}

#[test]
fn reduction_of_random_configurations() {
    let opts = SolveOptions::default();
    let mut checked = 0;
    for seed in 0..200 {
        let cfg = common::random_configuration(d(2, 1, 1), Freedom::F2, 30, seed);
        let k = chi(&cfg);
        if k < 3 {
            continue;
        }
        let out = criticality_reduce(&cfg, k, opts, &mut Unlimited).unwrap();
        assert_eq!(chi(&out), k);
        for i in 0..out.len() {
            assert_eq!(chi(&out.without(i)), k - 1);
        }
        assert!(out.cuboids.iter().all(|c| cfg.cuboids.contains(c)));
        checked += 1;
        if checked == 10 {
            break;
        }
    }
    assert!(checked > 0);
    let cfg = common::random_configuration(d(2, 1, 1), Freedom::F2, 10, 1);
    let k = chi(&cfg);
    assert_eq!(
        criticality_reduce(&cfg, k + 1, opts, &mut Unlimited),
        Err(ReduceError::WrongChi { found: k, target: k + 1 })
    );
}

#[test]
fn trace_lines_render() {
    let mut p = SearchParams::new(d(2, 1, 1), Freedom::F1, 3, 6);
    p.box_size = 6;
    let text = trace_text(&p);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("trial=0 step=1 root="), "{first}");
    assert!(first.contains(" chi="));
}
