//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use symseq::autgroup::{orbits, AutSearchOptions, GeneratorSource};
use symseq::families::{self, component_join, random_graph};
use symseq::isotest::{analyze, analyze_with, are_isomorphic, are_isomorphic_with, IsoOptions, Verdict};
use symseq::oracle::{brute_force_aut, brute_force_iso};
use symseq::{AdjCode, Graph};
use symseq_cli::{aut_report, iso_report, render_aut, render_iso, OutputOptions};

/// Counts generators inferred from truncated replays, across all criteria.
#[derive(Default)]
struct Truncated {
    checked: u64,
    unsound: u64,
}

impl Truncated {
    fn record(&mut self, g: &Graph, aut: &symseq::autgroup::AutGroupResult) {
        for (p, src) in aut.generators.iter().zip(&aut.sources) {
            if matches!(src, GeneratorSource::Replay { truncated: true, .. }) {
                self.checked += 1;
                if !g.is_automorphism(p) {
                    self.unsound += 1;
                }
            }
        }
    }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn automorphism_corpus() -> Vec<(String, Graph)> {
    common::corpus(9, 6)
}

/// (first, second) pairs with at most 8 vertices: an independent random
/// graph, a relabelled copy and a perturbed relabelled copy per base.
fn iso_corpus() -> Vec<(Graph, Graph)> {
    let mut rng = common::rng(2024);
    let mut pairs = Vec::new();
    for n in 2..=8 {
        for &p in &common::DENSITIES {
            for directed in [false, true] {
                for seed in 0..3u64 {
                    let s = 7919 * seed + 31 * n as u64 + if directed { 1 } else { 0 };
                    let g = random_graph(n, p, s, directed).unwrap();
                    let other = random_graph(n, p, s + 100_003, directed).unwrap();
                    let copy = common::relabel(&g, &mut rng);
                    let perturbed = common::perturb(&copy, &mut rng);
                    pairs.push((g.clone(), other));
                    pairs.push((g.clone(), copy));
                    pairs.push((g, perturbed));
                }
            }
        }
    }
    pairs
}

fn criterion_1(t: &mut Truncated) -> Check {
    let corpus = automorphism_corpus();
    ensure(corpus.len() >= 500, || format!("corpus has only {} graphs", corpus.len()))?;
    let mut gens = 0;
    for (name, g) in &corpus {
        let a = analyze(g);
        t.record(g, &a.aut);
        let oracle = brute_force_aut(g).map_err(|e| format!("{name}: {e}"))?;
        ensure(a.aut.order == oracle.order, || format!("{name}: order {} vs oracle {}", a.aut.order, oracle.order))?;
        let got = orbits(&a.aut);
        ensure(got == oracle.orbits, || format!("{name}: orbits {got:?} vs oracle {:?}", oracle.orbits))?;
        for p in &a.aut.generators {
            ensure(g.is_automorphism(p), || format!("{name}: generator {p} is not an automorphism"))?;
        }
        gens += a.aut.generators.len();
    }
    Ok(format!("{} graphs, {gens} generators checked", corpus.len()))
}

fn criterion_2(t: &mut Truncated) -> Check {
    let pairs = iso_corpus();
    ensure(pairs.len() >= 500, || format!("only {} pairs", pairs.len()))?;
    let mut iso = 0;
    for (i, (g, h)) in pairs.iter().enumerate() {
        let out = are_isomorphic(g, h);
        let expected = brute_force_iso(g, h).map_err(|e| e.to_string())?;
        ensure((out.verdict == Verdict::Isomorphic) == expected.is_some(), || {
            format!("pair {i}: verdict {:?}, oracle {}", out.verdict, expected.is_some())
        })?;
        if let Some(m) = &out.mapping {
            iso += 1;
            ensure(&g.apply_permutation(m).unwrap() == h, || format!("pair {i}: mapping does not carry G onto H"))?;
        }
        for x in [g, h] {
            t.record(x, &analyze(x).aut);
        }
    }
    Ok(format!("{} pairs, {iso} isomorphic", pairs.len()))
}

fn criterion_3(t: &mut Truncated) -> Check {
    let c5 = families::cycle(5).unwrap();
    let mut details = Vec::new();
    for code in [AdjCode::NONE, AdjCode::BOTH] {
        let g = component_join(&c5, 2, code).unwrap();
        let a = analyze(&g);
        t.record(&g, &a.aut);
        let oracle = brute_force_aut(&g).map_err(|e| e.to_string())?;
        ensure(oracle.order == BigUint::from(200u32), || format!("oracle order {}", oracle.order))?;
        ensure(a.aut.order == oracle.order, || format!("join code {code}: order {}", a.aut.order))?;
        ensure(a.aut.stats.truncated_generators >= 1, || format!("join code {code}: no truncated generator"))?;
        details.push(format!("code {code}: {} truncated", a.aut.stats.truncated_generators));
    }
    ensure(t.unsound == 0, || format!("{} of {} truncated generators unsound", t.unsound, t.checked))?;
    Ok(format!("{} truncated generators sound; {}", t.checked, details.join(", ")))
}

fn criterion_4() -> Check {
    let cases: Vec<(&str, Graph, u32)> = vec![
        ("paley_tournament(3)", families::paley_tournament(3).unwrap(), 3),
        ("paley_tournament(7)", families::paley_tournament(7).unwrap(), 21),
        ("K4", families::complete(4).unwrap(), 24),
        ("Petersen", families::petersen(), 120),
        ("P3", families::path(3).unwrap(), 2),
    ];
    let mut seen = Vec::new();
    for (name, g, expected) in cases {
        let oracle = brute_force_aut(&g).map_err(|e| e.to_string())?.order;
        ensure(oracle == BigUint::from(expected), || format!("{name}: oracle gives {oracle}"))?;
        let got = analyze(&g).aut.order;
        ensure(got == oracle, || format!("{name}: {got} vs {oracle}"))?;
        seen.push(format!("{name}={got}"));
    }
    Ok(seen.join(" "))
}

fn criterion_5() -> Check {
    let mut rng = common::rng(5);
    let mut rigid = 0;
    for (name, g) in automorphism_corpus() {
        if g.n() < 2 || brute_force_aut(&g).unwrap().order != BigUint::from(1u32) {
            continue;
        }
        rigid += 1;
        let h = common::relabel(&g, &mut rng);
        let out = are_isomorphic(&g, &h);
        ensure(out.verdict == Verdict::Isomorphic, || format!("{name}: not matched to its copy"))?;
        ensure(out.stats.matching.backtracks == 0, || {
            format!("{name}: {} backtracks while matching", out.stats.matching.backtracks)
        })?;
    }
    ensure(rigid >= 50, || format!("only {rigid} rigid graphs"))?;
    Ok(format!("{rigid} rigid graphs matched without backtracking"))
}

fn criterion_6() -> Check {
    let off = AutSearchOptions { use_failure_memo: false };
    let corpus = automorphism_corpus();
    for (name, g) in &corpus {
        let on = analyze(g).aut.order;
        let without = analyze_with(g, off).aut.order;
        ensure(on == without, || format!("{name}: order {on} with memo, {without} without"))?;
    }
    let pairs = iso_corpus();
    for (i, (g, h)) in pairs.iter().enumerate() {
        let a = are_isomorphic(g, h).verdict;
        let b = are_isomorphic_with(g, h, IsoOptions { use_failure_memo: false }).verdict;
        ensure(a == b, || format!("pair {i}: {a:?} with memo, {b:?} without"))?;
    }
    Ok(format!("{} orders and {} verdicts unchanged", corpus.len(), pairs.len()))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn criterion_7() -> Check {
    let g = families::paley_tournament(19).unwrap();
    let (a, t1) = timed(|| analyze(&g));
    ensure(t1 < Duration::from_secs(5), || format!("paley_tournament(19) took {t1:?}"))?;
    ensure(&a.aut.order % 19u32 == BigUint::from(0u32), || format!("order {} not a multiple of 19", a.aut.order))?;

    let join = component_join(&families::paley_graph(13).unwrap(), 4, AdjCode::BOTH).unwrap();
    let mut rng = common::rng(7);
    let copy = common::relabel(&join, &mut rng);
    let ((b, iso), t2) = timed(|| (analyze(&join), are_isomorphic(&join, &copy)));
    ensure(t2 < Duration::from_secs(30), || format!("52-vertex join took {t2:?}"))?;
    ensure(&b.aut.order % 24u32 == BigUint::from(0u32), || format!("order {} not divisible by 24", b.aut.order))?;
    ensure(iso.verdict == Verdict::Isomorphic, || "join not matched to its relabelled copy".into())?;
    Ok(format!(
        "paley_tournament(19): order {} in {t1:.2?}; 4 x paley(13) join: order {} in {t2:.2?}",
        a.aut.order, b.aut.order
    ))
}

fn criterion_8() -> Check {
    let json = OutputOptions { json: true, ..Default::default() };
    let inputs: Vec<Graph> = vec![
        families::paley_tournament(7).unwrap(),
        families::petersen(),
        component_join(&families::cycle(5).unwrap(), 2, AdjCode::NONE).unwrap(),
        random_graph(9, 0.4, 11, true).unwrap(),
        families::latin_square_graph(3).unwrap(),
    ];
    let mut reports = 0;
    for g in &inputs {
        let runs: Vec<String> = (0..3).map(|_| render_aut(&aut_report(g, false).unwrap(), true)).collect();
        ensure(runs.iter().all(|r| r == &runs[0]), || "aut JSON differs between runs".into())?;
        let mut rng = common::rng(8);
        let h = common::relabel(g, &mut rng);
        let runs: Vec<String> = (0..3).map(|_| render_iso(&iso_report(g, &h, false).unwrap(), json)).collect();
        ensure(runs.iter().all(|r| r == &runs[0]), || "iso JSON differs between runs".into())?;
        reports += 2;
    }
    Ok(format!("{reports} reports byte-identical over 3 runs"))
}

fn main() -> ExitCode {
    let mut truncated = Truncated::default();
    let mut results: Vec<(u8, &str, Check)> = Vec::new();
    let mut run = |id: u8, title: &'static str, f: &mut dyn FnMut() -> Check| {
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let (tag, detail) = match &res {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {id} {tag}: {title}: {detail}");
        results.push((id, title, res));
    };
    run(1, "automorphism oracle equivalence", &mut || criterion_1(&mut truncated));
    run(2, "isomorphism oracle equivalence", &mut || criterion_2(&mut truncated));
    run(3, "truncated generator soundness", &mut || criterion_3(&mut truncated));
    run(4, "known group orders", &mut criterion_4);
    run(5, "rigid graphs match without backtracking", &mut criterion_5);
    run(6, "failure memo neutrality", &mut criterion_6);
    run(7, "scaling smoke checks", &mut criterion_7);
    run(8, "deterministic JSON reports", &mut criterion_8);
    if results.iter().all(|(_, _, r)| r.is_ok()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
