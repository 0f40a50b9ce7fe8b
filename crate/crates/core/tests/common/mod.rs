//! Deterministic graph corpora shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symseq::families::{self, component_join, random_graph};
use symseq::{AdjCode, Graph, Permutation};

pub const DENSITIES: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// Small members of every family plus random graphs of several densities,
/// directed and undirected, all with at most `max_n` vertices.
pub fn corpus(max_n: usize, randoms_per_setting: u64) -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    let mut push = |name: String, g: Graph| {
        if g.n() <= max_n {
            out.push((name, g));
        }
    };
    for n in 1..=max_n {
        push(format!("empty({n})"), Graph::empty(n).unwrap());
        push(format!("complete({n})"), families::complete(n).unwrap());
        push(format!("path({n})"), families::path(n).unwrap());
        if n >= 3 {
            push(format!("cycle({n})"), families::cycle(n).unwrap());
        }
        if n >= 2 {
            push(format!("directed_cycle({n})"), families::directed_cycle(n).unwrap());
        }
    }
    for q in [3, 7] {
        push(format!("paley_tournament({q})"), families::paley_tournament(q).unwrap());
    }
    push("paley_graph(5)".into(), families::paley_graph(5).unwrap());
    for n in [2, 3] {
        push(format!("latin_square({n})"), families::latin_square_graph(n).unwrap());
    }
    let parts: Vec<(&str, Graph)> = vec![
        ("K2", families::complete(2).unwrap()),
        ("P3", families::path(3).unwrap()),
        ("C3", families::cycle(3).unwrap()),
        ("C4", families::cycle(4).unwrap()),
        ("DC3", families::directed_cycle(3).unwrap()),
    ];
    for (name, c) in &parts {
        for m in 2..=4 {
            for code in [AdjCode::NONE, AdjCode::OUT, AdjCode::BOTH] {
                push(format!("join({name},{m},{code})"), component_join(c, m, code).unwrap());
            }
        }
    }
    for n in 2..=max_n {
        for &p in &DENSITIES {
            for directed in [false, true] {
                for seed in 0..randoms_per_setting {
                    let seed = seed * 1000 + n as u64;
                    push(
                        format!("random({n},{p},{directed},{seed})"),
                        random_graph(n, p, seed, directed).unwrap(),
                    );
                }
            }
        }
    }
    out
}

pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

pub fn relabel(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    g.apply_permutation(&random_permutation(g.n(), rng)).unwrap()
}

/// Copy of `g` with the arcs between one random pair of vertices replaced
/// by a different adjacency code.
pub fn perturb(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let n = g.n();
    let u = rng.gen_range(0..n);
    let v = (u + rng.gen_range(1..n)) % n;
    let old = g.code(u, v).value();
    let new = (old + rng.gen_range(1..4)) % 4;
    let mut arcs: Vec<(usize, usize)> = g.arcs().filter(|&(a, b)| !((a, b) == (u, v) || (a, b) == (v, u))).collect();
    if new & 2 != 0 {
        arcs.push((u, v));
    }
    if new & 1 != 0 {
        arcs.push((v, u));
    }
    Graph::from_arcs(n, arcs).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Base graphs for isomorphism pairs: random graphs with `2..=max_n`
/// vertices.
pub fn pair_bases(max_n: usize, per_setting: u64) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for &p in &DENSITIES {
            for directed in [false, true] {
                for seed in 0..per_setting {
                    out.push(random_graph(n, p, 7919 * seed + 31 * n as u64 + 1, directed).unwrap());
                }
            }
        }
    }
    out
}
