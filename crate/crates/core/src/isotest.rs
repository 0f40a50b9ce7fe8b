//! Isomorphism testing by matching sequences of partitions.

use crate::autgroup::{search_automorphisms_with, AutGroupResult, AutSearchOptions, FailureRecord};
use crate::graph::Graph;
use crate::partition::unit_partition;
use crate::perm::Permutation;
use crate::search::{Engine, SearchStats};
use crate::sequence::{generate_sequence, PartitionSequence};

/// A graph's sequence (with removed backtracking points marked) and group.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub seq: PartitionSequence,
    pub aut: AutGroupResult,
}

impl Analysis {
    pub fn remaining_backtracking_points(&self) -> usize {
        self.seq.backtracking_levels().len()
    }
}

pub fn analyze(g: &Graph) -> Analysis {
    analyze_with(g, AutSearchOptions::default())
}

pub fn analyze_with(g: &Graph, opts: AutSearchOptions) -> Analysis {
    let seq = generate_sequence(g);
    let (aut, seq) = search_automorphisms_with(g, &seq, opts);
    Analysis { seq, aut }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NonIsomorphic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetSide {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IsoStats {
    /// Rejected by vertex count, code counts or degree multisets.
    pub quick_reject: bool,
    /// Whether the second graph's sequence and group were computed.
    pub second_analyzed: bool,
    pub target: Option<TargetSide>,
    pub aut_nodes: u64,
    pub matching: SearchStats,
}

#[derive(Clone, Debug)]
pub struct IsoOutcome {
    pub verdict: Verdict,
    /// Maps the first graph onto the second.
    pub mapping: Option<Permutation>,
    pub stats: IsoStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoOptions {
    pub use_failure_memo: bool,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions { use_failure_memo: true }
    }
}

fn quick_reject(g: &Graph, h: &Graph) -> bool {
    g.n() != h.n() || g.code_counts() != h.code_counts() || g.degree_multiset() != h.degree_multiset()
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> IsoOutcome {
    are_isomorphic_with(g, h, IsoOptions::default())
}

pub fn are_isomorphic_with(g: &Graph, h: &Graph, opts: IsoOptions) -> IsoOutcome {
    let mut stats = IsoStats::default();
    if quick_reject(g, h) {
        stats.quick_reject = true;
        return IsoOutcome {
            verdict: Verdict::NonIsomorphic,
            mapping: None,
            stats,
        };
    }
    let aut_opts = AutSearchOptions {
        use_failure_memo: opts.use_failure_memo,
    };
    let ga = analyze_with(g, aut_opts);
    stats.aut_nodes = ga.aut.stats.search.nodes;

    let (mapping, matching) = if ga.remaining_backtracking_points() == 0 {
        stats.target = Some(TargetSide::First);
        match_sequences(g, &ga, h, None, opts)
    } else {
        let ha = analyze_with(h, aut_opts);
        stats.second_analyzed = true;
        stats.aut_nodes += ha.aut.stats.search.nodes;
        if ha.remaining_backtracking_points() < ga.remaining_backtracking_points() {
            stats.target = Some(TargetSide::Second);
            let (m, s) = match_sequences(h, &ha, g, Some(&ga.aut.generators), opts);
            (m.map(|m| m.inverse()), s)
        } else {
            stats.target = Some(TargetSide::First);
            match_sequences(g, &ga, h, Some(&ha.aut.generators), opts)
        }
    };
    stats.matching = matching;
    if let Some(m) = &mapping {
        assert!(g.is_isomorphism(h, m), "matcher returned a non-isomorphism");
    }
    IsoOutcome {
        verdict: if mapping.is_some() {
            Verdict::Isomorphic
        } else {
            Verdict::NonIsomorphic
        },
        mapping,
        stats,
    }
}

/// Searches `other` for a sequence compatible with the target's. Returns a
/// mapping from the target graph onto `other`.
pub fn match_sequences(
    target_graph: &Graph,
    target: &Analysis,
    other: &Graph,
    other_automorphisms: Option<&[Permutation]>,
    opts: IsoOptions,
) -> (Option<Permutation>, SearchStats) {
    if target_graph.n() != other.n() {
        return (None, SearchStats::default());
    }
    let seq = &target.seq;
    let orbit_sizes = target.aut.orbit_sizes_by_level(seq.depth());
    let mut memo = FailureRecord::new(opts.use_failure_memo);
    let autos = other_automorphisms.unwrap_or(&[]);
    let mut engine = Engine::new(seq, &orbit_sizes, other, autos, seq.depth(), &mut memo, Vec::new());
    let found = engine.run(0, unit_partition(other), None);
    let stats = engine.stats;
    let mapping = found.map(|m| {
        let map = Permutation::from_orders(&seq.vertex_order, &m.discards).expect("discard orders cover V");
        assert!(target_graph.is_isomorphism(other, &map), "compatible sequences yield an isomorphism");
        map
    });
    (mapping, stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn c6_vs_two_triangles() {
        let two_c3 = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let out = are_isomorphic(&cycle(6), &two_c3);
        assert_eq!(out.verdict, Verdict::NonIsomorphic);
        assert!(!out.stats.quick_reject);
    }

    #[test]
    fn relabelled_triangle() {
        let a = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let b = Graph::from_edges(3, [(2, 0), (0, 1), (1, 2)]).unwrap();
        let out = are_isomorphic(&a, &b);
        assert_eq!(out.verdict, Verdict::Isomorphic);
        assert!(a.is_isomorphism(&b, out.mapping.as_ref().unwrap()));
    }

    #[test]
    fn self_match() {
        let g = cycle(7);
        let a = analyze(&g);
        let (m, _) = match_sequences(&g, &a, &g, Some(&a.aut.generators), IsoOptions::default());
        assert!(g.is_automorphism(&m.unwrap()));
    }

    #[test]
    fn quick_reject_on_counts() {
        let out = are_isomorphic(&cycle(5), &cycle(6));
        assert!(out.stats.quick_reject);
        let path4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(are_isomorphic(&cycle(4), &path4).verdict, Verdict::NonIsomorphic);
    }
}
