//! Automorphism group search over the backtracking levels of a sequence of
//! partitions.
//!
//! Levels are visited from the last to the first. At level `k` every vertex
//! `q` of the pivot cell that is not yet known to be equivalent to the pivot
//! vertex `p` is tried in its place. The alternative sequence only has to be
//! followed up to the sub-partition link `l` of `k`: once it is compatible
//! there, the generator is completed with [`compute_subpartition_mapping`]
//! instead of by generating levels `l+1..t`.
//!
//! The generators found at levels `>= k`, plus the permutations of twin
//! vertices discarded together as disconnected, generate the stabilizer of
//! the pivots before `k`. The group order is the product of the pivot orbit
//! sizes times the sizes of those twin groups' symmetric groups.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::One;

use crate::graph::Graph;
use crate::partition::DiscardReason;
use crate::perm::Permutation;
use crate::search::{Engine, SearchStats};
use crate::sequence::PartitionSequence;

/// Disjoint-set forest over vertices.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Merges the classes of `a` and `b`; the smaller root becomes the root.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn merge_permutation(&mut self, p: &Permutation) {
        for v in 0..p.len() {
            self.union(v, p.apply(v));
        }
    }

    /// Classes as sorted vertex lists, ordered by smallest member.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = self.find(v);
            by_root.entry(r).or_default().push(v);
        }
        by_root.into_values().collect()
    }
}

/// Memo of `(level, pivot prefix, candidate)` triples known to fail.
#[derive(Clone, Debug, Default)]
pub struct FailureRecord {
    enabled: bool,
    entries: HashSet<(usize, Vec<usize>, usize)>,
}

impl FailureRecord {
    pub fn new(enabled: bool) -> Self {
        FailureRecord {
            enabled,
            entries: HashSet::new(),
        }
    }

    pub fn disabled() -> Self {
        Self::new(false)
    }

    pub fn contains(&self, level: usize, prefix: &[usize], candidate: usize) -> bool {
        self.enabled && self.entries.contains(&(level, prefix.to_vec(), candidate))
    }

    pub fn insert(&mut self, level: usize, prefix: &[usize], candidate: usize) {
        if self.enabled {
            self.entries.insert((level, prefix.to_vec(), candidate));
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The vertex sets relating an original sequence and a compatible
/// alternative between levels `k` and `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubpartitionContext {
    pub k: usize,
    pub l: usize,
    /// Original discards between `k` and `l`, in order.
    pub e: Vec<usize>,
    /// Alternative discards between `k` and `l`, in order.
    pub e_alt: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
    /// Original order of the vertices surviving at level `l`.
    pub v_order: Vec<usize>,
    /// Vertices surviving at level `l` in the alternative.
    pub w_set: Vec<usize>,
}

impl SubpartitionContext {
    /// `v_order` must list the vertices of level `l` of the original
    /// sequence; `e` and `e_alt` the two discard lists.
    pub fn new(k: usize, l: usize, e: Vec<usize>, e_alt: Vec<usize>, v_order: Vec<usize>) -> Self {
        assert_eq!(e.len(), e_alt.len(), "compatible sequences discard equally many vertices");
        let in_e: HashSet<usize> = e.iter().copied().collect();
        let in_e_alt: HashSet<usize> = e_alt.iter().copied().collect();
        let a: Vec<usize> = e.iter().copied().filter(|v| in_e_alt.contains(v)).collect();
        let b: Vec<usize> = e.iter().copied().filter(|v| !in_e_alt.contains(v)).collect();
        let c: Vec<usize> = e_alt.iter().copied().filter(|v| !in_e.contains(v)).collect();
        let d: Vec<usize> = v_order.iter().copied().filter(|v| !in_e_alt.contains(v)).collect();
        let w_set: Vec<usize> = d.iter().chain(&b).copied().collect();
        SubpartitionContext {
            k,
            l,
            e,
            e_alt,
            a,
            b,
            c,
            d,
            v_order,
            w_set,
        }
    }
}

/// Orders the vertices of the alternative level `l` so that `v_i -> w_i`
/// extends the discard mapping `e_i -> e'_i`.
///
/// Starting from the original order, each vertex of `C` is replaced by the
/// vertex of `B` found by walking back from its position in `E'` through
/// vertices of `A`.
pub fn compute_subpartition_mapping(ctx: &SubpartitionContext) -> Vec<usize> {
    let n = ctx
        .e
        .iter()
        .chain(&ctx.e_alt)
        .chain(&ctx.v_order)
        .max()
        .map_or(0, |&m| m + 1);
    let mut in_a = vec![false; n];
    for &v in &ctx.a {
        in_a[v] = true;
    }
    let mut in_c = vec![false; n];
    for &v in &ctx.c {
        in_c[v] = true;
    }
    let mut alt_index = vec![usize::MAX; n];
    for (i, &v) in ctx.e_alt.iter().enumerate() {
        alt_index[v] = i;
    }
    let mut w = ctx.v_order.clone();
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in w.iter().enumerate() {
        slot[v] = i;
    }
    for (i, &target) in ctx.e_alt.iter().enumerate() {
        if !in_c[target] {
            continue;
        }
        let mut j = i;
        let mut steps = 0;
        while in_a[ctx.e[j]] {
            j = alt_index[ctx.e[j]];
            steps += 1;
            assert!(steps <= ctx.e.len(), "chain through A does not terminate");
        }
        let pos = slot[target];
        assert!(pos != usize::MAX, "vertex of C missing from the level-l order");
        w[pos] = ctx.e[j];
    }
    w
}

/// Builds the automorphism defined by a compatible alternative from level
/// `k` to level `l`: identity on vertices discarded before `k`, `e_i -> e'_i`
/// and `v_i -> w_i`.
///
/// Panics if the result is not an automorphism of `g`.
pub fn infer_generator(g: &Graph, seq: &PartitionSequence, k: usize, l: usize, alt_discards: &[usize]) -> Permutation {
    let ctx = SubpartitionContext::new(
        k,
        l,
        seq.discarded_between(k, l).to_vec(),
        alt_discards.to_vec(),
        seq.vertex_order[seq.offsets[l]..].to_vec(),
    );
    let w = compute_subpartition_mapping(&ctx);
    let mut image = vec![usize::MAX; g.n()];
    for &x in &seq.vertex_order[..seq.offsets[k]] {
        image[x] = x;
    }
    for (&e, &ea) in ctx.e.iter().zip(&ctx.e_alt) {
        image[e] = ea;
    }
    for (&v, &wv) in ctx.v_order.iter().zip(&w) {
        image[v] = wv;
    }
    let perm = Permutation::from_images(image).expect("inferred mapping is a bijection");
    assert!(g.is_automorphism(&perm), "inferred generator at levels {k}..{l} is not an automorphism");
    perm
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSource {
    /// Found by replaying backtracking level `level` up to link `link`.
    Replay { level: usize, link: usize, truncated: bool },
    /// Swaps vertices discarded together as disconnected from the same cell.
    Twins { level: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AutSearchStats {
    pub search: SearchStats,
    pub replays: u64,
    pub failures: u64,
    pub truncated_generators: u64,
}

#[derive(Clone, Debug)]
pub struct AutGroupResult {
    pub generators: Vec<Permutation>,
    pub sources: Vec<GeneratorSource>,
    /// Smallest vertex of each vertex's orbit.
    pub orbit_rep: Vec<usize>,
    pub order: BigUint,
    /// Per choice-point level, the other pivot-cell vertices equivalent to
    /// the pivot vertex.
    pub level_equivalents: BTreeMap<usize, Vec<usize>>,
    pub stats: AutSearchStats,
}

impl AutGroupResult {
    /// Orbit sizes by level: `|level_equivalents[k]| + 1`.
    pub fn orbit_sizes_by_level(&self, depth: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; depth + 1];
        for (&k, eq) in &self.level_equivalents {
            out[k] = Some(eq.len() + 1);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutSearchOptions {
    pub use_failure_memo: bool,
}

impl Default for AutSearchOptions {
    fn default() -> Self {
        AutSearchOptions { use_failure_memo: true }
    }
}

/// Groups of at least two vertices discarded as disconnected from the same
/// cell at the same level, with that level.
pub fn twin_groups(seq: &PartitionSequence) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for (k, rec) in seq.levels.iter().enumerate() {
        let mut by_cell: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for d in rec.discards.iter().filter(|d| d.reason == DiscardReason::Disconnected) {
            by_cell.entry(d.cell).or_default().push(d.vertex);
        }
        out.extend(by_cell.into_values().filter(|g| g.len() > 1).map(|g| (k, g)));
    }
    out
}

fn twin_generators(n: usize, group: &[usize]) -> Vec<Permutation> {
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(group[0], group[1]);
    let mut gens = vec![Permutation::from_images(swap).expect("transposition")];
    if group.len() > 2 {
        let mut cycle: Vec<usize> = (0..n).collect();
        for (i, &v) in group.iter().enumerate() {
            cycle[v] = group[(i + 1) % group.len()];
        }
        gens.push(Permutation::from_images(cycle).expect("cycle"));
    }
    gens
}

pub fn search_automorphisms(g: &Graph, seq: &PartitionSequence) -> (AutGroupResult, PartitionSequence) {
    search_automorphisms_with(g, seq, AutSearchOptions::default())
}

/// Runs the full search. Returns the group and a copy of `seq` whose fully
/// resolved backtracking points are marked removed.
pub fn search_automorphisms_with(
    g: &Graph,
    seq: &PartitionSequence,
    opts: AutSearchOptions,
) -> (AutGroupResult, PartitionSequence) {
    let n = g.n();
    let mut uf = UnionFind::new(n);
    let mut generators = Vec::new();
    let mut sources = Vec::new();
    let mut stats = AutSearchStats::default();

    for (level, group) in twin_groups(seq) {
        for p in twin_generators(n, &group) {
            uf.merge_permutation(&p);
            generators.push(p);
            sources.push(GeneratorSource::Twins { level });
        }
    }

    let mut memo = FailureRecord::new(opts.use_failure_memo);
    let mut orbit_sizes: Vec<Option<usize>> = vec![None; seq.levels.len()];
    let mut level_equivalents = BTreeMap::new();
    let mut pruned = seq.clone();

    for k in seq.choice_points().into_iter().rev() {
        let rec = &seq.levels[k];
        let p = rec.pivot_vertex.expect("choice point pivot");
        let cell = rec.partition.cell(rec.pivot_cell).to_vec();
        let link = seq.subpartition_links[&k];
        let prefix = seq.pivot_prefix(k);
        let mut failed: Vec<usize> = Vec::new();
        for &q in &cell {
            if q == p || uf.same(q, p) {
                continue;
            }
            if failed.iter().any(|&f| uf.same(f, q)) {
                stats.search.pruned += 1;
                continue;
            }
            stats.replays += 1;
            let found = {
                let mut engine = Engine::new(seq, &orbit_sizes, g, &generators, link, &mut memo, prefix.clone());
                let found = engine.run(k, rec.partition.clone(), Some(q));
                stats.search.absorb(&engine.stats);
                found
            };
            match found {
                Some(m) => {
                    let perm = infer_generator(g, seq, k, link, &m.discards);
                    let truncated = link < seq.depth();
                    if truncated {
                        stats.truncated_generators += 1;
                    }
                    uf.merge_permutation(&perm);
                    generators.push(perm);
                    sources.push(GeneratorSource::Replay { level: k, link, truncated });
                }
                None => {
                    stats.failures += 1;
                    failed.push(q);
                }
            }
        }
        let equivalents: Vec<usize> = cell.iter().copied().filter(|&v| v != p && uf.same(v, p)).collect();
        orbit_sizes[k] = Some(equivalents.len() + 1);
        if equivalents.len() + 1 == cell.len() {
            pruned.levels[k].removed = true;
            pruned.levels[k].is_backtracking = false;
        }
        level_equivalents.insert(k, equivalents);
    }

    let orbit_rep = (0..n).map(|v| uf.find(v)).collect();
    let mut result = AutGroupResult {
        generators,
        sources,
        orbit_rep,
        order: BigUint::one(),
        level_equivalents,
        stats,
    };
    result.order = group_order(&result, seq);
    (result, pruned)
}

fn factorial(m: usize) -> BigUint {
    (2..=m).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Product of the pivot orbit sizes along the sequence, times `m!` for every
/// group of `m` twin vertices.
pub fn group_order(result: &AutGroupResult, seq: &PartitionSequence) -> BigUint {
    let from_levels = result
        .level_equivalents
        .values()
        .fold(BigUint::one(), |acc, eq| acc * BigUint::from(eq.len() + 1));
    twin_groups(seq)
        .iter()
        .fold(from_levels, |acc, (_, group)| acc * factorial(group.len()))
}

/// Orbits as sorted vertex lists, ordered by smallest member.
pub fn orbits(result: &AutGroupResult) -> Vec<Vec<usize>> {
    let mut by_rep: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &r) in result.orbit_rep.iter().enumerate() {
        by_rep.entry(r).or_default().push(v);
    }
    by_rep.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::generate_sequence;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn run(g: &Graph) -> (AutGroupResult, PartitionSequence) {
        search_automorphisms(g, &generate_sequence(g))
    }

    #[test]
    fn k3_group() {
        let (r, pruned) = run(&complete(3));
        assert_eq!(r.order, BigUint::from(6u32));
        assert_eq!(orbits(&r), vec![vec![0, 1, 2]]);
        assert!(pruned.backtracking_levels().is_empty());
        assert!(pruned.levels.iter().filter(|l| l.removed).count() == 2);
        assert!(r.generators.iter().all(|p| complete(3).is_automorphism(p)));
    }

    #[test]
    fn path_group() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let (r, _) = run(&g);
        assert_eq!(r.order, BigUint::from(2u32));
        assert_eq!(orbits(&r), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn c5_group() {
        let (r, _) = run(&cycle(5));
        assert_eq!(r.order, BigUint::from(10u32));
        assert_eq!(orbits(&r).len(), 1);
    }

    #[test]
    fn small_orders() {
        assert_eq!(run(&complete(4)).0.order, BigUint::from(24u32));
        assert_eq!(run(&Graph::empty(4).unwrap()).0.order, BigUint::from(24u32));
        assert_eq!(run(&Graph::empty(1).unwrap()).0.order, BigUint::from(1u32));
    }

    #[test]
    fn mapping_without_c_is_identity_on_v() {
        let ctx = SubpartitionContext::new(0, 1, vec![1, 2], vec![2, 1], vec![3, 4]);
        assert!(ctx.c.is_empty());
        assert_eq!(compute_subpartition_mapping(&ctx), vec![3, 4]);
    }

    #[test]
    fn mapping_single_step() {
        // E = [a], E' = [b]: b is replaced by a
        let (a, b) = (0, 1);
        let ctx = SubpartitionContext::new(0, 1, vec![a], vec![b], vec![2, b, 3]);
        assert_eq!(ctx.b, vec![a]);
        assert_eq!(ctx.c, vec![b]);
        assert_eq!(compute_subpartition_mapping(&ctx), vec![2, a, 3]);
    }

    #[test]
    fn mapping_chain_through_a() {
        // E = [x, y], E' = [y, z], A = {y}: z is replaced by x
        let (x, y, z) = (0, 1, 2);
        let ctx = SubpartitionContext::new(0, 1, vec![x, y], vec![y, z], vec![z, 3]);
        assert_eq!(ctx.a, vec![y]);
        assert_eq!(compute_subpartition_mapping(&ctx), vec![x, 3]);
    }

    #[test]
    fn disjoint_edges_swap() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let seq = generate_sequence(&g);
        let (r, _) = search_automorphisms(&g, &seq);
        assert_eq!(r.order, BigUint::from(8u32));
        assert!(r.generators.iter().all(|p| g.is_automorphism(p)));
    }

    #[test]
    fn union_find_classes() {
        let mut uf = UnionFind::new(5);
        uf.union(3, 1);
        uf.union(4, 0);
        assert_eq!(uf.classes(), vec![vec![0, 4], vec![1, 3], vec![2]]);
    }

    #[test]
    fn failure_record_respects_enabled_flag() {
        let mut on = FailureRecord::new(true);
        on.insert(2, &[1, 4], 7);
        assert!(on.contains(2, &[1, 4], 7));
        assert!(!on.contains(2, &[4, 1], 7));
        let mut off = FailureRecord::disabled();
        off.insert(2, &[1, 4], 7);
        assert!(!off.contains(2, &[1, 4], 7));
    }
}
