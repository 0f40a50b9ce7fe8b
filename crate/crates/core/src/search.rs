//! Depth-first search for a sequence of partitions compatible with a recorded
//! one. Shared by the automorphism search (same graph, starting at a
//! backtracking level) and the isomorphism matcher (other graph, starting at
//! the trivial partition).

use crate::autgroup::{FailureRecord, UnionFind};
use crate::graph::Graph;
use crate::partition::{equitable_signatures, set_refine, vertex_refine, Partition, Refined};
use crate::perm::Permutation;
use crate::sequence::{PartitionSequence, RefinementKind};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Partitions visited.
    pub nodes: u64,
    /// Candidates tried after the first one at a choice point.
    pub backtracks: u64,
    pub memo_hits: u64,
    /// Candidates skipped because a known automorphism maps them onto a failure.
    pub pruned: u64,
    pub deepest_level: usize,
}

impl SearchStats {
    pub fn absorb(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.backtracks += o.backtracks;
        self.memo_hits += o.memo_hits;
        self.pruned += o.pruned;
        self.deepest_level = self.deepest_level.max(o.deepest_level);
    }
}

pub(crate) struct Match {
    pub partitions: Vec<Partition>,
    pub discards: Vec<usize>,
}

pub(crate) struct Engine<'a> {
    seq: &'a PartitionSequence,
    /// Per level, the number of pivot-cell vertices equivalent to the
    /// recorded pivot, when known.
    orbit_sizes: &'a [Option<usize>],
    other: &'a Graph,
    autos: &'a [Permutation],
    limit: usize,
    memo: &'a mut FailureRecord,
    prefix: Vec<usize>,
    discards: Vec<usize>,
    partitions: Vec<Partition>,
    pub stats: SearchStats,
}

impl<'a> Engine<'a> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        seq: &'a PartitionSequence,
        orbit_sizes: &'a [Option<usize>],
        other: &'a Graph,
        autos: &'a [Permutation],
        limit: usize,
        memo: &'a mut FailureRecord,
        prefix: Vec<usize>,
    ) -> Self {
        Engine {
            seq,
            orbit_sizes,
            other,
            autos,
            limit,
            memo,
            prefix,
            discards: Vec::new(),
            partitions: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    /// Searches from `part` at `level`, which must already be compatible
    /// with the recorded partition there. `forced` fixes the pivot vertex at
    /// `level` when it is a choice point.
    pub fn run(&mut self, level: usize, part: Partition, forced: Option<usize>) -> Option<Match> {
        self.discards.clear();
        self.partitions.clear();
        if self.descend(level, &part, forced) {
            self.partitions.reverse();
            Some(Match {
                partitions: std::mem::take(&mut self.partitions),
                discards: std::mem::take(&mut self.discards),
            })
        } else {
            None
        }
    }

    fn descend(&mut self, level: usize, part: &Partition, forced: Option<usize>) -> bool {
        self.stats.nodes += 1;
        self.stats.deepest_level = self.stats.deepest_level.max(level);
        let rec = &self.seq.levels[level];
        if level == self.limit {
            if part.shape() != rec.partition.shape() {
                return false;
            }
            return match &rec.signatures {
                Some(sigs) => equitable_signatures(self.other, part).as_ref() == Some(sigs),
                None => true,
            };
        }
        match rec.kind {
            RefinementKind::None => unreachable!("final level is the limit"),
            RefinementKind::Set => {
                let Ok(r) = set_refine(self.other, part, rec.pivot_cell) else {
                    return false;
                };
                self.step(level, r)
            }
            RefinementKind::Vertex => {
                let sigs = rec.signatures.as_ref().expect("vertex level signatures");
                if equitable_signatures(self.other, part).as_ref() != Some(sigs) {
                    return false;
                }
                let cell = part.cell(rec.pivot_cell).to_vec();
                if cell.len() == 1 {
                    let r = vertex_refine(self.other, part, rec.pivot_cell, cell[0]).expect("pivot in cell");
                    return self.step(level, r);
                }
                self.choose(level, part, cell, forced)
            }
        }
    }

    fn choose(&mut self, level: usize, part: &Partition, cell: Vec<usize>, forced: Option<usize>) -> bool {
        let rec = &self.seq.levels[level];
        let candidates = match forced {
            Some(q) => vec![q],
            None => cell.clone(),
        };
        // With a known orbit of size s among m cell vertices, an extendable
        // prefix has exactly s successful candidates.
        let max_failures = match (forced, self.orbit_sizes[level]) {
            (None, Some(s)) => cell.len() - s,
            _ => usize::MAX,
        };
        let mut failed: Vec<usize> = Vec::new();
        let mut orbit_of_fixed: Option<UnionFind> = None;
        let mut attempts = 0;
        for c in candidates {
            if !failed.is_empty() {
                let uf = orbit_of_fixed.get_or_insert_with(|| self.stabilizer_orbits());
                if failed.iter().any(|&f| uf.same(f, c)) {
                    self.stats.pruned += 1;
                    continue;
                }
            }
            let ok = if self.memo.contains(level, &self.prefix, c) {
                self.stats.memo_hits += 1;
                false
            } else {
                if attempts > 0 {
                    self.stats.backtracks += 1;
                }
                attempts += 1;
                let r = vertex_refine(self.other, part, rec.pivot_cell, c).expect("candidate in cell");
                self.prefix.push(c);
                let ok = self.step(level, r);
                self.prefix.pop();
                if !ok {
                    self.memo.insert(level, &self.prefix, c);
                }
                ok
            };
            if ok {
                return true;
            }
            failed.push(c);
            if failed.len() > max_failures {
                return false;
            }
        }
        false
    }

    fn step(&mut self, level: usize, r: Refined) -> bool {
        if Some(&r.trace) != self.seq.levels[level].trace.as_ref() {
            return false;
        }
        let mark = self.discards.len();
        self.discards.extend(r.partition.discards().iter().map(|d| d.vertex));
        if self.descend(level + 1, &r.partition, None) {
            self.partitions.push(r.partition);
            true
        } else {
            self.discards.truncate(mark);
            false
        }
    }

    /// Orbits of the known automorphisms that fix every chosen pivot.
    fn stabilizer_orbits(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.other.n());
        for a in self.autos {
            if self.prefix.iter().all(|&v| a.apply(v) == v) {
                uf.merge_permutation(a);
            }
        }
        uf
    }
}
