//! Sequences of partitions: construction, pivot cell selection, sub-partition
//! links and replay of alternative sequences.

use std::collections::BTreeMap;

use crate::autgroup::FailureRecord;
use crate::error::RefineError;
use crate::graph::Graph;
use crate::partition::{
    equitable_signatures, first_effective_set_refinement, is_subpartition, refine_to_equitable, signature,
    unit_partition, vertex_refine, CellSignature, Discard, Partition, Refined, RefinementTrace,
};
use crate::search::{Engine, SearchStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RefinementKind {
    Set,
    Vertex,
    /// Final level: nothing left to refine.
    None,
}

/// Outcome of evaluating one pivot cell candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PivotScore {
    /// The equitable partition reached was a sub-partition of the current one.
    pub early_accept: bool,
    /// Discarded vertices plus cells at the equitable level reached.
    pub score: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PivotChoice {
    pub cell: usize,
    pub score: PivotScore,
}

#[derive(Clone, Debug)]
pub struct LevelRecord {
    pub partition: Partition,
    pub kind: RefinementKind,
    pub pivot_cell: usize,
    pub pivot_vertex: Option<usize>,
    pub is_backtracking: bool,
    /// Set when the automorphism search proved every vertex of the pivot
    /// cell equivalent to the pivot vertex; `is_backtracking` is then cleared.
    pub removed: bool,
    /// Vertices discarded by this level's refinement, in order.
    pub discards: Vec<Discard>,
    pub(crate) trace: Option<RefinementTrace>,
    /// Cell signatures, recorded at levels refined by a vertex (these are
    /// always equitable).
    pub(crate) signatures: Option<Vec<CellSignature>>,
}

impl LevelRecord {
    /// A vertex refinement whose pivot cell has more than one vertex.
    pub fn is_choice_point(&self) -> bool {
        self.kind == RefinementKind::Vertex && self.partition.cell(self.pivot_cell).len() > 1
    }

    pub fn trace(&self) -> Option<&RefinementTrace> {
        self.trace.as_ref()
    }
}

#[derive(Clone, Debug)]
pub struct PartitionSequence {
    pub levels: Vec<LevelRecord>,
    /// Every vertex in the order it left the sequence.
    pub vertex_order: Vec<usize>,
    /// `offsets[k]` is the number of vertices discarded before level `k`.
    pub offsets: Vec<usize>,
    /// Backtracking level `k` mapped to the first later level whose partition
    /// is a sub-partition of level `k`'s.
    pub subpartition_links: BTreeMap<usize, usize>,
}

impl PartitionSequence {
    /// Index of the final level.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn backtracking_levels(&self) -> Vec<usize> {
        (0..self.levels.len()).filter(|&k| self.levels[k].is_backtracking).collect()
    }

    pub fn choice_points(&self) -> Vec<usize> {
        (0..self.levels.len()).filter(|&k| self.levels[k].is_choice_point()).collect()
    }

    /// Pivot vertices of choice points before `level`.
    pub(crate) fn pivot_prefix(&self, level: usize) -> Vec<usize> {
        self.levels[..level]
            .iter()
            .filter(|r| r.is_choice_point())
            .filter_map(|r| r.pivot_vertex)
            .collect()
    }

    /// Vertices discarded between levels `from` and `to`, in order.
    pub fn discarded_between(&self, from: usize, to: usize) -> &[usize] {
        &self.vertex_order[self.offsets[from]..self.offsets[to]]
    }
}

fn level(partition: Partition, kind: RefinementKind, pivot_cell: usize, pivot_vertex: Option<usize>) -> LevelRecord {
    LevelRecord {
        partition,
        kind,
        pivot_cell,
        pivot_vertex,
        is_backtracking: false,
        removed: false,
        discards: Vec::new(),
        trace: None,
        signatures: None,
    }
}

/// Builds the sequence of partitions of `g` from the trivial partition until
/// every vertex has been discarded.
///
/// At each level the first applicable rule wins: an effective set
/// refinement, a vertex refinement on the first singleton cell, termination
/// on an empty partition, and otherwise a backtracking level whose pivot cell
/// comes from [`select_pivot_cell`].
pub fn generate_sequence(g: &Graph) -> PartitionSequence {
    let mut levels = Vec::new();
    let mut current = unit_partition(g);
    loop {
        let (mut rec, refined): (LevelRecord, Refined) =
            if let Some((pivot, refined)) = first_effective_set_refinement(g, &current) {
                (level(current, RefinementKind::Set, pivot, None), refined)
            } else if let Some(pos) = current.first_singleton() {
                let v = current.cell(pos)[0];
                let refined = vertex_refine(g, &current, pos, v).expect("singleton pivot");
                (level(current, RefinementKind::Vertex, pos, Some(v)), refined)
            } else if current.is_empty() {
                levels.push(level(current, RefinementKind::None, 0, None));
                break;
            } else {
                let choice = select_pivot_cell(g, &current).expect("backtracking preconditions hold");
                let v = current.cell(choice.cell)[0];
                let refined = vertex_refine(g, &current, choice.cell, v).expect("pivot in cell");
                let mut rec = level(current, RefinementKind::Vertex, choice.cell, Some(v));
                rec.is_backtracking = true;
                (rec, refined)
            };
        if rec.kind == RefinementKind::Vertex {
            rec.signatures = Some(equitable_signatures(g, &rec.partition).expect("vertex levels are equitable"));
        }
        rec.discards = refined.partition.discards().to_vec();
        rec.trace = Some(refined.trace);
        levels.push(rec);
        current = refined.partition;
    }

    let mut vertex_order = Vec::with_capacity(g.n());
    let mut offsets = Vec::with_capacity(levels.len());
    for rec in &levels {
        offsets.push(vertex_order.len());
        vertex_order.extend(rec.discards.iter().map(|d| d.vertex));
    }
    debug_assert_eq!(vertex_order.len(), g.n());

    let mut seq = PartitionSequence {
        levels,
        vertex_order,
        offsets,
        subpartition_links: BTreeMap::new(),
    };
    compute_subpartition_links(&mut seq);
    seq
}

/// Links each backtracking level `k` to the smallest `l > k` whose partition
/// is a sub-partition of level `k`'s. The final, empty level always
/// qualifies.
pub fn compute_subpartition_links(seq: &mut PartitionSequence) {
    seq.subpartition_links.clear();
    for k in 0..seq.levels.len() {
        if !seq.levels[k].is_choice_point() {
            continue;
        }
        let base = &seq.levels[k].partition;
        let l = (k + 1..seq.levels.len())
            .find(|&l| is_subpartition(&seq.levels[l].partition, base))
            .expect("final level is empty");
        seq.subpartition_links.insert(k, l);
    }
}

/// Evaluates one candidate per distinct cell signature, in cell order.
/// Stops early at the first candidate that reaches a sub-partition.
pub fn pivot_candidates(g: &Graph, p: &Partition) -> Result<Vec<(usize, PivotScore)>, RefineError> {
    if p.is_empty() {
        return Err(RefineError::Precondition("empty partition"));
    }
    if p.first_singleton().is_some() {
        return Err(RefineError::Precondition("partition has a singleton cell"));
    }
    if first_effective_set_refinement(g, p).is_some() {
        return Err(RefineError::Precondition("set refinement is not a no-op"));
    }
    let mut seen: Vec<CellSignature> = Vec::new();
    let mut out = Vec::new();
    for i in 0..p.num_cells() {
        let sig = signature(g, p, i);
        if seen.contains(&sig) {
            continue;
        }
        seen.push(sig);
        let x = p.cell(i)[0];
        let refined = vertex_refine(g, p, i, x)?;
        let first_discards = refined.partition.discards().len();
        let (eq, more, _) = refine_to_equitable(g, refined.partition);
        if is_subpartition(&eq, p) {
            out.push((i, PivotScore { early_accept: true, score: first_discards + more + eq.num_cells() }));
            break;
        }
        out.push((i, PivotScore { early_accept: false, score: first_discards + more + eq.num_cells() }));
    }
    Ok(out)
}

/// Chooses the pivot cell at a backtracking level.
pub fn select_pivot_cell(g: &Graph, p: &Partition) -> Result<PivotChoice, RefineError> {
    let candidates = pivot_candidates(g, p)?;
    if let Some(&(cell, score)) = candidates.iter().find(|(_, s)| s.early_accept) {
        return Ok(PivotChoice { cell, score });
    }
    let mut best = candidates[0];
    for &(cell, score) in &candidates[1..] {
        if score.score > best.1.score {
            best = (cell, score);
        }
    }
    Ok(PivotChoice { cell: best.0, score: best.1 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayOutcome {
    /// Alternative partitions for levels `k+1 ..= link[k]` and the vertices
    /// they discarded, in order.
    Compatible { partitions: Vec<Partition>, discards: Vec<usize> },
    /// The deepest level the search reached before giving up.
    Incompatible { fail_level: usize },
}

/// Replays the refinements of `seq` from backtracking level `k` with `q` in
/// place of the recorded pivot vertex, searching nested backtracking levels
/// exhaustively, up to the sub-partition link of `k`.
pub fn replay_alternative(
    g: &Graph,
    seq: &PartitionSequence,
    k: usize,
    q: usize,
) -> Result<(ReplayOutcome, SearchStats), RefineError> {
    let rec = seq.levels.get(k).ok_or(RefineError::NoSuchCell { index: k, cells: seq.levels.len() })?;
    if !rec.is_choice_point() {
        return Err(RefineError::Precondition("level is not a backtracking level"));
    }
    if rec.pivot_vertex == Some(q) || !rec.partition.cell(rec.pivot_cell).contains(&q) {
        return Err(RefineError::Precondition("q must be another vertex of the pivot cell"));
    }
    let limit = seq.subpartition_links[&k];
    let mut memo = FailureRecord::disabled();
    let orbit_sizes = vec![None; seq.levels.len()];
    let mut engine = Engine::new(seq, &orbit_sizes, g, &[], limit, &mut memo, seq.pivot_prefix(k));
    let found = engine.run(k, rec.partition.clone(), Some(q));
    let stats = engine.stats;
    let outcome = match found {
        Some(m) => ReplayOutcome::Compatible { partitions: m.partitions, discards: m.discards },
        None => ReplayOutcome::Incompatible { fail_level: stats.deepest_level },
    };
    Ok((outcome, stats))
}
