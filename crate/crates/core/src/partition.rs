//! Ordered partitions of the surviving vertex set and the two refinements
//! that shrink them.
//!
//! A refinement splits every cell in place, keeping the sub-cells in the slot
//! of their parent, and then drops vertices that have lost every link to the
//! rest of the partition. Each refinement also returns a [`RefinementTrace`],
//! the position-level record of what happened. Two refinements on different
//! graphs (or on the same graph along different branches) are structurally
//! identical exactly when their traces are equal.

use std::cmp::Reverse;

use crate::error::RefineError;
use crate::graph::{AdjCode, DegreeTriple, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiscardReason {
    Pivot,
    Disconnected,
}

/// A vertex leaving the partition. `cell` is the pivot cell position for
/// pivots and the post-split cell position for disconnected vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Discard {
    pub vertex: usize,
    pub reason: DiscardReason,
    pub cell: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
    discards: Vec<Discard>,
}

/// Size of a cell plus the available degree of its members with every cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellSignature {
    pub size: usize,
    pub degrees: Vec<DegreeTriple>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitKey {
    Degree(DegreeTriple),
    Code(AdjCode),
}

/// One sub-cell produced from parent cell `parent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubCell {
    pub parent: usize,
    pub key: SplitKey,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RefinementTrace {
    pub subcells: Vec<SubCell>,
    pub discards: Vec<(usize, DiscardReason)>,
}

#[derive(Clone, Debug)]
pub struct Refined {
    pub partition: Partition,
    pub trace: RefinementTrace,
    /// Whether some cell split or some vertex was discarded.
    pub changed: bool,
}

impl Partition {
    pub fn from_cells(cells: Vec<Vec<usize>>) -> Self {
        debug_assert!(cells.iter().all(|c| !c.is_empty()));
        Partition {
            cells,
            discards: Vec::new(),
        }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &[usize] {
        &self.cells[i]
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Discards made by the refinement that produced this partition.
    pub fn discards(&self) -> &[Discard] {
        &self.discards
    }

    pub fn active(&self) -> Vec<usize> {
        self.cells.iter().flatten().copied().collect()
    }

    pub fn active_len(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    pub fn first_singleton(&self) -> Option<usize> {
        self.cells.iter().position(|c| c.len() == 1)
    }

    /// `cell_of[v]` for every vertex of a graph on `n` vertices.
    pub fn cell_index(&self, n: usize) -> Vec<Option<usize>> {
        let mut idx = vec![None; n];
        for (i, c) in self.cells.iter().enumerate() {
            for &v in c {
                idx[v] = Some(i);
            }
        }
        idx
    }
}

/// The trivial partition `(V)`.
pub fn unit_partition(g: &Graph) -> Partition {
    Partition::from_cells(vec![(0..g.n()).collect()])
}

/// Groups `cell` by key, largest key first, keeping member order stable.
fn split_cell<K: Ord + Copy>(cell: &[usize], key: impl Fn(usize) -> K) -> Vec<(K, Vec<usize>)> {
    let mut keyed: Vec<(K, usize)> = cell.iter().map(|&v| (key(v), v)).collect();
    keyed.sort_by_key(|&(k, _)| Reverse(k));
    let mut groups: Vec<(K, Vec<usize>)> = Vec::new();
    for (k, v) in keyed {
        match groups.last_mut() {
            Some((gk, members)) if *gk == k => members.push(v),
            _ => groups.push((k, vec![v])),
        }
    }
    groups
}

/// Removes vertices with no link to the rest of `cells`, logging them.
fn discard_disconnected(g: &Graph, cells: Vec<Vec<usize>>, discards: &mut Vec<Discard>) -> Vec<Vec<usize>> {
    let active: Vec<usize> = cells.iter().flatten().copied().collect();
    let linked = |v: usize| active.iter().any(|&u| u != v && g.code(v, u) != AdjCode::NONE);
    cells
        .into_iter()
        .enumerate()
        .filter_map(|(pos, cell)| {
            let mut kept = Vec::with_capacity(cell.len());
            for v in cell {
                if linked(v) {
                    kept.push(v);
                } else {
                    discards.push(Discard {
                        vertex: v,
                        reason: DiscardReason::Disconnected,
                        cell: pos,
                    });
                }
            }
            (!kept.is_empty()).then_some(kept)
        })
        .collect()
}

fn finish(g: &Graph, split: Vec<(usize, SplitKey, Vec<usize>)>, mut discards: Vec<Discard>, changed: bool) -> Refined {
    let subcells = split
        .iter()
        .map(|(parent, key, c)| SubCell {
            parent: *parent,
            key: *key,
            size: c.len(),
        })
        .collect();
    let before = discards.len();
    let cells = discard_disconnected(g, split.into_iter().map(|(_, _, c)| c).collect(), &mut discards);
    let changed = changed || discards.len() > before;
    let trace = RefinementTrace {
        subcells,
        discards: discards.iter().map(|d| (d.cell, d.reason)).collect(),
    };
    Refined {
        partition: Partition { cells, discards },
        trace,
        changed,
    }
}

/// Splits every cell by available degree with the cell at `pivot`.
pub fn set_refine(g: &Graph, p: &Partition, pivot: usize) -> Result<Refined, RefineError> {
    let pivot_cell = p.cells.get(pivot).ok_or(RefineError::NoSuchCell {
        index: pivot,
        cells: p.cells.len(),
    })?;
    let mut split = Vec::with_capacity(p.cells.len());
    let mut changed = false;
    for (i, cell) in p.cells.iter().enumerate() {
        let groups = split_cell(cell, |v| g.available_degree(v, pivot_cell));
        changed |= groups.len() > 1;
        split.extend(groups.into_iter().map(|(k, c)| (i, SplitKey::Degree(k), c)));
    }
    Ok(finish(g, split, Vec::new(), changed))
}

/// Individualizes `vertex` from the cell at `pivot` and splits every cell by
/// the code from `vertex` to its members.
pub fn vertex_refine(g: &Graph, p: &Partition, pivot: usize, vertex: usize) -> Result<Refined, RefineError> {
    let cell = p.cells.get(pivot).ok_or(RefineError::NoSuchCell {
        index: pivot,
        cells: p.cells.len(),
    })?;
    if !cell.contains(&vertex) {
        return Err(RefineError::PivotNotInCell { vertex, cell: pivot });
    }
    let discards = vec![Discard {
        vertex,
        reason: DiscardReason::Pivot,
        cell: pivot,
    }];
    let mut split = Vec::with_capacity(p.cells.len() + 1);
    for (i, cell) in p.cells.iter().enumerate() {
        let rest: Vec<usize> = cell.iter().copied().filter(|&v| v != vertex).collect();
        let groups = split_cell(&rest, |v| g.code(vertex, v));
        split.extend(groups.into_iter().map(|(k, c)| (i, SplitKey::Code(k), c)));
    }
    Ok(finish(g, split, discards, true))
}

/// True when no cell would split under a set refinement with pivot `pivot`.
fn set_refine_splits(g: &Graph, p: &Partition, pivot: usize) -> bool {
    let pivot_cell = &p.cells[pivot];
    p.cells.iter().any(|cell| {
        let first = g.available_degree(cell[0], pivot_cell);
        cell[1..].iter().any(|&v| g.available_degree(v, pivot_cell) != first)
    })
}

fn has_disconnected(g: &Graph, p: &Partition) -> bool {
    let active = p.active();
    active
        .iter()
        .any(|&v| active.iter().all(|&u| u == v || g.code(v, u) == AdjCode::NONE))
}

/// The first pivot position whose set refinement splits a cell or discards
/// a vertex, together with the result.
pub fn first_effective_set_refinement(g: &Graph, p: &Partition) -> Option<(usize, Refined)> {
    if p.is_empty() {
        return None;
    }
    let pivot = (0..p.cells.len())
        .find(|&i| set_refine_splits(g, p, i))
        .or_else(|| has_disconnected(g, p).then_some(0))?;
    let refined = set_refine(g, p, pivot).expect("pivot index in range");
    debug_assert!(refined.changed);
    Some((pivot, refined))
}

/// Applies effective set refinements until none is left. Returns the
/// equitable partition, the number of vertices discarded on the way and the
/// number of refinements applied.
pub fn refine_to_equitable(g: &Graph, p: Partition) -> (Partition, usize, usize) {
    let mut current = p;
    let mut discarded = 0;
    let mut steps = 0;
    while let Some((_, refined)) = first_effective_set_refinement(g, &current) {
        discarded += refined.partition.discards.len();
        steps += 1;
        current = refined.partition;
    }
    (current, discarded, steps)
}

/// Degrees of every active vertex with every cell, indexed by vertex.
fn degree_table(g: &Graph, p: &Partition) -> Vec<Vec<DegreeTriple>> {
    let idx = p.cell_index(g.n());
    let active = p.active();
    let mut table = vec![Vec::new(); g.n()];
    for &v in &active {
        let mut row = vec![DegreeTriple::ZERO; p.cells.len()];
        for &u in &active {
            if u != v {
                row[idx[u].expect("active")].count(g.code(v, u));
            }
        }
        table[v] = row;
    }
    table
}

pub fn is_equitable(g: &Graph, p: &Partition) -> bool {
    equitable_signatures(g, p).is_some()
}

/// Signatures of all cells, or `None` if the partition is not equitable.
pub fn equitable_signatures(g: &Graph, p: &Partition) -> Option<Vec<CellSignature>> {
    let table = degree_table(g, p);
    p.cells
        .iter()
        .map(|cell| {
            let first = &table[cell[0]];
            cell[1..].iter().all(|&v| &table[v] == first).then(|| CellSignature {
                size: cell.len(),
                degrees: first.clone(),
            })
        })
        .collect()
}

/// Signature of the cell at `cell_index`, read from its first vertex.
pub fn signature(g: &Graph, p: &Partition, cell_index: usize) -> CellSignature {
    debug_assert!(is_equitable(g, p), "signature of a non-equitable partition");
    let rep = p.cells[cell_index][0];
    CellSignature {
        size: p.cells[cell_index].len(),
        degrees: p.cells.iter().map(|c| g.available_degree(rep, c)).collect(),
    }
}

/// Same number of cells and position-wise equal signatures.
pub fn compatible(ga: &Graph, pa: &Partition, gb: &Graph, pb: &Partition) -> bool {
    pa.num_cells() == pb.num_cells()
        && (0..pa.num_cells()).all(|i| signature(ga, pa, i) == signature(gb, pb, i))
}

/// True when every cell of `pl` lies inside a cell of `pk` and no two cells
/// of `pl` share one.
pub fn is_subpartition(pl: &Partition, pk: &Partition) -> bool {
    let n = pk.cells.iter().flatten().chain(pl.cells.iter().flatten()).max().map_or(0, |&m| m + 1);
    let idx = pk.cell_index(n);
    let mut used = vec![false; pk.cells.len()];
    for cell in &pl.cells {
        let Some(h) = idx[cell[0]] else { return false };
        if used[h] || cell.iter().any(|&v| idx[v] != Some(h)) {
            return false;
        }
        used[h] = true;
    }
    true
}
