//! Dense directed graphs with 4-valued adjacency codes.
//!
//! Every ordered pair `(u, v)` carries one [`AdjCode`]: 0 when neither arc is
//! present, 1 when only `v -> u` exists, 2 when only `u -> v` exists and 3 when
//! both do. Undirected graphs are the special case where every code is 0 or 3.

use std::fmt;

use crate::error::GraphError;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AdjCode(u8);

impl AdjCode {
    pub const NONE: AdjCode = AdjCode(0);
    pub const IN: AdjCode = AdjCode(1);
    pub const OUT: AdjCode = AdjCode(2);
    pub const BOTH: AdjCode = AdjCode(3);

    pub fn new(value: u8) -> Option<Self> {
        (value <= 3).then_some(AdjCode(value))
    }

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    /// The code seen from the other endpoint: 1 and 2 swap, 0 and 3 stay.
    #[inline]
    pub fn inverse(self) -> Self {
        match self.0 {
            1 => AdjCode(2),
            2 => AdjCode(1),
            v => AdjCode(v),
        }
    }
}

impl fmt::Display for AdjCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Counts of code-3, code-2 and code-1 neighbours inside a reference set.
///
/// The derived ordering compares `(d3, d2, d1)` lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DegreeTriple {
    pub d3: u32,
    pub d2: u32,
    pub d1: u32,
}

impl DegreeTriple {
    pub const ZERO: DegreeTriple = DegreeTriple { d3: 0, d2: 0, d1: 0 };

    pub fn new(d3: u32, d2: u32, d1: u32) -> Self {
        DegreeTriple { d3, d2, d1 }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    #[inline]
    pub(crate) fn count(&mut self, code: AdjCode) {
        match code.0 {
            3 => self.d3 += 1,
            2 => self.d2 += 1,
            1 => self.d1 += 1,
            _ => {}
        }
    }

    pub fn total(&self) -> u32 {
        self.d3 + self.d2 + self.d1
    }
}

impl std::ops::Add for DegreeTriple {
    type Output = DegreeTriple;
    fn add(self, o: DegreeTriple) -> DegreeTriple {
        DegreeTriple::new(self.d3 + o.d3, self.d2 + o.d2, self.d1 + o.d1)
    }
}

impl fmt::Display for DegreeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d3, self.d2, self.d1)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<AdjCode>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Graph(n={})", self.n)?;
        for u in 0..self.n {
            let row: String = (0..self.n).map(|v| (b'0' + self.code(u, v).0) as char).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl Graph {
    /// Graph with `n` vertices and no arcs.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Graph {
            n,
            adj: vec![AdjCode::NONE; n * n],
        })
    }

    /// Builds a graph from directed arcs. Repeated arcs are idempotent.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    /// Builds an undirected graph: each edge contributes both arcs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_arc(u, v)?;
            g.add_arc(v, u)?;
        }
        Ok(g)
    }

    pub(crate) fn add_arc(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n;
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let fwd = self.adj[u * n + v].0 | 2;
        self.adj[u * n + v] = AdjCode(fwd);
        self.adj[v * n + u] = AdjCode(fwd).inverse();
        Ok(())
    }

    /// Sets the code for `(u, v)` and its inverse for `(v, u)`.
    pub(crate) fn set_code(&mut self, u: usize, v: usize, code: AdjCode) {
        debug_assert!(u != v);
        self.adj[u * self.n + v] = code;
        self.adj[v * self.n + u] = code.inverse();
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn code(&self, u: usize, v: usize) -> AdjCode {
        self.adj[u * self.n + v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.code(u, v).0 & 2 != 0
    }

    /// Directed arcs in row-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (0..self.n).filter(move |&v| self.has_arc(u, v)).map(move |v| (u, v)))
    }

    /// True when every code is 0 or 3.
    pub fn is_undirected(&self) -> bool {
        self.adj.iter().all(|c| c.0 == 0 || c.0 == 3)
    }

    /// Number of ordered pairs carrying each code, indexed by code value.
    pub fn code_counts(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for c in &self.adj {
            counts[c.0 as usize] += 1;
        }
        counts[0] -= self.n;
        counts
    }

    /// Available degree of `v` with the vertex set `set`; `v` itself is skipped.
    pub fn available_degree(&self, v: usize, set: &[usize]) -> DegreeTriple {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        let mut d = DegreeTriple::ZERO;
        for &u in set {
            if u != v {
                d.count(row[u]);
            }
        }
        d
    }

    /// The relabelled graph `h` with `h(perm(u), perm(v)) = self(u, v)`.
    pub fn apply_permutation(&self, perm: &Permutation) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::SizeMismatch {
                left: self.n,
                right: perm.len(),
            });
        }
        let n = self.n;
        let mut adj = vec![AdjCode::NONE; n * n];
        for u in 0..n {
            let pu = perm.apply(u);
            for v in 0..n {
                adj[pu * n + perm.apply(v)] = self.adj[u * n + v];
            }
        }
        Ok(Graph { n, adj })
    }

    /// True iff `map` is an isomorphism from `self` onto `other`.
    pub fn is_isomorphism(&self, other: &Graph, map: &Permutation) -> bool {
        if self.n != other.n || map.len() != self.n {
            return false;
        }
        (0..self.n).all(|u| {
            let mu = map.apply(u);
            (0..self.n).all(|v| self.code(u, v) == other.code(mu, map.apply(v)))
        })
    }

    pub fn is_automorphism(&self, perm: &Permutation) -> bool {
        self.is_isomorphism(self, perm)
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut h = Graph::empty(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i != j {
                    h.adj[i * h.n + j] = self.code(u, v);
                }
            }
        }
        Ok(h)
    }

    /// Available degree of every vertex with the whole vertex set, sorted.
    pub fn degree_multiset(&self) -> Vec<DegreeTriple> {
        let all: Vec<usize> = (0..self.n).collect();
        let mut degs: Vec<_> = (0..self.n).map(|v| self.available_degree(v, &all)).collect();
        degs.sort_unstable();
        degs
    }
}
