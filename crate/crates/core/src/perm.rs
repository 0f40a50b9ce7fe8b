//! Vertex permutations stored as full image arrays.

use std::fmt;

use crate::error::GraphError;

/// A bijection on `0..n`, stored as `image[v] = perm(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Validates that `image` is a bijection on `0..image.len()`.
    pub fn from_images(image: Vec<usize>) -> Result<Self, GraphError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(GraphError::NotBijection { len: n });
            }
            seen[v] = true;
        }
        Ok(Permutation(image))
    }

    /// Builds the permutation sending `from[i]` to `to[i]`. Both lists must
    /// enumerate `0..n` exactly once.
    pub fn from_orders(from: &[usize], to: &[usize]) -> Result<Self, GraphError> {
        if from.len() != to.len() {
            return Err(GraphError::NotBijection { len: from.len() });
        }
        let n = from.len();
        let mut image = vec![usize::MAX; n];
        for (&a, &b) in from.iter().zip(to) {
            if a >= n || image[a] != usize::MAX {
                return Err(GraphError::NotBijection { len: n });
            }
            image[a] = b;
        }
        Self::from_images(image)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    /// `self` after `other`: `v -> self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    /// Non-trivial cycles, each starting at its smallest element, ordered by
    /// that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.0[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.0[v];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
