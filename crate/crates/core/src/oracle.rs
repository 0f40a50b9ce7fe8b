//! Exhaustive ground truth for small graphs.
//!
//! Both searches assign images to vertices `0, 1, ...` in increasing order
//! and abandon a prefix only when it already breaks an adjacency between
//! assigned vertices or maps a vertex onto one of different degree. Neither
//! test can reject a prefix of a valid mapping, so the enumeration is
//! complete and visits mappings in lexicographic order.

use num_bigint::BigUint;

use crate::autgroup::UnionFind;
use crate::error::OracleError;
use crate::graph::{DegreeTriple, Graph};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    /// Cap on the number of mappings collected.
    pub max_perms: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 10,
            max_perms: 3_628_800,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleAut {
    pub automorphisms: Vec<Permutation>,
    pub order: BigUint,
    pub orbits: Vec<Vec<usize>>,
}

struct Enumerator<'a> {
    g: &'a Graph,
    h: &'a Graph,
    deg_g: Vec<DegreeTriple>,
    deg_h: Vec<DegreeTriple>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Enumerator<'a> {
    fn new(g: &'a Graph, h: &'a Graph) -> Self {
        let all: Vec<usize> = (0..g.n()).collect();
        Enumerator {
            g,
            h,
            deg_g: (0..g.n()).map(|v| g.available_degree(v, &all)).collect(),
            deg_h: (0..h.n()).map(|v| h.available_degree(v, &all)).collect(),
            image: Vec::with_capacity(g.n()),
            used: vec![false; g.n()],
        }
    }

    fn consistent(&self, v: usize, w: usize) -> bool {
        self.deg_g[v] == self.deg_h[w]
            && self.image.iter().enumerate().all(|(u, &iu)| self.g.code(u, v) == self.h.code(iu, w))
    }

    /// Calls `visit` on each complete mapping until it returns false.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let v = self.image.len();
        if v == self.g.n() {
            return visit(&self.image);
        }
        for w in 0..self.h.n() {
            if self.used[w] || !self.consistent(v, w) {
                continue;
            }
            self.used[w] = true;
            self.image.push(w);
            let go_on = self.run(visit);
            self.image.pop();
            self.used[w] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

pub fn brute_force_aut(g: &Graph) -> Result<OracleAut, OracleError> {
    brute_force_aut_with(g, OracleBudget::default())
}

pub fn brute_force_aut_with(g: &Graph, budget: OracleBudget) -> Result<OracleAut, OracleError> {
    if g.n() > budget.max_n {
        return Err(OracleError::TooManyVertices { n: g.n(), max_n: budget.max_n });
    }
    let mut autos = Vec::new();
    let mut over = false;
    Enumerator::new(g, g).run(&mut |img| {
        if autos.len() as u64 >= budget.max_perms {
            over = true;
            return false;
        }
        autos.push(Permutation::from_images(img.to_vec()).expect("enumerated bijection"));
        true
    });
    if over {
        return Err(OracleError::TooManyPermutations { max_perms: budget.max_perms });
    }
    let mut uf = UnionFind::new(g.n());
    for a in &autos {
        uf.merge_permutation(a);
    }
    Ok(OracleAut {
        order: BigUint::from(autos.len()),
        orbits: uf.classes(),
        automorphisms: autos,
    })
}

pub fn brute_force_iso(g: &Graph, h: &Graph) -> Result<Option<Permutation>, OracleError> {
    brute_force_iso_with(g, h, OracleBudget::default())
}

/// The lexicographically first isomorphism from `g` onto `h`, if any.
pub fn brute_force_iso_with(g: &Graph, h: &Graph, budget: OracleBudget) -> Result<Option<Permutation>, OracleError> {
    let n = g.n().max(h.n());
    if n > budget.max_n {
        return Err(OracleError::TooManyVertices { n, max_n: budget.max_n });
    }
    if g.n() != h.n() {
        return Ok(None);
    }
    let mut found = None;
    Enumerator::new(g, h).run(&mut |img| {
        found = Some(Permutation::from_images(img.to_vec()).expect("enumerated bijection"));
        false
    });
    Ok(found)
}
