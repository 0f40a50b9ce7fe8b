//! Deterministic generators for benchmark graph families.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::FamilyError;
use crate::graph::{AdjCode, Graph};

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Nonzero squares modulo `q`, as a membership table.
fn quadratic_residues(q: u64) -> Vec<bool> {
    let mut qr = vec![false; q as usize];
    for x in 1..q {
        qr[((x * x) % q) as usize] = true;
    }
    qr
}

fn check_prime(q: u64, residue: u64) -> Result<(), FamilyError> {
    if !is_prime(q) {
        return Err(FamilyError::NotPrime(q));
    }
    if q % 4 != residue {
        return Err(FamilyError::WrongResidue { q, expected: residue });
    }
    Ok(())
}

/// Arc `u -> v` iff `v - u` is a nonzero square mod `q`; needs `q ≡ 3 (mod 4)`.
pub fn paley_tournament(q: u64) -> Result<Graph, FamilyError> {
    check_prime(q, 3)?;
    let qr = quadratic_residues(q);
    let n = q as usize;
    let arcs = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v && qr[(v + n - u) % n]);
    Ok(Graph::from_arcs(n, arcs.collect::<Vec<_>>())?)
}

/// Undirected Paley graph; needs `q ≡ 1 (mod 4)`.
pub fn paley_graph(q: u64) -> Result<Graph, FamilyError> {
    check_prime(q, 1)?;
    let qr = quadratic_residues(q);
    let n = q as usize;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| qr[v - u])
        .collect();
    Ok(Graph::from_edges(n, edges)?)
}

/// Latin square graph of the Cayley table of `Z_n`: cells are adjacent when
/// they share a row, a column or a symbol.
pub fn latin_square_graph(n: usize) -> Result<Graph, FamilyError> {
    if n < 2 {
        return Err(FamilyError::InvalidParameter(format!("latin square order {n} < 2")));
    }
    let cell = |i: usize| (i / n, i % n, (i / n + i % n) % n);
    let edges: Vec<_> = (0..n * n)
        .flat_map(|a| (a + 1..n * n).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            let (ra, ca, sa) = cell(a);
            let (rb, cb, sb) = cell(b);
            ra == rb || ca == cb || sa == sb
        })
        .collect();
    Ok(Graph::from_edges(n * n, edges)?)
}

/// `m` disjoint copies of `component`; every pair of vertices in different
/// copies gets `join_code` (read from the lower copy to the higher one).
pub fn component_join(component: &Graph, m: usize, join_code: AdjCode) -> Result<Graph, FamilyError> {
    if m == 0 {
        return Err(FamilyError::InvalidParameter("component_join needs m >= 1".into()));
    }
    let c = component.n();
    let mut g = Graph::empty(c * m)?;
    for copy in 0..m {
        for u in 0..c {
            for v in 0..c {
                if u != v {
                    g.set_code(copy * c + u, copy * c + v, component.code(u, v));
                }
            }
        }
    }
    if join_code != AdjCode::NONE {
        for u in 0..c * m {
            for v in (u / c + 1) * c..c * m {
                g.set_code(u, v, join_code);
            }
        }
    }
    Ok(g)
}

/// Random graph where each ordered pair (each unordered pair when
/// `directed` is false) gets an arc with probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64, directed: bool) -> Result<Graph, FamilyError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(FamilyError::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.gen_bool(p) {
                arcs.push((u, v));
                if !directed {
                    arcs.push((v, u));
                }
            }
        }
    }
    Ok(Graph::from_arcs(n, arcs)?)
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    Ok(Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect::<Vec<_>>())?)
}

pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(FamilyError::InvalidParameter(format!("cycle length {n} < 3")));
    }
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())?)
}

pub fn directed_cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 2 {
        return Err(FamilyError::InvalidParameter(format!("cycle length {n} < 2")));
    }
    Ok(Graph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())?)
}

pub fn path(n: usize) -> Result<Graph, FamilyError> {
    Ok(Graph::from_edges(n, (1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())?)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("valid edges")
}

/// A family member named by a `family:<name>[:<params>[:<seed>]]` string,
/// with comma-separated parameters.
///
/// `component_join` takes the inner family and its parameters followed by
/// the number of copies and the join code, e.g.
/// `family:component_join:paley_graph,13,4,3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub params: Vec<String>,
    pub seed: Option<u64>,
}

impl FamilySpec {
    pub const PREFIX: &'static str = "family:";

    pub fn build(&self) -> Result<Graph, FamilyError> {
        build_named(&self.name, &self.params, self.seed.unwrap_or(0))
    }
}

fn param<T: FromStr>(params: &[String], i: usize, what: &str) -> Result<T, FamilyError> {
    params
        .get(i)
        .ok_or_else(|| FamilyError::InvalidParameter(format!("missing parameter {what}")))?
        .trim()
        .parse()
        .map_err(|_| FamilyError::InvalidParameter(format!("bad value for {what}: {}", params[i])))
}

fn build_named(name: &str, params: &[String], seed: u64) -> Result<Graph, FamilyError> {
    match name {
        "paley_tournament" => paley_tournament(param(params, 0, "q")?),
        "paley_graph" => paley_graph(param(params, 0, "q")?),
        "latin_square" => latin_square_graph(param(params, 0, "n")?),
        "complete" => complete(param(params, 0, "n")?),
        "cycle" => cycle(param(params, 0, "n")?),
        "directed_cycle" => directed_cycle(param(params, 0, "n")?),
        "path" => path(param(params, 0, "n")?),
        "empty" => Ok(Graph::empty(param(params, 0, "n")?)?),
        "petersen" => Ok(petersen()),
        "random" => {
            let directed = match params.get(2) {
                Some(_) => param::<u8>(params, 2, "directed")? != 0,
                None => false,
            };
            random_graph(param(params, 0, "n")?, param(params, 1, "p")?, seed, directed)
        }
        "component_join" => {
            if params.len() < 3 {
                return Err(FamilyError::InvalidParameter("component_join needs <family>,...,<m>,<code>".into()));
            }
            let k = params.len();
            let m: usize = param(params, k - 2, "m")?;
            let code: u8 = param(params, k - 1, "join code")?;
            let code = AdjCode::new(code).ok_or_else(|| FamilyError::InvalidParameter(format!("join code {code}")))?;
            let inner = build_named(&params[0], &params[1..k - 2], seed)?;
            component_join(&inner, m, code)
        }
        other => Err(FamilyError::InvalidParameter(format!("unknown family {other}"))),
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rest = s
            .strip_prefix(Self::PREFIX)
            .ok_or_else(|| FamilyError::InvalidParameter(format!("missing {} prefix", Self::PREFIX)))?;
        let mut parts = rest.split(':');
        let name = parts.next().unwrap_or_default().to_string();
        if name.is_empty() {
            return Err(FamilyError::InvalidParameter("empty family name".into()));
        }
        let params = match parts.next() {
            Some(p) if !p.is_empty() => p.split(',').map(str::to_string).collect(),
            _ => Vec::new(),
        };
        let seed = match parts.next() {
            Some(s) => Some(s.parse().map_err(|_| FamilyError::InvalidParameter(format!("bad seed {s}")))?),
            None => None,
        };
        if parts.next().is_some() {
            return Err(FamilyError::InvalidParameter(format!("too many fields in {s}")));
        }
        Ok(FamilySpec { name, params, seed })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", Self::PREFIX, self.name)?;
        if !self.params.is_empty() || self.seed.is_some() {
            write!(f, ":{}", self.params.join(","))?;
        }
        if let Some(seed) = self.seed {
            write!(f, ":{seed}")?;
        }
        Ok(())
    }
}
