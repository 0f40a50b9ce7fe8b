//! Input parsing and report rendering for the `symseq` command.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use serde_json::{json, Value};
use thiserror::Error;

use symseq::autgroup::{orbits, GeneratorSource};
use symseq::families::FamilySpec;
use symseq::isotest::{analyze, are_isomorphic, Verdict};
use symseq::oracle::{brute_force_aut, brute_force_iso};
use symseq::{AdjCode, FamilyError, Graph, GraphError, OracleError, Permutation};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses DIMACS edge format. `e u v` is an undirected edge and `a u v` an
/// arc from `u` to `v`; vertices are numbered from 1.
pub fn parse_dimacs(text: &str) -> Result<Graph, CliError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut lines_seen = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut words = raw.split_whitespace();
        let Some(tag) = words.next() else { continue };
        let number = |words: &mut std::str::SplitWhitespace<'_>, what: &str| -> Result<usize, CliError> {
            let w = words.next().ok_or_else(|| parse_err(line, format!("missing {what}")))?;
            w.parse().map_err(|_| parse_err(line, format!("bad {what} {w:?}")))
        };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                match words.next() {
                    Some("edge") | Some("col") => {}
                    other => return Err(parse_err(line, format!("unsupported problem type {other:?}"))),
                }
                let n = number(&mut words, "vertex count")?;
                let m = number(&mut words, "edge count")?;
                if n == 0 {
                    return Err(parse_err(line, "graph must have at least one vertex"));
                }
                header = Some((n, m, line));
            }
            "e" | "a" => {
                let (n, _, _) = header.ok_or_else(|| parse_err(line, "edge before problem line"))?;
                let u = number(&mut words, "source vertex")?;
                let v = number(&mut words, "target vertex")?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(parse_err(line, format!("vertex {x} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_err(line, format!("self-loop on vertex {u}")));
                }
                arcs.push((u - 1, v - 1));
                if tag == "e" {
                    arcs.push((v - 1, u - 1));
                }
                lines_seen += 1;
            }
            other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
        if words.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let (n, m, header_line) = header.ok_or_else(|| parse_err(text.lines().count().max(1), "missing problem line"))?;
    if m != lines_seen {
        return Err(parse_err(header_line, format!("declared {m} edges but found {lines_seen}")));
    }
    Ok(Graph::from_arcs(n, arcs)?)
}

/// Writes `g` in the format read by [`parse_dimacs`]: `e` lines for
/// symmetric pairs and `a` lines for one-way arcs.
pub fn to_dimacs(g: &Graph) -> String {
    let mut body = String::new();
    let mut m = 0;
    for u in 0..g.n() {
        for v in 0..g.n() {
            let code = g.code(u, v);
            if code == AdjCode::BOTH && u < v {
                writeln!(body, "e {} {}", u + 1, v + 1).unwrap();
                m += 1;
            } else if code == AdjCode::OUT {
                writeln!(body, "a {} {}", u + 1, v + 1).unwrap();
                m += 1;
            }
        }
    }
    format!("p edge {} {m}\n{body}", g.n())
}

/// A graph together with the file path or family string it came from.
#[derive(Clone, Debug)]
pub struct InputDocument {
    pub source: String,
    pub graph: Graph,
}

pub fn load_input(source: &str) -> Result<InputDocument, CliError> {
    let graph = if source.starts_with(FamilySpec::PREFIX) {
        source.parse::<FamilySpec>()?.build()?
    } else {
        let text = std::fs::read_to_string(Path::new(source)).map_err(|e| CliError::Io {
            path: source.to_string(),
            source: e,
        })?;
        parse_dimacs(&text)?
    };
    Ok(InputDocument {
        source: source.to_string(),
        graph,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OutputOptions {
    pub json: bool,
    pub oracle: bool,
    pub mapping: bool,
}

#[derive(Clone, Debug)]
pub struct AutReport {
    pub order: BigUint,
    pub generators: Vec<Permutation>,
    pub orbits: Vec<Vec<usize>>,
    pub stats: Value,
}

fn big_number(x: &BigUint) -> Value {
    serde_json::from_str(&x.to_string()).expect("decimal integer is valid JSON")
}

/// One automorphism per (first moved point, its image) pair, taken in
/// enumeration order. These coset representatives generate the group.
fn transversal(autos: &[Permutation]) -> Vec<Permutation> {
    let mut seen = BTreeSet::new();
    autos
        .iter()
        .filter(|a| {
            (0..a.len())
                .find(|&i| a.apply(i) != i)
                .is_some_and(|i| seen.insert((i, a.apply(i))))
        })
        .cloned()
        .collect()
}

pub fn aut_report(g: &Graph, oracle: bool) -> Result<AutReport, CliError> {
    if oracle {
        let res = brute_force_aut(g)?;
        return Ok(AutReport {
            generators: transversal(&res.automorphisms),
            stats: json!({ "method": "oracle", "automorphisms": res.automorphisms.len() }),
            order: res.order,
            orbits: res.orbits,
        });
    }
    let analysis = analyze(g);
    let aut = &analysis.aut;
    let twins = aut.sources.iter().filter(|s| matches!(s, GeneratorSource::Twins { .. })).count();
    let stats = json!({
        "method": "search",
        "depth": analysis.seq.depth(),
        "backtracking_levels": analysis.seq.levels.iter().filter(|l| l.is_backtracking || l.removed).count(),
        "remaining_backtracking_levels": analysis.remaining_backtracking_points(),
        "nodes": aut.stats.search.nodes,
        "backtracks": aut.stats.search.backtracks,
        "pruned": aut.stats.search.pruned,
        "memo_hits": aut.stats.search.memo_hits,
        "replays": aut.stats.replays,
        "failures": aut.stats.failures,
        "truncated_generators": aut.stats.truncated_generators,
        "twin_generators": twins,
    });
    Ok(AutReport {
        order: aut.order.clone(),
        generators: aut.generators.clone(),
        orbits: orbits(aut),
        stats,
    })
}

pub fn render_aut(report: &AutReport, json_output: bool) -> String {
    if json_output {
        let doc = json!({
            "order": big_number(&report.order),
            "generators": report.generators.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
            "orbits": report.orbits,
            "stats": report.stats,
        });
        return serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    }
    let mut out = String::new();
    writeln!(out, "order {}", report.order).unwrap();
    writeln!(out, "generators {}", report.generators.len()).unwrap();
    for p in &report.generators {
        writeln!(out, "{p}").unwrap();
    }
    writeln!(out, "orbits {}", report.orbits.len()).unwrap();
    for orbit in &report.orbits {
        let words: Vec<String> = orbit.iter().map(usize::to_string).collect();
        writeln!(out, "{}", words.join(" ")).unwrap();
    }
    out
}

pub fn cmd_aut(source: &str, opts: OutputOptions) -> Result<String, CliError> {
    let doc = load_input(source)?;
    Ok(render_aut(&aut_report(&doc.graph, opts.oracle)?, opts.json))
}

#[derive(Clone, Debug)]
pub struct IsoReport {
    pub mapping: Option<Permutation>,
    pub stats: Value,
}

impl IsoReport {
    pub fn is_isomorphic(&self) -> bool {
        self.mapping.is_some()
    }
}

pub fn iso_report(g: &Graph, h: &Graph, oracle: bool) -> Result<IsoReport, CliError> {
    if oracle {
        return Ok(IsoReport {
            mapping: brute_force_iso(g, h)?,
            stats: json!({ "method": "oracle" }),
        });
    }
    let out = are_isomorphic(g, h);
    debug_assert_eq!(out.verdict == Verdict::Isomorphic, out.mapping.is_some());
    let s = &out.stats;
    let stats = json!({
        "method": "search",
        "quick_reject": s.quick_reject,
        "second_analyzed": s.second_analyzed,
        "target": s.target.map(|t| format!("{t:?}").to_lowercase()),
        "aut_nodes": s.aut_nodes,
        "nodes": s.matching.nodes,
        "backtracks": s.matching.backtracks,
        "pruned": s.matching.pruned,
        "memo_hits": s.matching.memo_hits,
    });
    Ok(IsoReport {
        mapping: out.mapping,
        stats,
    })
}

pub fn render_iso(report: &IsoReport, opts: OutputOptions) -> String {
    if opts.json {
        let doc = json!({
            "isomorphic": report.is_isomorphic(),
            "mapping": report.mapping.as_ref().map(|m| m.images().to_vec()),
            "stats": report.stats,
        });
        return serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    }
    let Some(m) = &report.mapping else {
        return "non-isomorphic\n".to_string();
    };
    let mut out = String::from("isomorphic\n");
    if opts.mapping {
        for (u, &v) in m.images().iter().enumerate() {
            writeln!(out, "{u} -> {v}").unwrap();
        }
    }
    out
}

/// Returns the rendered report and whether the graphs are isomorphic.
pub fn cmd_iso(first: &str, second: &str, opts: OutputOptions) -> Result<(String, bool), CliError> {
    let g = load_input(first)?;
    let h = load_input(second)?;
    let report = iso_report(&g.graph, &h.graph, opts.oracle)?;
    Ok((render_iso(&report, opts), report.is_isomorphic()))
}
