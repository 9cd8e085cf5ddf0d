//! Plain-text edge lists and graph spec strings.
//!
//! An edge list starts with a header line `n m` followed by `m` lines `u v`
//! with `0 <= u, v < n`. Blank lines and lines starting with `#` are ignored.
//! Vertex pairs are written once each with `u < v`, in sorted order.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use jigsaw_core::generators::{
    complete_graph, cycle_puzzle, erdos_renyi, path_puzzle, power_law_people,
    random_tree_puzzle, star_puzzle, torus_puzzle,
};
use jigsaw_core::{Graph, Seed};

use crate::error::{Error, Result};

pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", graph.vertex_count(), graph.edge_count())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

fn parse_pair(line: &str, lineno: usize, what: &str) -> Result<(usize, usize)> {
    let parse_err = |msg: String| Error::Parse { line: lineno, msg };
    let mut it = line.split_whitespace();
    let mut next = |name: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(format!("expected {what}, missing {name}")))?;
        tok.parse()
            .map_err(|_| parse_err(format!("{name} `{tok}` is not a non-negative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(parse_err(format!("unexpected trailing field `{extra}`")));
    }
    Ok((a, b))
}

/// Reads an edge list. Errors carry the 1-based line number.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, line) in input.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            msg: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match header {
            None => header = Some(parse_pair(trimmed, lineno, "header `n m`")?),
            Some((n, m)) => {
                let (u, v) = parse_pair(trimmed, lineno, "edge `u v`")?;
                if u >= n || v >= n {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("edge ({u}, {v}) has an endpoint outside 0..{n}"),
                    });
                }
                if edges.len() == m {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("more than the {m} edges announced in the header"),
                    });
                }
                edges.push((u, v));
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: last_line.max(1),
        msg: "missing `n m` header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line.max(1),
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Ok(Graph::from_edges(n, edges)?)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).map_err(io_err(path))?;
    read_edge_list(BufReader::new(file))
}

pub fn save_graph(graph: &Graph, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    write_edge_list(graph, BufWriter::new(file)).map_err(io_err(path))
}

/// Loads a puzzle graph from a file, rejecting disconnected ones.
pub fn puzzle_from_file(path: &Path) -> Result<Graph> {
    let g = load_graph(path)?;
    ensure_connected(g)
}

fn ensure_connected(g: Graph) -> Result<Graph> {
    match g.component_count() {
        0 | 1 => Ok(g),
        components => Err(jigsaw_core::Error::DisconnectedPuzzle { components }.into()),
    }
}

/// A graph given either by a generator string or by an edge-list file.
///
/// | string | graph |
/// |---|---|
/// | `cycle:N`, `ring:N` | `N`-cycle (`N = 3` is the triangle) |
/// | `path:N` | path |
/// | `star:N` | star with center `N - 1` |
/// | `complete:N` | complete graph |
/// | `torus:RxC` | `R x C` wrap-around grid |
/// | `tree:N[:MAXDEG[:SEED]]` | random tree, max degree 3 and seed 0 by default |
/// | `er:N:P:SEED` | Erdős–Rényi `G(N, P)` |
/// | `powerlaw:N:GAMMA:SEED` | erased configuration model, `P(k) ∝ k^-GAMMA` |
///
/// Anything else is read as a path to an edge-list file.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    Cycle(usize),
    Path(usize),
    Star(usize),
    Complete(usize),
    Torus(usize, usize),
    Tree { n: usize, max_deg: usize, seed: u64 },
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    PowerLaw { n: usize, gamma: f64, seed: u64 },
    File(PathBuf),
}

fn field<T: FromStr>(s: &str, name: &str, spec: &str) -> std::result::Result<T, String> {
    s.parse()
        .map_err(|_| format!("bad {name} `{s}` in graph spec `{spec}`"))
}

impl FromStr for GraphSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let arity = |lo: usize, hi: usize| {
            if parts.len() < lo + 1 || parts.len() > hi + 1 {
                Err(format!("graph spec `{s}` has the wrong number of fields"))
            } else {
                Ok(())
            }
        };
        let n = || field::<usize>(parts[1], "n", s);
        let spec = match parts[0] {
            "cycle" | "ring" => {
                arity(1, 1)?;
                GraphSpec::Cycle(n()?)
            }
            "path" => {
                arity(1, 1)?;
                GraphSpec::Path(n()?)
            }
            "star" => {
                arity(1, 1)?;
                GraphSpec::Star(n()?)
            }
            "complete" => {
                arity(1, 1)?;
                GraphSpec::Complete(n()?)
            }
            "torus" => {
                arity(1, 1)?;
                let (r, c) = parts[1]
                    .split_once('x')
                    .ok_or_else(|| format!("torus spec `{s}` must look like torus:RxC"))?;
                GraphSpec::Torus(field(r, "rows", s)?, field(c, "cols", s)?)
            }
            "tree" => {
                arity(1, 3)?;
                GraphSpec::Tree {
                    n: n()?,
                    max_deg: parts.get(2).map_or(Ok(3), |d| field(d, "max degree", s))?,
                    seed: parts.get(3).map_or(Ok(0), |d| field(d, "seed", s))?,
                }
            }
            "er" => {
                arity(3, 3)?;
                GraphSpec::ErdosRenyi {
                    n: n()?,
                    p: field(parts[2], "p", s)?,
                    seed: field(parts[3], "seed", s)?,
                }
            }
            "powerlaw" => {
                arity(3, 3)?;
                GraphSpec::PowerLaw {
                    n: n()?,
                    gamma: field(parts[2], "gamma", s)?,
                    seed: field(parts[3], "seed", s)?,
                }
            }
            _ => GraphSpec::File(PathBuf::from(s)),
        };
        Ok(spec)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GraphSpec::Path(n) => write!(f, "path:{n}"),
            GraphSpec::Star(n) => write!(f, "star:{n}"),
            GraphSpec::Complete(n) => write!(f, "complete:{n}"),
            GraphSpec::Torus(r, c) => write!(f, "torus:{r}x{c}"),
            GraphSpec::Tree { n, max_deg, seed } => write!(f, "tree:{n}:{max_deg}:{seed}"),
            GraphSpec::ErdosRenyi { n, p, seed } => write!(f, "er:{n}:{p}:{seed}"),
            GraphSpec::PowerLaw { n, gamma, seed } => write!(f, "powerlaw:{n}:{gamma}:{seed}"),
            GraphSpec::File(path) => write!(f, "{}", path.display()),
        }
    }
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        let g = match *self {
            GraphSpec::Cycle(n) => cycle_puzzle(n)?,
            GraphSpec::Path(n) => path_puzzle(n)?,
            GraphSpec::Star(n) => star_puzzle(n)?,
            GraphSpec::Complete(n) => complete_graph(n),
            GraphSpec::Torus(r, c) => torus_puzzle(r, c)?,
            GraphSpec::Tree { n, max_deg, seed } => random_tree_puzzle(n, max_deg, Seed::new(seed, 0))?,
            GraphSpec::ErdosRenyi { n, p, seed } => erdos_renyi(n, p, Seed::new(seed, 0))?,
            GraphSpec::PowerLaw { n, gamma, seed } => power_law_people(n, gamma, Seed::new(seed, 0))?,
            GraphSpec::File(ref path) => load_graph(path)?,
        };
        Ok(g)
    }

    /// Builds the graph and requires it to be connected.
    pub fn build_puzzle(&self) -> Result<Graph> {
        ensure_connected(self.build()?)
    }
}
