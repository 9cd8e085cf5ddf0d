//! Puzzle graph families and random people graphs.
//!
//! Every randomized generator is a pure function of its parameters and a
//! [`Seed`]; identical inputs give identical edge sets.

use alloc::vec::Vec;

use libm::{floor, log1p, pow};
use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::rng::{Rng, Seed};

/// The n-cycle `{i, (i + 1) mod n}`.
pub fn cycle_puzzle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid!("cycle needs n >= 3, got {n}"));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The path `0 - 1 - ... - (n-1)`.
pub fn path_puzzle(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(invalid!("path needs n >= 1"));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// Star centered at vertex `n - 1`.
pub fn star_puzzle(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(invalid!("star needs n >= 2, got {n}"));
    }
    Graph::from_edges(n, (0..n - 1).map(|i| (i, n - 1)))
}

/// Wrap-around `rows x cols` grid; vertex `(r, c)` has id `r * cols + c`.
pub fn torus_puzzle(rows: usize, cols: usize) -> Result<Graph> {
    if rows < 3 || cols < 3 {
        return Err(invalid!("torus needs both dimensions >= 3, got {rows}x{cols}"));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let edges = (0..rows).flat_map(|r| {
        (0..cols).flat_map(move |c| {
            [
                (id(r, c), id(r, (c + 1) % cols)),
                (id(r, c), id((r + 1) % rows, c)),
            ]
        })
    });
    Graph::from_edges(rows * cols, edges)
}

/// Complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Graph {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
        .collect();
    Graph::from_sorted_pairs(n, &pairs)
}

/// Random tree: vertex `i >= 1` attaches to a uniformly chosen earlier vertex
/// that still has degree below `max_deg`.
pub fn random_tree_puzzle(n: usize, max_deg: usize, seed: Seed) -> Result<Graph> {
    if n < 1 {
        return Err(invalid!("tree needs n >= 1"));
    }
    if max_deg < 2 {
        return Err(invalid!("tree needs max_deg >= 2, got {max_deg}"));
    }
    let mut rng = seed.rng();
    let mut degree = alloc::vec![0usize; n];
    // vertices with spare capacity; never empty since every new leaf has
    // degree 1 < max_deg
    let mut open: Vec<usize> = alloc::vec![0];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let slot = rng.random_range(0..open.len());
        let parent = open[slot];
        edges.push((parent, v));
        degree[parent] += 1;
        degree[v] = 1;
        if degree[parent] >= max_deg {
            open.swap_remove(slot);
        }
        open.push(v);
    }
    Graph::from_edges(n, edges)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid!("probability must lie in [0, 1], got {p}"))
    }
}

/// Visits the pairs `(w, v)`, `w < v < n`, selected independently with
/// probability `p`, by jumping geometric gaps along the pair sequence
/// `(0,1), (0,2), (1,2), (0,3), ...`.
fn for_each_selected_pair(n: usize, p: f64, rng: &mut Rng, mut visit: impl FnMut(u32, u32)) {
    if n < 2 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        for v in 1..n as u32 {
            for w in 0..v {
                visit(w, v);
            }
        }
        return;
    }
    let log_q = log1p(-p);
    let total = (n as u64) * (n as u64 - 1) / 2;
    let (mut v, mut w) = (1u64, 0u64);
    let mut first = true;
    loop {
        let r: f64 = rng.random();
        let gap = floor(log1p(-r) / log_q);
        if gap >= total as f64 {
            return;
        }
        // advance by gap + 1 positions (the first draw starts from position 0)
        w += gap as u64 + u64::from(!first);
        first = false;
        while w >= v {
            w -= v;
            v += 1;
            if v >= n as u64 {
                return;
            }
        }
        visit(w as u32, v as u32);
    }
}

/// Erdős–Rényi `G(n, p)`.
pub fn erdos_renyi(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = seed.rng();
    let mut pairs = Vec::new();
    for_each_selected_pair(n, p, &mut rng, |w, v| pairs.push((w, v)));
    pairs.sort_unstable();
    Ok(Graph::from_sorted_pairs(n, &pairs))
}

/// One draw of "a uniform per vertex pair", keeping only the pairs whose
/// uniform falls below `cap`. Thresholding at any `p <= cap` yields a `G(n, p)`
/// sample, and the samples are nested in `p`: this is the monotone coupling
/// used by sweeps.
#[derive(Debug, Clone)]
pub struct CoupledPairs {
    n: usize,
    cap: f64,
    /// `(uniform, u, v)` sorted by uniform.
    entries: Vec<(f64, u32, u32)>,
}

impl CoupledPairs {
    pub fn sample(n: usize, cap: f64, seed: Seed) -> Result<Self> {
        check_probability(cap)?;
        let mut rng = seed.rng();
        let mut entries = Vec::new();
        let mut selected = Vec::new();
        for_each_selected_pair(n, cap, &mut rng, |w, v| selected.push((w, v)));
        // conditioned on being below the cap, a uniform is uniform on [0, cap)
        for (w, v) in selected {
            let u: f64 = rng.random();
            entries.push((u * cap, w, v));
        }
        entries.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
        Ok(CoupledPairs { n, cap, entries })
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    /// Number of pairs whose uniform is below `p`.
    pub fn count_below(&self, p: f64) -> usize {
        self.entries.partition_point(|e| e.0 < p)
    }

    /// People graph at edge probability `p` (must not exceed the cap).
    pub fn graph_at(&self, p: f64) -> Result<Graph> {
        check_probability(p)?;
        if p > self.cap {
            return Err(invalid!("p = {p} exceeds the coupling cap {}", self.cap));
        }
        let mut pairs: Vec<(u32, u32)> = self.entries[..self.count_below(p)]
            .iter()
            .map(|e| (e.1, e.2))
            .collect();
        pairs.sort_unstable();
        Ok(Graph::from_sorted_pairs(self.n, &pairs))
    }
}

/// A degree per vertex, with even sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        let n = degrees.len();
        if let Some(&d) = degrees.iter().find(|&&d| d >= n.max(1)) {
            return Err(invalid!("degree {d} is not below n = {n}"));
        }
        if degrees.iter().sum::<usize>() % 2 == 1 {
            return Err(invalid!("degree sum is odd"));
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

/// I.i.d. degrees with `P(k) ∝ k^-gamma` on `{1, ..., n-1}`. An odd sum is
/// fixed by bumping one uniformly chosen degree up (or down when it is
/// already `n - 1`).
pub fn power_law_degrees(n: usize, gamma: f64, rng: &mut Rng) -> Result<DegreeSequence> {
    if !(gamma > 2.0) {
        return Err(invalid!("power-law exponent must exceed 2, got {gamma}"));
    }
    if n < 2 {
        return Err(invalid!("power-law people graph needs n >= 2, got {n}"));
    }
    let mut cumulative = Vec::with_capacity(n - 1);
    let mut total = 0.0;
    for k in 1..n {
        total += pow(k as f64, -gamma);
        cumulative.push(total);
    }
    let mut degrees: Vec<usize> = (0..n)
        .map(|_| {
            let target = rng.random::<f64>() * total;
            (cumulative.partition_point(|&c| c <= target) + 1).min(n - 1)
        })
        .collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        let i = rng.random_range(0..n);
        if degrees[i] < n - 1 {
            degrees[i] += 1;
        } else {
            degrees[i] -= 1;
        }
    }
    DegreeSequence::new(degrees)
}

/// Configuration model: shuffle the degree stubs, pair them up in order, and
/// erase self-loops and repeated edges.
pub fn configuration_model(degrees: &DegreeSequence, rng: &mut Rng) -> Graph {
    let mut stubs: Vec<usize> = degrees
        .degrees()
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| core::iter::repeat_n(v, d))
        .collect();
    stubs.shuffle(rng);
    let edges = stubs.chunks_exact(2).map(|pair| (pair[0], pair[1]));
    Graph::from_edges(degrees.degrees().len(), edges).expect("stub endpoints are in range")
}

/// Power-law people graph: [`power_law_degrees`] realized by the erased
/// [`configuration_model`]. The result approximates, but is not exactly,
/// a uniform simple graph with the drawn degrees.
pub fn power_law_people(n: usize, gamma: f64, seed: Seed) -> Result<Graph> {
    let mut rng = seed.rng();
    let degrees = power_law_degrees(n, gamma, &mut rng)?;
    Ok(configuration_model(&degrees, &mut rng))
}
