//! Test-only oracles, independent of the library's algorithms.
#![allow(dead_code)]

use std::collections::BTreeSet;

use jigsaw_core::Graph;

/// Dense adjacency matrix copy of a graph.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

pub type Partition = BTreeSet<BTreeSet<usize>>;

fn components_of(k: usize, linked: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for s in 0..k {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            for y in 0..k {
                if !seen[y] && linked(x, y) {
                    seen[y] = true;
                    comp.push(y);
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

fn to_partition(clusters: &[Vec<usize>]) -> Partition {
    clusters.iter().map(|c| c.iter().copied().collect()).collect()
}

/// Reference dynamics: recomputes every cluster-pair relation from scratch
/// each round, no union-find. `adjacent_edge` selects the stricter rule.
/// Returns `(solved, N, final partition)`.
pub fn naive_run(people: &Graph, puzzle: &Graph, adjacent_edge: bool) -> (bool, usize, Partition) {
    let n = people.vertex_count();
    let pe = matrix(people);
    let pz = matrix(puzzle);
    let mut history: Vec<Partition> = Vec::new();
    let c0: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    history.push(to_partition(&c0));
    let mut clusters = components_of(n, |u, v| pe[u][v] && pz[u][v]);
    history.push(to_partition(&clusters));
    loop {
        let k = clusters.len();
        let mergeable = |i: usize, j: usize| -> bool {
            if i == j {
                return false;
            }
            let (a, b) = (&clusters[i], &clusters[j]);
            if adjacent_edge {
                let one_way = |x: &Vec<usize>, y: &Vec<usize>| {
                    x.iter().any(|&u| {
                        y.iter().any(|&w| pz[u][w]) && y.iter().any(|&w| pe[u][w])
                    })
                };
                one_way(a, b) || one_way(b, a)
            } else {
                let people_adj = a.iter().any(|&u| b.iter().any(|&w| pe[u][w]));
                let puzzle_adj = a.iter().any(|&u| b.iter().any(|&w| pz[u][w]));
                people_adj && puzzle_adj
            }
        };
        let groups = components_of(k, mergeable);
        let next: Vec<Vec<usize>> = groups
            .iter()
            .map(|g| g.iter().flat_map(|&i| clusters[i].iter().copied()).collect())
            .collect();
        let done = next.len() == clusters.len();
        clusters = next;
        history.push(to_partition(&clusters));
        if done {
            break;
        }
    }
    let rounds = (0..history.len() - 1)
        .find(|&i| history[i] == history[i + 1])
        .expect("history ends at a fixed point");
    let last = history.pop().unwrap();
    (last.len() == 1, rounds, last)
}

/// Partition as a set of sets, from clusters.
pub fn partition(clusters: Vec<Vec<usize>>) -> Partition {
    to_partition(&clusters)
}

/// All graphs on `n` vertices, one per subset of the C(n,2) pairs.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

/// Every labeled tree on `n >= 1` vertices, decoded from Prüfer sequences.
pub fn all_labeled_trees(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::empty(1)];
    }
    if n == 2 {
        return vec![Graph::from_edges(2, [(0, 1)]).unwrap()];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut seq = vec![0usize; len];
    for code in 0..total {
        let mut c = code;
        for s in seq.iter_mut() {
            *s = c % n;
            c /= n;
        }
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(Graph::from_edges(n, edges).unwrap());
    }
    out
}

/// Independent check of the block-partition properties. Returns a message
/// naming the first violated property.
pub fn check_blocks(graph: &Graph, m: usize, blocks: &[Vec<usize>]) -> Result<(), String> {
    let n = graph.vertex_count();
    let k = blocks.len();
    let a = matrix(graph);
    let union: BTreeSet<usize> = blocks.iter().flatten().copied().collect();
    if union != (0..n).collect() {
        return Err("cover".into());
    }
    for (i, b) in blocks.iter().enumerate() {
        let s = b.len();
        let ok = if i + 1 < k { m <= s && s <= 2 * m } else { 1 <= s && s < 2 * m };
        if !ok {
            return Err(format!("size window: block {i} has {s} (m = {m}, k = {k})"));
        }
        let comps = components_of(s, |x, y| a[b[x]][b[y]]);
        if comps.len() != 1 {
            return Err(format!("block {i} induces a disconnected subgraph"));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let bi: BTreeSet<_> = blocks[i].iter().collect();
            let shared = blocks[j].iter().filter(|v| bi.contains(v)).count();
            if shared > 1 {
                return Err(format!("overlap: blocks {i},{j} share {shared}"));
            }
        }
    }
    if (k as f64) < n as f64 / (2.0 * m as f64) {
        return Err(format!("count: k = {k} < n/2m"));
    }
    Ok(())
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 60)
}

/// `-∫₀ˣ log(1 - e^{-t}) dt` by quadrature after substituting `t = s²`, which
/// removes the logarithmic singularity at 0.
pub fn theta_by_quadrature(x: f64) -> f64 {
    let g = |s: f64| {
        if s == 0.0 {
            0.0
        } else {
            -2.0 * s * (-(-(s * s)).exp_m1()).ln()
        }
    };
    adaptive_simpson(&g, 0.0, x.sqrt(), 1e-14)
}
