use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Blocks `B_1..B_k` covering a connected graph, each inducing a connected
/// subgraph, with `|B_i| ∈ [m, 2m]` for `i < k`, `1 <= |B_k| < 2m`, pairwise
/// overlaps of at most one vertex and `k >= n / (2m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    pub m: usize,
    /// Each block sorted ascending, in construction order.
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlockViolation {
    #[error("vertex {0} is in no block")]
    Uncovered(usize),
    #[error("block {index} has size {size} outside its allowed window")]
    Size { index: usize, size: usize },
    #[error("block {0} does not induce a connected subgraph")]
    Disconnected(usize),
    #[error("blocks {0} and {1} share more than one vertex")]
    Overlap(usize, usize),
    #[error("{blocks} blocks is fewer than n / 2m")]
    TooFew { blocks: usize },
}

impl BlockPartition {
    /// Checks every structural property against `graph`.
    pub fn verify(&self, graph: &Graph) -> Result<(), BlockViolation> {
        let n = graph.vertex_count();
        let m = self.m;
        let k = self.blocks.len();
        let mut covered = alloc::vec![false; n];
        for b in &self.blocks {
            for &v in b {
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(BlockViolation::Uncovered(v));
        }
        for (i, b) in self.blocks.iter().enumerate() {
            let size = b.len();
            let ok = if i + 1 < k {
                (m..=2 * m).contains(&size)
            } else {
                size >= 1 && size < 2 * m
            };
            if !ok {
                return Err(BlockViolation::Size { index: i, size });
            }
            let induced = graph
                .induced_subgraph(b)
                .map_err(|_| BlockViolation::Disconnected(i))?;
            if !induced.is_connected() {
                return Err(BlockViolation::Disconnected(i));
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let shared = self.blocks[i]
                    .iter()
                    .filter(|v| self.blocks[j].binary_search(v).is_ok())
                    .count();
                if shared > 1 {
                    return Err(BlockViolation::Overlap(i, j));
                }
            }
        }
        if 2 * m * k < n {
            return Err(BlockViolation::TooFew { blocks: k });
        }
        Ok(())
    }
}

/// Spanning tree of a connected graph by depth-first search from vertex 0,
/// visiting neighbors in ascending order. Returns `(parent, preorder)`.
fn dfs_tree(graph: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n = graph.vertex_count();
    let mut parent = alloc::vec![usize::MAX; n];
    let mut seen = alloc::vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(usize, usize)> = alloc::vec![(0, 0)];
    seen[0] = true;
    order.push(0);
    while let Some(top) = stack.last_mut() {
        let (v, next) = *top;
        match graph.neighbors(v).get(next) {
            Some(&w) => {
                top.1 += 1;
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    order.push(w);
                    stack.push((w, 0));
                }
            }
            None => {
                stack.pop();
            }
        }
    }
    (parent, order)
}

/// Splits a connected graph into blocks by repeatedly cutting subtrees off a
/// DFS spanning tree rooted at vertex 0.
///
/// Starting at the root `v`, look at the subtrees hanging below `v` (ordered
/// by smallest member):
/// 1. if one has size in `[m, 2m]`, it becomes a block and is removed;
/// 2. if all are smaller than `m`, the shortest prefix reaching total size
///    `m` plus `v` itself becomes a block, and the prefix is removed (`v`
///    stays and may appear in later blocks);
/// 3. otherwise descend into the first subtree larger than `2m` and repeat.
///
/// Once fewer than `2m` vertices remain they form the last block.
pub fn block_partition(graph: &Graph, m: usize) -> Result<BlockPartition> {
    if m < 1 {
        return Err(invalid!("block size parameter m must be at least 1"));
    }
    let n = graph.vertex_count();
    if n == 0 {
        return Err(invalid!("cannot partition an empty graph"));
    }
    let components = graph.component_count();
    if components > 1 {
        return Err(Error::DisconnectedPuzzle { components });
    }
    let (parent, preorder) = dfs_tree(graph);
    let mut children: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for &v in &preorder[1..] {
        children[parent[v]].push(v);
    }

    let mut alive = alloc::vec![true; n];
    let mut remaining = n;
    let mut size = alloc::vec![0usize; n];
    let mut min_member = alloc::vec![0usize; n];
    let mut blocks = Vec::new();

    let collect = |alive: &mut [bool], root: usize, out: &mut Vec<usize>| {
        let mut stack = alloc::vec![root];
        while let Some(u) = stack.pop() {
            alive[u] = false;
            out.push(u);
            stack.extend(children[u].iter().copied().filter(|&c| alive[c]));
        }
    };

    while remaining >= 2 * m {
        // subtree sizes and smallest members over the surviving tree; removed
        // parts are whole subtrees, so survivors keep surviving parents
        for &v in preorder.iter().rev() {
            if !alive[v] {
                continue;
            }
            size[v] = 1;
            min_member[v] = v;
            for &c in &children[v] {
                if alive[c] {
                    size[v] += size[c];
                    min_member[v] = min_member[v].min(min_member[c]);
                }
            }
        }
        let mut v = 0;
        let mut block = Vec::new();
        loop {
            let mut subtrees: Vec<usize> = children[v].iter().copied().filter(|&c| alive[c]).collect();
            subtrees.sort_by_key(|&c| min_member[c]);
            if let Some(&c) = subtrees.iter().find(|&&c| (m..=2 * m).contains(&size[c])) {
                collect(&mut alive, c, &mut block);
                break;
            }
            if subtrees.iter().all(|&c| size[c] < m) {
                let mut total = 0;
                for &c in &subtrees {
                    collect(&mut alive, c, &mut block);
                    total += size[c];
                    if total >= m {
                        break;
                    }
                }
                debug_assert!(total >= m);
                block.push(v);
                break;
            }
            v = *subtrees
                .iter()
                .find(|&&c| size[c] > 2 * m)
                .expect("some subtree exceeds 2m");
        }
        remaining = alive.iter().filter(|&&a| a).count();
        block.sort_unstable();
        blocks.push(block);
    }
    let last: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if !last.is_empty() {
        blocks.push(last);
    }
    Ok(BlockPartition { m, blocks })
}
