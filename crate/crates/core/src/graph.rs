//! Immutable undirected simple graphs.
//!
//! Adjacency is stored in compressed sparse row form: `offsets[v]..offsets[v + 1]`
//! indexes the sorted neighbor list of `v` inside `targets`.

use alloc::vec::Vec;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: alloc::vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds the simple graph spanned by `edges`. Self-loops and repeated
    /// edges (in either orientation) are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(crate::error::invalid!("vertex count {n} exceeds u32 range"));
        }
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EdgeOutOfRange { u, v, n });
            }
            if u != v {
                pairs.push((u.min(v) as u32, u.max(v) as u32));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_sorted_pairs(n, &pairs))
    }

    /// `pairs` must be sorted, deduplicated, with `u < v < n` in every pair.
    pub(crate) fn from_sorted_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        let mut degree = alloc::vec![0usize; n];
        for &(u, v) in pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = alloc::vec![0u32; offsets[n]];
        // Lexicographic pair order fills every list in ascending order: for a
        // vertex w, all smaller partners arrive (as (x, w)) before any larger
        // partner (as (w, y)).
        for &(u, v) in pairs {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        Graph { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor ids of `v`.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    /// Whether `{u, v}` is an edge. Never true for `u == v`.
    pub fn are_adjacent(&self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.has_edge(u, v))
    }

    /// Unchecked adjacency test; searches the shorter of the two lists.
    pub(crate) fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Connected components, ordered by smallest member, members ascending.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut dsu = self.component_forest();
        dsu.sets()
    }

    pub fn component_count(&self) -> usize {
        self.component_forest().set_count()
    }

    fn component_forest(&self) -> DisjointSets {
        let mut dsu = DisjointSets::new(self.vertex_count());
        for (u, v) in self.edges() {
            dsu.union(u, v);
        }
        dsu
    }

    /// True iff there is at most one component (the empty graph counts as
    /// connected).
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Subgraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    /// Ids must be valid and distinct.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let n = self.vertex_count();
        let mut local = alloc::vec![u32::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            if local[v] != u32::MAX {
                return Err(crate::error::invalid!("vertex {v} listed twice"));
            }
            local[v] = i as u32;
        }
        let mut pairs = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = local[w as usize];
                if j != u32::MAX && (i as u32) < j {
                    pairs.push((i as u32, j));
                }
            }
        }
        pairs.sort_unstable();
        Ok(Self::from_sorted_pairs(vertices.len(), &pairs))
    }

    /// Graph with the same vertices and the edges present in both graphs.
    pub fn intersection(&self, other: &Graph) -> Result<Graph> {
        if self.vertex_count() != other.vertex_count() {
            return Err(Error::SizeMismatch {
                people: self.vertex_count(),
                puzzle: other.vertex_count(),
            });
        }
        let mut pairs = Vec::new();
        for u in 0..self.vertex_count() {
            let (mut a, mut b) = (self.neighbors(u), other.neighbors(u));
            while let (Some(&x), Some(&y)) = (a.first(), b.first()) {
                if x == y {
                    if x as usize > u {
                        pairs.push((u as u32, x));
                    }
                    a = &a[1..];
                    b = &b[1..];
                } else if x < y {
                    a = &a[1..];
                } else {
                    b = &b[1..];
                }
            }
        }
        Ok(Self::from_sorted_pairs(self.vertex_count(), &pairs))
    }
}
