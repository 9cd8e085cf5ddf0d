//! Disjoint-set forest with union by size and path halving.

use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
    sets: usize,
}

impl DisjointSets {
    /// `n` singleton sets.
    pub fn new(n: usize) -> Self {
        assert!(n <= u32::MAX as usize, "too many elements for a u32 forest");
        DisjointSets {
            parent: (0..n as u32).collect(),
            size: alloc::vec![1; n],
            sets: n,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of disjoint sets.
    pub fn set_count(&self) -> usize {
        self.sets
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Root lookup without compression, for shared access.
    pub fn root(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    /// Size of the set containing `x`.
    pub fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r] as usize
    }

    /// Merges the sets of `a` and `b`. Returns the surviving root if they were
    /// distinct, `None` if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return None;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        Some(ra)
    }

    /// Root of every element, fully compressed.
    pub fn roots(&mut self) -> Vec<u32> {
        (0..self.len()).map(|v| self.find(v) as u32).collect()
    }

    /// Canonical labelling: sets numbered 0.. in order of their smallest member.
    pub fn canonical_labels(&mut self) -> Vec<u32> {
        let n = self.len();
        let mut label_of_root = alloc::vec![u32::MAX; n];
        let mut labels = Vec::with_capacity(n);
        let mut next = 0u32;
        for v in 0..n {
            let r = self.find(v);
            if label_of_root[r] == u32::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            labels.push(label_of_root[r]);
        }
        labels
    }

    /// Sets as sorted member lists, ordered by smallest member.
    pub fn sets(&mut self) -> Vec<Vec<usize>> {
        groups_from_labels(&self.canonical_labels())
    }
}

/// Groups vertices by canonical label (labels must be dense and first-seen
/// ordered, as produced by [`DisjointSets::canonical_labels`]).
pub(crate) fn groups_from_labels(labels: &[u32]) -> Vec<Vec<usize>> {
    let count = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut groups = alloc::vec![Vec::new(); count];
    for (v, &l) in labels.iter().enumerate() {
        groups[l as usize].push(v);
    }
    groups
}
