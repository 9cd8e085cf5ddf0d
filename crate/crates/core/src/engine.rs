//! Jigsaw percolation dynamics.
//!
//! Round 0 is the all-singletons partition. Round 1 takes the connected
//! components of the graph formed by edges present in both the people and the
//! puzzle graph. Every later round builds the graph whose vertices are the
//! current clusters and whose edges join clusters that are mergeable under the
//! [`MergeRule`], and replaces the clusters by the connected components of that
//! graph. A chain of pairwise-mergeable clusters therefore collapses in a
//! single round.
//!
//! [`JigsawInstance::run`] is the synchronous engine and the reference for
//! round counts. [`JigsawInstance::run_contraction`] contracts mergeable pairs
//! one at a time from a worklist; it reaches the same final partition but has
//! no meaningful notion of rounds.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::dsu::{groups_from_labels, DisjointSets};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// When two clusters `U` and `W` merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MergeRule {
    /// Some people edge and some puzzle edge both run between `U` and `W`.
    #[default]
    Standard,
    /// Adjacent-edge rule: the two witness edges must share an endpoint, i.e.
    /// some `u` in one cluster has both a puzzle neighbor and a people
    /// neighbor in the other cluster.
    AdjacentEdge,
}

/// People and puzzle graphs on a common vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JigsawInstance {
    people: Graph,
    puzzle: Graph,
}

/// A partition of the vertices plus the round that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterState {
    sets: DisjointSets,
    round: usize,
}

/// Summary of a finished run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub solved: bool,
    /// Smallest `i` with `C_i = C_{i+1}`; `None` from the contraction engine.
    pub rounds: Option<usize>,
    pub final_cluster_count: usize,
    pub largest_cluster: usize,
    /// cluster size -> number of clusters of that size
    pub histogram: BTreeMap<usize, usize>,
    /// Final cluster of each vertex, numbered by smallest member.
    pub labels: Vec<u32>,
}

impl TrialOutcome {
    fn from_sets(sets: &mut DisjointSets, rounds: Option<usize>) -> Self {
        let labels = sets.canonical_labels();
        let count = sets.set_count();
        let mut sizes = alloc::vec![0usize; count];
        for &l in &labels {
            sizes[l as usize] += 1;
        }
        let mut histogram = BTreeMap::new();
        for &s in &sizes {
            *histogram.entry(s).or_insert(0) += 1;
        }
        TrialOutcome {
            solved: count == 1,
            rounds,
            final_cluster_count: count,
            largest_cluster: sizes.iter().copied().max().unwrap_or(0),
            histogram,
            labels,
        }
    }

    /// Final clusters, ordered by smallest member.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        groups_from_labels(&self.labels)
    }
}

impl ClusterState {
    /// Round 0: every vertex alone.
    pub fn singletons(n: usize) -> Self {
        ClusterState {
            sets: DisjointSets::new(n),
            round: 0,
        }
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn cluster_count(&self) -> usize {
        self.sets.set_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.sets.len()
    }

    /// Clusters ordered by smallest member, members ascending.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        self.sets.clone().sets()
    }

    /// Whether `u` and `v` share a cluster.
    pub fn same_cluster(&self, u: usize, v: usize) -> bool {
        self.sets.root(u) == self.sets.root(v)
    }
}

#[inline]
fn ordered(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn edge_list(g: &Graph) -> Vec<(u32, u32)> {
    g.edges().map(|(u, v)| (u as u32, v as u32)).collect()
}

/// One synchronous round under the standard rule. The edge lists are pruned
/// of edges that have become internal to a cluster; pruning never changes
/// which cluster pairs are adjacent.
fn standard_round(
    sets: &mut DisjointSets,
    people: &mut Vec<(u32, u32)>,
    puzzle: &mut Vec<(u32, u32)>,
) -> bool {
    let labels = sets.roots();
    let crosses = |&(u, v): &(u32, u32)| labels[u as usize] != labels[v as usize];
    people.retain(crosses);
    puzzle.retain(crosses);
    let (keyed, scanned) = if people.len() <= puzzle.len() {
        (&*people, &*puzzle)
    } else {
        (&*puzzle, &*people)
    };
    let mut adjacent: Vec<(u32, u32)> = keyed
        .iter()
        .map(|&(u, v)| ordered(labels[u as usize], labels[v as usize]))
        .collect();
    adjacent.sort_unstable();
    adjacent.dedup();
    let before = sets.set_count();
    for &(u, v) in scanned {
        let key = ordered(labels[u as usize], labels[v as usize]);
        if adjacent.binary_search(&key).is_ok() {
            // labels are a snapshot, so this joins the two whole clusters as
            // they stood at the start of the round
            sets.union(u as usize, v as usize);
        }
    }
    sets.set_count() < before
}

/// One synchronous round under the adjacent-edge rule.
fn adjacent_edge_round(sets: &mut DisjointSets, people: &Graph, puzzle: &Graph) -> bool {
    let labels = sets.roots();
    let before = sets.set_count();
    let mut fits: Vec<u32> = Vec::new();
    for u in 0..labels.len() {
        let own = labels[u];
        fits.clear();
        fits.extend(
            puzzle
                .neighbors(u)
                .iter()
                .map(|&w| labels[w as usize])
                .filter(|&l| l != own),
        );
        if fits.is_empty() {
            continue;
        }
        fits.sort_unstable();
        fits.dedup();
        for &w in people.neighbors(u) {
            let l = labels[w as usize];
            if l != own && fits.binary_search(&l).is_ok() {
                sets.union(u, w as usize);
            }
        }
    }
    sets.set_count() < before
}

/// Replaces a cluster's neighbor list by the sorted distinct roots of other
/// clusters it touches.
fn canonicalize(sets: &mut DisjointSets, list: &mut Vec<u32>, own: usize) {
    for x in list.iter_mut() {
        *x = sets.find(*x as usize) as u32;
    }
    list.retain(|&x| x as usize != own);
    list.sort_unstable();
    list.dedup();
}

/// Pushes every entry common to two sorted lists.
fn intersect_sorted(a: &[u32], b: &[u32], out: &mut Vec<usize>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Equal => {
                out.push(a[i] as usize);
                i += 1;
                j += 1;
            }
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
        }
    }
}

/// Appends the neighbor lists of `gone` to those of `kept`, moving the
/// shorter list into the longer one.
fn absorb_lists(lists: &mut [Vec<u32>], kept: usize, gone: usize) {
    let mut keep = core::mem::take(&mut lists[kept]);
    let mut other = core::mem::take(&mut lists[gone]);
    if keep.len() < other.len() {
        core::mem::swap(&mut keep, &mut other);
    }
    keep.extend(other);
    lists[kept] = keep;
}

/// Standard-rule rounds after round 1, up to the fixed point; returns how many
/// of them merged something.
///
/// Two clusters that both survive a round unchanged stay non-mergeable, since
/// they were already compared when the younger of them formed. So each round
/// only examines the clusters formed in the previous one, against a snapshot
/// of the partition taken before any of its merges.
fn standard_rounds(sets: &mut DisjointSets, people: &Graph, puzzle: &Graph) -> usize {
    let n = sets.len();
    let mut people_lists: Vec<Vec<u32>> = (0..n).map(|v| people.neighbors(v).to_vec()).collect();
    let mut puzzle_lists: Vec<Vec<u32>> = (0..n).map(|v| puzzle.neighbors(v).to_vec()).collect();
    for v in 0..n {
        let r = sets.find(v);
        if r != v {
            absorb_lists(&mut people_lists, r, v);
            absorb_lists(&mut puzzle_lists, r, v);
        }
    }
    let mut fresh = sets.roots();
    fresh.sort_unstable();
    fresh.dedup();
    let mut fresh: Vec<usize> = fresh.into_iter().map(|r| r as usize).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut partners = Vec::new();
    let mut merging = 0;
    while sets.set_count() > 1 {
        pairs.clear();
        for &c in &fresh {
            canonicalize(sets, &mut people_lists[c], c);
            canonicalize(sets, &mut puzzle_lists[c], c);
            partners.clear();
            intersect_sorted(&people_lists[c], &puzzle_lists[c], &mut partners);
            pairs.extend(partners.iter().map(|&d| (c, d)));
        }
        if pairs.is_empty() {
            break;
        }
        // unions only start once the scan is done, so every pair names two
        // clusters of the snapshot
        fresh.clear();
        for &(c, d) in &pairs {
            let (a, b) = (sets.find(c), sets.find(d));
            if let Some(kept) = sets.union(a, b) {
                let gone = if kept == a { b } else { a };
                absorb_lists(&mut people_lists, kept, gone);
                absorb_lists(&mut puzzle_lists, kept, gone);
            }
            fresh.push(c);
        }
        for c in fresh.iter_mut() {
            *c = sets.find(*c);
        }
        fresh.sort_unstable();
        fresh.dedup();
        merging += 1;
    }
    merging
}

impl JigsawInstance {
    /// Instance for solving: the graphs must have the same nonzero vertex count
    /// and the puzzle must be connected.
    pub fn new(people: Graph, puzzle: Graph) -> Result<Self> {
        let inst = Self::with_any_puzzle(people, puzzle)?;
        let components = inst.puzzle.component_count();
        if components > 1 {
            return Err(Error::DisconnectedPuzzle { components });
        }
        Ok(inst)
    }

    /// Like [`JigsawInstance::new`] but accepts a disconnected puzzle.
    pub fn with_any_puzzle(people: Graph, puzzle: Graph) -> Result<Self> {
        if people.vertex_count() != puzzle.vertex_count() {
            return Err(Error::SizeMismatch {
                people: people.vertex_count(),
                puzzle: puzzle.vertex_count(),
            });
        }
        if people.vertex_count() == 0 {
            return Err(invalid!("instance needs at least one vertex"));
        }
        Ok(JigsawInstance { people, puzzle })
    }

    pub fn vertex_count(&self) -> usize {
        self.people.vertex_count()
    }

    pub fn people(&self) -> &Graph {
        &self.people
    }

    pub fn puzzle(&self) -> &Graph {
        &self.puzzle
    }

    /// The instance with the two graphs exchanged.
    pub fn swapped(&self) -> Self {
        JigsawInstance {
            people: self.puzzle.clone(),
            puzzle: self.people.clone(),
        }
    }

    /// Round 1: components of the people-and-puzzle edge intersection.
    pub fn initial_round(&self) -> ClusterState {
        let mut sets = DisjointSets::new(self.vertex_count());
        let (a, b) = if self.people.edge_count() <= self.puzzle.edge_count() {
            (&self.people, &self.puzzle)
        } else {
            (&self.puzzle, &self.people)
        };
        for (u, v) in a.edges() {
            if b.has_edge(u, v) {
                sets.union(u, v);
            }
        }
        ClusterState { sets, round: 1 }
    }

    /// One synchronous round from `state`. Returns the next state and whether
    /// any clusters merged.
    pub fn step(&self, state: &ClusterState, rule: MergeRule) -> (ClusterState, bool) {
        assert_eq!(state.vertex_count(), self.vertex_count(), "state is for another instance");
        let mut next = state.clone();
        let merged = match rule {
            MergeRule::Standard => standard_round(
                &mut next.sets,
                &mut edge_list(&self.people),
                &mut edge_list(&self.puzzle),
            ),
            MergeRule::AdjacentEdge => adjacent_edge_round(&mut next.sets, &self.people, &self.puzzle),
        };
        next.round += 1;
        (next, merged)
    }

    /// Iterates rounds to the fixed point.
    pub fn run(&self, rule: MergeRule) -> TrialOutcome {
        let (mut state, rounds) = self.run_to_fixed_point(rule);
        TrialOutcome::from_sets(&mut state.sets, Some(rounds))
    }

    /// Final state and `N`, the smallest `i` with `C_i = C_{i+1}`.
    pub fn run_to_fixed_point(&self, rule: MergeRule) -> (ClusterState, usize) {
        let n = self.vertex_count();
        let mut state = self.initial_round();
        // C_1 = C_0 only when no edge lies in both graphs, and then nothing
        // can ever merge
        let mut rounds = usize::from(state.cluster_count() < n);
        match rule {
            MergeRule::Standard => {
                let merging = standard_rounds(&mut state.sets, &self.people, &self.puzzle);
                rounds += merging;
                state.round += merging + usize::from(state.cluster_count() > 1);
            }
            MergeRule::AdjacentEdge => {
                while state.cluster_count() > 1 {
                    let merged = adjacent_edge_round(&mut state.sets, &self.people, &self.puzzle);
                    state.round += 1;
                    if !merged {
                        break;
                    }
                    rounds = state.round;
                }
            }
        }
        (state, rounds)
    }

    /// Worklist contraction to the same fixed point as [`JigsawInstance::run`],
    /// without round counts. The adjacent-edge rule is delegated to the
    /// synchronous engine.
    pub fn run_contraction(&self, rule: MergeRule) -> TrialOutcome {
        if rule == MergeRule::AdjacentEdge {
            let mut outcome = self.run(rule);
            outcome.rounds = None;
            return outcome;
        }
        let n = self.vertex_count();
        let mut sets = DisjointSets::new(n);
        let mut people: Vec<Vec<u32>> = (0..n).map(|v| self.people.neighbors(v).to_vec()).collect();
        let mut puzzle: Vec<Vec<u32>> = (0..n).map(|v| self.puzzle.neighbors(v).to_vec()).collect();
        let mut work: Vec<usize> = (0..n).rev().collect();
        let mut partners = Vec::new();

        while let Some(v) = work.pop() {
            if sets.find(v) != v {
                continue;
            }
            canonicalize(&mut sets, &mut people[v], v);
            canonicalize(&mut sets, &mut puzzle[v], v);
            partners.clear();
            intersect_sorted(&people[v], &puzzle[v], &mut partners);
            if partners.is_empty() {
                continue;
            }
            let mut root = v;
            for &c in &partners {
                let Some(merged) = sets.union(root, c) else {
                    continue;
                };
                let gone = if merged == root { c } else { root };
                absorb_lists(&mut people, merged, gone);
                absorb_lists(&mut puzzle, merged, gone);
                root = merged;
            }
            work.push(root);
        }
        TrialOutcome::from_sets(&mut sets, None)
    }

    /// Whether the people graph induced on `subset` solves the puzzle graph
    /// induced on `subset` (standard rule).
    pub fn is_internally_solved(&self, subset: &[usize]) -> Result<bool> {
        if subset.is_empty() {
            return Err(invalid!("subset must be nonempty"));
        }
        let puzzle = self.puzzle.induced_subgraph(subset)?;
        let people = self.people.induced_subgraph(subset)?;
        Ok(JigsawInstance::new(people, puzzle)?.run(MergeRule::Standard).solved)
    }
}
