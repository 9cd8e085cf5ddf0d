use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Proof that a people graph cannot solve the `n`-ring puzzle.
///
/// The ring `0..n` is cut into consecutive intervals
/// `[boundaries[j], boundaries[j + 1])`, each of length at most `x`, and every
/// interval holds a witness vertex with no people edge into the interval
/// widened by `x` on both sides (cyclically). Such witnesses act as walls that
/// no cluster can grow across.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCertificate {
    pub x: usize,
    /// `0 = a_0 < a_1 < ... < a_k = n`.
    pub boundaries: Vec<usize>,
    /// One witness per interval.
    pub witnesses: Vec<usize>,
}

/// Interval ends for ring size `n` and width `x >= 2`: `k = ⌊n / (x-1)⌋`
/// intervals, the first `n - k(x-1)` of length `x`, the rest of length `x - 1`.
pub fn interval_boundaries(n: usize, x: usize) -> Result<Vec<usize>> {
    if x < 2 {
        return Err(invalid!("interval width x must be at least 2, got {x}"));
    }
    if n < x * x {
        return Err(invalid!("certificate needs n >= x^2 (n = {n}, x = {x})"));
    }
    let k = n / (x - 1);
    let long = n - k * (x - 1);
    let mut bounds = Vec::with_capacity(k + 1);
    bounds.push(0);
    for i in 0..k {
        let len = if i < long { x } else { x - 1 };
        bounds.push(bounds[i] + len);
    }
    debug_assert_eq!(bounds[k], n);
    Ok(bounds)
}

/// Whether `u` has no people neighbor in the cyclic window of `len` vertices
/// starting at `start`.
fn isolated_in_window(people: &Graph, u: usize, start: usize, len: usize) -> bool {
    let n = people.vertex_count();
    if len >= n {
        return people.degree(u) == 0;
    }
    people
        .neighbors(u)
        .iter()
        .all(|&w| (w as usize + n - start) % n >= len)
}

/// Witness for interval `[lo, hi)`: its smallest vertex with no people edge
/// into `[lo - x, hi + x)`.
fn witness(people: &Graph, lo: usize, hi: usize, x: usize) -> Option<usize> {
    let n = people.vertex_count();
    let start = (lo + n - x % n) % n;
    let len = hi - lo + 2 * x;
    (lo..hi).find(|&u| isolated_in_window(people, u, start, len))
}

/// Searches for a [`CutCertificate`] over the fixed interval layout of
/// [`interval_boundaries`]. `None` proves nothing: other layouts might still
/// certify the instance.
pub fn find_cut_certificate(people: &Graph, n: usize, x: usize) -> Result<Option<CutCertificate>> {
    if people.vertex_count() != n {
        return Err(invalid!(
            "people graph has {} vertices, expected {n}",
            people.vertex_count()
        ));
    }
    let boundaries = interval_boundaries(n, x)?;
    let mut witnesses = Vec::with_capacity(boundaries.len() - 1);
    for pair in boundaries.windows(2) {
        match witness(people, pair[0], pair[1], x) {
            Some(w) => witnesses.push(w),
            None => return Ok(None),
        }
    }
    Ok(Some(CutCertificate {
        x,
        boundaries,
        witnesses,
    }))
}

impl CutCertificate {
    /// Re-checks the certificate against a people graph.
    pub fn verify(&self, people: &Graph) -> bool {
        let n = people.vertex_count();
        let b = &self.boundaries;
        if b.first() != Some(&0) || b.last() != Some(&n) || b.len() != self.witnesses.len() + 1 {
            return false;
        }
        b.windows(2).zip(&self.witnesses).all(|(pair, &w)| {
            let (lo, hi) = (pair[0], pair[1]);
            lo < hi
                && hi - lo <= self.x
                && (lo..hi).contains(&w)
                && isolated_in_window(people, w, (lo + n - self.x % n) % n, hi - lo + 2 * self.x)
        })
    }
}
