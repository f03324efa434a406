//! Stanley depth of `S/I(G)` by interval partitions of the face poset of
//! the independence complex.
//!
//! For a squarefree monomial ideal, `sdepth(S/I)` is the largest `k` such
//! that the faces can be partitioned into intervals `[C, D]` with every
//! `|D| >= k`. Any interval whose top is larger than `k` splits into
//! intervals with tops of size exactly `k` plus singletons above `k`, so the
//! feasibility test for `k` only has to cover the faces of size `< k` with
//! intervals topped by `k`-faces.

use super::complex::{ground_mask, independent_sets, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Intervals `[C, D] = {F : C ⊆ F ⊆ D}` given as `(C, D)` bitmask pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPartition {
    pub intervals: Vec<(u64, u64)>,
}

impl IntervalPartition {
    /// Smallest top size, i.e. the Stanley depth of the induced decomposition.
    pub fn min_top(&self) -> usize {
        self.intervals.iter().map(|&(_, d)| d.count_ones() as usize).min().unwrap_or(0)
    }

    /// True iff the intervals are disjoint, nested (`C ⊆ D`) and cover
    /// exactly the faces of `complex`.
    pub fn partitions(&self, complex: &SimplicialComplex) -> bool {
        let mut seen = std::collections::HashSet::new();
        for &(c, d) in &self.intervals {
            if c & !d != 0 {
                return false;
            }
            let free = d & !c;
            let mut sub = free;
            loop {
                let f = c | sub;
                if !complex.contains(f) || !seen.insert(f) {
                    return false;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        seen.len() == complex.faces().len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdepthResult {
    pub value: usize,
    pub partition: IntervalPartition,
}

struct Search<'a> {
    faces: &'a [u64],
    /// Position of each face in `faces`, indexed by mask; `u32::MAX` if absent.
    position: Vec<u32>,
    covered: Vec<bool>,
    /// Number of faces of size `< target`; they form a prefix of `faces`.
    small: usize,
    tops: Vec<u64>,
    chosen: Vec<(u64, u64)>,
}

impl Search<'_> {
    fn subsets_between(c: u64, d: u64) -> impl Iterator<Item = u64> {
        let free = d & !c;
        let mut sub = free;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let f = c | sub;
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & free;
            }
            Some(f)
        })
    }

    fn is_free(&self, c: u64, d: u64) -> bool {
        Self::subsets_between(c, d).all(|f| !self.covered[self.position[f as usize] as usize])
    }

    fn mark(&mut self, c: u64, d: u64, value: bool) {
        for f in Self::subsets_between(c, d) {
            let p = self.position[f as usize] as usize;
            self.covered[p] = value;
        }
    }

    /// Every uncovered small face still needs an uncovered top above it.
    fn viable(&self, from: usize) -> bool {
        (from..self.small).all(|i| {
            self.covered[i]
                || self
                    .tops
                    .iter()
                    .any(|&d| d & self.faces[i] == self.faces[i] && !self.covered[self.position[d as usize] as usize])
        })
    }

    fn run(&mut self, from: usize) -> bool {
        let Some(pos) = (from..self.small).find(|&i| !self.covered[i]) else {
            return true;
        };
        // Everything before `pos` is covered, so this face must be the
        // bottom of its interval.
        let c = self.faces[pos];
        for t in 0..self.tops.len() {
            let d = self.tops[t];
            if d & c != c || !self.is_free(c, d) {
                continue;
            }
            self.mark(c, d, true);
            self.chosen.push((c, d));
            if self.viable(pos + 1) && self.run(pos + 1) {
                return true;
            }
            self.chosen.pop();
            self.mark(c, d, false);
        }
        false
    }
}

/// Searches for an interval partition of `faces` (a simplicial complex on
/// `n` vertices, cardinality-sorted) with all tops of size `>= target`.
fn partition_with_target(n: usize, faces: &[u64], target: usize) -> Option<IntervalPartition> {
    let mut position = vec![u32::MAX; 1usize << n];
    for (i, &f) in faces.iter().enumerate() {
        position[f as usize] = i as u32;
    }
    let small = faces.iter().take_while(|f| (f.count_ones() as usize) < target).count();
    let tops: Vec<u64> = faces.iter().copied().filter(|f| f.count_ones() as usize == target).collect();
    let mut search = Search { faces, position, covered: vec![false; faces.len()], small, tops, chosen: Vec::new() };
    if !search.viable(0) || !search.run(0) {
        return None;
    }
    let mut intervals = search.chosen.clone();
    intervals.extend(faces.iter().enumerate().filter(|&(i, _)| !search.covered[i]).map(|(_, &f)| (f, f)));
    Some(IntervalPartition { intervals })
}

/// Exact Stanley depth of `S/I(G)` with an optimal interval partition.
pub fn sdepth_oracle(g: &Graph, max_vertices: usize) -> Result<SdepthResult> {
    let n = g.n_vertices();
    if n > max_vertices {
        return Err(Error::Capacity { what: "Stanley depth search vertices", size: n, cap: max_vertices });
    }
    if n > 24 {
        return Err(Error::Capacity { what: "Stanley depth search vertices", size: n, cap: 24 });
    }
    let adj = g.adjacency_masks()?;
    let faces = independent_sets(&adj, ground_mask(n));
    let complex = SimplicialComplex::from_sorted_faces(n, faces.clone());

    // A facet can only sit in an interval whose top is the facet itself.
    let upper = complex.facets().iter().map(|f| f.count_ones() as usize).min().unwrap_or(0);
    let mut lo = 0;
    let mut best = partition_with_target(n, &faces, 0).expect("singletons always partition");
    let mut hi = upper;
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        match partition_with_target(n, &faces, mid) {
            Some(p) => {
                lo = mid;
                best = p;
            }
            None => hi = mid - 1,
        }
    }
    debug_assert!(best.partitions(&complex));
    Ok(SdepthResult { value: lo, partition: best })
}
