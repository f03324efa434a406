//! Graded Betti numbers of `S/I(G)` via Hochster's formula
//!
//! `β_{i,j} = Σ_{|W| = j} dim H̃_{j-i-1}(Δ(G)|_W)`, where `Δ(G)|_W` is the
//! independence complex of the induced subgraph `G[W]`.
//!
//! Two exact shortcuts keep the sum tractable: if `G[W]` has an isolated
//! vertex the restricted complex is a cone and contributes nothing, and the
//! independence complex of a disjoint union is the join of the pieces, whose
//! reduced Betti numbers multiply as polynomials (Künneth over a field).
//! Homology is therefore computed once per connected induced subgraph.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::complex::{independent_sets, reduced_betti_of_faces};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::Characteristic;

/// Sparse graded Betti table of `S/I` for a polynomial ring in `n_vars`
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n_vars: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(n_vars: usize, entries: impl IntoIterator<Item = ((usize, usize), u64)>) -> Self {
        let entries = entries.into_iter().filter(|&(_, b)| b != 0).collect();
        BettiTable { n_vars, entries }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `((i, j), β_{i,j})` sorted by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn pdim(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn reg(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    /// Depth by Auslander–Buchsbaum.
    pub fn depth(&self) -> usize {
        self.n_vars - self.pdim()
    }

    /// `β_{0,0} = 1` is the only homological-degree-0 entry, and every entry
    /// satisfies `i <= j <= n_vars`.
    pub fn is_well_formed(&self) -> bool {
        self.get(0, 0) == 1 && self.entries.keys().all(|&(i, j)| (i > 0 || j == 0) && i <= j && j <= self.n_vars)
    }
}

/// `(pdim, reg, depth)` of the module whose Betti table is `table`.
pub fn pdim_reg_depth_from_betti(table: &BettiTable) -> (usize, usize, usize) {
    (table.pdim(), table.reg(), table.depth())
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<[u64; 3]> = self.entries.iter().map(|(&(i, j), &b)| [i as u64, j as u64, b]).collect();
        let mut s = serializer.serialize_struct("BettiTable", 2)?;
        s.serialize_field("n", &self.n_vars)?;
        s.serialize_field("entries", &entries)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            entries: Vec<[u64; 3]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(BettiTable::new(raw.n, raw.entries.into_iter().map(|[i, j, b]| ((i as usize, j as usize), b))))
    }
}

fn has_isolated_vertex(adj: &[u64], w: u64) -> bool {
    let mut rest = w;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & w == 0 {
            return true;
        }
    }
    false
}

fn components_of(adj: &[u64], w: u64) -> impl Iterator<Item = u64> + '_ {
    let mut rest = w;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let seed = rest & rest.wrapping_neg();
        let mut comp = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let mut reach = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                reach |= adj[v];
            }
            frontier = reach & rest & !comp;
            comp |= frontier;
        }
        rest &= !comp;
        Some(comp)
    })
}

/// Product of reduced-Betti polynomials (`Σ h̃_{k-1} t^k`) for a join.
fn join(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Removes vertices `v` for which some other `u` has `N(u) ⊆ N(v)` inside
/// `w`. Each removal is a homotopy equivalence of independence complexes
/// (the fold lemma), so reduced homology is unchanged.
fn fold(adj: &[u64], mut w: u64) -> u64 {
    'outer: loop {
        let mut vs = w;
        while vs != 0 {
            let v = vs.trailing_zeros() as usize;
            vs &= vs - 1;
            let nv = adj[v] & w;
            let mut us = w & !(1 << v);
            while us != 0 {
                let u = us.trailing_zeros() as usize;
                us &= us - 1;
                if adj[u] & w & !nv == 0 {
                    w &= !(1 << v);
                    continue 'outer;
                }
            }
        }
        return w;
    }
}

/// Reduced-Betti polynomial of the independence complex of `G[w]`.
fn piece_homology(adj: &[u64], w: u64, characteristic: Characteristic) -> Result<Vec<usize>> {
    let w = fold(adj, w);
    if has_isolated_vertex(adj, w) {
        return Ok(vec![0]);
    }
    let comps: Vec<u64> = components_of(adj, w).collect();
    if comps.len() > 1 {
        let mut poly = vec![1];
        for c in comps {
            poly = join(&poly, &piece_homology(adj, c, characteristic)?);
        }
        return Ok(poly);
    }
    reduced_betti_of_faces(&independent_sets(adj, w), characteristic)
}

/// Full graded Betti table of `S/I(G)` over a field of the given
/// characteristic. Deterministic regardless of the rayon pool size.
pub fn betti_table(g: &Graph, characteristic: Characteristic, max_vertices: usize) -> Result<BettiTable> {
    let n = g.n_vertices();
    if n > max_vertices {
        return Err(Error::Capacity { what: "oracle vertices", size: n, cap: max_vertices });
    }
    if n > 30 {
        return Err(Error::Capacity { what: "Hochster enumeration vertices", size: n, cap: 30 });
    }
    let adj = g.adjacency_masks()?;
    let subsets = 0u64..(1u64 << n);

    let pieces: HashSet<u64> = subsets
        .clone()
        .into_par_iter()
        .filter(|&w| !has_isolated_vertex(&adj, w))
        .fold(HashSet::new, |mut acc, w| {
            acc.extend(components_of(&adj, w));
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });

    let mut pieces: Vec<u64> = pieces.into_iter().collect();
    pieces.sort_unstable();
    let homology: HashMap<u64, Vec<usize>> =
        pieces.par_iter().map(|&c| piece_homology(&adj, c, characteristic).map(|b| (c, b))).collect::<Result<_>>()?;

    let entries = subsets
        .into_par_iter()
        .filter(|&w| !has_isolated_vertex(&adj, w))
        .fold(BTreeMap::new, |mut acc: BTreeMap<(usize, usize), u64>, w| {
            let poly = components_of(&adj, w).fold(vec![1usize], |p, c| join(&p, &homology[&c]));
            let j = w.count_ones() as usize;
            for (k, &h) in poly.iter().enumerate() {
                // t^k carries H̃_{k-1}, which lands in homological degree j - k.
                if h != 0 {
                    *acc.entry((j - k, j)).or_default() += h as u64;
                }
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(BettiTable::new(n, entries))
}
