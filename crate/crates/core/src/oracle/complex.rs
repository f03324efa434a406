use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{Characteristic, SparseMatrix};

/// A simplicial complex on the ground set `0..ground_size`, faces stored as
/// bitmasks ordered by (cardinality, mask).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground_size: usize,
    faces: Vec<u64>,
}

impl SimplicialComplex {
    /// Builds the complex from a list of faces, checking closure under
    /// subsets. The empty face is added if missing.
    pub fn from_faces(ground_size: usize, faces: impl IntoIterator<Item = u64>) -> Result<Self> {
        if ground_size > 64 {
            return Err(Error::Capacity { what: "complex ground set", size: ground_size, cap: 64 });
        }
        let mut faces: Vec<u64> = faces.into_iter().chain([0]).collect();
        faces.sort_unstable_by_key(|&f| (f.count_ones(), f));
        faces.dedup();
        let complex = SimplicialComplex { ground_size, faces };
        let outside = if ground_size == 64 { 0 } else { !0u64 << ground_size };
        for &f in &complex.faces {
            if f & outside != 0 {
                return Err(Error::InvalidGraph(format!("face {f:#b} outside the ground set")));
            }
            let mut rest = f;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                if !complex.contains(f & !bit) {
                    return Err(Error::InvalidGraph(format!("face set not closed under subsets at {f:#b}")));
                }
            }
        }
        Ok(complex)
    }

    pub(crate) fn from_sorted_faces(ground_size: usize, faces: Vec<u64>) -> Self {
        debug_assert!(faces.windows(2).all(|w| (w[0].count_ones(), w[0]) < (w[1].count_ones(), w[1])));
        SimplicialComplex { ground_size, faces }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn contains(&self, face: u64) -> bool {
        self.faces.binary_search_by_key(&(face.count_ones(), face), |&f| (f.count_ones(), f)).is_ok()
    }

    /// Dimension (largest face size minus one); `-1` for `{∅}`.
    pub fn dimension(&self) -> isize {
        self.faces.last().map_or(-1, |&f| f.count_ones() as isize - 1)
    }

    /// Faces not contained in any other face.
    pub fn facets(&self) -> Vec<u64> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| {
                let free = !f & ground_mask(self.ground_size);
                let mut rest = free;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest ^= bit;
                    if self.contains(f | bit) {
                        return false;
                    }
                }
                true
            })
            .collect()
    }

    /// Ranks of reduced homology `H̃_d` for `d = -1..=dim`.
    pub fn reduced_homology_ranks(&self, characteristic: Characteristic) -> Result<BTreeMap<isize, usize>> {
        let betti = reduced_betti_of_faces(&self.faces, characteristic)?;
        Ok(betti.into_iter().enumerate().map(|(k, r)| (k as isize - 1, r)).collect())
    }
}

pub(crate) fn ground_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All independent subsets of `within` in the graph with adjacency rows
/// `adj`, ordered by (cardinality, mask).
pub(crate) fn independent_sets(adj: &[u64], within: u64) -> Vec<u64> {
    fn extend(adj: &[u64], cand: u64, current: u64, out: &mut Vec<u64>) {
        out.push(current);
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // Only add vertices above `v` afterwards, so each set is produced once.
            extend(adj, rest & !adj[v], current | (1 << v), out);
        }
    }
    let mut out = Vec::new();
    extend(adj, within, 0, &mut out);
    out.sort_unstable_by_key(|&f| (f.count_ones(), f));
    out
}

/// The independence complex: faces are the independent sets of `g`.
pub fn independence_complex(g: &Graph, max_vertices: usize) -> Result<SimplicialComplex> {
    let n = g.n_vertices();
    if n > max_vertices {
        return Err(Error::Capacity { what: "oracle vertices", size: n, cap: max_vertices });
    }
    let adj = g.adjacency_masks()?;
    Ok(SimplicialComplex::from_sorted_faces(n, independent_sets(&adj, ground_mask(n))))
}

/// Boundary map from faces of size `k` to faces of size `k - 1`, rows
/// indexed by the larger faces. Removing the vertex at sorted position `p`
/// contributes `(-1)^p`.
pub(crate) fn boundary_matrix(upper: &[u64], lower_index: &HashMap<u64, usize>) -> SparseMatrix {
    let mut m = SparseMatrix::new(lower_index.len());
    for &face in upper {
        let mut row = Vec::with_capacity(face.count_ones() as usize);
        let mut rest = face;
        let mut position = 0;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            let sign = if position % 2 == 0 { 1 } else { -1 };
            row.push((lower_index[&(face & !bit)], sign));
            position += 1;
        }
        m.push_row(row);
    }
    m
}

/// Reduced Betti numbers of the complex with the given (cardinality-sorted)
/// faces: entry `k` is the rank of `H̃_{k-1}`.
pub(crate) fn reduced_betti_of_faces(faces: &[u64], characteristic: Characteristic) -> Result<Vec<usize>> {
    let top = faces.last().map_or(0, |f| f.count_ones() as usize);
    let mut levels: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for &f in faces {
        levels[f.count_ones() as usize].push(f);
    }
    // rank_of[k] = rank of the boundary from size-k faces to size-(k-1) faces.
    let mut rank_of = vec![0usize; top + 2];
    for k in 1..=top {
        let index: HashMap<u64, usize> = levels[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        rank_of[k] = boundary_matrix(&levels[k], &index).rank(characteristic)?;
    }
    Ok((0..=top).map(|k| levels[k].len() - rank_of[k] - rank_of[k + 1]).collect())
}
