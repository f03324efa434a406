//! Exact combinatorial invariants: independence number, induced matching
//! number, chordality and connected components.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph the bitset solvers accept.
pub const MAX_SOLVER_VERTICES: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSetResult {
    pub size: usize,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMatchingResult {
    pub size: usize,
    pub witness: Vec<(usize, usize)>,
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Branch-and-bound maximum independent set over `u128` adjacency rows.
struct MisSolver<'a> {
    adj: &'a [u128],
    best: u128,
    best_size: u32,
}

impl MisSolver<'_> {
    /// Greedy clique cover of `cand`; the number of cliques bounds α from above.
    fn clique_cover_bound(&self, mut cand: u128) -> u32 {
        let mut cliques = 0;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            let mut common = self.adj[v] & cand;
            cand &= !(1u128 << v);
            while common != 0 {
                let w = common.trailing_zeros() as usize;
                cand &= !(1u128 << w);
                common &= self.adj[w];
            }
            cliques += 1;
        }
        cliques
    }

    fn search(&mut self, mut cand: u128, mut chosen: u128) {
        // Vertices of degree <= 1 inside `cand` belong to some maximum
        // independent set of the remaining graph.
        loop {
            let mut changed = false;
            for v in bits(cand) {
                if cand & (1u128 << v) == 0 {
                    continue;
                }
                if (self.adj[v] & cand).count_ones() <= 1 {
                    chosen |= 1u128 << v;
                    cand &= !((1u128 << v) | self.adj[v]);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if cand == 0 {
            if chosen.count_ones() > self.best_size {
                self.best_size = chosen.count_ones();
                self.best = chosen;
            }
            return;
        }
        if chosen.count_ones() + self.clique_cover_bound(cand) <= self.best_size {
            return;
        }
        let pivot = bits(cand)
            .max_by_key(|&v| ((self.adj[v] & cand).count_ones(), std::cmp::Reverse(v)))
            .expect("cand is non-empty");
        let bit = 1u128 << pivot;
        self.search(cand & !(bit | self.adj[pivot]), chosen | bit);
        self.search(cand & !bit, chosen);
    }
}

pub(crate) fn max_independent_set_masks(adj: &[u128]) -> u128 {
    let n = adj.len();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut solver = MisSolver { adj, best: 0, best_size: 0 };
    solver.search(all, 0);
    solver.best
}

fn u128_rows(g: &Graph) -> Result<Vec<u128>> {
    if g.n_vertices() > MAX_SOLVER_VERTICES {
        return Err(Error::Capacity {
            what: "exact independence solver vertices",
            size: g.n_vertices(),
            cap: MAX_SOLVER_VERTICES,
        });
    }
    Ok((0..g.n_vertices()).map(|v| g.neighbors(v).iter().fold(0u128, |m, &w| m | (1u128 << w))).collect())
}

pub fn independence_number(g: &Graph) -> Result<IndependentSetResult> {
    let adj = u128_rows(g)?;
    let best = max_independent_set_masks(&adj);
    let witness: Vec<usize> = bits(best).collect();
    Ok(IndependentSetResult { size: witness.len(), witness })
}

/// The edge conflict graph: one vertex per edge of `g`, two edges in
/// conflict when they share an endpoint or an edge of `g` joins them.
/// Its independent sets are exactly the induced matchings of `g`.
pub fn edge_conflict_graph(g: &Graph) -> Result<Graph> {
    let edges = g.edges();
    let touches = |(a, b): (usize, usize), (c, d): (usize, usize)| {
        a == c
            || a == d
            || b == c
            || b == d
            || g.has_edge(a, c)
            || g.has_edge(a, d)
            || g.has_edge(b, c)
            || g.has_edge(b, d)
    };
    let mut conflicts = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if touches(edges[i], edges[j]) {
                conflicts.push((i, j));
            }
        }
    }
    Graph::from_edges(edges.len(), &conflicts)
}

pub fn induced_matching_number(g: &Graph) -> Result<InducedMatchingResult> {
    let edges = g.edges();
    if edges.len() > MAX_SOLVER_VERTICES {
        return Err(Error::Capacity {
            what: "induced matching solver edges",
            size: edges.len(),
            cap: MAX_SOLVER_VERTICES,
        });
    }
    let conflict = edge_conflict_graph(g)?;
    let best = independence_number(&conflict)?;
    let witness: Vec<(usize, usize)> = best.witness.iter().map(|&e| edges[e]).collect();
    Ok(InducedMatchingResult { size: witness.len(), witness })
}

/// Maximum cardinality search order (ties to the lowest index). The reverse
/// of the returned order is a perfect elimination ordering iff `g` is chordal.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.n_vertices();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                weight[w] += 1;
            }
        }
    }
    order
}

/// Checks that `order` (first vertex eliminated first) is a perfect
/// elimination ordering: each vertex's later neighbours form a clique.
pub fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    let n = g.n_vertices();
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| position[w] > position[v]).collect();
        // Tarjan–Yannakakis: it suffices that the earliest later neighbour
        // is adjacent to all other later neighbours.
        match later.iter().min_by_key(|&&w| position[w]) {
            None => true,
            Some(&parent) => later.iter().all(|&w| w == parent || g.has_edge(parent, w)),
        }
    })
}

pub fn is_chordal(g: &Graph) -> bool {
    let mut order = maximum_cardinality_search(g);
    order.reverse();
    is_perfect_elimination_ordering(g, &order)
}

/// Connected components, each sorted, listed by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n_vertices();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}
