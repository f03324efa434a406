//! Finite simple graphs and the constructions used throughout the crate:
//! the named families, disjoint unions, corona products and bristled graphs.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A labeled finite simple graph.
///
/// Vertices are `0..n`. Adjacency lists are kept sorted and symmetric; there
/// are no loops and no parallel edges. Graphs are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n_vertices()).field("edges", &self.edges()).finish()
    }
}

impl Graph {
    /// Graph on `n` unlabeled vertices (labels `x1..xn`) with the given
    /// 0-based edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = (1..=n).map(|i| format!("x{i}")).collect();
        Self::with_labels(labels, edges)
    }

    pub fn with_labels(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidGraph("vertex labels must be unique".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange { vertex: a.max(b), n });
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", a + 1)));
            }
            if adjacency[a].contains(&b) {
                return Err(Error::InvalidGraph(format!("duplicate edge {}-{}", a + 1, b + 1)));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        Ok(Graph { labels, adjacency })
    }

    /// Internal constructor for edge sets already known to be simple.
    fn from_parts(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); labels.len()];
        for (a, b) in edges {
            debug_assert!(a != b);
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for row in &mut adjacency {
            row.sort_unstable();
            row.dedup();
        }
        Graph { labels, adjacency }
    }

    pub fn empty() -> Self {
        Graph { labels: Vec::new(), adjacency: Vec::new() }
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n_edges());
        for (a, row) in self.adjacency.iter().enumerate() {
            out.extend(row.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }

    /// Adjacency rows as 64-bit masks. Fails above 64 vertices.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.n_vertices() > 64 {
            return Err(Error::Capacity { what: "bitset graph", size: self.n_vertices(), cap: 64 });
        }
        Ok(self.adjacency.iter().map(|row| row.iter().fold(0u64, |m, &b| m | (1 << b))).collect())
    }

    /// Degree-0 vertices, the set `i(H)`.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n_vertices()).filter(|&v| self.degree(v) == 0).collect()
    }

    /// Induced subgraph on `vertices`, relabeled `0..|U|` in ascending order
    /// of the original indices; labels are carried over.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let n = self.n_vertices();
        if let Some(&bad) = keep.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n });
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            position[v] = i;
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| position[a] != usize::MAX && position[b] != usize::MAX)
            .map(|(a, b)| (position[a], position[b]));
        Ok(Graph::from_parts(labels, edges))
    }

    /// The induced subgraph `H'` on the non-isolated vertices.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n_vertices()).filter(|&v| self.degree(v) > 0).collect();
        self.induced_subgraph(&keep).expect("indices in range")
    }

    /// True iff every pair of distinct vertices is adjacent. `K_1` and the
    /// empty graph count as complete.
    pub fn is_complete(&self) -> bool {
        let n = self.n_vertices();
        self.adjacency.iter().all(|row| row.len() + 1 == n)
    }

    pub fn is_null(&self) -> bool {
        self.adjacency.iter().all(Vec::is_empty)
    }

    pub fn is_trivial(&self) -> bool {
        self.n_vertices() == 1
    }

    /// Returns the same graph with the labels replaced.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n_vertices() {
            return Err(Error::InvalidGraph("label count does not match vertex count".into()));
        }
        Graph::with_labels(labels, &self.edges())
    }
}

fn sequential_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn path(n: usize) -> Graph {
    Graph::from_parts(sequential_labels(n), (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter { family: "cycle", detail: format!("needs n >= 3, got {n}") });
    }
    Ok(Graph::from_parts(sequential_labels(n), (0..n).map(|i| (i, (i + 1) % n))))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::Parameter { family: "complete", detail: "needs n >= 1, got 0".into() });
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Ok(Graph::from_parts(sequential_labels(n), edges))
}

/// The `k`-star: one center (vertex 0) and `k` leaves.
pub fn star(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::Parameter { family: "star", detail: "needs k >= 1, got 0".into() });
    }
    Ok(Graph::from_parts(sequential_labels(k + 1), (1..=k).map(|i| (0, i))))
}

/// `K_{u,v}` with parts `0..u` and `u..u+v`.
pub fn complete_bipartite(u: usize, v: usize) -> Result<Graph> {
    if u < 1 || v < 1 {
        return Err(Error::Parameter { family: "kbip", detail: format!("needs u, v >= 1, got ({u}, {v})") });
    }
    let edges = (0..u).flat_map(|a| (u..u + v).map(move |b| (a, b)));
    Ok(Graph::from_parts(sequential_labels(u + v), edges))
}

pub fn null(r: usize) -> Graph {
    Graph::from_parts(sequential_labels(r), std::iter::empty())
}

/// Disjoint union; vertex blocks are concatenated in argument order and
/// relabeled `x1..xN`.
pub fn disjoint_union(graphs: &[Graph]) -> Graph {
    let total: usize = graphs.iter().map(Graph::n_vertices).sum();
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in graphs {
        edges.extend(g.edges().into_iter().map(|(a, b)| (a + offset, b + offset)));
        offset += g.n_vertices();
    }
    Graph::from_parts(sequential_labels(total), edges)
}

/// Index bookkeeping of a corona product: spine vertex `i` is
/// `spine[i]`, and vertex `j` of the `i`-th copy of `H` is `copies[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoronaLabeling {
    pub spine: Vec<usize>,
    pub copies: Vec<Vec<usize>>,
}

/// The corona product `X ⊙ H`.
///
/// Spine vertices come first (`y1..yn`), followed by the copies of `H` in
/// spine order (`x1_1..x1_m, x2_1, ..`). An `H` without vertices yields `X`
/// itself (relabeled).
pub fn corona(spine: &Graph, fiber: &Graph) -> Result<(Graph, CoronaLabeling)> {
    let n = spine.n_vertices();
    let m = fiber.n_vertices();
    if n == 0 {
        return Err(Error::InvalidGraph("corona product needs a spine with at least one vertex".into()));
    }
    let mut labels: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let mut edges = spine.edges();
    let fiber_edges = fiber.edges();
    let mut copies = Vec::with_capacity(n);
    for i in 0..n {
        let base = n + i * m;
        labels.extend((1..=m).map(|j| format!("x{}_{}", i + 1, j)));
        edges.extend((0..m).map(|j| (i, base + j)));
        edges.extend(fiber_edges.iter().map(|&(a, b)| (base + a, base + b)));
        copies.push((base..base + m).collect());
    }
    let labeling = CoronaLabeling { spine: (0..n).collect(), copies };
    Ok((Graph::from_parts(labels, edges), labeling))
}

/// The `t`-fold bristled graph: `t` pendant vertices on every vertex.
pub fn bristle(spine: &Graph, t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::Parameter { family: "bristle", detail: "needs t >= 1, got 0".into() });
    }
    corona(spine, &null(t)).map(|(g, _)| g)
}

/// Symbolic description of a graph build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    CompleteBipartite(usize, usize),
    Null(usize),
    Union(Vec<GraphSpec>),
    Corona(Box<GraphSpec>, Box<GraphSpec>),
    Bristle(Box<GraphSpec>, usize),
    /// `n` vertices and 1-based edge endpoints.
    Explicit(usize, Vec<(usize, usize)>),
}

impl GraphSpec {
    pub fn corona(spine: GraphSpec, fiber: GraphSpec) -> Self {
        GraphSpec::Corona(Box::new(spine), Box::new(fiber))
    }

    pub fn bristle(spine: GraphSpec, t: usize) -> Self {
        GraphSpec::Bristle(Box::new(spine), t)
    }

    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Path(n) => Ok(path(*n)),
            GraphSpec::Cycle(n) => cycle(*n),
            GraphSpec::Complete(n) => complete(*n),
            GraphSpec::Star(k) => star(*k),
            GraphSpec::CompleteBipartite(u, v) => complete_bipartite(*u, *v),
            GraphSpec::Null(r) => Ok(null(*r)),
            GraphSpec::Union(parts) => {
                let built = parts.iter().map(GraphSpec::build).collect::<Result<Vec<_>>>()?;
                Ok(disjoint_union(&built))
            }
            GraphSpec::Corona(x, h) => corona(&x.build()?, &h.build()?).map(|(g, _)| g),
            GraphSpec::Bristle(x, t) => {
                if *t == 0 {
                    return Err(Error::Parameter { family: "bristle", detail: "needs t >= 1, got 0".into() });
                }
                bristle(&x.build()?, *t)
            }
            GraphSpec::Explicit(n, edges) => {
                let mut zero_based = Vec::with_capacity(edges.len());
                for &(a, b) in edges {
                    for end in [a, b] {
                        if end == 0 || end > *n {
                            return Err(Error::Parameter {
                                family: "graph",
                                detail: format!("edge endpoint {end} outside 1..{n}"),
                            });
                        }
                    }
                    zero_based.push((a - 1, b - 1));
                }
                Graph::from_edges(*n, &zero_based)
            }
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Path(n) => write!(f, "path({n})"),
            GraphSpec::Cycle(n) => write!(f, "cycle({n})"),
            GraphSpec::Complete(n) => write!(f, "complete({n})"),
            GraphSpec::Star(k) => write!(f, "star({k})"),
            GraphSpec::CompleteBipartite(u, v) => write!(f, "kbip({u},{v})"),
            GraphSpec::Null(r) => write!(f, "null({r})"),
            GraphSpec::Union(parts) => {
                write!(f, "union(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            GraphSpec::Corona(x, h) => write!(f, "corona({x},{h})"),
            GraphSpec::Bristle(x, t) => write!(f, "bristle({x},{t})"),
            GraphSpec::Explicit(n, edges) => {
                write!(f, "graph({n};")?;
                for (i, (a, b)) in edges.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}-{b}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_set(g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
    }

    #[test]
    fn path_four_edges() {
        let g = GraphSpec::Path(4).build().unwrap();
        assert_eq!(g.n_vertices(), 4);
        assert_eq!(edge_set(&g), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(path(1).n_edges(), 0);
        assert_eq!(complete(1).unwrap().n_edges(), 0);
    }

    #[test]
    fn null_and_bipartite_counts() {
        let n3 = GraphSpec::Null(3).build().unwrap();
        assert_eq!((n3.n_vertices(), n3.n_edges()), (3, 0));
        let k23 = GraphSpec::CompleteBipartite(2, 3).build().unwrap();
        assert_eq!((k23.n_vertices(), k23.n_edges()), (5, 6));
    }

    #[test]
    fn invalid_parameters_are_named() {
        let err = GraphSpec::Cycle(2).build().unwrap_err();
        assert!(err.to_string().contains("cycle"), "{err}");
        assert!(GraphSpec::Star(0).build().is_err());
        assert!(GraphSpec::CompleteBipartite(0, 2).build().is_err());
        assert!(GraphSpec::Explicit(3, vec![(1, 4)]).build().is_err());
        assert!(GraphSpec::Explicit(3, vec![(1, 2), (2, 1)]).build().is_err());
        assert!(GraphSpec::Explicit(3, vec![(2, 2)]).build().is_err());
    }

    fn tree7() -> Graph {
        GraphSpec::Explicit(7, vec![(1, 2), (2, 3), (2, 4), (3, 5), (5, 6), (5, 7)]).build().unwrap()
    }

    #[test]
    fn corona_of_path_and_seven_vertex_tree() {
        let (g, lab) = corona(&path(3), &tree7()).unwrap();
        assert_eq!(g.n_vertices(), 24);
        assert_eq!(g.n_edges(), 41);
        assert_eq!(lab.spine, vec![0, 1, 2]);
        assert_eq!(lab.copies[1], (10..17).collect::<Vec<_>>());
        assert_eq!(g.label(0), "y1");
        assert_eq!(g.label(3), "x1_1");
    }

    #[test]
    fn corona_of_triangle_with_mixed_fiber() {
        let h = disjoint_union(&[complete(4).unwrap(), null(3)]);
        let (g, _) = corona(&cycle(3).unwrap(), &h).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (24, 42));
        assert!(g.isolated_vertices().is_empty());
    }

    #[test]
    fn corona_of_single_vertex_is_a_star() {
        let (g, _) = corona(&path(1), &null(4)).unwrap();
        assert_eq!(g.edges(), star(4).unwrap().edges());
    }

    #[test]
    fn corona_rejects_empty_spine_and_accepts_empty_fiber() {
        assert!(corona(&Graph::empty(), &path(2)).is_err());
        let (g, lab) = corona(&cycle(4).unwrap(), &Graph::empty()).unwrap();
        assert_eq!(g.edges(), cycle(4).unwrap().edges());
        assert!(lab.copies.iter().all(Vec::is_empty));
    }

    #[test]
    fn corona_copies_are_label_isomorphic() {
        let h = tree7();
        let (g, lab) = corona(&path(2), &h).unwrap();
        for copy in &lab.copies {
            for (a, b) in h.edges() {
                assert!(g.has_edge(copy[a], copy[b]));
            }
        }
    }

    #[test]
    fn bristles() {
        let p2 = bristle(&path(2), 1).unwrap();
        let mut degrees: Vec<usize> = (0..4).map(|v| p2.degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 2, 2]);
        assert_eq!(p2.n_edges(), 3);

        let s = bristle(&complete(1).unwrap(), 5).unwrap();
        assert_eq!(s.edges(), star(5).unwrap().edges());

        let c = bristle(&cycle(3).unwrap(), 2).unwrap();
        assert_eq!((c.n_vertices(), c.n_edges()), (9, 9));
        assert!(bristle(&path(2), 0).is_err());
    }

    #[test]
    fn isolated_vertex_sets() {
        let h = disjoint_union(&[complete(4).unwrap(), null(3)]);
        assert_eq!(h.isolated_vertices(), vec![4, 5, 6]);
        assert_eq!(null(4).isolated_vertices().len(), 4);
        assert!(cycle(5).unwrap().isolated_vertices().is_empty());
        assert_eq!(h.without_isolated().n_vertices(), 4);
    }

    #[test]
    fn induced_subgraphs() {
        let c4 = cycle(4).unwrap();
        assert_eq!(c4.induced_subgraph(&[0, 1, 2]).unwrap().edges(), path(3).edges());
        assert_eq!(c4.induced_subgraph(&[]).unwrap().n_vertices(), 0);
        let k5 = complete(5).unwrap();
        assert!(k5.induced_subgraph(&[0, 2, 4]).unwrap().is_complete());
        assert!(c4.induced_subgraph(&[0, 9]).is_err());
    }

    #[test]
    fn unions() {
        assert_eq!(disjoint_union(&[]).n_vertices(), 0);
        let g = disjoint_union(&[path(2), path(2)]);
        assert_eq!((g.n_vertices(), g.n_edges()), (4, 2));
        assert_eq!(g.edges(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn completeness_flags() {
        let k1 = complete(1).unwrap();
        assert!(k1.is_complete() && k1.is_null() && k1.is_trivial());
        assert!(complete(6).unwrap().is_complete());
        assert!(!path(3).is_complete());
    }

    #[test]
    fn spec_display_round_trips_through_text() {
        let spec = GraphSpec::corona(
            GraphSpec::Union(vec![GraphSpec::Path(2), GraphSpec::CompleteBipartite(1, 2)]),
            GraphSpec::Explicit(3, vec![(1, 2)]),
        );
        assert_eq!(spec.to_string(), "corona(union(path(2),kbip(1,2)),graph(3;1-2))");
    }
}
