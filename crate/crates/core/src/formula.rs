//! Closed forms for the invariants of `S/I(X ⊙ H)`.
//!
//! The spine `X` is a path, cycle, complete graph, star, complete bipartite
//! graph, or a disjoint union of those; `H` is arbitrary. Everything about
//! `H` enters through [`BaseInvariants`]: its depth `t`, regularity `r`,
//! Krull dimension, a Stanley depth lower bound and the number of isolated
//! vertices `|i(H)|`, all measured on `H'` (the non-isolated part).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics;
use crate::error::{Error, Result};
use crate::graph::{self, Graph, GraphSpec};
use crate::oracle::{self, OracleConfig};

/// Spine families with closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpineFamily {
    /// `P_n`. `n = 0` is accepted as the empty module (all invariants 0).
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `S_n`: a center and `n` leaves.
    Star(usize),
    CompleteBipartite(usize, usize),
    Union(Vec<SpineFamily>),
}

impl SpineFamily {
    pub fn validate(&self) -> Result<()> {
        let bad = |family: &'static str, detail: String| Err(Error::Parameter { family, detail });
        match *self {
            SpineFamily::Path(_) => Ok(()),
            SpineFamily::Cycle(n) if n < 3 => bad("cycle", format!("needs n >= 3, got {n}")),
            SpineFamily::Complete(0) => bad("complete", "needs n >= 1, got 0".into()),
            SpineFamily::Star(0) => bad("star", "needs n >= 1, got 0".into()),
            SpineFamily::CompleteBipartite(u, v) if u == 0 || v == 0 => {
                bad("kbip", format!("needs u, v >= 1, got ({u}, {v})"))
            }
            SpineFamily::Union(ref parts) => parts.iter().try_for_each(SpineFamily::validate),
            _ => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            SpineFamily::Path(n) | SpineFamily::Cycle(n) | SpineFamily::Complete(n) => *n,
            SpineFamily::Star(n) => n + 1,
            SpineFamily::CompleteBipartite(u, v) => u + v,
            SpineFamily::Union(parts) => parts.iter().map(SpineFamily::vertex_count).sum(),
        }
    }

    /// Recognizes a spine from its build description. `null(r)` counts as a
    /// union of `r` single vertices; explicit graphs and nested products are
    /// not recognized.
    pub fn from_spec(spec: &GraphSpec) -> Option<SpineFamily> {
        let family = match spec {
            GraphSpec::Path(n) => SpineFamily::Path(*n),
            GraphSpec::Cycle(n) => SpineFamily::Cycle(*n),
            GraphSpec::Complete(n) => SpineFamily::Complete(*n),
            GraphSpec::Star(n) => SpineFamily::Star(*n),
            GraphSpec::CompleteBipartite(u, v) => SpineFamily::CompleteBipartite(*u, *v),
            GraphSpec::Null(1) => SpineFamily::Path(1),
            GraphSpec::Null(r) => SpineFamily::Union(vec![SpineFamily::Path(1); *r]),
            GraphSpec::Union(parts) => {
                let mut flat = Vec::new();
                for p in parts {
                    match SpineFamily::from_spec(p)? {
                        SpineFamily::Union(inner) => flat.extend(inner),
                        single => flat.push(single),
                    }
                }
                SpineFamily::Union(flat)
            }
            GraphSpec::Corona(..) | GraphSpec::Bristle(..) | GraphSpec::Explicit(..) => return None,
        };
        Some(family)
    }

    pub fn to_spec(&self) -> GraphSpec {
        match self {
            SpineFamily::Path(n) => GraphSpec::Path(*n),
            SpineFamily::Cycle(n) => GraphSpec::Cycle(*n),
            SpineFamily::Complete(n) => GraphSpec::Complete(*n),
            SpineFamily::Star(n) => GraphSpec::Star(*n),
            SpineFamily::CompleteBipartite(u, v) => GraphSpec::CompleteBipartite(*u, *v),
            SpineFamily::Union(parts) => GraphSpec::Union(parts.iter().map(SpineFamily::to_spec).collect()),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        self.to_spec().build()
    }

    fn name(&self) -> &'static str {
        match self {
            SpineFamily::Path(_) => "path",
            SpineFamily::Cycle(_) => "cycle",
            SpineFamily::Complete(_) => "complete",
            SpineFamily::Star(_) => "star",
            SpineFamily::CompleteBipartite(..) => "complete bipartite",
            SpineFamily::Union(_) => "disjoint union",
        }
    }
}

/// Invariants of the fiber graph `H` that the closed forms consume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseInvariants {
    /// `t = depth(K[V(H')]/I(H'))`.
    pub depth_h: usize,
    pub sdepth_h_lower: usize,
    /// Whether `sdepth_h_lower` is known to be the exact value.
    pub sdepth_exact: bool,
    /// `r = reg(K[V(H')]/I(H'))`.
    pub reg_h: usize,
    pub dim_h: usize,
    /// `|i(H)|`.
    pub iso_count: usize,
    pub vertex_count: usize,
    pub is_null: bool,
    pub is_complete: bool,
    pub provenance: Vec<String>,
}

impl BaseInvariants {
    /// `t + |i(H)|`, the quantity every depth formula scales.
    pub fn depth_plus_isolated(&self) -> usize {
        self.depth_h + self.iso_count
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Contribution {
    depth: usize,
    sdepth: usize,
    sdepth_exact: bool,
    reg: usize,
    dim: usize,
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Connected-graph families whose edge-ideal invariants are classical.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum KnownComponent {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    CompleteBipartite(usize, usize),
}

impl KnownComponent {
    fn recognize(g: &Graph) -> Option<KnownComponent> {
        let n = g.n_vertices();
        if n < 2 || combinatorics::connected_components(g).len() != 1 {
            return None;
        }
        if g.is_complete() {
            return Some(KnownComponent::Complete(n));
        }
        let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        if degrees.iter().all(|&d| d == 2) {
            return Some(KnownComponent::Cycle(n));
        }
        if g.n_edges() == n - 1 && degrees.iter().all(|&d| d <= 2) {
            return Some(KnownComponent::Path(n));
        }
        // Complete bipartite: the non-neighbours of vertex 0 (itself
        // included) form one side. Every cross pair being an edge, with
        // exactly u*v edges in total, leaves no room for edges inside a side.
        let side: Vec<usize> = (0..n).filter(|&v| v == 0 || !g.has_edge(0, v)).collect();
        let u = side.len();
        let v = n - u;
        let crosses = |a: usize| (0..n).filter(|b| !side.contains(b)).all(|b| g.has_edge(a, b));
        if v > 0 && g.n_edges() == u * v && side.iter().all(|&a| crosses(a)) {
            return Some(KnownComponent::CompleteBipartite(u.min(v), u.max(v)));
        }
        None
    }

    fn contribution(self) -> Contribution {
        match self {
            KnownComponent::Complete(_) => Contribution { depth: 1, sdepth: 1, sdepth_exact: true, reg: 1, dim: 1 },
            KnownComponent::Path(m) => Contribution {
                depth: ceil_div(m, 3),
                sdepth: ceil_div(m, 3),
                sdepth_exact: true,
                reg: ceil_div(m - 1, 3),
                dim: ceil_div(m, 2),
            },
            KnownComponent::Cycle(q) => Contribution {
                depth: ceil_div(q - 1, 3),
                sdepth: ceil_div(q - 1, 3),
                sdepth_exact: false,
                reg: (q + 1) / 3,
                dim: ceil_div(q - 1, 2),
            },
            KnownComponent::CompleteBipartite(u, v) => {
                Contribution { depth: 1, sdepth: 1, sdepth_exact: false, reg: 1, dim: u.max(v) }
            }
        }
    }

    fn describe(self) -> String {
        match self {
            KnownComponent::Complete(m) => format!("K_{m}"),
            KnownComponent::Cycle(q) => format!("C_{q}"),
            KnownComponent::Path(m) => format!("P_{m}"),
            KnownComponent::CompleteBipartite(u, v) => format!("K_{{{u},{v}}}"),
        }
    }
}

/// Invariants of `H`, from closed forms for each recognized component of
/// `H'` and from the oracle for the rest. Depth, regularity and dimension
/// add over components; Stanley depth is superadditive, so the sum of
/// component values is a lower bound.
pub fn base_invariants(h: &Graph, oracle: Option<&OracleConfig>) -> Result<BaseInvariants> {
    let iso_count = h.isolated_vertices().len();
    let core = h.without_isolated();
    let mut total = Contribution { depth: 0, sdepth: 0, sdepth_exact: true, reg: 0, dim: 0 };
    let mut recognized = Vec::new();
    let mut oracle_used = false;
    let components = combinatorics::connected_components(&core);
    for comp in &components {
        let sub = core.induced_subgraph(comp)?;
        let part = match KnownComponent::recognize(&sub) {
            Some(known) => {
                recognized.push(known.describe());
                known.contribution()
            }
            None => {
                let Some(cfg) = oracle else {
                    return Err(Error::NeedsOracle(format!(
                        "fiber component on {} vertices outside the known families",
                        sub.n_vertices()
                    )));
                };
                oracle_used = true;
                let table = oracle::betti_table(&sub, cfg.characteristic, cfg.max_oracle_vertices)?;
                let (sdepth, exact) = if sub.n_vertices() <= cfg.max_sdepth_vertices {
                    (oracle::sdepth_oracle(&sub, cfg.max_sdepth_vertices)?.value, true)
                } else {
                    // Any nonempty face poset admits tops of size >= 1.
                    (1, false)
                };
                Contribution {
                    depth: table.depth(),
                    sdepth,
                    sdepth_exact: exact,
                    reg: table.reg(),
                    dim: oracle::dim_oracle(&sub)?,
                }
            }
        };
        total.depth += part.depth;
        total.sdepth += part.sdepth;
        total.reg += part.reg;
        total.dim += part.dim;
        total.sdepth_exact &= part.sdepth_exact;
    }
    if components.len() > 1 {
        total.sdepth_exact = false;
    }
    let mut provenance = Vec::new();
    if !recognized.is_empty() {
        provenance.push(format!("fiber invariants: closed forms for {}", recognized.join(", ")));
    }
    if oracle_used {
        provenance.push("fiber invariants: oracle-backed base invariants".to_string());
    }
    Ok(BaseInvariants {
        depth_h: total.depth,
        sdepth_h_lower: total.sdepth,
        sdepth_exact: total.sdepth_exact,
        reg_h: total.reg,
        dim_h: total.dim,
        iso_count,
        vertex_count: h.n_vertices(),
        is_null: h.is_null(),
        is_complete: h.is_complete() && h.n_vertices() > 0,
        provenance,
    })
}

fn require_fiber(b: &BaseInvariants) -> Result<()> {
    if b.vertex_count == 0 {
        return Err(Error::OutOfRange("the fiber graph H needs at least one vertex".into()));
    }
    Ok(())
}

/// The common shape of the depth and Stanley depth formulas, with
/// `s = (depth or sdepth of H) + |i(H)|`.
fn spine_depth(x: &SpineFamily, s: usize) -> usize {
    match *x {
        SpineFamily::Path(0) => 0,
        SpineFamily::Path(n) => ceil_div(n, 2) + ceil_div(n - 1, 2) * s,
        SpineFamily::Cycle(n) => ceil_div(n - 1, 2) + ceil_div(n, 2) * s,
        SpineFamily::Complete(n) => 1 + (n - 1) * s,
        SpineFamily::Star(n) => n + s,
        SpineFamily::CompleteBipartite(u, v) => u.min(v) * s + u.max(v),
        SpineFamily::Union(ref parts) => parts.iter().map(|p| spine_depth(p, s)).sum(),
    }
}

pub fn depth_formula(x: &SpineFamily, b: &BaseInvariants) -> Result<usize> {
    x.validate()?;
    require_fiber(b)?;
    Ok(spine_depth(x, b.depth_plus_isolated()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdepthValue {
    pub value: usize,
    /// `false` means `value` is only a lower bound.
    pub exact: bool,
}

/// Stanley depth: exact for a null fiber on a single spine family,
/// otherwise a lower bound.
pub fn sdepth_formula(x: &SpineFamily, b: &BaseInvariants) -> Result<SdepthValue> {
    x.validate()?;
    require_fiber(b)?;
    let value = spine_depth(x, b.sdepth_h_lower + b.iso_count);
    let exact = b.is_null && !matches!(x, SpineFamily::Union(_));
    Ok(SdepthValue { value, exact })
}

fn spine_reg(x: &SpineFamily, b: &BaseInvariants) -> usize {
    if !b.is_null {
        return x.vertex_count() * b.reg_h;
    }
    match *x {
        SpineFamily::Path(n) => ceil_div(n, 2),
        SpineFamily::Cycle(n) => ceil_div(n - 1, 2),
        SpineFamily::Complete(_) => 1,
        SpineFamily::Star(n) => n,
        SpineFamily::CompleteBipartite(u, v) => u.max(v),
        SpineFamily::Union(ref parts) => parts.iter().map(|p| spine_reg(p, b)).sum(),
    }
}

pub fn reg_formula(x: &SpineFamily, b: &BaseInvariants) -> Result<usize> {
    x.validate()?;
    require_fiber(b)?;
    Ok(spine_reg(x, b))
}

/// Auslander–Buchsbaum: `|V(X ⊙ H)| - depth`.
pub fn pdim_formula(x: &SpineFamily, b: &BaseInvariants) -> Result<usize> {
    let depth = depth_formula(x, b)?;
    Ok(x.vertex_count() * (b.vertex_count + 1) - depth)
}

/// Krull dimension for an arbitrary spine: `|V(X)|·(dim(H') + |i(H)|)`.
pub fn krull_dim_formula(x: &Graph, b: &BaseInvariants) -> Result<usize> {
    if x.n_vertices() == 0 {
        return Err(Error::OutOfRange("the spine needs at least one vertex".into()));
    }
    Ok(x.n_vertices() * (b.dim_h + b.iso_count))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CmVerdict {
    Yes,
    No,
    NotCovered,
}

impl CmVerdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            CmVerdict::Yes
        } else {
            CmVerdict::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CmVerdict::Yes => "yes",
            CmVerdict::No => "no",
            CmVerdict::NotCovered => "not-covered",
        }
    }
}

impl fmt::Display for CmVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `X ⊙ H` is Cohen–Macaulay iff `H` is complete (`K_1` included), for
/// every covered spine and disjoint unions of covered spines.
pub fn is_cm_formula(x: &SpineFamily, h: &Graph) -> Result<CmVerdict> {
    x.validate()?;
    if h.n_vertices() == 0 || x.vertex_count() == 0 || contains_empty_path(x) {
        return Ok(CmVerdict::NotCovered);
    }
    Ok(CmVerdict::from_bool(h.is_complete()))
}

fn contains_empty_path(x: &SpineFamily) -> bool {
    match x {
        SpineFamily::Path(0) => true,
        SpineFamily::Union(parts) => parts.iter().any(contains_empty_path),
        _ => false,
    }
}

/// All invariants of one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub depth: usize,
    pub sdepth: SdepthValue,
    pub reg: usize,
    pub pdim: usize,
    pub dim: usize,
    pub cohen_macaulay: CmVerdict,
    pub provenance: Vec<String>,
    #[serde(skip)]
    pub n_vertices: usize,
}

/// Evaluates every closed form for `X ⊙ H`.
pub fn evaluate(x: &SpineFamily, h: &Graph, oracle: Option<&OracleConfig>) -> Result<InvariantReport> {
    x.validate()?;
    let b = base_invariants(h, oracle)?;
    evaluate_with_base(x, h, &b)
}

pub fn evaluate_with_base(x: &SpineFamily, h: &Graph, b: &BaseInvariants) -> Result<InvariantReport> {
    let spine = x.build()?;
    let depth = depth_formula(x, b)?;
    let sdepth = sdepth_formula(x, b)?;
    let reg = reg_formula(x, b)?;
    let pdim = pdim_formula(x, b)?;
    let dim = krull_dim_formula(&spine, b)?;
    let cohen_macaulay = is_cm_formula(x, h)?;
    let mut provenance = b.provenance.clone();
    let family = x.name();
    provenance.push(format!("depth: {family} spine closed form"));
    provenance.push(if sdepth.exact {
        format!("sdepth: exact {family} spine value for a null fiber")
    } else {
        format!("sdepth: {family} spine lower bound")
    });
    provenance.push(if b.is_null {
        format!("reg: {family} spine closed form, null fiber")
    } else {
        format!("reg: {family} spine closed form, |V(X)| * reg(H)")
    });
    provenance.push("pdim: Auslander-Buchsbaum, |V| - depth".to_string());
    provenance.push("dim: |V(X)| * (dim(H') + |i(H)|)".to_string());
    provenance.push("cm: complete-fiber characterization".to_string());
    Ok(InvariantReport {
        depth,
        sdepth,
        reg,
        pdim,
        dim,
        cohen_macaulay,
        provenance,
        n_vertices: x.vertex_count() * (h.n_vertices() + 1),
    })
}

/// Convenience for `X ⊙ H` given as specs of the two factors.
pub fn evaluate_specs(spine: &GraphSpec, fiber: &GraphSpec, oracle: Option<&OracleConfig>) -> Result<InvariantReport> {
    let x = SpineFamily::from_spec(spine)
        .ok_or_else(|| Error::OutOfRange(format!("{spine} is not a covered spine family")))?;
    evaluate(&x, &fiber.build()?, oracle)
}

/// `K_1` as a graph, for callers that need the trivial fiber.
pub fn trivial_graph() -> Graph {
    graph::null(1)
}
