//! Ground-truth invariants of `S/I(G)` for small graphs, computed without
//! reference to any closed form.

mod betti;
mod complex;
mod sdepth;

pub use betti::{betti_table, pdim_reg_depth_from_betti, BettiTable};
pub use complex::{independence_complex, SimplicialComplex};
pub use sdepth::{sdepth_oracle, IntervalPartition, SdepthResult};

use crate::combinatorics;
use crate::error::Result;
use crate::graph::Graph;
use crate::linalg::Characteristic;

pub const DEFAULT_MAX_ORACLE_VERTICES: usize = 20;
pub const DEFAULT_MAX_SDEPTH_VERTICES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub characteristic: Characteristic,
    pub max_oracle_vertices: usize,
    pub max_sdepth_vertices: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            characteristic: Characteristic::Zero,
            max_oracle_vertices: DEFAULT_MAX_ORACLE_VERTICES,
            max_sdepth_vertices: DEFAULT_MAX_SDEPTH_VERTICES,
        }
    }
}

/// Krull dimension of `S/I(G)`: the independence number.
pub fn dim_oracle(g: &Graph) -> Result<usize> {
    combinatorics::independence_number(g).map(|r| r.size)
}

/// Cohen–Macaulay test: depth from the Betti table against the Krull dimension.
pub fn is_cm_oracle(g: &Graph, config: &OracleConfig) -> Result<bool> {
    let table = betti_table(g, config.characteristic, config.max_oracle_vertices)?;
    Ok(table.depth() == dim_oracle(g)?)
}

/// Everything the oracle knows about one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleInvariants {
    pub n_vertices: usize,
    pub depth: usize,
    pub reg: usize,
    pub pdim: usize,
    pub dim: usize,
    /// Present only when the graph is within the Stanley depth cap.
    pub sdepth: Option<usize>,
    pub betti: BettiTable,
}

impl OracleInvariants {
    pub fn cohen_macaulay(&self) -> bool {
        self.depth == self.dim
    }
}

pub fn oracle_invariants(g: &Graph, config: &OracleConfig) -> Result<OracleInvariants> {
    let betti = betti_table(g, config.characteristic, config.max_oracle_vertices)?;
    let (pdim, reg, depth) = pdim_reg_depth_from_betti(&betti);
    let sdepth = if g.n_vertices() <= config.max_sdepth_vertices {
        Some(sdepth_oracle(g, config.max_sdepth_vertices)?.value)
    } else {
        None
    };
    Ok(OracleInvariants { n_vertices: g.n_vertices(), depth, reg, pdim, dim: dim_oracle(g)?, sdepth, betti })
}
