//! Deterministic generators for the named graph families, plus closed-form
//! ground eigenfunctions on the star-like path trees.
//!
//! Vertex numbering is fixed for golden-file stability: path vertices first,
//! then pendant-interior attachment groups in order, then leaves grouped by
//! the vertex they attach to.

use crate::bounds::{self, BoundsError};
use crate::graph::{BoundaryGraph, Graph, GraphError, VertexId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(&'static str),
    #[error("parameters leave an intended interior vertex degenerate")]
    DegenerateInterior,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Star with interior center and `leaf_count` boundary leaves.
pub fn gen_star(leaf_count: usize) -> Result<BoundaryGraph, FamilyError> {
    if leaf_count < 2 {
        return Err(FamilyError::ParamOutOfRange("star needs at least 2 leaves"));
    }
    let edges: Vec<(VertexId, VertexId)> = (1..=leaf_count).map(|v| (0, v)).collect();
    let boundary: Vec<VertexId> = (1..=leaf_count).collect();
    Ok(BoundaryGraph::new(leaf_count + 1, &edges, &boundary)?)
}

/// Path on `n` vertices with the two endpoints as boundary.
pub fn gen_path(n: usize) -> Result<BoundaryGraph, FamilyError> {
    if n < 3 {
        return Err(FamilyError::ParamOutOfRange("path needs n >= 3"));
    }
    let edges: Vec<(VertexId, VertexId)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Ok(BoundaryGraph::new(n, &edges, &[0, n - 1])?)
}

/// Path-cliques graph: a path `v_0 .. v_{2 half_length}` whose two endpoints
/// form the boundary, with a `(cluster - 1)`-clique fully joined to each
/// internal path vertex. The interior then has `(2 half_length - 1) * cluster`
/// vertices and the diameter is `2 half_length`.
///
/// Cliques sit on every internal vertex `v_1 .. v_{2 half_length - 1}`; that
/// is the reading consistent with the interior count above.
pub fn gen_path_cliques(half_length: usize, cluster: usize) -> Result<BoundaryGraph, FamilyError> {
    if half_length < 2 {
        return Err(FamilyError::ParamOutOfRange(
            "path-cliques needs half_length >= 2",
        ));
    }
    if cluster < 1 {
        return Err(FamilyError::ParamOutOfRange(
            "path-cliques needs cluster >= 1",
        ));
    }
    let path_len = 2 * half_length;
    let mut edges: Vec<(VertexId, VertexId)> = (0..path_len).map(|i| (i, i + 1)).collect();
    let mut next = path_len + 1;
    for station in 1..path_len {
        let block: Vec<VertexId> = (0..cluster - 1).map(|i| next + i).collect();
        next += cluster - 1;
        for (i, &u) in block.iter().enumerate() {
            edges.push((station, u));
            for &w in &block[i + 1..] {
                edges.push((u, w));
            }
        }
    }
    Ok(BoundaryGraph::new(next, &edges, &[0, path_len])?)
}

/// Parameters of a star-like path tree, in grammar order `p,q,c,d,e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlpParams {
    /// p: leaves attached to each path endpoint (one batch when `path_len = 0`).
    pub end_leaves: usize,
    /// q: leaves attached to every pendant-interior vertex and every internal
    /// path vertex.
    pub branch_leaves: usize,
    /// c: length of the central path `u_0 .. u_c`.
    pub path_len: usize,
    /// d: pendant-interior vertices attached to `u_0`.
    pub head_branches: usize,
    /// e: pendant-interior vertices attached to `u_c`.
    pub tail_branches: usize,
}

impl SlpParams {
    pub fn interior_count(&self) -> usize {
        self.path_len + 1 + self.head_branches + self.tail_branches
    }

    pub fn leaf_count(&self) -> usize {
        let ends = if self.path_len == 0 { 1 } else { 2 };
        let mids = self.path_len.saturating_sub(1);
        ends * self.end_leaves
            + self.branch_leaves * (self.head_branches + self.tail_branches + mids)
    }
}

/// Star-like path tree. Interior ids: `0..=c` is the path, then the `u_0`
/// branches, then the `u_c` branches; leaves follow. The boundary is the set
/// of attached leaves.
pub fn gen_slp(
    end_leaves: usize,
    branch_leaves: usize,
    path_len: usize,
    head_branches: usize,
    tail_branches: usize,
) -> Result<BoundaryGraph, FamilyError> {
    let params = SlpParams {
        end_leaves,
        branch_leaves,
        path_len,
        head_branches,
        tail_branches,
    };
    gen_slp_params(&params)
}

pub fn gen_slp_params(params: &SlpParams) -> Result<BoundaryGraph, FamilyError> {
    let (p, q, c, d, e) = (
        params.end_leaves,
        params.branch_leaves,
        params.path_len,
        params.head_branches,
        params.tail_branches,
    );
    if q < 1 {
        return Err(FamilyError::ParamOutOfRange("slp needs branch_leaves >= 1"));
    }
    if params.leaf_count() == 0 {
        return Err(FamilyError::DegenerateInterior);
    }
    let head_start = c + 1;
    let tail_start = head_start + d;
    let interior = params.interior_count();
    let mut edges: Vec<(VertexId, VertexId)> = (0..c).map(|i| (i, i + 1)).collect();
    for i in 0..d {
        edges.push((0, head_start + i));
    }
    for j in 0..e {
        edges.push((c, tail_start + j));
    }
    let mut next = interior;
    let mut leaves = Vec::new();
    let mut attach = |host: VertexId, count: usize, edges: &mut Vec<(usize, usize)>| {
        for _ in 0..count {
            edges.push((host, next));
            leaves.push(next);
            next += 1;
        }
    };
    attach(0, p, &mut edges);
    if c >= 1 {
        attach(c, p, &mut edges);
    }
    for i in 0..d {
        attach(head_start + i, q, &mut edges);
    }
    for j in 0..e {
        attach(tail_start + j, q, &mut edges);
    }
    for mid in 1..c {
        attach(mid, q, &mut edges);
    }
    Ok(BoundaryGraph::new(next, &edges, &leaves)?)
}

/// Tree of diameter `core_len + 2`: a path on `core_len + 1` vertices with
/// `end_leaves` new vertices attached to each of its two ends.
pub fn gen_mohar(end_leaves: usize, core_len: usize) -> Result<Graph, FamilyError> {
    if end_leaves < 1 || core_len < 1 {
        return Err(FamilyError::ParamOutOfRange("mohar tree needs k, t >= 1"));
    }
    let mut edges: Vec<(VertexId, VertexId)> = (0..core_len).map(|i| (i, i + 1)).collect();
    let mut next = core_len + 1;
    for end in [0, core_len] {
        for _ in 0..end_leaves {
            edges.push((end, next));
            next += 1;
        }
    }
    Ok(Graph::new(next, &edges)?)
}

/// A generated star-like path tree together with its closed-form ground
/// eigenvalue and eigenfunction (indexed by ascending interior id).
#[derive(Debug, Clone)]
pub struct SigmaWitness {
    pub params: SlpParams,
    pub graph: BoundaryGraph,
    pub value: f64,
    pub eigenfunction: Vec<f64>,
}

/// Hub tree for `b = ak + s`: `1` at the hub, `1/(a + 1 - sigma_1)` elsewhere.
pub fn sigma1_witness(a: usize, k: usize, s: usize) -> Result<SigmaWitness, FamilyError> {
    let value = bounds::sigma1(a, k, s)?;
    let params = SlpParams {
        end_leaves: a + s,
        branch_leaves: a,
        path_len: 0,
        head_branches: k - 1,
        tail_branches: 0,
    };
    let graph = gen_slp_params(&params)?;
    let t = 1.0 / (a as f64 + 1.0 - value);
    let mut f = vec![t; k];
    f[0] = 1.0;
    Ok(SigmaWitness {
        params,
        graph,
        value,
        eigenfunction: f,
    })
}

/// Hub tree for `b = ak + k - 1`: `1` at the hub, `1/(a + 2 - sigma_2)` elsewhere.
pub fn sigma2_witness(a: usize, k: usize) -> Result<SigmaWitness, FamilyError> {
    let value = bounds::sigma2(a, k)?;
    let params = SlpParams {
        end_leaves: a,
        branch_leaves: a + 1,
        path_len: 0,
        head_branches: k - 1,
        tail_branches: 0,
    };
    let graph = gen_slp_params(&params)?;
    let t = 1.0 / (a as f64 + 2.0 - value);
    let mut f = vec![t; k];
    f[0] = 1.0;
    Ok(SigmaWitness {
        params,
        graph,
        value,
        eigenfunction: f,
    })
}

/// The three tied trees for even `k` and `b = ak + 2`, with their ground
/// eigenfunctions, in path-length order 1, 2, 3.
pub fn sigma3_witnesses(a: usize, k: usize) -> Result<[SigmaWitness; 3], FamilyError> {
    let value = bounds::sigma3(a, k)?;
    let t = 1.0 / (a as f64 + 1.0 - value);
    let inv = a as f64 + 1.0 - value;

    let params1 = SlpParams {
        end_leaves: a + 1,
        branch_leaves: a,
        path_len: 1,
        head_branches: (k - 2) / 2,
        tail_branches: (k - 2) / 2,
    };
    let graph1 = gen_slp_params(&params1)?;
    let mut f1 = vec![t; params1.interior_count()];
    f1[0] = 1.0;
    f1[1] = 1.0;

    let params2 = SlpParams {
        end_leaves: a + 1,
        branch_leaves: a,
        path_len: 2,
        head_branches: (k - 4) / 2,
        tail_branches: (k - 2) / 2,
    };
    let graph2 = gen_slp_params(&params2)?;
    // 1 on u_1, u_2 and the u_0 branches; a+1-sigma at u_0; t on the u_2 branches
    let mut f2 = vec![1.0; params2.interior_count()];
    f2[0] = inv;
    for j in 0..params2.tail_branches {
        f2[3 + params2.head_branches + j] = t;
    }

    let params3 = SlpParams {
        end_leaves: a + 1,
        branch_leaves: a,
        path_len: 3,
        head_branches: (k - 4) / 2,
        tail_branches: (k - 4) / 2,
    };
    let graph3 = gen_slp_params(&params3)?;
    let mut f3 = vec![t; params3.interior_count()];
    f3[0] = 1.0;
    f3[3] = 1.0;

    Ok([
        SigmaWitness {
            params: params1,
            graph: graph1,
            value,
            eigenfunction: f1,
        },
        SigmaWitness {
            params: params2,
            graph: graph2,
            value,
            eigenfunction: f2,
        },
        SigmaWitness {
            params: params3,
            graph: graph3,
            value,
            eigenfunction: f3,
        },
    ])
}

/// The unique extremal tree for odd `k` and `b = ak + 2`: `1` at `u_0, u_2`,
/// `2/(a + 2 - sigma_4)` at `u_1`, `1/(a + 1 - sigma_4)` elsewhere.
pub fn sigma4_witness(a: usize, k: usize) -> Result<SigmaWitness, FamilyError> {
    let value = bounds::sigma4(a, k)?;
    let params = SlpParams {
        end_leaves: a + 1,
        branch_leaves: a,
        path_len: 2,
        head_branches: (k - 3) / 2,
        tail_branches: (k - 3) / 2,
    };
    let graph = gen_slp_params(&params)?;
    let t = 1.0 / (a as f64 + 1.0 - value);
    let mut f = vec![t; params.interior_count()];
    f[0] = 1.0;
    f[2] = 1.0;
    f[1] = 2.0 / (a as f64 + 2.0 - value);
    Ok(SigmaWitness {
        params,
        graph,
        value,
        eigenfunction: f,
    })
}
