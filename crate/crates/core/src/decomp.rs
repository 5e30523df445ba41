//! Constructive interior-boundary path systems: the shortest-path forest
//! covering and the center-rooted tree decomposition, plus an independent
//! certifier measuring (c, p, max length) of any path collection.

use crate::graph::{BoundaryGraph, Graph, VertexId};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DecompError {
    #[error("instance is not a tree with its leaves as boundary")]
    NotATree,
    #[error("tree has fewer than 3 vertices")]
    TooSmall,
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

/// A multiset of interior-boundary paths: each path starts at an interior
/// vertex, ends at a boundary vertex, is simple, and every non-final vertex
/// is interior.
#[derive(Debug, Clone, Serialize)]
pub struct PathCollection {
    pub paths: Vec<Vec<VertexId>>,
}

/// Measured covering/packing data of a path collection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoveringPackingCertificate {
    /// c: minimum occurrence count over interior vertices. A certificate is
    /// usable in bounds only when `covering >= 1`.
    pub covering: usize,
    /// p: maximum occurrence count over edges.
    pub packing: usize,
    /// Longest path length in edges.
    pub max_len: usize,
}

/// One path per interior vertex, following from each vertex its first step
/// on a shortest path to the boundary (ties broken by ascending vertex id).
/// The arcs form a functional forest, so the result is a 1-covering with
/// every path of length at most the inscribed radius.
pub fn shortest_path_forest_cover(bg: &BoundaryGraph) -> PathCollection {
    let g = bg.graph();
    let dist = g.bfs_distances(bg.boundary());
    let paths = bg
        .interior()
        .iter()
        .map(|&v| {
            let mut path = vec![v];
            let mut cur = v;
            while bg.is_interior(cur) {
                let down = dist[cur].expect("connected") - 1;
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&w| dist[w] == Some(down))
                    .expect("some neighbor is one step closer to the boundary");
                path.push(next);
                cur = next;
            }
            path
        })
        .collect();
    PathCollection { paths }
}

/// Vertices at maximum distance from the leaf set, ascending. Trees whose
/// diameter is 2r or 2r+1 for the inscribed radius r have one such center
/// or two adjacent ones; other trees can have more.
pub fn tree_center(g: &Graph) -> Result<Vec<VertexId>, DecompError> {
    if !g.is_tree() || g.vertex_count() < 2 {
        return Err(DecompError::NotATree);
    }
    let leaves = g.leaves();
    let dist = g.bfs_distances(&leaves);
    let radius = (0..g.vertex_count())
        .map(|v| dist[v].expect("tree is connected"))
        .max()
        .unwrap();
    Ok((0..g.vertex_count())
        .filter(|&v| dist[v] == Some(radius))
        .collect())
}

/// Iterative center-rooted decomposition of a tree with leaf boundary:
/// starting from the tree rooted at a center, repeatedly take the pending
/// subtree whose root is closest to the center (ties by smaller root id),
/// peel one shortest root-to-boundary path (ties lexicographic), and re-root
/// the remaining components at their attachment vertices.
///
/// The output is always a 1-covering and 1-packing. When the tree has one
/// center the paths have length at most r; with two adjacent centers at most
/// r + 1.
pub fn tree_path_decomposition(bg: &BoundaryGraph) -> Result<PathCollection, DecompError> {
    let g = bg.graph();
    if g.vertex_count() < 3 {
        return Err(DecompError::TooSmall);
    }
    if !bg.is_leaf_boundary_tree() {
        return Err(DecompError::NotATree);
    }
    let centers = tree_center(g)?;
    let root = centers[0];
    let dist_root = g.bfs_distances(&[root]);

    let edge_key = |u: VertexId, v: VertexId| (u.min(v), u.max(v));
    let mut removed: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut pending: BTreeSet<(usize, VertexId)> = BTreeSet::new();
    pending.insert((0, root));
    let mut paths = Vec::new();

    while let Some((_, v)) = pending.pop_first() {
        // component of v under the unremoved edges
        let mut comp: HashSet<VertexId> = HashSet::new();
        let mut boundary_here = Vec::new();
        let mut queue = VecDeque::new();
        comp.insert(v);
        queue.push_back(v);
        let mut edges_left = false;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if removed.contains(&edge_key(u, w)) {
                    continue;
                }
                edges_left = true;
                if comp.insert(w) {
                    if bg.is_boundary(w) {
                        boundary_here.push(w);
                    }
                    queue.push_back(w);
                }
            }
        }
        if !edges_left {
            continue;
        }
        // distances to the component's boundary, then the lexicographically
        // smallest shortest path from the root
        boundary_here.sort_unstable();
        let mut to_boundary: HashMap<VertexId, usize> = HashMap::new();
        let mut bq = VecDeque::new();
        for &b in &boundary_here {
            to_boundary.insert(b, 0);
            bq.push_back(b);
        }
        while let Some(u) = bq.pop_front() {
            for &w in g.neighbors(u) {
                if removed.contains(&edge_key(u, w)) || !comp.contains(&w) {
                    continue;
                }
                if !to_boundary.contains_key(&w) {
                    to_boundary.insert(w, to_boundary[&u] + 1);
                    bq.push_back(w);
                }
            }
        }
        let mut path = vec![v];
        let mut cur = v;
        while !bg.is_boundary(cur) {
            let here = to_boundary[&cur];
            let next = g
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| {
                    !removed.contains(&edge_key(cur, w)) && to_boundary.get(&w) == Some(&(here - 1))
                })
                .expect("a shortest path step exists");
            path.push(next);
            cur = next;
        }
        for pair in path.windows(2) {
            removed.insert(edge_key(pair[0], pair[1]));
        }
        // re-root surviving components at their attachment vertex on the path
        for &u in &path {
            if bg.is_interior(u)
                && g.neighbors(u)
                    .iter()
                    .any(|&w| !removed.contains(&edge_key(u, w)))
            {
                pending.insert((dist_root[u].expect("connected"), u));
            }
        }
        paths.push(path);
    }
    Ok(PathCollection { paths })
}

/// Exact multiset counts for a path collection, independent of how it was
/// produced: minimum interior-vertex coverage, maximum edge multiplicity,
/// and the longest path length.
pub fn certify(
    bg: &BoundaryGraph,
    pc: &PathCollection,
) -> Result<CoveringPackingCertificate, DecompError> {
    let g = bg.graph();
    let mut vertex_occurrences = vec![0usize; g.vertex_count()];
    let mut edge_occurrences: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut max_len = 0usize;
    for (i, path) in pc.paths.iter().enumerate() {
        if path.len() < 2 {
            return Err(DecompError::InvalidPath(format!(
                "path {i} has fewer than two vertices"
            )));
        }
        let mut seen = HashSet::new();
        for (j, &v) in path.iter().enumerate() {
            if v >= g.vertex_count() {
                return Err(DecompError::InvalidPath(format!(
                    "path {i} references vertex {v} out of range"
                )));
            }
            if !seen.insert(v) {
                return Err(DecompError::InvalidPath(format!(
                    "path {i} repeats vertex {v}"
                )));
            }
            let last = j == path.len() - 1;
            if last != bg.is_boundary(v) {
                return Err(DecompError::InvalidPath(format!(
                    "path {i}: vertex {v} is {} but placed {}",
                    if bg.is_boundary(v) {
                        "boundary"
                    } else {
                        "interior"
                    },
                    if last { "last" } else { "before the end" },
                )));
            }
        }
        for pair in path.windows(2) {
            if !g.has_edge(pair[0], pair[1]) {
                return Err(DecompError::InvalidPath(format!(
                    "path {i}: {} and {} are not adjacent",
                    pair[0], pair[1]
                )));
            }
            *edge_occurrences
                .entry((pair[0].min(pair[1]), pair[0].max(pair[1])))
                .or_insert(0) += 1;
        }
        for &v in path {
            vertex_occurrences[v] += 1;
        }
        max_len = max_len.max(path.len() - 1);
    }
    let covering = bg
        .interior()
        .iter()
        .map(|&v| vertex_occurrences[v])
        .min()
        .unwrap_or(0);
    let packing = edge_occurrences.values().copied().max().unwrap_or(0);
    Ok(CoveringPackingCertificate {
        covering,
        packing,
        max_len,
    })
}
