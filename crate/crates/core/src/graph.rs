//! Undirected simple graphs with a validated boundary/interior partition.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge {{{0}, {1}}} joins two boundary vertices")]
    BoundaryEdge(VertexId, VertexId),
    #[error("boundary vertex {0} has no interior neighbor")]
    DanglingBoundary(VertexId),
    #[error("interior is empty")]
    EmptyInterior,
    #[error("boundary is empty")]
    EmptyBoundary,
    #[error("induced interior subgraph is disconnected")]
    DisconnectedInterior,
    #[error("graph is disconnected")]
    Disconnected,
}

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
        }
        Ok(Graph {
            adj,
            edge_count: edges.len(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices of degree one.
    pub fn leaves(&self) -> Vec<VertexId> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) == 1)
            .collect()
    }

    /// Multi-source BFS distances; `None` marks unreachable vertices.
    /// Neighbors are explored in ascending id order.
    pub fn bfs_distances(&self, sources: &[VertexId]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path length between `u` and `v`; `None` if disconnected.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.bfs_distances(&[u])[v]
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        self.bfs_distances(&[0]).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.edge_count == self.vertex_count() - 1 && self.is_connected()
    }
}

/// On-disk JSON form of a boundary graph. Field names are fixed;
/// unknown fields are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
    pub boundary: Vec<VertexId>,
}

/// A graph together with a validated boundary set `B`.
///
/// Construction enforces: no edge inside `B`, every boundary vertex has an
/// interior neighbor, the interior is non-empty and induces a connected
/// subgraph, and the whole graph is connected.
#[derive(Debug, Clone)]
pub struct BoundaryGraph {
    graph: Graph,
    is_boundary: Vec<bool>,
    boundary: Vec<VertexId>,
    interior: Vec<VertexId>,
    /// Position of each interior vertex in `interior`, `usize::MAX` for boundary.
    interior_pos: Vec<usize>,
}

impl BoundaryGraph {
    pub fn new(
        n: usize,
        edges: &[(VertexId, VertexId)],
        boundary: &[VertexId],
    ) -> Result<Self, GraphError> {
        let graph = Graph::new(n, edges)?;
        Self::from_graph(graph, boundary)
    }

    pub fn from_graph(graph: Graph, boundary: &[VertexId]) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        let mut is_boundary = vec![false; n];
        for &v in boundary {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            is_boundary[v] = true;
        }
        let boundary: Vec<VertexId> = (0..n).filter(|&v| is_boundary[v]).collect();
        let interior: Vec<VertexId> = (0..n).filter(|&v| !is_boundary[v]).collect();
        if interior.is_empty() {
            return Err(GraphError::EmptyInterior);
        }
        if boundary.is_empty() {
            return Err(GraphError::EmptyBoundary);
        }
        for (u, v) in graph.edges() {
            if is_boundary[u] && is_boundary[v] {
                return Err(GraphError::BoundaryEdge(u, v));
            }
        }
        for &b in &boundary {
            if !graph.neighbors(b).iter().any(|&w| !is_boundary[w]) {
                return Err(GraphError::DanglingBoundary(b));
            }
        }
        // Connectivity of the induced interior subgraph.
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[interior[0]] = true;
        queue.push_back(interior[0]);
        let mut reached = 1usize;
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                if !is_boundary[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != interior.len() {
            return Err(GraphError::DisconnectedInterior);
        }
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut interior_pos = vec![usize::MAX; n];
        for (i, &v) in interior.iter().enumerate() {
            interior_pos[v] = i;
        }
        Ok(BoundaryGraph {
            graph,
            is_boundary,
            boundary,
            interior,
            interior_pos,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Boundary vertices, ascending.
    pub fn boundary(&self) -> &[VertexId] {
        &self.boundary
    }

    /// Interior vertices, ascending.
    pub fn interior(&self) -> &[VertexId] {
        &self.interior
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        self.is_boundary[v]
    }

    pub fn is_interior(&self, v: VertexId) -> bool {
        !self.is_boundary[v]
    }

    /// Index of an interior vertex in the ascending interior ordering.
    pub fn interior_index(&self, v: VertexId) -> Option<usize> {
        if self.is_boundary[v] {
            None
        } else {
            Some(self.interior_pos[v])
        }
    }

    /// True when the graph is a tree whose boundary is exactly its leaf set.
    pub fn is_leaf_boundary_tree(&self) -> bool {
        self.graph.is_tree()
            && (0..self.graph.vertex_count())
                .all(|v| (self.graph.degree(v) == 1) == self.is_boundary[v])
    }

    pub fn metrics(&self) -> GraphMetrics {
        let g = &self.graph;
        let n = g.vertex_count();
        // dist(v, B) = 0 on B, so the sup reduces to a max over the interior.
        let dist_b = g.bfs_distances(&self.boundary);
        let inscribed_radius = self
            .interior
            .iter()
            .map(|&v| dist_b[v].expect("graph is connected"))
            .max()
            .unwrap();
        let mut diameter = 0usize;
        let mut circumscribed_radius = usize::MAX;
        for v in 0..n {
            let ecc = g
                .bfs_distances(&[v])
                .into_iter()
                .map(|d| d.expect("graph is connected"))
                .max()
                .unwrap();
            diameter = diameter.max(ecc);
            circumscribed_radius = circumscribed_radius.min(ecc);
        }
        let min_interior_degree = self.interior.iter().map(|&v| g.degree(v)).min().unwrap();
        let interior_boundary_edges = g
            .edges()
            .filter(|&(u, v)| self.is_boundary[u] != self.is_boundary[v])
            .count();
        GraphMetrics {
            inscribed_radius,
            diameter,
            circumscribed_radius,
            max_degree: g.max_degree(),
            min_interior_degree,
            interior_size: self.interior.len(),
            boundary_size: self.boundary.len(),
            interior_boundary_edges,
        }
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.graph.vertex_count(),
            edges: self.graph.edges().collect(),
            boundary: self.boundary.clone(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        BoundaryGraph::new(json.n, &json.edges, &json.boundary)
    }
}

/// Metric summary of a boundary graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    /// r: maximum over vertices of the distance to the boundary set.
    pub inscribed_radius: usize,
    /// D: maximum pairwise distance.
    pub diameter: usize,
    /// R: minimum vertex eccentricity.
    pub circumscribed_radius: usize,
    /// d: maximum degree in the whole graph.
    pub max_degree: usize,
    /// delta: minimum degree among interior vertices.
    pub min_interior_degree: usize,
    pub interior_size: usize,
    pub boundary_size: usize,
    /// |E(interior, boundary)|.
    pub interior_boundary_edges: usize,
}
