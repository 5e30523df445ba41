//! Shared test harness: seeded random instances and solver oracles.
#![allow(dead_code)]

use dirichlet_core::graph::{BoundaryGraph, Graph, VertexId};
use dirichlet_core::spectral::SymmetricMatrix;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard Pruefer decode; the sequence has length n - 2.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    assert!(n >= 2 && seq.len() == n - 2);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut used = vec![false; n];
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1 && !used[v]).unwrap();
        used[leaf] = true;
        edges.push((leaf, s));
        degree[s] -= 1;
    }
    let mut last = (0..n).filter(|&v| degree[v] == 1 && !used[v]);
    let (u, v) = (last.next().unwrap(), last.next().unwrap());
    edges.push((u, v));
    edges
}

/// Uniform random labeled tree on n >= 2 vertices.
pub fn random_tree_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    prufer_decode(&seq, n)
}

/// Uniform random tree with its leaves as boundary (n >= 3).
pub fn random_leaf_boundary_tree(rng: &mut ChaCha8Rng, n: usize) -> BoundaryGraph {
    assert!(n >= 3);
    let edges = random_tree_edges(rng, n);
    let g = Graph::new(n, &edges).unwrap();
    let leaves = g.leaves();
    BoundaryGraph::from_graph(g, &leaves).unwrap()
}

/// Random connected boundary graph, valid by construction: a random interior
/// tree plus extra interior edges, with each boundary vertex wired to one or
/// more interior vertices.
pub fn random_boundary_graph(rng: &mut ChaCha8Rng, max_n: usize) -> BoundaryGraph {
    assert!(max_n >= 3);
    let interior = rng.gen_range(1..=(max_n - 2).max(1));
    let mut boundary = rng.gen_range(1..=(max_n - interior).max(1));
    if interior + boundary < 3 {
        // keep n >= 3 so the maximum degree is at least 2
        boundary = 2;
    }
    let mut edges = if interior >= 2 {
        random_tree_edges(rng, interior)
    } else {
        Vec::new()
    };
    let mut present: std::collections::BTreeSet<(usize, usize)> =
        edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    if interior >= 3 {
        let extra = rng.gen_range(0..=interior);
        for _ in 0..extra {
            let u = rng.gen_range(0..interior);
            let v = rng.gen_range(0..interior);
            if u != v && present.insert((u.min(v), u.max(v))) {
                edges.push((u, v));
            }
        }
    }
    for b in 0..boundary {
        let hooks = rng.gen_range(1..=3.min(interior));
        let mut targets: Vec<usize> = (0..interior).collect();
        targets.shuffle(rng);
        for &t in targets.iter().take(hooks) {
            edges.push((t, interior + b));
        }
    }
    BoundaryGraph::new(
        interior + boundary,
        &edges,
        &(interior..interior + boundary).collect::<Vec<_>>(),
    )
    .expect("construction satisfies the boundary axioms")
}

/// Random center-balanced tree: a spine of length `2r` or `2r + 1` carrying
/// whisker subtrees whose leaves sit at depth exactly `min(i, D - i)` below
/// spine position `i`. Such trees have diameter `2r` with a unique
/// max-leaf-distance center, or `2r + 1` with exactly two adjacent ones.
pub fn random_balanced_tree(rng: &mut ChaCha8Rng, max_r: usize, max_n: usize) -> BoundaryGraph {
    let r = rng.gen_range(1..=max_r.max(1));
    let odd = rng.gen_bool(0.5);
    let diameter = 2 * r + usize::from(odd);
    let mut edges: Vec<(VertexId, VertexId)> = (0..diameter).map(|i| (i, i + 1)).collect();
    let mut next = diameter + 1;
    for i in 1..diameter {
        let depth = i.min(diameter - i);
        if depth == 0 {
            continue;
        }
        let whiskers = if rng.gen_bool(0.5) {
            rng.gen_range(1..=2)
        } else {
            0
        };
        for _ in 0..whiskers {
            if next + 2 * depth + 2 > max_n {
                break;
            }
            // a chain to exact depth, with an optional split partway down
            let split_at = if depth >= 2 && rng.gen_bool(0.3) {
                Some(rng.gen_range(1..depth))
            } else {
                None
            };
            let mut host = i;
            for s in 1..=depth {
                edges.push((host, next));
                host = next;
                next += 1;
                if Some(s) == split_at {
                    // second branch continuing to the same exact depth
                    let mut side = host;
                    for _ in s + 1..=depth {
                        edges.push((side, next));
                        side = next;
                        next += 1;
                    }
                }
            }
        }
    }
    let g = Graph::new(next, &edges).unwrap();
    let leaves = g.leaves();
    let bg = BoundaryGraph::from_graph(g, &leaves).unwrap();
    debug_assert_eq!(bg.metrics().diameter, diameter);
    debug_assert_eq!(bg.metrics().inscribed_radius, r);
    bg
}

/// Applies a vertex relabeling and rebuilds the boundary graph.
pub fn permute(bg: &BoundaryGraph, perm: &[usize]) -> BoundaryGraph {
    let g = bg.graph();
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    let boundary: Vec<usize> = bg.boundary().iter().map(|&b| perm[b]).collect();
    BoundaryGraph::new(g.vertex_count(), &edges, &boundary).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Random symmetric matrix with entries in [-2, 2].
pub fn random_symmetric(rng: &mut ChaCha8Rng, dim: usize) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..=i {
            m.set_sym(i, j, rng.gen_range(-2.0..2.0));
        }
    }
    m
}

/// Householder reduction to tridiagonal form (diagonal, subdiagonal).
/// Orthogonal similarity, so the eigenvalues are preserved; used only as an
/// oracle path independent of the Jacobi solver.
pub fn tridiagonalize(a: &SymmetricMatrix) -> (Vec<f64>, Vec<f64>) {
    let m = a.dim();
    let mut mat: Vec<Vec<f64>> = (0..m)
        .map(|i| (0..m).map(|j| a.get(i, j)).collect())
        .collect();
    for k in 0..m.saturating_sub(2) {
        let norm: f64 = (k + 1..m)
            .map(|i| mat[i][k] * mat[i][k])
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if mat[k + 1][k] >= 0.0 { -norm } else { norm };
        let mut v = vec![0.0; m];
        v[k + 1] = mat[k + 1][k] - alpha;
        for i in k + 2..m {
            v[i] = mat[i][k];
        }
        let vnorm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for x in v.iter_mut() {
            *x /= vnorm;
        }
        // A <- (I - 2vv^T) A (I - 2vv^T)
        let u: Vec<f64> = (0..m)
            .map(|i| 2.0 * (0..m).map(|j| mat[i][j] * v[j]).sum::<f64>())
            .collect();
        let vu: f64 = v.iter().zip(&u).map(|(x, y)| x * y).sum();
        let w: Vec<f64> = (0..m).map(|i| u[i] - vu * v[i]).collect();
        for i in 0..m {
            for j in 0..m {
                mat[i][j] -= v[i] * w[j] + w[i] * v[j];
            }
        }
    }
    let diag: Vec<f64> = (0..m).map(|i| mat[i][i]).collect();
    let sub: Vec<f64> = (0..m.saturating_sub(1)).map(|i| mat[i + 1][i]).collect();
    (diag, sub)
}

/// Sturm sign-variation count: eigenvalues of the tridiagonal matrix below
/// `x`, i.e. sign changes of the characteristic polynomials of the leading
/// principal submatrices.
pub fn sturm_count(diag: &[f64], sub: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0f64;
    for i in 0..diag.len() {
        let off = if i == 0 { 0.0 } else { sub[i - 1] * sub[i - 1] };
        d = diag[i] - x - off / d;
        if d < 0.0 {
            count += 1;
        }
        if d.abs() < 1e-30 {
            d = -1e-30;
        }
    }
    count
}

/// The k-th smallest eigenvalue (0-indexed): characteristic-polynomial sign
/// counting on the tridiagonalized matrix, bisected between the Gershgorin
/// bounds.
pub fn kth_eigenvalue_by_bisection(a: &SymmetricMatrix, k: usize) -> f64 {
    let (diag, sub) = tridiagonalize(a);
    let m = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..m {
        let mut radius = 0.0;
        if i > 0 {
            radius += sub[i - 1].abs();
        }
        if i + 1 < m {
            radius += sub[i].abs();
        }
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    lo -= 1.0;
    hi += 1.0;
    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if sturm_count(&diag, &sub, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
