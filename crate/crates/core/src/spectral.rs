//! Dense symmetric eigensolver and Dirichlet-Laplacian spectra.

use crate::graph::{BoundaryGraph, Graph};
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

/// Relative off-diagonal mass at which the Jacobi sweep stops.
pub const DEFAULT_SOLVER_TOL: f64 = 1e-12;
/// Absolute tolerance for bound comparisons and equality checks.
pub const DEFAULT_TOL: f64 = 1e-9;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("Jacobi sweep failed to converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("ground eigenvector has a non-positive entry {value:.3e} at interior index {index}")]
    PerronViolation { index: usize, value: f64 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("test function is identically zero")]
    ZeroFunction,
    #[error("expected a function on {expected} interior vertices, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense real symmetric matrix; symmetry is enforced by construction.
#[derive(Debug, Clone)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymmetricMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
        self.data[j * self.dim + i] = value;
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let dim = rows.len();
        let mut m = SymmetricMatrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "rows must form a square matrix");
            for (j, &value) in row.iter().enumerate().take(i + 1) {
                assert!(value == rows[j][i], "matrix must be exactly symmetric");
                m.set_sym(i, j, value);
            }
        }
        m
    }

    pub fn inf_norm(&self) -> f64 {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    s += self.get(i, j) * self.get(i, j);
                }
            }
        }
        s.sqrt()
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }
}

/// Full spectrum of a symmetric matrix, eigenvalues ascending with paired
/// orthonormal eigenvectors.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` pairs with `eigenvalues[i]`.
    pub eigenvectors: Vec<Vec<f64>>,
    /// Achieved residual scale: max over pairs of ||Av - lv||_inf / (1 + ||A||_inf).
    pub residual_tol: f64,
}

/// Cyclic-by-row Jacobi diagonalization. Deterministic for a fixed input:
/// the sweep order is fixed and no pivoting heuristics are used. Converges
/// when the off-diagonal Frobenius mass falls below `tol * ||A||_F`.
pub fn symmetric_eigen(a: &SymmetricMatrix, tol: f64) -> Result<Spectrum, SpectralError> {
    assert!(tol > 0.0, "solver tolerance must be positive");
    let m = a.dim();
    assert!(m >= 1, "matrix must be non-empty");
    let mut work = a.clone();
    let mut vectors = vec![vec![0.0; m]; m]; // vectors[c] is column c
    for (c, col) in vectors.iter_mut().enumerate() {
        col[c] = 1.0;
    }
    let scale = a.frobenius_norm();
    let target = if scale == 0.0 { tol } else { tol * scale };

    let mut converged = work.off_diagonal_norm() <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(SpectralError::NoConvergence(MAX_SWEEPS));
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = work.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = work.get(p, p);
                let aqq = work.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                work.set_sym(p, p, app - t * apq);
                work.set_sym(q, q, aqq + t * apq);
                work.set_sym(p, q, 0.0);
                for k in 0..m {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = work.get(k, p);
                    let akq = work.get(k, q);
                    work.set_sym(k, p, c * akp - s * akq);
                    work.set_sym(k, q, s * akp + c * akq);
                }
                for k in 0..m {
                    let vkp = vectors[p][k];
                    let vkq = vectors[q][k];
                    vectors[p][k] = c * vkp - s * vkq;
                    vectors[q][k] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        converged = work.off_diagonal_norm() <= target;
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| {
        work.get(i, i)
            .partial_cmp(&work.get(j, j))
            .expect("eigenvalues are finite")
            .then(i.cmp(&j))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| work.get(i, i)).collect();
    let mut eigenvectors: Vec<Vec<f64>> = order.into_iter().map(|i| vectors[i].clone()).collect();
    for v in &mut eigenvectors {
        sign_normalize(v);
    }
    let inf = a.inf_norm();
    let mut residual: f64 = 0.0;
    for (lambda, v) in eigenvalues.iter().zip(&eigenvectors) {
        let av = a.apply(v);
        for (avi, vi) in av.iter().zip(v) {
            residual = residual.max((avi - lambda * vi).abs());
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        residual_tol: residual / (1.0 + inf),
    })
}

/// Flips the sign so the entry of largest magnitude is positive
/// (first such entry on ties).
fn sign_normalize(v: &mut [f64]) {
    let mut best = 0usize;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Dirichlet Laplacian on the interior: diagonal holds whole-graph degrees,
/// off-diagonal entries are -1 for adjacent interior pairs. Rows and columns
/// follow ascending interior vertex id.
pub fn dirichlet_laplacian(bg: &BoundaryGraph) -> SymmetricMatrix {
    let interior = bg.interior();
    let mut m = SymmetricMatrix::zeros(interior.len());
    for (i, &v) in interior.iter().enumerate() {
        m.set_sym(i, i, bg.graph().degree(v) as f64);
        for &w in bg.graph().neighbors(v) {
            if let Some(j) = bg.interior_index(w) {
                if j > i {
                    m.set_sym(i, j, -1.0);
                }
            }
        }
    }
    m
}

/// Full Dirichlet spectrum at the default solver tolerance.
pub fn dirichlet_spectrum(bg: &BoundaryGraph) -> Result<Spectrum, SpectralError> {
    symmetric_eigen(&dirichlet_laplacian(bg), DEFAULT_SOLVER_TOL)
}

/// Ground Dirichlet eigenpair: the smallest eigenvalue with its
/// entrywise-positive eigenfunction (unit 2-norm), indexed by ascending
/// interior vertex id.
#[derive(Debug, Clone, Serialize)]
pub struct DirichletEigenpair {
    pub lambda1: f64,
    pub eigenfunction: Vec<f64>,
}

pub fn lambda1(bg: &BoundaryGraph) -> Result<DirichletEigenpair, SpectralError> {
    let interior = bg.interior();
    if interior.len() == 1 {
        // exact: the 1x1 Laplacian is the degree of the single interior vertex
        return Ok(DirichletEigenpair {
            lambda1: bg.graph().degree(interior[0]) as f64,
            eigenfunction: vec![1.0],
        });
    }
    let spectrum = dirichlet_spectrum(bg)?;
    ground_pair(&spectrum)
}

/// Extracts the ground pair from a Dirichlet spectrum, enforcing positivity.
pub fn ground_pair(spectrum: &Spectrum) -> Result<DirichletEigenpair, SpectralError> {
    let f = spectrum.eigenvectors[0].clone();
    for (index, &value) in f.iter().enumerate() {
        if value <= 0.0 {
            return Err(SpectralError::PerronViolation { index, value });
        }
    }
    Ok(DirichletEigenpair {
        lambda1: spectrum.eigenvalues[0],
        eigenfunction: f,
    })
}

/// Rayleigh quotient of `f` (given on interior vertices, ascending id),
/// extended by zero to the boundary: edge energy over interior mass.
pub fn rayleigh_quotient(bg: &BoundaryGraph, f: &[f64]) -> Result<f64, SpectralError> {
    let interior = bg.interior();
    if f.len() != interior.len() {
        return Err(SpectralError::DimensionMismatch {
            expected: interior.len(),
            got: f.len(),
        });
    }
    let value = |v| bg.interior_index(v).map_or(0.0, |i| f[i]);
    let mut energy = 0.0;
    for (u, v) in bg.graph().edges() {
        let d = value(u) - value(v);
        energy += d * d;
    }
    let mass: f64 = f.iter().map(|x| x * x).sum();
    if mass == 0.0 {
        return Err(SpectralError::ZeroFunction);
    }
    Ok(energy / mass)
}

/// Second-smallest eigenvalue of the standard combinatorial Laplacian.
pub fn laplacian_mu2(g: &Graph) -> Result<f64, SpectralError> {
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    let n = g.vertex_count();
    assert!(n >= 2, "mu2 needs at least two vertices");
    let mut m = SymmetricMatrix::zeros(n);
    for v in 0..n {
        m.set_sym(v, v, g.degree(v) as f64);
    }
    for (u, v) in g.edges() {
        m.set_sym(u, v, -1.0);
    }
    let spectrum = symmetric_eigen(&m, DEFAULT_SOLVER_TOL)?;
    Ok(spectrum.eigenvalues[1])
}

/// Spectrum of the min-matrix `(min(i, j))` against its sine closed form.
#[derive(Debug, Clone, Serialize)]
pub struct MinMatrixReport {
    pub spectrum: Spectrum,
    /// `1 / (4 sin^2((2k - 1) pi / (4l + 2)))` for `k = 1..l`, sorted
    /// ascending to pair with the spectrum. The inverse of the min-matrix is
    /// the path Laplacian with one free end, whose eigenvalues run over the
    /// odd sine multipliers; the largest eigenvalue is `1/(4 sin^2(pi/(4l+2)))`.
    pub closed_form: Vec<f64>,
    pub max_discrepancy: f64,
}

pub fn minmatrix_spectrum(len: usize) -> MinMatrixReport {
    assert!(len >= 1, "min-matrix order must be at least 1");
    let mut m = SymmetricMatrix::zeros(len);
    for i in 0..len {
        for j in 0..=i {
            m.set_sym(i, j, (j + 1) as f64);
        }
    }
    let spectrum =
        symmetric_eigen(&m, DEFAULT_SOLVER_TOL).expect("Jacobi converges on the min-matrix family");
    let mut closed_form: Vec<f64> = (1..=len)
        .map(|k| {
            let s = ((2 * k - 1) as f64 * PI / (4 * len + 2) as f64).sin();
            1.0 / (4.0 * s * s)
        })
        .collect();
    closed_form.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let max_discrepancy = spectrum
        .eigenvalues
        .iter()
        .zip(&closed_form)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    MinMatrixReport {
        spectrum,
        closed_form,
        max_discrepancy,
    }
}
