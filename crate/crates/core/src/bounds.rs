//! Closed-form eigenvalue bounds, sigma formulas for the extremal star-like
//! path families, and a certifier comparing every applicable bound with the
//! computed ground eigenvalue.

use crate::graph::{BoundaryGraph, GraphMetrics};
use crate::spectral::{self, SpectralError};
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("instance is not a tree with its leaves as boundary")]
    NotATree,
    #[error("tree diameter {diameter} is neither 2r nor 2r+1 (r = {inscribed_radius})")]
    DiameterRadiusMismatch {
        inscribed_radius: usize,
        diameter: usize,
    },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(&'static str),
    #[error("cubic has no sign change inside (a, a+1)")]
    NoRootInInterval,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// `4 sin^2(pi / (4 len + 2))`, the sine form attached to paths of length `len`.
pub fn sine_bound(len: usize) -> f64 {
    let s = (PI / (4 * len + 2) as f64).sin();
    4.0 * s * s
}

/// Lower bound `1 / (r |Omega|)`.
pub fn lb_volume_radius(m: &GraphMetrics) -> f64 {
    1.0 / (m.inscribed_radius as f64 * m.interior_size as f64)
}

/// The weaker `1 / (D |Omega|)` variant.
pub fn lb_volume_diameter(m: &GraphMetrics) -> f64 {
    1.0 / (m.diameter as f64 * m.interior_size as f64)
}

/// Lower bound `(d - 1) / (r d^r)`; zero for `d <= 1` (the single-edge graph),
/// where any non-negative bound is vacuous.
pub fn lb_degree_radius(m: &GraphMetrics) -> f64 {
    let d = m.max_degree as f64;
    if m.max_degree <= 1 {
        return 0.0;
    }
    (d - 1.0) / (m.inscribed_radius as f64 * d.powi(m.inscribed_radius as i32))
}

/// Prior-work baseline `1 / (d + 1)^r` for the normalized operator. Reported
/// for comparison only; never asserted against the unnormalized eigenvalue.
pub fn lb_meng_lin(m: &GraphMetrics) -> f64 {
    (m.max_degree as f64 + 1.0).powi(-(m.inscribed_radius as i32))
}

/// Sine lower bound for trees with leaf boundary, parity-matched to the
/// diameter.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TreeSineBound {
    /// `4 sin^2(pi/(4r+2))` when `D = 2r`, `4 sin^2(pi/(4r+6))` when `D = 2r+1`.
    pub value: f64,
    /// The stated weakening `1/r^2` resp. `1/(r+1)^2`.
    pub weak: f64,
    pub even_diameter: bool,
}

pub fn lb_tree_sine(bg: &BoundaryGraph) -> Result<TreeSineBound, BoundsError> {
    if !bg.is_leaf_boundary_tree() {
        return Err(BoundsError::NotATree);
    }
    tree_sine_from_metrics(&bg.metrics())
}

pub fn tree_sine_from_metrics(m: &GraphMetrics) -> Result<TreeSineBound, BoundsError> {
    let r = m.inscribed_radius;
    if m.diameter == 2 * r {
        Ok(TreeSineBound {
            value: sine_bound(r),
            weak: 1.0 / (r as f64 * r as f64),
            even_diameter: true,
        })
    } else if m.diameter == 2 * r + 1 {
        Ok(TreeSineBound {
            value: sine_bound(r + 1),
            weak: 1.0 / ((r + 1) as f64 * (r + 1) as f64),
            even_diameter: false,
        })
    } else {
        Err(BoundsError::DiameterRadiusMismatch {
            inscribed_radius: r,
            diameter: m.diameter,
        })
    }
}

/// Lower bound `(4c/p) sin^2(pi/(4 len + 2))` from a `c`-covering,
/// `p`-packing path collection with paths of length at most `len`.
pub fn lb_covering_packing(covering: usize, packing: usize, len: usize) -> f64 {
    assert!(
        covering >= 1 && packing >= 1 && len >= 1,
        "certificate must have c, p, len >= 1"
    );
    covering as f64 / packing as f64 * sine_bound(len)
}

/// Upper bound `|E(Omega, B)| / |Omega|` with its exact equality test:
/// equality holds iff the ratio is an integer and every interior vertex has
/// exactly that many boundary neighbors.
pub fn ub_edge_ratio(bg: &BoundaryGraph) -> (f64, bool) {
    let interior = bg.interior();
    let counts: Vec<usize> = interior
        .iter()
        .map(|&v| {
            bg.graph()
                .neighbors(v)
                .iter()
                .filter(|&&w| bg.is_boundary(w))
                .count()
        })
        .collect();
    let total: usize = counts.iter().sum();
    let value = total as f64 / interior.len() as f64;
    let equality =
        total % interior.len() == 0 && counts.iter().all(|&c| c == total / interior.len());
    (value, equality)
}

/// Upper bound by the minimum interior degree; the flag marks the equality
/// case, a star with interior center.
pub fn ub_min_degree(bg: &BoundaryGraph) -> (f64, bool) {
    let g = bg.graph();
    let n = g.vertex_count();
    let min_interior_degree = bg.interior().iter().map(|&v| g.degree(v)).min().unwrap();
    let star =
        bg.interior().len() == 1 && g.degree(bg.interior()[0]) == n - 1 && g.edge_count() == n - 1;
    (min_interior_degree as f64, star)
}

/// Tree upper bounds `|B|/|Omega|` and `n/(D-1) - 1`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TreeUpperBounds {
    pub leaf_ratio: f64,
    pub diameter_form: f64,
}

pub fn ub_tree_corollaries(bg: &BoundaryGraph) -> Result<TreeUpperBounds, BoundsError> {
    if !bg.is_leaf_boundary_tree() {
        return Err(BoundsError::NotATree);
    }
    let m = bg.metrics();
    Ok(TreeUpperBounds {
        leaf_ratio: m.boundary_size as f64 / m.interior_size as f64,
        diameter_form: bg.graph().vertex_count() as f64 / (m.diameter as f64 - 1.0) - 1.0,
    })
}

/// `sigma_1(a, k, s) = (k + 2a + s - sqrt((k + s - 2)^2 + 4k - 4)) / 2`,
/// the ground eigenvalue of the hub tree with `b = ak + s` leaves.
pub fn sigma1(a: usize, k: usize, s: usize) -> Result<f64, BoundsError> {
    if a < 1 || k < 2 || s < 1 || s > k - 1 {
        return Err(BoundsError::ParamOutOfRange(
            "sigma1 needs a >= 1, k >= 2, 1 <= s <= k-1",
        ));
    }
    let (a, k, s) = (a as f64, k as f64, s as f64);
    Ok((k + 2.0 * a + s - ((k + s - 2.0).powi(2) + 4.0 * k - 4.0).sqrt()) / 2.0)
}

/// `sigma_2(a, k) = (k + 2a + 1 - sqrt((k - 1)^2 + 4)) / 2` for `b = ak + k - 1`.
pub fn sigma2(a: usize, k: usize) -> Result<f64, BoundsError> {
    if k < 2 {
        return Err(BoundsError::ParamOutOfRange("sigma2 needs k >= 2"));
    }
    let (a, k) = (a as f64, k as f64);
    Ok((k + 2.0 * a + 1.0 - ((k - 1.0).powi(2) + 4.0).sqrt()) / 2.0)
}

/// `sigma_3(a, k) = (k + 4a + 2 - sqrt((k + 2)^2 - 16)) / 4` for even `k` and
/// `b = ak + 2`.
pub fn sigma3(a: usize, k: usize) -> Result<f64, BoundsError> {
    if a < 1 || k < 4 || k % 2 != 0 {
        return Err(BoundsError::ParamOutOfRange(
            "sigma3 needs a >= 1 and even k >= 4",
        ));
    }
    let (a, k) = (a as f64, k as f64);
    Ok((k + 4.0 * a + 2.0 - ((k + 2.0).powi(2) - 16.0).sqrt()) / 4.0)
}

/// Cubic whose root in `(a, a+1)` is the ground eigenvalue of the odd-`k`
/// extremal tree with `b = ak + 2`.
pub fn sigma4_cubic(a: usize, k: usize, x: f64) -> f64 {
    let (a, k) = (a as f64, k as f64);
    x.powi(3) - x.powi(2) * (k / 2.0 + 3.0 * a + 3.5)
        + x * (k * a + k + 3.0 * a * a + 7.0 * a + 3.0)
        - (k * a * a / 2.0 + k * a + a.powi(3) + 3.5 * a * a + 3.0 * a + 2.0)
}

/// `sigma_4(a, k)`: the unique root of the cubic inside `(a, a+1)`, located
/// by bisection to 1e-12.
pub fn sigma4(a: usize, k: usize) -> Result<f64, BoundsError> {
    if a < 1 || k < 5 || k % 2 == 0 {
        return Err(BoundsError::ParamOutOfRange(
            "sigma4 needs a >= 1 and odd k >= 5",
        ));
    }
    let mut lo = a as f64 + 1e-12;
    let mut hi = a as f64 + 1.0 - 1e-12;
    let qlo = sigma4_cubic(a, k, lo);
    let qhi = sigma4_cubic(a, k, hi);
    if qlo == 0.0 {
        return Ok(lo);
    }
    if qhi == 0.0 {
        return Ok(hi);
    }
    if qlo.signum() == qhi.signum() {
        return Err(BoundsError::NoRootInInterval);
    }
    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let qm = sigma4_cubic(a, k, mid);
        if qm == 0.0 {
            return Ok(mid);
        }
        if qm.signum() == qlo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// One evaluated bound. `slack` is `lambda1 - value` for lower bounds and
/// `value - lambda1` for upper bounds, so a certified bound has
/// `slack >= -tol`. Entries with `asserted = false` are reference values
/// outside the certificate.
#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    pub value: f64,
    pub slack: f64,
    pub equality: bool,
    pub asserted: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub lambda1: f64,
    pub tol: f64,
    pub metrics: GraphMetrics,
    pub bounds: Vec<BoundEntry>,
}

impl BoundReport {
    /// Asserted bounds violated beyond the tolerance. Empty on a certified
    /// instance; this is the certificate.
    pub fn violations(&self) -> Vec<&BoundEntry> {
        self.bounds
            .iter()
            .filter(|b| b.asserted && b.slack < -self.tol)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,kind,value,slack,equality\n");
        for b in &self.bounds {
            let kind = match b.kind {
                BoundKind::Lower => "lower",
                BoundKind::Upper => "upper",
            };
            out.push_str(&format!(
                "{},{},{:.11e},{:.11e},{}\n",
                b.name, kind, b.value, b.slack, b.equality
            ));
        }
        out
    }
}

/// Evaluates every applicable bound against the computed ground eigenvalue.
/// Tree bounds are included only for trees with leaf boundary, and the sine
/// bound only when the diameter matches one of its two parity cases.
pub fn verify_all(bg: &BoundaryGraph, tol: f64) -> Result<BoundReport, BoundsError> {
    let pair = spectral::lambda1(bg)?;
    let lambda1 = pair.lambda1;
    let m = bg.metrics();
    let mut bounds = Vec::new();
    let lower = |name, value: f64, asserted: bool| BoundEntry {
        name,
        kind: BoundKind::Lower,
        value,
        slack: lambda1 - value,
        equality: (lambda1 - value).abs() <= tol,
        asserted,
    };
    let upper = |name, value: f64, equality: bool| BoundEntry {
        name,
        kind: BoundKind::Upper,
        value,
        slack: value - lambda1,
        equality,
        asserted: true,
    };
    bounds.push(lower("volume_radius", lb_volume_radius(&m), true));
    bounds.push(lower("volume_diameter", lb_volume_diameter(&m), true));
    bounds.push(lower("degree_radius", lb_degree_radius(&m), true));
    bounds.push(lower("meng_lin_baseline", lb_meng_lin(&m), false));
    let is_tree = bg.is_leaf_boundary_tree();
    if is_tree {
        match tree_sine_from_metrics(&m) {
            Ok(ts) => {
                bounds.push(lower("tree_sine", ts.value, true));
                bounds.push(lower("tree_sine_weak", ts.weak, true));
            }
            Err(BoundsError::DiameterRadiusMismatch { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let (er, er_eq) = ub_edge_ratio(bg);
    bounds.push(upper("edge_ratio", er, er_eq));
    let (md, star) = ub_min_degree(bg);
    bounds.push(upper("min_interior_degree", md, star));
    if is_tree {
        let tu = ub_tree_corollaries(bg)?;
        bounds.push(upper(
            "leaf_ratio",
            tu.leaf_ratio,
            (tu.leaf_ratio - lambda1).abs() <= tol,
        ));
        bounds.push(upper(
            "diameter_form",
            tu.diameter_form,
            (tu.diameter_form - lambda1).abs() <= tol,
        ));
    }
    Ok(BoundReport {
        lambda1,
        tol,
        metrics: m,
        bounds,
    })
}
