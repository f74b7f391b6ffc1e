//! The nerve complex of an almost negative matrix and its intrinsic metric.
//!
//! The nerve N(A) is the piecewise spherical complex whose cells are the
//! index sets I with A_I positive definite: cell I carries the spherical
//! simplex spanned by the unit vectors e_i / sqrt(a_ii) in the bilinear
//! form given by A. Distances inside one simplex are arccos of the A-inner
//! product; the intrinsic metric is the induced length metric.
//!
//! Geodesic queries are answered by a sampled shortest-path graph: nodes
//! are the two query points plus lattice points on every shared face of
//! two maximal cells, edges connect nodes lying in a common maximal cell.
//! The reported distance is an upper bound on the true intrinsic distance
//! and converges to it as the resolution grows; refining the resolution by
//! doubling only adds nodes, so the reported value never increases.
//!
//! The spherical suspension is never materialized: its join metric
//!   cos d'((t1,p),(t2,q)) = cos t1 cos t2 + sin t1 sin t2 cos min(d(p,q), pi)
//! is applied on top of the base metric in closed form.

use std::collections::{BinaryHeap, HashMap, HashSet};
use std::f64::consts::PI;

use serde::{Serialize, Serializer};

use crate::anm::AlmostNegativeMatrix;
use crate::error::Error;
use crate::index_set::IndexSet;
use crate::linalg;
use crate::Result;

/// Hard cap on lattice sample points per distance query.
const MAX_SAMPLE_POINTS: u128 = 1_000_000;

/// Hard cap on candidate edges per distance query.
const MAX_EDGE_PAIRS: u128 = 20_000_000;

/// The nerve complex N(A): all positive definite principal submatrices,
/// organized as an abstract simplicial complex.
#[derive(Debug, Clone)]
pub struct NerveComplex {
    gram: AlmostNegativeMatrix,
    cells: Vec<IndexSet>,
    cell_set: HashSet<IndexSet>,
    maximal: Vec<IndexSet>,
}

/// Builds the nerve of `a`. Cells are enumerated by monotone breadth-first
/// subset growth; a matrix without positive diagonal entries yields the
/// empty complex. Refuses matrices of order above the enumeration guard.
pub fn build_nerve(a: &AlmostNegativeMatrix) -> Result<NerveComplex> {
    build_nerve_with_limit(a, crate::DEFAULT_MAX_ORDER)
}

/// `build_nerve` with an explicit order guard instead of the default.
pub fn build_nerve_with_limit(a: &AlmostNegativeMatrix, limit: usize) -> Result<NerveComplex> {
    let cells = a.scan_pd_subsets(limit)?.cells;
    let cell_set: HashSet<IndexSet> = cells.iter().cloned().collect();
    // A cell is maximal exactly when no one-vertex extension is a cell.
    let maximal = cells
        .iter()
        .filter(|c| {
            (0..a.order()).all(|v| c.contains(v) || !cell_set.contains(&c.with(v)))
        })
        .cloned()
        .collect();
    Ok(NerveComplex {
        gram: a.clone(),
        cells,
        cell_set,
        maximal,
    })
}

impl NerveComplex {
    pub fn gram(&self) -> &AlmostNegativeMatrix {
        &self.gram
    }

    /// All cells, sorted by (size, lexicographic).
    pub fn cells(&self) -> &[IndexSet] {
        &self.cells
    }

    /// Inclusion-maximal cells, sorted by (size, lexicographic).
    pub fn maximal_cells(&self) -> &[IndexSet] {
        &self.maximal
    }

    pub fn is_cell(&self, i: &IndexSet) -> bool {
        self.cell_set.contains(i)
    }

    /// Dimension of the complex; None when it is empty.
    pub fn dimension(&self) -> Option<usize> {
        self.cells.last().map(|c| c.len() - 1)
    }

    /// The vertex point v_i = e_i / sqrt(a_ii).
    pub fn vertex(&self, i: usize) -> Result<NervePoint> {
        if i >= self.gram.order() {
            return Err(Error::IndexOutOfBounds {
                index: i,
                order: self.gram.order(),
            });
        }
        let mut amb = vec![0.0; self.gram.order()];
        amb[i] = 1.0;
        NervePoint::from_ambient(&self.gram, &amb)
    }

    /// The nerve of the link matrix lk(I, A), indexed by the surviving
    /// labels in ascending order. I must be a cell (or empty, returning a
    /// copy of the complex itself).
    pub fn link_complex(&self, i_set: &IndexSet) -> Result<NerveComplex> {
        if i_set.is_empty() {
            return Ok(self.clone());
        }
        if !self.is_cell(i_set) {
            return Err(Error::NotACell(i_set.clone()));
        }
        build_nerve(&self.gram.link(i_set)?)
    }

    /// Maximizes the A-inner product with `u` over the nerve.
    ///
    /// `u` must have non-negative coordinates and unit A-norm within 1e-9;
    /// it need not lie in the nerve itself. For each cell F the restricted
    /// problem has the closed-form solution c = (A_F)^-1 (Au)_F (the
    /// A-orthogonal projection of u, rescaled to the unit sphere); it is a
    /// valid candidate when all coefficients are non-negative. Every local
    /// maximizer arises this way, so the best candidate is the exact
    /// global maximizer. Ties keep the earliest cell in (size, lex) order.
    pub fn max_inner_product(&self, u: &[f64]) -> Result<(NervePoint, f64)> {
        let a = &self.gram;
        let n = a.order();
        if u.len() != n {
            return Err(Error::InvalidPoint(format!(
                "expected {n} coordinates, got {}",
                u.len()
            )));
        }
        let tau = a.tau_zero();
        if u.iter().any(|v| !v.is_finite() || *v < -tau) {
            return Err(Error::InvalidPoint(
                "coordinates must be non-negative".into(),
            ));
        }
        let au = linalg::mat_vec(a.rows(), u);
        let norm2: f64 = dot(u, &au);
        if (norm2 - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidPoint(format!(
                "unit norm required, got norm^2 = {norm2}"
            )));
        }
        if self.cells.is_empty() {
            return Err(Error::InvalidPoint("the nerve is empty".into()));
        }
        let mut best: Option<(NervePoint, f64)> = None;
        for f in &self.cells {
            let rhs: Vec<f64> = f.iter().map(|&i| au[i]).collect();
            let sub = a.principal_submatrix(f)?;
            let Some(c) = linalg::solve(sub.rows(), &rhs) else {
                continue;
            };
            if c.iter().any(|&ci| ci < -1e-12) {
                continue;
            }
            let val2 = dot(&c, &rhs);
            if val2 <= 0.0 {
                continue;
            }
            let val = val2.sqrt();
            if best.as_ref().is_some_and(|(_, bv)| val <= *bv) {
                continue;
            }
            let mut amb = vec![0.0; n];
            for (m, &i) in f.iter().enumerate() {
                amb[i] = (c[m] / val).max(0.0);
            }
            let Ok(z) = NervePoint::from_ambient(a, &amb) else {
                continue;
            };
            best = Some((z, val));
        }
        if let Some(found) = best {
            return Ok(found);
        }
        // Defensive fallback: the candidate argument guarantees a maximizer
        // above, but keep the best vertex in case numerics reject them all.
        let mut fallback: Option<(NervePoint, f64)> = None;
        for f in self.cells.iter().filter(|c| c.len() == 1) {
            let i = f.as_slice()[0];
            let val = au[i] / a.entry(i, i).sqrt();
            if fallback.as_ref().is_none_or(|(_, bv)| val > *bv) {
                fallback = Some((self.vertex(i)?, val));
            }
        }
        fallback.ok_or_else(|| Error::InvalidPoint("no maximizer found".into()))
    }
}

/// A point of the nerve: coefficients over its support cell, unit A-norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NervePoint {
    pub cell: IndexSet,
    pub coeffs: Vec<f64>,
}

impl NervePoint {
    /// Converts ambient coordinates to a nerve point: detects the support
    /// (entries above tau_zero), requires it to be a cell, and rescales to
    /// unit A-norm. Negative entries below -tau_zero are rejected.
    pub fn from_ambient(a: &AlmostNegativeMatrix, ambient: &[f64]) -> Result<NervePoint> {
        let n = a.order();
        if ambient.len() != n {
            return Err(Error::InvalidPoint(format!(
                "expected {n} coordinates, got {}",
                ambient.len()
            )));
        }
        let tau = a.tau_zero();
        if ambient.iter().any(|v| !v.is_finite() || *v < -tau) {
            return Err(Error::InvalidPoint(
                "coordinates must be non-negative".into(),
            ));
        }
        let cell: IndexSet = (0..n).filter(|&i| ambient[i] > tau).collect();
        if cell.is_empty() {
            return Err(Error::InvalidPoint("support is empty".into()));
        }
        let sub = a.principal_submatrix(&cell)?;
        if !sub.is_positive_definite() {
            return Err(Error::NotACell(cell));
        }
        let coeffs: Vec<f64> = cell.iter().map(|&i| ambient[i]).collect();
        let norm2 = quad_form(sub.rows(), &coeffs);
        if norm2 <= tau {
            return Err(Error::InvalidPoint("norm is zero".into()));
        }
        let s = norm2.sqrt();
        Ok(NervePoint {
            cell,
            coeffs: coeffs.into_iter().map(|c| c / s).collect(),
        })
    }

    /// Scatters the coefficients into a length-n ambient vector.
    pub fn ambient(&self, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (m, &i) in self.cell.iter().enumerate() {
            out[i] = self.coeffs[m];
        }
        out
    }
}

/// A-inner product of two nerve points.
pub fn inner_product(a: &AlmostNegativeMatrix, x: &NervePoint, y: &NervePoint) -> f64 {
    let mut acc = 0.0;
    for (mx, &i) in x.cell.iter().enumerate() {
        for (my, &j) in y.cell.iter().enumerate() {
            acc += x.coeffs[mx] * a.entry(i, j) * y.coeffs[my];
        }
    }
    acc
}

/// Distance between two points of a common simplex: arccos of the A-inner
/// product (clamped against rounding). Errors when the union of supports
/// is not a cell.
pub fn simplex_distance(
    a: &AlmostNegativeMatrix,
    x: &NervePoint,
    y: &NervePoint,
) -> Result<f64> {
    let union = x.cell.union(&y.cell);
    let sub = a.principal_submatrix(&union)?;
    if !sub.is_positive_definite() {
        return Err(Error::NoCommonCell {
            a: x.cell.clone(),
            b: y.cell.clone(),
        });
    }
    Ok(inner_product(a, x, y).clamp(-1.0, 1.0).acos())
}

/// Shortest-path length and polyline between two points of the nerve.
///
/// `resolution` controls the lattice density on shared faces of maximal
/// cells. Points in different connected components give an infinite
/// distance with an empty path. The reported error bound shrinks like
/// 1/resolution, and doubling the resolution never increases the distance.
pub fn intrinsic_distance(
    n: &NerveComplex,
    x: &NervePoint,
    y: &NervePoint,
    resolution: u32,
) -> Result<GeodesicResult> {
    if resolution == 0 {
        return Err(Error::BadResolution);
    }
    for p in [x, y] {
        if !n.is_cell(&p.cell) {
            return Err(Error::NotACell(p.cell.clone()));
        }
    }
    let a = n.gram();
    let dim = a.order();
    let error_bound = PI * n.maximal.len() as f64 / resolution as f64;

    // Shared faces between pairs of maximal cells carry the samples.
    let mut faces: Vec<IndexSet> = Vec::new();
    for (i, ci) in n.maximal.iter().enumerate() {
        for cj in &n.maximal[i + 1..] {
            let t = ci.intersection(cj);
            if !t.is_empty() && !faces.contains(&t) {
                faces.push(t);
            }
        }
    }
    let total: u128 = faces
        .iter()
        .map(|t| compositions_count(resolution, t.len()))
        .sum();
    if total > MAX_SAMPLE_POINTS {
        return Err(Error::SamplingTooLarge { points: total });
    }

    // Node 0 is x, node 1 is y (kept distinct even when equal); sample
    // nodes are deduplicated on a 1e-9 grid.
    let mut supports: Vec<IndexSet> = vec![x.cell.clone(), y.cell.clone()];
    let mut ambients: Vec<Vec<f64>> = vec![x.ambient(dim), y.ambient(dim)];
    let mut seen: HashMap<Vec<i64>, u32> = HashMap::new();
    seen.insert(grid_key(&ambients[0]), 0);
    for t in &faces {
        let sub = a.principal_submatrix(t)?;
        for_each_composition(resolution, t.len(), &mut |comp| {
            let coeffs: Vec<f64> = comp
                .iter()
                .map(|&k| k as f64 / resolution as f64)
                .collect();
            let norm2 = quad_form(sub.rows(), &coeffs);
            if norm2 <= 0.0 {
                return;
            }
            let s = norm2.sqrt();
            let mut amb = vec![0.0; dim];
            let mut support = Vec::new();
            for (m, &i) in t.iter().enumerate() {
                if comp[m] > 0 {
                    amb[i] = coeffs[m] / s;
                    support.push(i);
                }
            }
            let key = grid_key(&amb);
            if !seen.contains_key(&key) {
                let id = ambients.len() as u32;
                seen.insert(key, id);
                supports.push(IndexSet::new(support));
                ambients.push(amb);
            }
        });
    }

    // Edges join nodes lying in a common maximal cell.
    let members: Vec<Vec<u32>> = n
        .maximal
        .iter()
        .map(|c| {
            (0..supports.len() as u32)
                .filter(|&i| supports[i as usize].is_subset_of(c))
                .collect()
        })
        .collect();
    let pair_count: u128 = members
        .iter()
        .map(|m| {
            let k = m.len() as u128;
            k * k.saturating_sub(1) / 2
        })
        .sum();
    if pair_count > MAX_EDGE_PAIRS {
        return Err(Error::SamplingTooLarge { points: pair_count });
    }
    let a_ambients: Vec<Vec<f64>> = ambients
        .iter()
        .map(|amb| linalg::mat_vec(a.rows(), amb))
        .collect();
    let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); ambients.len()];
    let mut done: HashSet<(u32, u32)> = HashSet::new();
    for m in &members {
        for (p, &i) in m.iter().enumerate() {
            for &j in &m[p + 1..] {
                if !done.insert((i, j)) {
                    continue;
                }
                let w = dot(&ambients[i as usize], &a_ambients[j as usize])
                    .clamp(-1.0, 1.0)
                    .acos();
                adj[i as usize].push((j, w));
                adj[j as usize].push((i, w));
            }
        }
    }

    let (dist, prev) = dijkstra(&adj, 0);
    let distance = dist[1];
    let path = if distance.is_finite() {
        let mut ids = vec![1u32];
        while *ids.last().unwrap() != 0 {
            ids.push(prev[*ids.last().unwrap() as usize]);
        }
        ids.reverse();
        ids.iter()
            .map(|&id| NervePoint {
                cell: supports[id as usize].clone(),
                coeffs: supports[id as usize]
                    .iter()
                    .map(|&i| ambients[id as usize][i])
                    .collect(),
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(GeodesicResult {
        distance,
        error_bound,
        path,
        resolution,
    })
}

/// Distance in the spherical suspension S N between base points embedded
/// at the equator: d' = min(d_N, pi). Disconnected base points are exactly
/// pi apart (through a pole), with zero error.
pub fn suspension_distance(
    n: &NerveComplex,
    x: &NervePoint,
    y: &NervePoint,
    resolution: u32,
) -> Result<GeodesicResult> {
    let base = intrinsic_distance(n, x, y, resolution)?;
    if base.distance.is_infinite() {
        return Ok(GeodesicResult {
            distance: PI,
            error_bound: 0.0,
            path: Vec::new(),
            resolution,
        });
    }
    Ok(GeodesicResult {
        distance: base.distance.min(PI),
        ..base
    })
}

/// Suspension distance between (t1, x) and (t2, y) for polar angles in
/// [0, pi]. At a pole the base points are irrelevant and the result is
/// exact. The join metric is 1-Lipschitz in the base distance, so the
/// base error bound carries over unchanged.
pub fn suspension_distance_polar(
    n: &NerveComplex,
    t1: f64,
    x: &NervePoint,
    t2: f64,
    y: &NervePoint,
    resolution: u32,
) -> Result<GeodesicResult> {
    for t in [t1, t2] {
        if !(0.0..=PI).contains(&t) {
            return Err(Error::InvalidPoint(format!(
                "polar angle {t} outside [0, pi]"
            )));
        }
    }
    if t1 == 0.0 || t1 >= PI || t2 == 0.0 || t2 >= PI {
        return Ok(GeodesicResult {
            distance: (t1.cos() * t2.cos()).clamp(-1.0, 1.0).acos(),
            error_bound: 0.0,
            path: Vec::new(),
            resolution,
        });
    }
    let base = intrinsic_distance(n, x, y, resolution)?;
    let base_cap = if base.distance.is_finite() {
        base.distance.min(PI)
    } else {
        PI
    };
    let c = t1.cos() * t2.cos() + t1.sin() * t2.sin() * base_cap.cos();
    Ok(GeodesicResult {
        distance: c.clamp(-1.0, 1.0).acos(),
        error_bound: if base.distance.is_finite() {
            base.error_bound
        } else {
            0.0
        },
        path: base.path,
        resolution,
    })
}

/// Convenience wrapper: the exact maximizer of the A-inner product with
/// `u` over the nerve of `a`. See `NerveComplex::max_inner_product`.
pub fn max_inner_product_over_nerve(
    a: &AlmostNegativeMatrix,
    u: &[f64],
) -> Result<(NervePoint, f64)> {
    build_nerve(a)?.max_inner_product(u)
}

/// Result of a geodesic query. `distance` may be infinite (disconnected
/// complex); it serializes as the string "inf" then. The polyline starts
/// at x and ends at y, with consecutive points in a common maximal cell.
#[derive(Debug, Clone, Serialize)]
pub struct GeodesicResult {
    #[serde(serialize_with = "serialize_distance")]
    pub distance: f64,
    pub error_bound: f64,
    pub path: Vec<NervePoint>,
    pub resolution: u32,
}

impl GeodesicResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("geodesic result serializes")
    }
}

fn serialize_distance<S: Serializer>(d: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if d.is_infinite() {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*d)
    }
}

/// One hard-coded regression check.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleCheck {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

/// Outcome of the three hard-coded counterexample computations.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleReport {
    pub checks: Vec<CounterexampleCheck>,
}

impl CounterexampleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Reproduces the three computations showing that the strict forms of
/// Moussong's Lemmas 9.5, 9.7 and 9.11 need extra hypotheses.
///
/// 1. For A = [[1,0],[0,0]] and u = (1,1), the maximum of the inner
///    product over the one-point nerve is exactly 1, not above it.
/// 2. For the path complex (three vertices, two right-angle edges), the
///    intrinsic distance from v1 to (0, sin pi/4, cos pi/4) equals
///    arccos of their inner product (both 3 pi/4), not strictly less.
/// 3. For the two glued right triangles, the distance from v1 to
///    (0, 0, cos pi/4, sin pi/4) is 3 pi/4, and the suspension of the
///    link at v2 realizes the same 3 pi/4, not strictly less.
pub fn verify_paper_counterexamples() -> CounterexampleReport {
    let tol = 1e-3;
    let mut checks = Vec::new();

    // 1: one-point nerve, maximum exactly 1.
    let check1 = (|| -> Result<CounterexampleCheck> {
        let a = AlmostNegativeMatrix::new(vec![vec![1.0, 0.0], vec![0.0, 0.0]])?;
        let (z, value) = max_inner_product_over_nerve(&a, &[1.0, 1.0])?;
        let z_amb = z.ambient(2);
        let passed = (value - 1.0).abs() <= 1e-12
            && (z_amb[0] - 1.0).abs() <= 1e-9
            && z_amb[1].abs() <= 1e-9;
        Ok(CounterexampleCheck {
            name: "inner-product maximum is not strict (Moussong 9.5)",
            passed,
            details: format!("max <u,z> = {value:.15} at z = ({:.6}, {:.6})", z_amb[0], z_amb[1]),
        })
    })();

    // 2: path complex, intrinsic distance equals the inner-product bound.
    let check2 = (|| -> Result<CounterexampleCheck> {
        let a = AlmostNegativeMatrix::new(vec![
            vec![1.0, 0.0, -1.0],
            vec![0.0, 1.0, 0.0],
            vec![-1.0, 0.0, 1.0],
        ])?;
        let n = build_nerve(&a)?;
        let phi = PI / 4.0;
        let x = n.vertex(0)?;
        let y = NervePoint::from_ambient(&a, &[0.0, phi.sin(), phi.cos()])?;
        let d = intrinsic_distance(&n, &x, &y, 512)?.distance;
        let bound = inner_product(&a, &x, &y).clamp(-1.0, 1.0).acos();
        let target = 3.0 * PI / 4.0;
        let passed = (d - target).abs() <= tol && (d - bound).abs() <= tol;
        Ok(CounterexampleCheck {
            name: "distance bound is not strict (Moussong 9.7)",
            passed,
            details: format!("d = {d:.9}, arccos <x,y> = {bound:.9}, 3 pi/4 = {target:.9}"),
        })
    })();

    // 3: glued triangles, suspension of the link realizes the distance.
    let check3 = (|| -> Result<CounterexampleCheck> {
        let a = AlmostNegativeMatrix::new(vec![
            vec![1.0, 0.0, 0.0, -1.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![-1.0, 0.0, 0.0, 1.0],
        ])?;
        let n = build_nerve(&a)?;
        let phi = PI / 4.0;
        let x = n.vertex(0)?;
        let y = NervePoint::from_ambient(&a, &[0.0, 0.0, phi.cos(), phi.sin()])?;
        let d = intrinsic_distance(&n, &x, &y, 512)?.distance;
        // The link of v2 is the path complex over the labels {1,3,4};
        // x and y live on it, at link coordinates (1,0,0) and
        // (0, cos phi, sin phi).
        let link = n.link_complex(&IndexSet::new(vec![1]))?;
        let xl = link.vertex(0)?;
        let yl = NervePoint::from_ambient(link.gram(), &[0.0, phi.cos(), phi.sin()])?;
        let d_susp = suspension_distance(&link, &xl, &yl, 512)?.distance;
        let target = 3.0 * PI / 4.0;
        let passed = (d - target).abs() <= tol
            && (d_susp - target).abs() <= tol
            && (d - d_susp).abs() <= tol;
        Ok(CounterexampleCheck {
            name: "suspension bound is not strict (Moussong 9.11)",
            passed,
            details: format!("d = {d:.9}, d' = {d_susp:.9}, 3 pi/4 = {target:.9}"),
        })
    })();

    for check in [check1, check2, check3] {
        checks.push(check.unwrap_or_else(|e| CounterexampleCheck {
            name: "internal error",
            passed: false,
            details: e.to_string(),
        }));
    }
    CounterexampleReport { checks }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn quad_form(a: &[Vec<f64>], x: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            acc += x[i] * v * x[j];
        }
    }
    acc
}

fn grid_key(amb: &[f64]) -> Vec<i64> {
    amb.iter()
        .map(|v| {
            let s = v * 1e9;
            if s >= i64::MAX as f64 {
                i64::MAX
            } else if s <= i64::MIN as f64 {
                i64::MIN
            } else {
                s.round() as i64
            }
        })
        .collect()
}

/// Number of weak compositions of `total` into `parts` parts.
fn compositions_count(total: u32, parts: usize) -> u128 {
    if parts == 0 {
        return 0;
    }
    // binomial(total + parts - 1, parts - 1)
    let n = total as u128 + parts as u128 - 1;
    let k = parts as u128 - 1;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn for_each_composition(total: u32, parts: usize, f: &mut impl FnMut(&[u32])) {
    if parts == 0 {
        return;
    }
    let mut buf = vec![0u32; parts];
    compose_rec(&mut buf, 0, total, f);
}

fn compose_rec(buf: &mut Vec<u32>, pos: usize, remaining: u32, f: &mut impl FnMut(&[u32])) {
    if pos + 1 == buf.len() {
        buf[pos] = remaining;
        f(buf);
        return;
    }
    for k in 0..=remaining {
        buf[pos] = k;
        compose_rec(buf, pos + 1, remaining - k, f);
    }
}

struct HeapItem {
    dist: f64,
    node: u32,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapItem {
    // Reversed: BinaryHeap is a max-heap, we need the smallest distance.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

fn dijkstra(adj: &[Vec<(u32, f64)>], source: u32) -> (Vec<f64>, Vec<u32>) {
    let n = adj.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![u32::MAX; n];
    let mut heap = BinaryHeap::new();
    dist[source as usize] = 0.0;
    heap.push(HeapItem {
        dist: 0.0,
        node: source,
    });
    while let Some(HeapItem { dist: d, node }) = heap.pop() {
        if d > dist[node as usize] {
            continue;
        }
        for &(next, w) in &adj[node as usize] {
            let cand = d + w;
            if cand < dist[next as usize] {
                dist[next as usize] = cand;
                prev[next as usize] = node;
                heap.push(HeapItem {
                    dist: cand,
                    node: next,
                });
            }
        }
    }
    (dist, prev)
}
