//! Fundamental chamber of the Moussong metric for a finite Coxeter group.
//!
//! For a finite system the cosine matrix A is positive definite and the
//! group acts on R^n preserving the inner product ⟨x,y⟩ = xᵀAy. The
//! fundamental chamber is the simplicial cone spanned by the dual basis
//! u_1, .., u_n with A·u_j = e_j. The chamber cell of the Moussong metric
//! is the convex hull of the points q_T for T ⊆ S, where q_T is the
//! A-orthogonal projection of the apex p onto span(u_i : i ∈ T); p itself
//! is the unique interior point with ⟨p, e_s⟩_A = 1 for every s, i.e.
//! A-distance 1 from each facet hyperplane.

use crate::anm::AlmostNegativeMatrix;
use crate::coxmat::CoxeterSystem;
use crate::error::Error;
use crate::index_set::IndexSet;
use crate::linalg;
use crate::Result;

#[derive(Debug, Clone)]
pub struct Chamber {
    gram: AlmostNegativeMatrix,
    dual_basis: Vec<Vec<f64>>,
    apex: Vec<f64>,
    vertices: Vec<(IndexSet, Vec<f64>)>,
}

impl Chamber {
    pub fn gram(&self) -> &AlmostNegativeMatrix {
        &self.gram
    }

    pub fn order(&self) -> usize {
        self.gram.order()
    }

    /// The vectors u_1, .., u_n with A·u_j = e_j, in input generator
    /// order (u_j is the j-th column of A⁻¹).
    pub fn dual_basis(&self) -> &[Vec<f64>] {
        &self.dual_basis
    }

    /// The point p = Σ_j u_j with ⟨p, e_s⟩_A = 1 for every generator s.
    pub fn apex(&self) -> &[f64] {
        &self.apex
    }

    /// All 2^n chamber vertices q_T, sorted by (size, lex) of T.
    pub fn vertices(&self) -> &[(IndexSet, Vec<f64>)] {
        &self.vertices
    }

    pub fn vertex(&self, t: &IndexSet) -> Option<&[f64]> {
        self.vertices
            .iter()
            .find(|(s, _)| s == t)
            .map(|(_, q)| q.as_slice())
    }

    pub fn to_json(&self) -> String {
        let mut verts = serde_json::Map::new();
        for (t, q) in &self.vertices {
            verts.insert(t.to_string(), serde_json::json!(q));
        }
        serde_json::json!({
            "dual_basis": self.dual_basis,
            "apex": self.apex,
            "vertices": verts,
        })
        .to_string()
    }
}

/// Builds the fundamental chamber of a finite Coxeter system.
pub fn chamber(sys: &CoxeterSystem) -> Result<Chamber> {
    chamber_with(sys, crate::DEFAULT_MAX_ORDER)
}

/// `chamber` with an explicit order guard (the vertex set has size 2^n).
pub fn chamber_with(sys: &CoxeterSystem, limit: usize) -> Result<Chamber> {
    let n = sys.order();
    if n > limit {
        return Err(Error::OrderLimit { order: n, limit });
    }
    let gram = sys.cosine_matrix();
    if !gram.is_positive_definite() {
        return Err(Error::NotFinite);
    }
    let inv = linalg::inverse(gram.rows()).ok_or(Error::NotFinite)?;
    let dual_basis: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| inv[i][j]).collect()).collect();
    let apex: Vec<f64> = (0..n).map(|i| inv[i].iter().sum()).collect();

    let mut subsets: Vec<IndexSet> = (0..1u32 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut vertices = Vec::with_capacity(subsets.len());
    for t in subsets {
        let q = project_apex(&inv, &dual_basis, &apex, &t)?;
        vertices.push((t, q));
    }
    Ok(Chamber {
        gram,
        dual_basis,
        apex,
        vertices,
    })
}

/// A-orthogonal projection of the apex onto span(u_i : i ∈ T).
///
/// Writing q_T = Σ_{i∈T} c_i u_i, orthogonality of p − q_T against each
/// u_j (j ∈ T) reads Σ_i c_i ⟨u_i,u_j⟩_A = ⟨p,u_j⟩_A, and since
/// ⟨u_i,u_j⟩_A = (A⁻¹)_ij and ⟨p,u_j⟩_A = p_j this is the linear system
/// (A⁻¹)_T c = p|_T.
fn project_apex(
    inv: &[Vec<f64>],
    dual_basis: &[Vec<f64>],
    apex: &[f64],
    t: &IndexSet,
) -> Result<Vec<f64>> {
    let n = apex.len();
    if t.is_empty() {
        return Ok(vec![0.0; n]);
    }
    let idx = t.as_slice();
    let sub: Vec<Vec<f64>> = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| inv[i][j]).collect())
        .collect();
    let rhs: Vec<f64> = idx.iter().map(|&i| apex[i]).collect();
    let coeffs = linalg::solve(&sub, &rhs).ok_or(Error::NotFinite)?;
    let mut q = vec![0.0; n];
    for (k, &i) in idx.iter().enumerate() {
        let c = coeffs[k];
        if c < -1e-9 {
            return Err(Error::InvalidPoint(format!(
                "projection onto {t} has negative cone coefficient {c}"
            )));
        }
        let c = c.max(0.0);
        for (qx, ux) in q.iter_mut().zip(&dual_basis[i]) {
            *qx += c * ux;
        }
    }
    Ok(q)
}
