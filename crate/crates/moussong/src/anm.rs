//! Almost negative matrices and their classification.
//!
//! A symmetric real matrix is almost negative when every off-diagonal entry
//! is non-positive. Cosine matrices of Coxeter systems are the motivating
//! examples. The central operations are the link construction (a Schur
//! complement step that mirrors passing to the link of a vertex in the nerve)
//! and the four-way classification into positive definite, parabolic,
//! degenerate non-parabolic and indefinite matrices.
//!
//! Numerical comparisons use scaled tolerances derived from a base factor
//! (1e-9 by default): `tau_zero` and `tau_pd` scale with the largest matrix
//! entry, `tau_det` with its n-th power. Symmetry is checked at the absolute
//! threshold 1e-12.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::index_set::IndexSet;
use crate::linalg;
use crate::Result;

/// Absolute symmetry tolerance for matrix construction.
pub const TAU_SYM: f64 = 1e-12;

/// Default base factor for the scaled tolerances.
pub const DEFAULT_TOL_BASE: f64 = 1e-9;

/// Classification of an almost negative matrix.
///
/// Parabolic means: order at least 2, singular, and every proper principal
/// submatrix positive definite. These are exactly the normalized cosine
/// matrices of irreducible affine Coxeter systems. A 1x1 zero matrix is
/// degenerate non-parabolic by convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixClass {
    PositiveDefinite,
    Parabolic,
    DegenerateNonParabolic,
    Indefinite,
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MatrixClass::PositiveDefinite => "positive definite",
            MatrixClass::Parabolic => "parabolic",
            MatrixClass::DegenerateNonParabolic => "degenerate (non-parabolic)",
            MatrixClass::Indefinite => "indefinite",
        };
        f.write_str(s)
    }
}

/// A symmetric matrix with non-positive off-diagonal entries.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostNegativeMatrix {
    n: usize,
    a: Vec<Vec<f64>>,
    tol_base: f64,
}

impl AlmostNegativeMatrix {
    /// Validates and wraps a row-major square matrix.
    ///
    /// Requires symmetry within 1e-12 (absolute) and off-diagonal entries
    /// not exceeding `tau_zero`. Entries in the upper triangle win when the
    /// two halves differ within tolerance.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tol_base(rows, DEFAULT_TOL_BASE)
    }

    /// Like `new` with an explicit tolerance base factor.
    pub fn with_tol_base(rows: Vec<Vec<f64>>, tol_base: f64) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let scale = linalg::max_abs(&rows).max(1.0);
        let tau_zero = tol_base * scale;
        let mut a = rows;
        for i in 0..n {
            for j in i + 1..n {
                let delta = (a[i][j] - a[j][i]).abs();
                if delta > TAU_SYM {
                    return Err(Error::NotSymmetric { i, j, delta });
                }
                let v = a[i][j];
                if v > tau_zero {
                    return Err(Error::PositiveOffDiagonal { i, j, value: v });
                }
                a[j][i] = v;
            }
        }
        Ok(AlmostNegativeMatrix { n, a, tol_base })
    }

    /// Internal constructor for matrices that are almost negative by
    /// construction (cosine matrices, links, submatrices).
    pub(crate) fn from_rows_unchecked(a: Vec<Vec<f64>>, tol_base: f64) -> Self {
        let n = a.len();
        debug_assert!(a.iter().all(|r| r.len() == n));
        AlmostNegativeMatrix { n, a, tol_base }
    }

    /// Parses the plain text form: order on the first line, then n rows of
    /// n real entries. Rejects trailing garbage.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let first = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::Parse(format!("matrix order expected, got {first:?}")))?;
        let mut entries = Vec::with_capacity(n * n);
        for tok in tokens.by_ref() {
            if entries.len() == n * n {
                return Err(Error::Parse(format!("trailing input {tok:?}")));
            }
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("real entry expected, got {tok:?}")))?;
            if !v.is_finite() {
                return Err(Error::Parse(format!("entry {tok:?} is not finite")));
            }
            entries.push(v);
        }
        if entries.len() != n * n {
            return Err(Error::Parse(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        let rows = entries.chunks(n).map(|c| c.to_vec()).collect();
        Self::new(rows)
    }

    /// Parses the JSON form {"n": .., "a": [[..]]}.
    pub fn from_json(text: &str) -> Result<Self> {
        let repr: MatrixJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid matrix JSON: {e}")))?;
        if repr.a.len() != repr.n {
            return Err(Error::Parse(format!(
                "declared order {} but {} rows",
                repr.n,
                repr.a.len()
            )));
        }
        Self::new(repr.a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson {
            n: self.n,
            a: self.a.clone(),
        })
        .expect("matrix serializes")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.a[i]
    }

    /// Replaces the tolerance base factor (default 1e-9). Affects every
    /// scaled threshold derived from this matrix from now on.
    pub fn set_tol_base(&mut self, tol_base: f64) {
        self.tol_base = tol_base;
    }

    pub fn tol_base(&self) -> f64 {
        self.tol_base
    }

    fn scale(&self) -> f64 {
        linalg::max_abs(&self.a).max(1.0)
    }

    /// Threshold below which an entry counts as zero.
    pub fn tau_zero(&self) -> f64 {
        self.tol_base * self.scale()
    }

    /// Pivot threshold for positive-definiteness tests.
    pub fn tau_pd(&self) -> f64 {
        self.tol_base * self.scale()
    }

    /// Threshold below which a determinant counts as zero.
    pub fn tau_det(&self) -> f64 {
        self.tol_base * self.scale().powi(self.n as i32)
    }

    /// Positive definiteness via symmetric elimination with the scaled
    /// pivot threshold. The empty matrix is positive definite.
    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.a, self.tau_pd())
    }

    /// Extracts the principal submatrix on the (non-empty) index set `j`.
    pub fn principal_submatrix(&self, j: &IndexSet) -> Result<AlmostNegativeMatrix> {
        if j.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if let Some(max) = j.max_element() {
            if max >= self.n {
                return Err(Error::IndexOutOfBounds {
                    index: max,
                    order: self.n,
                });
            }
        }
        let rows = j
            .iter()
            .map(|&r| j.iter().map(|&c| self.a[r][c]).collect())
            .collect();
        Ok(AlmostNegativeMatrix::from_rows_unchecked(rows, self.tol_base))
    }

    /// Four-way classification. See `MatrixClass`.
    pub fn classify(&self) -> MatrixClass {
        let tau_pd = self.tau_pd();
        if self.n == 0 {
            return MatrixClass::PositiveDefinite;
        }
        if self.n == 1 {
            let v = self.a[0][0];
            return if v > tau_pd {
                MatrixClass::PositiveDefinite
            } else if v < -tau_pd {
                MatrixClass::Indefinite
            } else {
                MatrixClass::DegenerateNonParabolic
            };
        }
        if self.is_positive_definite() {
            return MatrixClass::PositiveDefinite;
        }
        let eigs = linalg::symmetric_eigenvalues(&self.a);
        if eigs[0] < -tau_pd {
            return MatrixClass::Indefinite;
        }
        // Singular positive semidefinite from here on.
        let det = linalg::determinant(&self.a);
        if det.abs() <= self.tau_det() && self.all_maximal_proper_pd() {
            MatrixClass::Parabolic
        } else {
            MatrixClass::DegenerateNonParabolic
        }
    }

    /// Positive definiteness of the n submatrices obtained by deleting one
    /// index. Since positive definiteness passes to principal submatrices,
    /// this covers every proper principal submatrix.
    fn all_maximal_proper_pd(&self) -> bool {
        let tau_pd = self.tau_pd();
        (0..self.n).all(|drop| {
            let rows: Vec<Vec<f64>> = (0..self.n)
                .filter(|&r| r != drop)
                .map(|r| {
                    (0..self.n)
                        .filter(|&c| c != drop)
                        .map(|c| self.a[r][c])
                        .collect()
                })
                .collect();
            linalg::is_positive_definite(&rows, tau_pd)
        })
    }

    /// Link with respect to a single index: the Schur complement step
    /// d_jk = a_jk - a_ij a_ik / a_ii over the remaining indices.
    /// Requires a positive pivot a_ii.
    pub fn link_single(&self, i: usize) -> Result<AlmostNegativeMatrix> {
        if i >= self.n {
            return Err(Error::IndexOutOfBounds {
                index: i,
                order: self.n,
            });
        }
        let piv = self.a[i][i];
        if piv <= self.tau_pd() {
            return Err(Error::PivotNotPositive {
                index: i,
                value: piv,
            });
        }
        Ok(AlmostNegativeMatrix::from_rows_unchecked(
            schur_delete(&self.a, i),
            self.tol_base,
        ))
    }

    /// Iterated link over the index set `i_set`, ascending. The result is
    /// indexed by the remaining indices in ascending order. Requires the
    /// principal submatrix on `i_set` to be positive definite; the empty set
    /// returns the matrix unchanged.
    pub fn link(&self, i_set: &IndexSet) -> Result<AlmostNegativeMatrix> {
        if let Some(max) = i_set.max_element() {
            if max >= self.n {
                return Err(Error::IndexOutOfBounds {
                    index: max,
                    order: self.n,
                });
            }
        }
        let tau_pd = self.tau_pd();
        let mut labels: Vec<usize> = (0..self.n).collect();
        let mut m = self.a.clone();
        for &i in i_set.iter() {
            let pos = labels
                .iter()
                .position(|&l| l == i)
                .expect("label still present");
            // The pivots met here are exactly the elimination pivots of the
            // principal submatrix on i_set; a non-positive one means it is
            // not positive definite.
            if m[pos][pos] <= tau_pd {
                return Err(Error::NotPositiveDefinite {
                    set: i_set.clone(),
                });
            }
            m = schur_delete(&m, pos);
            labels.remove(pos);
        }
        Ok(AlmostNegativeMatrix::from_rows_unchecked(m, self.tol_base))
    }

    /// Diagonal rescaling d_i = 1/sqrt(a_ii) for positive diagonal entries
    /// (other indices are left untouched), giving unit diagonal there.
    pub fn normalize(&self) -> AlmostNegativeMatrix {
        let tau_pd = self.tau_pd();
        let d: Vec<f64> = (0..self.n)
            .map(|i| {
                let v = self.a[i][i];
                if v > tau_pd {
                    1.0 / v.sqrt()
                } else {
                    1.0
                }
            })
            .collect();
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| d[i] * self.a[i][j] * d[j]).collect())
            .collect();
        AlmostNegativeMatrix::from_rows_unchecked(rows, self.tol_base)
    }

    /// Splits the index set into (component of index 0, rest) when the
    /// graph with edges |a_ij| > tau_zero is disconnected; None when it is
    /// connected. Needs order at least 2.
    pub fn reducibility(&self) -> Result<Option<(IndexSet, IndexSet)>> {
        if self.n < 2 {
            return Err(Error::TooFewIndices {
                what: "reducibility",
                min: 2,
                got: self.n,
            });
        }
        let tau_zero = self.tau_zero();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..self.n {
                if !seen[w] && self.a[v][w].abs() > tau_zero {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            return Ok(None);
        }
        let comp: IndexSet = (0..self.n).filter(|&i| seen[i]).collect();
        let rest = comp.complement(self.n);
        Ok(Some((comp, rest)))
    }

    /// Enumerates every positive definite principal submatrix by monotone
    /// breadth-first subset growth: a candidate is tested only when all of
    /// its co-dimension-1 subsets already qualified, and the test is the
    /// positivity of the diagonal entry of the parent's link matrix (the
    /// next elimination pivot). Collects, for every qualifying subset I
    /// different from the full set, the rows of lk(I, A) lying entirely
    /// within tau_zero of zero.
    pub(crate) fn scan_pd_subsets(&self, limit: usize) -> Result<SubsetScan> {
        if self.n > limit {
            return Err(Error::OrderLimit {
                order: self.n,
                limit,
            });
        }
        let tau_pd = self.tau_pd();
        let tau_zero = self.tau_zero();
        struct State {
            set: IndexSet,
            labels: Vec<usize>,
            link: Vec<Vec<f64>>,
        }
        let mut cells: Vec<IndexSet> = Vec::new();
        let mut witnesses: Vec<(IndexSet, usize)> = Vec::new();
        let mut frontier = vec![State {
            set: IndexSet::empty(),
            labels: (0..self.n).collect(),
            link: self.a.clone(),
        }];
        while !frontier.is_empty() {
            for st in &frontier {
                for (pos, &label) in st.labels.iter().enumerate() {
                    if st.link[pos].iter().all(|v| v.abs() <= tau_zero) {
                        witnesses.push((st.set.clone(), label));
                    }
                }
            }
            let current: HashSet<IndexSet> = frontier.iter().map(|s| s.set.clone()).collect();
            let mut next: Vec<State> = Vec::new();
            for st in &frontier {
                let max_el = st.set.max_element();
                for (pos, &label) in st.labels.iter().enumerate() {
                    if let Some(m) = max_el {
                        if label <= m {
                            continue;
                        }
                    }
                    let cand = st.set.with(label);
                    if cand.len() >= 2
                        && !cand
                            .iter()
                            .all(|&d| current.contains(&cand.without(d)))
                    {
                        continue;
                    }
                    if st.link[pos][pos] <= tau_pd {
                        continue;
                    }
                    let mut labels2 = st.labels.clone();
                    labels2.remove(pos);
                    next.push(State {
                        set: cand,
                        labels: labels2,
                        link: schur_delete(&st.link, pos),
                    });
                }
            }
            cells.extend(next.iter().map(|s| s.set.clone()));
            frontier = next;
        }
        cells.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        witnesses.sort_by(|(s1, r1), (s2, r2)| (s1.len(), s1, r1).cmp(&(s2.len(), s2, r2)));
        Ok(SubsetScan {
            cells,
            zero_row_witnesses: witnesses,
        })
    }

    /// All pairs (I, r) such that the principal submatrix on I is positive
    /// definite, I is not the full index set, and row r of lk(I, A) lies
    /// entirely within tau_zero of zero. I may be empty (the matrix itself).
    /// Output is sorted by (|I|, I, r); row indices refer to the original
    /// matrix. Subject to the subset-enumeration guard.
    pub fn scan_zero_row_links(&self) -> Result<Vec<(IndexSet, usize)>> {
        Ok(self
            .scan_pd_subsets(crate::DEFAULT_MAX_ORDER)?
            .zero_row_witnesses)
    }

    /// Runs the zero-row scan and verifies the splitting dichotomy: a
    /// matrix with a zero-row link must be parabolic or reducible. The
    /// report flags a violation if a witness exists but neither holds;
    /// no such matrix is known, and the randomized suites look for one.
    pub fn check_lemma_b(&self) -> Result<LemmaBReport> {
        let witnesses = self.scan_zero_row_links()?;
        let conclusion = if witnesses.is_empty() {
            LemmaBConclusion::NoZeroRowLinkFound
        } else if self.classify() == MatrixClass::Parabolic {
            LemmaBConclusion::Parabolic
        } else if self.n >= 2 {
            match self.reducibility()? {
                Some((left, right)) => LemmaBConclusion::Reducible { left, right },
                None => LemmaBConclusion::LemmaViolation,
            }
        } else {
            LemmaBConclusion::LemmaViolation
        };
        Ok(LemmaBReport {
            witnesses,
            conclusion,
        })
    }
}

/// Schur complement after deleting row/column `pos`:
/// d_jk = m_jk - m_pos,j m_pos,k / m_pos,pos.
pub(crate) fn schur_delete(m: &[Vec<f64>], pos: usize) -> Vec<Vec<f64>> {
    let n = m.len();
    let piv = m[pos][pos];
    let mut out = Vec::with_capacity(n - 1);
    for j in 0..n {
        if j == pos {
            continue;
        }
        let fj = m[pos][j] / piv;
        let mut row = Vec::with_capacity(n - 1);
        for k in 0..n {
            if k == pos {
                continue;
            }
            row.push(m[j][k] - fj * m[pos][k]);
        }
        out.push(row);
    }
    // Restore exact symmetry lost to rounding.
    let nn = out.len();
    for j in 0..nn {
        for k in j + 1..nn {
            let v = 0.5 * (out[j][k] + out[k][j]);
            out[j][k] = v;
            out[k][j] = v;
        }
    }
    out
}

pub(crate) struct SubsetScan {
    pub cells: Vec<IndexSet>,
    pub zero_row_witnesses: Vec<(IndexSet, usize)>,
}

/// One zero-row witness: the linked-away set and the 0-based row index of
/// the zero row within the original matrix. Serialized 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroRowWitness {
    pub cell: IndexSet,
    pub row: usize,
}

/// Outcome of the zero-row-link scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LemmaBConclusion {
    /// The matrix is parabolic.
    Parabolic,
    /// The matrix splits as a direct sum over the given index sets.
    Reducible { left: IndexSet, right: IndexSet },
    /// No link matrix has a zero row; the dichotomy does not apply.
    NoZeroRowLinkFound,
    /// A witness exists but the matrix is neither parabolic nor reducible.
    /// Never observed; would contradict the splitting dichotomy.
    LemmaViolation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaBReport {
    /// Zero-row witnesses (I, r), sorted by (|I|, I, r), 0-based rows.
    pub witnesses: Vec<(IndexSet, usize)>,
    pub conclusion: LemmaBConclusion,
}

impl LemmaBReport {
    pub fn is_violation(&self) -> bool {
        matches!(self.conclusion, LemmaBConclusion::LemmaViolation)
    }

    pub fn to_json(&self) -> String {
        let witnesses: Vec<ZeroRowWitness> = self
            .witnesses
            .iter()
            .map(|(cell, row)| ZeroRowWitness {
                cell: cell.clone(),
                row: row + 1,
            })
            .collect();
        serde_json::json!({
            "witnesses": witnesses,
            "conclusion": self.conclusion,
        })
        .to_string()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    n: usize,
    a: Vec<Vec<f64>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anm(rows: &[&[f64]]) -> AlmostNegativeMatrix {
        AlmostNegativeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn idx(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec())
    }

    /// The 4x4 matrix whose nerve is two spherical triangles glued along
    /// an edge; reused across several tests.
    fn glued_triangles() -> AlmostNegativeMatrix {
        anm(&[
            &[1.0, 0.0, 0.0, -1.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[-1.0, 0.0, 0.0, 1.0],
        ])
    }

    /// Three vertices, two edges: the path complex matrix.
    fn path_complex() -> AlmostNegativeMatrix {
        anm(&[&[1.0, 0.0, -1.0], &[0.0, 1.0, 0.0], &[-1.0, 0.0, 1.0]])
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            AlmostNegativeMatrix::new(vec![vec![1.0, 0.5], vec![0.5, 1.0]]),
            Err(Error::PositiveOffDiagonal { .. })
        ));
        assert!(matches!(
            AlmostNegativeMatrix::new(vec![vec![1.0, -0.5], vec![-0.4, 1.0]]),
            Err(Error::NotSymmetric { .. })
        ));
        assert!(matches!(
            AlmostNegativeMatrix::new(vec![vec![1.0, -0.5]]),
            Err(Error::NotSquare)
        ));
        // Negative diagonal entries are allowed.
        assert!(AlmostNegativeMatrix::new(vec![vec![-1.0]]).is_ok());
    }

    #[test]
    fn principal_submatrix_examples() {
        let a = path_complex();
        let sub = a.principal_submatrix(&idx(&[0, 2])).unwrap();
        assert_eq!(sub.rows(), &[vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let full = a.principal_submatrix(&IndexSet::full(3)).unwrap();
        assert_eq!(full.rows(), a.rows());
        let single = a.principal_submatrix(&idx(&[1])).unwrap();
        assert_eq!(single.rows(), &[vec![1.0]]);
        assert!(matches!(
            a.principal_submatrix(&IndexSet::empty()),
            Err(Error::EmptyIndexSet)
        ));
        assert!(a.principal_submatrix(&idx(&[3])).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            anm(&[&[1.0, -1.0], &[-1.0, 1.0]]).classify(),
            MatrixClass::Parabolic
        );
        assert_eq!(
            anm(&[&[1.0, -0.5], &[-0.5, 1.0]]).classify(),
            MatrixClass::PositiveDefinite
        );
        assert_eq!(
            anm(&[&[1.0, 0.0], &[0.0, 0.0]]).classify(),
            MatrixClass::DegenerateNonParabolic
        );
        assert_eq!(
            anm(&[&[1.0, -1.2], &[-1.2, 1.0]]).classify(),
            MatrixClass::Indefinite
        );
        // The (3,3,3) triangle cosine matrix is the textbook parabolic case.
        let tri = anm(&[
            &[1.0, -0.5, -0.5],
            &[-0.5, 1.0, -0.5],
            &[-0.5, -0.5, 1.0],
        ]);
        assert_eq!(tri.classify(), MatrixClass::Parabolic);
        // Path complex: singular but {1,3} is a degenerate proper submatrix.
        assert_eq!(
            path_complex().classify(),
            MatrixClass::DegenerateNonParabolic
        );
    }

    #[test]
    fn classify_order_one() {
        assert_eq!(anm(&[&[2.0]]).classify(), MatrixClass::PositiveDefinite);
        assert_eq!(
            anm(&[&[0.0]]).classify(),
            MatrixClass::DegenerateNonParabolic
        );
        assert_eq!(anm(&[&[-1.0]]).classify(), MatrixClass::Indefinite);
    }

    #[test]
    fn link_single_closed_form() {
        // For a 3x3 with unit diagonal, eliminating index 0 gives
        // b11 = 1 - a01^2, b12 = a12 - a01 a02, b22 = 1 - a02^2.
        let a = anm(&[
            &[1.0, -0.3, -0.7],
            &[-0.3, 1.0, -0.2],
            &[-0.7, -0.2, 1.0],
        ]);
        let l = a.link_single(0).unwrap();
        assert!((l.entry(0, 0) - (1.0 - 0.09)).abs() < 1e-15);
        assert!((l.entry(0, 1) - (-0.2 - 0.21)).abs() < 1e-15);
        assert!((l.entry(1, 1) - (1.0 - 0.49)).abs() < 1e-15);
    }

    #[test]
    fn link_single_examples() {
        // Deleting an index of a diagonal matrix just drops it.
        let d = anm(&[&[2.0, 0.0], &[0.0, 3.0]]);
        assert_eq!(d.link_single(0).unwrap().rows(), &[vec![3.0]]);
        // The parabolic block survives the link untouched when cross terms
        // vanish.
        let a = anm(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, -1.0], &[0.0, -1.0, 1.0]]);
        let l = a.link_single(0).unwrap();
        assert_eq!(l.rows(), &[vec![1.0, -1.0], vec![-1.0, 1.0]]);
        // Non-positive pivot is an error.
        let z = anm(&[&[0.0, 0.0], &[0.0, 1.0]]);
        assert!(matches!(
            z.link_single(0),
            Err(Error::PivotNotPositive { .. })
        ));
    }

    #[test]
    fn iterated_link_on_glued_triangles() {
        let a = glued_triangles();
        let l = a.link(&idx(&[0, 1])).unwrap();
        assert_eq!(l.order(), 2);
        for (i, row) in [[1.0, 0.0], [0.0, 0.0]].iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert!((l.entry(i, j) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn link_of_empty_set_is_identity_operation() {
        let a = path_complex();
        assert_eq!(a.link(&IndexSet::empty()).unwrap().rows(), a.rows());
    }

    #[test]
    fn link_requires_positive_definite_submatrix() {
        let a = path_complex();
        // {1,3} is the parabolic block; linking over it must fail.
        assert!(matches!(
            a.link(&idx(&[0, 2])),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn link_order_independence() {
        let a = anm(&[
            &[1.0, -0.4, -0.1, 0.0],
            &[-0.4, 1.0, -0.3, -0.2],
            &[-0.1, -0.3, 1.0, -0.5],
            &[0.0, -0.2, -0.5, 1.0],
        ]);
        let i_set = idx(&[1, 3]);
        let via_set = a.link(&i_set).unwrap();
        // lk(I, A) = lk_single(lk(I minus i, A), i) for each i in I.
        for &i in i_set.iter() {
            let partial = a.link(&i_set.without(i)).unwrap();
            // Position of label i among remaining labels.
            let pos = (0..a.order())
                .filter(|k| !i_set.without(i).contains(*k))
                .position(|k| k == i)
                .unwrap();
            let two_step = partial.link_single(pos).unwrap();
            for r in 0..via_set.order() {
                for c in 0..via_set.order() {
                    assert!((via_set.entry(r, c) - two_step.entry(r, c)).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let a = anm(&[&[4.0, -2.0], &[-2.0, 1.0]]);
        let n = a.normalize();
        assert!((n.entry(0, 0) - 1.0).abs() < 1e-15);
        assert!((n.entry(0, 1) + 1.0).abs() < 1e-15);
        assert!((n.entry(1, 1) - 1.0).abs() < 1e-15);
        // Idempotent on unit-diagonal input.
        let again = n.normalize();
        assert_eq!(again.rows(), n.rows());
        // Non-positive diagonal entries are left alone.
        let z = anm(&[&[0.0, 0.0], &[0.0, 4.0]]);
        let zn = z.normalize();
        assert_eq!(zn.entry(0, 0), 0.0);
        assert!((zn.entry(1, 1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reducibility_examples() {
        let diag = anm(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let (l, r) = diag.reducibility().unwrap().unwrap();
        assert_eq!(l, idx(&[0]));
        assert_eq!(r, idx(&[1]));
        let conn = anm(&[&[1.0, -1.0], &[-1.0, 1.0]]);
        assert!(conn.reducibility().unwrap().is_none());
        let (l, r) = glued_triangles().reducibility().unwrap().unwrap();
        assert_eq!(l, idx(&[0, 3]));
        assert_eq!(r, idx(&[1, 2]));
        assert!(anm(&[&[1.0]]).reducibility().is_err());
    }

    #[test]
    fn zero_row_scan_examples() {
        let hits = glued_triangles().scan_zero_row_links().unwrap();
        assert!(hits.contains(&(idx(&[0, 1]), 3)));
        // A positive diagonal matrix has no zero-row links.
        let d = anm(&[&[1.0, 0.0], &[0.0, 2.0]]);
        assert!(d.scan_zero_row_links().unwrap().is_empty());
        // Positive definite 2x2 with coupling: brute-force checked empty.
        let pd = anm(&[&[1.0, -0.5], &[-0.5, 1.0]]);
        assert!(pd.scan_zero_row_links().unwrap().is_empty());
    }

    #[test]
    fn splitting_dichotomy_examples() {
        // Parabolic block plus isolated vertex: reducible.
        let report = path_complex().check_lemma_b().unwrap();
        assert!(!report.witnesses.is_empty());
        assert_eq!(
            report.conclusion,
            LemmaBConclusion::Reducible {
                left: idx(&[0, 2]),
                right: idx(&[1]),
            }
        );
        // Irreducible parabolic matrix: parabolic conclusion.
        let par = anm(&[&[1.0, -1.0], &[-1.0, 1.0]]);
        let report = par.check_lemma_b().unwrap();
        assert!(!report.witnesses.is_empty());
        assert_eq!(report.conclusion, LemmaBConclusion::Parabolic);
        // Positive definite: no witnesses at all.
        let pd = anm(&[&[1.0, -0.5], &[-0.5, 1.0]]);
        let report = pd.check_lemma_b().unwrap();
        assert!(report.witnesses.is_empty());
        assert_eq!(report.conclusion, LemmaBConclusion::NoZeroRowLinkFound);
    }

    #[test]
    fn text_and_json_round_trip() {
        let a = AlmostNegativeMatrix::from_text("2\n1 0\n0 0").unwrap();
        assert_eq!(a.rows(), &[vec![1.0, 0.0], vec![0.0, 0.0]]);
        let b = AlmostNegativeMatrix::from_json(&a.to_json()).unwrap();
        assert_eq!(a, b);
        assert!(AlmostNegativeMatrix::from_text("2\n1 0\n0 0 7").is_err());
        assert!(AlmostNegativeMatrix::from_text("2\n1 0\n0").is_err());
        assert!(AlmostNegativeMatrix::from_json("{\"n\":1,\"a\":[[0.0]],\"x\":1}").is_err());
    }

    #[test]
    fn pd_subset_scan_matches_direct_classification() {
        let a = glued_triangles();
        let scan = a.scan_pd_subsets(crate::DEFAULT_MAX_ORDER).unwrap();
        // Compare against the direct definition over all non-empty subsets.
        let n = a.order();
        let mut expect: Vec<IndexSet> = Vec::new();
        for mask in 1u32..(1 << n) {
            let set: IndexSet = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if a.principal_submatrix(&set).unwrap().classify() == MatrixClass::PositiveDefinite {
                expect.push(set);
            }
        }
        expect.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
        assert_eq!(scan.cells, expect);
    }
}
