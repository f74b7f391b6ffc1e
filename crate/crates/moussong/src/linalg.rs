//! Dense linear algebra helpers for the small symmetric matrices this crate
//! works with (order rarely above 10, never above the enumeration guard).
//! Plain O(n^3) algorithms throughout; no pivot-growth heroics needed at
//! these sizes.

/// Largest absolute entry.
pub(crate) fn max_abs(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .flat_map(|row| row.iter())
        .fold(0.0_f64, |m, &v| m.max(v.abs()))
}

/// Symmetric Gaussian elimination. Returns true iff every pivot exceeds
/// `min_pivot`, which for a symmetric matrix is the positive-definiteness
/// test (the pivots are the ratios of consecutive leading principal minors).
pub(crate) fn is_positive_definite(a: &[Vec<f64>], min_pivot: f64) -> bool {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for k in 0..n {
        let piv = m[k][k];
        if piv <= min_pivot {
            return false;
        }
        for i in k + 1..n {
            let f = m[i][k] / piv;
            if f == 0.0 {
                continue;
            }
            for j in k + 1..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    true
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub(crate) fn symmetric_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![a[0][0]];
    }
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let scale = max_abs(&m).max(1e-300);
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[p][q] * m[p][q];
            }
        }
        if off.sqrt() <= 1e-14 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let mrp = m[r][p];
                    let mrq = m[r][q];
                    m[r][p] = c * mrp - s * mrq;
                    m[p][r] = m[r][p];
                    m[r][q] = s * mrp + c * mrq;
                    m[q][r] = m[r][q];
                }
                let app = m[p][p];
                let aqq = m[q][q];
                m[p][p] = app - t * apq;
                m[q][q] = aqq + t * apq;
                m[p][q] = 0.0;
                m[q][p] = 0.0;
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// Determinant via LU with partial pivoting.
pub(crate) fn determinant(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    if n == 0 {
        return 1.0;
    }
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let mut piv_row = k;
        for i in k + 1..n {
            if m[i][k].abs() > m[piv_row][k].abs() {
                piv_row = i;
            }
        }
        if piv_row != k {
            m.swap(k, piv_row);
            det = -det;
        }
        let piv = m[k][k];
        if piv == 0.0 {
            return 0.0;
        }
        det *= piv;
        for i in k + 1..n {
            let f = m[i][k] / piv;
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    det
}

/// Solves a x = b by Gaussian elimination with partial pivoting.
/// Returns None when a pivot is smaller than 1e-13 times the matrix scale.
pub(crate) fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    if n == 0 {
        return Some(Vec::new());
    }
    let tiny = 1e-13 * max_abs(a).max(1.0);
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    for k in 0..n {
        let mut piv_row = k;
        for i in k + 1..n {
            if m[i][k].abs() > m[piv_row][k].abs() {
                piv_row = i;
            }
        }
        if m[piv_row][k].abs() <= tiny {
            return None;
        }
        m.swap(k, piv_row);
        rhs.swap(k, piv_row);
        let piv = m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / piv;
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                m[i][j] -= f * m[k][j];
            }
            rhs[i] -= f * rhs[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let mut s = rhs[k];
        for j in k + 1..n {
            s -= m[k][j] * x[j];
        }
        x[k] = s / m[k][k];
    }
    Some(x)
}

/// Matrix inverse column by column. None when singular.
pub(crate) fn inverse(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        cols.push(solve(a, &e)?);
    }
    // cols[j] is the j-th column; transpose into row-major.
    let mut inv = vec![vec![0.0; n]; n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            inv[i][j] = col[i];
        }
    }
    Some(inv)
}

pub(crate) fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub(crate) fn mat_vec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}
