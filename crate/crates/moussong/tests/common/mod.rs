//! Shared generators for the integration suites. Everything is seeded
//! explicitly so reruns are bit-for-bit reproducible.

#![allow(dead_code)]

use moussong::{AlmostNegativeMatrix, CoxeterOrder, CoxeterSystem};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unit diagonal; each off-diagonal entry is 0 with probability 0.4 and
/// otherwise uniform in [-1.2, 0]; symmetric.
pub fn random_almost_negative_rows(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        rows[i][i] = 1.0;
        for j in 0..i {
            let v = if rng.gen::<f64>() < 0.4 {
                0.0
            } else {
                -1.2 * rng.gen::<f64>()
            };
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    rows
}

pub fn random_almost_negative(rng: &mut ChaCha8Rng, n: usize) -> AlmostNegativeMatrix {
    AlmostNegativeMatrix::new(random_almost_negative_rows(rng, n)).unwrap()
}

/// Plants the problem pattern behind zero-row links: a -1 entry whose two
/// rows and columns are otherwise cleared (diagonal kept). The link at
/// either endpoint of the planted pair then has a zero row.
pub fn plant_zero_cross(rng: &mut ChaCha8Rng, rows: &mut [Vec<f64>]) {
    let n = rows.len();
    let i = rng.gen_range(0..n);
    let j = (i + rng.gen_range(1..n)) % n;
    for k in 0..n {
        if k != i {
            rows[i][k] = 0.0;
            rows[k][i] = 0.0;
        }
        if k != j {
            rows[j][k] = 0.0;
            rows[k][j] = 0.0;
        }
    }
    rows[i][j] = -1.0;
    rows[j][i] = -1.0;
}

/// Strictly diagonally dominant, hence positive definite: unit diagonal
/// with off-diagonal entries in [-1/(2n), 0].
pub fn random_positive_definite_rows(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        rows[i][i] = 1.0;
        for j in 0..i {
            let v = -rng.gen::<f64>() / (2.0 * n as f64);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    rows
}

/// Normalized Laplacian of a random connected weighted graph: unit
/// diagonal, singular, and every co-dimension-one principal submatrix is
/// positive definite. Parabolic for every order >= 2.
pub fn random_parabolic_rows(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    assert!(n >= 2);
    let mut w = vec![vec![0.0; n]; n];
    // Random spanning tree keeps the graph connected; extra edges thicken it.
    for v in 1..n {
        let u = rng.gen_range(0..v);
        let wt = rng.gen_range(0.2..1.0);
        w[u][v] = wt;
        w[v][u] = wt;
    }
    for i in 0..n {
        for j in 0..i {
            if w[i][j] == 0.0 && rng.gen::<f64>() < 0.3 {
                let wt = rng.gen_range(0.2..1.0);
                w[i][j] = wt;
                w[j][i] = wt;
            }
        }
    }
    let mut l: Vec<Vec<f64>> = vec![vec![0.0; n]; n];
    for i in 0..n {
        l[i][i] = (0..n).map(|j| w[i][j]).sum();
        for j in 0..n {
            if i != j {
                l[i][j] = -w[i][j];
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| 1.0 / l[i][i].sqrt()).collect();
    for i in 0..n {
        for j in 0..n {
            l[i][j] *= d[i] * d[j];
        }
    }
    l
}

/// Random Coxeter system with pair orders drawn uniformly from `palette`.
pub fn random_coxeter(rng: &mut ChaCha8Rng, n: usize, palette: &[CoxeterOrder]) -> CoxeterSystem {
    let mut m = vec![vec![CoxeterOrder::Finite(1); n]; n];
    for i in 0..n {
        for j in 0..i {
            let o = palette[rng.gen_range(0..palette.len())];
            m[i][j] = o;
            m[j][i] = o;
        }
    }
    CoxeterSystem::new(m).unwrap()
}

fn fin(m: u32) -> CoxeterOrder {
    CoxeterOrder::Finite(m)
}

/// Path diagram: `orders[k]` labels the edge between generators k+1, k+2.
pub fn path(orders: &[u32]) -> CoxeterSystem {
    let edges: Vec<(usize, usize, CoxeterOrder)> = orders
        .iter()
        .enumerate()
        .map(|(k, &m)| (k + 1, k + 2, fin(m)))
        .collect();
    CoxeterSystem::from_edges(orders.len() + 1, &edges).unwrap()
}

/// The irreducible finite types of rank at most 8, plus dihedral types.
pub fn finite_types() -> Vec<(String, CoxeterSystem)> {
    let mut out = Vec::new();
    for n in 1..=8usize {
        out.push((format!("A{n}"), path(&vec![3; n - 1])));
    }
    for n in 2..=8usize {
        let mut orders = vec![3; n - 1];
        orders[0] = 4;
        out.push((format!("B{n}"), path(&orders)));
    }
    for n in 4..=8usize {
        let mut edges: Vec<(usize, usize, CoxeterOrder)> =
            (1..n - 1).map(|k| (k, k + 1, fin(3))).collect();
        edges.push((n - 2, n, fin(3)));
        out.push((
            format!("D{n}"),
            CoxeterSystem::from_edges(n, &edges).unwrap(),
        ));
    }
    for n in 6..=8usize {
        let mut edges: Vec<(usize, usize, CoxeterOrder)> =
            (1..n - 1).map(|k| (k, k + 1, fin(3))).collect();
        edges.push((3, n, fin(3)));
        out.push((
            format!("E{n}"),
            CoxeterSystem::from_edges(n, &edges).unwrap(),
        ));
    }
    out.push(("F4".to_string(), path(&[3, 4, 3])));
    out.push(("H3".to_string(), path(&[5, 3])));
    out.push(("H4".to_string(), path(&[5, 3, 3])));
    for m in 5..=12u32 {
        out.push((format!("I2({m})"), path(&[m])));
    }
    out
}

/// Irreducible affine types: the cosine matrices are parabolic.
pub fn affine_types() -> Vec<(String, CoxeterSystem)> {
    let mut out = Vec::new();
    out.push((
        "A~1".to_string(),
        CoxeterSystem::from_edges(2, &[(1, 2, CoxeterOrder::Infinity)]).unwrap(),
    ));
    for n in 2..=5usize {
        // Cycle of 3s on n+1 nodes.
        let r = n + 1;
        let mut edges: Vec<(usize, usize, CoxeterOrder)> =
            (1..r).map(|k| (k, k + 1, fin(3))).collect();
        edges.push((1, r, fin(3)));
        out.push((
            format!("A~{n}"),
            CoxeterSystem::from_edges(r, &edges).unwrap(),
        ));
    }
    out.push((
        "B~3".to_string(),
        CoxeterSystem::from_edges(4, &[(1, 3, fin(3)), (2, 3, fin(3)), (3, 4, fin(4))]).unwrap(),
    ));
    out.push(("C~2".to_string(), path(&[4, 4])));
    out.push(("C~3".to_string(), path(&[4, 3, 4])));
    out.push(("G~2".to_string(), path(&[6, 3])));
    out.push((
        "D~4".to_string(),
        CoxeterSystem::from_edges(
            5,
            &[
                (1, 5, fin(3)),
                (2, 5, fin(3)),
                (3, 5, fin(3)),
                (4, 5, fin(3)),
            ],
        )
        .unwrap(),
    ));
    out
}

/// Direct sum: disjoint generator sets, all cross orders 2.
pub fn direct_sum(a: &CoxeterSystem, b: &CoxeterSystem) -> CoxeterSystem {
    let n = a.order() + b.order();
    let mut m = vec![vec![fin(2); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = fin(1);
    }
    for i in 0..a.order() {
        for j in 0..a.order() {
            m[i][j] = a.coxeter_order(i, j);
        }
    }
    let off = a.order();
    for i in 0..b.order() {
        for j in 0..b.order() {
            m[off + i][off + j] = b.coxeter_order(i, j);
        }
    }
    CoxeterSystem::new(m).unwrap()
}

/// One or two catalog types, total rank at most 8. Always finite.
pub fn random_finite_system(rng: &mut ChaCha8Rng) -> CoxeterSystem {
    let types = finite_types();
    loop {
        let a = &types[rng.gen_range(0..types.len())].1;
        if rng.gen::<f64>() < 0.5 {
            return a.clone();
        }
        let b = &types[rng.gen_range(0..types.len())].1;
        if a.order() + b.order() <= 8 {
            return direct_sum(a, b);
        }
    }
}

pub fn mat_vec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}
