//! Coxeter systems given by their order matrices.
//!
//! A Coxeter system on n generators is encoded by the symmetric matrix of
//! orders m(s,t): 1 on the diagonal, integers at least 2 or infinity off it.
//! The associated cosine matrix has entries -cos(pi / m(s,t)), which is the
//! bridge into the almost negative matrix machinery: the system is finite
//! exactly when its cosine matrix is positive definite, and affine when it
//! is irreducible with parabolic cosine matrix.

use std::f64::consts::PI;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::anm::{AlmostNegativeMatrix, MatrixClass};
use crate::error::Error;
use crate::index_set::IndexSet;
use crate::Result;

/// Order of the product of two generators: an integer at least 1, or
/// infinity (no relation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoxeterOrder {
    Finite(u32),
    Infinity,
}

impl CoxeterOrder {
    /// The cosine matrix entry -cos(pi/m). Exact values at the special
    /// orders: 1 for m = 1, exactly 0 for m = 2, -1 for infinity.
    pub fn cosine_entry(self) -> f64 {
        match self {
            CoxeterOrder::Finite(1) => 1.0,
            CoxeterOrder::Finite(2) => 0.0,
            CoxeterOrder::Finite(m) => -(PI / m as f64).cos(),
            CoxeterOrder::Infinity => -1.0,
        }
    }

    fn parse_token(tok: &str) -> Result<CoxeterOrder> {
        if tok == "inf" {
            return Ok(CoxeterOrder::Infinity);
        }
        let m: u32 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("order expected (integer or \"inf\"), got {tok:?}")))?;
        if m == 0 {
            return Err(Error::Parse("order 0 is not allowed".into()));
        }
        Ok(CoxeterOrder::Finite(m))
    }
}

impl fmt::Display for CoxeterOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterOrder::Finite(m) => write!(f, "{m}"),
            CoxeterOrder::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for CoxeterOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CoxeterOrder::Finite(m) => s.serialize_u32(*m),
            CoxeterOrder::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for CoxeterOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(0) => Err(D::Error::custom("order 0 is not allowed")),
            Raw::Num(m) if m <= u32::MAX as u64 => Ok(CoxeterOrder::Finite(m as u32)),
            Raw::Num(m) => Err(D::Error::custom(format!("order {m} out of range"))),
            Raw::Str(s) if s == "inf" => Ok(CoxeterOrder::Infinity),
            Raw::Str(s) => Err(D::Error::custom(format!("unknown order {s:?}"))),
        }
    }
}

/// A Coxeter system, stored as its order matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSystem {
    n: usize,
    m: Vec<Vec<CoxeterOrder>>,
}

impl CoxeterSystem {
    /// Validates an order matrix: square, symmetric, 1 exactly on the
    /// diagonal, at least 2 off it.
    pub fn new(m: Vec<Vec<CoxeterOrder>>) -> Result<Self> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            if m[i][i] != CoxeterOrder::Finite(1) {
                return Err(Error::Parse(format!(
                    "diagonal order m({x},{x}) must be 1, got {}",
                    m[i][i],
                    x = i + 1
                )));
            }
            for j in i + 1..n {
                if m[i][j] != m[j][i] {
                    return Err(Error::Parse(format!(
                        "orders m({},{}) = {} and m({},{}) = {} differ",
                        i + 1,
                        j + 1,
                        m[i][j],
                        j + 1,
                        i + 1,
                        m[j][i]
                    )));
                }
                if m[i][j] == CoxeterOrder::Finite(1) {
                    return Err(Error::Parse(format!(
                        "off-diagonal order m({},{}) must be at least 2",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(CoxeterSystem { n, m })
    }

    /// Builds a system from explicit edges (1-based generator pairs); every
    /// unlisted pair gets order 2. Duplicate pairs are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize, CoxeterOrder)]) -> Result<Self> {
        let mut m = vec![vec![CoxeterOrder::Finite(2); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = CoxeterOrder::Finite(1);
        }
        let mut seen = std::collections::HashSet::new();
        for &(i, j, ord) in edges {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::Parse(format!(
                    "edge ({i},{j}) out of range for {n} generators"
                )));
            }
            if i == j {
                return Err(Error::Parse(format!("edge ({i},{j}) is a loop")));
            }
            let (a, b) = (i.min(j) - 1, i.max(j) - 1);
            if !seen.insert((a, b)) {
                return Err(Error::Parse(format!("duplicate edge ({i},{j})")));
            }
            if ord == CoxeterOrder::Finite(1) {
                return Err(Error::Parse(format!(
                    "edge ({i},{j}) must have order at least 2"
                )));
            }
            m[a][b] = ord;
            m[b][a] = ord;
        }
        Self::new(m)
    }

    /// Parses any of the three text forms.
    ///
    /// Matrix form: the order n, then n*n order entries (integers or
    /// "inf"). Edge form, recognized by semicolons: "n; i j m; i j m; ..."
    /// with 1-based pairs, unlisted pairs getting order 2; a bare "n" is
    /// the edgeless system. JSON, recognized by a leading brace:
    /// {"n": .., "m": [[..]]}.
    pub fn from_text(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            return Self::from_json(trimmed);
        }
        if trimmed.contains(';') {
            return Self::from_edge_text(trimmed);
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens.len() {
            0 => Err(Error::Parse("empty input".into())),
            1 => {
                let n = parse_order_count(tokens[0])?;
                Self::from_edges(n, &[])
            }
            _ => {
                let n = parse_order_count(tokens[0])?;
                if tokens.len() != 1 + n * n {
                    return Err(Error::Parse(format!(
                        "expected {} order entries for {n} generators, got {}",
                        n * n,
                        tokens.len() - 1
                    )));
                }
                let mut rows = Vec::with_capacity(n);
                for r in 0..n {
                    let mut row = Vec::with_capacity(n);
                    for c in 0..n {
                        row.push(CoxeterOrder::parse_token(tokens[1 + r * n + c])?);
                    }
                    rows.push(row);
                }
                Self::new(rows)
            }
        }
    }

    fn from_edge_text(text: &str) -> Result<Self> {
        let mut parts = text.split(';');
        let head = parts.next().expect("split yields at least one part");
        let head_tokens: Vec<&str> = head.split_whitespace().collect();
        if head_tokens.len() != 1 {
            return Err(Error::Parse(
                "edge form must start with the generator count alone".into(),
            ));
        }
        let n = parse_order_count(head_tokens[0])?;
        let mut edges = Vec::new();
        for part in parts {
            let toks: Vec<&str> = part.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            if toks.len() != 3 {
                return Err(Error::Parse(format!(
                    "edge {:?} must be three tokens: i j m",
                    part.trim()
                )));
            }
            let i: usize = toks[0]
                .parse()
                .map_err(|_| Error::Parse(format!("generator index expected, got {:?}", toks[0])))?;
            let j: usize = toks[1]
                .parse()
                .map_err(|_| Error::Parse(format!("generator index expected, got {:?}", toks[1])))?;
            edges.push((i, j, CoxeterOrder::parse_token(toks[2])?));
        }
        Self::from_edges(n, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: SystemJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid system JSON: {e}")))?;
        if repr.m.len() != repr.n {
            return Err(Error::Parse(format!(
                "declared {} generators but {} matrix rows",
                repr.n,
                repr.m.len()
            )));
        }
        Self::new(repr.m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SystemJson {
            n: self.n,
            m: self.m.clone(),
        })
        .expect("system serializes")
    }

    /// Number of generators.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coxeter_order(&self, i: usize, j: usize) -> CoxeterOrder {
        self.m[i][j]
    }

    /// The cosine matrix with entries -cos(pi / m(s,t)). Orders 1, 2 and
    /// infinity map to exactly 1, 0 and -1.
    pub fn cosine_matrix(&self) -> AlmostNegativeMatrix {
        let rows = self
            .m
            .iter()
            .map(|row| row.iter().map(|&o| o.cosine_entry()).collect())
            .collect();
        AlmostNegativeMatrix::from_rows_unchecked(rows, crate::anm::DEFAULT_TOL_BASE)
    }

    /// Connected components of the Coxeter graph (edges where the order is
    /// at least 3 or infinite), each sorted, ordered by smallest element.
    pub fn irreducible_components(&self) -> Vec<IndexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in 0..self.n {
                    if !seen[w] && self.m[v][w] != CoxeterOrder::Finite(2) && v != w {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(IndexSet::new(comp));
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible_components().len() == 1
    }

    /// Finite exactly when the cosine matrix is positive definite.
    pub fn is_finite(&self) -> bool {
        self.cosine_matrix().is_positive_definite()
    }

    /// Affine: irreducible with parabolic cosine matrix.
    pub fn is_affine(&self) -> bool {
        self.is_irreducible() && self.cosine_matrix().classify() == MatrixClass::Parabolic
    }

    /// The standard subsystem generated by the given generators.
    pub fn subsystem(&self, t: &IndexSet) -> Result<CoxeterSystem> {
        if let Some(max) = t.max_element() {
            if max >= self.n {
                return Err(Error::IndexOutOfBounds {
                    index: max,
                    order: self.n,
                });
            }
        }
        let m = t
            .iter()
            .map(|&r| t.iter().map(|&c| self.m[r][c]).collect())
            .collect();
        Ok(CoxeterSystem { n: t.len(), m })
    }
}

fn parse_order_count(tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("generator count expected, got {tok:?}")))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemJson {
    n: usize,
    m: Vec<Vec<CoxeterOrder>>,
}
