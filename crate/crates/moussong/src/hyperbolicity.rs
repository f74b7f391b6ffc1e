//! Deciding Gromov-hyperbolicity of Coxeter groups.
//!
//! A Coxeter group fails to be hyperbolic exactly when it contains a
//! Z x Z subgroup, and on the level of the defining system that reduces
//! to a finite diagram check: the group is hyperbolic if and only if
//! there is neither an affine standard subsystem of rank at least 3 nor
//! a pair of disjoint, elementwise-commuting standard subsystems that
//! are both infinite. `decide` runs both searches and returns a witness
//! whenever the group is not hyperbolic.

use serde::Serialize;

use crate::anm::MatrixClass;
use crate::coxmat::{CoxeterOrder, CoxeterSystem};
use crate::error::Error;
use crate::index_set::IndexSet;
use crate::Result;

/// Evidence that a system is not hyperbolic: an affine standard
/// subsystem of rank at least 3, or two disjoint commuting infinite
/// standard subsystems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Affine { t: IndexSet },
    Commuting { t1: IndexSet, t2: IndexSet },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperbolicityVerdict {
    pub hyperbolic: bool,
    pub witness: Option<Witness>,
}

impl HyperbolicityVerdict {
    pub fn is_hyperbolic(&self) -> bool {
        self.hyperbolic
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

/// Smallest (by size, then lexicographically) connected generator subset
/// of rank at least 3 whose cosine submatrix is parabolic, i.e. the
/// smallest affine standard subsystem of rank at least 3.
pub fn find_affine_witness(sys: &CoxeterSystem) -> Option<IndexSet> {
    let n = sys.order();
    for k in 3..=n {
        for t in combinations(n, k) {
            if !is_connected(sys, &t) {
                continue;
            }
            let sub = sys.subsystem(&t).expect("subset indices are in range");
            if sub.cosine_matrix().classify() == MatrixClass::Parabolic {
                return Some(t);
            }
        }
    }
    None
}

/// First (by size, then lexicographically) infinite generator subset T1
/// whose commuting complement contains an infinite subsystem, paired
/// with the minimal infinite subset of that complement.
///
/// The commuting complement T2* of T1 is the set of generators with
/// order 2 against everything in T1. Searching (T1, T2*) instead of all
/// disjoint pairs is complete: any valid partner T2 is a subset of T2*,
/// and infiniteness (a non-positive-definite cosine submatrix) passes
/// up from T2 to T2*.
pub fn find_commuting_witness(sys: &CoxeterSystem) -> Option<(IndexSet, IndexSet)> {
    let n = sys.order();
    // Rank-1 subsystems are finite, so start at size 2.
    for k in 2..=n {
        for t1 in combinations(n, k) {
            if is_finite_subset(sys, &t1) {
                continue;
            }
            let t2_star: IndexSet = (0..n)
                .filter(|&s| {
                    !t1.contains(s)
                        && t1
                            .iter()
                            .all(|&t| sys.coxeter_order(s, t) == CoxeterOrder::Finite(2))
                })
                .collect();
            if t2_star.is_empty() || is_finite_subset(sys, &t2_star) {
                continue;
            }
            let t2 = minimal_infinite_subset(sys, &t2_star)
                .expect("an infinite set has a minimal infinite subset");
            return Some((t1, t2));
        }
    }
    None
}

/// Decides hyperbolicity, reporting the first witness found; affine
/// witnesses are searched before commuting pairs. Systems larger than
/// the enumeration guard are refused.
pub fn decide(sys: &CoxeterSystem) -> Result<HyperbolicityVerdict> {
    decide_with(sys, crate::DEFAULT_MAX_ORDER)
}

/// `decide` with an explicit order guard instead of the default.
pub fn decide_with(sys: &CoxeterSystem, limit: usize) -> Result<HyperbolicityVerdict> {
    if sys.order() > limit {
        return Err(Error::OrderLimit {
            order: sys.order(),
            limit,
        });
    }
    if let Some(t) = find_affine_witness(sys) {
        return Ok(HyperbolicityVerdict {
            hyperbolic: false,
            witness: Some(Witness::Affine { t }),
        });
    }
    if let Some((t1, t2)) = find_commuting_witness(sys) {
        return Ok(HyperbolicityVerdict {
            hyperbolic: false,
            witness: Some(Witness::Commuting { t1, t2 }),
        });
    }
    Ok(HyperbolicityVerdict {
        hyperbolic: true,
        witness: None,
    })
}

fn is_finite_subset(sys: &CoxeterSystem, t: &IndexSet) -> bool {
    sys.subsystem(t)
        .expect("subset indices are in range")
        .is_finite()
}

/// Connectivity of the Coxeter graph restricted to `t`.
fn is_connected(sys: &CoxeterSystem, t: &IndexSet) -> bool {
    let verts = t.as_slice();
    if verts.is_empty() {
        return false;
    }
    let mut seen = vec![false; verts.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(p) = stack.pop() {
        for q in 0..verts.len() {
            if !seen[q] && sys.coxeter_order(verts[p], verts[q]) != CoxeterOrder::Finite(2) {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Smallest (size, then lex) subset of `within` that is infinite.
fn minimal_infinite_subset(sys: &CoxeterSystem, within: &IndexSet) -> Option<IndexSet> {
    let verts = within.as_slice();
    for k in 2..=verts.len() {
        for pos in combinations(verts.len(), k) {
            let t: IndexSet = pos.iter().map(|&p| verts[p]).collect();
            if !is_finite_subset(sys, &t) {
                return Some(t);
            }
        }
    }
    None
}

/// Lexicographic k-subsets of {0, .., n-1}.
fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        k,
        cur: Vec::new(),
        started: false,
    }
}

struct Combinations {
    n: usize,
    k: usize,
    cur: Vec<usize>,
    started: bool,
}

impl Iterator for Combinations {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        if self.k > self.n || self.k == 0 {
            return None;
        }
        if !self.started {
            self.started = true;
            self.cur = (0..self.k).collect();
            return Some(self.cur.iter().copied().collect());
        }
        // Advance the rightmost index that still has room.
        let mut i = self.k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.cur[i] < self.n - self.k + i {
                break;
            }
        }
        self.cur[i] += 1;
        for j in i + 1..self.k {
            self.cur[j] = self.cur[j - 1] + 1;
        }
        Some(self.cur.iter().copied().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(m: u32) -> CoxeterOrder {
        CoxeterOrder::Finite(m)
    }

    fn triangle(p: u32, q: u32, r: u32) -> CoxeterSystem {
        CoxeterSystem::from_edges(3, &[(1, 2, order(p)), (1, 3, order(q)), (2, 3, order(r))])
            .unwrap()
    }

    fn idx(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec())
    }

    /// Four generators, two commuting infinite dihedrals.
    fn double_infinite() -> CoxeterSystem {
        CoxeterSystem::from_edges(
            4,
            &[(1, 2, CoxeterOrder::Infinity), (3, 4, CoxeterOrder::Infinity)],
        )
        .unwrap()
    }

    #[test]
    fn affine_witness_examples() {
        assert_eq!(find_affine_witness(&triangle(3, 3, 3)), Some(idx(&[0, 1, 2])));
        let d3 = CoxeterSystem::from_edges(2, &[(1, 2, order(3))]).unwrap();
        assert_eq!(find_affine_witness(&d3), None);
        assert_eq!(find_affine_witness(&triangle(2, 3, 7)), None);
        // (2,4,4) tiles the plane: parabolic, hence a witness.
        assert_eq!(find_affine_witness(&triangle(2, 4, 4)), Some(idx(&[0, 1, 2])));
    }

    #[test]
    fn commuting_witness_examples() {
        assert_eq!(
            find_commuting_witness(&double_infinite()),
            Some((idx(&[0, 1]), idx(&[2, 3])))
        );
        let d3 = CoxeterSystem::from_edges(2, &[(1, 2, order(3))]).unwrap();
        assert_eq!(find_commuting_witness(&d3), None);
        assert_eq!(find_commuting_witness(&triangle(3, 3, 3)), None);
    }

    #[test]
    fn decide_examples() {
        let d3 = CoxeterSystem::from_edges(2, &[(1, 2, order(3))]).unwrap();
        assert!(decide(&d3).unwrap().is_hyperbolic());

        let v = decide(&triangle(3, 3, 3)).unwrap();
        assert!(!v.is_hyperbolic());
        assert_eq!(v.witness, Some(Witness::Affine { t: idx(&[0, 1, 2]) }));

        let v = decide(&double_infinite()).unwrap();
        assert_eq!(
            v.witness,
            Some(Witness::Commuting {
                t1: idx(&[0, 1]),
                t2: idx(&[2, 3]),
            })
        );

        assert!(decide(&triangle(2, 3, 7)).unwrap().is_hyperbolic());
    }

    #[test]
    fn witness_is_deterministically_minimal() {
        // Two disjoint affine triangles: the lexicographically first wins.
        let sys = CoxeterSystem::from_edges(
            6,
            &[
                (1, 2, order(3)),
                (1, 3, order(3)),
                (2, 3, order(3)),
                (4, 5, order(3)),
                (4, 6, order(3)),
                (5, 6, order(3)),
            ],
        )
        .unwrap();
        let v = decide(&sys).unwrap();
        assert_eq!(v.witness, Some(Witness::Affine { t: idx(&[0, 1, 2]) }));
    }

    #[test]
    fn order_guard() {
        let sys = CoxeterSystem::from_edges(21, &[]).unwrap();
        assert!(matches!(decide(&sys), Err(Error::OrderLimit { .. })));
        assert!(decide_with(&sys, 21).is_ok());
    }

    #[test]
    fn verdict_json_shape() {
        let v = decide(&triangle(3, 3, 3)).unwrap();
        let json = v.to_json();
        assert!(json.contains("\"hyperbolic\":false"));
        assert!(json.contains("\"affine\""));
        assert!(json.contains("[1,2,3]"));
    }

    #[test]
    fn combination_enumeration_is_lexicographic() {
        let all: Vec<IndexSet> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], idx(&[0, 1]));
        assert_eq!(all[1], idx(&[0, 2]));
        assert_eq!(all[5], idx(&[2, 3]));
        assert!(combinations(3, 4).next().is_none());
    }
}
