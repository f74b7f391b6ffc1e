//! Cell poset of the Davis complex of a finite Coxeter group.
//!
//! The cells are the cosets wW_T for T ⊆ S (every subset is spherical
//! when W is finite), ordered by inclusion. Group elements are
//! enumerated through the geometric representation: breadth-first
//! products of the reflection matrices, deduplicated by rounding matrix
//! entries to a 1e-6 grid. Entries of these matrices are algebraic
//! numbers that stay well separated at the group sizes permitted here,
//! so the numeric dedup is exact in practice.

use std::collections::HashMap;

use crate::coxmat::CoxeterSystem;
use crate::error::Error;
use crate::index_set::IndexSet;
use crate::linalg;
use crate::Result;

/// Largest group order the breadth-first enumeration will close over.
pub const MAX_GROUP_ORDER: usize = 10_000;
/// Guard on 2^n * |W|, the size of the coset lookup tables.
const MAX_LOOKUP_ENTRIES: u128 = 10_000_000;
/// Guard on the total number of cells.
const MAX_CELLS: usize = 200_000;

/// One coset wW_T. `word` is the shortlex-minimal representative as
/// 0-based generator indices; `covers` lists ids of the immediate
/// successors wW_{T∪{s}}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DavisCell {
    pub id: u32,
    pub word: Vec<usize>,
    pub subset: IndexSet,
    pub covers: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct DavisPoset {
    group_order: usize,
    cells: Vec<DavisCell>,
    /// For each subset T, the cell id of wW_T per group element w.
    cell_lookup: HashMap<IndexSet, Vec<u32>>,
    /// Group-element index of each cell's representative.
    reps: Vec<u32>,
}

impl DavisPoset {
    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Cells sorted by (subset size, subset, shortlex representative).
    pub fn cells(&self) -> &[DavisCell] {
        &self.cells
    }

    pub fn cell(&self, id: u32) -> &DavisCell {
        &self.cells[id as usize]
    }

    /// Coset inclusion: wW_T ≤ w'W_T' iff T ⊆ T' and w ∈ w'W_T'.
    /// Panics on out-of-range ids.
    pub fn leq(&self, a: u32, b: u32) -> bool {
        let (ca, cb) = (&self.cells[a as usize], &self.cells[b as usize]);
        if !ca.subset.is_subset_of(&cb.subset) {
            return false;
        }
        self.cell_lookup[&cb.subset][self.reps[a as usize] as usize] == b
    }

    pub fn to_json(&self) -> String {
        let cells: Vec<serde_json::Value> = self
            .cells
            .iter()
            .map(|c| {
                let word: Vec<usize> = c.word.iter().map(|&s| s + 1).collect();
                serde_json::json!({
                    "id": c.id,
                    "word": word,
                    "subset": c.subset,
                    "covers": c.covers,
                })
            })
            .collect();
        serde_json::json!({
            "group_order": self.group_order,
            "cells": cells,
        })
        .to_string()
    }
}

/// Enumerates the cell poset of the Davis complex of a finite system.
pub fn enumerate_davis_cells(sys: &CoxeterSystem) -> Result<DavisPoset> {
    let n = sys.order();
    let gram = sys.cosine_matrix();
    if !gram.is_positive_definite() {
        return Err(Error::NotFinite);
    }

    // Geometric representation: the reflection for generator s maps
    // x to x - 2<x, e_s>_A e_s, i.e. the identity with row s replaced
    // by e_s - 2 * (row s of A).
    let reflections: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|s| {
            let mut m = identity(n);
            for j in 0..n {
                m[s][j] -= 2.0 * gram.entry(s, j);
            }
            m
        })
        .collect();

    // Breadth-first enumeration of W. FIFO order with generators taken
    // in ascending order discovers every element through its shortlex
    // minimal word.
    let mut elements = vec![identity(n)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
    index.insert(grid_key(&elements[0]), 0);
    let mut mult: Vec<Vec<u32>> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let mut row = Vec::with_capacity(n);
        for s in 0..n {
            let next = linalg::mat_mul(&elements[head], &reflections[s]);
            let key = grid_key(&next);
            let target = match index.get(&key) {
                Some(&t) => t,
                None => {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge {
                            limit: MAX_GROUP_ORDER,
                        });
                    }
                    let t = elements.len() as u32;
                    let mut word = words[head].clone();
                    word.push(s);
                    index.insert(key, t);
                    elements.push(next);
                    words.push(word);
                    t
                }
            };
            row.push(target);
        }
        mult.push(row);
        head += 1;
    }
    let group_order = elements.len();
    drop(elements);
    drop(index);

    if (1u128 << n.min(127)) * group_order as u128 > MAX_LOOKUP_ENTRIES {
        return Err(Error::PosetTooLarge);
    }

    let mut subsets: Vec<IndexSet> = (0..1u64 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    // First pass: carve each subset's coset partition. Scanning group
    // elements in ascending (= shortlex) order makes the first element
    // seen in each coset its shortlex-minimal representative.
    let mut cells: Vec<DavisCell> = Vec::new();
    let mut reps: Vec<u32> = Vec::new();
    let mut cell_lookup: HashMap<IndexSet, Vec<u32>> = HashMap::new();
    for t in &subsets {
        let mut cell_of = vec![u32::MAX; group_order];
        for w in 0..group_order as u32 {
            if cell_of[w as usize] != u32::MAX {
                continue;
            }
            if cells.len() >= MAX_CELLS {
                return Err(Error::PosetTooLarge);
            }
            let id = cells.len() as u32;
            let mut stack = vec![w];
            cell_of[w as usize] = id;
            while let Some(v) = stack.pop() {
                for &s in t.iter() {
                    let u = mult[v as usize][s];
                    if cell_of[u as usize] == u32::MAX {
                        cell_of[u as usize] = id;
                        stack.push(u);
                    }
                }
            }
            cells.push(DavisCell {
                id,
                word: words[w as usize].clone(),
                subset: t.clone(),
                covers: Vec::new(),
            });
            reps.push(w);
        }
        cell_lookup.insert(t.clone(), cell_of);
    }

    // Second pass: covers. Adding one generator to T yields exactly the
    // immediate successors of wW_T in the inclusion order.
    for i in 0..cells.len() {
        let rep = reps[i] as usize;
        let t = cells[i].subset.clone();
        let mut covers: Vec<u32> = (0..n)
            .filter(|&s| !t.contains(s))
            .map(|s| cell_lookup[&t.with(s)][rep])
            .collect();
        covers.sort_unstable();
        cells[i].covers = covers;
    }

    Ok(DavisPoset {
        group_order,
        cells,
        cell_lookup,
        reps,
    })
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

fn grid_key(m: &[Vec<f64>]) -> Vec<i64> {
    m.iter()
        .flat_map(|row| row.iter().map(|&x| (x * 1e6).round() as i64))
        .collect()
}
