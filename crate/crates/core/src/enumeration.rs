//! Breadth-first enumeration of group elements up to a length cap.
//!
//! The search walks the Cayley graph by right multiplication, deduplicating
//! elements through the (faithful) geometric representation: each element is
//! keyed by its matrix on the simple-root basis, quantized well below the
//! separation of the finitely many true entry values. Parents are processed
//! in ShortLex order and letters in increasing order, so the first word that
//! reaches an element is its ShortLex normal form (the normal form of any
//! element is a one-letter extension of the normal form of a shorter one).
//!
//! Tests cross-check the produced normal forms against
//! [`CoxeterSystem::normalize`] and assert catalog group orders, so a
//! quantization failure cannot pass silently.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::element::GroupElement;
use crate::system::{CoxeterSystem, GeneratorId, GeneratorSet};

const OUTSIDE: u32 = u32::MAX;
const QUANTUM: f64 = 1.0e5;

/// A finite ball of the group: all elements of length at most the cap, in
/// ShortLex order, together with the right-multiplication table restricted
/// to the ball.
///
/// When the cap exceeds the longest element the ball is the whole group
/// ([`EnumeratedGroup::is_complete`] returns true) and exact integer walks
/// replace floating-point work entirely.
#[derive(Debug)]
pub struct EnumeratedGroup {
    rank: usize,
    cap: usize,
    truncated: bool,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, u32>,
    right_mul: Vec<Vec<u32>>,
    inverses: OnceLock<Vec<u32>>,
}

impl CoxeterSystem {
    /// Breadth-first closure of {e} under right multiplication, up to the
    /// length cap, in ShortLex order. For finite groups with a large enough
    /// cap this is the whole group.
    pub fn enumerate(&self, cap: usize) -> Vec<GroupElement> {
        self.enumerated(cap).into_elements()
    }

    /// Enumerates and keeps the multiplication structure of the ball.
    pub fn enumerated(&self, cap: usize) -> EnumeratedGroup {
        let rank = self.rank();
        let form = self.form();
        // Generator matrices: row s of sigma_s is e_s - 2 * row s of the form.
        let gen_rows: Vec<Vec<f64>> = (0..rank)
            .map(|s| {
                let mut row: Vec<f64> = form.row(GeneratorId::new(s)).to_vec();
                for (j, x) in row.iter_mut().enumerate() {
                    *x = if j == s { 1.0 - 2.0 * *x } else { -2.0 * *x };
                }
                row
            })
            .collect();

        let mut elements: Vec<GroupElement> = vec![GroupElement::identity()];
        let mut matrices: Vec<Vec<f64>> = vec![identity_matrix(rank)];
        let mut right_mul: Vec<Vec<u32>> = vec![vec![OUTSIDE; rank]];
        let mut seen: HashMap<Vec<i64>, u32> = HashMap::new();
        seen.insert(quantize(&matrices[0]), 0);

        let mut truncated = false;
        let mut level_start = 0usize;
        let mut level_len = elements.len().max(1);
        let mut child = vec![0.0; rank * rank];
        while level_len > 0 {
            let level_end = level_start + level_len;
            for i in level_start..level_end {
                let at_cap = elements[i].length() == cap;
                for s in 0..rank {
                    if right_mul[i][s] != OUTSIDE {
                        continue;
                    }
                    // child = M_w * M_s: a rank-one update using column s of
                    // M_w and the precomputed row of M_s.
                    right_multiply(&matrices[i], &gen_rows[s], s, rank, &mut child);
                    let key = quantize(&child);
                    match seen.get(&key) {
                        Some(&j) => {
                            right_mul[i][s] = j;
                            right_mul[j as usize][s] = i as u32;
                        }
                        None if at_cap => {
                            truncated = true;
                        }
                        None => {
                            let mut nf = elements[i].normal_form().to_vec();
                            nf.push(GeneratorId::new(s));
                            let j = elements.len() as u32;
                            elements.push(GroupElement::from_normal_form(nf));
                            matrices.push(child.clone());
                            right_mul.push(vec![OUTSIDE; rank]);
                            seen.insert(key, j);
                            right_mul[i][s] = j;
                            right_mul[j as usize][s] = i as u32;
                        }
                    }
                }
            }
            level_start = level_end;
            level_len = elements.len() - level_end;
        }

        let index = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        EnumeratedGroup {
            rank,
            cap,
            truncated,
            elements,
            index,
            right_mul,
            inverses: OnceLock::new(),
        }
    }
}

fn identity_matrix(rank: usize) -> Vec<f64> {
    let mut m = vec![0.0; rank * rank];
    for i in 0..rank {
        m[i * rank + i] = 1.0;
    }
    m
}

fn quantize(matrix: &[f64]) -> Vec<i64> {
    matrix.iter().map(|x| (x * QUANTUM).round() as i64).collect()
}

fn right_multiply(m: &[f64], gen_row: &[f64], s: usize, rank: usize, out: &mut [f64]) {
    // (M * M_s)[i][j] = M[i][j] - 2 M[i][s] B[s][j]; gen_row already folds
    // the identity part, so out[i][..] = M[i][..] except column values mix
    // through M[i][s]. Expanded: out[i][j] = M[i][j] + M[i][s]*(gen_row[j] - delta_sj)
    // ... computed directly from the definition below.
    for i in 0..rank {
        let mis = m[i * rank + s];
        let row = &m[i * rank..(i + 1) * rank];
        let out_row = &mut out[i * rank..(i + 1) * rank];
        for j in 0..rank {
            out_row[j] = if j == s {
                mis * gen_row[s]
            } else {
                row[j] + mis * gen_row[j]
            };
        }
    }
}

impl EnumeratedGroup {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// False when the cap cut off longer elements (possible only for
    /// infinite groups or caps below the longest element).
    pub fn is_complete(&self) -> bool {
        !self.truncated
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in ShortLex order; index 0 is the identity.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &GroupElement {
        &self.elements[i as usize]
    }

    pub fn into_elements(self) -> Vec<GroupElement> {
        self.elements
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<u32> {
        self.index.get(w).copied()
    }

    pub fn length_of(&self, i: u32) -> usize {
        self.elements[i as usize].length()
    }

    /// Index of w*s, or None when it lies outside the ball.
    pub fn right_mul(&self, i: u32, s: GeneratorId) -> Option<u32> {
        let j = self.right_mul[i as usize][s.index()];
        (j != OUTSIDE).then_some(j)
    }

    /// Walks the multiplication table from `start` through `letters`.
    pub fn walk<I>(&self, start: u32, letters: I) -> Option<u32>
    where
        I: IntoIterator<Item = GeneratorId>,
    {
        let mut cur = start;
        for s in letters {
            cur = self.right_mul(cur, s)?;
        }
        Some(cur)
    }

    /// Right descent set from the table: s with l(ws) < l(w). Exact.
    pub fn right_descents_idx(&self, i: u32) -> GeneratorSet {
        let mut set = GeneratorSet::EMPTY;
        let li = self.length_of(i);
        for s in 0..self.rank {
            let j = self.right_mul[i as usize][s];
            if j != OUTSIDE && self.length_of(j) < li {
                set.insert(GeneratorId::new(s));
            }
        }
        set
    }

    /// Index of the inverse. Walks stay inside the ball because every prefix
    /// of a reduced word is at most as long as the word.
    pub fn inverse_idx(&self, i: u32) -> u32 {
        let table = self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .enumerate()
                .map(|(k, w)| {
                    self.walk(0, w.normal_form().iter().rev().copied())
                        .unwrap_or_else(|| panic!("inverse walk escaped the ball at {k}"))
                })
                .collect()
        });
        table[i as usize]
    }

    /// Right weak order by the prefix criterion, via exact table walks.
    /// Requires a complete enumeration.
    pub fn weak_leq_idx(&self, u: u32, v: u32) -> bool {
        assert!(self.is_complete(), "weak_leq_idx requires a complete enumeration");
        let (lu, lv) = (self.length_of(u), self.length_of(v));
        if lu > lv {
            return false;
        }
        let uv = self
            .walk(self.inverse_idx(u), self.element(v).normal_form().iter().copied())
            .expect("complete group is closed under multiplication");
        lu + self.length_of(uv) == lv
    }
}
