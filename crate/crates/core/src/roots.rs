//! Positive roots, simple reflections and the real-root growth witness for
//! non-Dynkin quivers.

use std::collections::{HashMap, HashSet, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::quiver::{Quiver, RootVector};

/// Heights at which the growth witness is sampled.
pub const GROWTH_HEIGHTS: [u64; 4] = [4, 8, 16, 32];

/// `s_i(v) = v - (e_i, v) e_i`. Vertex `i` is 0-based.
pub fn reflect(q: &Quiver, i: usize, v: &RootVector) -> RootVector {
    let n = q.vertex_count();
    assert!(i < n, "simple index {i} out of range");
    assert_eq!(v.len(), n, "vector length");
    let pairing: i64 = (0..n).map(|j| q.gram(i, j) * v.0[j]).sum();
    let mut out = v.clone();
    out.0[i] -= pairing;
    out
}

/// True iff the coordinates have gcd 1.
pub fn is_indivisible(alpha: &RootVector) -> Result<bool> {
    if alpha.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = alpha.0.iter().fold(0i64, |acc, &c| acc.gcd(&c));
    Ok(g == 1)
}

/// Positive roots of a Dynkin quiver in canonical order.
#[derive(Debug, Clone)]
pub struct RootSystem {
    quiver: Quiver,
    roots: Vec<RootVector>,
    index: HashMap<RootVector, usize>,
}

impl RootSystem {
    /// Closure of the simple roots under all simple reflections, keeping
    /// positive vectors. Refuses non-Dynkin input, where the closure is
    /// infinite.
    pub fn new(q: &Quiver) -> Result<Self> {
        if !q.is_dynkin() {
            return Err(non_dynkin(q));
        }
        let mut roots = closure(q, None);
        roots.sort_by(|a, b| a.canonical_cmp(b));
        let index = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        Ok(RootSystem {
            quiver: q.clone(),
            roots,
            index,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    /// Number of positive roots.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn position(&self, alpha: &RootVector) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    pub fn get(&self, k: usize) -> &RootVector {
        &self.roots[k]
    }

    /// Position of the simple root `e_i`.
    pub fn simple_position(&self, i: usize) -> usize {
        self.index[&RootVector::simple(self.quiver.vertex_count(), i)]
    }
}

pub fn positive_roots(q: &Quiver) -> Result<RootSystem> {
    RootSystem::new(q)
}

/// Real positive roots of height at most `h`, sorted canonically.
///
/// Every real positive root descends to a simple root through positive
/// roots of strictly decreasing height, so a search capped at `h` is
/// complete.
pub fn real_roots_up_to_height(q: &Quiver, h: u64) -> Vec<RootVector> {
    let mut roots = closure(q, Some(h as i64));
    roots.sort_by(|a, b| a.canonical_cmp(b));
    roots
}

/// Number of real positive roots at each of the given heights.
pub fn growth_witness(q: &Quiver, heights: &[u64]) -> Vec<(u64, usize)> {
    let Some(&max) = heights.iter().max() else {
        return Vec::new();
    };
    let all = real_roots_up_to_height(q, max);
    heights
        .iter()
        .map(|&h| (h, all.iter().filter(|r| r.height() as u64 <= h).count()))
        .collect()
}

pub(crate) fn non_dynkin(q: &Quiver) -> Error {
    Error::NonDynkin {
        growth: growth_witness(q, &GROWTH_HEIGHTS),
    }
}

fn closure(q: &Quiver, cap: Option<i64>) -> Vec<RootVector> {
    let n = q.vertex_count();
    let mut seen: HashSet<RootVector> = HashSet::new();
    let mut queue: VecDeque<RootVector> = VecDeque::new();
    for i in 0..n {
        let e = RootVector::simple(n, i);
        seen.insert(e.clone());
        queue.push_back(e);
    }
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let w = reflect(q, i, &v);
            if !w.is_positive() || cap.is_some_and(|c| w.height() > c) {
                continue;
            }
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
        out.push(v);
    }
    out
}
