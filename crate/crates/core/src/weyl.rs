//! The Weyl group under the weak right order.
//!
//! Elements are generated breadth-first from the identity by right
//! multiplication with simple reflections. A cover `w -> w s_i` is recorded
//! exactly when `w(alpha_i)` is positive, and that root is the one the
//! cover adds to the inversion set.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{Quiver, RootVector};
use crate::roots::RootSystem;

/// Fixed-width set of positive roots, indexed by canonical root position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet {
    words: Vec<u64>,
}

impl RootSet {
    pub fn empty(width: usize) -> Self {
        RootSet {
            words: vec![0; width.div_ceil(64).max(1)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for k in 0..width {
            s.insert(k);
        }
        s
    }

    pub fn insert(&mut self, k: usize) {
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn contains(&self, k: usize) -> bool {
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &Self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let mut bits = a & !b;
            while bits != 0 {
                let t = bits.trailing_zeros() as usize;
                out.push(w * 64 + t);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |t| bits >> t & 1 == 1).map(move |t| w * 64 + t)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    rank: usize,
    /// Row-major `n x n`; column `j` is the image of `e_j`.
    action: Vec<i64>,
    inversions: RootSet,
    length: usize,
}

impl WeylElement {
    pub fn action(&self) -> &[i64] {
        &self.action
    }

    pub fn inversions(&self) -> &RootSet {
        &self.inversions
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `w(e_i)`.
    pub fn image_of_simple(&self, i: usize) -> RootVector {
        let n = self.rank;
        RootVector((0..n).map(|r| self.action[r * n + i]).collect())
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        let n = v.len();
        RootVector(
            (0..n)
                .map(|r| (0..n).map(|c| self.action[r * n + c] * v.0[c]).sum())
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cover {
    pub target: usize,
    /// 0-based simple index `i` of the cover `w -> w s_i`.
    pub simple: usize,
    /// Position of the added root `w(alpha_i)` in the root system.
    pub root: usize,
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    roots: RootSystem,
    elements: Vec<WeylElement>,
    covers: Vec<Vec<Cover>>,
    parent: Vec<Option<(usize, usize)>>,
    index: HashMap<Vec<i64>, usize>,
    longest: usize,
}

impl WeylGroup {
    pub fn generate(q: &Quiver) -> Result<Self> {
        let roots = RootSystem::new(q)?;
        let n = q.vertex_count();
        let m = roots.len();

        let mut identity = vec![0i64; n * n];
        for i in 0..n {
            identity[i * n + i] = 1;
        }
        let mut elements = vec![WeylElement {
            rank: n,
            action: identity.clone(),
            inversions: RootSet::empty(m),
            length: 0,
        }];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut covers: Vec<Vec<Cover>> = vec![Vec::new()];
        let mut parent = vec![None];

        let mut cursor = 0;
        while cursor < elements.len() {
            for i in 0..n {
                let w = &elements[cursor];
                let image = w.image_of_simple(i);
                if !image.is_positive() {
                    continue;
                }
                let root = roots.position(&image).ok_or_else(|| {
                    Error::Invariant(format!("w(alpha_{}) = {image} is not a positive root", i + 1))
                })?;
                // (w s_i)(e_j) = w(e_j) - (e_i, e_j) w(e_i)
                let mut action = w.action.clone();
                for j in 0..n {
                    let c = q.gram(i, j);
                    if c != 0 {
                        for r in 0..n {
                            action[r * n + j] -= c * image.0[r];
                        }
                    }
                }
                let target = match index.get(&action) {
                    Some(&t) => t,
                    None => {
                        let mut inversions = w.inversions.clone();
                        inversions.insert(root);
                        let t = elements.len();
                        let length = w.length + 1;
                        index.insert(action.clone(), t);
                        elements.push(WeylElement {
                            rank: n,
                            action,
                            inversions,
                            length,
                        });
                        covers.push(Vec::new());
                        parent.push(Some((cursor, i)));
                        t
                    }
                };
                covers[cursor].push(Cover {
                    target,
                    simple: i,
                    root,
                });
            }
            cursor += 1;
        }

        let max_len = elements.iter().map(|e| e.length).max().unwrap_or(0);
        let tops: Vec<usize> = (0..elements.len())
            .filter(|&k| elements[k].length == max_len)
            .collect();
        if tops.len() != 1 {
            return Err(Error::Invariant(format!(
                "{} elements of maximal length",
                tops.len()
            )));
        }
        Ok(WeylGroup {
            roots,
            elements,
            covers,
            parent,
            index,
            longest: tops[0],
        })
    }

    pub fn quiver(&self) -> &Quiver {
        self.roots.quiver()
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &WeylElement {
        &self.elements[k]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    pub fn longest_length(&self) -> usize {
        self.elements[self.longest].length
    }

    /// Upper covers of element `k`, in increasing simple index.
    pub fn covers(&self, k: usize) -> &[Cover] {
        &self.covers[k]
    }

    pub fn cover_count(&self) -> usize {
        self.covers.iter().map(Vec::len).sum()
    }

    pub fn position_of_action(&self, action: &[i64]) -> Option<usize> {
        self.index.get(action).copied()
    }

    /// A reduced word (0-based simple indices) along the BFS tree.
    pub fn reduced_word(&self, k: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = k;
        while let Some((p, i)) = self.parent[cur] {
            word.push(i);
            cur = p;
        }
        word.reverse();
        word
    }

    /// The cover `w -> w s_i`, or `None` when `w s_i` is shorter.
    pub fn step(&self, k: usize, i: usize) -> Option<&Cover> {
        self.covers[k].iter().find(|c| c.simple == i)
    }

    /// DOT digraph of the weak order; vertices labelled by a reduced word,
    /// edges `w -> w s_i` labelled by the added root.
    pub fn hasse_dot(&self) -> String {
        let mut out = String::from("digraph weak_order {\n  rankdir=BT;\n");
        for k in 0..self.len() {
            let word = self.reduced_word(k);
            let label = if word.is_empty() {
                "e".to_string()
            } else {
                word.iter().map(|i| format!("s{}", i + 1)).collect::<String>()
            };
            let _ = writeln!(out, "  n{k} [label=\"{label}\"];");
        }
        for (k, cs) in self.covers.iter().enumerate() {
            for c in cs {
                let _ = writeln!(
                    out,
                    "  n{k} -> n{} [label=\"{}\"];",
                    c.target,
                    self.roots.get(c.root)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Exact count of maximal chains.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainCount(pub BigUint);

impl ChainCount {
    pub fn from_u64(v: u64) -> Self {
        ChainCount(BigUint::from(v))
    }
}

impl fmt::Display for ChainCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for ChainCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// `f(e) = 1`, `f(w) = sum over lower covers`, evaluated at the longest element.
pub fn count_maximal_chains(g: &WeylGroup) -> ChainCount {
    let mut f = vec![BigUint::zero(); g.len()];
    f[g.identity()] = BigUint::one();
    // BFS order is by length, so every lower cover is final before use
    for k in 0..g.len() {
        if f[k].is_zero() {
            continue;
        }
        let value = f[k].clone();
        for c in g.covers(k) {
            f[c.target] += &value;
        }
    }
    ChainCount(std::mem::take(&mut f[g.longest()]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ChainStep {
    pub simple: usize,
    pub root: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain(pub Vec<ChainStep>);

impl Chain {
    pub fn word(&self) -> Vec<usize> {
        self.0.iter().map(|s| s.simple).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Depth-first stream of maximal chains in lexicographic simple-index order.
pub struct ChainStream<'g> {
    group: &'g WeylGroup,
    stack: Vec<(usize, usize)>,
    path: Vec<ChainStep>,
    limit: Option<usize>,
    emitted: usize,
    truncated: bool,
    done: bool,
}

impl<'g> ChainStream<'g> {
    fn new(group: &'g WeylGroup, limit: Option<usize>) -> Self {
        ChainStream {
            group,
            stack: vec![(group.identity(), 0)],
            path: Vec::new(),
            limit,
            emitted: 0,
            truncated: false,
            done: false,
        }
    }

    /// True once the stream ended at the cap with chains left over.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn emitted(&self) -> usize {
        self.emitted
    }

    fn advance(&mut self) -> Option<Chain> {
        let longest = self.group.longest();
        loop {
            let (elem, pos) = self.stack.last_mut()?;
            let covers = self.group.covers(*elem);
            if *pos < covers.len() {
                let c = covers[*pos];
                *pos += 1;
                self.path.push(ChainStep {
                    simple: c.simple,
                    root: c.root,
                });
                self.stack.push((c.target, 0));
                if c.target == longest {
                    return Some(Chain(self.path.clone()));
                }
            } else {
                self.stack.pop();
                self.path.pop();
            }
        }
    }
}

impl Iterator for ChainStream<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        if self.done {
            return None;
        }
        if self.limit.is_some_and(|l| self.emitted >= l) {
            self.truncated = self.advance().is_some();
            self.done = true;
            return None;
        }
        match self.advance() {
            Some(chain) => {
                self.emitted += 1;
                Some(chain)
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}

pub fn enumerate_maximal_chains(g: &WeylGroup, limit: Option<usize>) -> ChainStream<'_> {
    ChainStream::new(g, limit)
}

/// Hook-length count of standard Young tableaux of a partition shape.
pub fn hook_length_count(shape: &[usize]) -> ChainCount {
    let cells: usize = shape.iter().sum();
    let mut numerator = BigUint::one();
    for k in 2..=cells {
        numerator *= BigUint::from(k);
    }
    let mut hooks = BigUint::one();
    for (r, &row) in shape.iter().enumerate() {
        for c in 0..row {
            let arm = row - c - 1;
            let leg = shape[r + 1..].iter().filter(|&&len| len > c).count();
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    ChainCount(numerator / hooks)
}

/// Standard Young tableaux of the staircase `(n, n-1, ..., 1)`: the number
/// of reduced words of the longest element of type `A_n`.
pub fn staircase_syt_count(n: usize) -> ChainCount {
    assert!(n >= 1, "rank must be positive");
    let shape: Vec<usize> = (1..=n).rev().collect();
    hook_length_count(&shape)
}
