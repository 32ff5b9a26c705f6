//! Maximal green sequences recorded by the classes tilted at.
//!
//! A sequence of positive roots is green exactly when it can be replayed
//! as a length-increasing walk `w -> w s_i` from the identity where each
//! step tilts at `w(alpha_i)`. It is maximal when the walk ends at the
//! longest element.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{Quiver, RootVector};
use crate::roots::{non_dynkin, RootSystem};
use crate::weyl::{enumerate_maximal_chains, Chain, ChainStream, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GreenSequence {
    /// 0-based simple indices.
    pub word: Vec<usize>,
    pub roots: Vec<RootVector>,
}

impl GreenSequence {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

pub fn chain_to_mgs(g: &WeylGroup, chain: &Chain) -> Result<GreenSequence> {
    let mut cur = g.identity();
    for (k, step) in chain.0.iter().enumerate() {
        let cover = g.step(cur, step.simple).ok_or_else(|| {
            Error::InvalidChain(format!("step {k}: s{} does not increase length", step.simple + 1))
        })?;
        if cover.root != step.root {
            return Err(Error::InvalidChain(format!("step {k}: wrong root label")));
        }
        cur = cover.target;
    }
    if cur != g.longest() {
        return Err(Error::InvalidChain(format!(
            "ends at length {} instead of {}",
            g.element(cur).length(),
            g.longest_length()
        )));
    }
    Ok(GreenSequence {
        word: chain.word(),
        roots: chain.0.iter().map(|s| g.roots().get(s.root).clone()).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureReason {
    /// Not a positive root of the quiver.
    NotPositiveRoot { root: RootVector },
    /// Repeats a class tilted at earlier.
    DuplicateRoot { root: RootVector, first_index: usize },
    /// No simple object of the current heart has this class.
    NoSimpleTilt { root: RootVector },
    /// Every step succeeded but the shifted heart was not reached.
    EndsBeforeLongest { length: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    pub index: usize,
    #[serde(flatten)]
    pub reason: FailureReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// Recovered simple indices (0-based) of the accepted prefix.
    pub word: Vec<usize>,
    pub failure: Option<ValidationFailure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    /// Must end at the longest element.
    Maximal,
    /// Any green sequence, maximal or not.
    Prefix,
}

/// Replays the sequence against the Weyl group action; needs only the
/// root system, not the full group.
pub fn validate_mgs(rs: &RootSystem, roots: &[RootVector], mode: ValidationMode) -> Result<ValidationReport> {
    let q = rs.quiver();
    let n = q.vertex_count();
    for r in roots {
        if r.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: r.len(),
            });
        }
    }
    let mut action = identity(n);
    let mut word = Vec::new();
    let mut first_seen: HashMap<&RootVector, usize> = HashMap::new();
    let fail = |word: Vec<usize>, index, reason| ValidationReport {
        valid: false,
        word,
        failure: Some(ValidationFailure { index, reason }),
    };

    for (k, root) in roots.iter().enumerate() {
        if rs.position(root).is_none() {
            return Ok(fail(word, k, FailureReason::NotPositiveRoot { root: root.clone() }));
        }
        if let Some(&first) = first_seen.get(root) {
            return Ok(fail(
                word,
                k,
                FailureReason::DuplicateRoot {
                    root: root.clone(),
                    first_index: first,
                },
            ));
        }
        first_seen.insert(root, k);
        let Some(i) = (0..n).find(|&i| column(&action, n, i) == root.0) else {
            return Ok(fail(word, k, FailureReason::NoSimpleTilt { root: root.clone() }));
        };
        right_multiply(q, &mut action, i);
        word.push(i);
    }

    if mode == ValidationMode::Maximal && word.len() != rs.len() {
        let length = word.len();
        return Ok(fail(
            word,
            length,
            FailureReason::EndsBeforeLongest {
                length,
                expected: rs.len(),
            },
        ));
    }
    Ok(ValidationReport {
        valid: true,
        word,
        failure: None,
    })
}

/// Builds the green sequence of a reduced word of the longest element.
pub fn word_to_mgs(rs: &RootSystem, word: &[usize]) -> Result<GreenSequence> {
    let q = rs.quiver();
    let n = q.vertex_count();
    let mut action = identity(n);
    let mut roots = Vec::with_capacity(word.len());
    for (k, &i) in word.iter().enumerate() {
        if i >= n {
            return Err(Error::VertexOutOfRange {
                vertex: i + 1,
                vertex_count: n,
            });
        }
        let image = RootVector(column(&action, n, i));
        if !image.is_positive() {
            return Err(Error::NonReduced { index: k, simple: i + 1 });
        }
        right_multiply(q, &mut action, i);
        roots.push(image);
    }
    if roots.len() != rs.len() {
        return Err(Error::NotMaximal {
            length: roots.len(),
            expected: rs.len(),
        });
    }
    Ok(GreenSequence {
        word: word.to_vec(),
        roots,
    })
}

/// Completes a green sequence to a maximal one by always taking the first
/// available tilt. Returns `None` if `prefix` is not green.
pub fn complete_prefix(g: &WeylGroup, prefix: &[RootVector]) -> Result<Option<GreenSequence>> {
    let report = validate_mgs(g.roots(), prefix, ValidationMode::Prefix)?;
    if !report.valid {
        return Ok(None);
    }
    let mut cur = g.identity();
    let mut word = report.word;
    for &i in &word {
        cur = g.step(cur, i).expect("validated prefix").target;
    }
    while cur != g.longest() {
        let c = g.covers(cur)[0];
        word.push(c.simple);
        cur = c.target;
    }
    word_to_mgs(g.roots(), &word).map(Some)
}

/// Maximal green sequences in lexicographic word order.
pub struct MgsStream<'g> {
    group: &'g WeylGroup,
    chains: ChainStream<'g>,
}

impl MgsStream<'_> {
    pub fn truncated(&self) -> bool {
        self.chains.truncated()
    }
}

impl Iterator for MgsStream<'_> {
    type Item = GreenSequence;

    fn next(&mut self) -> Option<GreenSequence> {
        let chain = self.chains.next()?;
        Some(chain_to_mgs(self.group, &chain).expect("enumerated chains are maximal"))
    }
}

pub fn enumerate_mgs(g: &WeylGroup, limit: Option<usize>) -> MgsStream<'_> {
    MgsStream {
        group: g,
        chains: enumerate_maximal_chains(g, limit),
    }
}

/// Refuses non-Dynkin quivers up front, with the growth witness attached.
pub fn require_dynkin(q: &Quiver) -> Result<()> {
    if q.is_dynkin() {
        Ok(())
    } else {
        Err(non_dynkin(q))
    }
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn column(m: &[i64], n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|r| m[r * n + i]).collect()
}

fn right_multiply(q: &Quiver, m: &mut [i64], i: usize) {
    let n = q.vertex_count();
    let image = column(m, n, i);
    for j in 0..n {
        let c = q.gram(i, j);
        if c != 0 {
            for r in 0..n {
                m[r * n + j] -= c * image[r];
            }
        }
    }
}
