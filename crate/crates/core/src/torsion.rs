//! Torsion classes modelled by inversion sets, with two independently
//! built digraphs on them: the Hasse quiver of inclusion (brute-force subset
//! comparison, arcs from larger to smaller) and the exchange quiver (simple
//! tilts, arcs from smaller to larger).

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::RootVector;
use crate::roots::RootSystem;
use crate::weyl::{RootSet, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionClass {
    pub labels: RootSet,
}

impl TorsionClass {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn classes(&self, rs: &RootSystem) -> Vec<RootVector> {
        self.labels.iter().map(|k| rs.get(k).clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LabeledArc {
    pub from: usize,
    pub to: usize,
    pub label: RootVector,
}

#[derive(Debug, Clone)]
pub struct LabeledDigraph {
    pub vertices: Vec<TorsionClass>,
    pub arcs: Vec<LabeledArc>,
}

impl LabeledDigraph {
    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.from == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.to == v).count()
    }

    pub fn position(&self, class: &TorsionClass) -> Option<usize> {
        self.vertices.iter().position(|v| v == class)
    }

    /// Number of directed paths from `source` to `sink`.
    pub fn count_paths(&self, source: usize, sink: usize) -> BigUint {
        let n = self.vertices.len();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for a in &self.arcs {
            out[a.from].push(a.to);
            indeg[a.to] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = ready.pop() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        let mut paths = vec![BigUint::zero(); n];
        paths[source] = BigUint::one();
        for v in order {
            if paths[v].is_zero() {
                continue;
            }
            let p = paths[v].clone();
            for &w in &out[v] {
                paths[w] += &p;
            }
        }
        std::mem::take(&mut paths[sink])
    }

    pub fn to_dot(&self, name: &str, rs: &RootSystem) -> String {
        let mut out = format!("digraph {name} {{\n");
        for (k, v) in self.vertices.iter().enumerate() {
            let classes: Vec<String> = v.classes(rs).iter().map(|r| format!("({r})")).collect();
            let label = if classes.is_empty() {
                "0".to_string()
            } else {
                classes.join(" ")
            };
            let _ = writeln!(out, "  t{k} [label=\"{label}\"];");
        }
        for a in &self.arcs {
            let _ = writeln!(out, "  t{} -> t{} [label=\"{}\"];", a.from, a.to, a.label);
        }
        out.push_str("}\n");
        out
    }
}

/// One torsion class per group element, in group order.
pub fn all_torsion_classes(g: &WeylGroup) -> Vec<TorsionClass> {
    g.elements()
        .iter()
        .map(|e| TorsionClass {
            labels: e.inversions().clone(),
        })
        .collect()
}

/// Hasse quiver of inclusion by brute force: `T2 -> T1` iff `T1` is a
/// maximal strict subset of `T2`. Every cover must differ by one root.
pub fn hasse_of_inclusion(classes: &[TorsionClass], rs: &RootSystem) -> Result<LabeledDigraph> {
    let n = classes.len();
    let mut arcs = Vec::new();
    for (big, t2) in classes.iter().enumerate() {
        let below: Vec<usize> = (0..n)
            .filter(|&k| classes[k].labels.is_strict_subset(&t2.labels))
            .collect();
        for &small in &below {
            let t1 = &classes[small].labels;
            let between = below
                .iter()
                .any(|&mid| mid != small && t1.is_strict_subset(&classes[mid].labels));
            if between {
                continue;
            }
            let diff = t2.labels.difference(t1);
            if diff.len() != 1 {
                return Err(Error::CoverNotSingleton {
                    from: describe(&t2.labels, rs),
                    to: describe(t1, rs),
                });
            }
            arcs.push(LabeledArc {
                from: big,
                to: small,
                label: rs.get(diff[0]).clone(),
            });
        }
    }
    arcs.sort();
    Ok(LabeledDigraph {
        vertices: classes.to_vec(),
        arcs,
    })
}

/// Exchange quiver from the tilt simulation: `T -> T + {gamma}` for each
/// weak-order cover adding `gamma`.
pub fn exchange_quiver(g: &WeylGroup) -> LabeledDigraph {
    let mut arcs = Vec::new();
    for k in 0..g.len() {
        for c in g.covers(k) {
            arcs.push(LabeledArc {
                from: k,
                to: c.target,
                label: g.roots().get(c.root).clone(),
            });
        }
    }
    arcs.sort();
    LabeledDigraph {
        vertices: all_torsion_classes(g),
        arcs,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OppositeReport {
    pub coincide: bool,
    pub hasse_arcs: usize,
    pub exchange_arcs: usize,
    /// Reversed exchange arcs missing from the Hasse quiver.
    pub missing_in_hasse: Vec<ArcDescription>,
    /// Hasse arcs with no reversed exchange arc.
    pub extra_in_hasse: Vec<ArcDescription>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ArcDescription {
    pub from: Vec<RootVector>,
    pub to: Vec<RootVector>,
    pub label: RootVector,
}

/// Checks that reversing every exchange arc gives exactly the Hasse quiver.
/// Vertices are matched by label set, so vertex order may differ.
pub fn check_opposite(
    hasse: &LabeledDigraph,
    exchange: &LabeledDigraph,
    rs: &RootSystem,
) -> Result<OppositeReport> {
    let hv: BTreeSet<&TorsionClass> = hasse.vertices.iter().collect();
    let ev: BTreeSet<&TorsionClass> = exchange.vertices.iter().collect();
    if hv != ev || hv.len() != hasse.vertices.len() || ev.len() != exchange.vertices.len() {
        return Err(Error::VertexSetMismatch);
    }
    type Key<'a> = (&'a RootSet, &'a RootSet, &'a RootVector);
    let h: BTreeSet<Key> = hasse
        .arcs
        .iter()
        .map(|a| (&hasse.vertices[a.from].labels, &hasse.vertices[a.to].labels, &a.label))
        .collect();
    let reversed: BTreeSet<Key> = exchange
        .arcs
        .iter()
        .map(|a| (&exchange.vertices[a.to].labels, &exchange.vertices[a.from].labels, &a.label))
        .collect();
    let describe_arc = |(from, to, label): &Key| ArcDescription {
        from: from.iter().map(|k| rs.get(k).clone()).collect(),
        to: to.iter().map(|k| rs.get(k).clone()).collect(),
        label: (*label).clone(),
    };
    let missing: Vec<_> = reversed.difference(&h).map(describe_arc).collect();
    let extra: Vec<_> = h.difference(&reversed).map(describe_arc).collect();
    Ok(OppositeReport {
        coincide: missing.is_empty() && extra.is_empty(),
        hasse_arcs: hasse.arcs.len(),
        exchange_arcs: exchange.arcs.len(),
        missing_in_hasse: missing,
        extra_in_hasse: extra,
    })
}

/// Generators along the lexicographically least chain from the trivial
/// class to `target`; adding them one by one rebuilds its label set.
pub fn decompose_torsion_class(g: &WeylGroup, target: &TorsionClass) -> Result<Vec<RootVector>> {
    let lookup: HashMap<&RootSet, usize> = g
        .elements()
        .iter()
        .enumerate()
        .map(|(k, e)| (e.inversions(), k))
        .collect();
    let goal = *lookup.get(&target.labels).ok_or(Error::InvalidTorsionClass)?;
    let mut cur = g.identity();
    let mut out = Vec::new();
    while cur != goal {
        let c = g
            .covers(cur)
            .iter()
            .find(|c| {
                g.element(c.target)
                    .inversions()
                    .is_subset(&target.labels)
            })
            .ok_or_else(|| Error::Invariant("no cover below the target class".into()))?;
        out.push(g.roots().get(c.root).clone());
        cur = c.target;
    }
    Ok(out)
}

fn describe(set: &RootSet, rs: &RootSystem) -> String {
    let parts: Vec<String> = set.iter().map(|k| format!("({})", rs.get(k))).collect();
    format!("{{{}}}", parts.join(" "))
}
