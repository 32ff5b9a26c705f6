//! Small catalogue of representations over A2 and A3 with their expected
//! invariants.

use serde::{Deserialize, Serialize};

use super::Representation;
use crate::error::{Error, Result};
use crate::quiver::Quiver;

const MANIFEST: &str = include_str!("../../corpus/manifest.json");

const FILES: &[(&str, &str)] = &[
    ("a2/s1.rep", include_str!("../../corpus/a2/s1.rep")),
    ("a2/s2.rep", include_str!("../../corpus/a2/s2.rep")),
    ("a2/p12.rep", include_str!("../../corpus/a2/p12.rep")),
    ("a2/i12.rep", include_str!("../../corpus/a2/i12.rep")),
    ("a2/s1s1.rep", include_str!("../../corpus/a2/s1s1.rep")),
    ("a2/s1s2.rep", include_str!("../../corpus/a2/s1s2.rep")),
    ("a3/s1.rep", include_str!("../../corpus/a3/s1.rep")),
    ("a3/s2.rep", include_str!("../../corpus/a3/s2.rep")),
    ("a3/s3.rep", include_str!("../../corpus/a3/s3.rep")),
    ("a3/p12.rep", include_str!("../../corpus/a3/p12.rep")),
    ("a3/i12.rep", include_str!("../../corpus/a3/i12.rep")),
    ("a3/p23.rep", include_str!("../../corpus/a3/p23.rep")),
    ("a3/i23.rep", include_str!("../../corpus/a3/i23.rep")),
    ("a3/p123.rep", include_str!("../../corpus/a3/p123.rep")),
    ("a3/i123.rep", include_str!("../../corpus/a3/i123.rep")),
    ("a3/sink2.rep", include_str!("../../corpus/a3/sink2.rep")),
    ("a3/source2.rep", include_str!("../../corpus/a3/source2.rep")),
    ("a3/s1p23.rep", include_str!("../../corpus/a3/s1p23.rep")),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
    pub dim: Vec<i64>,
    pub brick: bool,
    pub end_dim: usize,
    pub ext1_self: i64,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub module: Representation,
    pub expected: ManifestEntry,
}

fn builtin(name: &str) -> Result<Quiver> {
    Quiver::builtin(name).ok_or_else(|| Error::UnknownQuiver(name.to_string()))
}

pub fn manifest() -> Result<Vec<ManifestEntry>> {
    serde_json::from_str(MANIFEST).map_err(|e| Error::Syntax {
        line: e.line(),
        message: format!("corpus manifest: {e}"),
    })
}

pub fn load() -> Result<Vec<CorpusEntry>> {
    manifest()?
        .into_iter()
        .map(|expected| {
            let text = FILES
                .iter()
                .find(|(f, _)| *f == expected.file)
                .map(|(_, t)| *t)
                .ok_or_else(|| Error::Invariant(format!("corpus file {} missing", expected.file)))?;
            Ok(CorpusEntry {
                name: expected.name.clone(),
                module: Representation::parse(text, builtin)?,
                expected,
            })
        })
        .collect()
}

/// The text of a corpus file, by manifest path such as `a2/p12.rep`.
pub fn source(file: &str) -> Option<&'static str> {
    FILES.iter().find(|(f, _)| *f == file).map(|(_, t)| *t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modlab::{ext1_dim, hom_space, is_brick, satisfies_relations};

    #[test]
    fn manifest_matches_solver() {
        let entries = load().unwrap();
        assert_eq!(entries.len(), FILES.len());
        for e in entries {
            let m = &e.module;
            assert_eq!(m.dim().0, e.expected.dim, "{}", e.name);
            assert!(satisfies_relations(m), "{}", e.name);
            assert_eq!(is_brick(m), e.expected.brick, "{}", e.name);
            assert_eq!(hom_space(m, m).unwrap().dimension, e.expected.end_dim, "{}", e.name);
            assert_eq!(ext1_dim(m, m).unwrap(), e.expected.ext1_self, "{}", e.name);
        }
    }
}
