//! Loop-free quivers, their doubles, the symmetric root-lattice form and
//! Dynkin recognition.
//!
//! Vertices are 0-based in the API and 1-based in files and on the CLI.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer vector on the vertex set: a class in the root lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(n: usize) -> Self {
        RootVector(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Sum of coordinates.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Nonzero with all coordinates non-negative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    /// Ordering used for every root listing: height first, then lexicographic.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Parses `1,0,1`.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(',')
            .map(|t| {
                t.trim().parse::<i64>().map_err(|_| Error::Syntax {
                    line: 0,
                    message: format!("bad coordinate `{}`", t.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(RootVector)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite loop-free quiver. The Gram matrix of the symmetric form is
/// cached at construction.
#[derive(Debug, Clone)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    name: Option<String>,
    gram: Vec<i64>,
}

/// Equality ignores the display name.
impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Syntax {
                line: 0,
                message: "quiver needs at least one vertex".into(),
            });
        }
        let mut ids = HashSet::new();
        for a in &arrows {
            for v in [a.tail, a.head] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v + 1,
                        vertex_count,
                    });
                }
            }
            if a.tail == a.head {
                return Err(Error::Loop {
                    line: 0,
                    arrow: a.id.clone(),
                    vertex: a.tail + 1,
                });
            }
            if !ids.insert(a.id.clone()) {
                return Err(Error::DuplicateArrow(a.id.clone()));
            }
        }
        let mut q = Quiver {
            vertex_count,
            arrows,
            name: None,
            gram: Vec::new(),
        };
        q.gram = q.compute_gram();
        Ok(q)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Parses the line-oriented quiver format:
    ///
    /// ```text
    /// vertices 3
    /// arrow a 1 2   # comment
    /// arrow b 2 3
    /// ```
    ///
    /// A `;` also separates statements, so `vertices 2; arrow a 1 2` is a
    /// valid one-liner.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertex_count: Option<usize> = None;
        let mut arrows = Vec::new();
        let mut ids = HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            for stmt in content.split(';') {
                let toks: Vec<&str> = stmt.split_whitespace().collect();
                match toks.as_slice() {
                    [] => {}
                    ["vertices", n] => {
                        if vertex_count.is_some() {
                            return Err(syntax(line, "`vertices` given twice"));
                        }
                        let n: usize = n
                            .parse()
                            .map_err(|_| syntax(line, &format!("bad vertex count `{n}`")))?;
                        if n == 0 {
                            return Err(syntax(line, "vertex count must be positive"));
                        }
                        vertex_count = Some(n);
                    }
                    ["arrow", id, tail, head] => {
                        let n = vertex_count
                            .ok_or_else(|| syntax(line, "`arrow` before `vertices`"))?;
                        let tail = parse_vertex(line, tail, n)?;
                        let head = parse_vertex(line, head, n)?;
                        if tail == head {
                            return Err(Error::Loop {
                                line,
                                arrow: id.to_string(),
                                vertex: tail + 1,
                            });
                        }
                        if !ids.insert(id.to_string()) {
                            return Err(Error::DuplicateArrow(id.to_string()));
                        }
                        arrows.push(Arrow {
                            id: id.to_string(),
                            tail,
                            head,
                        });
                    }
                    _ => return Err(syntax(line, &format!("unrecognised statement `{}`", stmt.trim()))),
                }
            }
        }
        let n = vertex_count.ok_or_else(|| syntax(1, "missing `vertices` statement"))?;
        Quiver::new(n, arrows)
    }

    /// Built-in Dynkin quivers `A1..A8`, `D4..D8`, `E6..E8`.
    ///
    /// `A_n` is the path `1 -> 2 -> ... -> n`. `D_n` is the path on
    /// `1..n-1` plus `n-2 -> n`. `E_n` is the path on `1..n-1` plus
    /// `3 -> n`. Arrows are named `a1, a2, ...` in that order.
    pub fn builtin(name: &str) -> Option<Quiver> {
        let upper = name.trim().to_ascii_uppercase();
        let (family, rank) = upper.split_at(1.min(upper.len()));
        let rank: usize = rank.parse().ok()?;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match family {
            "A" if (1..=8).contains(&rank) => {
                edges.extend((0..rank - 1).map(|i| (i, i + 1)));
            }
            "D" if (4..=8).contains(&rank) => {
                edges.extend((0..rank - 2).map(|i| (i, i + 1)));
                edges.push((rank - 3, rank - 1));
            }
            "E" if (6..=8).contains(&rank) => {
                edges.extend((0..rank - 2).map(|i| (i, i + 1)));
                edges.push((2, rank - 1));
            }
            _ => return None,
        }
        let arrows = edges
            .into_iter()
            .enumerate()
            .map(|(k, (tail, head))| Arrow {
                id: format!("a{}", k + 1),
                tail,
                head,
            })
            .collect();
        Some(
            Quiver::new(rank, arrows)
                .expect("built-in quivers are valid")
                .with_name(upper),
        )
    }

    pub fn double(&self) -> DoubleQuiver {
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .flat_map(|(k, a)| {
                [
                    DoubleArrow {
                        id: a.id.clone(),
                        base: k,
                        tail: a.tail,
                        head: a.head,
                        is_star: false,
                    },
                    DoubleArrow {
                        id: format!("{}*", a.id),
                        base: k,
                        tail: a.head,
                        head: a.tail,
                        is_star: true,
                    },
                ]
            })
            .collect();
        DoubleQuiver {
            base: self.clone(),
            arrows,
        }
    }

    fn check_len(&self, v: &RootVector) -> Result<()> {
        if v.len() != self.vertex_count {
            return Err(Error::DimensionMismatch {
                expected: self.vertex_count,
                actual: v.len(),
            });
        }
        Ok(())
    }

    fn compute_gram(&self) -> Vec<i64> {
        let n = self.vertex_count;
        let mut g = vec![0i64; n * n];
        for i in 0..n {
            g[i * n + i] = 2;
        }
        // a: i -> j and a*: j -> i each contribute -1 at (tail, head)
        for a in &self.arrows {
            g[a.tail * n + a.head] -= 1;
            g[a.head * n + a.tail] -= 1;
        }
        g
    }

    /// Gram matrix entry `(e_i, e_j)`.
    #[inline]
    pub fn gram(&self, i: usize, j: usize) -> i64 {
        self.gram[i * self.vertex_count + j]
    }

    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count;
        (0..n)
            .map(|i| (0..n).map(|j| self.gram(i, j)).collect())
            .collect()
    }

    /// `(x, y) = 2 sum x_i y_i - sum over arrows i -> j of the double quiver of x_i y_j`.
    pub fn cartan_form(&self, x: &RootVector, y: &RootVector) -> Result<i64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let diag: i64 = x.0.iter().zip(&y.0).map(|(a, b)| 2 * a * b).sum();
        let off: i64 = self
            .double()
            .arrows
            .iter()
            .map(|b| x.0[b.tail] * y.0[b.head])
            .sum();
        Ok(diag - off)
    }

    /// The Euler form on the Grothendieck group, identified with the
    /// symmetric root-lattice form.
    pub fn euler_form(&self, x: &RootVector, y: &RootVector) -> Result<i64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let n = self.vertex_count;
        let mut s = 0;
        for i in 0..n {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x.0[i] * self.gram(i, j) * y.0[j];
            }
        }
        Ok(s)
    }

    /// The antisymmetric off-diagonal convention `#(i -> j) - #(j -> i)`,
    /// kept only for display next to the symmetric form.
    pub fn antisymmetric_euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count;
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for a in &self.arrows {
            m[a.tail][a.head] += 1;
            m[a.head][a.tail] -= 1;
        }
        m
    }

    /// Leading principal minors of the Gram matrix, exact.
    pub fn leading_minors(&self) -> Vec<i128> {
        let n = self.vertex_count;
        (1..=n)
            .map(|k| {
                let m: Vec<Vec<i128>> = (0..k)
                    .map(|i| (0..k).map(|j| self.gram(i, j) as i128).collect())
                    .collect();
                bareiss_det(m)
            })
            .collect()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.leading_minors().iter().all(|&d| d > 0)
    }

    pub fn classify(&self) -> QuiverClass {
        if !self.is_positive_definite() {
            return QuiverClass::NonDynkin;
        }
        let mut components = Vec::new();
        for comp in self.components() {
            match recognize_component(self, &comp) {
                Some(c) => components.push(c),
                None => return QuiverClass::NonDynkin,
            }
        }
        components.sort();
        QuiverClass::Dynkin(DynkinType(components))
    }

    pub fn is_dynkin(&self) -> bool {
        matches!(self.classify(), QuiverClass::Dynkin(_))
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for a in &self.arrows {
            adj[a.tail].push(a.head);
            adj[a.head].push(a.tail);
        }
        adj
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

fn syntax(line: usize, message: &str) -> Error {
    Error::Syntax {
        line,
        message: message.to_string(),
    }
}

fn parse_vertex(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| syntax(line, &format!("bad vertex `{tok}`")))?;
    if v == 0 || v > n {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            vertex_count: n,
        });
    }
    Ok(v - 1)
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn recognize_component(q: &Quiver, comp: &[usize]) -> Option<DynkinComponent> {
    let rank = comp.len();
    if rank == 1 {
        return Some(DynkinComponent {
            family: Family::A,
            rank: 1,
        });
    }
    let members: HashSet<usize> = comp.iter().copied().collect();
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut edges = 0;
    for a in q.arrows() {
        if members.contains(&a.tail) {
            adj.entry(a.tail).or_default().push(a.head);
            adj.entry(a.head).or_default().push(a.tail);
            edges += 1;
        }
    }
    // a tree with simple edges
    if edges != rank - 1 {
        return None;
    }
    for nb in adj.values() {
        let distinct: HashSet<_> = nb.iter().collect();
        if distinct.len() != nb.len() {
            return None;
        }
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(DynkinComponent {
            family: Family::A,
            rank,
        }),
        [c] if adj[c].len() == 3 => {
            let mut arms: Vec<usize> = adj[c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    loop {
                        let next: Vec<usize> =
                            adj[&cur].iter().copied().filter(|&w| w != prev).collect();
                        match next.as_slice() {
                            [] => break len,
                            [w] => {
                                prev = cur;
                                cur = *w;
                                len += 1;
                            }
                            _ => break usize::MAX,
                        }
                    }
                })
                .collect();
            if arms.contains(&usize::MAX) {
                return None;
            }
            arms.sort_unstable();
            let family = match arms.as_slice() {
                [1, 1, _] => Family::D,
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Family::E,
                _ => return None,
            };
            Some(DynkinComponent { family, rank })
        }
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DynkinComponent {
    pub family: Family,
    pub rank: usize,
}

impl DynkinComponent {
    /// Order of the Weyl group of this component.
    pub fn weyl_order(&self) -> BigUint {
        let factorial = |n: usize| (1..=n).map(BigUint::from).product::<BigUint>();
        match (self.family, self.rank) {
            (Family::A, n) => factorial(n + 1),
            (Family::D, n) => (BigUint::from(1u32) << (n - 1)) * factorial(n),
            (Family::E, 6) => BigUint::from(51_840u32),
            (Family::E, 7) => BigUint::from(2_903_040u32),
            (Family::E, _) => BigUint::from(696_729_600u32),
        }
    }
}

impl fmt::Display for DynkinComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Connected components of a Dynkin quiver, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DynkinType(pub Vec<DynkinComponent>);

impl DynkinType {
    pub fn is_connected(&self) -> bool {
        self.0.len() == 1
    }

    pub fn weyl_order(&self) -> BigUint {
        self.0.iter().map(DynkinComponent::weyl_order).product()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverClass {
    Dynkin(DynkinType),
    NonDynkin,
}

impl fmt::Display for QuiverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverClass::Dynkin(t) => write!(f, "Dynkin({t})"),
            QuiverClass::NonDynkin => write!(f, "NonDynkin"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleArrow {
    pub id: String,
    /// Index of the base arrow this one comes from.
    pub base: usize,
    pub tail: usize,
    pub head: usize,
    pub is_star: bool,
}

/// Arrows are interleaved: index `2k` is base arrow `k`, `2k + 1` its star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleQuiver {
    pub base: Quiver,
    pub arrows: Vec<DoubleArrow>,
}

impl DoubleQuiver {
    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }
}
