//! Finite-dimensional representations of the double quiver satisfying the
//! preprojective relations, computed exactly over the rationals or a prime
//! field.

pub mod corpus;
pub mod linalg;

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{DoubleQuiver, Quiver, RootVector};
use crate::roots::{is_indivisible, non_dynkin};
use crate::stability::{is_generic_for, parse_rational, phase_gt, CentralCharge, Rational};

use linalg::{
    all_subspaces, kernel, mat_add, mat_mul, mat_sub, rank, span_basis, subspace_count,
    FieldOps, Mat, Matrix, PrimeField, RationalField,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        PrimeField::new(p).map(|_| Field::Prime(p))
    }

    /// `Q` or `F<p>`, e.g. `F101`.
    pub fn parse(text: &str) -> Result<Field> {
        let t = text.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        t.strip_prefix('F')
            .map(|p| p.trim_start_matches('_'))
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| Error::Syntax {
                line: 0,
                message: format!("unknown field `{t}`"),
            })
            .and_then(Field::prime)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Runs `$body` with `$f` bound to the arithmetic context of `$field`.
macro_rules! with_field {
    ($field:expr, |$f:ident| $body:expr) => {
        match $field {
            Field::Rationals => {
                let $f = RationalField;
                $body
            }
            Field::Prime(p) => {
                let $f = PrimeField::new(p).expect("validated prime");
                $body
            }
        }
    };
}

/// Vector spaces `V_i` with one matrix per double-quiver arrow. Entries
/// are stored as rationals; over `F_p` they are canonical residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    double: DoubleQuiver,
    field: Field,
    dim: RootVector,
    maps: Vec<Matrix>,
}

impl Representation {
    /// All maps zero.
    pub fn zero(q: &Quiver, field: Field, dim: RootVector) -> Result<Self> {
        if dim.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: q.vertex_count(),
                actual: dim.len(),
            });
        }
        if dim.0.iter().any(|&d| d < 0) {
            return Err(Error::Precondition(format!("negative dimension in {dim}")));
        }
        if let Field::Prime(p) = field {
            PrimeField::new(p)?;
        }
        let double = q.double();
        let maps = double
            .arrows
            .iter()
            .map(|b| Matrix::zeros(dim.0[b.head] as usize, dim.0[b.tail] as usize))
            .collect();
        Ok(Representation {
            quiver: q.clone(),
            double,
            field,
            dim,
            maps,
        })
    }

    pub fn simple(q: &Quiver, field: Field, i: usize) -> Self {
        Self::zero(q, field, RootVector::simple(q.vertex_count(), i)).expect("valid simple")
    }

    /// Replaces the matrix of the double-quiver arrow `id` (`a` or `a*`).
    pub fn with_map(mut self, id: &str, m: Matrix) -> Result<Self> {
        let k = self.double.arrow_index(id).ok_or_else(|| Error::Syntax {
            line: 0,
            message: format!("no arrow `{id}` in the double quiver"),
        })?;
        let b = &self.double.arrows[k];
        let expected = (self.dim.0[b.head] as usize, self.dim.0[b.tail] as usize);
        if m.shape() != expected {
            return Err(Error::ShapeMismatch {
                arrow: id.to_string(),
                expected,
                actual: m.shape(),
            });
        }
        self.maps[k] = normalize(self.field, &m)?;
        Ok(self)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn double_quiver(&self) -> &DoubleQuiver {
        &self.double
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> &RootVector {
        &self.dim
    }

    pub fn total_dim(&self) -> usize {
        self.dim.0.iter().map(|&d| d as usize).sum()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, id: &str) -> Option<&Matrix> {
        self.double.arrow_index(id).map(|k| &self.maps[k])
    }

    /// The same matrices read over another field.
    pub fn over(&self, field: Field) -> Result<Self> {
        let mut out = Self::zero(&self.quiver, field, self.dim.clone())?;
        for (k, m) in self.maps.iter().enumerate() {
            out.maps[k] = normalize(field, m)?;
        }
        Ok(out)
    }

    fn vertex_dims(&self) -> Vec<usize> {
        self.dim.0.iter().map(|&d| d as usize).collect()
    }

    fn maps_in<F: FieldOps>(&self, f: &F) -> Vec<Mat<F::Elem>> {
        self.maps
            .iter()
            .map(|m| m.map(|r| f.embed(r)).expect("entries normalised into the field"))
            .collect()
    }

    /// Parses the representation format:
    ///
    /// ```text
    /// field Q            # or F101
    /// quiver A2          # resolved by `resolve`
    /// dim 1 1
    /// map a1 1x1
    /// 1
    /// ```
    ///
    /// Arrows without a `map` block are zero.
    pub fn parse(text: &str, resolve: impl Fn(&str) -> Result<Quiver>) -> Result<Self> {
        let mut field = None;
        let mut quiver = None;
        let mut rep: Option<Representation> = None;
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, message: String| Error::Syntax { line, message };
        while let Some((line, content)) = lines.next() {
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks.as_slice() {
                ["field", f] => field = Some(Field::parse(f).map_err(|e| err(line, e.to_string()))?),
                ["quiver", name] => quiver = Some(resolve(name)?),
                ["dim", coords @ ..] => {
                    let q = quiver
                        .as_ref()
                        .ok_or_else(|| err(line, "`dim` before `quiver`".into()))?;
                    let dim = coords
                        .iter()
                        .map(|c| c.parse::<i64>().map_err(|_| err(line, format!("bad dimension `{c}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    rep = Some(Representation::zero(
                        q,
                        field.unwrap_or(Field::Rationals),
                        RootVector(dim),
                    )?);
                }
                ["map", id, shape] => {
                    let r = rep
                        .take()
                        .ok_or_else(|| err(line, "`map` before `dim`".into()))?;
                    let (rows, cols) = shape
                        .split_once('x')
                        .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                        .ok_or_else(|| err(line, format!("bad shape `{shape}`")))?;
                    let mut m = Matrix::zeros(rows, cols);
                    for row in 0..rows {
                        let (l, content) = lines
                            .next()
                            .ok_or_else(|| err(line, format!("matrix `{id}` is missing rows")))?;
                        let entries: Vec<&str> = content.split_whitespace().collect();
                        if entries.len() != cols {
                            return Err(err(l, format!("expected {cols} entries")));
                        }
                        for (c, e) in entries.iter().enumerate() {
                            let v = parse_rational(e).map_err(|_| err(l, format!("bad entry `{e}`")))?;
                            m.set(row, c, v);
                        }
                    }
                    rep = Some(r.with_map(id, m)?);
                }
                _ => return Err(err(line, format!("unrecognised statement `{content}`"))),
            }
        }
        rep.ok_or_else(|| err(1, "missing `dim` statement".into()))
    }

    /// Serialises in the format read by [`Representation::parse`].
    pub fn to_text(&self, quiver_ref: &str) -> String {
        let mut out = format!("field {}\nquiver {quiver_ref}\ndim {}\n", self.field, self.dim.0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "));
        for (b, m) in self.double.arrows.iter().zip(&self.maps) {
            if m.is_zero_matrix() {
                continue;
            }
            out.push_str(&format!("map {} {}x{}\n", b.id, m.rows, m.cols));
            for r in 0..m.rows {
                let row: Vec<String> = (0..m.cols).map(|c| m.get(r, c).to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }
}

fn normalize(field: Field, m: &Matrix) -> Result<Matrix> {
    with_field!(field, |f| m.map(|r| f.embed(r).map(|e| f.lift(&e))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualEntry {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexResidual {
    /// 1-based.
    pub vertex: usize,
    pub zero: bool,
    pub nonzero_entries: usize,
    pub max_entry: Option<ResidualEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub satisfied: bool,
    pub vertices: Vec<VertexResidual>,
}

/// Evaluates `sum_{h(a)=i} phi_a phi_a* - sum_{t(a)=i} phi_a* phi_a` at
/// every vertex.
pub fn check_relations(m: &Representation) -> RelationReport {
    let residuals = with_field!(m.field, |f| relation_residuals(&f, m));
    let vertices: Vec<VertexResidual> = residuals
        .into_iter()
        .enumerate()
        .map(|(i, r)| VertexResidual {
            vertex: i + 1,
            zero: r.is_zero_matrix(),
            nonzero_entries: r.data.iter().filter(|v| !v.is_zero()).count(),
            max_entry: r.max_entry().map(|(row, col, value)| ResidualEntry {
                row,
                col,
                value: value.to_string(),
            }),
        })
        .collect();
    RelationReport {
        satisfied: vertices.iter().all(|v| v.zero),
        vertices,
    }
}

fn relation_residuals<F: FieldOps>(f: &F, m: &Representation) -> Vec<Matrix> {
    let maps = m.maps_in(f);
    let dims = m.vertex_dims();
    (0..dims.len())
        .map(|i| {
            let mut r = Mat::filled(dims[i], dims[i], f.zero());
            for (k, a) in m.quiver.arrows().iter().enumerate() {
                let (phi, phi_star) = (&maps[2 * k], &maps[2 * k + 1]);
                if a.head == i {
                    r = mat_add(f, &r, &mat_mul(f, phi, phi_star));
                }
                if a.tail == i {
                    r = mat_sub(f, &r, &mat_mul(f, phi_star, phi));
                }
            }
            r.map(|e| Ok(f.lift(e))).expect("lift is infallible")
        })
        .collect()
}

pub fn satisfies_relations(m: &Representation) -> bool {
    check_relations(m).satisfied
}

/// Iterates `W_{k+1} = sum_b phi_b(W_k)` from `W_0 = V`; nilpotent iff it
/// reaches zero within `dim V` steps.
pub fn is_nilpotent(m: &Representation) -> bool {
    with_field!(m.field, |f| nilpotent_in(&f, m))
}

fn nilpotent_in<F: FieldOps>(f: &F, m: &Representation) -> bool {
    let maps = m.maps_in(f);
    let dims = m.vertex_dims();
    let mut layer: Vec<Vec<Vec<F::Elem>>> = dims
        .iter()
        .map(|&d| {
            (0..d)
                .map(|k| {
                    let mut v = vec![f.zero(); d];
                    v[k] = f.one();
                    v
                })
                .collect()
        })
        .collect();
    for _ in 0..=m.total_dim() {
        if layer.iter().all(Vec::is_empty) {
            return true;
        }
        let mut images: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new(); dims.len()];
        for (b, phi) in m.double.arrows.iter().zip(&maps) {
            for v in &layer[b.tail] {
                let col = Mat::from_columns(dims[b.tail], std::slice::from_ref(v), f.zero());
                images[b.head].push(mat_mul(f, phi, &col).column(0));
            }
        }
        layer = images
            .iter()
            .enumerate()
            .map(|(i, vs)| span_basis(f, dims[i], vs))
            .collect();
    }
    layer.iter().all(Vec::is_empty)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace {
    pub dimension: usize,
    /// Each element is one `dim N_i x dim M_i` matrix per vertex.
    pub basis: Vec<Vec<Matrix>>,
}

fn compatible(m: &Representation, n: &Representation) -> Result<()> {
    if m.field != n.field {
        return Err(Error::FieldMismatch);
    }
    if m.quiver != n.quiver {
        return Err(Error::QuiverMismatch);
    }
    Ok(())
}

/// Solves `lambda_{h(b)} phi^M_b = phi^N_b lambda_{t(b)}` for every arrow
/// `b` of the double quiver.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    compatible(m, n)?;
    Ok(with_field!(m.field, |f| hom_in(&f, m, n)))
}

fn hom_in<F: FieldOps>(f: &F, m: &Representation, n: &Representation) -> HomSpace {
    let (mm, nm) = (m.maps_in(f), n.maps_in(f));
    let (dm, dn) = (m.vertex_dims(), n.vertex_dims());
    let mut offset = vec![0usize; dm.len() + 1];
    for i in 0..dm.len() {
        offset[i + 1] = offset[i] + dn[i] * dm[i];
    }
    let unknowns = offset[dm.len()];
    // lambda_i[r, c] lives at offset[i] + r * dm[i] + c
    let var = |i: usize, r: usize, c: usize| offset[i] + r * dm[i] + c;

    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (k, b) in m.double.arrows.iter().enumerate() {
        let (t, h) = (b.tail, b.head);
        for r in 0..dn[h] {
            for c in 0..dm[t] {
                let mut eq = vec![f.zero(); unknowns];
                for j in 0..dm[h] {
                    let coef = mm[k].get(j, c);
                    if !f.is_zero(coef) {
                        let v = var(h, r, j);
                        eq[v] = f.add(&eq[v], coef);
                    }
                }
                for j in 0..dn[t] {
                    let coef = nm[k].get(r, j);
                    if !f.is_zero(coef) {
                        let v = var(t, j, c);
                        eq[v] = f.sub(&eq[v], coef);
                    }
                }
                rows.push(eq);
            }
        }
    }
    let system = Mat::from_rows(rows, unknowns);
    let basis: Vec<Vec<Matrix>> = kernel(f, &system)
        .into_iter()
        .map(|v| {
            (0..dm.len())
                .map(|i| {
                    let mut lam = Matrix::zeros(dn[i], dm[i]);
                    for r in 0..dn[i] {
                        for c in 0..dm[i] {
                            lam.set(r, c, f.lift(&v[var(i, r, c)]));
                        }
                    }
                    lam
                })
                .collect()
        })
        .collect();
    HomSpace {
        dimension: basis.len(),
        basis,
    }
}

pub fn is_brick(m: &Representation) -> bool {
    hom_space(m, m).map(|h| h.dimension == 1).unwrap_or(false)
}

/// `dim Ext^1(M, N) = dim Hom(M, N) + dim Hom(N, M) - (dim M, dim N)`.
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<i64> {
    compatible(m, n)?;
    if !satisfies_relations(m) || !satisfies_relations(n) {
        return Err(Error::RelationsViolated);
    }
    let mn = hom_space(m, n)?.dimension as i64;
    let nm = hom_space(n, m)?.dimension as i64;
    let pairing = m.quiver.cartan_form(&m.dim, &n.dim)?;
    let ext = mn + nm - pairing;
    if ext < 0 {
        return Err(Error::NegativeExt(ext));
    }
    Ok(ext)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrickRootReport {
    pub ext1_self: i64,
    pub self_pairing: i64,
    pub passed: bool,
}

/// For a brick over a Dynkin quiver: no self-extensions and the dimension
/// vector is a root.
pub fn check_brick_root(m: &Representation) -> Result<BrickRootReport> {
    if !m.quiver.is_dynkin() {
        return Err(non_dynkin(&m.quiver));
    }
    if !is_brick(m) {
        return Err(Error::NotBrick);
    }
    let ext1_self = ext1_dim(m, m)?;
    let self_pairing = m.quiver.cartan_form(&m.dim, &m.dim)?;
    Ok(BrickRootReport {
        ext1_self,
        self_pairing,
        passed: ext1_self == 0 && self_pairing == 2,
    })
}

/// Limits for exhaustive submodule enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubmoduleBound {
    pub max_total_dim: usize,
    pub max_vertex_dim: usize,
    /// Cap on the number of graded subspaces tested.
    pub max_candidates: u128,
}

impl Default for SubmoduleBound {
    fn default() -> Self {
        SubmoduleBound {
            max_total_dim: 8,
            max_vertex_dim: 3,
            max_candidates: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    pub dim: RootVector,
    /// Per vertex, a `dim V_i x dim U_i` matrix whose columns span `U_i`.
    pub basis: Vec<Matrix>,
}

/// All graded subspaces invariant under every arrow, including `0` and `M`,
/// sorted by dimension vector.
pub fn graded_submodules(m: &Representation, bound: &SubmoduleBound) -> Result<Vec<Submodule>> {
    let dims = m.vertex_dims();
    if m.total_dim() > bound.max_total_dim {
        return Err(Error::EnumerationBound(format!(
            "total dimension {} exceeds {}",
            m.total_dim(),
            bound.max_total_dim
        )));
    }
    if let Some(&d) = dims.iter().find(|&&d| d > bound.max_vertex_dim) {
        return Err(Error::EnumerationBound(format!(
            "vertex dimension {d} exceeds {}",
            bound.max_vertex_dim
        )));
    }
    let mut subs = match m.field {
        Field::Rationals => {
            if dims.iter().any(|&d| d > 1) {
                return Err(Error::EnumerationBound(
                    "over Q only 0/1 dimension vectors are enumerated".into(),
                ));
            }
            let f = RationalField;
            let candidates: Vec<Vec<Vec<Vec<Rational>>>> = dims
                .iter()
                .map(|&d| {
                    if d == 0 {
                        vec![vec![]]
                    } else {
                        vec![vec![], vec![vec![f.one()]]]
                    }
                })
                .collect();
            invariant_subspaces(&f, m, candidates)
        }
        Field::Prime(p) => {
            let f = PrimeField::new(p)?;
            let total: u128 = dims
                .iter()
                .map(|&d| subspace_count(p, d))
                .fold(1u128, |a, b| a.saturating_mul(b));
            if total > bound.max_candidates {
                return Err(Error::EnumerationBound(format!(
                    "{total} graded subspaces exceed {}",
                    bound.max_candidates
                )));
            }
            let candidates = dims.iter().map(|&d| all_subspaces(&f, d)).collect();
            invariant_subspaces(&f, m, candidates)
        }
    };
    subs.sort_by(|a, b| a.dim.canonical_cmp(&b.dim));
    Ok(subs)
}

fn invariant_subspaces<F: FieldOps>(
    f: &F,
    m: &Representation,
    candidates: Vec<Vec<Vec<Vec<F::Elem>>>>,
) -> Vec<Submodule> {
    let maps = m.maps_in(f);
    let dims = m.vertex_dims();
    let n = dims.len();
    let mut choice = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let pick: Vec<&Vec<Vec<F::Elem>>> = (0..n).map(|i| &candidates[i][choice[i]]).collect();
        let invariant = m.double.arrows.iter().zip(&maps).all(|(b, phi)| {
            let target = pick[b.head];
            if pick[b.tail].is_empty() {
                return true;
            }
            let mut rows: Vec<Vec<F::Elem>> = target.clone();
            for u in pick[b.tail] {
                let col = Mat::from_columns(dims[b.tail], std::slice::from_ref(u), f.zero());
                rows.push(mat_mul(f, phi, &col).column(0));
            }
            if dims[b.head] == 0 {
                return true;
            }
            rank(f, &Mat::from_rows(rows, dims[b.head])) == target.len()
        });
        if invariant {
            out.push(Submodule {
                dim: RootVector(pick.iter().map(|s| s.len() as i64).collect()),
                basis: (0..n)
                    .map(|i| {
                        let cols: Vec<Vec<Rational>> = pick[i]
                            .iter()
                            .map(|v| v.iter().map(|e| f.lift(e)).collect())
                            .collect();
                        Mat::from_columns(dims[i], &cols, Rational::zero())
                    })
                    .collect(),
            });
        }
        let mut k = 0;
        while k < n {
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
    }
}

pub fn is_stable(m: &Representation, z: &CentralCharge) -> Result<bool> {
    stability(m, z, true, &SubmoduleBound::default())
}

pub fn is_semistable(m: &Representation, z: &CentralCharge) -> Result<bool> {
    stability(m, z, false, &SubmoduleBound::default())
}

/// Every proper nonzero submodule has strictly smaller (or, semistable,
/// not larger) phase than `M`.
pub fn stability(m: &Representation, z: &CentralCharge, strict: bool, bound: &SubmoduleBound) -> Result<bool> {
    if m.dim.is_zero() {
        return Err(Error::Precondition("the zero module has no phase".into()));
    }
    let zm = z.charge_of(&m.dim)?;
    for sub in graded_submodules(m, bound)? {
        if sub.dim.is_zero() || sub.dim == m.dim {
            continue;
        }
        let za = z.charge_of(&sub.dim)?;
        let ok = if strict {
            phase_gt(&zm, &za)?
        } else {
            !phase_gt(&za, &zm)?
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For semistable `E`, `F` with `phi(E) > phi(F)`, asserts `Hom(E, F) = 0`.
/// A failed precondition is an error, a failed assertion is `Ok(false)`.
pub fn check_hom_vanishing(e: &Representation, f: &Representation, z: &CentralCharge) -> Result<bool> {
    compatible(e, f)?;
    if !is_semistable(e, z)? {
        return Err(Error::Precondition("E is not semistable".into()));
    }
    if !is_semistable(f, z)? {
        return Err(Error::Precondition("F is not semistable".into()));
    }
    if !phase_gt(&z.charge_of(&e.dim)?, &z.charge_of(&f.dim)?)? {
        return Err(Error::Precondition("phase of E does not exceed phase of F".into()));
    }
    Ok(hom_space(e, f)?.dimension == 0)
}

/// Where to look for a stable module of a given class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessSearch {
    /// Field for the parameter family when the class has a coordinate > 1.
    pub prime: u64,
    /// Largest family size `2^entries` tried.
    pub budget: u64,
}

impl Default for WitnessSearch {
    fn default() -> Self {
        WitnessSearch {
            prime: 3,
            budget: 1 << 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSource {
    Corpus(String),
    /// All matrix entries in `{0, 1}`; the index is the entry bitmask.
    Family(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Found {
        module: Box<Representation>,
        source: WitnessSource,
    },
    /// Nothing found. Not a counterexample: the search space is finite.
    Inconclusive { corpus_tried: usize, family_tried: u64 },
}

/// Looks for a nilpotent module of class `alpha` satisfying the relations
/// and stable under `z`: first in the shipped corpus, then in the family of
/// representations with `{0, 1}` entries.
pub fn stable_witness(
    q: &Quiver,
    alpha: &RootVector,
    z: &CentralCharge,
    search: &WitnessSearch,
) -> Result<Witness> {
    if !alpha.is_positive() || !is_indivisible(alpha)? {
        return Err(Error::Precondition(format!("{alpha} is not a positive indivisible class")));
    }
    if !is_generic_for(z, alpha)? {
        return Err(Error::Precondition(format!("charge is not generic for {alpha}")));
    }
    let accept = |m: &Representation| -> bool {
        satisfies_relations(m) && is_nilpotent(m) && is_stable(m, z).unwrap_or(false)
    };

    let mut corpus_tried = 0;
    for entry in corpus::load()? {
        if entry.module.quiver() != q || entry.module.dim() != alpha {
            continue;
        }
        corpus_tried += 1;
        if accept(&entry.module) {
            return Ok(Witness::Found {
                module: Box::new(entry.module),
                source: WitnessSource::Corpus(entry.name),
            });
        }
    }

    let field = if alpha.0.iter().all(|&c| c <= 1) {
        Field::Rationals
    } else {
        Field::prime(search.prime)?
    };
    let base = Representation::zero(q, field, alpha.clone())?;
    let slots: Vec<(usize, usize, usize)> = base
        .maps
        .iter()
        .enumerate()
        .flat_map(|(k, m)| (0..m.rows).flat_map(move |r| (0..m.cols).map(move |c| (k, r, c))))
        .collect();
    let mut family_tried = 0;
    if slots.len() < 64 && (1u64 << slots.len()) <= search.budget {
        let one = Rational::from_integer(1.into());
        for mask in 0..(1u64 << slots.len()) {
            family_tried += 1;
            let mut m = base.clone();
            for (bit, &(k, r, c)) in slots.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    m.maps[k].set(r, c, one.clone());
                }
            }
            if accept(&m) {
                return Ok(Witness::Found {
                    module: Box::new(m),
                    source: WitnessSource::Family(mask),
                });
            }
        }
    }
    Ok(Witness::Inconclusive {
        corpus_tried,
        family_tried,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::Charge;

    fn a2() -> Quiver {
        Quiver::builtin("A2").unwrap()
    }

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    fn rep(q: &Quiver, dim: &[i64], maps: &[(&str, i64)]) -> Representation {
        let mut m = Representation::zero(q, Field::Rationals, rv(dim)).unwrap();
        for &(id, v) in maps {
            m = m.with_map(id, Matrix::from_ints(1, 1, &[v])).unwrap();
        }
        m
    }

    fn cc(pairs: &[(i64, i64)]) -> CentralCharge {
        CentralCharge::new(pairs.iter().map(|&(x, y)| Charge::from_ints(x, y)).collect()).unwrap()
    }

    fn brick() -> Representation {
        rep(&a2(), &[1, 1], &[("a1", 1)])
    }

    #[test]
    fn relations() {
        let q = a2();
        assert!(check_relations(&Representation::simple(&q, Field::Rationals, 0)).satisfied);
        assert!(check_relations(&brick()).satisfied);
        let bad = rep(&q, &[1, 1], &[("a1", 1), ("a1*", 1)]);
        let report = check_relations(&bad);
        assert!(!report.satisfied);
        let values: Vec<String> = report
            .vertices
            .iter()
            .map(|v| v.max_entry.as_ref().unwrap().value.clone())
            .collect();
        assert_eq!(values, vec!["-1", "1"]);
    }

    #[test]
    fn nilpotency() {
        let q = a2();
        assert!(is_nilpotent(&rep(&q, &[1, 1], &[])));
        assert!(is_nilpotent(&brick()));
        // affine A1: two vertices, arrows both ways, invertible cycle
        let cyc = Quiver::parse("vertices 2; arrow a 1 2; arrow b 2 1").unwrap();
        let m = rep(&cyc, &[1, 1], &[("a", 1), ("b", 1)]);
        assert!(!is_nilpotent(&m));
    }

    #[test]
    fn homs() {
        let q = a2();
        let s1 = Representation::simple(&q, Field::Rationals, 0);
        let s2 = Representation::simple(&q, Field::Rationals, 1);
        assert_eq!(hom_space(&s1, &s1).unwrap().dimension, 1);
        assert_eq!(hom_space(&s1, &s2).unwrap().dimension, 0);
        let h = hom_space(&brick(), &brick()).unwrap();
        assert_eq!(h.dimension, 1);
        // the endomorphism is a scalar: lambda_1 = lambda_2
        assert_eq!(h.basis[0][0], h.basis[0][1]);
        let other = Representation::simple(&q, Field::Prime(5), 0);
        assert!(matches!(hom_space(&s1, &other), Err(Error::FieldMismatch)));
    }

    #[test]
    fn bricks_and_ext() {
        let q = a2();
        let s1 = Representation::simple(&q, Field::Rationals, 0);
        let s2 = Representation::simple(&q, Field::Rationals, 1);
        assert!(is_brick(&s1));
        let double = rep(&q, &[2, 0], &[]);
        assert_eq!(hom_space(&double, &double).unwrap().dimension, 4);
        assert!(!is_brick(&double));
        assert!(is_brick(&brick()));

        assert_eq!(ext1_dim(&s1, &s1).unwrap(), 0);
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&s2, &s1).unwrap(), 1);
        assert_eq!(ext1_dim(&brick(), &brick()).unwrap(), 0);
        let bad = rep(&q, &[1, 1], &[("a1", 1), ("a1*", 1)]);
        assert!(matches!(ext1_dim(&bad, &s1), Err(Error::RelationsViolated)));
    }

    #[test]
    fn brick_root_reports() {
        let q = a2();
        let r = check_brick_root(&Representation::simple(&q, Field::Rationals, 0)).unwrap();
        assert!(r.passed);
        let r = check_brick_root(&brick()).unwrap();
        assert_eq!((r.ext1_self, r.self_pairing), (0, 2));
        assert!(matches!(check_brick_root(&rep(&q, &[2, 0], &[])), Err(Error::NotBrick)));
    }

    #[test]
    fn submodules() {
        let q = a2();
        let bound = SubmoduleBound::default();
        let subs = graded_submodules(&brick(), &bound).unwrap();
        let dims: Vec<RootVector> = subs.iter().map(|s| s.dim.clone()).collect();
        assert_eq!(dims, vec![rv(&[0, 0]), rv(&[0, 1]), rv(&[1, 1])]);

        let s1 = Representation::simple(&q, Field::Rationals, 0);
        assert_eq!(graded_submodules(&s1, &bound).unwrap().len(), 2);
        assert_eq!(graded_submodules(&rep(&q, &[1, 1], &[]), &bound).unwrap().len(), 4);

        // over F_2, (2,0) has the 5 subspaces of F_2^2
        let m = Representation::zero(&q, Field::Prime(2), rv(&[2, 0])).unwrap();
        assert_eq!(graded_submodules(&m, &bound).unwrap().len(), 5);
        assert!(matches!(
            graded_submodules(&rep(&q, &[2, 0], &[]), &bound),
            Err(Error::EnumerationBound(_))
        ));
        let big = Representation::zero(&q, Field::Prime(2), rv(&[4, 0])).unwrap();
        assert!(matches!(graded_submodules(&big, &bound), Err(Error::EnumerationBound(_))));
    }

    #[test]
    fn stability_examples() {
        let z = cc(&[(-1, 1), (1, 1)]);
        let swapped = cc(&[(1, 1), (-1, 1)]);
        assert!(is_stable(&brick(), &z).unwrap());
        assert!(!is_stable(&brick(), &swapped).unwrap());
        for i in 0..2 {
            let s = Representation::simple(&a2(), Field::Rationals, i);
            assert!(is_stable(&s, &z).unwrap() && is_stable(&s, &swapped).unwrap());
        }
        let flat = cc(&[(0, 1), (0, 1)]);
        assert!(!is_stable(&brick(), &flat).unwrap());
        assert!(is_semistable(&brick(), &flat).unwrap());
    }

    #[test]
    fn hom_vanishing() {
        let q = a2();
        let z = cc(&[(-1, 1), (1, 1)]);
        let s1 = Representation::simple(&q, Field::Rationals, 0);
        let s2 = Representation::simple(&q, Field::Rationals, 1);
        assert!(check_hom_vanishing(&brick(), &s2, &z).unwrap());
        assert!(check_hom_vanishing(&s1, &s2, &z).unwrap());
        assert!(matches!(check_hom_vanishing(&brick(), &brick(), &z), Err(Error::Precondition(_))));
    }

    #[test]
    fn witnesses() {
        let q = a2();
        let z = cc(&[(-1, 1), (1, 1)]);
        match stable_witness(&q, &rv(&[1, 1]), &z, &WitnessSearch::default()).unwrap() {
            Witness::Found { module, .. } => {
                assert_eq!(module.map("a1").unwrap(), &Matrix::from_ints(1, 1, &[1]));
                assert!(module.map("a1*").unwrap().is_zero_matrix());
            }
            other => panic!("{other:?}"),
        }
        match stable_witness(&q, &rv(&[1, 0]), &z, &WitnessSearch::default()).unwrap() {
            Witness::Found { module, .. } => assert_eq!(*module, Representation::simple(&q, Field::Rationals, 0)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            stable_witness(&q, &rv(&[2, 2]), &z, &WitnessSearch::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn text_format() {
        let text = "field Q\nquiver A2\ndim 1 1\nmap a1 1x1\n1\n";
        let m = Representation::parse(text, |n| Quiver::builtin(n).ok_or(Error::UnknownQuiver(n.into()))).unwrap();
        assert_eq!(m, brick());
        assert_eq!(m.to_text("A2"), text);
        let bad_shape = "field Q\nquiver A2\ndim 1 1\nmap a1 2x1\n1\n1\n";
        assert!(matches!(
            Representation::parse(bad_shape, |n| Quiver::builtin(n).ok_or(Error::UnknownQuiver(n.into()))),
            Err(Error::ShapeMismatch { .. })
        ));
        let f7 = "field F7\nquiver A2\ndim 1 1\nmap a1 1x1\n-1/2\n";
        let m = Representation::parse(f7, |n| Quiver::builtin(n).ok_or(Error::UnknownQuiver(n.into()))).unwrap();
        // -1/2 = -4 = 3 mod 7
        assert_eq!(m.map("a1").unwrap(), &Matrix::from_ints(1, 1, &[3]));
    }
}
