//! Exact linear algebra over the rationals and prime fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::stability::Rational;

/// Arithmetic context for a field. Prime-field elements need the modulus,
/// so operations go through the context rather than through operator traits.
pub trait FieldOps {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn embed(&self, r: &Rational) -> Result<Self::Elem>;
    fn lift(&self, a: &Self::Elem) -> Rational;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

impl FieldOps for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn embed(&self, r: &Rational) -> Result<Rational> {
        Ok(r.clone())
    }
    fn lift(&self, a: &Rational) -> Rational {
        a.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }
}

impl FieldOps for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        // Fermat
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn embed(&self, r: &Rational) -> Result<u64> {
        let den = self.reduce_big(r.denom());
        if den == 0 {
            return Err(Error::EntryNotInField(r.to_string()));
        }
        let num = self.reduce_big(r.numer());
        Ok(self.mul(&num, &self.inv(&den)))
    }
    fn lift(&self, a: &u64) -> Rational {
        Rational::from_integer(BigInt::from(*a))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

pub type Matrix = Mat<Rational>;

impl<E: Clone> Mat<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Mat {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<E> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols, "ragged rows");
        Mat { rows: r, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<E>], fill: E) -> Self {
        let mut m = Mat::filled(rows, columns.len(), fill);
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Result<Mat<T>>
    where
        F: Fn(&E) -> Result<T>,
    {
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::filled(rows, cols, Rational::zero())
    }

    pub fn from_ints(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        Mat {
            rows,
            cols,
            data: values
                .iter()
                .map(|&v| Rational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Entry of largest absolute value, `(row, col, value)`, if any is nonzero.
    pub fn max_entry(&self) -> Option<(usize, usize, Rational)> {
        let mut best: Option<(usize, usize, Rational)> = None;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| v.abs() > b.abs()) {
                    best = Some((r, c, v.clone()));
                }
            }
        }
        best
    }
}

pub fn mat_mul<F: FieldOps>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.cols, b.rows, "inner dimensions");
    let mut out = Mat::filled(a.rows, b.cols, f.zero());
    for r in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(r, k);
            if f.is_zero(x) {
                continue;
            }
            for c in 0..b.cols {
                let v = f.add(out.get(r, c), &f.mul(x, b.get(k, c)));
                out.set(r, c, v);
            }
        }
    }
    out
}

pub fn mat_sub<F: FieldOps>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.shape(), b.shape());
    Mat {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect(),
    }
}

pub fn mat_add<F: FieldOps>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.shape(), b.shape());
    Mat {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect(),
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: FieldOps>(f: &F, m: &mut Mat<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols {
                m.data.swap(p * m.cols + c, row * m.cols + c);
            }
        }
        let inv = f.inv(m.get(row, col));
        for c in 0..m.cols {
            let v = f.mul(m.get(row, c), &inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row || f.is_zero(m.get(r, col)) {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in 0..m.cols {
                let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: FieldOps>(f: &F, m: &Mat<F::Elem>) -> usize {
    let mut m = m.clone();
    rref(f, &mut m).len()
}

/// Basis of the null space `{x : m x = 0}`.
pub fn kernel<F: FieldOps>(f: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(&f.zero(), r.get(row, fc));
            }
            v
        })
        .collect()
}

/// Columns forming a basis of the span of the given vectors in `F^dim`.
pub fn span_basis<F: FieldOps>(f: &F, dim: usize, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if vectors.is_empty() || dim == 0 {
        return Vec::new();
    }
    // rows are the vectors; the nonzero rows of the rref span the same space
    let mut m = Mat::from_rows(vectors.to_vec(), dim);
    let k = rref(f, &mut m).len();
    (0..k)
        .map(|r| (0..dim).map(|c| m.get(r, c).clone()).collect())
        .collect()
}

/// Every subspace of `F_p^dim`, each as a list of basis vectors in
/// reduced echelon form.
pub fn all_subspaces(f: &PrimeField, dim: usize) -> Vec<Vec<Vec<u64>>> {
    let p = f.modulus();
    let mut out = Vec::new();
    for k in 0..=dim {
        for pivots in combinations(dim, k) {
            // free entries: row r, columns c > pivot[r] that are not pivots
            let slots: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pivots = &pivots;
                    (pivots[r] + 1..dim)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let total = p.pow(slots.len() as u32);
            for code in 0..total {
                let mut basis = vec![vec![0u64; dim]; k];
                for (r, &pc) in pivots.iter().enumerate() {
                    basis[r][pc] = 1;
                }
                let mut rest = code;
                for &(r, c) in &slots {
                    basis[r][c] = rest % p;
                    rest /= p;
                }
                out.push(basis);
            }
        }
    }
    out
}

/// Number of subspaces of `F_p^dim` (sum of Gaussian binomials).
pub fn subspace_count(p: u64, dim: usize) -> u128 {
    let p = p as u128;
    let mut total = 0u128;
    for k in 0..=dim {
        let mut num = 1u128;
        let mut den = 1u128;
        for i in 0..k {
            num = num.saturating_mul(p.saturating_pow((dim - i) as u32).saturating_sub(1));
            den = den.saturating_mul(p.saturating_pow((i + 1) as u32).saturating_sub(1));
        }
        total = total.saturating_add(num / den);
    }
    total
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(101) && is_prime(10007));
        assert!(!is_prime(1) && !is_prime(100));
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn field_embedding() {
        let f = PrimeField::new(7).unwrap();
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.embed(&half).unwrap(), 4);
        let bad = Rational::new(BigInt::from(1), BigInt::from(7));
        assert!(f.embed(&bad).is_err());
        assert_eq!(f.embed(&Rational::from_integer(BigInt::from(-1))).unwrap(), 6);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn kernel_and_rank() {
        let f = RationalField;
        let m = Matrix::from_ints(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(rank(&f, &m), 1);
        let k = kernel(&f, &m);
        assert_eq!(k.len(), 2);
        for v in &k {
            let col = Mat::from_columns(3, std::slice::from_ref(v), Rational::zero());
            assert!(mat_mul(&f, &m, &col).is_zero_matrix());
        }
    }

    #[test]
    fn subspace_enumeration_matches_gaussian_binomials() {
        for p in [2u64, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for d in 0..=3 {
                let subs = all_subspaces(&f, d);
                assert_eq!(subs.len() as u128, subspace_count(p, d), "p={p} d={d}");
                // all distinct as spans: echelon forms are canonical
                let mut seen = std::collections::HashSet::new();
                for s in &subs {
                    assert!(seen.insert(s.clone()));
                    assert_eq!(span_basis(&f, d, s).len(), s.len());
                }
            }
        }
        assert_eq!(subspace_count(2, 2), 5);
    }
}
