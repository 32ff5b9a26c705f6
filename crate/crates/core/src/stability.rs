//! Central charges with exact rational values and phase comparison by
//! cross-product signs. No angle is ever computed.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::green::{validate_mgs, GreenSequence, ValidationMode};
use crate::quiver::{Quiver, RootVector};
use crate::roots::RootSystem;

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A point `x + iy` of the complex plane with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Charge {
    pub re: Rational,
    pub im: Rational,
}

impl Charge {
    pub fn new(re: Rational, im: Rational) -> Self {
        Charge { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Charge::new(rational(re, 1), rational(im, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// In `H = { r exp(i pi phi) : r > 0, 0 < phi <= 1 }`: `y > 0`, or
    /// `y = 0` and `x < 0`.
    pub fn in_half_plane(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }

    /// `self.re * other.im - self.im * other.re`.
    pub fn cross(&self, other: &Charge) -> Rational {
        &self.re * &other.im - &self.im * &other.re
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.re, self.im)
    }
}

/// `phi(z) > phi(w)`, i.e. `z` lies strictly counter-clockwise of `w`.
/// Both phases lie in `(0, 1]`, so the sign of `cross(w, z)` decides.
pub fn phase_gt(z: &Charge, w: &Charge) -> Result<bool> {
    for c in [z, w] {
        if !c.in_half_plane() {
            return Err(Error::OutsideHalfPlane(c.to_string()));
        }
    }
    Ok(w.cross(z).is_positive())
}

fn phase_cmp(z: &Charge, w: &Charge) -> Ordering {
    // callers guarantee both are in the half-plane
    w.cross(z).cmp(&Rational::zero())
}

/// One value in the closed upper half-plane per vertex, extended linearly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharge {
    values: Vec<Charge>,
}

impl CentralCharge {
    pub fn new(values: Vec<Charge>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidCharge("no vertex values".into()));
        }
        for v in &values {
            if !v.in_half_plane() {
                return Err(Error::OutsideHalfPlane(v.to_string()));
            }
        }
        Ok(CentralCharge { values })
    }

    pub fn values(&self) -> &[Charge] {
        &self.values
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// `Z(alpha) = sum alpha_i z_i`.
    pub fn charge_of(&self, alpha: &RootVector) -> Result<Charge> {
        if alpha.len() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                actual: alpha.len(),
            });
        }
        let mut re = Rational::zero();
        let mut im = Rational::zero();
        for (&a, z) in alpha.0.iter().zip(&self.values) {
            if a != 0 {
                let a = Rational::from_integer(BigInt::from(a));
                re += &a * &z.re;
                im += &a * &z.im;
            }
        }
        Ok(Charge { re, im })
    }

    /// Parses `s1=-1/1,1/1;s2=1/1,1/1`. Every vertex must be given once.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let mut values: Vec<Option<Charge>> = vec![None; rank];
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidCharge(format!("expected s<i>=x,y in `{part}`")))?;
            let i: usize = key
                .trim()
                .strip_prefix('s')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::InvalidCharge(format!("bad vertex key `{key}`")))?;
            if i == 0 || i > rank {
                return Err(Error::VertexOutOfRange {
                    vertex: i,
                    vertex_count: rank,
                });
            }
            let (x, y) = value
                .split_once(',')
                .ok_or_else(|| Error::InvalidCharge(format!("expected x,y in `{value}`")))?;
            let charge = Charge::new(parse_rational(x)?, parse_rational(y)?);
            if values[i - 1].replace(charge).is_some() {
                return Err(Error::InvalidCharge(format!("vertex s{i} given twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(k, v)| v.ok_or_else(|| Error::InvalidCharge(format!("missing value for s{}", k + 1))))
            .collect::<Result<Vec<_>>>()?;
        CentralCharge::new(values)
    }
}

impl fmt::Display for CentralCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, z)| format!("s{}={},{}", i + 1, show(&z.re), show(&z.im)))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

fn show(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidCharge(format!("bad rational `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// `Im(Z(beta) / Z(alpha)) != 0` for every lattice `0 < beta < alpha`.
pub fn is_generic_for(z: &CentralCharge, alpha: &RootVector) -> Result<bool> {
    if !alpha.is_positive() {
        return Err(Error::Precondition(format!("{alpha} is not a positive class")));
    }
    let za = z.charge_of(alpha)?;
    let n = alpha.len();
    let mut beta = vec![0i64; n];
    loop {
        // odometer over the box 0 <= beta <= alpha
        let mut k = 0;
        while k < n {
            if beta[k] < alpha.0[k] {
                beta[k] += 1;
                break;
            }
            beta[k] = 0;
            k += 1;
        }
        if k == n || beta == alpha.0 {
            return Ok(true);
        }
        let zb = z.charge_of(&RootVector(beta.clone()))?;
        if za.cross(&zb).is_zero() {
            return Ok(false);
        }
    }
}

/// No two distinct positive roots have charges of equal phase.
pub fn is_discrete(z: &CentralCharge, rs: &RootSystem) -> Result<bool> {
    Ok(find_phase_tie(z, rs)?.is_none())
}

fn find_phase_tie(z: &CentralCharge, rs: &RootSystem) -> Result<Option<(usize, usize)>> {
    let charges = rs
        .roots()
        .iter()
        .map(|r| z.charge_of(r))
        .collect::<Result<Vec<_>>>()?;
    for a in 0..charges.len() {
        for b in a + 1..charges.len() {
            if charges[a].cross(&charges[b]).is_zero() {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Positive roots in order of strictly decreasing phase, returned as the
/// green sequence they define.
pub fn induced_mgs(rs: &RootSystem, z: &CentralCharge) -> Result<GreenSequence> {
    let mut items: Vec<(Charge, &RootVector)> = rs
        .roots()
        .iter()
        .map(|r| z.charge_of(r).map(|c| (c, r)))
        .collect::<Result<_>>()?;
    items.sort_by(|(za, _), (zb, _)| phase_cmp(zb, za));
    for pair in items.windows(2) {
        if pair[0].0.cross(&pair[1].0).is_zero() {
            let (a, b) = (pair[0].1.clone(), pair[1].1.clone());
            let (a, b) = if a.canonical_cmp(&b).is_le() { (a, b) } else { (b, a) };
            return Err(Error::NotDiscrete(a, b));
        }
    }
    let roots: Vec<RootVector> = items.into_iter().map(|(_, r)| r.clone()).collect();
    let report = validate_mgs(rs, &roots, ValidationMode::Maximal)?;
    if !report.valid {
        return Err(Error::Invariant(format!(
            "phase order is not a maximal green sequence: {:?}",
            report.failure
        )));
    }
    Ok(GreenSequence {
        word: report.word,
        roots,
    })
}

/// Deterministic rational charges in the open upper half-plane:
/// `x = a/d`, `y = b/e` with `|a| <= B`, `1 <= b, d, e <= B`.
pub fn sample_charge(q: &Quiver, seed: u64, denominator_bound: u64) -> CentralCharge {
    assert!(denominator_bound >= 1, "denominator bound must be positive");
    let bound = denominator_bound as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..q.vertex_count())
        .map(|_| {
            let a = rng.random_range(-bound..=bound);
            let d = rng.random_range(1..=bound);
            let b = rng.random_range(1..=bound);
            let e = rng.random_range(1..=bound);
            Charge::new(rational(a, d), rational(b, e))
        })
        .collect();
    CentralCharge::new(values).expect("sampled values have positive imaginary part")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    fn cc(pairs: &[(i64, i64)]) -> CentralCharge {
        CentralCharge::new(pairs.iter().map(|&(x, y)| Charge::from_ints(x, y)).collect()).unwrap()
    }

    fn a2() -> RootSystem {
        RootSystem::new(&Quiver::builtin("A2").unwrap()).unwrap()
    }

    #[test]
    fn charge_examples() {
        let z = cc(&[(-1, 1), (1, 1)]);
        assert_eq!(z.charge_of(&rv(&[1, 1])).unwrap(), Charge::from_ints(0, 2));
        assert_eq!(z.charge_of(&rv(&[0, 1])).unwrap(), Charge::from_ints(1, 1));
        let zero = z.charge_of(&rv(&[0, 0])).unwrap();
        assert!(zero.is_zero() && !zero.in_half_plane());
    }

    #[test]
    fn phase_examples() {
        let (z, w) = (Charge::from_ints(-1, 1), Charge::from_ints(1, 1));
        assert!(phase_gt(&z, &w).unwrap());
        assert!(!phase_gt(&w, &z).unwrap());
        let boundary = Charge::from_ints(-1, 0);
        assert!(phase_gt(&boundary, &Charge::from_ints(-5, 1)).unwrap());
        let (p, q) = (Charge::from_ints(2, 2), Charge::from_ints(1, 1));
        assert!(!phase_gt(&p, &q).unwrap() && !phase_gt(&q, &p).unwrap());
        assert!(matches!(
            phase_gt(&Charge::from_ints(1, 0), &q),
            Err(Error::OutsideHalfPlane(_))
        ));
        assert!(matches!(phase_gt(&Charge::from_ints(0, 0), &q), Err(Error::OutsideHalfPlane(_))));
    }

    #[test]
    fn genericity() {
        let z = cc(&[(-1, 1), (1, 1)]);
        assert!(is_generic_for(&z, &rv(&[1, 1])).unwrap());
        let flat = cc(&[(0, 1), (0, 1)]);
        assert!(!is_generic_for(&flat, &rv(&[1, 1])).unwrap());
        assert!(is_generic_for(&flat, &rv(&[1, 0])).unwrap());
        // 0 < (1,0) < (2,0) shares the phase of (2,0)
        assert!(!is_generic_for(&z, &rv(&[2, 0])).unwrap());
    }

    #[test]
    fn discreteness() {
        assert!(is_discrete(&cc(&[(-1, 1), (1, 1)]), &a2()).unwrap());
        assert!(!is_discrete(&cc(&[(-1, 1), (-2, 2)]), &a2()).unwrap());
    }

    #[test]
    fn induced_examples() {
        let s = induced_mgs(&a2(), &cc(&[(-1, 1), (1, 1)])).unwrap();
        assert_eq!(s.roots, vec![rv(&[1, 0]), rv(&[1, 1]), rv(&[0, 1])]);
        assert_eq!(s.word, vec![0, 1, 0]);
        let s = induced_mgs(&a2(), &cc(&[(1, 1), (-1, 1)])).unwrap();
        assert_eq!(s.roots, vec![rv(&[0, 1]), rv(&[1, 1]), rv(&[1, 0])]);
        match induced_mgs(&a2(), &cc(&[(0, 1), (0, 1)])) {
            Err(Error::NotDiscrete(a, b)) => assert_eq!((a, b), (rv(&[0, 1]), rv(&[1, 0]))),
            other => panic!("expected NotDiscrete, got {other:?}"),
        }
    }

    #[test]
    fn parse_and_display() {
        let z = CentralCharge::parse("s1=-1/1,1/1;s2=1/1,1/1", 2).unwrap();
        assert_eq!(z, cc(&[(-1, 1), (1, 1)]));
        assert_eq!(z.to_string(), "s1=-1/1,1/1;s2=1/1,1/1");
        assert!(CentralCharge::parse("s1=1,1", 2).is_err());
        assert!(CentralCharge::parse("s1=1,-1;s2=0,1", 2).is_err());
        assert!(CentralCharge::parse("s1=1,1;s3=0,1", 2).is_err());
        assert!(CentralCharge::parse("s1=1/0,1;s2=0,1", 2).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let q = Quiver::builtin("A3").unwrap();
        let a = sample_charge(&q, 1, 1000);
        let b = sample_charge(&q, 1, 1000);
        assert_eq!(a.to_string(), b.to_string());
        assert_ne!(a, sample_charge(&q, 2, 1000));
        for seed in 0..200 {
            assert!(sample_charge(&q, seed, 7).values().iter().all(|v| v.im.is_positive()));
        }
    }
}
