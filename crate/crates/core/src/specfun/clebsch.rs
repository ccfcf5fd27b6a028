//! Clebsch-Gordan coefficients for integer angular momenta, computed by the
//! Racah sum in exact rational arithmetic, plus a small exact "rational times
//! square root" type used to state angular factors exactly.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Quantum numbers for <l1,l2;m1,m2|L;M>.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CgIndex {
    pub l1: i32,
    pub l2: i32,
    pub m1: i32,
    pub m2: i32,
    pub big_l: i32,
    pub big_m: i32,
}

impl CgIndex {
    pub fn new(l1: i32, l2: i32, m1: i32, m2: i32, big_l: i32, big_m: i32) -> Result<Self> {
        if l1 < 0 || l2 < 0 || big_l < 0 {
            return Err(Error::Domain("negative angular momentum".into()));
        }
        if m1.abs() > l1 || m2.abs() > l2 {
            return Err(Error::Domain(format!(
                "|m| exceeds l in CG index ({l1},{l2};{m1},{m2}|{big_l};{big_m})"
            )));
        }
        Ok(Self { l1, l2, m1, m2, big_l, big_m })
    }

    /// selection rules making the coefficient possibly non-zero
    fn selection_ok(&self) -> bool {
        self.big_l >= (self.l1 - self.l2).abs()
            && self.big_l <= self.l1 + self.l2
            && self.big_m.abs() <= self.big_l
    }
}

fn factorial(n: i64) -> BigInt {
    debug_assert!(n >= 0);
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Exact Clebsch-Gordan value, stored as sign * sqrt(square).
#[derive(Debug, Clone, PartialEq)]
pub struct CgExact {
    pub sign: i8,
    pub square: BigRational,
}

impl CgExact {
    pub fn zero() -> Self {
        Self { sign: 0, square: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn value(&self) -> f64 {
        self.sign as f64 * self.square.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

/// <l1,l2;m1,m2|L;M> by the Racah sum over exact factorials.
pub fn clebsch_gordan_exact(idx: CgIndex) -> Result<CgExact> {
    let CgIndex { l1, l2, m1, m2, big_l: ll, big_m: mm } = idx;
    if m1 + m2 != mm || !idx.selection_ok() {
        return Ok(CgExact::zero());
    }
    let (l1, l2, ll, m1, m2, mm) =
        (l1 as i64, l2 as i64, ll as i64, m1 as i64, m2 as i64, mm as i64);

    // triangle coefficient squared and the m-dependent factorial product
    let delta2 = BigRational::new(
        factorial(l1 + l2 - ll) * factorial(l1 - l2 + ll) * factorial(-l1 + l2 + ll),
        factorial(l1 + l2 + ll + 1),
    );
    let prod = BigRational::from_integer(
        factorial(ll + mm)
            * factorial(ll - mm)
            * factorial(l1 - m1)
            * factorial(l1 + m1)
            * factorial(l2 - m2)
            * factorial(l2 + m2),
    );

    let k_lo = 0.max(l2 - ll - m1).max(l1 - ll + m2);
    let k_hi = (l1 + l2 - ll).min(l1 - m1).min(l2 + m2);
    let mut sum = BigRational::zero();
    for k in k_lo..=k_hi {
        let den = factorial(k)
            * factorial(l1 + l2 - ll - k)
            * factorial(l1 - m1 - k)
            * factorial(l2 + m2 - k)
            * factorial(ll - l2 + m1 + k)
            * factorial(ll - l1 - m2 + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return Ok(CgExact::zero());
    }
    let sign = if sum.is_positive() { 1 } else { -1 };
    let square =
        BigRational::from_integer(BigInt::from(2 * ll + 1)) * delta2 * prod * (&sum * &sum);
    Ok(CgExact { sign, square })
}

/// <l1,l2;m1,m2|L;M> as f64 (exact value rounded once).
pub fn clebsch_gordan(idx: CgIndex) -> Result<f64> {
    Ok(clebsch_gordan_exact(idx)?.value())
}

/// Exact sum of terms q * sqrt(n) with square-free radicands n.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SurdSum {
    /// (coefficient, square-free radicand), sorted by radicand
    pub terms: Vec<(BigRational, u64)>,
}

impl SurdSum {
    pub fn zero() -> Self {
        Self { terms: vec![] }
    }

    pub fn add_term(&mut self, coef: BigRational, radicand: u64) {
        if coef.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&radicand, |t| t.1) {
            Ok(i) => {
                self.terms[i].0 += coef;
                if self.terms[i].0.is_zero() {
                    self.terms.remove(i);
                }
            }
            Err(i) => self.terms.insert(i, (coef, radicand)),
        }
    }

    pub fn scale(&mut self, q: &BigRational) {
        if q.is_zero() {
            self.terms.clear();
        }
        for t in &mut self.terms {
            t.0 *= q;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(q, n)| q.to_f64().unwrap_or(f64::NAN) * (*n as f64).sqrt())
            .sum()
    }

    /// Exactly one term equal to q * sqrt(n)?
    pub fn equals_surd(&self, q: &BigRational, n: u64) -> bool {
        if q.is_zero() {
            return self.is_zero();
        }
        self.terms.len() == 1 && self.terms[0].0 == *q && self.terms[0].1 == n
    }
}

/// Split a non-negative rational into (rational, square-free radicand) with
/// sqrt(r) = rational * sqrt(radicand). Radicands here stay small.
pub fn sqrt_reduce(r: &BigRational) -> (BigRational, u64) {
    debug_assert!(!r.is_negative());
    if r.is_zero() {
        return (BigRational::zero(), 1);
    }
    let m = (r.numer() * r.denom())
        .to_u64()
        .expect("surd radicand exceeds u64; angular momenta too large");
    let mut square = 1u64;
    let mut free = 1u64;
    let mut rem = m;
    let mut d = 2u64;
    while d * d <= rem {
        let mut cnt = 0;
        while rem % d == 0 {
            rem /= d;
            cnt += 1;
        }
        square *= d.pow(cnt / 2);
        if cnt % 2 == 1 {
            free *= d;
        }
        d += 1;
    }
    free *= rem;
    (
        BigRational::new(BigInt::from(square), r.denom().clone()),
        free,
    )
}
