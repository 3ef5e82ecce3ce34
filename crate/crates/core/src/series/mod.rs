//! Exact truncated power series and invariant-ring Hilbert series of
//! permutation groups.
//!
//! Coefficients are arbitrary-precision rationals; nothing in this module
//! touches floating point.

mod group;

pub use group::{molien, monomial_orbit_count, PermGroup, GROUP_CAP, MONOMIAL_CAP};

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::SeriesError;

/// Default truncation degree.
pub const DEFAULT_DEGREE: usize = 40;

/// Power series in `q` known through `q^D`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(degree: usize) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(degree, 0, 1)
    }

    /// `c · q^e`, dropped entirely when `e > D`.
    pub fn monomial(degree: usize, exponent: usize, coeff: i64) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(degree);
        if exponent <= degree {
            s.coeffs[exponent] = BigRational::from_integer(coeff.into());
        }
        s
    }

    /// Integer coefficients from index 0; missing ones are zero, extra ones
    /// beyond `D` are dropped.
    pub fn from_integers(degree: usize, coeffs: &[i64]) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(degree);
        for (i, &c) in coeffs.iter().enumerate().take(degree + 1) {
            s.coeffs[i] = BigRational::from_integer(c.into());
        }
        s
    }

    /// `Π_{r ∈ exponents} (1 - q^r)`.
    pub fn cyclotomic_product(degree: usize, exponents: impl IntoIterator<Item = usize>) -> TruncatedSeries {
        exponents
            .into_iter()
            .fold(TruncatedSeries::one(degree), |acc, r| acc.mul_one_minus(r))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Multiplies by `(1 - q^r)`.
    pub fn mul_one_minus(&self, r: usize) -> TruncatedSeries {
        let mut out = self.clone();
        for i in (r..self.coeffs.len()).rev() {
            out.coeffs[i] = &self.coeffs[i] - &self.coeffs[i - r];
        }
        out
    }

    /// Divides by `(1 - q^r)`, `r ≥ 1`: `t_i = s_i + t_{i-r}`.
    pub fn div_one_minus(&self, r: usize) -> TruncatedSeries {
        assert!(r >= 1, "division by 1 - q^0 is undefined");
        let mut out = self.clone();
        for i in r..out.coeffs.len() {
            let prev = out.coeffs[i - r].clone();
            out.coeffs[i] += prev;
        }
        out
    }

    /// Series division; the divisor needs a nonzero constant term.
    pub fn div(&self, divisor: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        let d = self.degree().min(divisor.degree());
        let c0 = &divisor.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::NonUnitDivisor);
        }
        let mut out = TruncatedSeries::zero(d);
        for i in 0..=d {
            let mut acc = self.coeffs[i].clone();
            for j in 1..=i {
                acc -= &divisor.coeffs[j] * &out.coeffs[i - j];
            }
            out.coeffs[i] = acc / c0;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigRational) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Truncates (or zero-extends) to a new degree bound.
    pub fn truncate(&self, degree: usize) -> TruncatedSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    /// Integer coefficients, or `None` if some coefficient is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Integer coefficients as `i64`, when they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.to_integers()?.iter().map(|c| c.to_i64()).collect()
    }

    /// Coefficients through `q^D` after dropping trailing zeros.
    pub fn trimmed(&self) -> Vec<BigRational> {
        let mut v = self.coeffs.clone();
        while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    fn binary(&self, other: &TruncatedSeries, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> TruncatedSeries {
        let d = self.degree().min(other.degree());
        TruncatedSeries {
            coeffs: (0..=d).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect(),
        }
    }
}

/// `s / (1 - q^r)`.
pub fn series_div_cyclotomic(s: &TruncatedSeries, r: usize) -> TruncatedSeries {
    s.div_one_minus(r)
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.binary(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.binary(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let d = self.degree().min(rhs.degree());
        let mut out = TruncatedSeries::zero(d);
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(d + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} + O(q^{})", self.degree() + 1)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            match (show_coeff, i) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}q")?,
                (false, 1) => write!(f, "q")?,
                (true, _) => write!(f, "{mag}q^{i}")?,
                (false, _) => write!(f, "q^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
