//! Exact univariate polynomials in `x`.
//!
//! `Poly` has arbitrary-precision integer coefficients, `RatPoly` exact
//! rational ones. Coefficients are stored ascending by exponent with no
//! trailing zeros; the zero polynomial is the empty vector and has degree -1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul};

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: i64) -> Self {
        Poly::from_coeffs(vec![BigInt::from(c)])
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Ascending coefficients without trailing zeros.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the stored degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial at -1 by convention.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, v: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    }

    pub fn eval_i64(&self, v: i64) -> BigInt {
        self.eval(&BigInt::from(v))
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Renders as a JSON-style ascending coefficient array, e.g. `3x+4` as `[4,3]`.
    pub fn coeff_array(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses the ascending coefficient array format produced by [`Poly::coeff_array`].
    pub fn parse_coeff_array(s: &str) -> crate::error::Result<Poly> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| crate::error::Error::parse("expected [c0,c1,...]"))?;
        let mut coeffs = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let c: BigInt = part
                .parse()
                .map_err(|_| crate::error::Error::parse(format!("bad coefficient {part:?}")))?;
            coeffs.push(c);
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "{c}x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Univariate polynomial with exact rational coefficients.
///
/// `BigRational` keeps fractions reduced with positive denominators, so the
/// stored form is canonical.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_int(p: &Poly) -> Self {
        RatPoly {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Converts back to an integer polynomial when every denominator is 1.
    pub fn to_int(&self) -> Option<Poly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            coeffs.push(c.to_integer());
        }
        Some(Poly::from_coeffs(coeffs))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn add_coefficientwise() {
        // (x+2) + (3x+4) = 4x+6
        assert_eq!(&p(&[2, 1]) + &p(&[4, 3]), p(&[6, 4]));
    }

    #[test]
    fn add_identity_and_cancellation() {
        let q = p(&[4, 3]);
        assert_eq!(&q + &Poly::zero(), q);
        // x + (-x) = 0, canonical empty coefficient vector
        let sum = &p(&[0, 1]) + &p(&[0, -1]);
        assert!(sum.is_zero());
        assert!(sum.coeffs().is_empty());
        assert_eq!(sum.degree(), -1);
    }

    #[test]
    fn mul_small_products() {
        // (x+1)(x+2) = x^2+3x+2
        assert_eq!(&p(&[1, 1]) * &p(&[2, 1]), p(&[2, 3, 1]));
        let q = p(&[4, 0, 7]);
        assert_eq!(&q * &Poly::one(), q);
        // (x+1)(x+2)(x+3) = x^3+6x^2+11x+6, cross-checked at x=1
        let c = &(&p(&[1, 1]) * &p(&[2, 1])) * &p(&[3, 1]);
        assert_eq!(c, p(&[6, 11, 6, 1]));
        assert_eq!(c.eval_i64(1), BigInt::from(24));
    }

    #[test]
    fn eval_horner() {
        assert_eq!(p(&[4, 3]).eval_i64(1), BigInt::from(7));
        assert_eq!(p(&[4, 3]).eval_i64(0), BigInt::from(4));
        assert_eq!(p(&[14, 15, 2]).eval_i64(1), BigInt::from(31));
    }

    #[test]
    fn coeff_array_round_trip() {
        let q = p(&[4, 3]);
        assert_eq!(q.coeff_array(), "[4,3]");
        assert_eq!(Poly::parse_coeff_array("[4,3]").unwrap(), q);
        assert_eq!(Poly::zero().coeff_array(), "[]");
        assert_eq!(Poly::parse_coeff_array("[]").unwrap(), Poly::zero());
    }

    #[test]
    fn display_readable() {
        assert_eq!(p(&[14, 15, 2]).to_string(), "2x^2 + 15x + 14");
        assert_eq!(p(&[2, 1]).to_string(), "x + 2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn rational_round_trip() {
        let q = RatPoly::from_int(&p(&[6, 11, 6, 1]));
        assert_eq!(q.to_int().unwrap(), p(&[6, 11, 6, 1]));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert!(q.scale(&half).to_int().is_none());
    }
}
