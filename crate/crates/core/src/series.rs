//! Truncated bivariate power series in `X` and `Y` with [`RatPoly`]
//! coefficients.
//!
//! Every coefficient up to the declared truncation orders is stored
//! explicitly (zero-filled where absent), so two series combine only when
//! their orders agree.

use crate::error::{Error, Result};
use crate::poly::RatPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    order_x: usize,
    order_y: usize,
    // coeff[i][j] is the coefficient of X^i Y^j
    coeff: Vec<Vec<RatPoly>>,
}

impl BiSeries {
    pub fn zero(order_x: usize, order_y: usize) -> Self {
        BiSeries {
            order_x,
            order_y,
            coeff: vec![vec![RatPoly::zero(); order_y + 1]; order_x + 1],
        }
    }

    /// The multiplicative identity truncated at the given orders.
    pub fn one(order_x: usize, order_y: usize) -> Self {
        let mut s = BiSeries::zero(order_x, order_y);
        s.coeff[0][0] = RatPoly::one();
        s
    }

    pub fn from_fn(
        order_x: usize,
        order_y: usize,
        mut f: impl FnMut(usize, usize) -> RatPoly,
    ) -> Self {
        let mut s = BiSeries::zero(order_x, order_y);
        for i in 0..=order_x {
            for j in 0..=order_y {
                s.coeff[i][j] = f(i, j);
            }
        }
        s
    }

    pub fn order_x(&self) -> usize {
        self.order_x
    }

    pub fn order_y(&self) -> usize {
        self.order_y
    }

    pub fn get(&self, i: usize, j: usize) -> &RatPoly {
        &self.coeff[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: RatPoly) {
        self.coeff[i][j] = value;
    }

    fn check_orders(&self, rhs: &BiSeries) -> Result<()> {
        if self.order_x != rhs.order_x || self.order_y != rhs.order_y {
            return Err(Error::OrderMismatch(
                self.order_x,
                self.order_y,
                rhs.order_x,
                rhs.order_y,
            ));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &BiSeries) -> Result<BiSeries> {
        self.check_orders(rhs)?;
        Ok(BiSeries::from_fn(self.order_x, self.order_y, |i, j| {
            &self.coeff[i][j] + &rhs.coeff[i][j]
        }))
    }

    pub fn sub(&self, rhs: &BiSeries) -> Result<BiSeries> {
        self.check_orders(rhs)?;
        let minus_one = RatPoly::constant(num_rational::BigRational::from_integer(
            num_bigint::BigInt::from(-1),
        ));
        Ok(BiSeries::from_fn(self.order_x, self.order_y, |i, j| {
            &self.coeff[i][j] + &(&rhs.coeff[i][j] * &minus_one)
        }))
    }

    /// Truncated product: the coefficient of `X^i Y^j` is the double
    /// convolution over all lower indices.
    pub fn mul(&self, rhs: &BiSeries) -> Result<BiSeries> {
        self.check_orders(rhs)?;
        let mut out = BiSeries::zero(self.order_x, self.order_y);
        for i in 0..=self.order_x {
            for j in 0..=self.order_y {
                for p in 0..=i {
                    for q in 0..=j {
                        if self.coeff[p][q].is_zero() || rhs.coeff[i - p][j - q].is_zero() {
                            continue;
                        }
                        let term = &self.coeff[p][q] * &rhs.coeff[i - p][j - q];
                        out.coeff[i][j] = &out.coeff[i][j] + &term;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatPoly) -> BiSeries {
        BiSeries::from_fn(self.order_x, self.order_y, |i, j| &self.coeff[i][j] * c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn factorial(n: usize) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
    }

    #[test]
    fn one_plus_x_times_one_plus_y() {
        let mut a = BiSeries::one(1, 1);
        a.set(1, 0, RatPoly::one()); // 1 + X
        let mut b = BiSeries::one(1, 1);
        b.set(0, 1, RatPoly::one()); // 1 + Y
        let prod = a.mul(&b).unwrap();
        for (i, j) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            assert_eq!(prod.get(i, j), &RatPoly::one(), "coefficient of X^{i}Y^{j}");
        }
    }

    #[test]
    fn identity_series() {
        let mut a = BiSeries::zero(2, 2);
        a.set(1, 2, RatPoly::constant(rat(3, 5)));
        a.set(0, 0, RatPoly::constant(rat(-2, 7)));
        let id = BiSeries::one(2, 2);
        assert_eq!(a.mul(&id).unwrap(), a);
    }

    #[test]
    fn exp_x_times_exp_y() {
        // coefficient of X^i Y^j in e^X * e^Y is 1/(i! j!)
        let ex = BiSeries::from_fn(2, 2, |i, j| {
            if j == 0 {
                RatPoly::constant(BigRational::new(BigInt::one(), factorial(i)))
            } else {
                RatPoly::zero()
            }
        });
        let ey = BiSeries::from_fn(2, 2, |i, j| {
            if i == 0 {
                RatPoly::constant(BigRational::new(BigInt::one(), factorial(j)))
            } else {
                RatPoly::zero()
            }
        });
        let prod = ex.mul(&ey).unwrap();
        for i in 0..=2 {
            for j in 0..=2 {
                let expect =
                    RatPoly::constant(BigRational::new(BigInt::one(), factorial(i) * factorial(j)));
                assert_eq!(prod.get(i, j), &expect);
            }
        }
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = BiSeries::one(1, 2);
        let b = BiSeries::one(2, 2);
        assert!(matches!(a.mul(&b), Err(crate::error::Error::OrderMismatch(..))));
    }
}
