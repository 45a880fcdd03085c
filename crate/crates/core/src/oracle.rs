//! Reference computations of the polynomial family: closed form, recurrence,
//! and the truncated generating-function cross-check.
//!
//! The closed form is
//! `sum_{j=0}^{min(n,k)} j! (x+1)(x+2)...(x+j) S(n+1,j+1) S(k+1,j+1)`
//! with `S` the Stirling numbers of the second kind. The recurrence and the
//! generating function `e^{X+Y} / (e^X + e^Y - e^{X+Y})^{x+1}` must reproduce
//! it cell by cell; the verification suites treat any disagreement as a bug.

use crate::error::Result;
use crate::poly::{Poly, RatPoly};
use crate::series::BiSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Stirling number of the second kind via the recurrence
/// `S(n+1,k) = S(n,k-1) + k S(n,k)` with `S(0,0) = 1`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one(); // k == 0 here
    }
    if k == 0 {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for i in 1..=n {
        let mut next = vec![BigInt::zero(); k + 1];
        for j in 1..=k.min(i) {
            next[j] = &row[j - 1] + &row[j] * BigInt::from(j);
        }
        row = next;
    }
    row[k].clone()
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The rising factorial `(x+1)(x+2)...(x+j)`; the empty product at `j = 0`.
pub fn rising_factorial(j: usize) -> Poly {
    let mut acc = Poly::one();
    for i in 1..=j {
        acc = &acc * &Poly::from_i64_coeffs(&[i as i64, 1]);
    }
    acc
}

/// Closed form of the polynomial for the `(n, k)` cell.
pub fn spb_formula(n: usize, k: usize) -> Poly {
    let mut acc = Poly::zero();
    for j in 0..=n.min(k) {
        let scalar = factorial(j) * stirling2(n + 1, j + 1) * stirling2(k + 1, j + 1);
        acc = &acc + &rising_factorial(j).scale(&scalar);
    }
    acc
}

/// Table of polynomials over a rectangular grid of cells.
///
/// Built either from the closed form or from the recurrence; the two
/// builders must agree everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpbTable {
    max_n: usize,
    max_k: usize,
    entries: Vec<Vec<Poly>>,
}

impl SpbTable {
    pub fn from_formula(max_n: usize, max_k: usize) -> Self {
        let entries = (0..=max_n)
            .map(|n| (0..=max_k).map(|k| spb_formula(n, k)).collect())
            .collect();
        SpbTable {
            max_n,
            max_k,
            entries,
        }
    }

    /// Fills the grid by the recurrence
    /// `B(n,k) = (n+1) B(n,k-1) + x sum_{j=0}^{n-1} C(n,j) B(j,k-1)
    ///         + sum_{j=1}^{n-1} C(n,j-1) B(j,k-1)`
    /// with `B(n,0) = B(0,k) = 1`.
    pub fn from_recurrence(max_n: usize, max_k: usize) -> Self {
        let x = Poly::x();
        let mut entries = vec![vec![Poly::zero(); max_k + 1]; max_n + 1];
        for row in entries.iter_mut() {
            row[0] = Poly::one();
        }
        for k in 1..=max_k {
            entries[0][k] = Poly::one();
            for n in 1..=max_n {
                let mut acc = entries[n][k - 1].scale(&BigInt::from(n + 1));
                let mut mid = Poly::zero();
                for (j, row) in entries.iter().enumerate().take(n) {
                    mid = &mid + &row[k - 1].scale(&binomial(n, j as i64));
                }
                acc = &acc + &(&x * &mid);
                for (j, row) in entries.iter().enumerate().take(n).skip(1) {
                    acc = &acc + &row[k - 1].scale(&binomial(n, j as i64 - 1));
                }
                entries[n][k] = acc;
            }
        }
        SpbTable {
            max_n,
            max_k,
            entries,
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    pub fn get(&self, n: usize, k: usize) -> &Poly {
        &self.entries[n][k]
    }
}

/// Single cell of the recurrence table.
pub fn spb_recurrence(n: usize, k: usize) -> Poly {
    SpbTable::from_recurrence(n, k).get(n, k).clone()
}

/// Outcome of comparing one series coefficient to the closed form.
#[derive(Debug, Clone)]
pub struct EgfCell {
    pub n: usize,
    pub k: usize,
    pub pass: bool,
    pub expected: Poly,
    /// Mismatch description when the cell fails.
    pub detail: Option<String>,
}

#[derive(Debug, Clone)]
pub struct EgfReport {
    pub order_x: usize,
    pub order_y: usize,
    pub cells: Vec<EgfCell>,
}

impl EgfReport {
    pub fn pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EgfCell> {
        self.cells.iter().filter(|c| !c.pass)
    }
}

fn exp_x(order_x: usize, order_y: usize) -> BiSeries {
    BiSeries::from_fn(order_x, order_y, |i, j| {
        if j == 0 {
            RatPoly::constant(BigRational::new(BigInt::one(), factorial(i)))
        } else {
            RatPoly::zero()
        }
    })
}

fn exp_y(order_x: usize, order_y: usize) -> BiSeries {
    BiSeries::from_fn(order_x, order_y, |i, j| {
        if i == 0 {
            RatPoly::constant(BigRational::new(BigInt::one(), factorial(j)))
        } else {
            RatPoly::zero()
        }
    })
}

fn exp_xy(order_x: usize, order_y: usize) -> BiSeries {
    BiSeries::from_fn(order_x, order_y, |i, j| {
        RatPoly::constant(BigRational::new(BigInt::one(), factorial(i) * factorial(j)))
    })
}

/// Expands the generating function to the given truncation orders and
/// compares every coefficient against the closed form.
///
/// With `U = e^X + e^Y - e^{X+Y} - 1` (no constant term), the right-hand
/// side is `e^{X+Y} (1+U)^{-(x+1)}` and the binomial series needs exponents
/// `m <= order_x + order_y` only, since higher powers of `U` vanish under
/// truncation. The coefficient of `X^n Y^k`, multiplied by `n! k!`, must be
/// the `(n, k)` polynomial.
pub fn egf_check(order_x: usize, order_y: usize) -> Result<EgfReport> {
    let ex = exp_x(order_x, order_y);
    let ey = exp_y(order_x, order_y);
    let exy = exp_xy(order_x, order_y);
    let u = ex.add(&ey)?.sub(&exy)?.sub(&BiSeries::one(order_x, order_y))?;

    // (1+U)^{-(x+1)} = sum_m (-1)^m ((x+1)^{rising m} / m!) U^m
    let mut inv = BiSeries::zero(order_x, order_y);
    let mut u_pow = BiSeries::one(order_x, order_y);
    for m in 0..=(order_x + order_y) {
        if m > 0 {
            u_pow = u_pow.mul(&u)?;
        }
        let mut scalar = BigRational::new(BigInt::one(), factorial(m));
        if m % 2 == 1 {
            scalar = -scalar;
        }
        let coeff = RatPoly::from_int(&rising_factorial(m)).scale(&scalar);
        inv = inv.add(&u_pow.scale(&coeff))?;
    }
    let series = exy.mul(&inv)?;

    let mut cells = Vec::new();
    for n in 0..=order_x {
        for k in 0..=order_y {
            let expected = spb_formula(n, k);
            let scaled = series
                .get(n, k)
                .scale(&BigRational::from_integer(factorial(n) * factorial(k)));
            let (pass, detail) = match scaled.to_int() {
                Some(actual) if actual == expected => (true, None),
                Some(actual) => (
                    false,
                    Some(format!(
                        "expected {} got {}",
                        expected.coeff_array(),
                        actual.coeff_array()
                    )),
                ),
                None => (false, Some("non-integer coefficient".to_string())),
            };
            cells.push(EgfCell {
                n,
                k,
                pass,
                expected,
                detail,
            });
        }
    }
    Ok(EgfReport {
        order_x,
        order_y,
        cells,
    })
}
