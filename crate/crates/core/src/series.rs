//! Truncated formal power series in one variable with exact coefficients.
//!
//! A series of order `n` carries the coefficients of `x^0 ..= x^n`. Binary
//! operations truncate to the smaller of the two orders; nothing ever extends
//! the order implicitly.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::ArithError;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Series of the given order with the supplied leading coefficients;
    /// missing ones are zero, extra ones are dropped.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = Rational>, order: usize) -> Self {
        let mut coeffs: Vec<Rational> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::from_coeffs([c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// `c·x^k` truncated at `order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k`; `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncate cannot extend a series");
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at `min(self.order, other.order)`.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .map(|k| &self.coeffs[k] * &other.coeffs[n - k])
                    .sum()
            })
            .collect();
        PowerSeries { coeffs }
    }

    /// Quotient `q` with `q·other = self` through `min` of the two orders.
    pub fn div(&self, other: &PowerSeries) -> Result<PowerSeries, ArithError> {
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(ArithError::NonInvertibleSeries);
        }
        let inv_b0 = b0.recip()?;
        let order = self.order().min(other.order());
        let mut q: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                acc -= &(&other.coeffs[k] * &q[n - k]);
            }
            q.push(acc * &inv_b0);
        }
        Ok(PowerSeries { coeffs: q })
    }

    /// Square root with unit constant term, by the coefficient recursion
    /// `s_0 = 1`, `s_n = (a_n - sum_{k=1}^{n-1} s_k s_{n-k}) / 2`.
    pub fn sqrt(&self) -> Result<PowerSeries, ArithError> {
        if self.coeffs[0] != Rational::one() {
            return Err(ArithError::SqrtNonUnit);
        }
        let half = Rational::new(1, 2)?;
        let mut s: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        s.push(Rational::one());
        for n in 1..=self.order() {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc -= &(&s[k] * &s[n - k]);
            }
            s.push(acc * &half);
        }
        Ok(PowerSeries { coeffs: s })
    }

    fn zip_with(&self, other: &PowerSeries, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let order = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=order)
                .map(|k| f(&self.coeffs[k], &other.coeffs[k]))
                .collect(),
        }
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::mul(self, rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
