//! Dense truncated power series with exact rational coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::valuation::{Integer, Rational};

/// Default truncation order for generating-function expansions.
pub const DEFAULT_ORDER: usize = 64;

/// `sum_{i < order} coeffs[i] x^i`. The order is the length of `coeffs`;
/// every operation truncates its result to the smaller operand order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoly {
    coeffs: Vec<Rational>,
}

impl SeriesPoly {
    pub fn zero(order: usize) -> Self {
        SeriesPoly {
            coeffs: vec![Rational::zero(); order],
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = SeriesPoly::zero(order);
        if let Some(c0) = s.coeffs.first_mut() {
            *c0 = c;
        }
        s
    }

    pub fn one(order: usize) -> Self {
        SeriesPoly::constant(Rational::one(), order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = SeriesPoly::zero(order);
        if order > 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Pads with zeros or truncates `coeffs` to exactly `order` terms.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        SeriesPoly { coeffs }
    }

    /// `e^x`.
    pub fn exp(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order);
        let mut fact = Integer::one();
        for n in 0..order {
            if n > 0 {
                fact *= n;
            }
            coeffs.push(Rational::new(Integer::one(), fact.clone()));
        }
        SeriesPoly { coeffs }
    }

    /// `log(1 + x)`, or `log(1 - x)` when `negated` is set.
    pub fn log1p(order: usize, negated: bool) -> Self {
        let coeffs = (0..order)
            .map(|n| {
                if n == 0 {
                    return Rational::zero();
                }
                let c = Rational::new(Integer::one(), Integer::from(n));
                // log(1+x): (-1)^{n+1}/n ; log(1-x): -1/n
                if negated || n % 2 == 0 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        SeriesPoly { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; `None` at or beyond the truncation order.
    pub fn coeff(&self, i: usize) -> Option<&Rational> {
        self.coeffs.get(i)
    }

    /// `n! * coeff(n)` for every retained `n`: the sequence this series is the
    /// exponential generating function of.
    pub fn egf_terms(&self) -> Vec<Rational> {
        let mut fact = Integer::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= n;
                }
                c * Rational::from_integer(fact.clone())
            })
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        SeriesPoly {
            coeffs: self.coeffs.iter().take(order).cloned().collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SeriesPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x`, dropping the term pushed past the order.
    pub fn mul_x(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order());
        if self.order() > 0 {
            coeffs.push(Rational::zero());
            coeffs.extend(self.coeffs[..self.order() - 1].iter().cloned());
        }
        SeriesPoly { coeffs }
    }

    /// Divides by `x`; the result has order one less.
    pub fn div_x(&self) -> Result<Self> {
        match self.coeffs.first() {
            Some(c) if !c.is_zero() => domain("cannot divide by x: nonzero constant term"),
            None => domain("cannot divide an order-0 series by x"),
            Some(_) => Ok(SeriesPoly {
                coeffs: self.coeffs[1..].to_vec(),
            }),
        }
    }

    /// Multiplicative inverse of a unit series.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = match self.coeffs.first() {
            Some(c) if !c.is_zero() => c,
            _ => return domain("reciprocal of a series with zero constant term"),
        };
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.order());
        out.push(inv0.clone());
        for n in 1..self.order() {
            let acc: Rational = (1..=n).map(|i| &self.coeffs[i] * &out[n - i]).sum();
            out.push(-acc * &inv0);
        }
        Ok(SeriesPoly { coeffs: out })
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = SeriesPoly::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &SeriesPoly) -> Result<Self> {
        match inner.coeffs.first() {
            Some(c) if c.is_zero() => {}
            _ => return domain("composition needs an inner series with zero constant term"),
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = SeriesPoly::zero(order);
        for c in self.coeffs[..order].iter().rev() {
            acc = &(&acc * &inner) + &SeriesPoly::constant(c.clone(), order);
        }
        Ok(acc)
    }
}

impl Add for &SeriesPoly {
    type Output = SeriesPoly;

    fn add(self, rhs: &SeriesPoly) -> SeriesPoly {
        SeriesPoly {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SeriesPoly {
    type Output = SeriesPoly;

    fn sub(self, rhs: &SeriesPoly) -> SeriesPoly {
        SeriesPoly {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &SeriesPoly {
    type Output = SeriesPoly;

    fn neg(self) -> SeriesPoly {
        SeriesPoly {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &SeriesPoly {
    type Output = SeriesPoly;

    fn mul(self, rhs: &SeriesPoly) -> SeriesPoly {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        SeriesPoly { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exp_and_log_coefficients() {
        assert_eq!(SeriesPoly::exp(4).coeffs(), [r(1, 1), r(1, 1), r(1, 2), r(1, 6)]);
        assert_eq!(
            SeriesPoly::log1p(4, false).coeffs(),
            [r(0, 1), r(1, 1), r(-1, 2), r(1, 3)]
        );
        assert_eq!(
            SeriesPoly::log1p(4, true).coeffs(),
            [r(0, 1), r(-1, 1), r(-1, 2), r(-1, 3)]
        );
    }

    #[test]
    fn exp_of_log_is_identity() {
        let order = 12;
        let shifted = &SeriesPoly::exp(order) - &SeriesPoly::one(order);
        let back = SeriesPoly::log1p(order, false).compose(&shifted).unwrap();
        assert_eq!(back, SeriesPoly::x(order));
    }

    #[test]
    fn reciprocal_of_one_minus_x() {
        let s = &SeriesPoly::one(6) - &SeriesPoly::x(6);
        let inv = s.reciprocal().unwrap();
        assert!(inv.coeffs().iter().all(|c| c.is_one()));
        assert_eq!(&s * &inv, SeriesPoly::one(6));
    }

    #[test]
    fn unit_errors() {
        assert!(SeriesPoly::x(5).reciprocal().is_err());
        assert!(SeriesPoly::exp(5).compose(&SeriesPoly::exp(5)).is_err());
        assert!(SeriesPoly::one(5).div_x().is_err());
        assert_eq!(SeriesPoly::x(5).div_x().unwrap(), SeriesPoly::one(4));
    }

    #[test]
    fn mul_truncates_to_smaller_order() {
        let p = &SeriesPoly::exp(3) * &SeriesPoly::exp(8);
        assert_eq!(p.coeffs(), [r(1, 1), r(2, 1), r(2, 1)]);
        assert_eq!(SeriesPoly::x(4).mul_x().coeffs(), [r(0, 1), r(0, 1), r(1, 1), r(0, 1)]);
        assert_eq!(SeriesPoly::x(3).pow(0), SeriesPoly::one(3));
        assert_eq!(SeriesPoly::x(3).pow(3), SeriesPoly::zero(3));
    }

    #[test]
    fn egf_terms_of_exp_are_ones() {
        assert!(SeriesPoly::exp(10).egf_terms().iter().all(|c| c.is_one()));
    }
}
