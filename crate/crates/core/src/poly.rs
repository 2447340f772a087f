//! Dense univariate polynomials with exact rational coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use crate::exactnum::ExactRational;

/// Coefficient `i` multiplies `x^i`. Trailing zeros are trimmed, so the zero
/// polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DensePoly {
    coeffs: Vec<ExactRational>,
}

impl DensePoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); k + 1];
        coeffs[k] = ExactRational::one();
        Self { coeffs }
    }

    /// `x - a`.
    pub fn linear_root(a: ExactRational) -> Self {
        Self::from_coeffs(vec![-a, ExactRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(ExactRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> ExactRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// The antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ExactRational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            let divisor = ExactRational::from(i + 1);
            coeffs.push(c.checked_div(&divisor).expect("i + 1 is positive"));
        }
        Self::from_coeffs(coeffs)
    }

    /// `∫_a^b p(x) dx`, exactly.
    pub fn integrate(&self, a: &ExactRational, b: &ExactRational) -> ExactRational {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        self + &(-rhs)
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        DensePoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePoly::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    fn p(cs: &[&str]) -> DensePoly {
        DensePoly::from_coeffs(cs.iter().map(|s| r(s)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&["1", "0", "0"]).coeffs().len(), 1);
        assert!(p(&["0", "0"]).is_zero());
        assert_eq!(DensePoly::zero().degree(), None);
        assert_eq!(DensePoly::monomial(3).degree(), Some(3));
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let a = p(&["1", "1"]);
        let sq = &a * &a;
        assert_eq!(sq, p(&["1", "2", "1"]));
        assert_eq!(sq.eval(&r("1/2")), r("9/4"));
        assert_eq!(&sq - &a, p(&["0", "1", "1"]));
        assert_eq!(a.pow(3), p(&["1", "3", "3", "1"]));
        assert!((&a * &DensePoly::zero()).is_zero());
    }

    #[test]
    fn exact_integration() {
        // ∫_0^1 (x^2 - x) dx = 1/3 - 1/2
        assert_eq!(p(&["0", "-1", "1"]).integrate(&r("0"), &r("1")), r("-1/6"));
        assert_eq!(DensePoly::one().integrate(&r("2"), &r("7/2")), r("3/2"));
        assert_eq!(p(&["0", "0", "3"]).antiderivative(), p(&["0", "0", "0", "1"]));
    }
}
