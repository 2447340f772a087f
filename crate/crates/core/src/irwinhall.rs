//! The density of a sum of `m` independent uniforms on `[0,1]`, held as an
//! exact piecewise polynomial, and integrals against it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::combinatorics::{descending_factorial_poly, StirlingTable};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, ExactRational};
use crate::poly::DensePoly;

/// Piece `j` is valid on `[j, j+1]`, `j = 0..m`, with coefficients in the
/// global monomial basis of `θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePoly {
    m: usize,
    pieces: Vec<DensePoly>,
}

impl PiecewisePoly {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pieces(&self) -> &[DensePoly] {
        &self.pieces
    }

    pub fn piece(&self, j: usize) -> Option<&DensePoly> {
        self.pieces.get(j)
    }

    /// Index of the piece used at `theta`; interior knots take the left piece.
    pub fn piece_index(&self, theta: &ExactRational) -> Result<usize> {
        let m = ExactRational::from(self.m);
        if theta.is_negative() || theta > &m {
            return Err(Error::OutsideSupport {
                point: theta.to_string(),
                m: self.m,
            });
        }
        if theta.is_zero() {
            return Ok(0);
        }
        let ceil = Integer::div_ceil(theta.numer(), theta.denom());
        let idx: usize = (ceil - BigInt::one())
            .try_into()
            .expect("index within [0, m)");
        Ok(idx)
    }
}

/// `ρ_m(θ) = (1/(m-1)!) Σ_{k=0}^{m-1} C(m,k) (-1)^k (θ-k)_+^{m-1}` on `[0, m]`.
///
/// The truncated power `(θ-k)_+` is handled by adding the `k`-th term only to
/// pieces `j >= k`, so every piece is an honest polynomial.
pub fn irwin_hall_density(m: usize) -> Result<PiecewisePoly> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "the uniform-sum density needs m >= 1".into(),
        ));
    }
    let scale = ExactRational::from(factorial(m - 1)).recip()?;
    let mut pieces = vec![DensePoly::zero(); m];
    for k in 0..m {
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let weight = ExactRational::from(sign * BigInt::from(binomial(m, k))) * &scale;
        let term = DensePoly::linear_root(ExactRational::from(k))
            .pow(m - 1)
            .scale(&weight);
        for piece in &mut pieces[k..] {
            *piece = &*piece + &term;
        }
    }
    Ok(PiecewisePoly { m, pieces })
}

/// Exact `ρ_m(θ)` for `θ ∈ [0, m]`; anything outside is an error.
pub fn density_eval(rho: &PiecewisePoly, theta: &ExactRational) -> Result<ExactRational> {
    let j = rho.piece_index(theta)?;
    Ok(rho.pieces[j].eval(theta))
}

/// `∫_0^m p(θ) ρ_m(θ) dθ`, summed piece by piece.
pub fn integrate_poly_against_density(p: &DensePoly, rho: &PiecewisePoly) -> ExactRational {
    rho.pieces
        .iter()
        .enumerate()
        .map(|(j, piece)| {
            let lo = ExactRational::from(j);
            let hi = ExactRational::from(j + 1);
            (p * piece).integrate(&lo, &hi)
        })
        .sum()
}

/// `E (S_m)_p`: the descending factorial of degree `p` integrated against `ρ_m`.
pub fn factorial_moment(m: usize, p: usize, table: &StirlingTable) -> Result<ExactRational> {
    let falling = descending_factorial_poly(p, table)?;
    let rho = irwin_hall_density(m)?;
    Ok(integrate_poly_against_density(&falling, &rho))
}

/// `E S_m^k` read off the second-kind triangle as `S(m+k, m) / C(m+k, m)`.
pub fn raw_moment_via_stirling(m: usize, k: usize, table: &StirlingTable) -> Result<ExactRational> {
    let stirling = table.second_kind(m + k, m)?;
    ExactRational::new(stirling, BigInt::from(binomial(m + k, m)))
}

/// `E S_m^k` by integrating `θ^k` against `ρ_m`.
pub fn raw_moment_by_integration(m: usize, k: usize) -> Result<ExactRational> {
    let rho = irwin_hall_density(m)?;
    Ok(integrate_poly_against_density(&DensePoly::monomial(k), &rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::cauchy_number;
    use proptest::prelude::*;

    fn r(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    /// The truncated-power sum evaluated directly with max(x, 0).
    fn direct_density(m: usize, theta: &ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for k in 0..m {
            let shifted = theta - &ExactRational::from(k);
            if shifted.is_negative() {
                continue;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            acc += ExactRational::from(BigInt::from(sign) * BigInt::from(binomial(m, k)))
                * shifted.pow((m - 1) as u32);
        }
        acc.checked_div(&ExactRational::from(factorial(m - 1))).unwrap()
    }

    #[test]
    fn small_densities() {
        let one = irwin_hall_density(1).unwrap();
        assert_eq!(one.pieces(), &[DensePoly::one()]);
        for s in ["0", "1/3", "1/2", "1"] {
            assert_eq!(density_eval(&one, &r(s)).unwrap(), ExactRational::one());
        }
        let two = irwin_hall_density(2).unwrap();
        assert_eq!(density_eval(&two, &r("3/2")).unwrap(), r("1/2"));
        assert_eq!(density_eval(&two, &r("1")).unwrap(), ExactRational::one());
        let three = irwin_hall_density(3).unwrap();
        assert_eq!(density_eval(&three, &r("3/2")).unwrap(), r("3/4"));
        for m in 2..=8 {
            let rho = irwin_hall_density(m).unwrap();
            assert!(density_eval(&rho, &ExactRational::zero()).unwrap().is_zero());
            assert!(rho.pieces().iter().all(|p| p.degree().is_none_or(|d| d < m)));
        }
    }

    #[test]
    fn out_of_support() {
        let two = irwin_hall_density(2).unwrap();
        assert!(matches!(
            density_eval(&two, &r("5/2")),
            Err(Error::OutsideSupport { m: 2, .. })
        ));
        assert!(density_eval(&two, &r("-1/100")).is_err());
        assert!(irwin_hall_density(0).is_err());
    }

    #[test]
    fn knot_convention_is_left_piece() {
        let rho = irwin_hall_density(4).unwrap();
        assert_eq!(rho.piece_index(&r("0")).unwrap(), 0);
        assert_eq!(rho.piece_index(&r("1")).unwrap(), 0);
        assert_eq!(rho.piece_index(&r("3/2")).unwrap(), 1);
        assert_eq!(rho.piece_index(&r("2")).unwrap(), 1);
        assert_eq!(rho.piece_index(&r("4")).unwrap(), 3);
    }

    #[test]
    fn knot_continuity() {
        for m in 2..=8 {
            let rho = irwin_hall_density(m).unwrap();
            for j in 0..m - 1 {
                let knot = ExactRational::from(j + 1);
                assert_eq!(rho.pieces()[j].eval(&knot), rho.pieces()[j + 1].eval(&knot));
            }
        }
    }

    #[test]
    fn low_order_moments() {
        let two = irwin_hall_density(2).unwrap();
        for m in 1..=8 {
            let rho = irwin_hall_density(m).unwrap();
            assert_eq!(integrate_poly_against_density(&DensePoly::one(), &rho), ExactRational::one());
            assert_eq!(
                integrate_poly_against_density(&DensePoly::monomial(1), &rho),
                ExactRational::new(m, 2).unwrap()
            );
        }
        assert_eq!(integrate_poly_against_density(&DensePoly::monomial(2), &two), r("7/6"));
        let t = StirlingTable::build(12);
        assert_eq!(factorial_moment(2, 2, &t).unwrap(), r("1/6"));
        for m in 1..=4 {
            assert_eq!(factorial_moment(m, 0, &t).unwrap(), ExactRational::one());
        }
        for n in 0..=12 {
            assert_eq!(factorial_moment(1, n, &t).unwrap(), cauchy_number(n, &t).unwrap());
        }
        assert_eq!(raw_moment_via_stirling(2, 0, &t).unwrap(), ExactRational::one());
        assert_eq!(raw_moment_via_stirling(2, 2, &t).unwrap(), r("7/6"));
        assert_eq!(raw_moment_via_stirling(2, 1, &t).unwrap(), ExactRational::one());
        assert!(factorial_moment(2, 13, &t).is_err());
        assert!(raw_moment_via_stirling(6, 7, &t).is_err());
    }

    #[test]
    fn moment_bridge() {
        let t = StirlingTable::build(14);
        for m in 1..=6 {
            for k in 0..=8 {
                assert_eq!(
                    raw_moment_by_integration(m, k).unwrap(),
                    raw_moment_via_stirling(m, k, &t).unwrap(),
                    "m={m} k={k}"
                );
            }
        }
    }

    fn point_in_support() -> impl Strategy<Value = (usize, ExactRational)> {
        (1usize..=8, 1i64..=97).prop_flat_map(|(m, q)| {
            (Just(m), (0..=(m as i64) * q).prop_map(move |p| ExactRational::new(p, q).unwrap()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn matches_direct_formula_and_is_symmetric((m, theta) in point_in_support()) {
            let rho = irwin_hall_density(m).unwrap();
            let v = density_eval(&rho, &theta).unwrap();
            prop_assert!(!v.is_negative());
            prop_assert_eq!(&v, &direct_density(m, &theta));
            let mirror = &ExactRational::from(m) - &theta;
            prop_assert_eq!(v, density_eval(&rho, &mirror).unwrap());
        }
    }
}
