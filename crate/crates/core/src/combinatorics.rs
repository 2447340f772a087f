//! Stirling triangles, descending factorials and Cauchy numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::ExactRational;
use crate::poly::DensePoly;

/// Signed Stirling numbers of the first kind `s(n, k)` and Stirling numbers of
/// the second kind `S(n, k)` for `0 <= k <= n <= bound`.
///
/// Built eagerly and immutable afterwards. Lookups past the bound are errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    bound: usize,
    first_kind: Vec<Vec<BigInt>>,
    second_kind: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Fills both triangles from
    /// `s(n+1,k) = s(n,k-1) - n s(n,k)` and `S(n+1,k) = S(n,k-1) + k S(n,k)`.
    pub fn build(bound: usize) -> Self {
        let mut first_kind: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        let mut second_kind: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 0..bound {
            let (prev_s, prev_big_s) = (&first_kind[n], &second_kind[n]);
            let mut row_s = vec![BigInt::zero(); n + 2];
            let mut row_big_s = vec![BigInt::zero(); n + 2];
            for k in 1..=n + 1 {
                let below = |row: &[BigInt], i: usize| row.get(i).cloned().unwrap_or_default();
                row_s[k] = below(prev_s, k - 1) - BigInt::from(n) * below(prev_s, k);
                row_big_s[k] = below(prev_big_s, k - 1) + BigInt::from(k) * below(prev_big_s, k);
            }
            first_kind.push(row_s);
            second_kind.push(row_big_s);
        }
        Self {
            bound,
            first_kind,
            second_kind,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.bound {
            return Err(Error::BoundExceeded {
                requested: n,
                bound: self.bound,
            });
        }
        Ok(())
    }

    /// `s(n, k)`; zero for `k > n`.
    pub fn first_kind(&self, n: usize, k: usize) -> Result<BigInt> {
        self.check(n)?;
        Ok(self.first_kind[n].get(k).cloned().unwrap_or_default())
    }

    /// `S(n, k)`; zero for `k > n`.
    pub fn second_kind(&self, n: usize, k: usize) -> Result<BigInt> {
        self.check(n)?;
        Ok(self.second_kind[n].get(k).cloned().unwrap_or_default())
    }

    pub fn first_kind_row(&self, n: usize) -> Result<&[BigInt]> {
        self.check(n)?;
        Ok(&self.first_kind[n])
    }

    pub fn second_kind_row(&self, n: usize) -> Result<&[BigInt]> {
        self.check(n)?;
        Ok(&self.second_kind[n])
    }

    /// Test hook: returns a copy with `S(n, k)` shifted by `delta`, used to
    /// exercise the failure path of the verifier.
    #[doc(hidden)]
    pub fn with_perturbed_second_kind(mut self, n: usize, k: usize, delta: i64) -> Self {
        if n <= self.bound && k <= n {
            self.second_kind[n][k] += BigInt::from(delta);
        }
        self
    }
}

/// `(x)_n` expanded in powers of `x`; the coefficient of `x^k` is `s(n, k)`.
pub fn descending_factorial_poly(n: usize, table: &StirlingTable) -> Result<DensePoly> {
    let row = table.first_kind_row(n)?;
    Ok(DensePoly::from_coeffs(
        row.iter().cloned().map(ExactRational::from).collect(),
    ))
}

/// `x (x-1) ... (x-n+1)`, with the empty product equal to 1.
pub fn descending_factorial_at(x: &ExactRational, n: usize) -> ExactRational {
    (0..n)
        .map(|i| x - &ExactRational::from(i))
        .product()
}

/// `c_n = Σ_k s(n,k) / (k+1)`, the term-by-term integral of `(θ)_n` over `[0,1]`.
pub fn cauchy_number(n: usize, table: &StirlingTable) -> Result<ExactRational> {
    let row = table.first_kind_row(n)?;
    Ok(row
        .iter()
        .enumerate()
        .map(|(k, s)| ExactRational::new(s.clone(), k + 1).expect("k + 1 > 0"))
        .sum())
}

/// `c_0, ..., c_{n_max}`.
pub fn cauchy_numbers(n_max: usize, table: &StirlingTable) -> Result<Vec<ExactRational>> {
    (0..=n_max).map(|n| cauchy_number(n, table)).collect()
}
