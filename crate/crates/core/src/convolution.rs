//! Binomial convolution of truncated sequences and the matching operations on
//! their exponential generating functions.
//!
//! An [`EgfSequence`] stores the raw terms `u_0..=u_N`, not `u_n / n!`. The
//! EGF product is then exactly the binomial convolution of the term lists.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, multinomial, ExactRational};

/// Terms `u_0, ..., u_N` of a sequence truncated at order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgfSequence {
    terms: Vec<ExactRational>,
}

impl EgfSequence {
    /// At least one term is required (order 0).
    pub fn new(terms: Vec<ExactRational>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument(
                "a truncated sequence needs at least one term".into(),
            ));
        }
        Ok(Self { terms })
    }

    /// Ordinary power-series coefficients `a_n`, mapped to terms `n! a_n`.
    pub fn from_ordinary(coeffs: &[ExactRational]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * &ExactRational::from(factorial(n)))
                .collect(),
        )
    }

    /// Coefficients `u_n / n!` of the EGF as an ordinary power series.
    pub fn to_ordinary(&self) -> Vec<ExactRational> {
        self.terms
            .iter()
            .enumerate()
            .map(|(n, u)| {
                u.checked_div(&ExactRational::from(factorial(n)))
                    .expect("n! > 0")
            })
            .collect()
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[ExactRational] {
        &self.terms
    }

    pub fn term(&self, n: usize) -> Result<&ExactRational> {
        self.terms.get(n).ok_or(Error::OrderExceeded {
            index: n,
            order: self.order(),
        })
    }

    /// Membership in the convolution group only needs `u_0 != 0` here.
    pub fn is_in_group(&self) -> bool {
        !self.terms[0].is_zero()
    }

    /// Keeps terms `0..=order` (no-op when already shorter).
    pub fn truncate(&self, order: usize) -> Self {
        Self {
            terms: self.terms[..=order.min(self.order())].to_vec(),
        }
    }
}

/// All `m`-tuples of nonnegative integers summing to `n`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionList {
    n: usize,
    m: usize,
    items: Vec<Vec<usize>>,
}

impl CompositionList {
    pub fn new(n: usize, m: usize) -> Self {
        fn fill(remaining: usize, parts_left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if parts_left == 1 {
                prefix.push(remaining);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for first in 0..=remaining {
                prefix.push(first);
                fill(remaining - first, parts_left - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut items = Vec::new();
        if m == 0 {
            if n == 0 {
                items.push(Vec::new());
            }
        } else {
            fill(n, m, &mut Vec::with_capacity(m), &mut items);
        }
        Self { n, m, items }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.items.iter().map(Vec::as_slice)
    }
}

/// `(u × v)_n = Σ_k C(n,k) u_k v_{n-k}`, truncated at the smaller order.
pub fn binomial_convolve(u: &EgfSequence, v: &EgfSequence) -> EgfSequence {
    let order = u.order().min(v.order());
    let terms = (0..=order)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    ExactRational::from(binomial(n, k)) * (&u.terms[k] * &v.terms[n - k])
                })
                .sum()
        })
        .collect();
    EgfSequence { terms }
}

/// `e = (1, 0, ..., 0)` with `order + 1` terms.
pub fn convolve_identity(order: usize) -> EgfSequence {
    let mut terms = vec![ExactRational::zero(); order + 1];
    terms[0] = ExactRational::one();
    EgfSequence { terms }
}

/// The convolution inverse, from `v_0 = 1/u_0` and
/// `v_n = -(1/u_0) Σ_{k=1}^n C(n,k) u_k v_{n-k}`.
pub fn convolve_inverse(u: &EgfSequence) -> Result<EgfSequence> {
    if !u.is_in_group() {
        return Err(Error::NotInGroup);
    }
    let inv_lead = u.terms[0].recip()?;
    let mut terms: Vec<ExactRational> = Vec::with_capacity(u.terms.len());
    terms.push(inv_lead.clone());
    for n in 1..=u.order() {
        let acc: ExactRational = (1..=n)
            .map(|k| ExactRational::from(binomial(n, k)) * (&u.terms[k] * &terms[n - k]))
            .sum();
        terms.push(-(acc * &inv_lead));
    }
    Ok(EgfSequence { terms })
}

/// `u(l) = (u_l, u_{l+1}, ..., u_N)` at order `N - l`.
pub fn shift(u: &EgfSequence, l: usize) -> Result<EgfSequence> {
    if l > u.order() {
        return Err(Error::ShiftBeyondOrder {
            shift: l,
            order: u.order(),
        });
    }
    Ok(EgfSequence {
        terms: u.terms[l..].to_vec(),
    })
}

/// `u × ... × u` (`m` factors) by iterated pairwise convolution; `m = 0`
/// gives the identity.
pub fn convolve_power(u: &EgfSequence, m: usize) -> EgfSequence {
    if m == 0 {
        return convolve_identity(u.order());
    }
    let mut acc = u.clone();
    for _ in 1..m {
        acc = binomial_convolve(&acc, u);
    }
    acc
}

/// Term `n` of the `m`-fold convolution by direct summation over all
/// compositions `j_1 + ... + j_m = n` weighted by multinomial coefficients.
pub fn multinomial_expand(u: &EgfSequence, m: usize, n: usize) -> Result<ExactRational> {
    if n > u.order() {
        return Err(Error::OrderExceeded {
            index: n,
            order: u.order(),
        });
    }
    let mut total = ExactRational::zero();
    for parts in CompositionList::new(n, m).iter() {
        let coeff = ExactRational::from(multinomial(n, parts)?);
        let prod: ExactRational = parts.iter().map(|&j| u.terms[j].clone()).product();
        total += coeff * prod;
    }
    Ok(total)
}

/// Number of terms the brute-force double sum of [`leibniz_split`] visits.
pub fn leibniz_term_count(m: usize, mu: usize, n: usize) -> BigInt {
    if m == 0 {
        return BigInt::from((mu == 0 && n == 0) as u8);
    }
    BigInt::from(binomial(mu + m - 1, m - 1) * binomial(n + m - 1, m - 1))
}

/// The Leibniz-rule double sum
/// `Σ_{l ⊢ μ} C(μ; l) Σ_{k ⊢ n} C(n; k) u_{k_1+l_1} ... u_{k_m+l_m}`,
/// evaluated by brute force over both composition lists.
///
/// The terms are brought to a common denominator first so the inner loops
/// run on integers; the sum itself is still taken term by term.
pub fn leibniz_split(u: &EgfSequence, m: usize, mu: usize, n: usize) -> Result<ExactRational> {
    let top = mu + n;
    if top > u.order() {
        return Err(Error::OrderExceeded {
            index: top,
            order: u.order(),
        });
    }
    let window = &u.terms[..=top];
    let denom = window
        .iter()
        .fold(BigInt::one(), |acc, t| acc.lcm(t.denom()));
    let nums: Vec<BigInt> = window
        .iter()
        .map(|t| t.numer() * (&denom / t.denom()))
        .collect();

    let outer = CompositionList::new(mu, m);
    let inner = CompositionList::new(n, m);
    let inner_weights = inner
        .iter()
        .map(|k| multinomial(n, k).map(BigInt::from))
        .collect::<Result<Vec<_>>>()?;

    let mut total = BigInt::zero();
    for l in outer.iter() {
        let mut inner_sum = BigInt::zero();
        for (k, weight) in inner.iter().zip(&inner_weights) {
            let mut term = weight.clone();
            for (ki, li) in k.iter().zip(l) {
                term *= &nums[ki + li];
            }
            inner_sum += term;
        }
        total += BigInt::from(multinomial(mu, l)?) * inner_sum;
    }
    ExactRational::new(total, num_traits::pow(denom, m))
}

/// EGF product; identical to [`binomial_convolve`] on the term lists.
pub fn series_product(u: &EgfSequence, v: &EgfSequence) -> EgfSequence {
    binomial_convolve(u, v)
}

/// `l`-th derivative of the EGF; its terms are those of [`shift`]`(u, l)`.
pub fn series_derivative(u: &EgfSequence, l: usize) -> Result<EgfSequence> {
    shift(u, l)
}

/// Terms `b_n = (-1)^n n! / (n+1)` of `log(1+z)/z`, up to `order`.
pub fn series_log1p_over_z(order: usize) -> EgfSequence {
    let terms = (0..=order)
        .map(|n| {
            let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            ExactRational::new(sign * BigInt::from(factorial(n)), n + 1).expect("n + 1 > 0")
        })
        .collect();
    EgfSequence { terms }
}
