//! Exact three- and four-way checks of the Cauchy convolution identity, plus a
//! seeded Monte Carlo cross-check on sums of uniforms.
//!
//! For a cell `(m, μ, n)` with `p = μ + n` the values compared are
//!
//! * the Leibniz double sum over compositions of `μ` and `n`,
//! * term `p` of the `m`-fold binomial convolution of the Cauchy sequence,
//! * `∫_0^m (θ)_p ρ_m(θ) dθ` by piecewise polynomial integration,
//! * `Σ_k s(p,k) S(m+k,m) / C(m+k,m)`.
//!
//! The four paths share nothing but the Stirling table.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinatorics::{cauchy_numbers, StirlingTable};
use crate::convolution::{convolve_power, leibniz_split, leibniz_term_count, EgfSequence};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, ExactRational};
use crate::irwinhall::factorial_moment;

/// Brute-force double sums with more terms than this are skipped by default.
pub const DEFAULT_DOUBLE_SUM_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub m: usize,
    pub mu: usize,
    pub n: usize,
    /// `None` when the double sum was skipped for exceeding the budget.
    pub lhs_double_sum: Option<ExactRational>,
    pub lhs_single_sum: ExactRational,
    pub integral_value: ExactRational,
    pub stirling_sum_value: ExactRational,
    pub all_equal: bool,
}

impl IdentityReport {
    pub fn double_sum_skipped(&self) -> bool {
        self.lhs_double_sum.is_none()
    }

    /// `μ = 0`: the spline-integral equality for plain convolution powers.
    pub fn is_mu_zero_case(&self) -> bool {
        self.mu == 0
    }

    /// The single common value when every computed path agrees.
    pub fn value(&self) -> Option<&ExactRational> {
        self.all_equal.then_some(&self.lhs_single_sum)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloReport {
    pub m: usize,
    pub mu: usize,
    pub n: usize,
    pub samples: u64,
    pub estimate: f64,
    pub standard_error: f64,
    pub exact_value: ExactRational,
    pub z_score: f64,
    /// Master seed as supplied; the stream itself uses [`cell_seed`].
    pub seed: u64,
}

/// Stirling table bound needed by [`verify_identity`] for one cell.
pub fn required_bound(m: usize, mu: usize, n: usize) -> usize {
    m + mu + n
}

/// `Σ_{k=0}^{p} s(p,k) S(m+k,m) / C(m+k,m)`.
pub fn stirling_sum_rhs(p: usize, m: usize, table: &StirlingTable) -> Result<ExactRational> {
    if m + p > table.bound() {
        return Err(Error::BoundExceeded {
            requested: m + p,
            bound: table.bound(),
        });
    }
    let row = table.first_kind_row(p)?;
    let mut total = ExactRational::zero();
    for (k, s) in row.iter().enumerate() {
        let moment = ExactRational::new(
            table.second_kind(m + k, m)?,
            BigInt::from(binomial(m + k, m)),
        )?;
        total += ExactRational::from(s.clone()) * moment;
    }
    Ok(total)
}

/// All four values for one cell, with no budget on the double sum.
pub fn verify_identity(m: usize, mu: usize, n: usize, table: &StirlingTable) -> Result<IdentityReport> {
    verify_identity_with_budget(m, mu, n, table, None)
}

/// As [`verify_identity`], skipping the double sum when its term count
/// exceeds `budget`.
pub fn verify_identity_with_budget(
    m: usize,
    mu: usize,
    n: usize,
    table: &StirlingTable,
    budget: Option<u64>,
) -> Result<IdentityReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let need = required_bound(m, mu, n);
    if need > table.bound() {
        return Err(Error::BoundExceeded {
            requested: need,
            bound: table.bound(),
        });
    }
    let p = mu + n;
    let cauchy = EgfSequence::new(cauchy_numbers(p, table)?)?;

    let skip = budget.is_some_and(|b| leibniz_term_count(m, mu, n) > BigInt::from(b));
    let lhs_double_sum = if skip {
        None
    } else {
        Some(leibniz_split(&cauchy, m, mu, n)?)
    };
    let lhs_single_sum = convolve_power(&cauchy, m).term(p)?.clone();
    let integral_value = factorial_moment(m, p, table)?;
    let stirling_sum_value = stirling_sum_rhs(p, m, table)?;

    let all_equal = lhs_double_sum.as_ref().is_none_or(|d| *d == lhs_single_sum)
        && lhs_single_sum == integral_value
        && integral_value == stirling_sum_value;
    Ok(IdentityReport {
        m,
        mu,
        n,
        lhs_double_sum,
        lhs_single_sum,
        integral_value,
        stirling_sum_value,
        all_equal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    /// `None` computes every double sum.
    pub double_sum_budget: Option<u64>,
    /// Worker threads for cell evaluation; 1 runs on the calling thread.
    pub parallelism: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            double_sum_budget: Some(DEFAULT_DOUBLE_SUM_BUDGET),
            parallelism: 1,
        }
    }
}

/// Cells `1 <= m <= m_max`, `0 <= μ <= mu_max`, `0 <= n <= n_max`, ordered by
/// `m`, then `μ`, then `n`.
pub fn sweep_cells(m_max: usize, mu_max: usize, n_max: usize) -> Vec<(usize, usize, usize)> {
    let mut cells = Vec::new();
    for m in 1..=m_max {
        for mu in 0..=mu_max {
            for n in 0..=n_max {
                cells.push((m, mu, n));
            }
        }
    }
    cells
}

/// Reports for every cell of the box, in [`sweep_cells`] order regardless of
/// how many workers ran. The first failing cell aborts the sweep.
pub fn sweep(
    m_max: usize,
    mu_max: usize,
    n_max: usize,
    table: &StirlingTable,
    options: SweepOptions,
) -> Result<Vec<IdentityReport>> {
    let cells = sweep_cells(m_max, mu_max, n_max);
    let run = |&(m, mu, n): &(usize, usize, usize)| {
        verify_identity_with_budget(m, mu, n, table, options.double_sum_budget).map_err(|e| {
            Error::Cell {
                m,
                mu,
                n,
                source: Box::new(e),
            }
        })
    };
    if options.parallelism <= 1 {
        return cells.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.parallelism)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| cells.par_iter().map(run).collect())
}

/// `m`-fold convolution of the Cauchy sequence against the factorial moments
/// `E (S_m)_p`, for every `p <= order`.
pub fn convolution_power_matches_moments(m: usize, order: usize, table: &StirlingTable) -> Result<bool> {
    let cauchy = EgfSequence::new(cauchy_numbers(order, table)?)?;
    let power = convolve_power(&cauchy, m);
    for (p, term) in power.terms().iter().enumerate() {
        if *term != factorial_moment(m, p, table)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-cell stream seed, a SplitMix64 mix of the master seed and the cell.
pub fn cell_seed(master: u64, m: usize, mu: usize, n: usize) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    [m as u64, mu as u64, n as u64]
        .into_iter()
        .fold(mix(master), |acc, x| mix(acc ^ mix(x)))
}

/// Samples `S_m = U_1 + ... + U_m` from a ChaCha8 stream seeded with
/// [`cell_seed`], averages `(S_m)_{μ+n}` and compares it with the exact
/// factorial moment.
pub fn monte_carlo_check(m: usize, mu: usize, n: usize, samples: u64, seed: u64) -> Result<MonteCarloReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("at least two samples are required".into()));
    }
    let p = mu + n;
    let table = StirlingTable::build(p);
    let exact_value = factorial_moment(m, p, &table)?;

    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(seed, m, mu, n));
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for i in 0..samples {
        let s: f64 = (0..m).map(|_| rng.random::<f64>()).sum();
        let x: f64 = (0..p).map(|j| s - j as f64).product();
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
    }
    let variance = m2 / (samples - 1) as f64;
    let standard_error = (variance / samples as f64).sqrt();
    let diff = mean - exact_value.to_f64();
    let z_score = if standard_error > 0.0 {
        diff / standard_error
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    };
    Ok(MonteCarloReport {
        m,
        mu,
        n,
        samples,
        estimate: mean,
        standard_error,
        exact_value,
        z_score,
        seed,
    })
}
