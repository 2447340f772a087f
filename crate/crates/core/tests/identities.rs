//! Cross-module identity checks over finite boxes.

use cauchy_conv::combinatorics::{cauchy_number, cauchy_numbers, StirlingTable};
use cauchy_conv::convolution::{
    binomial_convolve, convolve_power, multinomial_expand, series_derivative, series_log1p_over_z,
    shift, EgfSequence,
};
use cauchy_conv::irwinhall::{factorial_moment, irwin_hall_density, density_eval};
use cauchy_conv::verify::{convolution_power_matches_moments, sweep, SweepOptions};
use cauchy_conv::ExactRational;

fn cauchy(order: usize) -> EgfSequence {
    EgfSequence::new(cauchy_numbers(order, &StirlingTable::build(order)).unwrap()).unwrap()
}

#[test]
fn first_column_reproduces_cauchy_numbers() {
    let table = StirlingTable::build(1 + 5 + 7);
    let reports = sweep(1, 5, 7, &table, SweepOptions::default()).unwrap();
    for r in reports {
        let c = cauchy_number(r.mu + r.n, &table).unwrap();
        assert_eq!(r.lhs_double_sum.as_ref(), Some(&c));
        assert_eq!(r.lhs_single_sum, c);
        assert_eq!(r.integral_value, c);
        assert_eq!(r.stirling_sum_value, c);
    }
}

#[test]
fn mu_zero_subsweep_stands_alone() {
    let table = StirlingTable::build(6 + 10);
    let reports = sweep(6, 0, 10, &table, SweepOptions::default()).unwrap();
    assert_eq!(reports.len(), 66);
    assert!(reports.iter().all(|r| r.is_mu_zero_case() && r.all_equal));
}

#[test]
fn worked_values() {
    let table = StirlingTable::build(12);
    let rep = cauchy_conv::verify::verify_identity(4, 4, 6, &table);
    assert!(rep.is_err(), "bound 12 < 14");
    let table = StirlingTable::build(14);
    let rep = cauchy_conv::verify::verify_identity(4, 4, 6, &table).unwrap();
    assert!(rep.all_equal);
    assert_eq!(rep.value().unwrap(), &"41065/66".parse::<ExactRational>().unwrap());
}

#[test]
fn convolution_powers_equal_factorial_moment_sequence() {
    let table = StirlingTable::build(16);
    for m in 1..=6 {
        assert!(convolution_power_matches_moments(m, 16, &table).unwrap(), "m={m}");
    }
}

#[test]
fn shifted_cauchy_sequences() {
    let c = cauchy(10);
    for l in 0..=10 {
        let s = shift(&c, l).unwrap();
        assert_eq!(s, series_derivative(&c, l).unwrap());
        assert_eq!(s.terms()[0], c.terms()[l]);
    }
}

#[test]
fn egf_reciprocal_identity_to_order_twenty() {
    let c = cauchy(20);
    let prod = binomial_convolve(&c, &series_log1p_over_z(20));
    assert_eq!(prod.terms()[0], ExactRational::one());
    assert!(prod.terms()[1..].iter().all(ExactRational::is_zero));
}

#[test]
fn convolution_power_against_expansion_for_cauchy() {
    let c = cauchy(8);
    for m in 1..=4 {
        let pow = convolve_power(&c, m);
        for n in 0..=8 {
            assert_eq!(pow.terms()[n], multinomial_expand(&c, m, n).unwrap());
        }
    }
}

#[test]
fn density_and_moments_agree_for_two_summands() {
    let table = StirlingTable::build(4);
    let rho = irwin_hall_density(2).unwrap();
    // Triangular density: θ on [0,1], 2−θ on [1,2].
    for (p, q) in [(1, 4), (3, 4), (5, 4), (7, 4)] {
        let t = ExactRational::new(p, q).unwrap();
        let expected = if p < q { t.clone() } else { &ExactRational::from(2) - &t };
        assert_eq!(density_eval(&rho, &t).unwrap(), expected);
    }
    assert_eq!(factorial_moment(2, 1, &table).unwrap(), ExactRational::one());
}
