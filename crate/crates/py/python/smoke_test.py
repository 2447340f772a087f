"""Smoke test for the cauchy_conv_py extension module.

Run after `maturin develop` (or with the built shared library on PYTHONPATH
as cauchy_conv_py.so):

    python crates/py/python/smoke_test.py
"""

from fractions import Fraction

import cauchy_conv_py as cc


def main() -> None:
    assert cc.cauchy_numbers(4) == [1, Fraction(1, 2), Fraction(-1, 6), Fraction(1, 4), Fraction(-19, 30)]

    table = cc.StirlingTable(6)
    assert table.first_kind(3, 2) == -3
    assert table.second_kind(4, 2) == 7
    assert table.descending_factorial_poly(4) == [0, -6, 11, -6, 1]
    assert cc.binomial(10, 5) == 252
    assert cc.multinomial(4, [2, 1, 1]) == 12

    c = cc.EgfSequence.cauchy(20)
    b = cc.EgfSequence.log1p_over_z(20)
    assert c.convolve(b) == cc.EgfSequence.identity(20)
    assert c.inverse() == b
    assert (c * c).terms[2] == Fraction(1, 6)
    assert c.leibniz_split(2, 1, 0) == 1
    assert c.shift(1).terms[0] == Fraction(1, 2)

    rho = cc.IrwinHallDensity(3)
    assert rho(Fraction(3, 2)) == Fraction(3, 4)
    assert rho("3/2") == Fraction(3, 4)
    assert rho.integrate([1]) == 1
    try:
        rho(4)
    except cc.CauchyConvError:
        pass
    else:
        raise AssertionError("evaluation outside [0, m] must fail")

    assert cc.factorial_moment(2, 2) == Fraction(1, 6)
    assert cc.raw_moment(2, 2) == Fraction(7, 6)
    assert cc.stirling_sum_rhs(2, 2) == Fraction(1, 6)

    rep = cc.verify_identity(1, 0, 4)
    assert rep.all_equal and set(rep.values) == {Fraction(-19, 30)}
    reports = cc.sweep(4, 4, 6)
    assert len(reports) == 140 and all(r.all_equal for r in reports)

    mc = cc.monte_carlo_check(2, 0, 1, 100_000, 7)
    assert abs(mc.z_score) <= 5 and mc.exact_value == 1
    assert cc.monte_carlo_check(2, 0, 1, 100_000, 7).estimate == mc.estimate

    print("cauchy_conv_py smoke test passed")


if __name__ == "__main__":
    main()
