import pytest
from mpmath import mp, mpc, mpf

from oscint.exceptions import DomainError, SeriesTooShortError
from oscint.integrands import Integrand, integrand_catalog
from oscint.methods import TaylorSeries, series_eval, taylor_coefficients
from oscint.numerics import PrecisionContext


def exponential() -> Integrand:
    return Integrand(lambda x: mp.exp(-x), name="exp(-x)")


def test_exponential_coefficients():
    ctx = PrecisionContext(50)
    f = exponential()
    s = taylor_coefficients(f, mpc(0, 1), 10, ctx)
    assert s.order == 10 and len(s) == 11
    with ctx.workdps():
        for n, c in enumerate(s.coefficients):
            expected = mpf(1) / 2 * mpc(0, mpf(1) / 2) ** n
            assert abs(c - expected) <= ctx.eps(5) * abs(expected), n


def test_one_evaluation_per_node():
    ctx = PrecisionContext(50)
    f = exponential()
    s = taylor_coefficients(f, mpc(0, 1), 30, ctx)
    assert f.eval_count == len(s.rule)

    g = exponential()
    s0 = taylor_coefficients(g, mpc(0, 1), 2, ctx)
    print(f"{len(s.rule)} nodes for c_0..c_30, {len(s0.rule)} nodes for c_0..c_2")
    assert g.eval_count == len(s0.rule)


def test_bessel_leading_coefficient():
    ctx = PrecisionContext(50)
    s = taylor_coefficients(integrand_catalog.get(3).integrand, mpc(0, 1), 4, ctx)
    with ctx.workdps():
        assert abs(s.coefficients[0] - 1 / mp.sqrt(2)) <= ctx.eps(5)


def test_series_eval():
    ctx = PrecisionContext(50)
    s = taylor_coefficients(exponential(), mpc(0, 1), 60, ctx)
    with ctx.workdps():
        assert series_eval(s, s.center) == s.coefficients[0]

        zeta = s.center + mpc(0, "0.1")
        exact = 1 / (1 - mpc(0, 1) * zeta)
        assert abs(series_eval(s, zeta) - exact) <= ctx.eps(5)

        short = TaylorSeries(s.center, s.coefficients[:5])
        z = zeta - s.center
        difference = series_eval(short, zeta) - series_eval(short, zeta, terms=4)
        assert abs(difference - s.coefficients[4] * z**4) <= ctx.eps(10) * abs(difference)


def test_linearity():
    ctx = PrecisionContext(40)
    f = integrand_catalog.get(3).integrand
    g = integrand_catalog.get(4).integrand
    alpha, beta = mpf(2), mpf("-0.5")
    h = f.combine(alpha, g, beta)
    sf = taylor_coefficients(f, mpc(0, 1), 20, ctx)
    sg = taylor_coefficients(g, mpc(0, 1), 20, ctx)
    sh = taylor_coefficients(h, mpc(0, 1), 20, ctx)
    with ctx.workdps():
        for a, b, c in zip(sf.coefficients, sg.coefficients, sh.coefficients):
            assert abs(alpha * a + beta * b - c) <= ctx.eps(3) * max(abs(c), abs(a))


def test_catalog_coefficients_stay_bounded():
    ctx = PrecisionContext(30)
    for id in integrand_catalog.ids():
        s = taylor_coefficients(integrand_catalog.get(id).integrand, mpc(0, 1), 40, ctx)
        assert max(abs(c) for c in s.coefficients) < 100, id


def test_rule_is_frozen_on_leading_coefficient():
    ctx = PrecisionContext(30)
    f = integrand_catalog.get(3).integrand
    s = taylor_coefficients(f, mpc(0, 1), 100, ctx)
    print(f"J0, c_0..c_100: {len(s.rule)} nodes, h = {mp.nstr(s.rule.h, 3)}")
    assert f.eval_count == len(s.rule) <= 2000
    with ctx.workdps():
        assert abs(s.coefficients[0] - 1 / mp.sqrt(2)) <= ctx.eps(5)


def test_growth_warning(caplog):
    from oscint.methods.defining_function import _check_growth

    with caplog.at_level("WARNING"):
        _check_growth([mpc(1), mpc("0.5"), mpc(20)])
    assert "exceeds 10" in caplog.text


def test_invalid_arguments():
    ctx = PrecisionContext(30)
    with pytest.raises(DomainError):
        taylor_coefficients(exponential(), mpc(1, 0), 10, ctx)
    with pytest.raises(SeriesTooShortError):
        taylor_coefficients(exponential(), mpc(0, 1), 1, ctx)
    with pytest.raises(DomainError):
        TaylorSeries(mpc(0, -1), (mpc(1), mpc(1), mpc(1)))
    with pytest.raises(SeriesTooShortError):
        TaylorSeries(mpc(0, 1), (mpc(1), mpc(1)))


if __name__ == "__main__":
    test_exponential_coefficients()
    test_one_evaluation_per_node()
    test_bessel_leading_coefficient()
    test_series_eval()
    test_linearity()
    test_rule_is_frozen_on_leading_coefficient()
