"""Reproduction of the catalog results tables at 100 digits.

These runs take minutes; the pipeline results are cached in ``catalog_runs`` and
shared between the tests below.
"""

import pytest
from mpmath import mp, mpf

import catalog_runs
from oscint.cli import RunConfig
from oscint.cli.cli import sweep
from oscint.methods import cf_eval, convergent_taylor_coefficients
from oscint.numerics import PrecisionContext

CATALOG = list(range(1, 9))
ALTERNATING = [2, 3, 4, 5]


@pytest.mark.parametrize("id", CATALOG)
def test_hyperfunction_table(id):
    run = catalog_runs.hyperfunction(id)
    result = run.result
    error = catalog_runs.relative_error(id, result.value)
    print(
        f"({id}) relative error {mp.nstr(error, 2)}, {result.eval_count} evaluations, "
        f"k = {result.k_used}"
    )
    assert error <= mpf("1e-20")
    assert result.eval_count <= 2000
    assert result.eval_count == len(run.series.rule)
    assert result.imag_residue <= 10 * result.err_estimate


@pytest.mark.parametrize("id", ALTERNATING)
def test_euler_table(id):
    run = catalog_runs.euler(id)
    error = catalog_runs.relative_error(id, run.result.value)
    print(f"({id}) Euler relative error {mp.nstr(error, 2)}, scan {run.result.scan_count}")
    assert error <= mpf("1e-20")
    assert run.result.eval_count == 5000


@pytest.mark.parametrize("id", ALTERNATING)
def test_hyperfunction_beats_euler(id):
    hyperfunction_error = catalog_runs.relative_error(id, catalog_runs.hyperfunction(id).result.value)
    euler_error = catalog_runs.relative_error(id, catalog_runs.euler(id).result.value)
    assert hyperfunction_error <= mpf("1e-5") * euler_error


@pytest.mark.parametrize("id", ALTERNATING)
def test_euler_beats_partial_sum(id):
    for panels in (10, 20, 50):
        run = catalog_runs.euler(id, panels)
        euler_error = catalog_runs.relative_error(id, run.result.value)
        partial_error = catalog_runs.relative_error(id, run.partial_sum)
        assert euler_error < partial_error, panels


@pytest.mark.parametrize("id", CATALOG)
def test_convergent_correspondence(id):
    run = catalog_runs.hyperfunction(id)
    ctx = PrecisionContext(catalog_runs.TABLE_DIGITS)
    coefficients = run.series.coefficients
    with ctx.workdps():
        tol = mpf(10) ** (-ctx.working_digits + 10)
    for k in range(1, 9):
        moments = convergent_taylor_coefficients(run.cf, k, k + 1, ctx=ctx)
        with ctx.workdps():
            scale = max(abs(c) for c in coefficients[: k + 1])
            for n in range(k + 1):
                assert abs(moments[n] - coefficients[n]) <= tol * scale, (k, n)


@pytest.mark.parametrize("id", CATALOG)
def test_rescaling_invariance(id):
    run = catalog_runs.hyperfunction(id)
    ctx = PrecisionContext(catalog_runs.TABLE_DIGITS)
    scaled, _, k_scaled = cf_eval(run.cf, 0, ctx=ctx)
    plain, _, k_plain = cf_eval(run.cf, 0, ctx=ctx, rescale=False)
    assert k_scaled == k_plain == run.result.k_used
    with ctx.workdps():
        assert abs(scaled - plain) <= ctx.eps(-10) * abs(scaled)


def test_precision_instability():
    low = catalog_runs.hyperfunction(3, digits=30)
    high = catalog_runs.hyperfunction(3)
    low_error = catalog_runs.relative_error(3, low.result.value, 30)
    high_error = catalog_runs.relative_error(3, high.result.value)
    print(f"J0: {mp.nstr(low_error, 2)} at 30 digits, {mp.nstr(high_error, 2)} at 100 digits")
    assert abs(low.result.value - high.result.value) > mpf("1e-25")
    assert low_error >= mpf("1e10") * high_error
    assert high_error <= mpf("1e-30")


def test_digits_sweep():
    rows = sweep(RunConfig(integrals=(3,)), "digits", ["30", "100"])
    assert [row.sweep_value for row in rows] == ["30", "100"]
    assert all(row.ok for row in rows)
    errors = [mpf(row.relative_error) for row in rows]
    assert errors[0] >= mpf("1e10") * errors[1]


def test_coefficient_sweep():
    values = ["20", "40", "60", "80", "100"]
    rows = sweep(RunConfig(integrals=(4,)), "N", values)
    assert len(rows) == len(values)
    errors = [mpf(row.relative_error) for row in rows]
    print([mp.nstr(e, 2) for e in errors])
    assert errors[-1] <= errors[0]
    assert all(row.eval_count <= 2000 for row in rows)


if __name__ == "__main__":
    for id in CATALOG:
        test_hyperfunction_table(id)
    for id in ALTERNATING:
        test_euler_table(id)
