import pytest
from mpmath import mp, mpf

from oscint.exceptions import PartitionError
from oscint.integrands import Integrand, integrand_catalog
from oscint.methods import (
    EulerConfig,
    EulerMethod,
    euler_run,
    euler_sum,
    euler_value,
    find_partition,
    merge_nonalternating,
)
from oscint.methods.euler_baseline import Partition
from oscint.numerics import PrecisionContext, relative_difference
from oscint.quadrature import gauss_legendre


def test_euler_sum_examples():
    with mp.workdps(60):
        assert euler_sum([1] * 12) == mpf(1) / 2

        geometric = [mpf(2) ** -k for k in range(60)]
        assert abs(euler_sum(geometric) - mpf(2) / 3) <= mpf(10) ** -30
        for direct in (1, 5, 10):
            assert abs(euler_sum(geometric, direct) - mpf(2) / 3) <= mpf(10) ** -30

        harmonic = [mpf(1) / (k + 1) for k in range(60)]
        assert abs(euler_sum(harmonic) - mp.ln2) <= mpf(10) ** -18
        # plain partial sum of the same terms is far off
        partial = mp.fsum((-1) ** k * t for k, t in enumerate(harmonic))
        assert abs(partial - mp.ln2) > mpf(10) ** -3

    with pytest.raises(ValueError):
        euler_sum([1, 2, 3], direct_terms=4)


def test_merge_nonalternating(caplog):
    with caplog.at_level("WARNING"):
        merged = merge_nonalternating([mpf(1), mpf(2), mpf(-1), mpf(3)], "g")
    assert merged == [3, -1, 3]
    assert "merging" in caplog.text
    assert merge_nonalternating([mpf(1), mpf(-1), mpf(1)]) == [1, -1, 1]


def test_cosine_partition():
    f = Integrand(mp.cos, name="cos")
    partition = find_partition(f, 6)
    assert len(partition) == 6
    assert partition.points[0] == 0
    assert partition.scan_count == f.eval_count > 0
    with mp.workdps(40):
        for k, a in enumerate(partition.points[1:], start=1):
            assert abs(a - (2 * k - 1) * mp.pi / 2) <= mpf(10) ** -28


def test_bessel_partition():
    f = integrand_catalog.get(3).integrand
    rule = gauss_legendre(20, PrecisionContext(30))
    partition = find_partition(f, 10, ctx=PrecisionContext(30), rule=rule)
    assert mp.nstr(partition.points[1], 10) == "2.404825558"
    assert mp.nstr(partition.points[2], 10) == "5.52007811"


def test_partition_errors():
    f = Integrand(lambda x: mp.exp(-x), name="exp(-x)")
    with pytest.raises(PartitionError):
        find_partition(f, 4, scan_limit=20)
    with pytest.raises(ValueError):
        find_partition(f, 3)
    with pytest.raises(ValueError):
        Partition((mpf(1), mpf(2)))
    with pytest.raises(ValueError):
        Partition((mpf(0), mpf(2), mpf(2)))


@pytest.mark.parametrize("id", range(1, 9))
def test_catalog_partitions(id):
    ctx = PrecisionContext(30)
    K = 20
    config = EulerConfig(panels=K, gl_points=20, precision=ctx)
    run = euler_run(integrand_catalog.get(id).integrand, config)
    points = run.partition.points
    assert len(run.partition) == K and points[0] == 0
    assert all(b > a for a, b in zip(points, points[1:]))

    merged = merge_nonalternating(list(run.panel_values))
    assert all(a * b < 0 for a, b in zip(merged, merged[1:])), id
    assert run.result.panels_used == len(merged)
    if id != 1:
        # (1) can produce equal sign neighbours that need merging
        assert len(merged) == K


@pytest.mark.parametrize("id", [3, 4])
def test_euler_beats_partial_sum(id):
    ctx = PrecisionContext(30)
    reference = integrand_catalog.reference_value(id, ctx)
    for K in (10, 20):
        f = integrand_catalog.get(id).integrand
        run = euler_run(f, EulerConfig(panels=K, gl_points=40, precision=ctx))
        euler_error = relative_difference(run.result.value, reference)
        partial_error = relative_difference(run.partial_sum, reference)
        print(f"({id}) K = {K}: Euler {mp.nstr(euler_error, 3)}, partial {mp.nstr(partial_error, 3)}")
        assert euler_error < partial_error
        assert run.result.eval_count == K * 40
        assert run.result.panels_used == K
        assert run.result.scan_count == run.partition.scan_count
        assert f.eval_count == run.result.eval_count + run.result.scan_count
        assert run.leading_sign == 1


def test_negative_leading_panel():
    # log(x) cos(x) changes sign at x = 1 before the first zero of cos
    ctx = PrecisionContext(30)
    f = integrand_catalog.get(2).integrand
    run = euler_run(f, EulerConfig(panels=20, gl_points=60, precision=ctx))
    assert float(run.partition.points[1]) == pytest.approx(1.0, abs=1e-12)
    assert run.leading_sign == -1
    assert run.panel_values[0] < 0


def test_singular_first_panel():
    ctx = PrecisionContext(30)
    f = integrand_catalog.get(2).integrand
    result = EulerMethod(EulerConfig(panels=20, gl_points=60, precision=ctx)).integrate(f)
    error = relative_difference(result.value, integrand_catalog.reference_value(2, ctx))
    print(f"log(x)cos(x), K = 20: relative error {mp.nstr(error, 3)}")
    assert error < mpf("1e-6")
    assert result.method == "euler"


def test_euler_value_with_rule():
    ctx = PrecisionContext(30)
    rule = gauss_legendre(30, ctx)
    result = euler_value(integrand_catalog.get(5).integrand, 12, rule, ctx)
    assert result.eval_count == 12 * 30
    assert result.err_estimate >= 0


def test_config_validation():
    with pytest.raises(ValueError):
        EulerConfig(panels=3)
    with pytest.raises(ValueError):
        EulerConfig(gl_points=0)
    with pytest.raises(ValueError):
        EulerConfig(panels=10, direct_terms=10)


if __name__ == "__main__":
    test_euler_sum_examples()
    test_cosine_partition()
    test_bessel_partition()
    test_catalog_partitions(1)
    test_euler_beats_partial_sum(3)
    test_negative_leading_panel()
    test_singular_first_panel()
