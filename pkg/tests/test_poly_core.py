import itertools
import math
import numpy as np
import pytest
from numpy.polynomial import hermite_e
from rootflow import poly_core
from rootflow.model import RootSet, MonicPoly, HermiteKind
from rootflow.exceptions import ArgumentError, NumericalFailure, RootRecoveryError


def test_esym_small_sets():
    table = poly_core.elementary_symmetric_all(RootSet([1.0, 2.0, 3.0]), 2)
    assert table.e.tolist() == [1.0, 6.0, 11.0]

    assert poly_core.elementary_symmetric_all(RootSet(np.array([])), 0).e.tolist() == [1.0]

    table = poly_core.elementary_symmetric_all(RootSet([1.0, 2.0]), 3)
    assert table.e.tolist() == [1.0, 3.0, 2.0, 0.0]


def test_esym_matches_subset_sums():
    x = np.sort(np.random.default_rng(3).uniform(-2.0, 2.0, 9))
    e = poly_core.esym_compensated(x, 5)
    for k in range(1, 6):
        expected = math.fsum(math.prod(c) for c in itertools.combinations(x.tolist(), k))
        assert e[k] == pytest.approx(expected, rel=1e-12, abs=1e-10)


def test_esym_batches_rows_independently():
    x = np.random.default_rng(5).normal(size=(4, 7))
    batch = poly_core.esym_compensated(x, 4)
    for row in range(4):
        np.testing.assert_array_equal(batch[row], poly_core.esym_compensated(x[row], 4))


def test_esym_rejects_negative_order():
    with pytest.raises(ArgumentError):
        poly_core.elementary_symmetric_all(RootSet([1.0]), -1)


def test_power_sum():
    assert poly_core.power_sum(RootSet([1.0, 2.0, 3.0]), 2) == 14.0
    assert poly_core.power_sum(RootSet([-1.0, 1.0]), 3) == 0.0
    assert poly_core.power_sum(RootSet([2.0]), 5) == 32.0
    with pytest.raises(ArgumentError):
        poly_core.power_sum(RootSet([2.0]), 0)


def test_power_sums_from_esym():
    assert poly_core.power_sums_from_esym(MonicPoly([1.0, 3.0, 2.0]), 2) == [3.0, 5.0]
    assert poly_core.power_sums_from_esym(MonicPoly([1.0, 0.0, 0.0, 0.0]), 4) == [0.0] * 4
    assert poly_core.power_sums_from_esym(MonicPoly([1.0, 1.5]), 3) == [1.5, 2.25, 3.375]


def test_power_sums_from_esym_match_direct_sums():
    roots = RootSet([-1.5, -0.25, 0.5, 2.0, 3.0])
    poly = MonicPoly(poly_core.elementary_symmetric_all(roots, roots.n).e)
    q = poly_core.power_sums_from_esym(poly, 7)
    for m, value in enumerate(q, start=1):
        assert value == pytest.approx(poly_core.power_sum(roots, m), rel=1e-10)


def test_derivative_scaling():
    np.testing.assert_allclose(poly_core.derivative_scaling(5, 2), [1.0, 0.4, 0.1], rtol=1e-15)
    np.testing.assert_array_equal(poly_core.derivative_scaling(7, 0), [1.0])


def test_scaled_derivative_coeffs():
    poly = poly_core.scaled_derivative_coeffs(RootSet([-1.0, 1.0]), 1)
    assert poly.f.tolist() == [1.0, 0.0]

    poly = poly_core.scaled_derivative_coeffs(RootSet([0.0, 1.0, 2.0]), 1)
    assert poly.f[1] == pytest.approx(1.0, rel=1e-15)

    roots = RootSet([1.0, 2.0, 3.0, 4.0])
    poly = poly_core.scaled_derivative_coeffs(roots, 2)
    np.testing.assert_allclose(poly.f, [1.0, 5.0, 70.0 / 12.0], rtol=1e-14)

    full = poly_core.scaled_derivative_coeffs(roots, 4)
    np.testing.assert_array_equal(full.f, poly_core.elementary_symmetric_all(roots, 4).e)


@pytest.mark.parametrize('ell', [0, 5])
def test_scaled_derivative_coeffs_range(ell):
    with pytest.raises(ArgumentError):
        poly_core.scaled_derivative_coeffs(RootSet([1.0, 2.0, 3.0, 4.0]), ell)


def test_monic_roots():
    poly = poly_core.scaled_derivative_coeffs(RootSet([1.0, 2.0, 3.0, 4.0]), 2)
    roots = poly_core.monic_roots(poly)
    delta = math.sqrt(5.0 / 3.0)
    np.testing.assert_allclose(roots.roots, [(5.0 - delta) / 2.0, (5.0 + delta) / 2.0], rtol=1e-13)
    assert poly_core.monic_roots(MonicPoly([1.0])).n == 0


def test_hermite_eval():
    assert poly_core.hermite_eval(HermiteKind.PROBABILISTS, 2, 2.0) == pytest.approx(3.0)
    assert poly_core.hermite_eval(HermiteKind.PROBABILISTS, 3, 1.0) == pytest.approx(-2.0)
    assert poly_core.hermite_eval(HermiteKind.PROBABILISTS, 4, 0.0) == pytest.approx(3.0)
    assert poly_core.hermite_eval(HermiteKind.PHYSICISTS, 2, 1.5) == pytest.approx(7.0)

    x = np.linspace(-3.0, 3.0, 13)
    np.testing.assert_allclose(
        poly_core.hermite_eval(HermiteKind.PROBABILISTS, 3, x), x ** 3 - 3.0 * x, atol=1e-12
    )
    with pytest.raises(ArgumentError):
        poly_core.hermite_eval(HermiteKind.PROBABILISTS, -1, 0.0)


def test_hermite_roots_small():
    assert poly_core.hermite_roots(1).roots.tolist() == [0.0]
    np.testing.assert_allclose(poly_core.hermite_roots(2).roots, [-1.0, 1.0], rtol=1e-15)
    np.testing.assert_allclose(
        poly_core.hermite_roots(3).roots, [-math.sqrt(3.0), 0.0, math.sqrt(3.0)], atol=1e-14
    )
    with pytest.raises(ArgumentError):
        poly_core.hermite_roots(0)


def test_hermite_roots_match_gauss_nodes():
    nodes, _ = hermite_e.hermegauss(40)
    np.testing.assert_allclose(poly_core.hermite_roots(40).roots, nodes, rtol=1e-12, atol=1e-12)


def test_hermite_roots_symmetric_and_large():
    y = poly_core.hermite_roots(1000).roots
    np.testing.assert_array_equal(y, -y[::-1])
    # He_n roots have mean 0 and sum of squares n(n - 1)
    assert math.fsum(y * y) == pytest.approx(1000 * 999, rel=1e-12)


def test_hermite_newton_step_vanishes_at_roots():
    y = poly_core.hermite_roots(12).roots
    assert np.max(np.abs(poly_core.hermite_newton_step(12, y))) < 1e-13


def test_hermite_addition_eval():
    assert poly_core.hermite_addition_eval(1, 0.3, 1.2) == pytest.approx(1.5)
    assert poly_core.hermite_addition_eval(2, 1.0, 1.0) == pytest.approx(3.0)
    for ell in range(7):
        assert poly_core.hermite_addition_eval(ell, 0.0, 1.7) == pytest.approx(
            poly_core.hermite_eval(HermiteKind.PROBABILISTS, ell, 1.7), rel=1e-13, abs=1e-13
        )
    assert poly_core.hermite_addition_eval(5, 0.3, 1.7) == pytest.approx(
        poly_core.hermite_eval(HermiteKind.PROBABILISTS, 5, 2.0), rel=1e-12
    )


def test_monic_roots_rejects_complex_roots():
    # x^2 + 1
    with pytest.raises(RootRecoveryError) as info:
        poly_core.monic_roots(MonicPoly([1.0, 0.0, 1.0]))
    assert info.value.degree == 2
    assert isinstance(info.value, NumericalFailure)


def test_newton_identities():
    gen = np.random.default_rng(5)
    for n in range(1, 13):
        roots = RootSet.from_unsorted(gen.uniform(-2.0, 2.0, n))
        e = poly_core.elementary_symmetric_all(roots, n).e
        p = [None] + [poly_core.power_sum(roots, i) for i in range(1, n + 1)]
        for m in range(1, n + 1):
            terms = [(-1) ** (i - 1) * e[m - i] * p[i] for i in range(1, m + 1)]
            scale = sum(abs(t) for t in terms)
            assert m * e[m] == pytest.approx(math.fsum(terms), rel=1e-10, abs=1e-10 * scale)


@pytest.mark.parametrize('ell', range(1, 11))
def test_hermite_derivative_relation(ell):
    x = np.linspace(-3.0, 3.0, 61)
    h = 1e-5
    prob = HermiteKind.PROBABILISTS
    slope = (poly_core.hermite_eval(prob, ell, x + h) - poly_core.hermite_eval(prob, ell, x - h)) / (2 * h)
    expected = ell * poly_core.hermite_eval(prob, ell - 1, x)
    np.testing.assert_allclose(slope, expected, rtol=1e-6, atol=1e-6 * np.max(np.abs(expected)))


def test_hermite_explicit_low_degrees():
    x = np.linspace(-3.0, 3.0, 100)
    explicit = [np.ones_like(x), x, x ** 2 - 1.0, x ** 3 - 3.0 * x, x ** 4 - 6.0 * x ** 2 + 3.0]
    for ell, values in enumerate(explicit):
        np.testing.assert_allclose(
            poly_core.hermite_eval(HermiteKind.PROBABILISTS, ell, x), values, rtol=1e-14, atol=1e-12
        )


def test_hermite_addition_formula_on_grid():
    grid = np.linspace(-2.0, 2.0, 9)
    for ell in range(11):
        for a, b in itertools.product(grid, grid):
            exact = poly_core.hermite_eval(HermiteKind.PROBABILISTS, ell, a + b)
            assert abs(exact - poly_core.hermite_addition_eval(ell, a, b)) <= 1e-9 * (1.0 + abs(exact))
