import numpy as np
import pytest
from scipy import integrate
from rootflow import reporting
from rootflow.poly_core import hermite_roots
from rootflow.sampling import sample_roots
from rootflow.model import DistributionSpec, RngStream, RootSet, Trajectory
from rootflow.exceptions import ArgumentError, DegenerateInputError


def test_semicircle_density():
    total, _ = integrate.quad(reporting.semicircle_pdf, -2.0, 2.0)
    assert total == pytest.approx(1.0, abs=1e-8)
    assert reporting.semicircle_pdf(0.0) == pytest.approx(1.0 / np.pi)
    assert reporting.semicircle_pdf(3.0) == 0.0
    assert reporting.semicircle_cdf(0.0, radius=5.0) == pytest.approx(0.5)
    with pytest.raises(ArgumentError):
        reporting.semicircle_cdf(0.0, radius=0.0)


def test_histogram_small_inputs():
    hist = reporting.histogram([0.0], 1)
    assert hist.counts.tolist() == [1] and hist.total == 1
    np.testing.assert_allclose(hist.bin_edges, [-0.5, 0.5])

    hist = reporting.histogram([0.0, 1.0, 2.0, 3.0], 2)
    assert hist.counts.tolist() == [2, 2]
    np.testing.assert_allclose(hist.bin_edges, [0.0, 1.5, 3.0])


def test_histogram_counts_everything():
    values = np.random.default_rng(1).normal(size=12345)
    for bins in (1, 7, 50, 1000):
        assert int(reporting.histogram(values, bins).counts.sum()) == values.size


@pytest.mark.parametrize('values,bins', [([], 5), ([1.0, 2.0], 0)])
def test_histogram_rejects_bad_arguments(values, bins):
    with pytest.raises(ArgumentError):
        reporting.histogram(values, bins)


def test_histogram_of_semicircle_samples():
    n = 100000
    roots = sample_roots(DistributionSpec.parse('semicircle'), n, RngStream(5))
    hist = reporting.histogram(roots.roots, 50)
    edges = hist.bin_edges
    expected = n * np.diff(reporting.semicircle_cdf(edges))
    # binomial standard deviation per bin
    sigma = np.sqrt(expected * (1.0 - expected / n))
    assert np.all(np.abs(hist.counts - expected) <= 5.0 * sigma + 1.0)


def test_semicircle_distance_of_hermite_roots():
    assert reporting.semicircle_distance(hermite_roots(200).roots) <= 0.05


def test_semicircle_distance_of_semicircle_samples():
    roots = sample_roots(DistributionSpec.parse('semicircle'), 100000, RngStream(6))
    assert reporting.semicircle_distance(roots.roots) <= 0.01


def test_semicircle_distance_flags_two_points():
    assert reporting.semicircle_distance([-1.0, 1.0]) > 0.2
    with pytest.raises(DegenerateInputError):
        reporting.semicircle_distance([1.0, 1.0, 1.0])


def test_gap_occupancy():
    trajectory = Trajectory(
        ((0, RootSet([-2.0, -1.0, 1.0, 2.0])), (1, RootSet([-1.5, 0.0, 1.5])), (2, RootSet([-0.5, 0.5]))),
        RootSet([-0.5, 0.5])
    )
    assert reporting.gap_occupancy(trajectory) == [(0, 0), (1, 1), (2, 2)]
    with pytest.raises(ArgumentError):
        reporting.gap_occupancy(trajectory, 1.0, -1.0)
