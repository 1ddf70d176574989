import logging
import math
import numpy as np
import pytest
from scipy import stats
from rootflow import sampling
from rootflow.model import DistributionSpec, Law, RngStream, RootSet
from rootflow.exceptions import ArgumentError, DegenerateInputError, DistributionUnavailableError
from rootflow.utils.rng import generator, open_uniforms


def test_same_stream_same_sample():
    spec = DistributionSpec.parse('gaussian')
    a = sampling.sample_roots(spec, 500, RngStream(42, 3))
    b = sampling.sample_roots(spec, 500, RngStream(42, 3))
    np.testing.assert_array_equal(a.roots, b.roots)


def test_streams_are_independent():
    spec = DistributionSpec.parse('uniform')
    a = sampling.sample_roots(spec, 100, RngStream(42, 0))
    b = sampling.sample_roots(spec, 100, RngStream(42, 1))
    c = sampling.sample_roots(spec, 100, RngStream(43, 0))
    assert not np.array_equal(a.roots, b.roots)
    assert not np.array_equal(a.roots, c.roots)


def test_child_streams_differ():
    rng = RngStream(7)
    assert len({rng.child(i) for i in range(100)}) == 100
    assert rng.child(0) != rng.child(0).child(0)


def test_open_uniforms_stay_inside():
    u = open_uniforms(generator(RngStream(1)), 10000)
    assert np.all(u > 0.0) and np.all(u < 1.0)


@pytest.mark.parametrize('name,mean,variance', [
    ('uniform', 0.0, 1.0),
    ('gaussian', 0.0, 1.0),
    ('parabolic', 0.0, 1.0),
    ('gap', 0.5, 25.0 / 12.0),
    ('semicircle', 0.0, 1.0),
])
def test_law_moments(name, mean, variance):
    roots = sampling.sample_roots(DistributionSpec.parse(name), 100000, RngStream(11)).roots
    law = sampling.AVAILABLE_DISTRIBUTIONS[name]()
    assert law.mean == mean
    assert law.variance == pytest.approx(variance)
    assert np.mean(roots) == pytest.approx(mean, abs=0.02)
    assert np.var(roots) == pytest.approx(variance, abs=0.02 * max(1.0, variance))


@pytest.mark.parametrize('name', sorted(sampling.AVAILABLE_DISTRIBUTIONS))
def test_ppf_inverts_cdf(name):
    law = sampling.AVAILABLE_DISTRIBUTIONS[name]()
    u = np.linspace(0.01, 0.99, 99)
    np.testing.assert_allclose(law.cdf(law.ppf(u)), u, rtol=0.0, atol=1e-12)


def test_parabolic_support_and_gap_support():
    parabolic = sampling.sample_roots(DistributionSpec(Law.PARABOLIC), 20000, RngStream(2)).roots
    assert np.all(np.abs(parabolic) <= math.sqrt(5.0 / 3.0) + 1e-12)

    gap = sampling.sample_roots(DistributionSpec(Law.GAP), 20000, RngStream(2)).roots
    assert not np.any((gap > -1.0) & (gap < 1.0))
    assert np.mean(gap > 0.0) == pytest.approx(2.0 / 3.0, abs=0.02)


def test_parse_rejects_unknown_names():
    with pytest.raises(ArgumentError):
        DistributionSpec.parse('cauchy')
    assert DistributionSpec.parse(' Uniform ').law is Law.UNIFORM_SYM


def test_disabled_law_is_unavailable():
    laws = {'uniform': sampling.UniformLaw()}
    with pytest.raises(DistributionUnavailableError):
        sampling.sample_roots(DistributionSpec.parse('gaussian'), 10, RngStream(0), laws)


def test_separate():
    values = np.array([0.0, 0.0, 0.0, 1.0])
    spaced = sampling.separate(values)
    assert spaced[0] == 0.0 and spaced[-1] == 1.0
    assert np.all(np.diff(spaced) >= 1e-13)
    RootSet(spaced)

    untouched = np.array([-1.0, 0.0, 2.0])
    np.testing.assert_array_equal(sampling.separate(untouched), untouched)


class ClumpedLaw(sampling.DistributionLaw):
    name = 'uniform'

    def ppf(self, u):
        return np.round(np.asarray(u) * 4.0)

    def cdf(self, x):
        return np.clip(np.asarray(x) / 4.0, 0.0, 1.0)


def test_collisions_are_spaced_apart(caplog):
    laws = {'uniform': ClumpedLaw()}
    with caplog.at_level(logging.WARNING, logger='rootflow.sampling'):
        roots = sampling.sample_roots(DistributionSpec.parse('uniform'), 50, RngStream(3), laws)
    assert roots.n == 50
    assert 'colliding' in caplog.text


def test_jitter_resolves_collisions_without_spacing(caplog):
    laws = {'uniform': ClumpedLaw()}
    spec = DistributionSpec.parse('uniform', jitter=0.05)
    with caplog.at_level(logging.WARNING, logger='rootflow.sampling'):
        roots = sampling.sample_roots(spec, 50, RngStream(3), laws)
    assert roots.n == 50
    assert 'colliding' not in caplog.text


def test_normalize_affine():
    roots, shift, scale = sampling.normalize_affine(RootSet([-1.0, 1.0]))
    assert roots.roots.tolist() == [-1.0, 1.0] and (shift, scale) == (0.0, 1.0)

    roots, shift, scale = sampling.normalize_affine(RootSet([0.0, 2.0]))
    assert roots.roots.tolist() == [-1.0, 1.0] and (shift, scale) == (1.0, 1.0)

    roots, shift, scale = sampling.normalize_affine(RootSet([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(roots.roots, [-math.sqrt(1.5), 0.0, math.sqrt(1.5)], rtol=1e-15)
    assert shift == 2.0 and scale == pytest.approx(math.sqrt(2.0 / 3.0))

    with pytest.raises(DegenerateInputError):
        sampling.normalize_affine(RootSet([3.0]))


def test_sample_size_must_be_positive():
    with pytest.raises(ArgumentError):
        sampling.sample_roots(DistributionSpec.parse('uniform'), 0, RngStream(0))


@pytest.mark.parametrize('name', sorted(sampling.AVAILABLE_DISTRIBUTIONS))
def test_samples_follow_their_law(name):
    n = 100000
    roots = sampling.sample_roots(DistributionSpec.parse(name), n, RngStream(12))
    law = sampling.AVAILABLE_DISTRIBUTIONS[name]()
    assert stats.kstest(roots.roots, law.cdf).statistic <= 2.0 / math.sqrt(n)


def test_normalize_affine_is_idempotent():
    roots = sampling.sample_roots(DistributionSpec.parse('gap'), 500, RngStream(13))
    once, _, _ = sampling.normalize_affine(roots)
    twice, shift, scale = sampling.normalize_affine(once)
    np.testing.assert_allclose(twice.roots, once.roots, rtol=0.0, atol=1e-14)
    assert shift == pytest.approx(0.0, abs=1e-15)
    assert scale == pytest.approx(1.0, abs=1e-14)
