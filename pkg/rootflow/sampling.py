'''
    Rootflow  root dynamics of real-rooted polynomials under repeated
    differentiation
    Copyright (C) 2026  Rootflow developers

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU General Public License as published by
    the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.

    This program is distributed in the hope that it will be useful,
    but WITHOUT ANY WARRANTY; without even the implied warranty of
    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
    GNU General Public License for more details.

    You should have received a copy of the GNU General Public License
    along with this program.  If not, see <https://www.gnu.org/licenses/>.
'''

import logging
import math
from abc import ABC, abstractmethod
from typing import Dict, Mapping, Optional, Tuple, Type
import numpy as np
from scipy.special import ndtr, ndtri
from .model import DistributionSpec, Law, RngStream, RootSet, min_separation
from .exceptions import DegenerateInputError, DistributionUnavailableError, ArgumentError
from .reporting import semicircle_cdf, semicircle_ppf
from .utils.rng import generator, open_uniforms


logger = logging.getLogger(__name__)

class DistributionLaw(ABC):
    """
    A one-dimensional law sampled by its quantile function.

    Subclasses are registered in AVAILABLE_DISTRIBUTIONS under their command-line name.
    """
    name: str
    mean: float = 0.0
    variance: float = 1.0

    @abstractmethod
    def ppf(self, u: np.ndarray) -> np.ndarray:
        """Quantile function on (0, 1)."""

    @abstractmethod
    def cdf(self, x: np.ndarray) -> np.ndarray:
        """Cumulative distribution function."""

class UniformLaw(DistributionLaw):
    """Uniform on [-sqrt(3), sqrt(3)]."""
    name = Law.UNIFORM_SYM.value

    def ppf(self, u):
        return math.sqrt(3.0) * (2.0 * np.asarray(u) - 1.0)

    def cdf(self, x):
        return np.clip((np.asarray(x) + math.sqrt(3.0)) / (2.0 * math.sqrt(3.0)), 0.0, 1.0)

class GaussianLaw(DistributionLaw):
    """Standard normal."""
    name = Law.GAUSSIAN_STD.value

    def ppf(self, u):
        return ndtri(u)

    def cdf(self, x):
        return ndtr(x)

class ParabolicLaw(DistributionLaw):
    """
    Density (9 sqrt(3) / (10 sqrt(5))) x^2 on [-sqrt(5/3), sqrt(5/3)].

    The CDF is 1/2 + (3 sqrt(3) / (10 sqrt(5))) x^3, inverted by a cube root.
    """
    name = Law.PARABOLIC.value
    cubic = 3.0 * math.sqrt(3.0) / (10.0 * math.sqrt(5.0))
    edge = math.sqrt(5.0 / 3.0)

    def ppf(self, u):
        return np.cbrt((np.asarray(u) - 0.5) / self.cubic)

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=float), -self.edge, self.edge)
        return np.clip(0.5 + self.cubic * x ** 3, 0.0, 1.0)

class GapLaw(DistributionLaw):
    """Mass 1/3 uniform on [-2, -1] and 2/3 uniform on [1, 2]; nothing in between."""
    name = Law.GAP.value
    mean = 0.5
    variance = 25.0 / 12.0

    def ppf(self, u):
        u = np.asarray(u, dtype=float)
        return np.where(u < 1.0 / 3.0, -2.0 + 3.0 * u, 1.0 + 1.5 * (u - 1.0 / 3.0))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        left = np.clip((x + 2.0) / 3.0, 0.0, 1.0 / 3.0)
        right = np.clip(2.0 * (x - 1.0) / 3.0, 0.0, 2.0 / 3.0)
        return left + right

class SemicircleLaw(DistributionLaw):
    """Wigner semicircle of radius 2, the unit-variance reference."""
    name = Law.SEMICIRCLE_REF.value
    radius = 2.0

    def ppf(self, u):
        return semicircle_ppf(u, self.radius)

    def cdf(self, x):
        return semicircle_cdf(x, self.radius)

AVAILABLE_DISTRIBUTIONS: Dict[str, Type[DistributionLaw]] = {
    law.name: law for law in (UniformLaw, GaussianLaw, ParabolicLaw, GapLaw, SemicircleLaw)
}

def resolve_law(
    spec: DistributionSpec,
    laws: Optional[Mapping[str, DistributionLaw]] = None
) -> DistributionLaw:
    """
    Look up the law instance for a spec.

    Args:
        spec (DistributionSpec): The requested law.
        laws (Mapping[str, DistributionLaw]): Enabled laws by name; all registered laws if omitted.

    Returns:
        DistributionLaw: The law instance.
    """
    if laws is None:
        laws = {name: cls() for name, cls in AVAILABLE_DISTRIBUTIONS.items()}
    try:
        return laws[spec.law.value]
    except KeyError as e:
        raise DistributionUnavailableError(spec.law.value) from e

def draw(law: DistributionLaw, gen: np.random.Generator, shape) -> np.ndarray:
    """Unsorted i.i.d. draws of a given shape, by inversion of one uniform per value."""
    size = int(np.prod(shape))
    return np.asarray(law.ppf(open_uniforms(gen, size)), dtype=float).reshape(shape)

def separate(values: np.ndarray) -> np.ndarray:
    """
    Push sorted values apart so that consecutive gaps are at least twice the minimum separation.

    Values already far enough apart are left untouched; a colliding run is spread to the right.
    """
    step = 2.0 * min_separation(values)
    offsets = step * np.arange(values.size)
    shifted = values - offsets
    floor = np.maximum.accumulate(shifted)
    return np.where(floor > shifted, floor + offsets, values)

def _collides(values: np.ndarray) -> bool:
    return values.size > 1 and bool(np.any(np.diff(values) < 2.0 * min_separation(values)))

def sample_roots(
    spec: DistributionSpec,
    n: int,
    rng: RngStream,
    laws: Optional[Mapping[str, DistributionLaw]] = None
) -> RootSet:
    """
    Draw n i.i.d. roots from a named law.

    Collisions closer than the minimum separation are first jittered by spec.jitter times the
    spread (when positive, from the same stream after the main draws) and then spaced apart.

    Args:
        spec (DistributionSpec): Law and jitter.
        n (int): Number of roots, n >= 1.
        rng (RngStream): The stream to draw from.
        laws (Mapping[str, DistributionLaw]): Enabled laws; all registered laws if omitted.

    Returns:
        RootSet: The sorted sample.
    """
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    law = resolve_law(spec, laws)
    gen = generator(rng)
    values = np.sort(draw(law, gen, (n,)))

    if _collides(values):
        if spec.jitter > 0.0:
            gaps = np.diff(values) < 2.0 * min_separation(values)
            hit = np.zeros(n, dtype=bool)
            hit[1:] = gaps
            spread = float(values[-1] - values[0])
            values[hit] += spec.jitter * spread * gen.uniform(-1.0, 1.0, int(hit.sum()))
            values = np.sort(values)
        if _collides(values):
            logger.warning('Spacing apart colliding samples of %s (n=%d)', law.name, n)
            values = separate(values)

    return RootSet(values)

def normalize_affine(roots: RootSet) -> Tuple[RootSet, float, float]:
    """
    Shift and scale roots to mean 0 and population variance 1.

    Returns:
        Tuple[RootSet, float, float]: The normalised roots, the shift and the scale, so that
        normalised = (roots - shift) / scale.

    Raises:
        DegenerateInputError: Fewer than two roots, or zero variance.
    """
    if roots.n < 2:
        raise DegenerateInputError("normalisation needs at least two roots")
    shift = float(np.mean(roots.roots))
    centered = roots.roots - shift
    scale = float(np.sqrt(np.mean(centered ** 2)))
    if scale == 0.0:
        raise DegenerateInputError("zero variance")
    return RootSet(centered / scale), shift, scale
