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

from typing import List, Sequence, Tuple, Union
import numpy as np
from scipy import stats
from .model import Histogram, Trajectory, SpectrumTrajectory
from .exceptions import ArgumentError, DegenerateInputError


def _semicircle(radius: float):
    if radius <= 0.0:
        raise ArgumentError(f"Semicircle radius must be positive, got {radius!r}")
    # (x + R) / 2R is Beta(3/2, 3/2) distributed
    return stats.beta(1.5, 1.5, loc=-radius, scale=2.0 * radius)

def semicircle_pdf(x, radius: float = 2.0):
    """Wigner density (2 / (pi R^2)) sqrt(R^2 - x^2) on [-R, R]."""
    return _semicircle(radius).pdf(x)

def semicircle_cdf(x, radius: float = 2.0):
    """Distribution function of the Wigner semicircle law of radius R (variance R^2 / 4)."""
    return _semicircle(radius).cdf(x)

def semicircle_ppf(u, radius: float = 2.0):
    """Quantile function of the Wigner semicircle law of radius R."""
    return _semicircle(radius).ppf(u)

def histogram(values: Sequence[float], bins: int) -> Histogram:
    """
    Equal-width histogram over [min, max].

    Every bin is half-open except the last, which also counts the maximum. When all values are
    equal the range is widened to [v - 1/2, v + 1/2].

    Args:
        values (Sequence[float]): Nonempty data.
        bins (int): Number of bins, at least 1.

    Returns:
        Histogram: Edges, counts and the total count.
    """
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise ArgumentError("Cannot histogram an empty set of values")
    if bins < 1:
        raise ArgumentError(f"bins must be at least 1, got {bins}")
    counts, edges = np.histogram(values, bins=bins)
    return Histogram(edges, counts, int(values.size))

def semicircle_distance(values: Sequence[float]) -> float:
    """
    Kolmogorov-Smirnov distance between centred values and the variance-matched semicircle.

    The reference radius is R = 2 sigma with sigma the population standard deviation, so both laws
    share mean and variance and only the shape is compared.

    Raises:
        DegenerateInputError: The values have no spread.
    """
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise ArgumentError("Cannot compare an empty set of values")
    centered = values - np.mean(values)
    sigma = float(np.sqrt(np.mean(centered ** 2)))
    if sigma == 0.0:
        raise DegenerateInputError("zero variance")
    return float(stats.kstest(centered, _semicircle(2.0 * sigma).cdf).statistic)

def gap_occupancy(
    trajectory: Union[Trajectory, SpectrumTrajectory],
    lo: float = -1.0,
    hi: float = 1.0
) -> List[Tuple[int, int]]:
    """Number of roots strictly inside (lo, hi) at every snapshot."""
    if not lo < hi:
        raise ArgumentError("The occupancy interval needs lo < hi")
    return [
        (step, int(np.count_nonzero((roots.roots > lo) & (roots.roots < hi))))
        for step, roots in trajectory.snapshots
    ]
