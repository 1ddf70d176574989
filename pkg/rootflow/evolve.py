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
from typing import List, Tuple
import numpy as np
from . import fast_cauchy_sum
from .model import RootSet, SourceSet, EvolveConfig, Trajectory, min_separation
from .exceptions import (
    ArgumentError, DegenerateGapError, NewtonConvergenceError, NumericalFailure
)
from .poly_core import scaled_derivative_coeffs, monic_roots


logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps

# intervals narrower than this many separations are answered by their midpoint
_NARROW_FACTOR = 10.0

# Newton steps below this fraction of the interval width may be stalled by rounding
_STALL_FRACTION = 1e-8

def _bisect(lo: np.ndarray, hi: np.ndarray, pole_lo: np.ndarray, pole_hi: np.ndarray) -> np.ndarray:
    """
    Bisection points for the brackets [lo, hi].

    A bracket that still ends on a source is split geometrically towards that source, so a zero
    sitting next to a heavy pole is reached in logarithmically many halvings of its distance.
    """
    near = np.maximum(4.0 * _EPS * np.abs(np.where(pole_lo, lo, hi)), np.finfo(float).tiny)
    far = hi - lo
    geo = np.minimum(np.sqrt(near * far), 0.5 * far)
    mid = 0.5 * (lo + hi)
    return np.where(pole_lo & ~pole_hi, lo + geo, np.where(pole_hi & ~pole_lo, hi - geo, mid))

def weighted_critical_points(sources: SourceSet, cfg: EvolveConfig) -> RootSet:
    """
    Solve sum_i w_i / (z - x_i) = 0 on every interval between consecutive sources.

    S decreases strictly from +inf to -inf across each interval, so there is exactly one zero per
    interval. All intervals are iterated together: a Newton step on S from the midpoint, kept
    inside a bracket [lo, hi] with S(lo) > 0 > S(hi), and replaced by bisection whenever it leaves
    the bracket or |S| did not decrease. A single plan serves the whole sweep.

    Intervals narrower than a few minimum separations are answered by their midpoint with a
    warning.

    Args:
        sources (SourceSet): At least two sources with positive weights.
        cfg (EvolveConfig): Accuracy and iteration limits.

    Returns:
        RootSet: The n - 1 zeros, strictly interlacing the sources.

    Raises:
        DegenerateGapError: An interval is narrower than the minimum separation.
        NewtonConvergenceError: An interval did not converge within max_newton_iters.
    """
    if sources.n < 2:
        raise ArgumentError("At least two sources are needed to have critical points")

    x = sources.positions
    # rescaling the weights leaves the zeros unchanged; equal weights become exactly one
    scaled = SourceSet(x, sources.weights / np.max(sources.weights))
    separation = min_separation(x)
    gap_lo = x[:-1]
    gap_hi = x[1:]
    width = gap_hi - gap_lo

    too_narrow = width < separation
    if too_narrow.any():
        interval = int(np.nonzero(too_narrow)[0][0])
        raise DegenerateGapError(interval, float(width[interval]))

    result = 0.5 * (gap_lo + gap_hi)
    narrow = width < _NARROW_FACTOR * separation
    if narrow.any():
        logger.warning(
            'Answering %d near-degenerate intervals by their midpoint (first: %d)',
            int(narrow.sum()), int(np.nonzero(narrow)[0][0])
        )

    plan = fast_cauchy_sum.build_plan(scaled, cfg.epsilon)
    active = np.nonzero(~narrow)[0]
    left = gap_lo[active]
    right = gap_hi[active]
    lo = left.copy()
    hi = right.copy()
    r = result[active].copy()
    span = width[active]
    tol = cfg.newton_tol * span
    prev_abs = np.full(active.size, np.inf)
    prev_step = np.full(active.size, np.inf)

    iterations = 0
    while active.size and iterations < cfg.max_newton_iters:
        iterations += 1
        s_val, ds_val = fast_cauchy_sum.eval_batch(plan, scaled, r)

        lo = np.where(s_val > 0.0, r, lo)
        hi = np.where(s_val < 0.0, r, hi)

        newton = r - s_val / ds_val
        step = np.abs(newton - r)
        floor = np.maximum(tol, 4.0 * _EPS * np.abs(r))
        # a correction below the floor is converged even when rounding puts it on the bracket
        inside = ((newton > lo) & (newton < hi)) | (step <= floor)
        # steps that stop shrinking once tiny are rounding noise of the sum
        stalled = (step <= _STALL_FRACTION * span) & (step >= 0.5 * prev_step)
        converged = inside & ((step <= floor) | stalled)
        collapsed = hi - lo <= floor

        # tiny steps are exempt from the decrease test, |S| is noise there
        use_newton = inside & ((np.abs(s_val) < prev_abs) | (step <= _STALL_FRACTION * span))
        nxt = np.where(use_newton, newton, _bisect(lo, hi, lo == left, hi == right))
        nxt = np.where(converged & (newton > left) & (newton < right), newton, np.where(converged, r, nxt))
        nxt = np.where(s_val == 0.0, r, nxt)
        done = (s_val == 0.0) | converged | collapsed

        result[active[done]] = nxt[done]
        keep = ~done
        prev_abs = np.abs(s_val)
        prev_step = np.where(use_newton, step, np.inf)
        active, left, right, lo, hi, r, span, tol, prev_abs, prev_step = (
            active[keep], left[keep], right[keep], lo[keep], hi[keep], nxt[keep], span[keep],
            tol[keep], prev_abs[keep], prev_step[keep]
        )

    if active.size:
        raise NewtonConvergenceError(int(active[0]), iterations)
    return RootSet(result)

def differentiate_once(roots: RootSet, cfg: EvolveConfig) -> RootSet:
    """Roots of p' from the roots of p: the unit-weight critical points."""
    if roots.n < 2:
        raise ArgumentError("Differentiation needs at least two roots")
    return weighted_critical_points(SourceSet.unit(roots), cfg)

def differentiate_many(roots: RootSet, k: int, cfg: EvolveConfig) -> Trajectory:
    """
    Differentiate k times, recording every snapshot_stride-th step and the final one.

    Args:
        roots (RootSet): Roots of the starting polynomial, n of them.
        k (int): Number of differentiations, 1 <= k <= n - 1.
        cfg (EvolveConfig): Solver parameters and the snapshot stride.

    Returns:
        Trajectory: Snapshots starting with step 0.

    Raises:
        NumericalFailure: A step failed; the error carries the step number.
    """
    if not 1 <= k <= roots.n - 1:
        raise ArgumentError(f"Number of steps must satisfy 1 <= k <= n - 1 = {roots.n - 1}, got {k}")

    snapshots: List[Tuple[int, RootSet]] = [(0, roots)]
    current = roots
    for step in range(1, k + 1):
        try:
            current = differentiate_once(current, cfg)
        except NumericalFailure as e:
            raise e.annotate_step(step)
        if step % cfg.snapshot_stride == 0 or step == k:
            snapshots.append((step, current))
        logger.debug('Differentiation step %d/%d done, %d roots left', step, k, current.n)

    return Trajectory(tuple(snapshots), current)

def coefficient_route_roots(roots: RootSet, ell: int) -> RootSet:
    """
    Roots of the (n - l)-th derivative through the scaled coefficients and a dense root-finder.

    Only suitable for small n; used to cross-check the differentiation engine.
    """
    return monic_roots(scaled_derivative_coeffs(roots, ell))
