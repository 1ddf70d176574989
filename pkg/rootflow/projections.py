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
from typing import List, Optional, Sequence, Tuple
import numpy as np
from .model import (
    RootSet, SourceSet, EvolveConfig, ProjectionMode, RngStream, SpectrumTrajectory
)
from .exceptions import ArgumentError, NumericalFailure
from .evolve import differentiate_once, weighted_critical_points
from .utils.rng import generator


logger = logging.getLogger(__name__)

# squared weights below this are redrawn
WEIGHT_FLOOR = 1e-300

def sphere_weights(gen: np.random.Generator, n: int) -> np.ndarray:
    """
    Squared coordinates |w_i|^2 of a uniform point on the unit sphere in R^n.

    The point is a normalised standard Gaussian vector. Vectors with a squared coordinate below
    WEIGHT_FLOOR are redrawn.
    """
    while True:
        g = gen.standard_normal(n)
        w2 = g * g / np.sum(g * g)
        if np.all(w2 >= WEIGHT_FLOOR):
            return w2
        logger.warning('Redrawing a projection direction with a vanishing weight (n=%d)', n)

def _project(
    eigs: RootSet,
    mode: ProjectionMode,
    gen: Optional[np.random.Generator],
    cfg: EvolveConfig,
    weights: Optional[Sequence[float]] = None
) -> RootSet:
    if eigs.n < 2:
        raise ArgumentError("A projection needs at least two eigenvalues")
    if mode is ProjectionMode.DETERMINISTIC:
        return differentiate_once(eigs, cfg)
    if weights is None:
        if gen is None:
            raise ArgumentError("Random projections need a random stream")
        w2 = sphere_weights(gen, eigs.n)
    else:
        w2 = np.asarray(weights, dtype=float)
        if w2.shape != (eigs.n,):
            raise ArgumentError("One weight per eigenvalue is required")
    return weighted_critical_points(SourceSet(eigs.roots, w2), cfg)

def project_once(
    eigs: RootSet,
    mode: ProjectionMode,
    rng: Optional[RngStream],
    cfg: EvolveConfig,
    weights: Optional[Sequence[float]] = None
) -> RootSet:
    """
    Eigenvalues of a symmetric matrix compressed to the orthogonal complement of a unit vector.

    With eigenvalues l_i and squared coordinates |w_i|^2 of the vector in the eigenbasis, the new
    eigenvalues are the n - 1 zeros of sum_i |w_i|^2 / (z - l_i). The deterministic mode uses
    the all-ones direction, which reduces to differentiating the characteristic polynomial;
    the random mode draws the direction uniformly from the sphere.

    Args:
        eigs (RootSet): Current spectrum, n >= 2.
        mode (ProjectionMode): Direction choice.
        rng (RngStream): Stream for the random direction (unused in deterministic mode).
        cfg (EvolveConfig): Solver parameters.
        weights (Sequence[float]): Fixed squared weights for the random mode instead of a draw.

    Returns:
        RootSet: The n - 1 interlacing eigenvalues.
    """
    gen = generator(rng) if rng is not None and weights is None else None
    return _project(eigs, mode, gen, cfg, weights)

def iterate_projections(
    eigs: RootSet,
    steps: int,
    mode: ProjectionMode,
    rng: Optional[RngStream],
    cfg: EvolveConfig
) -> SpectrumTrajectory:
    """
    Apply `steps` successive projections, one fresh direction per step in random mode.

    Snapshots are kept every cfg.snapshot_stride steps, plus the initial and final spectra.

    Raises:
        NumericalFailure: A step failed; the error carries the step number.
    """
    if not 1 <= steps <= eigs.n - 1:
        raise ArgumentError(f"steps must satisfy 1 <= steps <= n - 1 = {eigs.n - 1}, got {steps}")
    if mode is ProjectionMode.RANDOM and rng is None:
        raise ArgumentError("Random projections need a random stream")

    gen = generator(rng) if mode is ProjectionMode.RANDOM else None
    snapshots: List[Tuple[int, RootSet]] = [(0, eigs)]
    current = eigs
    for step in range(1, steps + 1):
        try:
            current = _project(current, mode, gen, cfg)
        except NumericalFailure as e:
            raise e.annotate_step(step)
        if step % cfg.snapshot_stride == 0 or step == steps:
            snapshots.append((step, current))

    return SpectrumTrajectory(
        mode, tuple(snapshots), rng if mode is ProjectionMode.RANDOM else None
    )
