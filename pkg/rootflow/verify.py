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
import time
from typing import Dict, List, Mapping, Optional, Sequence, Tuple
import numpy as np
from numpy.polynomial import polynomial
from .model import (
    RootSet, EvolveConfig, Trajectory, DistributionSpec, RngStream, HermiteKind,
    HermiteFitReport, LemmaReport, ConservationReport, PropositionReport, HermiteChainReport,
    ProfileReport
)
from .exceptions import ArgumentError
from .poly_core import esym_compensated, elementary_symmetric_all, hermite_eval, hermite_roots
from .evolve import differentiate_many, coefficient_route_roots
from .sampling import DistributionLaw, resolve_law, draw, sample_roots
from .utils.rng import generator


logger = logging.getLogger(__name__)

ROUTES = ('evolve', 'coeffs')

def hermite_fit(
    final_roots: RootSet,
    n: int,
    targets: Optional[RootSet] = None
) -> HermiteFitReport:
    """
    Fit the scaled final roots sqrt(n) r_i to the roots y_i of He_l up to a common shift.

    gamma = mean(y_i - sqrt(n) r_i) minimises the squared error over shifts, and the reported error
    is (1/l) (sum_i (sqrt(n) r_i + gamma - y_i)^2)^(1/2).

    Args:
        final_roots (RootSet): The l roots left after n - l differentiations.
        n (int): Degree of the starting polynomial, n >= l.
        targets (RootSet): Precomputed roots of He_l, computed here when omitted.

    Returns:
        HermiteFitReport: Shift and error.
    """
    ell = final_roots.n
    if ell < 1:
        raise ArgumentError("Nothing to fit: the root set is empty")
    if n < ell:
        raise ArgumentError(f"n = {n} must be at least the number of roots l = {ell}")
    y = (targets if targets is not None else hermite_roots(ell)).roots
    if y.size != ell:
        raise ArgumentError(f"Expected {ell} Hermite roots, got {y.size}")

    scaled = math.sqrt(n) * final_roots.roots
    gamma = float(np.mean(y - scaled))
    rms_error = float(np.sqrt(np.sum((scaled + gamma - y) ** 2)) / ell)
    return HermiteFitReport(gamma=gamma, rms_error=rms_error, ell=ell, n=n)

def lemma_prediction(e1, n: int, m: int):
    """
    The e_1 polynomial that e_m concentrates around:
    sum_k (-1)^k e_1^(m-2k) n^k / (k! (m-2k)! 2^k), which equals n^(m/2) He_m(e_1 / sqrt(n)) / m!.
    """
    if m < 0:
        raise ArgumentError(f"m must be nonnegative, got {m}")
    e1 = np.asarray(e1, dtype=float)
    coeff = 1.0 / math.factorial(m)
    total = np.zeros_like(e1)
    for k in range(m // 2 + 1):
        total = total + coeff * e1 ** (m - 2 * k) * float(n) ** k
        coeff *= -(m - 2 * k) * (m - 2 * k - 1) / (2.0 * (k + 1))
    return total if total.ndim else float(total)

def lemma_residual(roots: RootSet, m: int) -> float:
    """
    e_m(roots) minus its e_1 prediction.

    For m = 1 the residual is zero and for m = 2 it equals (n - p_2) / 2 identically.
    """
    if not 1 <= m <= roots.n:
        raise ArgumentError(f"m must satisfy 1 <= m <= n = {roots.n}, got {m}")
    e = elementary_symmetric_all(roots, m).e
    if m == 1:
        return 0.0
    return float(e[m] - lemma_prediction(e[1], roots.n, m))

def _lemma_cell(law: DistributionLaw, m: int, n: int, trials: int, stream: RngStream):
    values = draw(law, generator(stream), (trials, n))
    e = esym_compensated(values, m)
    return e[:, 1], e[:, m]

def _cell_stream(rng: RngStream, m: int, n: int) -> RngStream:
    return rng.child(m).child(n)

def lemma_sweep(
    spec: DistributionSpec,
    m: int,
    n_grid: Sequence[int],
    trials: int,
    rng: RngStream,
    laws: Optional[Mapping[str, DistributionLaw]] = None
) -> List[LemmaReport]:
    """
    Monte Carlo estimate of E|e_m - prediction| / n^((m-1)/2) for every n of a grid.

    Every (m, n) cell draws its trials x n sample from its own stream, so cells can be rerun
    independently. Elementary symmetric polynomials of all trials are computed in one batch.

    Args:
        spec (DistributionSpec): Law of the roots.
        m (int): Index of the symmetric polynomial, m >= 1 (m = 1 gives zero residuals).
        n_grid (Sequence[int]): Numbers of roots, each at least m.
        trials (int): Samples per cell, at least 100.
        rng (RngStream): Parent stream of the cell streams.
        laws (Mapping[str, DistributionLaw]): Enabled laws.

    Returns:
        List[LemmaReport]: One report per grid entry.
    """
    if m < 1:
        raise ArgumentError(f"m must be at least 1, got {m}")
    if trials < 100:
        raise ArgumentError(f"At least 100 trials are needed, got {trials}")
    law = resolve_law(spec, laws)

    reports = []
    for n in n_grid:
        if n < m:
            raise ArgumentError(f"n = {n} is smaller than m = {m}")
        if m == 1:
            mean_abs = 0.0
        else:
            e1, em = _lemma_cell(law, m, n, trials, _cell_stream(rng, m, n))
            mean_abs = float(np.mean(np.abs(em - lemma_prediction(e1, n, m))))
        ratio = mean_abs / float(n) ** ((m - 1) / 2.0)
        logger.info('Lemma cell m=%d n=%d: ratio %.6g', m, n, ratio)
        reports.append(LemmaReport(
            m=m, n=int(n), trials=trials, mean_abs_residual=mean_abs, normalized_ratio=ratio
        ))
    return reports

def lemma_scatter(
    spec: DistributionSpec,
    m: int,
    n: int,
    trials: int,
    rng: RngStream,
    laws: Optional[Mapping[str, DistributionLaw]] = None
) -> np.ndarray:
    """
    Scaled pairs (u, v) = (e_1 / sqrt(n), m! e_m / n^(m/2)) with the prediction He_m(u).

    Returns:
        np.ndarray: Shape (trials, 3), columns u, v and He_m(u).
    """
    if not 1 <= m <= n:
        raise ArgumentError(f"m must satisfy 1 <= m <= n = {n}, got {m}")
    if trials < 1:
        raise ArgumentError("At least one trial is needed")
    e1, em = _lemma_cell(resolve_law(spec, laws), m, n, trials, _cell_stream(rng, m, n))
    u = e1 / math.sqrt(n)
    v = math.factorial(m) * em / float(n) ** (m / 2.0)
    return np.column_stack((u, v, hermite_eval(HermiteKind.PROBABILISTS, m, u)))

def _normalized_pairwise(x: np.ndarray) -> float:
    # sum_{i<j} (x_i - x_j)^2 / (n^2 (n - 1)) with the pair sum folded to n * sum (x - mean)^2
    centered = x - np.mean(x)
    return math.fsum(centered * centered) / (x.size * (x.size - 1))

def conservation_report(trajectory: Trajectory) -> ConservationReport:
    """
    Worst changes of the mean and of the normalised pairwise-square sum between snapshots.

    Pairs whose later snapshot has a single root have no pairwise sum and are counted in
    identity_skipped; their mean drift still counts.
    """
    snapshots = trajectory.snapshots
    if len(snapshots) < 2:
        raise ArgumentError("At least two snapshots are needed")

    mean_drift = 0.0
    rel_err = 0.0
    skipped = 0
    for (_, before), (_, after) in zip(snapshots, snapshots[1:]):
        mean_drift = max(mean_drift, abs(after.mean() - before.mean()))
        if after.n < 2:
            skipped += 1
            continue
        expected = _normalized_pairwise(before.roots)
        observed = _normalized_pairwise(after.roots)
        if expected > 0.0:
            rel_err = max(rel_err, abs(observed - expected) / expected)

    return ConservationReport(
        mean_drift=mean_drift,
        pairwise_identity_rel_err=rel_err,
        steps_checked=len(snapshots) - 1,
        identity_skipped=skipped
    )

def _mean_pair_square(x: np.ndarray) -> float:
    centered = x - np.mean(x)
    return 2.0 * math.fsum(centered * centered) / (x.size - 1)

def variance_prediction(trajectory: Trajectory) -> List[Tuple[int, float, float]]:
    """
    Average squared distance between distinct roots, observed against (l/n) times its initial value.

    Returns:
        List[Tuple[int, float, float]]: (l, observed, predicted) for every snapshot with l >= 2.
    """
    _, first = trajectory.snapshots[0]
    if first.n < 2:
        raise ArgumentError("The first snapshot needs at least two roots")
    initial = _mean_pair_square(first.roots)
    return [
        (roots.n, _mean_pair_square(roots.roots), roots.n / first.n * initial)
        for _, roots in trajectory.snapshots
        if roots.n >= 2
    ]

def _power_series_coeffs(n: int) -> np.ndarray:
    # (1 - y^2/n)^n = sum_k C(n, k) (-1/n)^k y^(2k), with C(n, k) / n^k as running products
    coeffs = np.zeros(2 * n + 1)
    c = 1.0
    coeffs[0] = c
    for k in range(1, n + 1):
        c *= -(n - k + 1) / (k * n)
        if c == 0.0:
            break
        coeffs[2 * k] = c
    return coeffs

def proposition_check(n: int, ell: int, y_grid: Sequence[float]) -> PropositionReport:
    """
    Max over a grid of |d^l/dy^l (1 - y^2/n)^n - (-1)^l H_l(y) e^(-y^2)|, H the physicists' kind.

    The left side is differentiated exactly on its power-series coefficients.

    Raises:
        ArgumentError: Bad degrees, or a grid point outside (-sqrt(n), sqrt(n)).
    """
    if ell < 0 or n < 1 or n < ell:
        raise ArgumentError(f"Need 0 <= l <= n and n >= 1, got n = {n}, l = {ell}")
    y = np.asarray(y_grid, dtype=float)
    if y.size == 0:
        raise ArgumentError("The grid is empty")
    if np.any(np.abs(y) >= math.sqrt(n)):
        raise ArgumentError(f"Grid points must lie inside (-sqrt(n), sqrt(n)) = +-{math.sqrt(n)}")

    derivative = polynomial.polyder(_power_series_coeffs(n), ell) if ell else _power_series_coeffs(n)
    lhs = polynomial.polyval(y, derivative)
    rhs = (-1.0) ** ell * hermite_eval(HermiteKind.PHYSICISTS, ell, y) * np.exp(-y * y)
    return PropositionReport(n=n, ell=ell, max_deviation=float(np.max(np.abs(lhs - rhs))))

def hermite_chain(
    n: int,
    k: int,
    cfg: EvolveConfig,
    targets: Optional[RootSet] = None
) -> HermiteChainReport:
    """
    Differentiate He_n k times and compare with the roots of He_(n-k) (He_n' = n He_(n-1)).

    Args:
        n (int): Starting degree.
        k (int): Number of differentiations, 1 <= k <= n - 1.
        cfg (EvolveConfig): Solver parameters; only the final snapshot is needed.
        targets (RootSet): Precomputed roots of He_(n-k).

    Returns:
        HermiteChainReport: Max abs root error and wall time of the differentiations.
    """
    start = hermite_roots(n)
    expected = targets if targets is not None else hermite_roots(n - k)
    began = time.perf_counter()
    final = differentiate_many(start, k, cfg).final
    seconds = time.perf_counter() - began
    error = float(np.max(np.abs(final.roots - expected.roots)))
    logger.info('He_%d chain, %d steps: max error %.3e in %.2f s', n, k, error, seconds)
    return HermiteChainReport(n=n, steps=k, max_abs_error=error, seconds=seconds)

def theorem_roots(roots: RootSet, ell: int, cfg: EvolveConfig, route: str = 'evolve') -> RootSet:
    """The l roots of the (n - l)-th derivative, by repeated differentiation or by coefficients."""
    if route not in ROUTES:
        raise ArgumentError(f"Unknown route '{route}', expected one of: {', '.join(ROUTES)}")
    if not 1 <= ell <= roots.n:
        raise ArgumentError(f"l must satisfy 1 <= l <= n = {roots.n}, got {ell}")
    if ell == roots.n:
        return roots
    if route == 'coeffs':
        return coefficient_route_roots(roots, ell)
    stride = roots.n - ell
    return differentiate_many(roots, stride, EvolveConfig(
        epsilon=cfg.epsilon, newton_tol=cfg.newton_tol, max_newton_iters=cfg.max_newton_iters,
        snapshot_stride=stride
    )).final

def two_route_check(roots: RootSet, ell: int, cfg: EvolveConfig) -> float:
    """Max abs difference between the evolve and coefficient routes to the final l roots."""
    via_evolve = theorem_roots(roots, ell, cfg, 'evolve')
    via_coeffs = theorem_roots(roots, ell, cfg, 'coeffs')
    return float(np.max(np.abs(via_evolve.roots - via_coeffs.roots)))

def theorem_trials(  # pylint: disable=too-many-arguments
    spec: DistributionSpec,
    n: int,
    ell: int,
    trials: int,
    rng: RngStream,
    cfg: EvolveConfig,
    route: str = 'evolve',
    laws: Optional[Mapping[str, DistributionLaw]] = None,
    targets: Optional[RootSet] = None
) -> List[HermiteFitReport]:
    """
    Sample, differentiate down to l roots and fit the Hermite roots, once per trial.

    Trial t samples from rng.child(t).
    """
    if trials < 1:
        raise ArgumentError("At least one trial is needed")
    if not 1 <= ell <= n:
        raise ArgumentError(f"l must satisfy 1 <= l <= n = {n}, got {ell}")
    targets = targets if targets is not None else hermite_roots(ell)

    reports = []
    for trial in range(trials):
        roots = sample_roots(spec, n, rng.child(trial), laws)
        reports.append(hermite_fit(theorem_roots(roots, ell, cfg, route), n, targets))
        if (trial + 1) % 50 == 0:
            logger.info('Theorem trials: %d/%d done', trial + 1, trials)
    return reports

def summarize_fits(reports: Sequence[HermiteFitReport]) -> Dict[str, float]:
    """Mean and sample variance of the shifts and the median error of a set of fits."""
    if not reports:
        raise ArgumentError("No fits to summarise")
    gammas = np.array([r.gamma for r in reports])
    errors = np.array([r.rms_error for r in reports])
    return {
        'trials': len(reports),
        'gamma_mean': float(np.mean(gammas)),
        'gamma_variance': float(np.var(gammas, ddof=1)) if gammas.size > 1 else 0.0,
        'rms_error_median': float(np.median(errors)),
    }

def theorem_profile(
    final_roots: RootSet,
    n: int,
    x_grid: Sequence[float],
    targets: Optional[RootSet] = None
) -> ProfileReport:
    """
    log10 profiles of prod_i (x - sqrt(n) r_i) and of He_l(x + gamma), both as sums of logarithms.

    The rescaled derivative and the shifted Hermite polynomial are monic of the same degree, so
    their profiles coincide when the roots match. max_difference ignores grid points closer to a
    root of either polynomial than a tenth of the smallest Hermite root gap.
    """
    fit = hermite_fit(final_roots, n, targets)
    y = (targets if targets is not None else hermite_roots(fit.ell)).roots
    x = np.asarray(x_grid, dtype=float)
    if x.size == 0:
        raise ArgumentError("The grid is empty")

    scaled_roots = math.sqrt(n) * final_roots.roots
    shifted_roots = y - fit.gamma
    with np.errstate(divide='ignore'):
        scaled = np.sum(np.log10(np.abs(x[:, None] - scaled_roots[None, :])), axis=1)
        hermite = np.sum(np.log10(np.abs(x[:, None] - shifted_roots[None, :])), axis=1)

    exclusion = 0.1 * float(np.min(np.diff(y))) if y.size > 1 else 0.1
    near = np.min(np.abs(x[:, None] - np.concatenate((scaled_roots, shifted_roots))[None, :]), axis=1)
    keep = near > exclusion
    max_difference = float(np.max(np.abs(scaled[keep] - hermite[keep]))) if keep.any() else 0.0
    return ProfileReport(
        ell=fit.ell, n=n, gamma=fit.gamma, x=tuple(x.tolist()),
        scaled_log10=tuple(scaled.tolist()), hermite_log10=tuple(hermite.tolist()),
        max_difference=max_difference
    )
