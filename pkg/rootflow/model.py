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

import dataclasses
import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple
import numpy as np
from .exceptions import ArgumentError


# minimum root separation, relative to the spread of a root set
SEPARATION_FACTOR = 1e-13

def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr

def min_separation(values: np.ndarray) -> float:
    """Minimum admissible gap between consecutive values: 1e-13 times their spread."""
    if len(values) < 2:
        return 0.0
    return SEPARATION_FACTOR * float(values[-1] - values[0])

class ReportMixin:  # pylint: disable=too-few-public-methods
    """Serialisation helper for frozen result records."""

    def to_dict(self) -> Dict[str, Any]:
        """Return a JSON-ready dict with keys named as the dataclass fields."""
        def plain(value):
            if isinstance(value, np.ndarray):
                return value.tolist()
            if isinstance(value, np.generic):
                return value.item()
            if isinstance(value, enum.Enum):
                return value.value
            if isinstance(value, (list, tuple)):
                return [plain(v) for v in value]
            if isinstance(value, dict):
                return {k: plain(v) for k, v in value.items()}
            if isinstance(value, Path):
                return str(value)
            return value
        return {f.name: plain(getattr(self, f.name)) for f in dataclasses.fields(self)}

@dataclass(frozen=True, eq=False)
class RootSet:
    """
    Sorted, distinct, finite real roots of a monic polynomial.

    The array is copied on construction and made read-only, so a RootSet can be shared freely.
    Consecutive roots must be at least `min_separation` apart.
    """
    roots: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.roots)
        if arr.ndim != 1:
            raise ArgumentError("A root set must be one-dimensional")
        if not np.all(np.isfinite(arr)):
            raise ArgumentError("A root set must contain finite values only")
        if arr.size > 1:
            gaps = np.diff(arr)
            if np.any(gaps <= 0.0):
                raise ArgumentError("Roots must be strictly increasing")
            if gaps.min() < min_separation(arr):
                raise ArgumentError(
                    f"Roots closer than the minimum separation {min_separation(arr)!r}"
                )
        object.__setattr__(self, 'roots', arr)

    @classmethod
    def from_unsorted(cls, values) -> "RootSet":
        """Build a root set from values in any order."""
        return cls(np.sort(np.asarray(values, dtype=float)))

    @property
    def n(self) -> int:
        """Number of roots."""
        return int(self.roots.size)

    @property
    def separation(self) -> float:
        """Minimum admissible gap for these roots."""
        return min_separation(self.roots)

    def __len__(self) -> int:
        return self.n

    def mean(self) -> float:
        """Arithmetic mean of the roots."""
        return float(np.mean(self.roots))

    def spread(self) -> float:
        """Distance between the largest and the smallest root."""
        return float(self.roots[-1] - self.roots[0]) if self.n else 0.0

@dataclass(frozen=True, eq=False)
class SourceSet:
    """Positions and positive weights of a weighted Cauchy sum."""
    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        positions = _frozen_array(self.positions)
        weights = _frozen_array(self.weights)
        if positions.ndim != 1 or positions.shape != weights.shape:
            raise ArgumentError("Positions and weights must be 1-d arrays of equal length")
        if positions.size == 0:
            raise ArgumentError("A source set needs at least one source")
        if not (np.all(np.isfinite(positions)) and np.all(np.isfinite(weights))):
            raise ArgumentError("Sources must be finite")
        if np.any(np.diff(positions) <= 0.0):
            raise ArgumentError("Source positions must be strictly increasing")
        if np.any(weights <= 0.0):
            raise ArgumentError("Source weights must be positive")
        object.__setattr__(self, 'positions', positions)
        object.__setattr__(self, 'weights', weights)

    @classmethod
    def unit(cls, roots: RootSet) -> "SourceSet":
        """Unit weights on the given roots: the unweighted critical-point problem."""
        return cls(roots.roots, np.ones(roots.n))

    @property
    def n(self) -> int:
        """Number of sources."""
        return int(self.positions.size)

    @property
    def total_weight(self) -> float:
        """Sum of all weights."""
        return float(np.sum(self.weights))

@dataclass(frozen=True, eq=False)
class EsymTable:
    """Elementary symmetric polynomials e_0..e_k of n roots."""
    e: np.ndarray
    n: int

    def __post_init__(self):
        e = _frozen_array(self.e)
        if e.ndim != 1 or e.size == 0 or e[0] != 1.0:
            raise ArgumentError("An elementary symmetric table must start with e_0 = 1")
        object.__setattr__(self, 'e', e)

    @property
    def k_max(self) -> int:
        """Highest tabulated index."""
        return int(self.e.size - 1)

@dataclass(frozen=True, eq=False)
class MonicPoly:
    """Monic polynomial sum_k (-1)^k f_k x^(l-k), stored by its signed coefficients f_k."""
    f: np.ndarray

    def __post_init__(self):
        f = _frozen_array(self.f)
        if f.ndim != 1 or f.size == 0 or f[0] != 1.0:
            raise ArgumentError("A monic polynomial must have f_0 = 1")
        object.__setattr__(self, 'f', f)

    @property
    def degree(self) -> int:
        """Degree l of the polynomial."""
        return int(self.f.size - 1)

    def numpy_coefficients(self) -> np.ndarray:
        """Coefficients in numpy's highest-power-first convention."""
        signs = np.where(np.arange(self.f.size) % 2 == 0, 1.0, -1.0)
        return signs * self.f

class HermiteKind(enum.Enum):
    """Normalisation of the Hermite polynomials."""
    PROBABILISTS = "probabilists"
    PHYSICISTS = "physicists"

@dataclass(frozen=True)
class EvolveConfig:
    """Numerical parameters of one differentiation sweep and of the multi-step driver."""
    epsilon: float = 1e-12
    newton_tol: float = 1e-14
    max_newton_iters: int = 60
    snapshot_stride: int = 1

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ArgumentError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if self.newton_tol <= 0.0:
            raise ArgumentError("newton_tol must be positive")
        if self.max_newton_iters < 1:
            raise ArgumentError("max_newton_iters must be at least 1")
        if self.snapshot_stride < 1:
            raise ArgumentError("snapshot_stride must be at least 1")

def _check_snapshots(snapshots) -> Tuple[Tuple[int, RootSet], ...]:
    snapshots = tuple(snapshots)
    if not snapshots:
        raise ArgumentError("A trajectory needs at least one snapshot")
    steps = [step for step, _ in snapshots]
    if any(b <= a for a, b in zip(steps, steps[1:])):
        raise ArgumentError("Snapshot step counts must be strictly increasing")
    first_step, first = snapshots[0]
    n0 = first.n + first_step
    if any(roots.n != n0 - step for step, roots in snapshots):
        raise ArgumentError("Snapshot k must hold n - k roots")
    return snapshots

@dataclass(frozen=True, eq=False)
class Trajectory:
    """Snapshots of the roots under repeated differentiation, starting with step 0."""
    snapshots: Tuple[Tuple[int, RootSet], ...]
    final: RootSet

    def __post_init__(self):
        object.__setattr__(self, 'snapshots', _check_snapshots(self.snapshots))

    @property
    def steps(self) -> int:
        """Number of differentiations from the first snapshot to the final state."""
        return self.snapshots[0][1].n - self.final.n

class Law(enum.Enum):
    """Sampling laws for i.i.d. roots, keyed by their command-line names."""
    UNIFORM_SYM = "uniform"
    GAUSSIAN_STD = "gaussian"
    PARABOLIC = "parabolic"
    GAP = "gap"
    SEMICIRCLE_REF = "semicircle"

@dataclass(frozen=True)
class DistributionSpec:
    """A named sampling law plus an optional collision jitter (relative to the spread)."""
    law: Law
    jitter: float = 0.0

    def __post_init__(self):
        if self.jitter < 0.0:
            raise ArgumentError("jitter must be nonnegative")

    @classmethod
    def parse(cls, name: str, jitter: float = 0.0) -> "DistributionSpec":
        """Parse a command-line name such as 'uniform' or 'parabolic'."""
        try:
            return cls(Law(name.strip().lower()), jitter)
        except ValueError as e:
            choices = ", ".join(law.value for law in Law)
            raise ArgumentError(f"Unknown distribution '{name}', expected one of: {choices}") from e

@dataclass(frozen=True)
class RngStream:
    """A (seed, stream id) pair naming one reproducible counter-based random stream."""
    seed: int
    stream: int = 0

    def child(self, index: int) -> "RngStream":
        """Stream for the index-th independent task derived from this one."""
        return RngStream(self.seed, ((self.stream << 24) + index + 1) % 2 ** 64)

@dataclass(frozen=True)
class HermiteFitReport(ReportMixin):
    """Best shift and shift-adjusted rms error of scaled final roots against He_l roots."""
    gamma: float
    rms_error: float
    ell: int
    n: int

@dataclass(frozen=True)
class LemmaReport(ReportMixin):
    """Mean absolute residual of e_m against its e_1 polynomial, normalised by n^((m-1)/2)."""
    m: int
    n: int
    trials: int
    mean_abs_residual: float
    normalized_ratio: float

@dataclass(frozen=True)
class ConservationReport(ReportMixin):
    """Worst mean drift and worst pairwise-square identity error over a trajectory."""
    mean_drift: float
    pairwise_identity_rel_err: float
    steps_checked: int
    identity_skipped: int = 0

@dataclass(frozen=True)
class PropositionReport(ReportMixin):
    """Max deviation of the l-th derivative of (1 - y^2/n)^n from (-1)^l H_l(y) e^(-y^2)."""
    n: int
    ell: int
    max_deviation: float

@dataclass(frozen=True)
class HermiteChainReport(ReportMixin):
    """Accuracy and runtime of differentiating He_n down to He_(n-k)."""
    n: int
    steps: int
    max_abs_error: float
    seconds: float

@dataclass(frozen=True)
class ProfileReport(ReportMixin):
    """log10 profiles of the scaled derivative polynomial and of the shifted Hermite polynomial."""
    ell: int
    n: int
    gamma: float
    x: Tuple[float, ...]
    scaled_log10: Tuple[float, ...]
    hermite_log10: Tuple[float, ...]
    max_difference: float

@dataclass(frozen=True, eq=False)
class Histogram(ReportMixin):
    """Equal-width histogram; the last bin is closed on the right."""
    bin_edges: np.ndarray
    counts: np.ndarray
    total: int

    def __post_init__(self):
        edges = _frozen_array(self.bin_edges)
        counts = _frozen_array(self.counts, dtype=np.int64)
        if edges.size != counts.size + 1 or np.any(np.diff(edges) <= 0.0):
            raise ArgumentError("Histogram edges must be strictly increasing, one more than counts")
        if int(counts.sum()) != self.total or np.any(counts < 0):
            raise ArgumentError("Histogram counts must be nonnegative and sum to the total")
        object.__setattr__(self, 'bin_edges', edges)
        object.__setattr__(self, 'counts', counts)

class ProjectionMode(enum.Enum):
    """How the rank-one projection direction is chosen."""
    DETERMINISTIC = "deterministic"
    RANDOM = "random"

@dataclass(frozen=True, eq=False)
class SpectrumTrajectory:
    """Snapshots of a spectrum under iterated rank-one projections."""
    mode: ProjectionMode
    snapshots: Tuple[Tuple[int, RootSet], ...]
    seed: Optional[RngStream] = None

    def __post_init__(self):
        object.__setattr__(self, 'snapshots', _check_snapshots(self.snapshots))

    @property
    def final(self) -> RootSet:
        """Spectrum after the last projection."""
        return self.snapshots[-1][1]

@dataclass(frozen=True)
class RunConfig(ReportMixin):  # pylint: disable=too-many-instance-attributes
    """Validated parameters of one command-line invocation."""
    command: str
    out_dir: Path
    dist: str = "uniform"
    n: int = 1000
    steps: Optional[int] = None
    ell: Optional[int] = None
    seed: int = 0
    trials: int = 200
    epsilon: float = 1e-12
    newton_tol: float = 1e-14
    max_newton_iters: int = 60
    bins: int = 50
    stride: Optional[int] = None
    input_path: Optional[Path] = None
    normalize: bool = False
    route: str = "evolve"
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ArgumentError("--n must be at least 1")
        if self.trials < 1:
            raise ArgumentError("--trials must be at least 1")
        if self.bins < 1:
            raise ArgumentError("--bins must be at least 1")
        if self.stride is not None and self.stride < 1:
            raise ArgumentError("--stride must be at least 1")
        if self.route not in ("evolve", "coeffs"):
            raise ArgumentError("--route must be 'evolve' or 'coeffs'")
        if not 0.0 < self.epsilon < 1.0:
            raise ArgumentError("--eps must lie in (0, 1)")

    def evolve_config(self, steps: int) -> EvolveConfig:
        """EvolveConfig for a run of the given number of steps (stride defaults to steps/10)."""
        stride = self.stride if self.stride is not None else max(1, steps // 10)
        return EvolveConfig(
            epsilon=self.epsilon,
            newton_tol=self.newton_tol,
            max_newton_iters=self.max_newton_iters,
            snapshot_stride=stride
        )
