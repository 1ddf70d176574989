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
from dataclasses import dataclass
from typing import Sequence, Tuple
import numpy as np
from numpy.polynomial.chebyshev import chebpts1
from .model import SourceSet
from .exceptions import ArgumentError, SourceCollisionError


logger = logging.getLogger(__name__)

# rows of a query block times its width, bounds the temporary arrays of eval_batch
_BLOCK_ENTRIES = 1 << 22

# M2L offsets in units of the box width; +3 only for left children, -3 only for right children
_INTERACTION_OFFSETS = (-3, -2, 2, 3)

@dataclass(frozen=True, eq=False)
class SumPlan:  # pylint: disable=too-many-instance-attributes
    """
    Precomputed near/farfield split of S(r) = sum_i w_i / (r - x_i).

    The source span is cut into `panels` bins of equal `width`. For every panel, the contribution
    of all sources outside the panel and its `near_radius` neighbours on each side is tabulated at
    `cheb_order` Chebyshev nodes (`far_values`, derivative in `far_slopes`). A plan without
    farfield tables sums every query directly.
    """
    n: int
    lower: float
    upper: float
    width: float
    panels: int
    levels: int
    panel_start: np.ndarray
    near_radius: int
    near_width: int
    epsilon: float
    cheb_order: int
    nodes: np.ndarray
    bary: np.ndarray
    far_values: np.ndarray
    far_slopes: np.ndarray

    @property
    def direct(self) -> bool:
        """True when the plan degenerated to direct summation."""
        return self.far_values.size == 0

def cheb_order_for(epsilon: float) -> int:
    """Nodes per panel for a requested accuracy: ceil(log(1/eps) / log 4) + 2."""
    return math.ceil(math.log(1.0 / epsilon) / math.log(4.0)) + 2

def _barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    diffs = np.add.outer(-nodes, nodes)
    np.fill_diagonal(diffs, 1.0)
    weights = 1.0 / np.prod(diffs, axis=0)
    return weights / np.max(np.abs(weights))

def _differentiation_matrix(nodes: np.ndarray, bary: np.ndarray) -> np.ndarray:
    diffs = np.subtract.outer(nodes, nodes)
    np.fill_diagonal(diffs, 1.0)
    dmat = np.divide.outer(1.0 / bary, 1.0 / bary) / diffs
    np.fill_diagonal(dmat, 0.0)
    np.fill_diagonal(dmat, -dmat.sum(axis=1))
    return dmat

def _lagrange_matrix(points: np.ndarray, nodes: np.ndarray, bary: np.ndarray) -> np.ndarray:
    """L[i, k] = k-th Lagrange basis polynomial of the nodes, evaluated at points[i]."""
    diffs = points[:, None] - nodes[None, :]
    exact = diffs == 0.0
    terms = bary / np.where(exact, 1.0, diffs)
    basis = terms / terms.sum(axis=1, keepdims=True)
    hit = exact.any(axis=1)
    basis[hit] = exact[hit].astype(float)
    return basis

def _interpolate(u: np.ndarray, values: np.ndarray, nodes: np.ndarray, bary: np.ndarray) -> np.ndarray:
    """Row-wise barycentric interpolation: values[i] are node values for the point u[i]."""
    diffs = u[:, None] - nodes[None, :]
    exact = diffs == 0.0
    terms = bary / np.where(exact, 1.0, diffs)
    result = (terms * values).sum(axis=1) / terms.sum(axis=1)
    hit = exact.any(axis=1)
    if hit.any():
        result[hit] = values[hit][exact[hit]]
    return result

def direct_sum(sources: SourceSet, queries) -> Tuple[np.ndarray, np.ndarray]:
    """
    O(n) per query evaluation of S and dS = -sum_i w_i / (r - x_i)^2.

    Raises:
        SourceCollisionError: A query coincides with a source position.
    """
    queries = np.atleast_1d(np.asarray(queries, dtype=float))
    s_out = np.empty(queries.size)
    ds_out = np.empty(queries.size)
    block = max(1, _BLOCK_ENTRIES // sources.n)
    for start in range(0, queries.size, block):
        r = queries[start:start + block]
        d = r[:, None] - sources.positions[None, :]
        zero = d == 0.0
        if zero.any():
            row = int(np.nonzero(zero.any(axis=1))[0][0])
            raise SourceCollisionError(start + row, float(r[row]))
        terms = sources.weights / d
        s_out[start:start + block] = terms.sum(axis=1)
        ds_out[start:start + block] = -(terms / d).sum(axis=1)
    return s_out, ds_out

def build_plan(sources: SourceSet, epsilon: float) -> SumPlan:
    """
    Build the near/farfield plan for repeated evaluation of a weighted Cauchy sum.

    The farfield node values are computed with a one-dimensional Chebyshev fast multipole pass over
    a binary tree of panels (anterpolation to leaf nodes, upward translation, interactions between
    well-separated boxes, downward interpolation), which keeps the precomputation at
    O(n log(n / eps)) operations.

    Args:
        sources (SourceSet): Positions and weights.
        epsilon (float): Requested accuracy, 0 < eps < 1.

    Returns:
        SumPlan: An immutable plan, safe to share between threads.
    """
    if not 0.0 < epsilon < 1.0:
        raise ArgumentError(f"epsilon must lie in (0, 1), got {epsilon!r}")

    x = sources.positions
    w = sources.weights
    n = sources.n
    p = cheb_order_for(epsilon)
    nodes = chebpts1(p)
    bary = _barycentric_weights(nodes)
    lower, upper = float(x[0]), float(x[-1])

    if n <= 4 * p or upper <= lower:
        return SumPlan(
            n=n, lower=lower, upper=upper, width=max(upper - lower, 0.0), panels=1, levels=0,
            panel_start=np.array([0, n]), near_radius=1, near_width=n, epsilon=epsilon,
            cheb_order=p, nodes=nodes, bary=bary, far_values=np.empty((0, p)),
            far_slopes=np.empty((0, p))
        )

    levels = max(2, math.ceil(math.log2(n / p)))
    panels = 2 ** levels
    width = (upper - lower) / panels
    panel_of = np.clip(np.floor((x - lower) / width).astype(np.int64), 0, panels - 1)
    panel_start = np.searchsorted(panel_of, np.arange(panels + 1), side='left')
    counts = np.diff(panel_start)
    near_counts = np.convolve(counts, np.ones(3, dtype=np.int64), mode='same')
    near_width = int(near_counts.max())

    # upward pass: leaf anterpolation, then child-to-parent translation
    centers = lower + (np.arange(panels) + 0.5) * width
    u = 2.0 * (x - centers[panel_of]) / width
    weighted = w[:, None] * _lagrange_matrix(u, nodes, bary)
    leaf = np.zeros((panels, p))
    filled = counts > 0
    leaf[filled] = np.add.reduceat(weighted, panel_start[:-1][filled], axis=0)

    to_left = _lagrange_matrix(0.5 * (nodes - 1.0), nodes, bary)
    to_right = _lagrange_matrix(0.5 * (nodes + 1.0), nodes, bary)
    multipole = [None] * (levels + 1)
    multipole[levels] = leaf
    for lvl in range(levels, 0, -1):
        child = multipole[lvl]
        multipole[lvl - 1] = child[0::2] @ to_left + child[1::2] @ to_right

    # interactions between well-separated boxes of equal size, then parent-to-child translation
    gaps = np.subtract.outer(nodes, nodes) / 2.0
    local = np.zeros((4, p))
    for lvl in range(2, levels + 1):
        boxes = 2 ** lvl
        box_width = (upper - lower) / boxes
        if lvl > 2:
            parent = local
            local = np.empty((boxes, p))
            local[0::2] = parent @ to_left.T
            local[1::2] = parent @ to_right.T
        targets = np.arange(boxes)
        for offset in _INTERACTION_OFFSETS:
            kernel = 1.0 / (box_width * (gaps - offset))
            valid = (targets + offset >= 0) & (targets + offset < boxes)
            if offset == 3:
                valid &= targets % 2 == 0
            elif offset == -3:
                valid &= targets % 2 == 1
            rows = targets[valid]
            local[rows] += multipole[lvl][rows + offset] @ kernel.T

    slopes = local @ _differentiation_matrix(nodes, bary).T * (2.0 / width)
    logger.debug(
        'Built Cauchy-sum plan: n=%d panels=%d order=%d near_width=%d', n, panels, p, near_width
    )
    return SumPlan(
        n=n, lower=lower, upper=upper, width=width, panels=panels, levels=levels,
        panel_start=panel_start, near_radius=1, near_width=near_width, epsilon=epsilon,
        cheb_order=p, nodes=nodes, bary=bary, far_values=local, far_slopes=slopes
    )

def eval_batch(
    plan: SumPlan,
    sources: SourceSet,
    queries: Sequence[float]
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluate S and dS at many queries.

    Each query is handled identically whatever else is in the batch, so the result equals mapping
    eval_pair over the queries bit for bit.

    Returns:
        Tuple[np.ndarray, np.ndarray]: S values and dS values, one per query.

    Raises:
        SourceCollisionError: A query coincides with a source; its index is carried.
    """
    if sources.n != plan.n:
        raise ArgumentError("Source set does not match the plan")
    queries = np.atleast_1d(np.asarray(queries, dtype=float))
    if queries.size == 0:
        return np.empty(0), np.empty(0)
    if plan.direct:
        return direct_sum(sources, queries)

    s_out = np.empty(queries.size)
    ds_out = np.empty(queries.size)
    inside = (queries >= plan.lower) & (queries <= plan.upper)
    outside = np.nonzero(~inside)[0]
    for idx in outside:
        try:
            s_val, ds_val = direct_sum(sources, queries[idx:idx + 1])
        except SourceCollisionError as e:
            raise SourceCollisionError(int(idx), float(queries[idx])) from e
        s_out[idx], ds_out[idx] = s_val[0], ds_val[0]

    x = sources.positions
    w = sources.weights
    width = plan.near_width
    columns = np.arange(width)
    block = max(1, _BLOCK_ENTRIES // max(width, plan.cheb_order))
    rows_inside = np.nonzero(inside)[0]
    for start in range(0, rows_inside.size, block):
        rows = rows_inside[start:start + block]
        r = queries[rows]
        panel = np.clip(np.floor((r - plan.lower) / plan.width).astype(np.int64), 0, plan.panels - 1)

        first = plan.panel_start[np.maximum(panel - 1, 0)]
        stop = plan.panel_start[np.minimum(panel + 2, plan.panels)]
        gather = first[:, None] + columns[None, :]
        mask = gather < stop[:, None]
        gather = np.minimum(gather, plan.n - 1)
        d = r[:, None] - x[gather]
        zero = (d == 0.0) & mask
        if zero.any():
            row = int(np.nonzero(zero.any(axis=1))[0][0])
            raise SourceCollisionError(int(rows[row]), float(r[row]))
        safe = np.where(mask, d, 1.0)
        terms = np.where(mask, w[gather] / safe, 0.0)
        near_s = terms.sum(axis=1)
        near_ds = -(terms / safe).sum(axis=1)

        u = 2.0 * (r - (plan.lower + (panel + 0.5) * plan.width)) / plan.width
        far_s = _interpolate(u, plan.far_values[panel], plan.nodes, plan.bary)
        far_ds = _interpolate(u, plan.far_slopes[panel], plan.nodes, plan.bary)
        s_out[rows] = near_s + far_s
        ds_out[rows] = near_ds + far_ds

    return s_out, ds_out

def eval_pair(plan: SumPlan, sources: SourceSet, r: float) -> Tuple[float, float]:
    """
    Evaluate S(r) and dS(r) through the plan.

    Raises:
        SourceCollisionError: r coincides with a source position.
    """
    s_val, ds_val = eval_batch(plan, sources, [r])
    return float(s_val[0]), float(ds_val[0])
