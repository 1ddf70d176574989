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

import math
from typing import List, Union
import numpy as np
from numpy.polynomial import hermite, hermite_e
from scipy.linalg import eigh_tridiagonal
from scipy.special import binom
from .model import RootSet, EsymTable, MonicPoly, HermiteKind
from .exceptions import ArgumentError, RootRecoveryError


ArrayLike = Union[float, np.ndarray]

# Dekker's splitting constant 2**27 + 1
_SPLITTER = 134217729.0

# companion eigenvalues with a larger relative imaginary part mean the roots were lost
_IMAG_TOL = 1e-8

def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi

def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)

def _two_product(a, b):
    p = a * b
    a_hi, a_lo = _split(a)
    b_hi, b_lo = _split(b)
    return p, ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo

def esym_compensated(x: np.ndarray, k_max: int) -> np.ndarray:
    """
    Elementary symmetric polynomials e_0..e_k_max of the last axis of x.

    Roots are folded in one at a time with e_k <- e_k + x_j e_(k-1); every product and sum is
    carried as an error-free pair, so the result has the accuracy of twice the working precision.
    Leading axes of x are independent batches (e.g. Monte Carlo trials).

    Args:
        x (np.ndarray): Roots, shape (..., n).
        k_max (int): Highest index to compute.

    Returns:
        np.ndarray: Shape (..., k_max + 1); entries with k > n are zero.
    """
    x = np.asarray(x, dtype=float)
    batch = x.shape[:-1]
    hi = np.zeros(batch + (k_max + 1,))
    lo = np.zeros(batch + (k_max + 1,))
    hi[..., 0] = 1.0
    if k_max == 0:
        return hi

    for j in range(x.shape[-1]):
        top = min(j + 1, k_max)
        xj = x[..., j, None]
        p, p_err = _two_product(xj, hi[..., :top])
        s, s_err = _two_sum(hi[..., 1:top + 1], p)
        carried = lo[..., 1:top + 1] + (xj * lo[..., :top] + p_err + s_err)
        hi[..., 1:top + 1] = s
        lo[..., 1:top + 1] = carried

    return hi + lo

def elementary_symmetric_all(roots: RootSet, k_max: int) -> EsymTable:
    """
    Tabulate e_0..e_k_max of a root set.

    Args:
        roots (RootSet): The roots x_1..x_n.
        k_max (int): Highest index, k_max >= 0. Indices above n are zero.

    Returns:
        EsymTable: The table, with e_0 = 1.
    """
    if k_max < 0:
        raise ArgumentError(f"k_max must be nonnegative, got {k_max}")
    return EsymTable(esym_compensated(roots.roots, k_max), roots.n)

def power_sum(roots: RootSet, k: int) -> float:
    """Return x_1^k + ... + x_n^k, summed exactly and rounded once."""
    if k < 1:
        raise ArgumentError(f"Power sums need k >= 1, got {k}")
    return math.fsum(roots.roots ** k)

def power_sums_from_esym(poly: MonicPoly, m_max: int) -> List[float]:
    """
    Power sums q_1..q_m_max of the roots of a monic polynomial, from its coefficients alone.

    Uses the Newton identities q_m = sum_{i<m} (-1)^(i-1) f_i q_(m-i) + (-1)^(m-1) m f_m,
    with f_m = 0 beyond the degree.
    """
    if m_max < 1:
        raise ArgumentError(f"m_max must be at least 1, got {m_max}")
    f = poly.f
    ell = poly.degree
    q = [0.0] * (m_max + 1)
    for m in range(1, m_max + 1):
        terms = [(-1) ** (i - 1) * f[i] * q[m - i] for i in range(1, min(m - 1, ell) + 1)]
        if m <= ell:
            terms.append((-1) ** (m - 1) * m * f[m])
        q[m] = math.fsum(terms)
    return q[1:]

def derivative_scaling(n: int, ell: int) -> np.ndarray:
    """
    Factors l!(n-k)! / ((l-k)! n!) for k = 0..l, as running products of (l-i)/(n-i).

    Raw factorials are never formed, so n may be in the hundreds of thousands.
    """
    ratios = (ell - np.arange(ell, dtype=float)) / (n - np.arange(ell, dtype=float))
    return np.concatenate(([1.0], np.cumprod(ratios)))

def scaled_derivative_coeffs(roots: RootSet, ell: int) -> MonicPoly:
    """
    Monic normalisation (l!/n!) p^(n-l) of the (n-l)-th derivative of the polynomial with the given
    roots.

    Args:
        roots (RootSet): Roots of p, n of them.
        ell (int): Degree of the derivative, 1 <= l <= n.

    Returns:
        MonicPoly: Coefficients f_k = e_k l!(n-k)! / ((l-k)! n!).
    """
    n = roots.n
    if not 1 <= ell <= n:
        raise ArgumentError(f"Derivative degree must satisfy 1 <= l <= n = {n}, got {ell}")
    e = elementary_symmetric_all(roots, ell).e
    f = e * derivative_scaling(n, ell)
    f[0] = 1.0
    return MonicPoly(f)

def monic_roots(poly: MonicPoly, polish_iterations: int = 3) -> RootSet:
    """
    Roots of a real-rooted monic polynomial from its coefficients.

    Companion-matrix eigenvalues (numpy.roots) followed by a few Newton corrections on the
    coefficient form. Intended for modest degrees only: it is the dense cross-check of the
    differentiation engine.

    Raises:
        RootRecoveryError: The eigenvalues are not real, or the polished roots are not distinct.
    """
    coeffs = poly.numpy_coefficients()
    if poly.degree == 0:
        return RootSet(np.array([]))
    slope = np.polyder(coeffs)
    eig = np.roots(coeffs)
    imag = float(np.max(np.abs(eig.imag)))
    if imag > _IMAG_TOL * (1.0 + float(np.max(np.abs(eig)))):
        raise RootRecoveryError(poly.degree, f"eigenvalue with imaginary part {imag:.3e}")
    r = np.sort(eig.real)
    for _ in range(polish_iterations):
        d = np.polyval(slope, r)
        step = np.divide(np.polyval(coeffs, r), d, out=np.zeros_like(r), where=d != 0.0)
        r = r - step
    try:
        return RootSet.from_unsorted(r)
    except ArgumentError as e:
        raise RootRecoveryError(poly.degree, str(e)) from e

def _unit_series(ell: int) -> np.ndarray:
    c = np.zeros(ell + 1)
    c[ell] = 1.0
    return c

def hermite_eval(kind: HermiteKind, ell: int, x: ArrayLike) -> ArrayLike:
    """
    Evaluate He_l (probabilists') or H_l (physicists') at x.

    He_(k+1) = x He_k - k He_(k-1) and H_(k+1) = 2x H_k - 2k H_(k-1), run as a Clenshaw
    recurrence on the unit coefficient series; He_2(x) = x^2 - 1.
    """
    if ell < 0:
        raise ArgumentError(f"Hermite degree must be nonnegative, got {ell}")
    if kind is HermiteKind.PROBABILISTS:
        return hermite_e.hermeval(x, _unit_series(ell))
    return hermite.hermval(x, _unit_series(ell))

def hermite_newton_step(ell: int, x: np.ndarray) -> np.ndarray:
    """
    Newton correction He_l(x) / He_l'(x) = He_l(x) / (l He_(l-1)(x)).

    The three-term recurrence is renormalised at every step so that arguments of size sqrt(4l)
    do not overflow when l is in the thousands; only the ratio is meaningful.
    """
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    cur = x.copy()
    for k in range(1, ell):
        prev, cur = cur, x * cur - k * prev
        scale = np.abs(prev) + np.abs(cur)
        prev = prev / scale
        cur = cur / scale
    return cur / (ell * prev)

def hermite_roots(ell: int, polish_iterations: int = 3) -> RootSet:
    """
    Roots of He_l, sorted.

    Eigenvalues of the symmetric tridiagonal Jacobi matrix (zero diagonal, off-diagonal
    sqrt(1), ..., sqrt(l-1)), polished by Newton steps and symmetrised about the origin.
    """
    if ell < 1:
        raise ArgumentError(f"Hermite degree must be at least 1, got {ell}")
    if ell == 1:
        return RootSet(np.zeros(1))
    off = np.sqrt(np.arange(1, ell, dtype=float))
    y = eigh_tridiagonal(np.zeros(ell), off, eigvals_only=True)
    for _ in range(polish_iterations):
        step = hermite_newton_step(ell, y)
        y = y - step
        if np.max(np.abs(step)) <= 1e-15 * max(1.0, float(np.max(np.abs(y)))):
            break
    y = np.sort(y)
    y = 0.5 * (y - y[::-1])
    return RootSet(y)

def hermite_addition_eval(ell: int, a: float, b: float) -> float:
    """Return sum_k C(l,k) a^(l-k) He_k(b), which equals He_l(a + b)."""
    if ell < 0:
        raise ArgumentError(f"Hermite degree must be nonnegative, got {ell}")
    values = np.empty(ell + 1)
    values[0] = 1.0
    if ell >= 1:
        values[1] = b
    for k in range(1, ell):
        values[k + 1] = b * values[k] - k * values[k - 1]
    k = np.arange(ell + 1)
    return float(np.sum(binom(ell, k) * np.power(float(a), ell - k) * values))
