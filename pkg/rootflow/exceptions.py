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

from typing import Optional


class RootflowError(Exception):
    """Base exception for all rootflow errors."""

class ArgumentError(RootflowError, ValueError):
    """Exception for arguments that violate an operation's preconditions."""

class DegenerateInputError(ArgumentError):
    """Exception for inputs without spread, e.g. zero variance."""
    def __init__(self, what: str):
        super().__init__(f"Degenerate input: {what}")

class DistributionUnavailableError(RootflowError):
    """Exception for sampling laws that are unknown or not enabled."""
    def __init__(self, name: str):
        super().__init__(f"Distribution '{name}' is unavailable")

class NumericalFailure(RootflowError, ArithmeticError):
    """
    Base exception for solver failures.

    The step attribute is filled in by the multi-step drivers so that the command line can
    report where an evolution broke down.
    """
    step: Optional[int] = None

    def annotate_step(self, step: int) -> "NumericalFailure":
        """Attach the differentiation (or projection) step number and return self."""
        self.step = step
        self.args = (f"step {step}: {self.args[0]}",) + self.args[1:]
        return self

class SourceCollisionError(NumericalFailure):
    """Exception for Cauchy-sum queries that coincide with a source position."""
    def __init__(self, index: int, query: float):
        self.index = index
        super().__init__(f"Query {index} at {query!r} collides with a source")

class NewtonConvergenceError(NumericalFailure):
    """Exception for interval solves that did not converge."""
    def __init__(self, interval: int, iterations: int):
        self.interval = interval
        super().__init__(
            f"Newton/bisection did not converge on interval {interval} after {iterations} iterations"
        )

class DegenerateGapError(NumericalFailure):
    """Exception for intervals between consecutive sources that are numerically empty."""
    def __init__(self, interval: int, width: float):
        self.interval = interval
        self.width = width
        super().__init__(f"Interval {interval} has degenerate width {width!r}")

class RootRecoveryError(NumericalFailure):
    """Exception for coefficient-form root finding that did not return distinct real roots."""
    def __init__(self, degree: int, reason: str):
        self.degree = degree
        super().__init__(
            f"Dense root finding failed at degree {degree}: {reason}; "
            "the coefficient form is too ill-conditioned, use the evolve route"
        )
