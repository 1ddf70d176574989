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

from functools import wraps
import click
from flask import current_app
from ..exceptions import ArgumentError, DistributionUnavailableError, NumericalFailure


def report_failures(func):
    """
    A decorator applied to commands that run the numerical engine.

    Argument errors raised by the library become click usage errors (exit status 2). Numerical
    failures are logged and printed to stderr with their step and interval, and the command exits
    with status 1.

    Args:
        func: Command callback to guard.

    Returns:
        function: The guarded callback.
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (ArgumentError, DistributionUnavailableError) as e:
            raise click.UsageError(str(e)) from e
        except NumericalFailure as e:
            current_app.logger.error('Numerical failure: %s', e)
            click.echo(f"error: {e}", err=True)
            raise click.exceptions.Exit(1) from e

    return wrapper
