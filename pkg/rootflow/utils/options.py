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

from pathlib import Path
from typing import Optional
import click
from flask import current_app
from ..model import Law, RunConfig


_OPTIONS = {
    'dist': click.option(
        '--dist', type=click.Choice([law.value for law in Law]), default=Law.UNIFORM_SYM.value,
        show_default=True, help='Law of the i.i.d. initial roots.'
    ),
    'n': click.option('--n', 'n', type=int, default=1000, show_default=True, help='Number of roots.'),
    'steps': click.option('--steps', type=int, default=None, help='Number of differentiations.'),
    'ell': click.option('--ell', type=int, default=None, help='Number of roots kept at the end.'),
    'seed': click.option('--seed', type=int, default=0, show_default=True, help='Random seed.'),
    'trials': click.option('--trials', type=int, default=None, help='Monte Carlo trials.'),
    'eps': click.option('--eps', type=float, default=None, help='Fast-sum accuracy.'),
    'bins': click.option('--bins', type=int, default=None, help='Histogram bins.'),
    'stride': click.option('--stride', type=int, default=None, help='Snapshot stride.'),
    'input': click.option(
        '--input', 'input_path', type=click.Path(exists=True, dir_okay=False, path_type=Path),
        default=None, help='Roots CSV to start from instead of sampling.'
    ),
    'out': click.option(
        '--out', 'out_dir', type=click.Path(file_okay=False, path_type=Path), default=None,
        help='Output directory.'
    ),
    'normalize': click.option(
        '--normalize', is_flag=True, default=False, help='Shift and scale roots to mean 0, variance 1.'
    ),
    'route': click.option(
        '--route', type=click.Choice(['evolve', 'coeffs']), default='evolve', show_default=True,
        help='How the final roots are computed.'
    ),
}

def run_options(*names: str):
    """Decorator applying the named shared command-line options, in the given order."""
    def decorator(func):
        for name in reversed(names):
            func = _OPTIONS[name](func)
        return func
    return decorator

def build_run_config(  # pylint: disable=too-many-arguments
    command: str,
    out_dir: Optional[Path] = None,
    trials: Optional[int] = None,
    eps: Optional[float] = None,
    bins: Optional[int] = None,
    trials_key: str = 'THEOREM_TRIALS',
    **kwargs
) -> RunConfig:
    """
    Validated RunConfig for a command, with unset flags taken from the app config.

    The output directory defaults to OUTPUT_DIR/<command>.
    """
    config = current_app.config
    known = {k: kwargs.pop(k) for k in list(kwargs) if k in RunConfig.__dataclass_fields__}
    return RunConfig(
        command=command,
        out_dir=Path(out_dir) if out_dir is not None else Path(config['OUTPUT_DIR']) / command,
        trials=trials if trials is not None else int(config[trials_key]),
        epsilon=eps if eps is not None else float(config['EPSILON']),
        newton_tol=float(config['NEWTON_TOL']),
        max_newton_iters=int(config['MAX_NEWTON_ITERS']),
        bins=bins if bins is not None else int(config['BINS']),
        extra=kwargs,
        **known
    )
