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

import click
import numpy as np
from flask import Blueprint
from dependency_injector.wiring import inject, Provide
from ..containers import Container
from ..services import VerifyService
from ..utils.failures import report_failures
from ..utils.options import run_options, build_run_config


bp = Blueprint('verify', __name__, cli_group='verify')

def _int_list(ctx, param, value):  # pylint: disable=unused-argument
    try:
        values = tuple(int(v) for v in value.split(',') if v.strip())
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated integers, got '{value}'") from e
    if not values:
        raise click.BadParameter("at least one value is required")
    return values

@bp.cli.command('theorem')
@run_options('dist', 'n', 'ell', 'seed', 'trials', 'eps', 'route', 'out')
@click.option('--profile', is_flag=True, default=False,
              help='Also write the log profile of the first trial.')
@report_failures
@inject
def theorem(verify_service: VerifyService = Provide[Container.verify_service], **options):
    """
    Fit the final l roots of many samples to the roots of He_l.

    Writes theorem_trials.csv (trial,gamma,rms_error) and theorem.json with the mean and variance
    of the shifts and the median error.
    """
    cfg = build_run_config('verify-theorem', **options)
    summary = verify_service.theorem(cfg)
    click.echo(
        f"theorem: {summary['trials']} trials, gamma mean {summary['gamma_mean']:.4f}, "
        f"variance {summary['gamma_variance']:.4f}, "
        f"median error {summary['rms_error_median']:.4e} -> {cfg.out_dir}"
    )

@bp.cli.command('lemma')
@run_options('dist', 'seed', 'trials', 'out')
@click.option('--m', 'm', default='2,3,4,5,6', show_default=True, callback=_int_list,
              help='Indices of the symmetric polynomials, comma separated.')
@click.option('--n-grid', default='100,400,1600', show_default=True, callback=_int_list,
              help='Numbers of roots, comma separated.')
@click.option('--scatter', is_flag=True, default=False,
              help='Also write the scaled (e_1, e_m) pairs for the largest n.')
@report_failures
@inject
def lemma(verify_service: VerifyService = Provide[Container.verify_service], **options):
    """Estimate E|e_m - prediction| / n^((m-1)/2) over a grid of n; writes lemma.json."""
    cfg = build_run_config('verify-lemma', trials_key='LEMMA_TRIALS', **options)
    reports = verify_service.lemma(cfg)
    worst = max(reports, key=lambda r: r.normalized_ratio)
    click.echo(
        f"lemma: {len(reports)} cells, largest ratio {worst.normalized_ratio:.4g} "
        f"(m={worst.m}, n={worst.n}) -> {cfg.out_dir}"
    )

@bp.cli.command('conservation')
@run_options('dist', 'n', 'steps', 'seed', 'eps', 'stride', 'input', 'normalize', 'out')
@report_failures
@inject
def conservation(verify_service: VerifyService = Provide[Container.verify_service], **options):
    """Check mean invariance and the pairwise-square identity along a trajectory."""
    cfg = build_run_config('verify-conservation', **options)
    report = verify_service.conservation(cfg)
    click.echo(
        f"conservation: {report.steps_checked} snapshot pairs, "
        f"mean drift {report.mean_drift:.3e}, "
        f"pairwise error {report.pairwise_identity_rel_err:.3e} -> {cfg.out_dir}"
    )

@bp.cli.command('proposition')
@run_options('n', 'ell', 'out')
@click.option('--y-min', type=float, default=-2.0, show_default=True)
@click.option('--y-max', type=float, default=2.0, show_default=True)
@click.option('--y-step', type=float, default=0.05, show_default=True)
@report_failures
@inject
def proposition(verify_service: VerifyService = Provide[Container.verify_service],
                y_min=-2.0, y_max=2.0, y_step=0.05, **options):
    """Compare derivatives of (1 - y^2/n)^n with the Hermite limit on a grid."""
    if y_step <= 0.0 or y_max < y_min:
        raise click.UsageError("The grid needs y-min <= y-max and a positive y-step")
    count = int(round((y_max - y_min) / y_step)) + 1
    cfg = build_run_config(
        'verify-proposition', y_grid=np.linspace(y_min, y_max, count).tolist(), **options
    )
    report = verify_service.proposition(cfg)
    click.echo(
        f"proposition: n={report.n}, l={report.ell}, "
        f"max deviation {report.max_deviation:.4e} -> {cfg.out_dir}"
    )

@bp.cli.command('hermite-chain')
@click.option('--n', 'n', type=int, default=2000, show_default=True, help='Starting degree.')
@run_options('steps', 'eps', 'out')
@report_failures
@inject
def hermite_chain(verify_service: VerifyService = Provide[Container.verify_service], **options):
    """Differentiate He_n and compare with the roots of He_(n-steps)."""
    cfg = build_run_config('verify-hermite-chain', **options)
    report = verify_service.hermite_chain(cfg)
    click.echo(
        f"hermite-chain: He_{report.n} -> He_{report.n - report.steps}, "
        f"max error {report.max_abs_error:.4e}, {report.seconds:.2f} s -> {cfg.out_dir}"
    )

@bp.cli.command('two-route')
@run_options('dist', 'n', 'ell', 'seed', 'eps', 'input', 'out')
@report_failures
@inject
def two_route(verify_service: VerifyService = Provide[Container.verify_service], **options):
    """Compare final roots from repeated differentiation and from the coefficients."""
    cfg = build_run_config('verify-two-route', **options)
    difference = verify_service.two_route(cfg)
    click.echo(f"two-route: max abs difference {difference:.4e} -> {cfg.out_dir}")
