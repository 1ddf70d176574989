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
from flask import Blueprint
from dependency_injector.wiring import inject, Provide
from ..containers import Container
from ..services import ProjectionService
from ..model import ProjectionMode
from ..utils.failures import report_failures
from ..utils.options import run_options, build_run_config


bp = Blueprint('project', __name__, cli_group=None)

@bp.cli.command('project')
@run_options('dist', 'n', 'steps', 'seed', 'eps', 'bins', 'stride', 'input', 'normalize', 'out')
@click.option('--mode', type=click.Choice([m.value for m in ProjectionMode]),
              default=ProjectionMode.DETERMINISTIC.value, show_default=True,
              help='Projection direction: the all-ones vector or a uniform random one.')
@report_failures
@inject
def project(projection_service: ProjectionService = Provide[Container.projection_service],
            **options):
    """
    Iterate rank-one projections of a spectrum.

    Writes final_roots.csv, one histogram per snapshot and projection.json.
    """
    cfg = build_run_config('project', **options)
    trajectory, summary = projection_service.project(cfg)
    distance = summary['semicircle_distance']
    click.echo(
        f"project: {summary['mode']}, {summary['n']} -> {trajectory.final.n} eigenvalues"
        + (f", semicircle distance {distance:.4f}" if distance is not None else "")
        + f" -> {cfg.out_dir}"
    )
