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
from ..services import EvolveService
from ..utils.failures import report_failures
from ..utils.options import run_options, build_run_config


bp = Blueprint('evolve', __name__, cli_group=None)

@bp.cli.command('evolve')
@run_options(
    'dist', 'n', 'steps', 'seed', 'eps', 'bins', 'stride', 'input', 'normalize', 'out'
)
@report_failures
@inject
def evolve(evolve_service: EvolveService = Provide[Container.evolve_service], **options):
    """
    Differentiate a sampled (or loaded) polynomial repeatedly.

    Writes final_roots.csv, one histogram per snapshot, conservation.json and variance.csv
    (plus occupancy.csv for the gap law).
    """
    cfg = build_run_config('evolve', **options)
    trajectory, report = evolve_service.evolve(cfg)
    click.echo(
        f"evolve: {trajectory.snapshots[0][1].n} -> {trajectory.final.n} roots, "
        f"mean drift {report.mean_drift:.3e}, "
        f"pairwise error {report.pairwise_identity_rel_err:.3e} -> {cfg.out_dir}"
    )
