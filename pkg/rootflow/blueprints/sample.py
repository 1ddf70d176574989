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
from ..services import SampleService
from ..utils.failures import report_failures
from ..utils.options import run_options, build_run_config


bp = Blueprint('sample', __name__, cli_group=None)

@bp.cli.command('sample')
@run_options('dist', 'n', 'seed', 'normalize', 'out')
@click.option('--jitter', type=float, default=0.0, show_default=True,
              help='Perturbation of colliding samples, relative to the spread.')
@report_failures
@inject
def sample(sample_service: SampleService = Provide[Container.sample_service], **options):
    """
    Draw i.i.d. roots and write them to roots.csv.

    The file has a `root` header and one value per line with 17 significant digits; it can be
    passed unchanged to `evolve --input`.
    """
    cfg = build_run_config('sample', **options)
    roots, path = sample_service.sample(cfg)
    click.echo(f"sample: {roots.n} roots from {cfg.dist} (seed {cfg.seed}) -> {path}")
