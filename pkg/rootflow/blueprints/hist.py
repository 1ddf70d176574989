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
from ..services import HistogramService
from ..utils.failures import report_failures
from ..utils.options import run_options, build_run_config


bp = Blueprint('hist', __name__, cli_group=None)

@bp.cli.command('hist')
@run_options('input', 'bins', 'out')
@click.option('--semicircle', is_flag=True, default=False,
              help='Also report the distance to the variance-matched semicircle law.')
@report_failures
@inject
def hist(histogram_service: HistogramService = Provide[Container.histogram_service], **options):
    """Histogram a roots CSV into histogram.csv (bin_left,bin_right,count)."""
    cfg = build_run_config('hist', **options)
    histogram, distance = histogram_service.hist(cfg)
    click.echo(
        f"hist: {histogram.total} values in {histogram.counts.size} bins"
        + (f", semicircle distance {distance:.4f}" if distance is not None else "")
        + f" -> {cfg.out_dir}"
    )
