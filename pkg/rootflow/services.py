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
from pathlib import Path
from typing import Dict, List, Tuple, Union
import numpy as np
from flask import current_app
from flask_caching import Cache
from .repositories import RootsRepository, ReportRepository
from .model import (
    RunConfig, RootSet, DistributionSpec, Law, RngStream, Trajectory, SpectrumTrajectory,
    ProjectionMode, Histogram, ConservationReport, HermiteChainReport, LemmaReport,
    PropositionReport
)
from .exceptions import ArgumentError
from . import poly_core, reporting, sampling, verify
from .evolve import differentiate_many
from .projections import iterate_projections


# stream ids below this are sampling streams, projections draw from their own
PROJECTION_STREAM = 1 << 32

class RunService:
    """Functionality shared by the command services: input roots and snapshot output."""

    def __init__(
        self,
        roots_repository: RootsRepository,
        report_repository: ReportRepository
    ):
        self._roots_repository: RootsRepository = roots_repository
        self._report_repository: ReportRepository = report_repository

    @staticmethod
    def enabled_distributions() -> List[str]:
        """
        Returns:
            List: Names of the enabled sampling laws.
        """
        return list(current_app.distribution_instances.keys())

    def initial_roots(self, cfg: RunConfig) -> RootSet:
        """
        Roots read from cfg.input_path, or sampled from cfg.dist with stream (cfg.seed, 0).

        With cfg.normalize the roots are shifted and scaled to mean 0 and variance 1.
        """
        if cfg.input_path is not None:
            roots = self._roots_repository.load(cfg.input_path)
        else:
            spec = DistributionSpec.parse(cfg.dist, float(cfg.extra.get('jitter', 0.0)))
            roots = sampling.sample_roots(
                spec, cfg.n, RngStream(cfg.seed), current_app.distribution_instances
            )
        if cfg.normalize:
            roots, shift, scale = sampling.normalize_affine(roots)
            current_app.logger.info('Normalised roots: shift %.6g, scale %.6g', shift, scale)
        return roots

    @staticmethod
    def default_steps(cfg: RunConfig, roots: RootSet) -> int:
        """Requested number of steps, or half the roots when unset."""
        steps = cfg.steps if cfg.steps is not None else roots.n // 2
        if not 1 <= steps <= roots.n - 1:
            raise ArgumentError(f"--steps must lie in [1, {roots.n - 1}] for {roots.n} roots")
        return steps

    def save_snapshots(
        self,
        out_dir: Path,
        trajectory: Union[Trajectory, SpectrumTrajectory],
        bins: int
    ) -> List[Path]:
        """Write the final roots and one histogram per snapshot."""
        paths = [self._roots_repository.save(out_dir / 'final_roots.csv', trajectory.final)]
        for step, roots in trajectory.snapshots:
            paths.append(self._report_repository.save_histogram(
                out_dir / f"hist_step_{step:06d}.csv", reporting.histogram(roots.roots, bins)
            ))
        return paths

class SampleService(RunService):  # pylint: disable=too-few-public-methods
    """A service providing the `sample` command."""

    def sample(self, cfg: RunConfig) -> Tuple[RootSet, Path]:
        """
        Draw a root sample and store it as roots.csv.

        Returns:
            Tuple[RootSet, Path]: The roots and the written file.
        """
        roots = self.initial_roots(cfg)
        path = self._roots_repository.save(cfg.out_dir / 'roots.csv', roots)
        return roots, path

class EvolveService(RunService):  # pylint: disable=too-few-public-methods
    """A service providing the `evolve` command."""

    def evolve(self, cfg: RunConfig) -> Tuple[Trajectory, ConservationReport]:
        """
        Differentiate repeatedly and store final roots, snapshot histograms and conservation data.

        Gap-law runs also record how many roots occupy (-1, 1) at every snapshot.
        """
        roots = self.initial_roots(cfg)
        steps = self.default_steps(cfg, roots)
        current_app.logger.info('Evolving %d roots through %d differentiations', roots.n, steps)

        trajectory = differentiate_many(roots, steps, cfg.evolve_config(steps))
        self.save_snapshots(cfg.out_dir, trajectory, cfg.bins)

        report = verify.conservation_report(trajectory)
        self._report_repository.save_json(cfg.out_dir / 'conservation.json', report.to_dict())
        self._report_repository.save_table(
            cfg.out_dir / 'variance.csv', ('ell', 'observed', 'predicted'),
            verify.variance_prediction(trajectory)
        )
        if cfg.input_path is None and cfg.dist == Law.GAP.value:
            self._report_repository.save_table(
                cfg.out_dir / 'occupancy.csv', ('step', 'count'),
                reporting.gap_occupancy(trajectory)
            )
        return trajectory, report

class ProjectionService(RunService):  # pylint: disable=too-few-public-methods
    """A service providing the `project` command."""

    def project(self, cfg: RunConfig) -> Tuple[SpectrumTrajectory, Dict[str, object]]:
        """
        Iterate rank-one projections of a sampled (or loaded) spectrum.

        Random directions come from stream (cfg.seed, PROJECTION_STREAM), so the spectrum and
        the directions never share random numbers.
        """
        mode = ProjectionMode(cfg.extra.get('mode', ProjectionMode.DETERMINISTIC.value))
        eigs = self.initial_roots(cfg)
        steps = self.default_steps(cfg, eigs)
        rng = RngStream(cfg.seed, PROJECTION_STREAM) if mode is ProjectionMode.RANDOM else None
        current_app.logger.info('Projecting %d eigenvalues %d times (%s)', eigs.n, steps, mode.value)

        trajectory = iterate_projections(eigs, steps, mode, rng, cfg.evolve_config(steps))
        self.save_snapshots(cfg.out_dir, trajectory, cfg.bins)

        final = trajectory.final
        summary = {
            'mode': mode.value,
            'n': eigs.n,
            'steps': steps,
            'seed': cfg.seed,
            'final_count': final.n,
            'semicircle_distance': (
                reporting.semicircle_distance(final.roots) if final.n >= 2 else None
            ),
        }
        self._report_repository.save_json(cfg.out_dir / 'projection.json', summary)
        return trajectory, summary

class HistogramService(RunService):  # pylint: disable=too-few-public-methods
    """A service providing the `hist` command."""

    def hist(self, cfg: RunConfig) -> Tuple[Histogram, Union[float, None]]:
        """
        Histogram a roots CSV, optionally with its distance to the semicircle law.

        Returns:
            Tuple[Histogram, float]: The histogram and the semicircle distance (None unless asked).
        """
        if cfg.input_path is None:
            raise ArgumentError("hist needs --input")
        roots = self._roots_repository.load(cfg.input_path)
        histogram = reporting.histogram(roots.roots, cfg.bins)
        self._report_repository.save_histogram(cfg.out_dir / 'histogram.csv', histogram)

        distance = None
        if cfg.extra.get('semicircle'):
            distance = reporting.semicircle_distance(roots.roots)
            self._report_repository.save_json(
                cfg.out_dir / 'semicircle.json', {'n': roots.n, 'semicircle_distance': distance}
            )
        return histogram, distance

class VerifyService(RunService):
    """A service providing the `verify` commands."""

    def __init__(
        self,
        roots_repository: RootsRepository,
        report_repository: ReportRepository,
        cache: Cache
    ):
        super().__init__(roots_repository, report_repository)
        self._cache: Cache = cache

    def hermite_targets(self, ell: int) -> RootSet:
        """Roots of He_l, memoised in the application cache."""
        key = f"hermite_roots:{ell}"
        values = self._cache.get(key)
        if values is None:
            values = np.array(poly_core.hermite_roots(ell).roots)
            self._cache.set(key, values)
        return RootSet(values)

    def theorem(self, cfg: RunConfig) -> Dict[str, float]:
        """
        Hermite fits over seeded trials; writes theorem_trials.csv and theorem.json.

        With extra['profile'] the log profile of trial 0 is written to profile.json.
        """
        ell = cfg.ell if cfg.ell is not None else min(50, cfg.n)
        spec = DistributionSpec.parse(cfg.dist)
        cfg_evolve = cfg.evolve_config(max(1, cfg.n - ell))
        targets = self.hermite_targets(ell)
        rng = RngStream(cfg.seed)
        current_app.logger.info(
            'Theorem check: %s, n=%d, l=%d, %d trials, route %s',
            cfg.dist, cfg.n, ell, cfg.trials, cfg.route
        )

        reports = verify.theorem_trials(
            spec, cfg.n, ell, cfg.trials, rng, cfg_evolve, cfg.route,
            current_app.distribution_instances, targets
        )
        self._report_repository.save_table(
            cfg.out_dir / 'theorem_trials.csv', ('trial', 'gamma', 'rms_error'),
            ((t, r.gamma, r.rms_error) for t, r in enumerate(reports))
        )
        summary = dict(verify.summarize_fits(reports), n=cfg.n, ell=ell, route=cfg.route)
        self._report_repository.save_json(cfg.out_dir / 'theorem.json', summary)

        if cfg.extra.get('profile'):
            roots = sampling.sample_roots(
                spec, cfg.n, rng.child(0), current_app.distribution_instances
            )
            final = verify.theorem_roots(roots, ell, cfg_evolve, cfg.route)
            edge = 1.1 * float(np.max(np.abs(targets.roots))) + 1.0
            profile = verify.theorem_profile(final, cfg.n, np.linspace(-edge, edge, 401), targets)
            self._report_repository.save_json(cfg.out_dir / 'profile.json', profile.to_dict())
        return summary

    def lemma(self, cfg: RunConfig) -> List[LemmaReport]:
        """Lemma sweep for every m in extra['m'] over extra['n_grid']; writes lemma.json."""
        spec = DistributionSpec.parse(cfg.dist)
        m_values = list(cfg.extra.get('m', (2, 3, 4, 5, 6)))
        n_grid = list(cfg.extra.get('n_grid', (100, 400, 1600)))
        rng = RngStream(cfg.seed)

        reports = []
        for m in m_values:
            reports += verify.lemma_sweep(
                spec, m, n_grid, cfg.trials, rng, current_app.distribution_instances
            )
            if cfg.extra.get('scatter'):
                n = max(n_grid)
                rows = verify.lemma_scatter(
                    spec, m, n, cfg.trials, rng, current_app.distribution_instances
                )
                self._report_repository.save_table(
                    cfg.out_dir / f"lemma_scatter_m{m}.csv", ('u', 'v', 'hermite'), rows.tolist()
                )
        self._report_repository.save_json(
            cfg.out_dir / 'lemma.json',
            {'dist': cfg.dist, 'reports': [r.to_dict() for r in reports]}
        )
        return reports

    def conservation(self, cfg: RunConfig) -> ConservationReport:
        """Run a trajectory and check the mean and the pairwise-square identity at every snapshot."""
        roots = self.initial_roots(cfg)
        steps = self.default_steps(cfg, roots)
        trajectory = differentiate_many(roots, steps, cfg.evolve_config(steps))
        report = verify.conservation_report(trajectory)
        self._report_repository.save_json(cfg.out_dir / 'conservation.json', report.to_dict())
        self._report_repository.save_table(
            cfg.out_dir / 'variance.csv', ('ell', 'observed', 'predicted'),
            verify.variance_prediction(trajectory)
        )
        return report

    def proposition(self, cfg: RunConfig) -> PropositionReport:
        """Proposition check on the grid extra['y_grid'] (default [-2, 2] in steps of 0.05)."""
        ell = cfg.ell if cfg.ell is not None else 0
        grid = cfg.extra.get('y_grid')
        if grid is None:
            grid = np.linspace(-2.0, 2.0, 81)
        report = verify.proposition_check(cfg.n, ell, grid)
        self._report_repository.save_json(cfg.out_dir / 'proposition.json', report.to_dict())
        return report

    def hermite_chain(self, cfg: RunConfig) -> HermiteChainReport:
        """
        Differentiate He_n down to He_(n-steps); writes hermite_chain.json.

        The wall time is logged and returned but kept out of the file.
        """
        steps = cfg.steps if cfg.steps is not None else cfg.n // 2
        if not 1 <= steps <= cfg.n - 1:
            raise ArgumentError(f"--steps must lie in [1, {cfg.n - 1}]")
        report = verify.hermite_chain(
            cfg.n, steps, cfg.evolve_config(steps), self.hermite_targets(cfg.n - steps)
        )
        data = report.to_dict()
        del data['seconds']
        self._report_repository.save_json(cfg.out_dir / 'hermite_chain.json', data)
        return report

    def two_route(self, cfg: RunConfig) -> float:
        """Compare the evolve and coefficient routes on one sample; writes two_route.json."""
        ell = cfg.ell if cfg.ell is not None else min(10, cfg.n)
        roots = self.initial_roots(cfg)
        difference = verify.two_route_check(roots, ell, cfg.evolve_config(max(1, roots.n - ell)))
        self._report_repository.save_json(
            cfg.out_dir / 'two_route.json',
            {'n': roots.n, 'ell': ell, 'max_abs_difference': difference,
             'scaled_difference': difference * math.sqrt(roots.n)}
        )
        return difference
