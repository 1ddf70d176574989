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

import os
from flask import Flask
from .sampling import AVAILABLE_DISTRIBUTIONS, DistributionLaw


def create_app(test_config=None):
    """Create and configure an instance of the Flask application."""
    app = Flask(__name__, instance_relative_config=True)

    app.config.from_mapping(
        # fast-sum accuracy and Newton controls
        EPSILON=1e-12,
        NEWTON_TOL=1e-14,
        MAX_NEWTON_ITERS=60,
        # histogram bins per snapshot
        BINS=50,
        # Monte Carlo sizes
        LEMMA_TRIALS=2000,
        THEOREM_TRIALS=200,
        # write run outputs below the app instance path
        OUTPUT_DIR=os.path.join(app.instance_path, 'runs'),
        # enable all sampling laws by default
        ENABLED_DISTRIBUTIONS=list(AVAILABLE_DISTRIBUTIONS.keys()),
        # Hermite root tables live for the whole process
        CACHE_TYPE='SimpleCache',
        CACHE_DEFAULT_TIMEOUT=0
    )

    if test_config is None:
        # load the instance config, if it exists, when not testing
        app.config.from_pyfile('config.py', silent=True)
        app.config.from_prefixed_env('ROOTFLOW')
    else:
        # load the test config if passed in
        app.config.update(test_config)

    with app.app_context():
        from .containers import Container  # pylint: disable=import-outside-toplevel

        # create container for dependency injection
        container = Container()

    app.container = container

    # create the cache
    cache = container.cache()
    cache.init_app(app)

    # ensure the instance folder exists
    try:
        os.makedirs(app.instance_path)
    except OSError:
        pass

    app.distribution_instances = {}

    for name in app.config['ENABLED_DISTRIBUTIONS']:
        if name in AVAILABLE_DISTRIBUTIONS:
            law_cls = AVAILABLE_DISTRIBUTIONS[name]

            # validate law implementation
            if not (isinstance(law_cls, type) and issubclass(law_cls, DistributionLaw)):
                app.logger.error(
                    'Enabled distribution excluded for not being a subclass of DistributionLaw: %s',
                    name
                )
                continue

            app.logger.debug('Enabling distribution: %s', name)
            app.distribution_instances[name] = law_cls()
        else:
            app.logger.warning('Enabled distribution is not available: %s', name)

    # apply the blueprints to the app
    from .blueprints import sample  # pylint: disable=import-outside-toplevel
    app.register_blueprint(sample.bp)

    from .blueprints import evolve  # pylint: disable=import-outside-toplevel
    app.register_blueprint(evolve.bp)

    from .blueprints import project  # pylint: disable=import-outside-toplevel
    app.register_blueprint(project.bp)

    from .blueprints import hist  # pylint: disable=import-outside-toplevel
    app.register_blueprint(hist.bp)

    from .blueprints import verify  # pylint: disable=import-outside-toplevel
    app.register_blueprint(verify.bp)

    return app
