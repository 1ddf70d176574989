import pytest
from rootflow import create_app
from rootflow.model import EvolveConfig


@pytest.fixture
def app(tmp_path):
    app = create_app({
        'TESTING': True,
        'OUTPUT_DIR': str(tmp_path / 'runs'),
        'LEMMA_TRIALS': 100,
        'THEOREM_TRIALS': 5,
    })
    yield app


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def cfg():
    return EvolveConfig()
