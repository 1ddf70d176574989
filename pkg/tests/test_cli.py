import json
import numpy as np
import pytest
from rootflow import create_app
from rootflow.repositories import RootsRepository


def read_json(path):
    return json.loads(path.read_text(encoding='utf-8'))


def test_sample_writes_default_location(runner, tmp_path):
    result = runner.invoke(args=['sample', '--n', '50', '--seed', '3'])
    assert result.exit_code == 0, result.output
    path = tmp_path / 'runs' / 'sample' / 'roots.csv'
    assert RootsRepository().load(path).n == 50
    assert 'sample: 50 roots from uniform' in result.output


def test_sample_then_evolve_round_trip(runner, tmp_path):
    result = runner.invoke(args=['sample', '--n', '80', '--dist', 'gaussian', '--out', str(tmp_path / 's')])
    assert result.exit_code == 0, result.output

    out = tmp_path / 'e'
    result = runner.invoke(args=[
        'evolve', '--input', str(tmp_path / 's' / 'roots.csv'), '--steps', '40', '--stride', '10',
        '--bins', '8', '--out', str(out)
    ])
    assert result.exit_code == 0, result.output
    assert RootsRepository().load(out / 'final_roots.csv').n == 40
    for step in (0, 10, 20, 30, 40):
        lines = (out / f"hist_step_{step:06d}.csv").read_text(encoding='utf-8').splitlines()
        assert lines[0] == 'bin_left,bin_right,count'
        assert sum(int(line.split(',')[2]) for line in lines[1:]) == 80 - step
    report = read_json(out / 'conservation.json')
    assert report['steps_checked'] == 4
    assert report['pairwise_identity_rel_err'] <= 1e-10
    assert (out / 'variance.csv').exists()
    assert not (out / 'occupancy.csv').exists()


def test_outputs_are_deterministic(runner, tmp_path):
    for name in ('a', 'b'):
        result = runner.invoke(args=[
            'evolve', '--n', '120', '--steps', '60', '--seed', '7', '--out', str(tmp_path / name)
        ])
        assert result.exit_code == 0, result.output
    files = sorted(p.name for p in (tmp_path / 'a').iterdir())
    assert files == sorted(p.name for p in (tmp_path / 'b').iterdir())
    for name in files:
        assert (tmp_path / 'a' / name).read_bytes() == (tmp_path / 'b' / name).read_bytes()


def test_gap_law_records_occupancy(runner, tmp_path):
    out = tmp_path / 'gap'
    result = runner.invoke(args=['evolve', '--dist', 'gap', '--n', '100', '--steps', '90', '--out', str(out)])
    assert result.exit_code == 0, result.output
    lines = (out / 'occupancy.csv').read_text(encoding='utf-8').splitlines()
    assert lines[0] == 'step,count'
    assert lines[1] == '0,0'


def test_normalize_flag(runner, tmp_path):
    out = tmp_path / 'norm'
    result = runner.invoke(args=['sample', '--dist', 'gap', '--n', '200', '--normalize', '--out', str(out)])
    assert result.exit_code == 0, result.output
    roots = RootsRepository().load(out / 'roots.csv').roots
    assert np.mean(roots) == pytest.approx(0.0, abs=1e-12)
    assert np.var(roots) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize('args', [
    ['evolve', '--n', '10', '--steps', '20'],
    ['evolve', '--dist', 'cauchy'],
    ['evolve', '--n', '10', '--eps', '2'],
    ['sample', '--n', '0'],
    ['hist'],
    ['verify', 'lemma', '--m', 'two'],
    ['verify', 'theorem', '--n', '10', '--ell', '20'],
    ['verify', 'proposition', '--n', '4', '--y-min', '-3'],
])
def test_usage_errors_exit_with_two(runner, tmp_path, args):
    result = runner.invoke(args=args + ['--out', str(tmp_path / 'bad')])
    assert result.exit_code == 2, result.output


def test_numerical_failure_exits_with_one(tmp_path):
    app = create_app({'TESTING': True, 'OUTPUT_DIR': str(tmp_path / 'runs'), 'MAX_NEWTON_ITERS': 1})
    result = app.test_cli_runner().invoke(args=['evolve', '--n', '200', '--steps', '5'])
    assert result.exit_code == 1
    assert 'step 1: ' in result.output
    assert 'interval' in result.output


def test_disabled_distribution(tmp_path):
    app = create_app({
        'TESTING': True, 'OUTPUT_DIR': str(tmp_path / 'runs'), 'ENABLED_DISTRIBUTIONS': ['uniform', 'lognormal']
    })
    assert list(app.distribution_instances) == ['uniform']
    result = app.test_cli_runner().invoke(args=['sample', '--dist', 'gaussian'])
    assert result.exit_code == 2


def test_hist(runner, tmp_path):
    runner.invoke(args=['sample', '--dist', 'semicircle', '--n', '2000', '--out', str(tmp_path / 's')])
    out = tmp_path / 'h'
    result = runner.invoke(args=[
        'hist', '--input', str(tmp_path / 's' / 'roots.csv'), '--bins', '20', '--semicircle', '--out', str(out)
    ])
    assert result.exit_code == 0, result.output
    assert len((out / 'histogram.csv').read_text(encoding='utf-8').splitlines()) == 21
    assert read_json(out / 'semicircle.json')['semicircle_distance'] < 0.05


@pytest.mark.parametrize('mode', ['deterministic', 'random'])
def test_project(runner, tmp_path, mode):
    out = tmp_path / mode
    result = runner.invoke(args=['project', '--mode', mode, '--n', '100', '--steps', '50', '--out', str(out)])
    assert result.exit_code == 0, result.output
    summary = read_json(out / 'projection.json')
    assert summary['mode'] == mode and summary['final_count'] == 50
    assert RootsRepository().load(out / 'final_roots.csv').n == 50


def test_verify_theorem(runner, tmp_path):
    out = tmp_path / 'theorem'
    result = runner.invoke(args=[
        'verify', 'theorem', '--dist', 'parabolic', '--n', '60', '--ell', '5', '--seed', '1', '--profile',
        '--out', str(out)
    ])
    assert result.exit_code == 0, result.output
    summary = read_json(out / 'theorem.json')
    assert summary['trials'] == 5 and summary['ell'] == 5
    assert len((out / 'theorem_trials.csv').read_text(encoding='utf-8').splitlines()) == 6
    assert len(read_json(out / 'profile.json')['x']) == 401


def test_verify_theorem_routes_agree(runner, tmp_path):
    summaries = []
    for route in ('evolve', 'coeffs'):
        out = tmp_path / route
        result = runner.invoke(args=[
            'verify', 'theorem', '--n', '40', '--ell', '4', '--trials', '3', '--route', route, '--out', str(out)
        ])
        assert result.exit_code == 0, result.output
        summaries.append(read_json(out / 'theorem.json'))
    assert summaries[0]['gamma_mean'] == pytest.approx(summaries[1]['gamma_mean'], abs=1e-9)
    assert summaries[0]['rms_error_median'] == pytest.approx(summaries[1]['rms_error_median'], abs=1e-8)


def test_verify_lemma(runner, tmp_path):
    out = tmp_path / 'lemma'
    result = runner.invoke(args=[
        'verify', 'lemma', '--dist', 'gaussian', '--m', '2,3', '--n-grid', '20,40', '--scatter', '--out', str(out)
    ])
    assert result.exit_code == 0, result.output
    reports = read_json(out / 'lemma.json')['reports']
    assert [(r['m'], r['n']) for r in reports] == [(2, 20), (2, 40), (3, 20), (3, 40)]
    assert all(r['trials'] == 100 for r in reports)
    assert (out / 'lemma_scatter_m3.csv').exists()


def test_verify_conservation(runner, tmp_path):
    out = tmp_path / 'conservation'
    result = runner.invoke(args=['verify', 'conservation', '--n', '150', '--steps', '100', '--out', str(out)])
    assert result.exit_code == 0, result.output
    report = read_json(out / 'conservation.json')
    assert report['mean_drift'] <= 1e-12
    assert report['pairwise_identity_rel_err'] <= 1e-10


def test_verify_proposition(runner, tmp_path):
    out = tmp_path / 'proposition'
    result = runner.invoke(args=['verify', 'proposition', '--n', '100', '--ell', '2', '--out', str(out)])
    assert result.exit_code == 0, result.output
    report = read_json(out / 'proposition.json')
    assert report['n'] == 100 and report['ell'] == 2
    assert 0.0 < report['max_deviation'] < 0.1


def test_verify_hermite_chain(runner, tmp_path, app):
    out = tmp_path / 'chain'
    result = runner.invoke(args=['verify', 'hermite-chain', '--n', '40', '--steps', '20', '--out', str(out)])
    assert result.exit_code == 0, result.output
    report = read_json(out / 'hermite_chain.json')
    assert 'seconds' not in report
    assert report['max_abs_error'] <= 1e-10
    with app.app_context():
        assert app.container.cache().get('hermite_roots:20') is not None


def test_verify_two_route(runner, tmp_path):
    out = tmp_path / 'two'
    result = runner.invoke(args=['verify', 'two-route', '--n', '50', '--ell', '5', '--out', str(out)])
    assert result.exit_code == 0, result.output
    assert read_json(out / 'two_route.json')['max_abs_difference'] <= 1e-8


def test_coefficient_route_failure_exits_with_one(runner, tmp_path):
    result = runner.invoke(args=[
        'verify', 'two-route', '--dist', 'parabolic', '--n', '1000', '--ell', '50', '--seed', '0',
        '--out', str(tmp_path / 'two')
    ])
    assert result.exit_code == 1
    assert 'degree 50' in result.output
