"""
Command Line Tests
Every subcommand through click's CliRunner; reports are read back from --json files.
"""

import json
import os
import sys
import tempfile

from click.testing import CliRunner

from cli import cli, run


def invoke(args, report_name=None):
    """Run the CLI in a temp dir; returns (result, parsed report or None)"""
    runner = CliRunner()
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, report_name) if report_name else None
        result = runner.invoke(cli, args + (['--json', path] if path else []))
        report = None
        if path and os.path.exists(path):
            with open(path, encoding='utf-8') as handle:
                report = json.load(handle)
    return result, report


def test_star_formal_hbar():
    result, _ = invoke(['star', 'x1', 'p1'])
    assert result.exit_code == 0, result.output
    assert 'x1*p1 + (1/2)*i*h' in result.output


def test_star_alpha_bracket():
    result, _ = invoke(['star', 'x1', 'p1', '--product', 'alpha'])
    assert result.exit_code == 0, result.output
    assert '1' in result.output.strip().splitlines()


def test_star_alpha_at_zero_hbar_is_poisson_bracket():
    result, _ = invoke(['star', 'x1^2', 'p1^2', '--hbar', '0', '--product', 'alpha'])
    assert result.exit_code == 0, result.output
    assert '4*x1*p1' in result.output.strip().splitlines()


def test_star_parse_error():
    result, _ = invoke(['star', 'x1 + + p1', 'p1'])
    assert result.exit_code == 1
    assert 'offset 5' in result.output


def test_solve_two_product():
    runner = CliRunner()
    with tempfile.TemporaryDirectory() as tmp:
        report_path = os.path.join(tmp, 'report.json')
        trace_path = os.path.join(tmp, 'trace.json')
        result = runner.invoke(cli, ['solve', '--system', 'two-product', '--json', report_path,
                                     '--trace', trace_path])
        with open(report_path, encoding='utf-8') as handle:
            report = json.load(handle)
        with open(trace_path, encoding='utf-8') as handle:
            trace = json.load(handle)
    assert result.exit_code == 0, result.output
    assert report['status'] == 'pass'
    assert report['solution'] == {'a': 0, 'b': 1, 'c': 1, 'd': 0, 'y': 0, 'z': 0, 'w': 1, 'x': 'free'}
    assert 'trace' not in report
    assert isinstance(trace, list) and trace


def test_solve_single_product_reports_inconsistency():
    result, report = invoke(['solve', '--system', 'single-product'], 'report.json')
    assert result.exit_code == 0, result.output
    assert report['checks'][0]['name'] == 'inconsistency'
    assert report['consistent'] is False


def test_solve_assume_needs_four_product():
    result, _ = invoke(['solve', '--system', 'two-product', '--assume', 'tau0'])
    assert result.exit_code == 2


def test_verify_parabolic_passes():
    result, report = invoke(['verify', '--class', 'parabolic', '--samples', '3', '--seed', '7'], 'report.json')
    assert result.exit_code == 0, result.output
    assert report['status'] == 'pass'
    assert report['seed'] == 7
    assert report['composition_class'] == 'parabolic'
    names = {check['name'] for check in report['checks']}
    assert 'leibniz' in names and 'jacobi' in names
    assert 'wall_time' not in report


def test_verify_moyal_at_zero_hbar_is_parabolic():
    args = ['verify', '--class', 'moyal', '--hbar', '0', '--identity', 'composition-law',
            '--samples', '3', '--seed', '2']
    result, report = invoke(args, 'report.json')
    assert result.exit_code == 0, result.output
    assert report['status'] == 'pass'
    assert report['composition_class'] == 'parabolic'


def test_verify_reports_are_reproducible():
    runner = CliRunner()
    args = ['verify', '--class', 'parabolic', '--samples', '3', '--seed', '11']
    texts = []
    with tempfile.TemporaryDirectory() as tmp:
        for name in ('first.json', 'second.json'):
            path = os.path.join(tmp, name)
            result = runner.invoke(cli, args + ['--json', path])
            assert result.exit_code == 0, result.output
            with open(path, 'rb') as handle:
                texts.append(handle.read())
    assert texts[0] == texts[1]


def test_verify_seed_from_environment():
    runner = CliRunner(env={'COMPOSABLE_QM_SEED': '5'})
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'report.json')
        result = runner.invoke(cli, ['verify', '--class', 'parabolic', '--identity', 'jacobi',
                                     '--samples', '2', '--json', path])
        with open(path, encoding='utf-8') as handle:
            report = json.load(handle)
    assert result.exit_code == 0, result.output
    assert report['seed'] == 5
    assert all(check['seed'] == 5 for check in report['checks'])


def test_verify_corrupt_control_fails():
    args = ['verify', '--class', 'elliptic', '--identity', 'petersen', '--samples', '5', '--seed', '7',
            '--corrupt', 'x']
    result, report = invoke(args, 'report.json')
    assert result.exit_code == 1
    assert report['status'] == 'fail'
    assert report['checks'][0]['counterexample']['inputs']


def test_verify_inapplicable_identity():
    result, _ = invoke(['verify', '--class', 'parabolic-symmetric', '--identity', 'jacobi'])
    assert result.exit_code == 2


def test_gns_pure_state():
    result, report = invoke(['gns', '--dim', '2', '--state', 'pure', '--samples', '5', '--seed', '1'],
                            'report.json')
    assert result.exit_code == 0, result.output
    assert report['hilbert_dim'] == 2
    assert report['density_rank'] == 1
    assert all(check['status'] == 'pass' for check in report['checks'])


def test_gns_rejects_empty_dimension():
    for args in (['gns', '--dim', '0'], ['gns', '--rank', '0']):
        result, _ = invoke(args)
        assert result.exit_code == 2, result.output
        assert 'IndexError' not in result.output


def test_gns_state_from_file():
    runner = CliRunner()
    with tempfile.TemporaryDirectory() as tmp:
        state_path = os.path.join(tmp, 'state.json')
        with open(state_path, 'w', encoding='utf-8') as handle:
            json.dump({'density': [['1/2', '0'], ['0', '1/2']]}, handle)
        report_path = os.path.join(tmp, 'report.json')
        result = runner.invoke(cli, ['gns', '--state', state_path, '--samples', '3', '--json', report_path])
        with open(report_path, encoding='utf-8') as handle:
            report = json.load(handle)
    assert result.exit_code == 0, result.output
    assert report['hilbert_dim'] == 4


def test_witness():
    result, report = invoke(['witness'], 'report.json')
    assert result.exit_code == 0, result.output
    assert report['witness']['norm_squared'] == 4
    assert report['witness']['cstar_identity_holds'] is False


def test_run_returns_report():
    report = run(['witness'])
    assert report.passed
    assert report.command == 'witness'
    failing = run(['verify', '--class', 'hyperbolic', '--identity', 'petersen', '--samples', '5',
                   '--corrupt', 'alpha-scale'])
    assert not failing.passed


TESTS = [
    test_star_formal_hbar,
    test_star_alpha_bracket,
    test_star_alpha_at_zero_hbar_is_poisson_bracket,
    test_star_parse_error,
    test_solve_two_product,
    test_solve_single_product_reports_inconsistency,
    test_solve_assume_needs_four_product,
    test_verify_parabolic_passes,
    test_verify_moyal_at_zero_hbar_is_parabolic,
    test_verify_reports_are_reproducible,
    test_verify_seed_from_environment,
    test_verify_corrupt_control_fails,
    test_verify_inapplicable_identity,
    test_gns_pure_state,
    test_gns_rejects_empty_dimension,
    test_gns_state_from_file,
    test_witness,
    test_run_returns_report,
]


def main():
    """Run every test in this file"""
    print("🧪 Command Line Tests")
    print("=" * 40)
    failures = 0
    for test in TESTS:
        try:
            test()
            print(f"✓ {test.__name__}")
        except Exception as e:
            failures += 1
            print(f"✗ {test.__name__}: {e}")
    print(f"\n{len(TESTS) - failures}/{len(TESTS)} passed")
    return failures == 0


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
