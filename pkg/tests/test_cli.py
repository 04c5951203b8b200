import json
import os
import pytest
from typer.testing import CliRunner
from qtriple import app


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture
def invoke(runner):
    def _invoke(*args):
        return runner.invoke(app, ['--log-level', 'ERROR', *args])
    return _invoke


def load_golden(golden_dir, name):
    with open(os.path.join(golden_dir, name), encoding='utf-8') as f:
        return json.load(f)


class TestCompute:
    @pytest.mark.parametrize("family,n,golden", [
        ('touchard', '2', 'compute_touchard_2.json'),
        ('jtp', '1', 'compute_jtp_1.json'),
    ])
    def test_golden(self, invoke, golden_dir, family, n, golden):
        result = invoke('compute', '--family', family, '--n', n)
        assert result.exit_code == 0, result.stderr
        assert json.loads(result.stdout) == load_golden(golden_dir, golden)

    def test_mu(self, invoke):
        result = invoke('compute', '--family', 'mu', '--n', '2', '--a', '1', '--b', '3')
        assert result.exit_code == 0, result.stderr
        out = json.loads(result.stdout)
        assert out['match'] is True
        assert (out['a'], out['b']) == ('1', '3')

    def test_half_integer_parameters(self, invoke):
        result = invoke('compute', '--family', 'mu', '--n', '1', '--a', '1/2', '--b', '3/2')
        assert result.exit_code == 0, result.stderr
        assert json.loads(result.stdout)['match'] is True

    def test_granularity(self, invoke):
        result = invoke('--granularity', '2', 'compute', '--family', 'touchard', '--n', '1')
        assert json.loads(result.stdout)['value'] == {'g': 2, 'terms': [{'c': '1', 'q': 0, 'y': 0}]}

    def test_y_spec(self, invoke):
        result = invoke('compute', '--family', 'jtp', '--n', '1', '--y-spec', '1,2')
        out = json.loads(result.stdout)
        assert out['match'] is True
        assert out['y_spec'] == ['1', '2']

    @pytest.mark.parametrize("args", [
        ('compute', '--family', 'bessel', '--n', '2'),
        ('compute', '--family', 'mu', '--n', '2'),
        ('compute', '--family', 'touchard', '--n', '41'),
        ('compute', '--family', 'touchard', '--n', '-1'),
        ('compute', '--family', 'mu', '--n', '2', '--a', 'x', '--b', '1'),
        ('--granularity', '0', 'compute', '--family', 'touchard', '--n', '1'),
        ('--limit', '-1', 'compute', '--family', 'touchard', '--n', '1'),
    ])
    def test_bad_input_exits_2(self, invoke, args):
        result = invoke(*args)
        assert result.exit_code == 2
        assert result.stdout == ''

    def test_text_format(self, invoke):
        result = invoke('--format', 'text', 'compute', '--family', 'touchard', '--n', '2')
        assert result.exit_code == 0, result.stderr
        assert result.stdout.startswith("touchard n=2")
        assert "2 + q" in result.stdout

    def test_deterministic(self, invoke):
        args = ('compute', '--family', 'genocchi', '--n', '4')
        assert invoke(*args).stdout == invoke(*args).stdout


class TestEnumerate:
    def test_delta_plus(self, invoke):
        result = invoke('enumerate', '--objects', 'delta_plus', '--k', '1', '--weight', 'wt_q')
        out = json.loads(result.stdout)
        assert out['count'] == 3
        assert out['weight_sum']['terms'] == [{'c': '1', 'q': 0, 'y': 0}, {'c': '-2', 'q': 1, 'y': 0}]

    def test_half_golden(self, invoke, golden_dir):
        result = invoke('enumerate', '--objects', 'half', '--k', '2')
        assert json.loads(result.stdout) == load_golden(golden_dir, 'enumerate_half_2.json')

    def test_schroder_triple_product(self, invoke):
        result = invoke('enumerate', '--objects', 'schroder', '--k', '1', '--weight', 'J,JP')
        out = json.loads(result.stdout)
        assert out['count'] == 2
        assert [(t['q'], t['y']) for t in out['weight_sum']['terms']] == [(1, -1), (1, 1), (2, 0)]

    def test_unweighted_paths(self, invoke):
        out = json.loads(invoke('enumerate', '--objects', 'dyck', '--k', '2').stdout)
        assert out['items'] == ["UDUD", "UUDD"]

    def test_size_limit(self, invoke):
        result = invoke('--limit', '100', 'enumerate', '--objects', 'marked_schroder', '--k', '6')
        assert result.exit_code == 2

    def test_unknown_family(self, invoke):
        assert invoke('enumerate', '--objects', 'motzkin', '--k', '2').exit_code == 2

    def test_text_listing(self, invoke):
        result = invoke('--format', 'text', 'enumerate', '--objects', 'dyck', '--k', '2')
        assert result.stdout.startswith("dyck k=2: 2 objects")


class TestBijection:
    def test_psi1(self, invoke):
        out = json.loads(invoke('bijection', '--name', 'psi1', '--k', '2').stdout)
        assert out['count'] == 3
        assert out['pairs'][1]['output'] == [{'part': 1, 'overlined': True}]

    def test_fixed_points_at_one(self, invoke):
        out = json.loads(invoke('bijection', '--name', 'f', '--k', '1').stdout)
        assert out['count'] == 2
        assert all(p['fixed'] for p in out['pairs'])

    def test_trace(self, invoke):
        out = json.loads(invoke('bijection', '--name', 'psi', '--k', '2', '--trace').stdout)
        assert out['count'] == 21
        for pair in out['pairs']:
            assert pair['ops'] == ['start', 'ascend', 'fill', 'shrink', 'fill']
            assert pair['trace'][-1] == pair['output']

    def test_unknown(self, invoke):
        assert invoke('bijection', '--name', 'rotate', '--k', '2').exit_code == 2


class TestChecks:
    @pytest.mark.parametrize("identity", ['H', 't_jtp', 'F_GEN', 'G_GEN'])
    def test_funeq(self, invoke, identity):
        result = invoke('funeq', '--id', identity, '--order', '6')
        assert result.exit_code == 0, result.stderr
        assert json.loads(result.stdout)['zero'] is True

    def test_matrix(self, invoke):
        result = invoke('matrix', '--which', 'omega', '--n', '1')
        assert result.exit_code == 0, result.stderr
        out = json.loads(result.stdout)
        assert out['recurrence'] is True
        assert sorted(out['matrix']) == ['a', 'b', 'c', 'd']
        assert out['base_cases'] == {'omega_0_is_s': True, 'lambda_0_conjugate': True}

    def test_matrix_unknown(self, invoke):
        assert invoke('matrix', '--which', 'sigma', '--n', '1').exit_code == 2

    def test_verify(self, invoke):
        result = invoke('--timing', 'verify', '--suite', 'tourio', '--max-n', '3')
        assert result.exit_code == 0, result.stderr
        out = json.loads(result.stdout)
        assert out['pass'] is True
        assert len(out['cases']) == 4
        assert 'elapsed_ms' in out

    def test_verify_text(self, invoke):
        result = invoke('--format', 'text', 'verify', '--suite', 'qsec', '--max-n', '2')
        assert result.stdout.startswith("suite qsec: PASS (3/3)")

    def test_verify_unknown(self, invoke):
        assert invoke('verify', '--suite', 'nope').exit_code == 2

    def test_verify_genocchi(self, invoke):
        result = invoke('verify', '--suite', 'genocchi', '--max-n', '6')
        assert result.exit_code == 0, result.stderr
        out = json.loads(result.stdout)
        assert len(out['cases']) == 6
        assert all(c['pass'] for c in out['cases'])

    def test_hyphenated_family(self, invoke):
        assert json.loads(invoke('enumerate', '--objects', 'delta-plus', '--k', '1').stdout)['count'] == 3
