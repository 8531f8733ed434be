"""
Tests for the command-line entry point and its exit codes
"""
import json
import os
import tempfile

import pytest

from main import CommandConfig, build_parser, main


@pytest.fixture
def run(root, monkeypatch, capsys):
    monkeypatch.chdir(root)
    monkeypatch.delenv('INVARIANTS_CONFIG', raising=False)
    monkeypatch.delenv('INVARIANTS_ALLOW_LONG', raising=False)

    def invoke(*argv):
        code = main(list(argv))
        return code, capsys.readouterr().out
    return invoke


class TestHilbertCommand:
    def test_dim_degree_four(self, run):
        code, out = run('--format', 'json', 'hilbert', 'dim', '--degree', '4', '--method', 'character')
        assert code == 0
        assert json.loads(out)['dimensions'] == [{'degree': 4, 'dimension': '5'}]

    def test_series_from_table(self, run):
        code, out = run('hilbert', 'series', '--max-degree', '10', '--method', 'table')
        assert code == 0
        assert out.strip() == '1,0,0,0,5,0,1,0,36,0,15'

    def test_series_from_residues(self, run):
        code, out = run('hilbert', 'series', '--qubits', '3', '--method', 'residue', '--max-degree', '8')
        assert code == 0
        assert out.strip() == '1,0,0,0,1,0,0,0,1'

    def test_all_methods_agree(self, run):
        code, out = run('--format', 'json', 'hilbert', 'series', '--max-degree', '8', '--method', 'all',
                        '--qubits', '2')
        payload = json.loads(out)
        assert code == 0
        assert payload['agreements'] == 9
        assert payload['first_disagreement'] is None

    def test_structure(self, run):
        code, out = run('--format', 'json', 'hilbert', 'series', '--max-degree', '4', '--method', 'table',
                        '--show-structure')
        assert code == 0
        assert '"secondary_count": 3014400' in out

    @pytest.mark.parametrize('argv', [
        ('hilbert', 'dim', '--method', 'character'),
        ('hilbert', 'series', '--max-degree', '8', '--method', 'table', '--qubits', '4'),
        ('hilbert', 'series', '--max-degree', '8', '--method', 'residue'),
        ('hilbert', 'series', '--max-degree', '8', '--qubits', '6'),
        ('hilbert', 'dim', '--degree', 'four'),
        ('hilbert', 'volume'),
    ])
    def test_bad_flags(self, run, argv):
        code, _ = run(*argv)
        assert code == 2


class TestStateCommands:
    @pytest.mark.parametrize('name,state,value', [
        ('F', 'phi1', '0'), ('Dx', 'phi1', '4'), ('Dz', 'phi2', '0'),
    ])
    def test_invariant_eval(self, run, name, state, value):
        code, out = run('--format', 'json', 'invariant', 'eval', '--name', name,
                        '--state', f"config/states/{state}.json")
        assert code == 0
        assert json.loads(out) == {'invariant': name, 'value': value}

    @pytest.mark.parametrize('name,state,value', [('Dx', 'phi1', '4'), ('F', 'phi1', '0')])
    def test_invariant_eval_prints_bare_value(self, run, name, state, value):
        code, out = run('invariant', 'eval', '--name', name, '--state', f"config/states/{state}.json")
        assert code == 0
        assert out == f"{value}\n"

    def test_fingerprint_phi3(self, run):
        code, out = run('--format', 'json', 'fingerprint', '--state', 'config/states/phi3.json')
        assert code == 0
        pattern = json.loads(out)['pattern']
        assert [pattern[row] for row in ('Dx', 'Dy', 'Dz', 'Dt', 'Du', 'F', 'Bx', 'C31111', 'E11111')] == \
            ['0', '0', '0', '0', '0', '0', 'x', 'x', '0']

    def test_missing_state_file(self, run):
        code, _ = run('fingerprint', '--state', 'config/states/phi9.json')
        assert code == 2

    def test_surd_without_radicand(self, run):
        with tempfile.NamedTemporaryFile('w', suffix='.json', delete=False) as f:
            json.dump({'amplitudes': {'00000': {'b': '1'}}}, f)
        try:
            code, _ = run('invariant', 'eval', '--name', 'Dx', '--state', f.name)
        finally:
            os.remove(f.name)
        assert code == 2

    def test_identical_output(self, run):
        first = run('fingerprint', '--state', 'config/states/phi2.json')
        second = run('fingerprint', '--state', 'config/states/phi2.json')
        assert first == second


class TestValidateCommand:
    def test_table1(self, run):
        code, out = run('--format', 'json', 'validate', 'table1')
        payload = json.loads(out)
        assert code == 0
        assert payload['accepted_reading'] == 'corrected'
        verbatim = payload['readings'][0]
        assert verbatim['palindrome_failures'] == [42]
        assert verbatim['p_at_one'] == 2882400

    def test_table2_reports_misprinted_cells(self, run):
        code, out = run('--format', 'json', 'validate', 'table2')
        payload = json.loads(out)
        assert code == 1
        assert payload['matching_cells'] == 34
        assert {m['state'] for m in payload['mismatches']} == {'phi1', 'phi2'}


class TestCheckCommand:
    def test_invariance_small_batch(self, run, tmp_path):
        report = tmp_path / 'invariance.json'
        code, out = run('--format', 'json', 'check', 'invariance', '--seed', '7', '--trials', '2',
                        '--report', str(report))
        assert code == 0
        payload = json.loads(out)
        assert payload['invariance']['F'] == {'exact': 2, 'total': 2}
        assert json.loads(report.read_text())['passed'] is True

    @pytest.mark.slow
    def test_independence_at_configured_points(self, run):
        code, out = run('--format', 'json', 'check', 'independence', '--seed', '7')
        payload = json.loads(out)
        assert code == 0
        assert payload['passed'] is True
        assert len(payload['independence']) == 5

    def test_rejects_zero_trials(self, run):
        code, _ = run('check', 'invariance', '--trials', '0')
        assert code == 2

    @pytest.mark.slow
    def test_default_batch(self, run):
        code, out = run('check', 'invariance', '--seed', '7', '--trials', '25')
        assert code == 0
        assert out.count('25/25 exact') == 6


class TestLogging:
    def test_unwritable_log_directory(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        (tmp_path / 'logs').write_text('not a directory')
        assert main(['hilbert', 'dim', '--degree', '4']) == 2
        assert 'invariants.log' in capsys.readouterr().err


class TestCommandConfig:
    def test_defaults_from_settings(self):
        args = build_parser().parse_args(['check', 'independence'])
        config = CommandConfig.from_args(args, {'seed': 3, 'trials': 4, 'output': {'format': 'json'}})
        assert (config.seed, config.trials, config.format) == (3, 4, 'json')

    def test_flags_override_settings(self):
        args = build_parser().parse_args(['--format', 'table', 'check', 'invariance', '--seed', '9'])
        config = CommandConfig.from_args(args, {'seed': 3, 'output': {'format': 'json'}})
        assert (config.seed, config.format) == (9, 'table')
