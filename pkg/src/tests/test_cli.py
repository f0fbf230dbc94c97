import json
import os

import numpy as np
import pandas as pd
import pytest

import benchmarks.suite as suite_module
from acquisition import AcquisitionName
from bandit import run
from gp_core import History
from main import main
from storage import FileManager
from utils.config_loader import load_suggest_config, parse_suite_spec
from utils.errors import ConfigError, HistoryParseError

RANDOM_SUITE = {'family': 'gp_sample_1d', 'n_functions': 1, 'max_rounds': 8, 'resolution': 30,
                'acquisitions': ['random'], 'seed': 3}
MIXED_SUITE = {'family': 'gp_sample_1d', 'n_functions': 2, 'max_rounds': 6, 'resolution': 30,
               'acquisitions': ['est_laplace', 'ucb', {'name': 'pi', 'epsilon': 0.05}], 'seed': 5}


def write_json(path, data):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f)
    return str(path)


def write_text(path, text):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    return str(path)


def read_bytes(path):
    with open(path, 'rb') as f:
        return f.read()


def suggest_config(tmp_path, **overrides):
    data = {
        'grid': {'axes': [{'lo': 0.0, 'hi': 1.0, 'n': 21}]},
        'model': {'kernel': {'lengthscale': 0.2}, 'noise_var': 1e-4},
        'acquisition': 'est_numeric',
    }
    data.update(overrides)
    return write_json(tmp_path / 'study.json', data)


class TestBench:
    def test_minimal_suite_writes_outputs(self, tmp_path):
        out = tmp_path / 'out'
        code = main(['bench', '--config', write_json(tmp_path / 'suite.json', RANDOM_SUITE), '--out', str(out),
                     '--jobs', '1'])
        assert code == 0
        rounds = pd.read_csv(out / 'rounds.csv')
        summary = pd.read_csv(out / 'summary.csv')
        assert len(rounds) == 8
        assert list(summary['acquisition']) == ['Rand']
        assert list(rounds.columns[:4]) == ['acquisition', 'function_id', 't', 'x_1']
        suite = json.loads((out / 'suite.json').read_text())
        assert suite['seed'] == 3 and suite['n_failed'] == 0

    def test_rerun_is_byte_identical(self, tmp_path):
        config = write_json(tmp_path / 'suite.json', MIXED_SUITE)
        assert main(['bench', '--config', config, '--out', str(tmp_path / 'a'), '--jobs', '1']) == 0
        assert main(['bench', '--config', config, '--out', str(tmp_path / 'b'), '--jobs', '2']) == 0
        for name in ('rounds.csv', 'summary.csv', 'suite.json'):
            assert read_bytes(tmp_path / 'a' / name) == read_bytes(tmp_path / 'b' / name)

    def test_unknown_key_is_usage_error(self, tmp_path):
        config = write_json(tmp_path / 'suite.json', {**RANDOM_SUITE, 'rounds': 5})
        assert main(['bench', '--config', config, '--out', str(tmp_path / 'out')]) == 2
        with pytest.raises(ConfigError, match="unknown key 'rounds'"):
            parse_suite_spec({**RANDOM_SUITE, 'rounds': 5})

    def test_nested_unknown_key_names_path(self):
        with pytest.raises(ConfigError, match="unknown key 'prior.nu'"):
            parse_suite_spec({'prior': {'nu': 1.5}})

    def test_invalid_jobs(self, tmp_path):
        config = write_json(tmp_path / 'suite.json', RANDOM_SUITE)
        assert main(['bench', '--config', config, '--out', str(tmp_path / 'out'), '--jobs', '0']) == 2

    def test_missing_config(self, tmp_path):
        assert main(['bench', '--config', str(tmp_path / 'absent.json'), '--out', str(tmp_path)]) == 2

    def test_seed_environment_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv('GPEST_SEED', '17')
        out = tmp_path / 'out'
        assert main(['bench', '--config', write_json(tmp_path / 'suite.json', RANDOM_SUITE), '--out', str(out),
                     '--jobs', '1']) == 0
        assert json.loads((out / 'suite.json').read_text())['seed'] == 17

    def test_defaults_follow_family(self):
        spec = parse_suite_spec({'family': 'gp_sample_2d'})
        assert (spec.n_functions, spec.max_rounds) == (10, 1000)
        assert spec.labels == ['ESTn', 'ESTa', 'UCB', 'EI', 'PI', 'Rand']
        assert parse_suite_spec({'family': 'branin'}).max_rounds == 150


class TestReport:
    def test_reproduces_bench_summary(self, tmp_path):
        out = tmp_path / 'out'
        assert main(['bench', '--config', write_json(tmp_path / 'suite.json', MIXED_SUITE), '--out', str(out),
                     '--jobs', '1']) == 0
        assert main(['report', '--rounds', str(out / 'rounds.csv')]) == 0
        bench_summary = pd.read_csv(out / 'summary.csv')
        report_summary = pd.read_csv(out / 'curves' / 'report_summary.csv')
        pd.testing.assert_frame_equal(bench_summary, report_summary, check_exact=True)
        curve = pd.read_csv(out / 'curves' / 'ESTa_simple_regret.csv')
        assert list(curve.columns) == ['round', 'mean', 'std']
        assert len(curve) == 6
        assert (out / 'curves' / 'UCB_cumulative_regret.csv').exists()

    def test_keeps_bench_order_when_a_first_run_fails(self, tmp_path, monkeypatch):
        real_run = suite_module.run
        calls = []

        def first_laplace_run_fails(config, oracle, true_values=None):
            if config.acquisition.name == AcquisitionName.EST_LAPLACE:
                calls.append(config.seed)
                if len(calls) == 1:
                    raise RuntimeError("boom")
            return real_run(config, oracle, true_values)

        monkeypatch.setattr(suite_module, 'run', first_laplace_run_fails)
        out = tmp_path / 'out'
        assert main(['bench', '--config', write_json(tmp_path / 'suite.json', MIXED_SUITE), '--out', str(out),
                     '--jobs', '1']) == 1
        assert pd.read_csv(out / 'rounds.csv')['acquisition'].iloc[0] == 'UCB'
        assert json.loads((out / 'suite.json').read_text())['labels'] == ['ESTa', 'UCB', 'PI']

        assert main(['report', '--rounds', str(out / 'rounds.csv')]) == 0
        bench_summary = pd.read_csv(out / 'summary.csv')
        report_summary = pd.read_csv(out / 'curves' / 'report_summary.csv')
        assert list(report_summary['acquisition']) == ['ESTa', 'UCB', 'PI']
        pd.testing.assert_frame_equal(bench_summary, report_summary, check_exact=True)

    def test_single_row(self, tmp_path, capsys):
        rounds = write_text(tmp_path / 'rounds.csv',
                            "acquisition,function_id,t,x_1,y,simple_regret,cumulative_regret,m_hat,nu_t\n"
                            "ESTn,0,4,0.25,1.5,0.125,0.5,2.0,0.3\n")
        assert main(['report', '--rounds', rounds, '--out', str(tmp_path / 'curves')]) == 0
        summary = pd.read_csv(tmp_path / 'curves' / 'report_summary.csv')
        assert summary.loc[0, 'T_min_mean'] == 4 and summary.loc[0, 'T_min_median'] == 4
        assert summary.loc[0, 'r_min_mean'] == 0.125 and summary.loc[0, 'r_min_median'] == 0.125
        assert 'ESTn' in capsys.readouterr().out

    def test_empty_rounds(self, tmp_path):
        rounds = write_text(tmp_path / 'rounds.csv',
                            "acquisition,function_id,t,x_1,y,simple_regret,cumulative_regret,m_hat,nu_t\n")
        assert main(['report', '--rounds', rounds]) == 2

    def test_malformed_rounds(self, tmp_path):
        rounds = write_text(tmp_path / 'rounds.csv', "acquisition,t\nESTn,1\n")
        assert main(['report', '--rounds', rounds]) == 2


class TestSuggest:
    def test_empty_history_tie_goes_to_first_point(self, tmp_path, capsys):
        history = write_text(tmp_path / 'h.csv', "x_1,y\n")
        assert main(['suggest', '--config', suggest_config(tmp_path), '--history', history]) == 0
        captured = capsys.readouterr()
        assert captured.out.strip() == '0'
        diagnostics = json.loads(captured.err.strip().splitlines()[-1])
        assert diagnostics['t'] == 1 and diagnostics['index'] == 0 and diagnostics['acquisition'] == 'ESTn'

    def test_stateless(self, tmp_path, capsys):
        config = suggest_config(tmp_path)
        history = write_text(tmp_path / 'h.csv', "x_1,y\n0.5,1.2\n0.1,-0.3\n")
        outputs = []
        for _ in range(2):
            assert main(['suggest', '--config', config, '--history', history]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]
        x = float(outputs[0])
        assert x in np.linspace(0.0, 1.0, 21)

    def test_scripted_loop_matches_in_process_run(self, tmp_path, capsys):
        objective = lambda x: float(np.sin(9.0 * x[0]) + 0.5 * x[0])
        config_path = suggest_config(tmp_path)
        history_path = str(tmp_path / 'h.csv')
        write_text(history_path, "x_1,y\n")
        files = FileManager(str(tmp_path))
        suggested = []
        for _ in range(5):
            assert main(['suggest', '--config', config_path, '--history', history_path]) == 0
            x = float(capsys.readouterr().out)
            suggested.append(x)
            files.append_observation(history_path, [x], objective([x]))

        config = load_suggest_config(config_path)
        result = run(config.run_config(max_rounds=5), objective)
        assert suggested == [float(r.x[0]) for r in result.records]

    def test_malformed_history_names_line(self, tmp_path):
        config = suggest_config(tmp_path)
        history = write_text(tmp_path / 'h.csv', "x_1,y\n0.5,1.0\n0.2,1.0,3.0\n")
        assert main(['suggest', '--config', config, '--history', history]) == 2
        with pytest.raises(HistoryParseError) as info:
            FileManager().read_history(history, 1)
        assert info.value.line == 3

    def test_non_numeric_cell(self, tmp_path):
        history = write_text(tmp_path / 'h.csv', "x_1,y\n0.5,1.0\n0.7,abc\n")
        with pytest.raises(HistoryParseError) as info:
            FileManager().read_history(history, 1)
        assert info.value.line == 3

    def test_short_row(self, tmp_path):
        history = write_text(tmp_path / 'h.csv', "x_1,y\n0.5\n")
        with pytest.raises(HistoryParseError) as info:
            FileManager().read_history(history, 1)
        assert info.value.line == 2

    def test_dimension_mismatch(self, tmp_path):
        config = suggest_config(tmp_path, grid={'axes': [{'n': 5}, {'n': 5}]})
        history = write_text(tmp_path / 'h.csv', "x_1,y\n0.5,1.0\n")
        assert main(['suggest', '--config', config, '--history', history]) == 2

    def test_unknown_config_key(self, tmp_path):
        config = suggest_config(tmp_path, model={'kernel': {'length': 0.2}})
        history = write_text(tmp_path / 'h.csv', "x_1,y\n")
        assert main(['suggest', '--config', config, '--history', history]) == 2

    def test_history_round_trip(self, tmp_path):
        files = FileManager(str(tmp_path))
        path = str(tmp_path / 'h.csv')
        files.append_observation(path, [0.1, 0.2], 0.30000000000000004)
        files.append_observation(path, [0.3, 0.4], -1e-300)
        history = files.read_history(path, 2)
        np.testing.assert_array_equal(history.points, [[0.1, 0.2], [0.3, 0.4]])
        np.testing.assert_array_equal(history.values, [0.30000000000000004, -1e-300])

    def test_written_history_accepts_appends(self, tmp_path):
        files = FileManager(str(tmp_path))
        path = str(tmp_path / 'runs' / 'h.csv')
        files.write_history(path, History(np.array([[1.0 / 3.0]]), np.array([2.0 / 3.0])))
        files.append_observation(path, [0.25], 1e-17)
        with open(path, encoding='utf-8') as f:
            assert f.readline().strip() == 'x_1,y'
        history = files.read_history(path, 1)
        np.testing.assert_array_equal(history.points, [[1.0 / 3.0], [0.25]])
        np.testing.assert_array_equal(history.values, [2.0 / 3.0, 1e-17])
