# -*- coding: utf-8 -*-
"""
命令行入口
"""
import json
import logging

import pytest

from main_compose import main

from conftest import MOTIVATING_EXAMPLE, WORKED_EXAMPLE, tiny_bundle
from utils.bundle_io import load_bundle, save_bundle


@pytest.fixture
def run(tmp_path, capsys):
    log_file = str(tmp_path / 'composer.log')

    def _run(*argv):
        args = list(argv)
        args[1:1] = ['--log-file', log_file]
        code = main(args)
        out = capsys.readouterr().out
        return code, out

    yield _run
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()


class TestCompose:

    def test_worked_example(self, run):
        code, out = run('compose', WORKED_EXAMPLE)
        assert code == 0
        document = json.loads(out)
        assert document['metrics']['#C.Services'] == 6
        assert document['plan']['stages'] == [['A', 'B'], ['D', 'E', 'F'], ['G']]
        assert set(document['timings']) == {'G.Time', 'C.Time', 'Tot.Time', 'unit'}

    def test_deterministic_output_is_byte_identical(self, run):
        argv = ('compose', MOTIVATING_EXAMPLE, '--deterministic', '--stats', '--threads', '2', '--order', 'id')
        first = run(*argv)
        second = run(*argv)
        assert first[0] == 0
        assert first[1] == second[1]
        assert 'timings' not in json.loads(first[1])

    def test_three_file_form(self, run, tmp_path):
        document = json.loads(open(WORKED_EXAMPLE, encoding='utf-8').read())
        paths = {}
        for key in ('taxonomy', 'repository', 'request'):
            paths[key] = str(tmp_path / f"{key}.json")
            with open(paths[key], 'w', encoding='utf-8') as f:
                json.dump(document[key], f)
        code, out = run('compose', '--taxonomy', paths['taxonomy'], '--repo', paths['repository'],
                        '--request', paths['request'])
        assert code == 0
        assert json.loads(out)['metrics']['#C.Services'] == 6

    def test_unsatisfiable_exit_code(self, run, tmp_path):
        path = str(tmp_path / 'unsat.json')
        save_bundle(tiny_bundle([('A', ['x'], ['y'])], ['x'], ['z']), path)
        code, out = run('compose', path)
        assert code == 2
        error = json.loads(out)
        assert error['error'] == 'UnsatisfiableRequest'
        assert error['details']['uncovered'] == ['z']

    def test_parse_error_exit_code(self, run, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{', encoding='utf-8')
        code, out = run('compose', str(path))
        assert code == 3
        assert json.loads(out)['exit_code'] == 3

    @pytest.mark.parametrize('argv', [
        ('compose', WORKED_EXAMPLE, '--threads', 'abc'),
        ('compose', WORKED_EXAMPLE, '--no-such-flag'),
        ('compose', WORKED_EXAMPLE, '--order', 'random'),
    ])
    def test_usage_error_exit_code(self, run, argv):
        code, out = run(*argv)
        assert code == 3
        error = json.loads(out)
        assert error['error'] == 'UsageError'
        assert error['exit_code'] == 3
        assert 'usage' in error['details']

    def test_missing_subcommand(self, capsys):
        assert main([]) == 3
        assert json.loads(capsys.readouterr().out)['error'] == 'UsageError'

    def test_width_limit_exit_code(self, run, tmp_path):
        config = tmp_path / 'config.json'
        config.write_text(json.dumps({'solver': {'bit_width_limit': 2}}), encoding='utf-8')
        code, out = run('compose', WORKED_EXAMPLE, '--config', str(config))
        assert code == 4
        assert json.loads(out)['error'] == 'InputWidthExceeded'

    def test_alg4_literal_and_no_prune(self, run):
        code, out = run('compose', WORKED_EXAMPLE, '--alg4-literal', '--no-prune', '--solver', '2d')
        assert code == 0
        document = json.loads(out)
        assert document['metrics']['#C.Services'] == 6
        assert document['metrics']['G.Size'] == 8
        assert document['solver'] == 'KNAPSACK_2D'

    def test_out_file(self, run, tmp_path):
        target = tmp_path / 'result.json'
        code, out = run('compose', WORKED_EXAMPLE, '--out', str(target))
        assert code == 0
        assert out == ''
        assert json.loads(target.read_text(encoding='utf-8'))['metrics']['Len'] == 8


class TestOtherCommands:

    def test_oracle(self, run):
        code, out = run('oracle', WORKED_EXAMPLE, '--greedy')
        assert code == 0
        document = json.loads(out)
        assert document['oracle']['optimal_len'] == 6
        assert document['greedy']['length'] >= 6

    def test_oracle_limit(self, run):
        code, out = run('oracle', WORKED_EXAMPLE, '--limit', '4')
        assert code == 4
        assert json.loads(out)['error'] == 'InstanceTooLarge'

    def test_gen_round_trip(self, run, tmp_path):
        target = str(tmp_path / 'synthetic.json')
        code, out = run('gen', '--seed', '7', '--services', '9', '--out', target)
        assert code == 0
        assert json.loads(out)['written'] == target
        assert len(load_bundle(target).services) == 9

    def test_gen_is_deterministic(self, run):
        assert run('gen', '--seed', '3')[1] == run('gen', '--seed', '3')[1]

    def test_gen_bad_params(self, run):
        code, out = run('gen', '--services', '0')
        assert code == 3
        assert json.loads(out)['error'] == 'GeneratorParamsError'

    def test_compare(self, run):
        code, out = run('compare', '--instances', '5', '--services', '8', '--seed', '11')
        assert code == 0
        summary = json.loads(out)['summary']
        assert summary['instances'] == 5
        assert summary['feasible_rate'] == 1.0

    def test_compare_with_four_wanted_concepts(self, run):
        code, out = run('compare', '--instances', '3', '--services', '8', '--wanted', '4')
        assert code == 0
        summary = json.loads(out)['summary']
        assert summary['solved'] == 3
        # 汇点有 4 个输入
        assert summary['max_V_cap'] >= 15

    def test_bench(self, run, tmp_path):
        csv = str(tmp_path / 'report.csv')
        code, out = run('bench', WORKED_EXAMPLE, MOTIVATING_EXAMPLE, '--warmups', '0', '--runs', '2', '--csv', csv)
        assert code == 0
        document = json.loads(out)
        assert document['table']['#C.Services'] == {'worked_example': 6, 'motivating_example': 6}
        assert (tmp_path / 'report.csv').exists()

    def test_bench_generated(self, run):
        code, out = run('bench', '--generated', '2', '--seed', '4', '--warmups', '0', '--runs', '1')
        assert code == 0
        assert json.loads(out)['seed'] == 4
        assert len(json.loads(out)['rows']) == 2
