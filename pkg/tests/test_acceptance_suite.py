# -*- coding: utf-8 -*-
"""
验收：合成实例批量对比与 WSC-2008 数据集复现
"""
import os
import time

import pytest

from bench.bench_runner import WIDE_CAPACITY, WIDE_ITEMS, BenchRunner, run_compose, suite_params

from utils.bundle_io import load_bundle

from conftest import DATA_DIR

WSC08_DIR = os.path.join(DATA_DIR, 'wsc08')

# 数据集: (#C.Services, 剪枝后 G.Size)
WSC08_EXPECTED = {
    'D-01': (10, 60),
    'D-02': (5, 61),
    'D-03': (40, 104),
    'D-04': (10, 43),
    'D-05': (20, 101),
    'D-06': (35, 170),
    'D-07': (20, 140),
    'D-08': (30, 124),
}


@pytest.fixture(scope='module')
def synthetic_report():
    runner = BenchRunner({})
    start = time.perf_counter()
    report = runner.compare(instances=200, seed=0, params=suite_params({}, n_services=12))
    return report, time.perf_counter() - start


class TestSyntheticSuite:

    def test_every_composition_replays(self, synthetic_report):
        summary = synthetic_report[0]['summary']
        assert summary['instances'] == 200
        assert summary['solved'] > 0
        assert summary['feasible_rate'] == 1.0

    def test_never_shorter_than_optimum(self, synthetic_report):
        summary = synthetic_report[0]['summary']
        assert summary['solver_vs_oracle']['below_reference'] == 0
        assert summary['greedy_vs_oracle']['below_reference'] == 0

    def test_optimal_rate(self, synthetic_report):
        summary = synthetic_report[0]['summary']
        assert summary['solver_vs_oracle']['equal_rate'] >= 0.9
        assert summary['solver_optimal_target_met']

    def test_solver_variants_agree(self, synthetic_report):
        summary = synthetic_report[0]['summary']
        assert summary['dp_equivalent'] == summary['solved']
        assert summary['prune_neutral'] == summary['solved']

    def test_suite_builds_wide_knapsacks(self, synthetic_report):
        report = synthetic_report[0]
        summary = report['summary']
        assert summary['max_V_cap'] >= WIDE_CAPACITY
        assert summary['wide_steps'] > 0
        assert any(row['max_N'] >= WIDE_ITEMS for row in report['instances'])
        assert any(row['max_V_cap'] >= 7 for row in report['instances'])

    def test_runtime(self, synthetic_report):
        assert synthetic_report[1] < 60.0


def _wsc08_path(name):
    return os.path.join(WSC08_DIR, name)


@pytest.mark.skipif(not os.path.isdir(WSC08_DIR), reason='WSC-2008 数据集未放在 data/wsc08/')
class TestWsc08Reproduction:

    @pytest.mark.parametrize('name', sorted(WSC08_EXPECTED))
    def test_dataset(self, name):
        path = _wsc08_path(name)
        if not os.path.isdir(path):
            pytest.skip(f"缺少数据集 {name}")
        expected_c, expected_g = WSC08_EXPECTED[name]
        outcome = run_compose(load_bundle(path, fmt='wsc08'))
        assert outcome.result.c_services == expected_c
        assert abs(outcome.graph.size - expected_g) <= 0.1 * expected_g
        if name == 'D-08':
            assert outcome.c_time < 1000.0
