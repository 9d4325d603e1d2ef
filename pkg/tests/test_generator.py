# -*- coding: utf-8 -*-
"""
合成实例生成器
"""
import pytest

from bench.generator import GeneratorParams, generate
from composition.errors import GeneratorParamsError
from composition.graph import build_graph
from composition.model import SINK_ID
from composition.plan import closure_replay
from oracle.brute_force import oracle_min
from solvers.knapsack_solver import solve
from utils.bundle_io import bundle_from_document, dumps_document


class TestGenerate:

    def test_same_seed_same_bytes(self):
        assert dumps_document(generate(3).to_document()) == dumps_document(generate(3).to_document())

    def test_different_seeds_differ(self):
        assert dumps_document(generate(3).to_document()) != dumps_document(generate(4).to_document())

    def test_planted_chain_bounds_optimum(self):
        b = generate(1, n_services=10, planted=4)
        planted = b.metadata['planted']
        assert len(planted) == 4
        services = b.service_map()
        assert closure_replay([services[sid] for sid in planted], b.request, b.taxonomy)[0]
        assert oracle_min(b.services, b.request, b.taxonomy).optimal_len <= 4

    def test_metadata(self):
        b = generate(5, GeneratorParams(n_services=6, planted=2))
        assert b.name == 'synthetic-5'
        assert b.metadata['seed'] == 5
        assert b.metadata['params']['n_services'] == 6
        assert b.metadata['params']['fan_in'] == [1, 2]
        assert len(b.services) == 6

    def test_document_round_trip(self):
        b = generate(11)
        again = bundle_from_document(b.to_document())
        assert again.services == b.services
        assert again.request == b.request
        assert again.taxonomy.ancestors == b.taxonomy.ancestors

    def test_without_planted_chain(self):
        b = generate(2, planted=0)
        assert b.metadata['planted'] == []
        assert len(b.request.wanted) == 1

    @pytest.mark.parametrize('seed', [0, 1, 2, 3, 4])
    def test_several_wanted_concepts_stay_satisfiable(self, seed):
        b = generate(seed, n_wanted=(4, 4))
        assert len(b.request.wanted) == 4
        assert closure_replay(b.services, b.request, b.taxonomy)[0]
        result = solve(build_graph(b.services, b.request, b.taxonomy), b.taxonomy)
        sink_step = result.stats[-1]
        assert sink_step.service == SINK_ID
        assert sink_step.capacity == 15

    def test_wanted_range_is_recorded(self):
        b = generate(6, n_wanted=(2, 3), fan_in=(1, 4))
        assert 2 <= len(b.request.wanted) <= 3
        assert b.metadata['params']['n_wanted'] == [2, 3]
        assert all(len(s.inputs) <= 4 for s in b.services)

    @pytest.mark.parametrize('overrides', [
        {'n_services': 0},
        {'depth': 0},
        {'n_provided': 0},
        {'fan_in': (3, 1)},
        {'fan_out': (0, 0)},
        {'planted': 11, 'n_services': 10},
        {'n_concepts': 4, 'planted': 4},
        {'subsumption': 1.5},
        {'n_wanted': (0, 1)},
        {'n_wanted': (3, 2)},
    ])
    def test_contradictory_params(self, overrides):
        with pytest.raises(GeneratorParamsError) as excinfo:
            generate(0, **overrides)
        assert excinfo.value.exit_code == 3
