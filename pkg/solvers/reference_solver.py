# -*- coding: utf-8 -*-
"""
二维参考求解器
C[i][v] = min{C[i-1][v], C[i-1][v - volume_i] + cost_i}，完整保留 C 与 I 两张表
用于校验一维空间优化版的结果
"""
import logging
from typing import Dict, Sequence, Tuple

from composition.errors import UncoverableInputs
from composition.model import Service
from composition.ontology import Taxonomy
from solvers.base_solver import INF, BaseSolver, CompositionRecord, StepStats
from solvers.knapsack_solver import EMPTY, dc, union_of

logger = logging.getLogger(__name__)


class TwoDimensionalSolver(BaseSolver):
    """二维表求解器"""

    def get_solver_name(self) -> str:
        return "KNAPSACK_2D"

    def solve_step(self, s: Service, precs: Sequence[Service], records: Dict[str, CompositionRecord],
                   t: Taxonomy, layer: int = 0) -> Tuple[CompositionRecord, StepStats]:
        started = self.timer()
        if not s.inputs:
            return self.trivial_record(s), StepStats(s.id, layer, 0, 0, 0, 0, (self.timer() - started) * 1e6)

        problem = self.prepare_step(s, precs, records, t)
        cap = problem.table.capacity
        n = len(problem.items)
        literal = self.options.alg4_literal

        # 每行 C[i][0]=0
        C = [[INF] * (cap + 1) for _ in range(n + 1)]
        I = [[EMPTY] * (cap + 1) for _ in range(n + 1)]
        for row in C:
            row[0] = 0
        cache = {}
        relaxations = 0
        skipped = 0
        for i in range(1, n + 1):
            item = problem.items[i - 1]
            mask = problem.masks[i - 1]
            for v in range(1, cap + 1):
                # 先继承不选物品 i 的状态
                C[i][v] = C[i - 1][v]
                I[i][v] = I[i - 1][v]
                volume = mask & v
                if volume == 0:
                    skipped += 1
                    continue
                rest = v - volume
                if C[i - 1][rest] == INF:
                    continue
                cost = dc(item, I, i, v, volume, records, literal, cache)
                relaxations += 1
                if C[i - 1][rest] + cost < C[i][v]:
                    C[i][v] = C[i - 1][rest] + cost
                    I[i][v] = I[i - 1][rest] | {item.id}

        if C[n][cap] == INF:
            raise UncoverableInputs(s.id)
        chosen_items = I[n][cap]
        servs = frozenset({s.id}) | union_of(chosen_items, records, cache)
        record = CompositionRecord(service=s.id, servs=servs, len=len(servs),
                                   items=tuple(sorted(chosen_items)), dp_cost=int(C[n][cap]))
        elapsed_us = (self.timer() - started) * 1e6
        return record, StepStats(s.id, layer, n, cap, relaxations, skipped, elapsed_us)
