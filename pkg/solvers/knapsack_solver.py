# -*- coding: utf-8 -*-
"""
背包变体算法（一维空间优化版）
- 每个服务的搜索步骤是一个动态背包问题：物品体积依赖当前容量 v，物品代价依赖已选物品
- C[v] = min{C[v], C[v - volume_i] + cost_i}，i 递增、v 从 V_cap 递减
"""
import logging
from typing import Dict, FrozenSet, Mapping, Optional, Sequence, Tuple

from composition.errors import MissingRecordError, SolverInvariantError, UncoverableInputs
from composition.graph import LayeredGraph
from composition.model import Service
from composition.ontology import Taxonomy
from solvers.base_solver import (
    INF, BaseSolver, CompositionRecord, SolveResult, SolverOptions, StepStats
)
from solvers.subset_table import dv

logger = logging.getLogger(__name__)

EMPTY: FrozenSet[str] = frozenset()


def union_of(chosen: FrozenSet[str], records: Mapping[str, CompositionRecord],
             cache: Optional[dict] = None) -> FrozenSet[str]:
    """已选物品的组合服务并集 ∪ Servs(Ω^s)"""
    if cache is not None and chosen in cache:
        return cache[chosen]
    union = set()
    for item_id in chosen:
        record = records.get(item_id)
        if record is None:
            raise MissingRecordError(item_id)
        union |= record.servs
    union = frozenset(union)
    if cache is not None:
        cache[chosen] = union
    return union


def dc(item: Service, chosen, i: int, v: int, volume_i: int,
       records: Mapping[str, CompositionRecord], literal: bool = False,
       cache: Optional[dict] = None) -> int:
    """
    计算物品的动态代价
    Args:
        item: 物品（前驱服务）
        chosen: 已选物品表，chosen[i-1][v-volume_i] 为状态 v-volume_i 的已选物品集合
        i: 物品序号（从1开始）
        v: 临时容量
        volume_i: 物品在 v 下的体积
        records: 各服务的组合记录
        literal: 为 True 时返回 |Ser| + 1
        cache: 并集缓存
    Returns:
        int: 代价 |Servs(Ω^item) - Union|
    """
    record = records.get(item.id)
    if record is None:
        raise MissingRecordError(item.id)
    union = union_of(chosen[i - 1][v - volume_i], records, cache)
    ser = record.servs - union
    return len(ser) + 1 if literal else len(ser)


class KnapsackVariantSolver(BaseSolver):
    """背包变体算法求解器，C 为一维数组，I 只保留相邻两行"""

    def get_solver_name(self) -> str:
        return "KNAPSACK_1D"

    def solve_step(self, s: Service, precs: Sequence[Service], records: Dict[str, CompositionRecord],
                   t: Taxonomy, layer: int = 0) -> Tuple[CompositionRecord, StepStats]:
        started = self.timer()
        if not s.inputs:
            record = self.trivial_record(s)
            return record, StepStats(s.id, layer, 0, 0, 0, 0, (self.timer() - started) * 1e6)

        problem = self.prepare_step(s, precs, records, t)
        table = problem.table
        cap = table.capacity
        literal = self.options.alg4_literal
        check = self.options.check_invariants

        # C[0]=0，其余容量初始不可达
        C = [INF] * (cap + 1)
        C[0] = 0
        prev = [EMPTY] * (cap + 1)
        cache = {}
        relaxations = 0
        skipped = 0
        # 逐行松弛：物品 i 递增，容量 v 递减
        for i, (item, mask) in enumerate(zip(problem.items, problem.masks), start=1):
            cur = list(prev)
            chosen = {i - 1: prev}
            for v in range(cap, 0, -1):
                volume = mask & v
                if check and volume != dv(item, table.base, table, v, t):
                    raise SolverInvariantError(f"服务 {s.id} 物品 {item.id} 在 v={v} 的体积不一致")
                if volume == 0:
                    skipped += 1
                    continue
                if volume & v != volume:
                    raise SolverInvariantError(f"体积 {volume} 不是容量 {v} 的子掩码")
                rest = v - volume
                if C[rest] == INF:
                    continue
                cost = dc(item, chosen, i, v, volume, records, literal, cache)
                relaxations += 1
                if C[rest] + cost < C[v]:
                    C[v] = C[rest] + cost
                    cur[v] = prev[rest] | {item.id}
            prev = cur

        if C[cap] == INF:
            raise UncoverableInputs(s.id)
        if check:
            masks = {item.id: mask for item, mask in zip(problem.items, problem.masks)}
            self._check_row(s, C, prev, masks, records, cache, literal)

        # 回溯满容量的已选物品，拼出组合记录
        chosen_items = prev[cap]
        servs = frozenset({s.id}) | union_of(chosen_items, records, cache)
        if not literal and C[cap] + 1 != len(servs):
            raise SolverInvariantError(f"服务 {s.id} 的 C[V_cap]+1={C[cap] + 1} 与组合长度 {len(servs)} 不一致")
        record = CompositionRecord(service=s.id, servs=servs, len=len(servs),
                                   items=tuple(sorted(chosen_items)), dp_cost=int(C[cap]))
        elapsed_us = (self.timer() - started) * 1e6
        logger.debug(f"[背包求解] {s.id}: N={len(problem.items)}, V_cap={cap}, "
                     f"松弛 {relaxations} 次, 选中 {list(record.items)}, Len={record.len}")
        return record, StepStats(s.id, layer, len(problem.items), cap, relaxations, skipped, elapsed_us)

    @staticmethod
    def _check_row(s, C, row, masks, records, cache, literal=False):
        """
        校验最终一行：C[v] 有限时
        - 已选物品在 v 内的匹配输出恰好拼成 v
        - 非 literal 模式下 C[v] 等于已选物品组合并集的大小
        Args:
            masks: {物品id: 满容量体积}
        """
        for v, cost in enumerate(C):
            if cost == INF:
                continue
            # 覆盖检查
            covered = 0
            for item_id in row[v]:
                covered |= masks[item_id] & v
            if covered != v:
                raise SolverInvariantError(f"服务 {s.id} 在 v={v} 处已选物品只覆盖 {covered}")
            if literal:
                continue
            size = len(union_of(row[v], records, cache))
            if cost != size:
                raise SolverInvariantError(f"服务 {s.id} 在 v={v} 处 C={cost} 与并集大小 {size} 不一致")


def solve_service(s: Service, precs: Sequence[Service], records: Dict[str, CompositionRecord],
                  t: Taxonomy, options: Optional[SolverOptions] = None) -> CompositionRecord:
    """用一维背包变体算法求解单个服务的搜索步骤"""
    return KnapsackVariantSolver(options).solve_service(s, precs, records, t)


def solve(g: LayeredGraph, t: Taxonomy, options: Optional[SolverOptions] = None) -> SolveResult:
    """用一维背包变体算法逐层求解依赖图"""
    return KnapsackVariantSolver(options).solve(g, t)
