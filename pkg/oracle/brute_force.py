# -*- coding: utf-8 -*-
"""
穷举预言机
- oracle_min：按基数递增枚举服务子集，第一个可行子集即为最小组合
- per_step_oracle：枚举前驱子集，求单个搜索步骤的最小覆盖代价
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Sequence, Tuple

from composition.errors import Infeasible, InstanceTooLarge, SolverInvariantError
from composition.model import Request, Service
from composition.ontology import Taxonomy, expand_coverage, matched_inputs
from composition.plan import closure_replay

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_LIMIT = 14
DEFAULT_PER_STEP_LIMIT = 20


@dataclass(frozen=True)
class OracleResult:
    """最优组合长度（不含虚拟服务）、见证组合与枚举的子集数"""
    optimal_len: int
    witness: Tuple[str, ...]
    explored: int

    def to_document(self) -> dict:
        return {'optimal_len': self.optimal_len, 'witness': list(self.witness), 'explored': self.explored}


def oracle_min(repo: Sequence[Service], req: Request, t: Taxonomy,
               limit: int = DEFAULT_ORACLE_LIMIT) -> OracleResult:
    """
    穷举求最小组合
    Args:
        repo: 服务仓库
        req: 请求
        t: 本体
        limit: 仓库规模上限
    Returns:
        OracleResult: 最优结果
    """
    services = sorted(repo, key=lambda s: s.id)
    if len(services) > limit:
        raise InstanceTooLarge(len(services), limit)
    if req.wanted <= expand_coverage(t, req.provided):
        return OracleResult(optimal_len=0, witness=(), explored=1)

    # 全集都不可行就不必枚举
    feasible, _ = closure_replay(services, req, t)
    if not feasible:
        raise Infeasible("整个仓库也无法满足请求", wanted=sorted(req.wanted))

    # 按基数递增枚举，第一个可行子集即最小
    explored = 0
    for size in range(1, len(services) + 1):
        for subset in combinations(services, size):
            explored += 1
            feasible, _ = closure_replay(subset, req, t)
            if feasible:
                witness = tuple(s.id for s in subset)
                logger.debug(f"[预言机] 最优长度 {size}，见证 {list(witness)}，枚举 {explored} 个子集")
                return OracleResult(optimal_len=size, witness=witness, explored=explored)
    raise Infeasible("没有子集满足请求", wanted=sorted(req.wanted))


def per_step_oracle(s: Service, precs: Sequence[Service], records: Dict[str, object],
                    t: Taxonomy, limit: int = DEFAULT_PER_STEP_LIMIT) -> int:
    """
    单步预言机：在所有能覆盖 In_s 的前驱子集中，求 |∪ Servs(Ω^p)| 的最小值
    Args:
        s: 背包服务
        precs: 前驱服务
        records: 组合记录 {id: CompositionRecord}
        t: 本体
        limit: 前驱数上限
    Returns:
        int: 最小覆盖代价
    """
    precs = sorted(precs, key=lambda p: p.id)
    if len(precs) > limit:
        raise InstanceTooLarge(len(precs), limit)
    needed = frozenset(s.inputs)
    # 预先算好每个前驱能提供的输入
    provides = [matched_inputs(t, p.outputs, needed) for p in precs]
    best = None
    for size in range(1, len(precs) + 1):
        for chosen in combinations(range(len(precs)), size):
            covered = frozenset().union(*(provides[k] for k in chosen))
            # 必须恰好覆盖 In_s
            if covered != needed:
                continue
            union = frozenset().union(*(records[precs[k].id].servs for k in chosen))
            if best is None or len(union) < best:
                best = len(union)
    if best is None:
        raise SolverInvariantError(f"服务 {s.id} 的输入无法被任何前驱子集覆盖")
    return best
