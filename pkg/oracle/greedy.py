# -*- coding: utf-8 -*-
"""
贪心基线：前向集合覆盖
每轮在可调用的服务中选能匹配最多未覆盖期望概念的一个，直到期望输出被覆盖，
最后去掉删除后仍可行的冗余服务
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from composition.errors import Infeasible
from composition.model import Request, Service
from composition.ontology import Taxonomy, expand_coverage
from composition.plan import closure_replay

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GreedyResult:
    """贪心组合"""
    services: Tuple[str, ...]
    stages: Tuple[Tuple[str, ...], ...]

    @property
    def length(self) -> int:
        return len(self.services)

    def to_document(self) -> dict:
        return {'length': self.length, 'services': list(self.services),
                'stages': [list(stage) for stage in self.stages]}


def greedy_baseline(repo: Sequence[Service], req: Request, t: Taxonomy) -> GreedyResult:
    """
    贪心组合
    Args:
        repo: 服务仓库
        req: 请求
        t: 本体
    Returns:
        GreedyResult: 可行但不一定最小的组合
    """
    pending = sorted(repo, key=lambda s: s.id)
    covered = expand_coverage(t, req.provided)
    picked: List[Service] = []
    while not req.wanted <= covered:
        ready = [s for s in pending if s.inputs <= covered]
        best = None
        best_score = None
        for s in ready:
            gain = expand_coverage(t, s.outputs) - covered
            if not gain:
                continue
            # 先看期望概念，再看能解锁的其他服务输入
            wanted_gain = len(gain & req.wanted)
            unlock_gain = sum(1 for other in pending if other is not s and gain & other.inputs)
            score = (wanted_gain, unlock_gain, len(gain))
            if best_score is None or score > best_score:
                best, best_score = s, score
        if best is None:
            raise Infeasible("贪心扩展无法继续，期望输出未覆盖",
                             uncovered=sorted(req.wanted - covered))
        picked.append(best)
        pending = [s for s in pending if s.id != best.id]
        expand_coverage(t, best.outputs, covered)

    # 逆序删除冗余服务
    kept = list(picked)
    for s in reversed(picked):
        trial = [k for k in kept if k.id != s.id]
        if closure_replay(trial, req, t)[0]:
            kept = trial
    feasible, stages = closure_replay(kept, req, t)
    if not feasible:
        raise Infeasible("贪心组合回放失败")
    services = tuple(sorted(s.id for s in kept))
    logger.debug(f"[贪心基线] 组合长度 {len(services)}: {list(services)}")
    return GreedyResult(services=services, stages=tuple(tuple(stage) for stage in stages))
