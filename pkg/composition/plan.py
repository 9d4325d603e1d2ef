# -*- coding: utf-8 -*-
"""
调用计划与闭包回放
- 按依赖图层号把组合中的服务分成阶段：阶段内并行，阶段间串行
- 闭包回放：反复调用输入已被匹配的服务，检查组合能否产生期望输出
"""
import logging
from typing import Iterable, List, Sequence, Tuple

from composition.model import DUMMY_IDS, SINK_ID, SOURCE_ID, Request, Service
from composition.ontology import Taxonomy, expand_coverage

logger = logging.getLogger(__name__)


def extract_plan(result, g) -> List[List[str]]:
    """
    从求解结果中提取分阶段调用计划
    Args:
        result: SolveResult
        g: LayeredGraph
    Returns:
        list: 阶段列表，每个阶段是按id排序的服务id列表
    """
    # 按层号分组，虚拟服务不进计划
    by_layer = {}
    for service_id in result.sink.servs:
        if service_id in DUMMY_IDS:
            continue
        by_layer.setdefault(g.layer_of(service_id), []).append(service_id)
    return [sorted(by_layer[layer]) for layer in sorted(by_layer)]


def replay_stages(stages: Sequence[Sequence[Service]], req: Request, t: Taxonomy) -> bool:
    """
    按阶段回放计划：每个服务被调用时其输入必须已被匹配，结束后期望输出必须被覆盖
    同一阶段的服务只能使用之前阶段的输出
    """
    covered = expand_coverage(t, req.provided)
    for stage in stages:
        # 先检查整个阶段的输入，再统一加入输出
        for s in stage:
            if not s.inputs <= covered:
                logger.debug(f"[回放] 服务 {s.id} 调用时输入未满足: {sorted(s.inputs - covered)}")
                return False
        for s in stage:
            expand_coverage(t, s.outputs, covered)
    return req.wanted <= covered


def closure_replay(services: Iterable[Service], req: Request, t: Taxonomy) -> Tuple[bool, List[List[str]]]:
    """
    闭包回放：反复调用所有输入已满足的成员直到不动点
    Returns:
        tuple: (是否满足请求, 实际调用的阶段)
    """
    pending = sorted(services, key=lambda s: s.id)
    covered = expand_coverage(t, req.provided)
    stages = []
    while pending and not req.wanted <= covered:
        ready = [s for s in pending if s.inputs <= covered]
        if not ready:
            break
        # 本轮就绪的服务一起调用
        for s in ready:
            expand_coverage(t, s.outputs, covered)
        ready_ids = {s.id for s in ready}
        pending = [s for s in pending if s.id not in ready_ids]
        stages.append(sorted(ready_ids))
    return req.wanted <= covered, stages


def format_plan(stages: Sequence[Sequence[str]]) -> str:
    """以串行/并行记法渲染计划，如 s_o → (A ‖ B) → G → s_k"""
    parts = [SOURCE_ID]
    for stage in stages:
        if len(stage) == 1:
            parts.append(stage[0])
        else:
            parts.append('(' + ' ‖ '.join(stage) + ')')
    parts.append(SINK_ID)
    return ' → '.join(parts)
