# -*- coding: utf-8 -*-
"""
服务依赖图
- 前向分层扩展，直到期望输出被覆盖
- 反向剪枝，删除对期望输出没有贡献的服务
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

from composition.errors import ServiceNotInGraph, UnsatisfiableRequest
from composition.model import Request, Service, sink_service, source_service
from composition.ontology import Taxonomy, expand_coverage, matched_inputs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LayeredGraph:
    """分层依赖图 L_0..L_tot，L_0 = {s_o}，L_tot = {s_k}"""
    layers: Tuple[Tuple[Service, ...], ...]
    source: Service
    sink: Service
    layer_index: Dict[str, int] = field(repr=False, compare=False)

    @property
    def tot(self) -> int:
        return len(self.layers) - 1

    @property
    def size(self) -> int:
        """G.Size：图中具体服务数（不含虚拟服务）"""
        return sum(len(layer) for layer in self.layers[1:-1])

    def services(self) -> List[Service]:
        """所有具体服务，按层、id 排序"""
        return [s for layer in self.layers[1:-1] for s in layer]

    def layer_of(self, service_id: str) -> int:
        if service_id not in self.layer_index:
            raise ServiceNotInGraph(service_id)
        return self.layer_index[service_id]

    def get(self, service_id: str) -> Service:
        return next(s for s in self.layers[self.layer_of(service_id)] if s.id == service_id)

    def layer_ids(self) -> List[List[str]]:
        return [[s.id for s in layer] for layer in self.layers]


def _make_graph(layers: List[List[Service]], source: Service, sink: Service) -> LayeredGraph:
    # 空层压缩，层号保持连续
    compact = [tuple(sorted(layer, key=lambda s: s.id)) for layer in layers if layer]
    layer_index = {s.id: i for i, layer in enumerate(compact) for s in layer}
    return LayeredGraph(layers=tuple(compact), source=source, sink=sink, layer_index=layer_index)


def build_graph(repo: Iterable[Service], req: Request, t: Taxonomy, prune: bool = True) -> LayeredGraph:
    """
    构建分层服务依赖图
    Args:
        repo: 服务仓库
        req: 请求
        t: 本体
        prune: 是否执行反向剪枝
    Returns:
        LayeredGraph: 依赖图
    """
    source = source_service(req)
    sink = sink_service(req)
    pending = sorted(repo, key=lambda s: s.id)

    # 前向阶段：L_i 只使用 L_0..L_{i-1} 的输出
    layers: List[List[Service]] = [[source]]
    covered = expand_coverage(t, req.provided)
    while not req.wanted <= covered:
        # 输入全部被已覆盖概念匹配的服务进入本层
        layer = [s for s in pending if s.inputs <= covered]
        if not layer:
            uncovered = req.wanted - covered
            logger.warning(f"[依赖图] 第 {len(layers)} 层没有可加入的服务，未覆盖期望: {sorted(uncovered)}")
            raise UnsatisfiableRequest(uncovered)
        # 每个服务只放在最早可用的一层
        placed = {s.id for s in layer}
        pending = [s for s in pending if s.id not in placed]
        for s in layer:
            expand_coverage(t, s.outputs, covered)
        layers.append(layer)
        logger.debug(f"[依赖图] 第 {len(layers) - 1} 层加入 {len(layer)} 个服务")
    layers.append([sink])
    forward_size = sum(len(layer) for layer in layers[1:-1])

    if prune:
        # 反向阶段：从 L_tot 到 L_0，删除输出不匹配 In_all 的服务，虚拟服务不剪
        needed = set(req.wanted)
        for j in range(len(layers) - 1, -1, -1):
            survivors = [
                s for s in layers[j]
                if s.is_dummy or matched_inputs(t, s.outputs, needed)
            ]
            layers[j] = survivors
            # 幸存服务的输入并入 In_all
            for s in survivors:
                needed |= s.inputs

    graph = _make_graph(layers, source, sink)
    logger.info(f"[依赖图] 前向阶段 {forward_size} 个服务，剪枝后 {graph.size} 个服务，共 {len(graph.layers)} 层")
    return graph


def precursors(g: LayeredGraph, t: Taxonomy, s: Service) -> Tuple[Service, ...]:
    """
    服务 s 的前驱：更早层中至少提供一个 s 所需输入的服务
    Args:
        g: 依赖图
        t: 本体
        s: 服务
    Returns:
        tuple: 前驱服务，按id排序；s_o 的前驱为空
    """
    i = g.layer_of(s.id)
    # 逐层扫描更早的服务
    found = []
    for layer in g.layers[:i]:
        for candidate in layer:
            if matched_inputs(t, candidate.outputs, s.inputs):
                found.append(candidate)
    return tuple(sorted(found, key=lambda p: p.id))
