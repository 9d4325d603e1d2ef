# -*- coding: utf-8 -*-
"""
合成实例生成器
- 概念随机分布到 0..depth 层，层号小的概念作为输入、层号不小于服务层的概念作为输出
- 可选植入一条已知可行链：provided -> P1 -> ... -> Pk -> wanted
- n_wanted 大于 1 时，其余期望输出取自前向闭包可达的概念，请求仍可满足
- 同一 seed 生成的问题包逐字节一致
"""
import logging
from dataclasses import asdict, dataclass
from typing import List, Tuple

import numpy as np

from composition.errors import GeneratorParamsError
from composition.model import Request, make_bundle, make_service
from composition.ontology import expand_coverage, load_taxonomy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorParams:
    """生成参数"""
    n_services: int = 10
    depth: int = 3
    n_concepts: int = 24
    fan_in: Tuple[int, int] = (1, 2)
    fan_out: Tuple[int, int] = (1, 2)
    planted: int = 4
    n_provided: int = 2
    subsumption: float = 0.3
    n_wanted: Tuple[int, int] = (1, 1)


def _check_params(params: GeneratorParams):
    if params.n_services <= 0:
        raise GeneratorParamsError(f"服务数必须为正: {params.n_services}")
    if params.depth <= 0:
        raise GeneratorParamsError(f"层深必须为正: {params.depth}")
    if params.n_concepts <= 0:
        raise GeneratorParamsError(f"概念数必须为正: {params.n_concepts}")
    if params.n_provided <= 0:
        raise GeneratorParamsError(f"提供的输入数必须为正: {params.n_provided}")
    for name, (low, high) in (('fan_in', params.fan_in), ('fan_out', params.fan_out)):
        if low > high or low < 0:
            raise GeneratorParamsError(f"{name} 范围非法: {(low, high)}")
    low, high = params.n_wanted
    if low < 1 or low > high:
        raise GeneratorParamsError(f"n_wanted 范围非法: {params.n_wanted}")
    if params.fan_out[1] < 1:
        raise GeneratorParamsError("fan_out 上界至少为 1")
    if params.planted < 0 or params.planted > params.n_services:
        raise GeneratorParamsError(f"植入链长度 {params.planted} 超出服务数 {params.n_services}")
    if params.n_concepts < params.n_provided + params.planted + 1:
        raise GeneratorParamsError(
            f"概念数 {params.n_concepts} 不足以容纳 {params.n_provided} 个输入和长度 {params.planted} 的植入链"
        )
    if not 0.0 <= params.subsumption <= 1.0:
        raise GeneratorParamsError(f"子概念概率必须在 [0, 1]: {params.subsumption}")


def _pick(rng, pool: List[str], low: int, high: int) -> List[str]:
    """从 pool 中不放回地取 [low, high] 个"""
    if not pool:
        return []
    count = int(rng.integers(low, high + 1))
    count = min(count, len(pool))
    if count <= 0:
        return []
    chosen = rng.choice(len(pool), size=count, replace=False)
    return sorted(pool[int(k)] for k in chosen)


def _reachable(taxonomy, provided, services) -> set:
    """从 provided 出发反复调用输入已被匹配的服务，返回最终覆盖的概念"""
    covered = expand_coverage(taxonomy, provided)
    pending = list(services)
    progress = True
    while progress:
        progress = False
        for s in list(pending):
            if s.inputs <= covered:
                expand_coverage(taxonomy, s.outputs, covered)
                pending.remove(s)
                progress = True
    return covered


def generate(seed: int, params: GeneratorParams = None, **overrides):
    """
    生成合成问题包
    Args:
        seed: 随机种子
        params: 生成参数
        overrides: 覆盖 params 中的字段
    Returns:
        ProblemBundle: 问题包，植入链记录在 metadata['planted']
    """
    params = params or GeneratorParams()
    if overrides:
        params = GeneratorParams(**{**asdict(params), **overrides})
    _check_params(params)
    rng = np.random.default_rng(seed)

    width = len(str(params.n_concepts - 1))
    concepts = [f"c{k:0{width}d}" for k in range(params.n_concepts)]

    # 随机森林形本体：每个概念以一定概率挂到更早的概念下
    parents = {}
    for k in range(1, params.n_concepts):
        if rng.random() < params.subsumption:
            parents[concepts[k]] = concepts[int(rng.integers(0, k))]
    taxonomy_document = {'concepts': [
        {'id': c, 'parent': parents[c]} if c in parents else {'id': c} for c in concepts
    ]}
    taxonomy = load_taxonomy(taxonomy_document)
    children = {}
    for child, parent in parents.items():
        children.setdefault(parent, []).append(child)

    # 前 n_provided 个概念在第 0 层，作为请求输入；其余概念随机分层
    provided = concepts[:params.n_provided]
    levels = {c: 0 for c in provided}
    for c in concepts[params.n_provided:]:
        levels[c] = int(rng.integers(1, params.depth + 1))

    service_ids = [f"ws{k:02d}" for k in range(1, params.n_services + 1)]
    order = rng.permutation(params.n_services)
    ids = [service_ids[int(k)] for k in order]

    services = []
    wanted = []
    planted_ids = []
    if params.planted > 0:
        # 植入链：q_0 ∈ provided，P_k 消费 q_{k-1}、产出 q_k（或其子概念）
        chain_pool = concepts[params.n_provided:]
        picked = rng.choice(len(chain_pool), size=params.planted, replace=False)
        chain = [provided[int(rng.integers(0, len(provided)))]] + [chain_pool[int(k)] for k in picked]
        for k in range(1, len(chain)):
            target = chain[k]
            output = target
            if target in children and rng.random() < 0.5:
                output = sorted(children[target])[int(rng.integers(0, len(children[target])))]
            service_id = ids[k - 1]
            services.append(make_service(service_id, [chain[k - 1]], [output]))
            planted_ids.append(service_id)
        wanted.append(chain[-1])
    else:
        candidates = [c for c in concepts if levels[c] == params.depth] or concepts[params.n_provided:]
        wanted.append(candidates[int(rng.integers(0, len(candidates)))])

    for service_id in ids[params.planted:]:
        level = int(rng.integers(1, params.depth + 1))
        input_pool = [c for c in concepts if levels[c] < level]
        output_pool = [c for c in concepts if levels[c] >= level]
        inputs = _pick(rng, input_pool, *params.fan_in)
        outputs = _pick(rng, output_pool, *params.fan_out)
        services.append(make_service(service_id, inputs, outputs))

    # 追加期望输出：只从前向闭包可达的概念里挑，保证请求可满足
    n_target = int(rng.integers(params.n_wanted[0], params.n_wanted[1] + 1))
    if n_target > len(wanted):
        reachable = _reachable(taxonomy, provided, services)
        pool = sorted(reachable - expand_coverage(taxonomy, provided) - set(wanted))
        extra = min(n_target - len(wanted), len(pool))
        if extra > 0:
            picked = rng.choice(len(pool), size=extra, replace=False)
            wanted.extend(pool[int(k)] for k in picked)

    request = Request(provided=frozenset(provided), wanted=frozenset(wanted))
    metadata = {
        'name': f"synthetic-{seed}",
        'source': 'generator',
        'seed': int(seed),
        'params': {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(params).items()},
        'planted': planted_ids,
    }
    bundle = make_bundle(taxonomy, services, request, metadata)
    logger.debug(f"[生成器] seed={seed}，{len(services)} 个服务，植入链 {planted_ids}")
    return bundle
