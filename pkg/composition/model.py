# -*- coding: utf-8 -*-
"""
服务、请求与问题包
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Tuple

from composition.errors import MalformedDocument, UnresolvedReferenceError
from composition.ontology import Taxonomy

# 虚拟源/汇服务的保留id
SOURCE_ID = 's_o'
SINK_ID = 's_k'
DUMMY_IDS = (SOURCE_ID, SINK_ID)


@dataclass(frozen=True)
class Service:
    """语义服务 s = {In_s, Out_s}"""
    id: str
    inputs: FrozenSet[str] = frozenset()
    outputs: FrozenSet[str] = frozenset()

    @property
    def is_dummy(self) -> bool:
        return self.id in DUMMY_IDS

    def to_document(self) -> dict:
        return {'id': self.id, 'inputs': sorted(self.inputs), 'outputs': sorted(self.outputs)}


@dataclass(frozen=True)
class Request:
    """组合请求 R = {In_R, Out_R}"""
    provided: FrozenSet[str]
    wanted: FrozenSet[str]

    def to_document(self) -> dict:
        return {'provided': sorted(self.provided), 'wanted': sorted(self.wanted)}


def make_service(service_id, inputs: Iterable[str] = (), outputs: Iterable[str] = ()) -> Service:
    """构造服务，输入输出去重"""
    if not service_id:
        raise MalformedDocument("服务id不能为空")
    return Service(str(service_id), frozenset(inputs), frozenset(outputs))


def source_service(req: Request) -> Service:
    """虚拟源 s_o = {∅, In_R}"""
    return Service(SOURCE_ID, frozenset(), req.provided)


def sink_service(req: Request) -> Service:
    """虚拟汇 s_k = {Out_R, ∅}"""
    return Service(SINK_ID, req.wanted, frozenset())


@dataclass(frozen=True)
class ProblemBundle:
    """本体 + 服务仓库 + 请求 + 元数据"""
    taxonomy: Taxonomy
    services: Tuple[Service, ...]
    request: Request
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return str(self.metadata.get('name', ''))

    def service_map(self) -> Dict[str, Service]:
        return {s.id: s for s in self.services}

    def to_document(self) -> dict:
        """导出为规范JSON合并文档"""
        return {
            'name': self.metadata.get('name', ''),
            'metadata': dict(self.metadata),
            'taxonomy': self.taxonomy.to_document(),
            'repository': {'services': [s.to_document() for s in self.services]},
            'request': self.request.to_document(),
        }


def validate_bundle(taxonomy: Taxonomy, services: Iterable[Service], request: Request):
    """
    校验问题包：服务id唯一、非保留，所有概念引用可解析
    未解析的引用一次性全部列出
    """
    seen = set()
    missing = []
    for service in services:
        if service.id in DUMMY_IDS:
            raise MalformedDocument(f"服务id {service.id} 是保留的虚拟服务id")
        if service.id in seen:
            raise MalformedDocument(f"服务id重复: {service.id}")
        seen.add(service.id)
        for concept in sorted(service.inputs | service.outputs):
            if concept not in taxonomy:
                missing.append((f"service:{service.id}", concept))
    for concept in sorted(request.provided):
        if concept not in taxonomy:
            missing.append(('request.provided', concept))
    for concept in sorted(request.wanted):
        if concept not in taxonomy:
            missing.append(('request.wanted', concept))
    if missing:
        raise UnresolvedReferenceError(missing)
    if not request.wanted:
        raise MalformedDocument("请求的期望输出不能为空")


def make_bundle(taxonomy: Taxonomy, services: Iterable[Service], request: Request,
                metadata: dict = None) -> ProblemBundle:
    """校验并构造问题包，服务按id排序保证确定性"""
    services = tuple(sorted(services, key=lambda s: s.id))
    validate_bundle(taxonomy, services, request)
    return ProblemBundle(taxonomy=taxonomy, services=services, request=request,
                         metadata=dict(metadata or {}))
