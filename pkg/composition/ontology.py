# -*- coding: utf-8 -*-
"""
概念本体
- 加载概念层次（单父节点森林），预计算自反传递祖先闭包
- 语义匹配：输出概念与输入概念相同，或输出是输入的子概念
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional

from composition.errors import (
    CyclicTaxonomyError, DuplicateConceptError, MalformedDocument, UnknownConceptError
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Concept:
    """概念：id 与可选的直接父概念"""
    id: str
    parent: Optional[str] = None


@dataclass(frozen=True)
class Taxonomy:
    """
    概念层次
    ancestors[c] 是 c 的自反传递祖先集合，加载后只读
    """
    concepts: Dict[str, Concept]
    ancestors: Dict[str, FrozenSet[str]] = field(repr=False)

    def __contains__(self, concept_id) -> bool:
        return concept_id in self.concepts

    def __len__(self) -> int:
        return len(self.concepts)

    def require(self, concept_id: str, owner: str = None):
        """校验概念存在，不存在则抛出 UnknownConceptError"""
        if concept_id not in self.concepts:
            raise UnknownConceptError(concept_id, owner)

    def to_document(self) -> dict:
        """导出为规范JSON结构 {concepts: [{id, parent?}]}"""
        concepts = []
        for concept_id in sorted(self.concepts):
            concept = self.concepts[concept_id]
            entry = {'id': concept.id}
            if concept.parent is not None:
                entry['parent'] = concept.parent
            concepts.append(entry)
        return {'concepts': concepts}


def _iter_concept_entries(document):
    """兼容 {concepts: [...]} 与直接给出的列表"""
    if isinstance(document, dict):
        entries = document.get('concepts')
    else:
        entries = document
    if not isinstance(entries, list):
        raise MalformedDocument("本体文档缺少 concepts 列表")
    return entries


def load_taxonomy(document) -> Taxonomy:
    """
    加载概念层次并预计算祖先闭包
    Args:
        document: 规范JSON结构 {concepts: [{id, parent?}]}（或直接是列表）
    Returns:
        Taxonomy: 只读的本体
    """
    concepts: Dict[str, Concept] = {}
    for entry in _iter_concept_entries(document):
        if isinstance(entry, str):
            entry = {'id': entry}
        if not isinstance(entry, dict) or not entry.get('id'):
            raise MalformedDocument(f"概念条目格式错误: {entry!r}")
        concept_id = str(entry['id'])
        parent = entry.get('parent')
        if isinstance(parent, (list, tuple)):
            # 不支持多继承
            if len(parent) > 1:
                raise MalformedDocument(f"概念 {concept_id} 声明了多个父概念: {list(parent)}")
            parent = parent[0] if parent else None
        if concept_id in concepts:
            raise DuplicateConceptError(concept_id)
        concepts[concept_id] = Concept(concept_id, str(parent) if parent is not None else None)

    # 父概念必须已声明
    for concept in concepts.values():
        if concept.parent is not None and concept.parent not in concepts:
            raise UnknownConceptError(concept.parent, owner=f"concept:{concept.id}")

    ancestors = _compute_closure(concepts)
    logger.info(f"[本体] 加载 {len(concepts)} 个概念")
    return Taxonomy(concepts=concepts, ancestors=ancestors)


def _compute_closure(concepts: Dict[str, Concept]) -> Dict[str, FrozenSet[str]]:
    """沿父链计算自反传递闭包，同时检测环"""
    ancestors: Dict[str, FrozenSet[str]] = {}
    for start in sorted(concepts):
        if start in ancestors:
            continue
        chain = []
        on_chain = set()
        current = start
        # 向上走到已知节点或根
        while current is not None and current not in ancestors:
            if current in on_chain:
                raise CyclicTaxonomyError(current)
            chain.append(current)
            on_chain.add(current)
            current = concepts[current].parent
        # 自上而下写回链上每个概念的闭包
        above = ancestors[current] if current is not None else frozenset()
        for concept_id in reversed(chain):
            above = above | {concept_id}
            ancestors[concept_id] = above
    return ancestors


def matches(t: Taxonomy, out: str, in_: str) -> bool:
    """
    语义匹配：out 与 in_ 相同，或 out 是 in_ 的子概念
    Args:
        t: 本体
        out: 输出概念
        in_: 输入概念
    Returns:
        bool: 是否匹配
    """
    t.require(out)
    t.require(in_)
    return in_ in t.ancestors[out]


def expand_coverage(t: Taxonomy, outs: Iterable[str], covered: set = None) -> set:
    """
    计算 outs 能匹配的全部输入概念（各输出的祖先并集）
    Args:
        t: 本体
        outs: 输出概念
        covered: 已有的覆盖集合，传入时原地扩展
    Returns:
        set: 覆盖集合
    """
    if covered is None:
        covered = set()
    for out in outs:
        t.require(out)
        covered |= t.ancestors[out]
    return covered


def matched_inputs(t: Taxonomy, outs: Iterable[str], ins: Iterable[str]) -> FrozenSet[str]:
    """
    返回 ins 中能被 outs 里某个概念匹配的输入概念
    扁平本体下退化为普通集合交集
    """
    covered = expand_coverage(t, outs)
    result = set()
    for in_ in ins:
        t.require(in_)
        if in_ in covered:
            result.add(in_)
    return frozenset(result)
