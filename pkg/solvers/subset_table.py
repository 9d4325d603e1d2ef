# -*- coding: utf-8 -*-
"""
子集映射表与体积量化
- 下标 k 的第 i 位为 1 表示包含 base[i]
- 物品体积 = 其在当前状态 v 下可提供的输入子集的二进制编码
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Sequence, Tuple

from composition.errors import InputWidthExceeded
from composition.model import Service
from composition.ontology import Taxonomy, matched_inputs

DEFAULT_BIT_WIDTH_LIMIT = 24


@dataclass(frozen=True)
class SubsetTable:
    """
    子集映射表
    subsets[k] 按需解码，不物化 2^n 个集合
    """
    base: Tuple[str, ...]
    positions: Dict[str, int] = field(repr=False, compare=False)

    @property
    def capacity(self) -> int:
        """V_cap = 2^|base| - 1"""
        return (1 << len(self.base)) - 1

    def __len__(self) -> int:
        return 1 << len(self.base)

    def __getitem__(self, index: int) -> FrozenSet[str]:
        if not 0 <= index <= self.capacity:
            raise IndexError(f"下标 {index} 超出范围 [0, {self.capacity}]")
        # 二进制计数器：tmp mod 2 决定是否包含 base[i]
        subset = set()
        tmp = index
        i = 0
        while tmp > 0:
            if tmp % 2 > 0:
                subset.add(self.base[i])
            tmp //= 2
            i += 1
        return frozenset(subset)

    @property
    def subsets(self) -> Sequence[FrozenSet[str]]:
        return self

    def encode(self, concepts: Iterable[str]) -> int:
        """子集 -> 下标（Σ 2^position）"""
        index = 0
        for c in concepts:
            index |= 1 << self.positions[c]
        return index

    def binary(self, index: int) -> str:
        """下标的二进制表示，位数与 base 长度一致"""
        return format(index, f"0{max(len(self.base), 1)}b")


def gen_subsets(base: Sequence[str], limit: int = DEFAULT_BIT_WIDTH_LIMIT,
                service_id: str = '') -> SubsetTable:
    """
    生成子集映射表
    Args:
        base: 有序输入概念列表（决定位序），重复概念去重后保留首次出现的位置
        limit: 位宽上限
        service_id: 所属服务id，仅用于报错
    Returns:
        SubsetTable: 映射表
    """
    # 去重后定位序
    ordered = tuple(dict.fromkeys(base))
    if len(ordered) > limit:
        raise InputWidthExceeded(service_id, len(ordered), limit)
    positions = {c: i for i, c in enumerate(ordered)}
    return SubsetTable(base=ordered, positions=positions)


def dv(item: Service, knapsack_inputs: Sequence[str], table: SubsetTable, v: int, t: Taxonomy) -> int:
    """
    计算物品在临时背包容量 v 下的动态体积
    Args:
        item: 前驱服务（物品）
        knapsack_inputs: 背包服务的有序输入列表
        table: 子集映射表
        v: 临时容量，1 <= v <= V_cap
        t: 本体
    Returns:
        int: 体积，即 item 能为 Subs[v] 提供的输入子集的编码
    """
    if not 1 <= v <= table.capacity:
        raise ValueError(f"容量 {v} 超出范围 [1, {table.capacity}]")
    # 只看 Subs[v] 中能被 item 匹配的输入
    provided = matched_inputs(t, item.outputs, table[v])
    position = {c: i for i, c in enumerate(knapsack_inputs)}
    volume = 0
    for c in provided:
        volume += 2 ** position[c]
    return volume


def item_mask(item: Service, table: SubsetTable, t: Taxonomy) -> int:
    """物品在满容量下的体积；任意 v 下 dv = item_mask & v"""
    return table.encode(matched_inputs(t, item.outputs, table.base))
