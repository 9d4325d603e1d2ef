# -*- coding: utf-8 -*-
"""
求解器基类
- 逐层处理依赖图，每个服务的搜索步骤交给子类求解
- 同一层的服务只依赖更早层的记录，可并行求解，记录在层与层之间发布
"""
import logging
import math
import time
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from composition.errors import InputWidthExceeded, MissingRecordError
from composition.graph import LayeredGraph, precursors
from composition.model import SINK_ID, SOURCE_ID, Service
from composition.ontology import Taxonomy, matched_inputs
from solvers.subset_table import DEFAULT_BIT_WIDTH_LIMIT, SubsetTable, gen_subsets, item_mask

logger = logging.getLogger(__name__)

INF = math.inf
ITEM_ORDERS = ('len', 'id', 'input')


@dataclass(frozen=True)
class SolverOptions:
    """求解参数"""
    bit_width_limit: int = DEFAULT_BIT_WIDTH_LIMIT
    order: str = 'len'
    alg4_literal: bool = False
    threads: int = 1
    check_invariants: bool = False

    def __post_init__(self):
        if self.order not in ITEM_ORDERS:
            raise ValueError(f"未知的物品排序方式: {self.order}，可选 {ITEM_ORDERS}")
        if self.threads < 1:
            raise ValueError(f"线程数必须为正: {self.threads}")


@dataclass(frozen=True)
class CompositionRecord:
    """以某服务结尾的最优组合 Ω^s"""
    service: str
    servs: FrozenSet[str]
    len: int
    items: Tuple[str, ...] = ()
    dp_cost: int = 0

    def to_document(self) -> dict:
        return {
            'service': self.service,
            'servs': sorted(self.servs),
            'len': self.len,
            'items': list(self.items),
            'dp_cost': self.dp_cost,
        }


@dataclass(frozen=True)
class StepStats:
    """单个搜索步骤的统计"""
    service: str
    layer: int
    n_items: int
    capacity: int
    relaxations: int
    skipped: int
    elapsed_us: float

    def to_document(self) -> dict:
        return {
            'service': self.service, 'layer': self.layer, 'N': self.n_items,
            'V_cap': self.capacity, 'relaxations': self.relaxations,
            'skipped': self.skipped, 'elapsed_us': round(self.elapsed_us, 1),
        }


@dataclass
class SolveResult:
    """求解结果：汇点记录、各服务记录、统计与调用计划"""
    solver: str
    order: str
    sink: CompositionRecord
    records: Dict[str, CompositionRecord]
    stats: List[StepStats] = field(default_factory=list)
    stages: List[List[str]] = field(default_factory=list)

    @property
    def length(self) -> int:
        """Len(Ω^{s_k})，含虚拟服务"""
        return self.sink.len

    @property
    def c_services(self) -> int:
        """#C.Services，不含虚拟服务"""
        return self.sink.len - 2

    @property
    def services(self) -> FrozenSet[str]:
        return frozenset(self.sink.servs - {SOURCE_ID, SINK_ID})


@dataclass
class StepProblem:
    """一个搜索步骤转换得到的动态背包实例"""
    service: Service
    table: SubsetTable
    items: List[Service]
    masks: List[int]
    item_records: List[CompositionRecord]


def source_record() -> CompositionRecord:
    """Servs(Ω^{s_o}) = {s_o}, Len = 1"""
    return CompositionRecord(service=SOURCE_ID, servs=frozenset({SOURCE_ID}), len=1)


def order_items(s: Service, precs: Sequence[Service], records: Dict[str, CompositionRecord],
                t: Taxonomy, order: str = 'len') -> List[Service]:
    """
    物品扫描顺序
    - len: 按 Len(Ω) 升序，再按 id
    - id: 按 id
    - input: 按能提供的输入数降序，再按 id
    """
    if order == 'len':
        return sorted(precs, key=lambda p: (records[p.id].len, p.id))
    if order == 'input':
        return sorted(precs, key=lambda p: (-len(matched_inputs(t, p.outputs, s.inputs)), p.id))
    return sorted(precs, key=lambda p: p.id)


class BaseSolver(ABC):
    """求解器基类"""

    def __init__(self, options: Optional[SolverOptions] = None):
        self.options = options or SolverOptions()

    @abstractmethod
    def get_solver_name(self) -> str:
        """返回求解器名称"""
        pass

    @abstractmethod
    def solve_step(self, s: Service, precs: Sequence[Service], records: Dict[str, CompositionRecord],
                   t: Taxonomy, layer: int = 0) -> Tuple[CompositionRecord, StepStats]:
        """
        求解一个搜索步骤
        Args:
            s: 背包服务
            precs: 前驱服务
            records: 已确定的组合记录
            t: 本体
            layer: 服务所在层号（统计用）
        Returns:
            tuple: (组合记录, 步骤统计)
        """
        pass

    def solve_service(self, s: Service, precs: Sequence[Service], records: Dict[str, CompositionRecord],
                      t: Taxonomy) -> CompositionRecord:
        """求解一个搜索步骤，只返回组合记录"""
        record, _ = self.solve_step(s, precs, records, t)
        return record

    def prepare_step(self, s: Service, precs: Sequence[Service], records: Dict[str, CompositionRecord],
                     t: Taxonomy) -> StepProblem:
        """把搜索步骤转换成动态背包实例：映射表、物品顺序、满容量体积"""
        # 输入位宽检查
        base = sorted(s.inputs)
        if len(base) > self.options.bit_width_limit:
            raise InputWidthExceeded(s.id, len(base), self.options.bit_width_limit)
        table = gen_subsets(base, self.options.bit_width_limit, s.id)
        for p in precs:
            if p.id not in records:
                raise MissingRecordError(p.id)
        # 构造物品：排序后逐个计算体积掩码
        items = order_items(s, precs, records, t, self.options.order)
        masks = [item_mask(p, table, t) for p in items]
        return StepProblem(service=s, table=table, items=items, masks=masks,
                           item_records=[records[p.id] for p in items])

    def trivial_record(self, s: Service) -> CompositionRecord:
        """输入为空的服务：源服务是其隐式前驱"""
        return CompositionRecord(service=s.id, servs=frozenset({SOURCE_ID, s.id}), len=2,
                                 items=(SOURCE_ID,), dp_cost=1)

    def solve(self, g: LayeredGraph, t: Taxonomy) -> SolveResult:
        """
        逐层求解依赖图
        Args:
            g: 依赖图
            t: 本体
        Returns:
            SolveResult: 求解结果（含调用计划）
        """
        from composition.plan import extract_plan

        records: Dict[str, CompositionRecord] = {SOURCE_ID: source_record()}
        stats: List[StepStats] = []
        threads = self.options.threads
        for index in range(1, len(g.layers)):
            layer = g.layers[index]
            jobs = [(s, precursors(g, t, s)) for s in layer]
            # 本层求解期间 records 只读
            if threads > 1 and len(jobs) > 1:
                with ThreadPoolExecutor(max_workers=min(threads, len(jobs))) as executor:
                    outcomes = list(executor.map(
                        lambda job: self.solve_step(job[0], job[1], records, t, index), jobs
                    ))
            else:
                outcomes = [self.solve_step(s, precs, records, t, index) for s, precs in jobs]
            # 发布本层记录
            for record, step in outcomes:
                records[record.service] = record
                stats.append(step)
            logger.debug(f"[背包求解] 第 {index} 层完成，{len(layer)} 个服务")

        result = SolveResult(solver=self.get_solver_name(), order=self.options.order,
                             sink=records[SINK_ID], records=records, stats=stats)
        result.stages = extract_plan(result, g)
        logger.info(f"[背包求解] {self.get_solver_name()} 完成：Len(Ω^s_k)={result.length}，"
                    f"#C.Services={result.c_services}，搜索步骤 {len(stats)} 个")
        return result

    @staticmethod
    def timer() -> float:
        return time.perf_counter()
