# -*- coding: utf-8 -*-
"""
组合、基准与对比
- compose：构图 + 求解，分别计时 G.Time / C.Time
- bench：预热后多次重复，取中位数，按 指标 × 数据集 输出报告表
- compare：在合成实例上对比求解器、穷举最优与贪心基线
"""
import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from bench.generator import GeneratorParams, generate
from composition.errors import UnsatisfiableRequest
from composition.graph import LayeredGraph, build_graph, precursors
from composition.plan import format_plan, replay_stages
from oracle.brute_force import DEFAULT_ORACLE_LIMIT, DEFAULT_PER_STEP_LIMIT, oracle_min, per_step_oracle
from oracle.greedy import greedy_baseline
from solvers.base_solver import SolveResult, SolverOptions
from solvers.knapsack_solver import KnapsackVariantSolver
from solvers.reference_solver import TwoDimensionalSolver
from utils.math_utils import calculate_median, elapsed_ms, summarize_gap
from utils.notification import format_markdown_table, send_dingtalk_notification

logger = logging.getLogger(__name__)

TABLE_METRICS = ('#C.Services', 'C.Time', 'G.Size', 'G.Time', 'Tot.Time')

# 对比套件的默认生成范围
SUITE_FAN_IN = (1, 4)
SUITE_N_WANTED = (2, 4)
# 宽搜索步骤：V_cap ≥ 15 且 N ≥ 5
WIDE_CAPACITY = 15
WIDE_ITEMS = 5


@dataclass
class ComposeOutcome:
    """一次组合的图、结果与计时（毫秒）"""
    graph: LayeredGraph
    result: SolveResult
    g_time: float
    c_time: float

    @property
    def tot_time(self) -> float:
        return round(self.g_time + self.c_time, 3)


def run_compose(bundle, options: Optional[SolverOptions] = None, prune: bool = True,
                solver_cls=KnapsackVariantSolver) -> ComposeOutcome:
    """
    构图并求解，C.Time 不含解析与构图
    Args:
        bundle: 问题包
        options: 求解参数
        prune: 是否反向剪枝
        solver_cls: 求解器类
    Returns:
        ComposeOutcome: 结果与计时
    """
    solver = solver_cls(options)
    start = time.perf_counter_ns()
    graph = build_graph(bundle.services, bundle.request, bundle.taxonomy, prune=prune)
    g_done = time.perf_counter_ns()
    result = solver.solve(graph, bundle.taxonomy)
    c_done = time.perf_counter_ns()
    return ComposeOutcome(graph=graph, result=result,
                          g_time=elapsed_ms(start, g_done), c_time=elapsed_ms(g_done, c_done))


def compose_document(bundle, outcome: ComposeOutcome, include_timings: bool = True) -> dict:
    """组合结果 -> JSON文档"""
    result = outcome.result
    document = {
        'name': bundle.name,
        'solver': result.solver,
        'order': result.order,
        'metrics': {
            '#C.Services': result.c_services,
            'Len': result.length,
            'G.Size': outcome.graph.size,
            'layers': len(outcome.graph.layers),
        },
        'plan': {
            'stages': result.stages,
            'notation': format_plan(result.stages),
            'services': sorted(result.services),
        },
        'layers': outcome.graph.layer_ids(),
        'steps': {
            'count': len(result.stats),
            'max_V_cap': max((s.capacity for s in result.stats), default=0),
            'max_N': max((s.n_items for s in result.stats), default=0),
            'relaxations': sum(s.relaxations for s in result.stats),
        },
    }
    if include_timings:
        document['timings'] = {
            'G.Time': outcome.g_time,
            'C.Time': outcome.c_time,
            'Tot.Time': outcome.tot_time,
            'unit': 'ms',
        }
    return document


@dataclass
class BenchReport:
    """基准报告：每个数据集一行"""
    rows: List[Dict[str, object]]
    warmups: int
    runs: int
    seed: Optional[int] = None

    @property
    def protocol(self) -> str:
        return (f"G.Time/C.Time 为 {self.warmups} 次预热后 {self.runs} 次运行的中位数（毫秒，单调时钟），"
                f"Tot.Time = G.Time + C.Time")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows)

    def table(self) -> pd.DataFrame:
        """指标 × 数据集"""
        frame = self.to_frame()
        if frame.empty:
            return frame
        return frame.set_index('dataset')[list(TABLE_METRICS)].T

    def to_document(self) -> dict:
        # 表格值取自 rows，保持原生 int/float
        table = {metric: {str(row['dataset']): row[metric] for row in self.rows} for metric in TABLE_METRICS}
        return {
            'protocol': self.protocol,
            'warmups': self.warmups,
            'runs': self.runs,
            'seed': self.seed,
            'rows': self.rows,
            'table': table if self.rows else {},
        }

    def to_csv(self, path: str):
        self.table().to_csv(path)


class BenchRunner:
    """基准与对比运行器"""

    def __init__(self, config: dict, options: Optional[SolverOptions] = None,
                 notification_func: Optional[Callable[[str, str], bool]] = None):
        """
        初始化
        Args:
            config: 配置字典
            options: 求解参数
            notification_func: 通知函数，为None时按配置使用钉钉通知
        """
        self.config = config
        self.options = options or SolverOptions()
        self.bench_config = config.get('bench', {})
        self.compare_config = config.get('compare', {})
        self.oracle_limit = config.get('oracle', {}).get('limit', DEFAULT_ORACLE_LIMIT)
        self.per_step_limit = config.get('oracle', {}).get('per_step_limit', DEFAULT_PER_STEP_LIMIT)
        self.dingtalk_webhook = config.get('dingtalk_webhook', '')
        self.enable_dingtalk_notification = config.get('enable_dingtalk_notification', False)
        if notification_func:
            self.notification_func = notification_func
        else:
            self.notification_func = lambda title, content: send_dingtalk_notification(
                self.dingtalk_webhook, title, content
            )

    def notify(self, title: str, rows: List[dict]):
        """推送Markdown摘要，失败只记日志"""
        if not self.enable_dingtalk_notification:
            return
        try:
            self.notification_func(title, format_markdown_table(title, rows))
        except Exception as e:
            logger.error(f"[基准] 通知发送失败: {e}")

    def bench(self, bundles: Sequence, warmups: Optional[int] = None, runs: Optional[int] = None,
              prune: bool = True) -> BenchReport:
        """
        重复计时
        Args:
            bundles: 问题包列表
            warmups: 预热次数（默认2）
            runs: 计时次数（默认5）
            prune: 是否反向剪枝
        Returns:
            BenchReport: 报告
        """
        warmups = self.bench_config.get('warmups', 2) if warmups is None else warmups
        runs = self.bench_config.get('runs', 5) if runs is None else runs
        if runs < 1:
            raise ValueError(f"计时次数必须为正: {runs}")
        rows = []
        for bundle in bundles:
            for _ in range(warmups):
                run_compose(bundle, self.options, prune)
            outcomes = [run_compose(bundle, self.options, prune) for _ in range(runs)]
            last = outcomes[-1]
            g_time = round(calculate_median([o.g_time for o in outcomes]), 3)
            c_time = round(calculate_median([o.c_time for o in outcomes]), 3)
            row = {
                'dataset': bundle.name,
                '#Services': len(bundle.services),
                '#Concepts': len(bundle.taxonomy),
                '#C.Services': last.result.c_services,
                'C.Time': c_time,
                'G.Size': last.graph.size,
                'G.Time': g_time,
                'Tot.Time': round(g_time + c_time, 3),
                'order': last.result.order,
            }
            rows.append(row)
            logger.info(f"[基准] {bundle.name}: #C.Services={row['#C.Services']}，G.Size={row['G.Size']}，"
                        f"G.Time={g_time}ms，C.Time={c_time}ms")
        report = BenchReport(rows=rows, warmups=warmups, runs=runs)
        self.notify("组合基准报告", [{k: r[k] for k in ('dataset', '#C.Services', 'G.Size', 'Tot.Time')} for r in rows])
        return report

    def compare(self, instances: Optional[int] = None, seed: int = 0,
                params: Optional[GeneratorParams] = None, limit: Optional[int] = None) -> dict:
        """
        在合成实例上对比求解器、穷举最优与贪心基线
        同时检查一维/二维求解器一致性与剪枝中性
        Returns:
            dict: {'summary': ..., 'instances': [...]}
        """
        instances = self.compare_config.get('instances', 200) if instances is None else instances
        limit = self.oracle_limit if limit is None else limit
        if params is None:
            params = suite_params(self.compare_config)
        rows = []
        skipped = 0
        for instance_seed in range(seed, seed + instances):
            bundle = generate(instance_seed, params)
            row = compare_instance(bundle, self.options, limit, self.per_step_limit)
            if row is None:
                skipped += 1
                continue
            rows.append(row)

        # 汇总
        frame = pd.DataFrame(rows)
        summary = {
            'instances': instances,
            'solved': len(rows),
            'unsatisfiable': skipped,
            'order': self.options.order,
            'seed': seed,
        }
        if rows:
            solver_gap = summarize_gap(frame, 'solver', 'oracle')
            greedy_gap = summarize_gap(frame, 'greedy', 'oracle')
            summary.update({
                'feasible_rate': round(float(frame['feasible'].mean()), 4),
                'solver_vs_oracle': solver_gap,
                'greedy_vs_oracle': greedy_gap,
                'dp_equivalent': int(frame['dp_equivalent'].sum()),
                'prune_neutral': int(frame['prune_neutral'].sum()),
                'step_optimal_rate': round(float(frame['steps_optimal'].sum()) / max(int(frame['steps'].sum()), 1), 4),
                'solver_optimal_target_met': solver_gap['equal_rate'] >= 0.9,
                'max_V_cap': int(frame['max_V_cap'].max()),
                'max_N': int(frame['max_N'].max()),
                'wide_steps': int(frame['wide_steps'].sum()),
            })
        logger.info(f"[对比] {len(rows)} 个可解实例，求解器最优率 "
                    f"{summary.get('solver_vs_oracle', {}).get('equal_rate')}")
        self.notify("组合对比报告", [{k: v for k, v in summary.items() if not isinstance(v, dict)}])
        return {'summary': summary, 'instances': rows}


def suite_params(compare_config: dict, **overrides) -> GeneratorParams:
    """
    对比套件的生成参数
    Args:
        compare_config: 配置中的 compare 段（max_services / fan_in / n_wanted）
        overrides: 覆盖字段，值为None的忽略
    Returns:
        GeneratorParams: 生成参数
    """
    values = {
        'n_services': compare_config.get('max_services', 12),
        'fan_in': tuple(compare_config.get('fan_in', SUITE_FAN_IN)),
        'n_wanted': tuple(compare_config.get('n_wanted', SUITE_N_WANTED)),
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    return GeneratorParams(**values)


def records_agree(a: SolveResult, b: SolveResult) -> bool:
    """两个求解结果的每个搜索步骤是否给出相同的 C[V_cap] 与选中物品"""
    if a.records.keys() != b.records.keys():
        return False
    return all(
        (a.records[k].dp_cost, a.records[k].items) == (b.records[k].dp_cost, b.records[k].items)
        for k in a.records
    )


def step_agreement(result: SolveResult, graph: LayeredGraph, t,
                   limit: int = DEFAULT_PER_STEP_LIMIT) -> Tuple[int, int]:
    """
    逐个搜索步骤与单步穷举比较 |∪ Servs|
    Returns:
        tuple: (比较的步骤数, 与穷举一致的步骤数)；前驱数超过 limit 的步骤不计
    """
    total = 0
    agree = 0
    for s in graph.services() + [graph.sink]:
        if not s.inputs:
            continue
        precs = precursors(graph, t, s)
        if len(precs) > limit:
            continue
        total += 1
        # len - 1 是去掉 s 本身后的并集大小，与 alg4_literal 无关
        if per_step_oracle(s, precs, result.records, t, limit) == result.records[s.id].len - 1:
            agree += 1
    return total, agree


def compare_instance(bundle, options: SolverOptions, limit: int = DEFAULT_ORACLE_LIMIT,
                     per_step_limit: int = DEFAULT_PER_STEP_LIMIT) -> Optional[dict]:
    """
    单个实例的对比行；请求不可满足时返回None
    """
    t = bundle.taxonomy
    try:
        outcome = run_compose(bundle, options)
    except UnsatisfiableRequest:
        return None
    result = outcome.result
    services = bundle.service_map()
    stages = [[services[sid] for sid in stage] for stage in result.stages]
    # 同一张图上的二维参考解与未剪枝图上的一维解
    reference = TwoDimensionalSolver(options).solve(outcome.graph, t)
    unpruned = KnapsackVariantSolver(options).solve(
        build_graph(bundle.services, bundle.request, t, prune=False), t
    )
    # 基线：全仓库穷举与贪心
    optimum = oracle_min(bundle.services, bundle.request, t, limit)
    greedy = greedy_baseline(bundle.services, bundle.request, t)
    steps, steps_optimal = step_agreement(result, outcome.graph, t, per_step_limit)
    return {
        'name': bundle.name,
        'services': len(bundle.services),
        'solver': result.c_services,
        'oracle': optimum.optimal_len,
        'greedy': greedy.length,
        'feasible': replay_stages(stages, bundle.request, t),
        'dp_equivalent': records_agree(result, reference),
        'prune_neutral': unpruned.c_services == result.c_services,
        'steps': steps,
        'steps_optimal': steps_optimal,
        'G.Size': outcome.graph.size,
        'max_V_cap': max((step.capacity for step in result.stats), default=0),
        'max_N': max((step.n_items for step in result.stats), default=0),
        'wide_steps': sum(1 for step in result.stats if step.capacity >= WIDE_CAPACITY and step.n_items >= WIDE_ITEMS),
    }
