# -*- coding: utf-8 -*-
"""
服务组合引擎 - 主程序
- compose：加载问题包，构建依赖图，用背包变体算法求最小组合
- oracle：小实例穷举最优
- compare：合成实例上对比求解器、穷举最优与贪心基线
- gen：生成合成问题包
- bench：重复计时，输出基准报告
每次调用向标准输出写一个JSON文档，日志写到标准错误和日志文件
"""
import argparse
import logging
import sys

from bench.bench_runner import BenchRunner, compose_document, run_compose, suite_params
from bench.generator import GeneratorParams, generate
from composition.errors import CompositionError, UsageError
from oracle.brute_force import DEFAULT_ORACLE_LIMIT, oracle_min
from oracle.greedy import greedy_baseline
from solvers.base_solver import ITEM_ORDERS
from solvers.knapsack_solver import KnapsackVariantSolver
from solvers.reference_solver import TwoDimensionalSolver
from utils.bundle_io import FORMATS, dumps_document, load_bundle, save_bundle
from utils.config_loader import get_solver_options, load_config
from utils.logger_setup import setup_logger

logger = logging.getLogger(__name__)

SOLVERS = {'1d': KnapsackVariantSolver, '2d': TwoDimensionalSolver}


class CompositionApp:
    """命令行应用主类"""

    def __init__(self, args):
        """
        初始化
        Args:
            args: argparse 解析结果
        """
        self.args = args
        self.config = load_config(args.config)
        self.options = get_solver_options(
            self.config,
            order=getattr(args, 'order', None),
            threads=getattr(args, 'threads', None),
            alg4_literal=True if getattr(args, 'alg4_literal', False) else None,
            check_invariants=True if getattr(args, 'check_invariants', False) else None,
        )
        self.prune = self.config.get('graph', {}).get('prune', True) and not getattr(args, 'no_prune', False)
        self.oracle_limit = self.config.get('oracle', {}).get('limit', DEFAULT_ORACLE_LIMIT)

    def load(self):
        args = self.args
        return load_bundle(args.bundle, taxonomy_path=args.taxonomy, repo_path=args.repo,
                           request_path=args.request, fmt=args.format)

    def compose(self) -> dict:
        bundle = self.load()
        outcome = run_compose(bundle, self.options, self.prune, SOLVERS[self.args.solver])
        document = compose_document(bundle, outcome, include_timings=not self.args.deterministic)
        if self.args.stats:
            detail = [step.to_document() for step in outcome.result.stats]
            if self.args.deterministic:
                for entry in detail:
                    entry.pop('elapsed_us')
            document['steps']['detail'] = detail
        return document

    def oracle(self) -> dict:
        bundle = self.load()
        limit = self.args.limit if self.args.limit is not None else self.oracle_limit
        result = oracle_min(bundle.services, bundle.request, bundle.taxonomy, limit)
        document = {'name': bundle.name, 'oracle': result.to_document()}
        if self.args.greedy:
            document['greedy'] = greedy_baseline(bundle.services, bundle.request, bundle.taxonomy).to_document()
        return document

    def compare(self) -> dict:
        runner = BenchRunner(self.config, self.options)
        params = suite_params(self.config.get('compare', {}), **self.generator_overrides())
        return runner.compare(instances=self.args.instances, seed=self.args.seed or 0,
                              params=params, limit=self.args.limit)

    def gen(self) -> dict:
        bundle = generate(self.args.seed or 0, self.generator_params())
        if self.args.out:
            save_bundle(bundle, self.args.out)
            return {'name': bundle.name, 'written': self.args.out, 'services': len(bundle.services)}
        return bundle.to_document()

    def bench(self) -> dict:
        runner = BenchRunner(self.config, self.options)
        if self.args.bundles:
            bundles = [load_bundle(path, fmt=self.args.format) for path in self.args.bundles]
        else:
            seed = self.args.seed or 0
            bundles = [generate(seed + k, self.generator_params()) for k in range(self.args.generated)]
        report = runner.bench(bundles, warmups=self.args.warmups, runs=self.args.runs, prune=self.prune)
        report.seed = self.args.seed
        if self.args.csv:
            report.to_csv(self.args.csv)
            logger.info(f"[基准] CSV 报告已写入 {self.args.csv}")
        return report.to_document()

    def generator_overrides(self) -> dict:
        """命令行给出的生成参数"""
        values = {}
        for key, attr in (('n_services', 'services'), ('depth', 'depth'), ('n_concepts', 'concepts'),
                          ('planted', 'planted'), ('n_provided', 'provided'), ('subsumption', 'subsumption')):
            value = getattr(self.args, attr, None)
            if value is not None:
                values[key] = value
        wanted = getattr(self.args, 'wanted', None)
        if wanted is not None:
            values['n_wanted'] = (wanted, wanted)
        return values

    def generator_params(self) -> GeneratorParams:
        """配置 generator.* 为默认值，命令行参数优先"""
        values = dict(self.config.get('generator', {}))
        for key in ('fan_in', 'fan_out', 'n_wanted'):
            if key in values:
                values[key] = tuple(values[key])
        values.update(self.generator_overrides())
        return GeneratorParams(**values)

    def run(self) -> dict:
        handler = getattr(self, self.args.command)
        return handler()


class CompositionArgumentParser(argparse.ArgumentParser):
    """参数错误时抛出 UsageError，由 main 输出错误JSON"""

    def error(self, message):
        raise UsageError(f"命令行参数错误: {message}", usage=self.format_usage().strip())


def _add_bundle_args(parser):
    parser.add_argument('bundle', nargs='?', help='合并JSON文件，或包含三个数据文件的目录')
    parser.add_argument('--taxonomy', help='本体文件')
    parser.add_argument('--repo', help='服务仓库文件')
    parser.add_argument('--request', help='请求文件')
    parser.add_argument('--format', choices=FORMATS, default='json', help='输入格式')


def _add_solver_args(parser):
    parser.add_argument('--order', choices=ITEM_ORDERS, help='物品扫描顺序')
    parser.add_argument('--threads', type=int, help='层内并行线程数')
    parser.add_argument('--alg4-literal', action='store_true', help='物品代价使用 |Ser|+1')
    parser.add_argument('--check-invariants', action='store_true', help='每个搜索步骤校验覆盖与代价即并集大小')
    parser.add_argument('--no-prune', action='store_true', help='跳过依赖图反向剪枝')


def _add_generator_args(parser):
    parser.add_argument('--seed', type=int, help='随机种子')
    parser.add_argument('--services', type=int, help='服务数')
    parser.add_argument('--depth', type=int, help='层深')
    parser.add_argument('--concepts', type=int, help='概念数')
    parser.add_argument('--planted', type=int, help='植入链长度')
    parser.add_argument('--provided', type=int, help='请求提供的输入数')
    parser.add_argument('--subsumption', type=float, help='概念挂到父概念下的概率')
    parser.add_argument('--wanted', type=int, help='期望输出概念数')


def build_parser() -> argparse.ArgumentParser:
    common = CompositionArgumentParser(add_help=False)
    common.add_argument('--config', help='配置文件路径（默认项目根目录 config.json）')
    common.add_argument('--log-file', help='日志文件路径')
    common.add_argument('--out', help='输出文件，默认写标准输出')

    parser = CompositionArgumentParser(prog='main_compose.py', description='语义服务最小组合')
    sub = parser.add_subparsers(dest='command', required=True)

    compose = sub.add_parser('compose', parents=[common], help='求最小组合')
    _add_bundle_args(compose)
    _add_solver_args(compose)
    compose.add_argument('--solver', choices=sorted(SOLVERS), default='1d', help='一维或二维求解器')
    compose.add_argument('--stats', action='store_true', help='输出每个搜索步骤的统计')
    compose.add_argument('--deterministic', action='store_true', help='省略计时，输出逐字节可复现')

    oracle = sub.add_parser('oracle', parents=[common], help='穷举最优（小实例）')
    _add_bundle_args(oracle)
    oracle.add_argument('--limit', type=int, help='仓库规模上限')
    oracle.add_argument('--greedy', action='store_true', help='同时输出贪心基线')

    compare = sub.add_parser('compare', parents=[common], help='求解器 vs 穷举 vs 贪心')
    _add_solver_args(compare)
    _add_generator_args(compare)
    compare.add_argument('--instances', type=int, help='实例数')
    compare.add_argument('--limit', type=int, help='穷举规模上限')

    gen = sub.add_parser('gen', parents=[common], help='生成合成问题包')
    _add_generator_args(gen)

    bench = sub.add_parser('bench', parents=[common], help='重复计时基准')
    bench.add_argument('bundles', nargs='*', help='问题包路径，不给则使用合成实例')
    bench.add_argument('--format', choices=FORMATS, default='json', help='输入格式')
    _add_solver_args(bench)
    _add_generator_args(bench)
    bench.add_argument('--generated', type=int, default=3, help='不给问题包时生成的实例数')
    bench.add_argument('--warmups', type=int, help='预热次数')
    bench.add_argument('--runs', type=int, help='计时次数')
    bench.add_argument('--csv', help='CSV 报告路径')
    return parser


def _emit(document, out=None):
    text = dumps_document(document)
    if out:
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text + '\n')
    else:
        sys.stdout.write(text + '\n')
        sys.stdout.flush()


def main(argv=None) -> int:
    """
    命令行入口
    Args:
        argv: 参数列表，None 时取 sys.argv
    Returns:
        int: 退出码 0 成功，2 请求不可满足，3 解析/校验错误，4 超出限制，1 内部错误
    """
    # 解析参数
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        logger.error(f"[参数] {e.message}")
        _emit(e.to_dict())
        return e.exit_code
    out = None if args.command == 'gen' else args.out
    # 加载配置并执行子命令
    try:
        app = CompositionApp(args)
        setup_logger(args.log_file or app.config.get('log_file'),
                     level=app.config.get('log_level', 'INFO'))
        document = app.run()
    except CompositionError as e:
        logger.error(f"[{args.command}] {e.message}")
        _emit(e.to_dict())
        return e.exit_code
    except ValueError as e:
        logger.error(f"[{args.command}] 参数错误: {e}")
        _emit({'error': type(e).__name__, 'message': str(e), 'exit_code': 3, 'details': {}})
        return 3
    except Exception as e:
        logger.exception(f"[{args.command}] 内部错误: {e}")
        _emit({'error': type(e).__name__, 'message': str(e), 'exit_code': 1, 'details': {}})
        return 1
    _emit(document, out)
    return 0


if __name__ == '__main__':
    sys.exit(main())
