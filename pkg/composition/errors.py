# -*- coding: utf-8 -*-
"""
组合引擎异常定义
每个异常都带有退出码，命令行据此输出机器可读的错误JSON
"""


class CompositionError(Exception):
    """所有组合引擎异常的基类"""

    exit_code = 1

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        """
        转为错误文档
        Returns:
            dict: {'error': 类名, 'message': 描述, 'exit_code': 退出码, 'details': 附加信息}
        """
        return {
            'error': type(self).__name__,
            'message': self.message,
            'exit_code': self.exit_code,
            'details': self.details,
        }


# ---- 退出码 2：请求无法满足 ----

class UnsatisfiableRequest(CompositionError):
    """前向扩展不再产生新服务，但期望输出仍未被覆盖"""

    exit_code = 2

    def __init__(self, uncovered):
        self.uncovered = sorted(uncovered)
        super().__init__(f"请求无法满足，未覆盖的期望概念: {self.uncovered}", uncovered=self.uncovered)


class Infeasible(CompositionError):
    """穷举或贪心基线找不到可行组合"""

    exit_code = 2


# ---- 退出码 3：解析/校验错误 ----

class BundleFormatError(CompositionError):
    """数据文件解析或校验失败"""

    exit_code = 3


class MalformedDocument(BundleFormatError):
    """文档格式错误"""

    def __init__(self, message: str, path: str = None, line: int = None):
        self.path = path
        self.line = line
        location = ''
        if path:
            location = f" ({path}" + (f":{line}" if line else '') + ")"
        super().__init__(f"{message}{location}", path=path, line=line)


class DuplicateConceptError(BundleFormatError):
    """概念id重复"""

    def __init__(self, concept_id: str):
        self.concept_id = concept_id
        super().__init__(f"重复的概念id: {concept_id}", concept=concept_id)


class CyclicTaxonomyError(BundleFormatError):
    """父概念链成环"""

    def __init__(self, concept_id: str):
        self.concept_id = concept_id
        super().__init__(f"概念父链存在环: {concept_id}", concept=concept_id)


class UnknownConceptError(BundleFormatError):
    """引用了本体中不存在的概念"""

    def __init__(self, concept_id: str, owner: str = None):
        self.concept_id = concept_id
        self.owner = owner
        where = f"（{owner}）" if owner else ''
        super().__init__(f"未知概念: {concept_id}{where}", concept=concept_id, owner=owner)


class UnresolvedReferenceError(BundleFormatError):
    """一次性列出所有无法解析的概念引用"""

    def __init__(self, missing):
        # missing: [(owner, concept_id), ...]
        self.missing = sorted(missing)
        preview = ', '.join(f"{owner}->{concept}" for owner, concept in self.missing[:10])
        suffix = ' ...' if len(self.missing) > 10 else ''
        super().__init__(
            f"共 {len(self.missing)} 个概念引用无法解析: {preview}{suffix}",
            missing=[{'owner': owner, 'concept': concept} for owner, concept in self.missing],
        )


class GeneratorParamsError(BundleFormatError):
    """合成实例参数矛盾"""


class UsageError(CompositionError):
    """命令行参数无法解析"""

    exit_code = 3


# ---- 退出码 4：超出限制 ----

class LimitExceeded(CompositionError):
    """实例规模超过配置上限"""

    exit_code = 4


class InputWidthExceeded(LimitExceeded):
    """服务输入概念数超过位宽上限"""

    def __init__(self, service_id: str, width: int, limit: int):
        self.service_id = service_id
        self.width = width
        self.limit = limit
        super().__init__(
            f"服务 {service_id} 的输入数 {width} 超过位宽上限 {limit}",
            service=service_id, width=width, limit=limit,
        )


class InstanceTooLarge(LimitExceeded):
    """穷举预言机的实例过大"""

    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"实例包含 {size} 个服务，超过穷举上限 {limit}", size=size, limit=limit)


# ---- 退出码 1：内部错误 ----

class SolverInvariantError(CompositionError):
    """动态规划内部不变量被破坏"""


class UncoverableInputs(SolverInvariantError):
    """C[V_cap] 仍为无穷大"""

    def __init__(self, service_id: str):
        self.service_id = service_id
        super().__init__(f"服务 {service_id} 的输入无法被前驱覆盖", service=service_id)


class MissingRecordError(SolverInvariantError):
    """前驱缺少组合记录"""

    def __init__(self, service_id: str):
        self.service_id = service_id
        super().__init__(f"缺少服务 {service_id} 的组合记录", service=service_id)


class ServiceNotInGraph(CompositionError):
    """服务不在依赖图中"""

    def __init__(self, service_id: str):
        self.service_id = service_id
        super().__init__(f"服务 {service_id} 不在依赖图中", service=service_id)
