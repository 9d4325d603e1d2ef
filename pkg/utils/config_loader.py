# -*- coding: utf-8 -*-
"""
配置加载模块
"""
import json
import logging
import os

from composition.errors import MalformedDocument
from solvers.base_solver import SolverOptions

logger = logging.getLogger(__name__)


def load_config(config_path=None):
    """
    加载配置文件
    Args:
        config_path: 配置文件路径，如果为None则使用项目根目录下的 config.json
    Returns:
        dict: 配置字典；默认配置文件不存在时返回空字典，各模块使用内置默认值
    """
    explicit = config_path is not None
    if config_path is None:
        # 获取utils目录的父目录（项目根目录）
        base_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        config_path = os.path.join(base_dir, 'config.json')

    if not os.path.exists(config_path):
        if explicit:
            raise MalformedDocument("配置文件不存在", path=config_path)
        logger.debug(f"未找到 {config_path}，使用默认配置")
        return {}

    with open(config_path, 'r', encoding='utf-8') as f:
        try:
            config = json.load(f)
        except json.JSONDecodeError as e:
            raise MalformedDocument(f"配置文件不是合法JSON: {e.msg}", path=config_path, line=e.lineno)

    if not isinstance(config, dict):
        raise MalformedDocument("配置文件顶层必须是对象", path=config_path)
    return config


def get_solver_options(config, **overrides):
    """
    根据配置创建求解参数，命令行参数（非None）优先
    Args:
        config: 配置字典
        overrides: bit_width_limit / order / alg4_literal / threads / check_invariants
    Returns:
        SolverOptions: 求解参数
    """
    solver_config = config.get('solver', {})
    values = {
        'bit_width_limit': solver_config.get('bit_width_limit', 24),
        'order': solver_config.get('order', 'len'),
        'alg4_literal': solver_config.get('alg4_literal', False),
        'threads': solver_config.get('threads', 1),
        'check_invariants': solver_config.get('check_invariants', False),
    }
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    return SolverOptions(**values)
