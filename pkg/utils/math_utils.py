# -*- coding: utf-8 -*-
"""
数学与统计工具函数
"""
import logging
import time

import pandas as pd

logger = logging.getLogger(__name__)


def elapsed_ms(start_ns, end_ns=None):
    """单调时钟纳秒差 -> 毫秒，保留微秒精度"""
    if end_ns is None:
        end_ns = time.perf_counter_ns()
    return round((end_ns - start_ns) / 1e6, 3)


def calculate_median(samples):
    """计算中位数"""
    if not samples:
        raise ValueError("样本为空，无法计算中位数")
    return float(pd.Series(samples, dtype='float64').median())


def summarize_gap(frame, value_col, reference_col):
    """
    统计两列之间的差距
    Args:
        frame: DataFrame
        value_col: 被比较的列（如求解器长度）
        reference_col: 参照列（如穷举最优）
    Returns:
        dict: {'count', 'equal_rate', 'mean_gap', 'max_gap', 'below_reference'}
    """
    if frame.empty:
        return {'count': 0, 'equal_rate': None, 'mean_gap': None, 'max_gap': None, 'below_reference': 0}
    gap = frame[value_col] - frame[reference_col]
    return {
        'count': int(len(gap)),
        'equal_rate': round(float((gap == 0).mean()), 4),
        'mean_gap': round(float(gap.mean()), 4),
        'max_gap': int(gap.max()),
        'below_reference': int((gap < 0).sum()),
    }
