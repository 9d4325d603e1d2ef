# -*- coding: utf-8 -*-
"""
基准模块
- generator: 按种子生成的合成问题包
- bench_runner: 组合计时、重复基准与求解器/穷举/贪心对比
"""
