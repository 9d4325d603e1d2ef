# -*- coding: utf-8 -*-
"""
服务组合领域模块：本体、服务模型、依赖图、调用计划
"""
