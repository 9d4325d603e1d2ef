# -*- coding: utf-8 -*-
"""
工具函数模块：配置、日志、通知、计时统计与问题包读写
"""
