# -*- coding: utf-8 -*-
"""
求解器模块
"""
