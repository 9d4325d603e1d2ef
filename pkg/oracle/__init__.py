# -*- coding: utf-8 -*-
"""
校验用的穷举预言机与贪心基线
"""
