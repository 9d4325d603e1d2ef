# -*- coding: utf-8 -*-
"""
通知模块
基准与对比结束后把摘要推送到钉钉群
"""
import logging

import requests

logger = logging.getLogger(__name__)

DINGTALK_TIMEOUT = 10


def send_dingtalk_notification(webhook_url, title, content):
    """
    发送钉钉Markdown消息
    Args:
        webhook_url: 钉钉webhook地址
        title: 消息标题
        content: Markdown格式的消息内容
    Returns:
        bool: 是否发送成功；未配置webhook时直接返回False
    """
    if not webhook_url:
        logger.debug(f"[通知] 未配置webhook，跳过: {title}")
        return False

    payload = {"msgtype": "markdown", "markdown": {"title": title, "text": content}}
    try:
        response = requests.post(webhook_url, headers={'Content-Type': 'application/json'},
                                 json=payload, timeout=DINGTALK_TIMEOUT)
        result = response.json()
    except Exception as e:
        logger.error(f"[通知] {title} 发送异常: {e}")
        return False
    if result.get('errcode') == 0:
        logger.info(f"[通知] {title} 已推送")
        return True
    logger.error(f"[通知] {title} 推送失败: {result.get('errmsg')}")
    return False


def _cell(value):
    if isinstance(value, bool):
        return '是' if value else '否'
    if isinstance(value, float):
        return f"{value:.3f}".rstrip('0').rstrip('.')
    return str(value)


def format_markdown_table(title, rows):
    """
    把报告行渲染成Markdown表格
    Args:
        title: 标题
        rows: [{列名: 值}]，列顺序取第一行；浮点数保留三位小数，布尔值显示为是/否
    Returns:
        str: Markdown文本
    """
    lines = [f"### {title}", ""]
    if not rows:
        lines.append("（无数据）")
        return "\n".join(lines)
    columns = list(rows[0].keys())
    lines.append("| " + " | ".join(columns) + " |")
    lines.append("|" + "---|" * len(columns))
    for row in rows:
        lines.append("| " + " | ".join(_cell(row.get(c, '')) for c in columns) + " |")
    return "\n".join(lines)
