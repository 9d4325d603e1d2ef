# -*- coding: utf-8 -*-
"""
日志配置模块
标准输出留给JSON结果，控制台日志写到标准错误
"""
import logging
import os
import re
import sys
from logging.handlers import TimedRotatingFileHandler

ANSI_ESCAPE = re.compile(r'\x1B(?:[@-Z\\-_]|\[[0-?]*[ -/]*[@-~])')
FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
CONSOLE_FORMAT = '%(levelname)s %(name)s: %(message)s'
DEFAULT_LOG_FILE = os.path.join('log', 'composer.log')


class ColoredFormatter(logging.Formatter):
    """写文件时去掉ANSI颜色代码"""

    def format(self, record):
        return ANSI_ESCAPE.sub('', super().format(record))


def resolve_level(level):
    """
    日志级别转为数值
    Args:
        level: 数值或名称（大小写不敏感）
    Returns:
        int: logging 级别
    """
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).upper())
    if not isinstance(value, int):
        raise ValueError(f"未知的日志级别: {level}")
    return value


def setup_logger(log_file_path=None, logger_name=None, level=logging.INFO):
    """
    配置文件与控制台日志
    Args:
        log_file_path: 日志文件路径，如果为None则使用项目根目录下 log/composer.log
        logger_name: logger名称，如果为None则配置root logger
        level: 日志级别（数值或名称）
    Returns:
        logging.Logger: 配置好的logger对象
    """
    if log_file_path is None:
        base_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        log_file_path = os.path.join(base_dir, DEFAULT_LOG_FILE)

    log_dir = os.path.dirname(log_file_path)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)

    logger = logging.getLogger(logger_name)
    logger.setLevel(resolve_level(level))

    # 重复调用时先清掉旧handler
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    # 按天轮转，保留7天
    file_handler = TimedRotatingFileHandler(
        log_file_path, when='midnight', interval=1, backupCount=7, encoding='utf-8'
    )
    file_handler.suffix = "%Y-%m-%d"
    file_handler.setFormatter(ColoredFormatter(FILE_FORMAT))
    logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    logger.addHandler(console_handler)

    return logger
