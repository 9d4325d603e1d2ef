# -*- coding: utf-8 -*-
"""
配置、日志、通知与统计工具
"""
import json
import logging

import pandas as pd
import pytest

from composition.errors import MalformedDocument
from utils import notification
from utils.config_loader import get_solver_options, load_config
from utils.logger_setup import ColoredFormatter, resolve_level, setup_logger
from utils.math_utils import calculate_median, elapsed_ms, summarize_gap


class TestConfig:

    def test_explicit_file(self, tmp_path):
        path = tmp_path / 'config.json'
        path.write_text(json.dumps({'solver': {'order': 'id', 'threads': 2}}), encoding='utf-8')
        config = load_config(str(path))
        options = get_solver_options(config)
        assert options.order == 'id'
        assert options.threads == 2
        assert options.bit_width_limit == 24

    def test_overrides_win_and_none_is_ignored(self):
        options = get_solver_options({'solver': {'order': 'id'}}, order='input', threads=None)
        assert options.order == 'input'
        assert options.threads == 1

    def test_missing_explicit_file(self, tmp_path):
        with pytest.raises(MalformedDocument):
            load_config(str(tmp_path / 'nope.json'))

    def test_invalid_json(self, tmp_path):
        path = tmp_path / 'config.json'
        path.write_text('{"solver": }', encoding='utf-8')
        with pytest.raises(MalformedDocument) as excinfo:
            load_config(str(path))
        assert excinfo.value.line == 1

    def test_invalid_thread_count(self):
        with pytest.raises(ValueError):
            get_solver_options({}, threads=0)


class TestLogger:

    def test_file_and_stderr_handlers(self, tmp_path):
        log_file = tmp_path / 'log' / 'composer.log'
        logger = setup_logger(str(log_file), logger_name='composer-test', level='DEBUG')
        try:
            assert logger.level == logging.DEBUG
            assert len(logger.handlers) == 2
            logger.info("\x1b[31m[测试] 彩色消息\x1b[0m")
            for handler in logger.handlers:
                handler.flush()
            text = log_file.read_text(encoding='utf-8')
            assert '[测试] 彩色消息' in text
            assert '\x1b[' not in text
        finally:
            for handler in list(logger.handlers):
                logger.removeHandler(handler)
                handler.close()

    def test_repeated_setup_does_not_duplicate(self, tmp_path):
        log_file = str(tmp_path / 'composer.log')
        setup_logger(log_file, logger_name='composer-repeat')
        logger = setup_logger(log_file, logger_name='composer-repeat')
        try:
            assert len(logger.handlers) == 2
        finally:
            for handler in list(logger.handlers):
                logger.removeHandler(handler)
                handler.close()

    def test_formatter_strips_ansi(self):
        record = logging.LogRecord('x', logging.INFO, __file__, 1, '\x1b[32mok\x1b[0m', None, None)
        assert ColoredFormatter('%(message)s').format(record) == 'ok'

    def test_resolve_level(self):
        assert resolve_level('debug') == logging.DEBUG
        assert resolve_level(logging.WARNING) == logging.WARNING
        with pytest.raises(ValueError):
            resolve_level('chatty')


class TestNotification:

    def test_no_webhook(self):
        assert notification.send_dingtalk_notification('', '标题', '内容') is False

    def test_success(self, monkeypatch):
        sent = {}

        class Response:
            def json(self):
                return {'errcode': 0}

        def fake_post(url, headers=None, json=None, timeout=None):
            sent['url'] = url
            sent['payload'] = json
            return Response()

        monkeypatch.setattr(notification.requests, 'post', fake_post)
        assert notification.send_dingtalk_notification('https://hook', '报告', '| a |')
        assert sent['payload']['msgtype'] == 'markdown'
        assert sent['payload']['markdown']['title'] == '报告'

    def test_failure_is_logged_not_raised(self, monkeypatch):
        def fake_post(*args, **kwargs):
            raise ConnectionError('down')

        monkeypatch.setattr(notification.requests, 'post', fake_post)
        assert notification.send_dingtalk_notification('https://hook', '报告', '内容') is False

    def test_markdown_table(self):
        text = notification.format_markdown_table('结果', [{'dataset': 'D-01', 'G.Size': 60}])
        assert '| dataset | G.Size |' in text
        assert '| D-01 | 60 |' in text
        assert '无数据' in notification.format_markdown_table('空', [])

    def test_markdown_cells(self):
        text = notification.format_markdown_table('对比', [{'C.Time': 1.25, 'feasible': True, 'rate': 0.9}])
        assert '| 1.25 | 是 | 0.9 |' in text


class TestMathUtils:

    def test_median(self):
        assert calculate_median([3.0, 1.0, 2.0]) == 2.0
        assert calculate_median([1, 2, 3, 4]) == 2.5
        with pytest.raises(ValueError):
            calculate_median([])

    def test_elapsed_ms(self):
        assert elapsed_ms(0, 1_500_000) == 1.5

    def test_summarize_gap(self):
        frame = pd.DataFrame({'solver': [3, 4, 5, 5], 'oracle': [3, 4, 4, 5]})
        summary = summarize_gap(frame, 'solver', 'oracle')
        assert summary == {'count': 4, 'equal_rate': 0.75, 'mean_gap': 0.25, 'max_gap': 1, 'below_reference': 0}

    def test_summarize_gap_empty(self):
        assert summarize_gap(pd.DataFrame(), 'solver', 'oracle')['count'] == 0
