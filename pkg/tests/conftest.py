# -*- coding: utf-8 -*-
"""
测试公共夹具
"""
import os
import sys

import pytest

# 添加项目根目录到路径
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from composition.graph import build_graph  # noqa: E402
from composition.model import Request, make_bundle, make_service  # noqa: E402
from composition.ontology import load_taxonomy  # noqa: E402
from utils.bundle_io import load_bundle  # noqa: E402

DATA_DIR = os.path.join(PROJECT_ROOT, 'data')
WORKED_EXAMPLE = os.path.join(DATA_DIR, 'worked_example.json')
MOTIVATING_EXAMPLE = os.path.join(DATA_DIR, 'motivating_example.json')


@pytest.fixture
def worked_bundle():
    return load_bundle(WORKED_EXAMPLE)


@pytest.fixture
def worked_graph(worked_bundle):
    return build_graph(worked_bundle.services, worked_bundle.request, worked_bundle.taxonomy)


@pytest.fixture
def motivating_bundle():
    return load_bundle(MOTIVATING_EXAMPLE)


@pytest.fixture
def chain_taxonomy():
    """a → b → c（c 为根）"""
    return load_taxonomy({'concepts': [{'id': 'c'}, {'id': 'b', 'parent': 'c'}, {'id': 'a', 'parent': 'b'}]})


@pytest.fixture
def flat_taxonomy():
    return load_taxonomy(['c1', 'c2', 'c3', 'c4'])


def tiny_bundle(services, provided, wanted, concepts=None, name='tiny'):
    """用扁平本体快速构造问题包"""
    if concepts is None:
        concepts = set(provided) | set(wanted)
        for _, ins, outs in services:
            concepts |= set(ins) | set(outs)
    taxonomy = load_taxonomy(sorted(concepts))
    repo = [make_service(sid, ins, outs) for sid, ins, outs in services]
    request = Request(provided=frozenset(provided), wanted=frozenset(wanted))
    return make_bundle(taxonomy, repo, request, {'name': name})
