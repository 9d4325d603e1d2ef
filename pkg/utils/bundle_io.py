# -*- coding: utf-8 -*-
"""
问题包读写
- 规范JSON格式：合并文件 {name, taxonomy, repository, request} 或三个单独文件
- WSC-2008 风格XML的尽力适配（映射见 README，不保证逐位一致）
"""
import json
import logging
import os

from bs4 import BeautifulSoup

from composition.errors import MalformedDocument
from composition.model import Request, make_bundle, make_service
from composition.ontology import load_taxonomy

logger = logging.getLogger(__name__)

FORMATS = ('json', 'wsc08')

# 目录形式的数据集中使用的文件名
JSON_FILES = {'taxonomy': 'taxonomy.json', 'repository': 'repository.json', 'request': 'request.json'}
WSC08_FILES = {'taxonomy': 'taxonomy.xml', 'repository': 'services.xml', 'request': 'problem.xml'}

# WSC-2008 各镜像的标签写法不统一，按顺序尝试
WSC_CONCEPT_TAGS = ('concept', 'Concept', 'class', 'Class')
WSC_INSTANCE_TAGS = ('instance', 'Instance')
WSC_SERVICE_TAGS = ('service', 'Service')
WSC_INPUT_TAGS = ('inputs', 'Inputs', 'input', 'Input')
WSC_OUTPUT_TAGS = ('outputs', 'Outputs', 'output', 'Output')
WSC_PROVIDED_TAGS = ('provided', 'Provided')
WSC_WANTED_TAGS = ('wanted', 'Wanted', 'resultant', 'Resultant', 'required', 'Required')
WSC_PARENT_ATTRS = ('superclass', 'parent', 'subClassOf')


def read_json(path):
    """读取JSON文件，解析错误带文件与行号"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError:
        raise MalformedDocument("文件不存在", path=path)
    except json.JSONDecodeError as e:
        raise MalformedDocument(f"JSON解析失败: {e.msg}", path=path, line=e.lineno)


def dumps_document(document):
    """稳定的JSON序列化：键排序、缩进2、保留中文"""
    return json.dumps(document, ensure_ascii=False, indent=2, sort_keys=True)


def _resolve_paths(path, taxonomy_path, repo_path, request_path, files):
    """目录 -> 三个文件；显式给出的路径优先"""
    paths = {'taxonomy': taxonomy_path, 'repository': repo_path, 'request': request_path}
    if path and os.path.isdir(path):
        for key, name in files.items():
            if paths[key] is None:
                paths[key] = os.path.join(path, name)
    missing = [key for key, value in paths.items() if value is None]
    if missing:
        raise MalformedDocument(f"缺少输入文件: {missing}", path=path)
    return paths


def _parse_services(document, path=None):
    entries = document.get('services') if isinstance(document, dict) else document
    if not isinstance(entries, list):
        raise MalformedDocument("服务仓库缺少 services 列表", path=path)
    services = []
    for entry in entries:
        if not isinstance(entry, dict) or not entry.get('id'):
            raise MalformedDocument(f"服务条目格式错误: {entry!r}", path=path)
        services.append(make_service(entry['id'], entry.get('inputs', []), entry.get('outputs', [])))
    return services


def _parse_request(document, path=None):
    if not isinstance(document, dict):
        raise MalformedDocument("请求必须是对象 {provided, wanted}", path=path)
    return Request(provided=frozenset(document.get('provided', [])),
                   wanted=frozenset(document.get('wanted', [])))


def bundle_from_document(document, source=None):
    """合并文档 -> ProblemBundle"""
    for key in ('taxonomy', 'repository', 'request'):
        if key not in document:
            raise MalformedDocument(f"合并文档缺少 {key}", path=source)
    taxonomy = load_taxonomy(document['taxonomy'])
    services = _parse_services(document['repository'], source)
    request = _parse_request(document['request'], source)
    metadata = dict(document.get('metadata', {}))
    metadata.setdefault('name', document.get('name') or _default_name(source))
    metadata.setdefault('source', source or 'memory')
    return make_bundle(taxonomy, services, request, metadata)


def _default_name(path):
    if not path:
        return ''
    return os.path.splitext(os.path.basename(os.path.normpath(path)))[0]


def load_bundle(path=None, taxonomy_path=None, repo_path=None, request_path=None, fmt='json'):
    """
    加载问题包
    Args:
        path: 合并JSON文件，或包含三个文件的目录
        taxonomy_path: 本体文件
        repo_path: 服务仓库文件
        request_path: 请求文件
        fmt: 'json' 或 'wsc08'
    Returns:
        ProblemBundle: 校验后的问题包
    """
    if fmt not in FORMATS:
        raise MalformedDocument(f"未知格式 {fmt}，可选 {FORMATS}")
    if fmt == 'wsc08':
        return load_wsc08_bundle(path, taxonomy_path, repo_path, request_path)

    if path and os.path.isfile(path) and not (taxonomy_path or repo_path or request_path):
        bundle = bundle_from_document(read_json(path), source=path)
    else:
        paths = _resolve_paths(path, taxonomy_path, repo_path, request_path, JSON_FILES)
        taxonomy = load_taxonomy(read_json(paths['taxonomy']))
        services = _parse_services(read_json(paths['repository']), paths['repository'])
        request = _parse_request(read_json(paths['request']), paths['request'])
        source = path or paths['repository']
        bundle = make_bundle(taxonomy, services, request,
                             {'name': _default_name(source), 'source': source})
    logger.info(f"加载问题包 {bundle.name}: {len(bundle.services)} 个服务，{len(bundle.taxonomy)} 个概念")
    return bundle


def save_bundle(bundle, path):
    """把问题包写成规范JSON合并文件"""
    directory = os.path.dirname(path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps_document(bundle.to_document()))
        f.write('\n')
    logger.info(f"问题包已写入 {path}")


# ---- WSC-2008 XML 适配 ----

def _read_soup(path):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except FileNotFoundError:
        raise MalformedDocument("文件不存在", path=path)
    soup = BeautifulSoup(text, 'lxml-xml')
    if soup.find() is None:
        raise MalformedDocument("XML文档为空或无法解析", path=path)
    return soup


def _find_all_any(node, names):
    found = []
    for name in names:
        found.extend(node.find_all(name))
    return found


def _find_any(node, names):
    for name in names:
        found = node.find(name)
        if found is not None:
            return found
    return None


def _enclosing_concept(tag):
    for name in WSC_CONCEPT_TAGS:
        parent = tag.find_parent(name)
        if parent is not None:
            return parent
    return None


def parse_wsc08_taxonomy(path):
    """
    解析本体XML
    - 嵌套的 concept 元素：外层是父概念
    - 扁平的 concept 元素：superclass/parent 属性指向父概念
    - instance 元素：映射到所在（或 concept/class 属性指定）的概念
    Returns:
        tuple: (规范本体文档, {实例名: 概念名})
    """
    soup = _read_soup(path)
    concepts = []
    for tag in _find_all_any(soup, WSC_CONCEPT_TAGS):
        name = tag.get('name') or tag.get('id')
        if not name:
            line = getattr(tag, 'sourceline', None)
            raise MalformedDocument("concept 元素缺少 name 属性", path=path, line=line)
        parent = None
        for attr in WSC_PARENT_ATTRS:
            if tag.get(attr):
                parent = tag.get(attr)
                break
        if parent is None:
            enclosing = _enclosing_concept(tag)
            if enclosing is not None:
                parent = enclosing.get('name') or enclosing.get('id')
        entry = {'id': name}
        if parent:
            entry['parent'] = parent
        concepts.append(entry)
    if not concepts:
        raise MalformedDocument("本体中没有 concept 元素", path=path)

    instances = {}
    for tag in _find_all_any(soup, WSC_INSTANCE_TAGS):
        name = tag.get('name') or tag.get('id')
        concept = tag.get('concept') or tag.get('class')
        if concept is None:
            enclosing = _enclosing_concept(tag)
            if enclosing is not None:
                concept = enclosing.get('name') or enclosing.get('id')
        if name and concept:
            instances[name] = concept
    return {'concepts': concepts}, instances


def _names_under(tag, instances):
    """参数元素（instance/concept/任意带name的子元素）-> 概念名"""
    names = []
    for child in tag.find_all(True):
        name = child.get('name') or child.get('id')
        if name:
            names.append(instances.get(name, name))
    return names


def parse_wsc08_services(path, instances):
    soup = _read_soup(path)
    services = []
    for tag in _find_all_any(soup, WSC_SERVICE_TAGS):
        name = tag.get('name') or tag.get('id')
        if not name:
            raise MalformedDocument("service 元素缺少 name 属性", path=path,
                                    line=getattr(tag, 'sourceline', None))
        inputs_tag = _find_any(tag, WSC_INPUT_TAGS)
        outputs_tag = _find_any(tag, WSC_OUTPUT_TAGS)
        inputs = _names_under(inputs_tag, instances) if inputs_tag is not None else []
        outputs = _names_under(outputs_tag, instances) if outputs_tag is not None else []
        services.append(make_service(name, inputs, outputs))
    if not services:
        raise MalformedDocument("服务文件中没有 service 元素", path=path)
    return services


def parse_wsc08_request(path, instances):
    soup = _read_soup(path)
    provided_tag = _find_any(soup, WSC_PROVIDED_TAGS)
    wanted_tag = _find_any(soup, WSC_WANTED_TAGS)
    if provided_tag is None or wanted_tag is None:
        raise MalformedDocument("请求文件缺少 provided/wanted 元素", path=path)
    return Request(provided=frozenset(_names_under(provided_tag, instances)),
                   wanted=frozenset(_names_under(wanted_tag, instances)))


def load_wsc08_bundle(path=None, taxonomy_path=None, repo_path=None, request_path=None):
    """加载 WSC-2008 风格数据集（目录或三个文件）"""
    paths = _resolve_paths(path, taxonomy_path, repo_path, request_path, WSC08_FILES)
    taxonomy_document, instances = parse_wsc08_taxonomy(paths['taxonomy'])
    taxonomy = load_taxonomy(taxonomy_document)
    services = parse_wsc08_services(paths['repository'], instances)
    request = parse_wsc08_request(paths['request'], instances)
    source = path or paths['repository']
    bundle = make_bundle(taxonomy, services, request,
                         {'name': _default_name(source), 'source': source, 'format': 'wsc08'})
    logger.info(f"加载WSC-2008数据集 {bundle.name}: {len(bundle.services)} 个服务，"
                f"{len(bundle.taxonomy)} 个概念，{len(instances)} 个实例")
    return bundle
