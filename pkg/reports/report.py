"""
Report documents: plain JSON with sorted keys, no timestamps, so that equal
inputs give byte-identical output.
"""
import json
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from algebra.function_table import FunctionTable
from algebra.partition import Partition
from algebra.relations import PartialFunction, RelationSet
from utils.config import Caps

TOOL = 'nildual'
VERSION = '0.1.0'
SCHEMA_PATH = Path(__file__).with_name('report_schema.json')


def to_jsonable(value: Any) -> Any:
    """Convert results to JSON values; sets become sorted lists."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(v) for v in value)
    if isinstance(value, Partition):
        return value.blocks()
    if isinstance(value, FunctionTable):
        return {'arity': value.arity, 'values': value.to_list()}
    if isinstance(value, RelationSet):
        return [list(t) for t in value]
    if isinstance(value, PartialFunction):
        return {'domain': [list(t) for t in value.domain], 'values': value.values.tolist()}
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def build_report(subcommand: str, inputs: dict, caps: Caps, results: Optional[dict], verdict: str,
                 status: int) -> dict:
    return {
        'tool': TOOL,
        'version': VERSION,
        'subcommand': subcommand,
        'inputs': to_jsonable(inputs),
        'caps': caps.as_dict(),
        'results': to_jsonable(results or {}),
        'verdict': verdict,
        'exit_status': status,
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def write_report(report: dict, path: Union[str, Path]) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dump_report(report))


def load_schema() -> dict:
    with open(SCHEMA_PATH, encoding='utf-8') as f:
        return json.load(f)
