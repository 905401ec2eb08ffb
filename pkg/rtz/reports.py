"""
Report Rendering

Converts service results into plain JSON-ready structures and renders a
report stream as JSON, CSV or a rich table. Rationals always travel as
"p/q" strings (integers as "p"); no float ever reaches machine output.
"""

import csv
import dataclasses
import io
import json
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional

import mpmath
from rich.console import Console
from rich.table import Table

from rtz.services.polycore import DensePoly

SCHEMA_ID = 'rtz.report.v1'
SCHEMA_PATH = Path(__file__).resolve().parent / 'schemas' / 'report.v1.json'

CSV_COLUMNS = [
    'variant', 'k', 'n', 'ell', 'verdict', 'origin_multiplicity',
    'circle_count', 'h_at_1', 'schinzel_min', 'elapsed_ms',
]

MPF_DIGITS = 25


# ============================================================================
# CONVERSION
# ============================================================================

def poly_terms(p: DensePoly, var: str = 'z') -> Dict[str, str]:
    """Nonzero coefficients keyed 'z^i', highest degree first"""
    return {
        f'{var}^{i}': str(c)
        for i, c in reversed(list(enumerate(p.coeffs)))
        if c
    }


def to_jsonable(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, DensePoly):
        return {'degree': value.degree, 'terms': poly_terms(value)}
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(value, MPF_DIGITS)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def sort_key(report: dict):
    family = report.get('family') or {}
    return (
        family.get('k') or report.get('k') or 0,
        family.get('n') or 0,
        family.get('ell') or 0,
        report.get('m') or 0,
        report.get('index') or 0,
        report.get('alpha') or '',
    )


def csv_row(report: dict) -> Dict[str, object]:
    family = report.get('family') or {}
    criteria = report.get('criteria') or {}
    return {
        'variant': family.get('variant', report.get('kind')),
        'k': family.get('k', report.get('k')),
        'n': family.get('n'),
        'ell': family.get('ell'),
        'verdict': report.get('verdict'),
        'origin_multiplicity': report.get('origin_multiplicity'),
        'circle_count': report.get('circle_count'),
        'h_at_1': report.get('h_at_1'),
        'schinzel_min': criteria.get('schinzel_min', report.get('schinzel_min')),
        'elapsed_ms': report.get('elapsed_ms'),
    }


# ============================================================================
# RENDERERS
# ============================================================================

def render_json(command: str, reports: List[dict]) -> str:
    document = {'schema': SCHEMA_ID, 'command': command, 'reports': reports}
    return json.dumps(document, indent=2) + '\n'


def render_csv(reports: Iterable[dict], columns: Optional[List[str]] = None) -> str:
    """Family reports use the fixed CSV_COLUMNS; other kinds their own columns"""
    reports = list(reports)
    fixed = columns is None or all(r.get('family') for r in reports)
    fieldnames = CSV_COLUMNS if fixed else list(columns) + ['elapsed_ms']
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator='\n')
    writer.writeheader()
    for report in reports:
        row = csv_row(report) if fixed else {
            c: None if report.get(c) is None else _cell(report.get(c)) for c in fieldnames
        }
        writer.writerow({k: '' if v is None else v for k, v in row.items()})
    return buffer.getvalue()


def _cell(value) -> str:
    if value is None:
        return '-'
    if isinstance(value, dict):
        return ', '.join(f'{k}: {_cell(v)}' for k, v in value.items())
    if isinstance(value, list):
        return ', '.join(_cell(v) for v in value)
    return str(value)


def render_table(command: str, reports: List[dict], columns: List[str], width: int = 160) -> str:
    table = Table(title=f'rtz {command}', show_lines=False)
    for column in columns:
        table.add_column(column)
    for report in reports:
        flat = dict(csv_row(report))
        flat.update(report)
        table.add_row(*(_cell(flat.get(c)) for c in columns))
    buffer = io.StringIO()
    Console(file=buffer, width=width, force_terminal=False, color_system=None).print(table)
    return buffer.getvalue()


def render(fmt: str, command: str, reports: List[dict], columns: List[str]) -> str:
    if fmt == 'json':
        return render_json(command, reports)
    if fmt == 'csv':
        return render_csv(reports, columns)
    return render_table(command, reports, columns)


def load_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text())
