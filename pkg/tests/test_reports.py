"""
Tests for report conversion and rendering
"""
import csv
import io
import json
from fractions import Fraction as F
from pathlib import Path

import jsonschema
import mpmath
import pytest

import rtz
from rtz.reports import (
    CSV_COLUMNS,
    SCHEMA_ID,
    SCHEMA_PATH,
    load_schema,
    poly_terms,
    render,
    render_csv,
    render_json,
    sort_key,
    to_jsonable,
)
from rtz.services.certify import certify_ramanujan_type
from rtz.services.ramfam import FamilySpec, Variant
from tests.conftest import poly


def test_poly_terms_highest_first():
    terms = poly_terms(poly(F(-1, 48), 0, 3))
    assert list(terms) == ['z^2', 'z^0']
    assert terms['z^0'] == '-1/48'
    assert terms['z^2'] == '3'


def test_to_jsonable_basic_types():
    assert to_jsonable(F(4, 2)) == '2'
    assert to_jsonable(Variant.CLASSIC) == 'Classic'
    assert to_jsonable((F(1, 3), None, True)) == ['1/3', None, True]
    assert to_jsonable(poly(0, 1)) == {'degree': 1, 'terms': {'z^1': '1'}}
    assert to_jsonable(mpmath.mpf(1) / 4) == '0.25'


def test_to_jsonable_refuses_unknown():
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_certificate_is_plain_json():
    data = to_jsonable(certify_ramanujan_type(3, 2))
    text = json.dumps(data)
    assert '"family"' in text
    assert data['family'] == {'variant': 'RamanujanType', 'k': 3, 'n': 2, 'ell': None}
    assert data['criteria']['schinzel_min'] == '1/11520'


def test_sort_key_orders_families():
    reports = [
        {'family': FamilySpec(Variant.RAMANUJAN_TYPE, 2, n=3).to_dict()},
        {'family': FamilySpec(Variant.RAMANUJAN_TYPE, 1, n=5).to_dict()},
        {'family': FamilySpec(Variant.RAMANUJAN_TYPE, 2, n=2).to_dict()},
    ]
    ordered = sorted(reports, key=sort_key)
    assert [(r['family']['k'], r['family']['n']) for r in ordered] == [(1, 5), (2, 2), (2, 3)]


def test_render_json_validates(report_schema):
    report = {'kind': 'certificate', **to_jsonable(certify_ramanujan_type(2, 2)), 'passed': True}
    document = json.loads(render_json('verify', [report]))
    assert document['schema'] == SCHEMA_ID
    jsonschema.validate(document, report_schema)


def test_schema_rejects_float_rationals(report_schema):
    document = {'schema': SCHEMA_ID, 'command': 'bernoulli',
                'reports': [{'kind': 'bernoulli', 'index': 2, 'value': 0.1666}]}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(document, report_schema)


def test_csv_fixed_columns():
    report = {'kind': 'certificate', **to_jsonable(certify_ramanujan_type(2, 2))}
    rows = list(csv.DictReader(io.StringIO(render_csv([report]))))
    assert list(rows[0]) == CSV_COLUMNS
    assert rows[0]['variant'] == 'RamanujanType'
    assert rows[0]['h_at_1'] == '-1/96'
    assert rows[0]['elapsed_ms'] == ''


def test_csv_free_columns():
    reports = [{'kind': 'bernoulli', 'index': 1, 'value': '-1/2'}]
    text = render_csv(reports, ['index', 'value'])
    assert text.splitlines() == ['index,value,elapsed_ms', '1,-1/2,']


def test_table_output():
    reports = [{'kind': 'bernoulli', 'index': 12, 'value': '-691/2730'}]
    text = render('table', 'bernoulli', reports, ['index', 'value'])
    assert '-691/2730' in text
    assert 'rtz bernoulli' in text


def test_schema_ships_inside_package():
    assert SCHEMA_PATH.parent.parent == Path(rtz.__file__).resolve().parent
    assert load_schema()['$schema'].startswith('http://json-schema.org/draft-07')
