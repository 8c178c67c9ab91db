"""
Tests for reports and excel_export modules
"""
import json

import pytest
from openpyxl import load_workbook

from src.services.excel_export import generate_verification_workbook
from src.services.reports import (
    build_report,
    payload_summary,
    render,
    render_markdown,
    render_result,
    to_json_text,
    write_text,
)
from src.services.verification import ClaimRecord

pytestmark = pytest.mark.unit


@pytest.fixture
def sample_records():
    """A handful of records covering the interesting statuses"""
    return [
        ClaimRecord('g6.out-order', 'Out(G6) has order 96', 'pass', {'order': 96, 'center_is_1_ab': True}),
        ClaimRecord('nil.composition-law', 'composition law of Aut(Nil)', 'discrepancy',
                    {'trials': 50, 'printed_law_passes': 3}),
        ClaimRecord('gamma(0,-1).weight-orbit-search', 'twisted-conjugacy search', 'bounded',
                    {'checks': [{'check': 'a', 'passed': True}, {'check': 'b', 'passed': False}]}, 3),
        ClaimRecord('knot.verdicts', 'doubly slice | verdicts', 'pass', {'rows': [
            {'knot': 'pi(0,-1)', 'doubly_slice': True, 'reason': 'known-doubly-slice',
             'evidence': {'invariant_factors': [3, 3]}},
            {'knot': 'Fox', 'doubly_slice': False, 'reason': 'alexander-polynomial',
             'evidence': {'description': 'Z[1/2]'}},
            {'knot': 'finite commutator subgroup', 'doubly_slice': None,
             'reason': 'finite-commutator-cited', 'evidence': {}},
        ]}),
    ]


@pytest.fixture
def sample_report(sample_records, small_config):
    """Report document for the sample records"""
    return build_report(sample_records, small_config)


class TestBuildReport:
    """Test the report document"""

    def test_keys(self, sample_report):
        """The document has the schema keys and counts"""
        assert set(sample_report) == {'schema_version', 'config', 'summary', 'exit_code', 'claims'}
        assert sample_report['schema_version'] == '1'
        assert sample_report['exit_code'] == 0
        assert sample_report['summary']['discrepancy'] == 1
        assert sample_report['summary']['bounded'] == 1
        assert sample_report['claims'][2]['radius'] == 3

    def test_json_is_stable(self, sample_report):
        """Sorted keys and a trailing newline"""
        text = to_json_text(sample_report)
        assert text.endswith('}\n')
        assert json.loads(text) == sample_report
        assert text.index('"claims"') < text.index('"summary"')
        assert render(sample_report, 'json') == text


class TestMarkdown:
    """Test the markdown rendering"""

    def test_sections(self, sample_report):
        """Configuration, summary, claims and details for flagged claims"""
        text = render_markdown(sample_report)
        assert text.startswith('# solvknot verification report')
        for heading in ('## Configuration', '## Summary', '## Claims', '## Details'):
            assert heading in text
        assert '| id | location | status | evidence |' in text
        assert '### nil.composition-law (discrepancy)' in text
        assert render(sample_report, 'md') == text

    def test_bounded_radius_and_escaping(self, sample_report):
        """bounded shows its radius, pipes in text are escaped"""
        text = render_markdown(sample_report)
        assert 'bounded(3)' in text
        assert 'doubly slice \\| verdicts' in text

    def test_no_details_without_flags(self, small_config):
        """Clean runs have no Details section"""
        report = build_report([ClaimRecord('a.b', 'here', 'pass')], small_config)
        assert '## Details' not in render_markdown(report)

    def test_payload_summary(self):
        """Scalars and check counts, truncated to the width"""
        summary = payload_summary({'order': 96, 'checks': [{'passed': True}, {'passed': False}],
                                   'rows': [1, 2]})
        assert summary == 'checks=1/2, order=96'
        long = payload_summary({'text': 'x' * 200}, width=20)
        assert len(long) == 20
        assert long.endswith('...')

    def test_render_result(self):
        """Query results render as a titled list"""
        text = render_result('Order', {'expression': 'j', 'order': '6'}, 'md')
        assert text.startswith('## Order')
        assert '- order: 6' in text
        assert json.loads(render_result('Order', {'order': '6'}, 'json')) == {'order': '6'}


class TestFiles:
    """Test writing reports and workbooks"""

    def test_write_text_creates_directories(self, tmp_path):
        """Missing parent directories are created"""
        path = write_text(str(tmp_path / 'out' / 'verification.md'), 'hello\n')
        with open(path, encoding='utf-8') as handle:
            assert handle.read() == 'hello\n'

    def test_workbook(self, tmp_path, sample_report):
        """Claims and Verdicts sheets with styled headers"""
        path = generate_verification_workbook(sample_report, str(tmp_path / 'verification.xlsx'))
        wb = load_workbook(path)
        assert wb.sheetnames == ['Claims', 'Verdicts']
        claims = wb['Claims']
        assert claims['A1'].value == 'solvknot verification report'
        assert claims['A4'].value == 'Claim'
        assert claims['A4'].font.bold
        assert claims['A5'].value == 'g6.out-order'
        assert claims['C7'].value == 'bounded(3)'
        verdicts = wb['Verdicts']
        assert verdicts['A1'].value == 'Knot group'
        assert verdicts['D2'].value == 'Z/3 + Z/3'
        assert verdicts['B4'].value == 'unknown'
