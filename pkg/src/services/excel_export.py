"""
Excel export functionality - writes a verification run as a two-sheet workbook
(Claims and Verdicts)
"""
import os

from openpyxl import Workbook
from openpyxl.styles import Font, PatternFill

from src.services.reports import payload_summary

HEADER_FILL = PatternFill(start_color='D9E1F2', end_color='D9E1F2', fill_type='solid')
STATUS_FILLS = {
    'fail': PatternFill(start_color='F8CBAD', end_color='F8CBAD', fill_type='solid'),
    'discrepancy': PatternFill(start_color='FFE699', end_color='FFE699', fill_type='solid'),
}


def generate_verification_workbook(report: dict, output_path: str) -> str:
    """
    Write the Claims and Verdicts sheets for a report built by build_report.

    Returns:
        The path the workbook was saved to
    """
    wb = Workbook()
    ws = wb.active
    ws.title = 'Claims'

    ws['A1'] = 'solvknot verification report'
    ws['A1'].font = Font(bold=True, size=14)
    ws['A2'] = (f"schema {report['schema_version']}, exit code {report['exit_code']}, "
                f"gamma params {report['config']['gamma_params']}")
    ws['A2'].font = Font(italic=True, size=9)

    row = write_claims_table(ws, 4, report['claims'])
    row += 2
    write_status_summary(ws, row, report['summary'])

    verdicts = wb.create_sheet('Verdicts')
    write_verdict_table(verdicts, 1, _verdict_rows(report))

    directory = os.path.dirname(output_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    wb.save(output_path)
    return output_path


def _verdict_rows(report: dict) -> list[dict]:
    for claim in report['claims']:
        if claim['id'] == 'knot.verdicts':
            return claim['payload']['rows']
    return []


def _header(ws, row: int, headers: list[str]):
    for col, header in enumerate(headers, start=1):
        cell = ws.cell(row=row, column=col)
        cell.value = header
        cell.font = Font(bold=True)
        cell.fill = HEADER_FILL


def write_claims_table(ws, start_row: int, claims: list[dict]) -> int:
    """One row per claim: id, location, status, payload summary"""
    row = start_row
    _header(ws, row, ['Claim', 'Location', 'Status', 'Evidence'])
    row += 1

    for claim in claims:
        status = claim['status']
        if 'radius' in claim:
            status = f"{status}({claim['radius']})"
        ws.cell(row=row, column=1).value = claim['id']
        ws.cell(row=row, column=2).value = claim['location']
        ws.cell(row=row, column=3).value = status
        ws.cell(row=row, column=4).value = payload_summary(claim['payload'])
        fill = STATUS_FILLS.get(claim['status'])
        if fill is not None:
            ws.cell(row=row, column=3).fill = fill
        row += 1

    ws.column_dimensions['A'].width = 40
    ws.column_dimensions['B'].width = 60
    ws.column_dimensions['C'].width = 14
    ws.column_dimensions['D'].width = 80
    return row


def write_status_summary(ws, start_row: int, summary: dict) -> int:
    row = start_row
    ws.cell(row=row, column=1).value = 'Status'
    ws.cell(row=row, column=1).font = Font(bold=True)
    ws.cell(row=row, column=2).value = 'Claims'
    ws.cell(row=row, column=2).font = Font(bold=True)
    row += 1
    for status, count in summary.items():
        ws.cell(row=row, column=1).value = status
        ws.cell(row=row, column=2).value = count
        row += 1
    return row


def write_verdict_table(ws, start_row: int, rows: list[dict]) -> int:
    """One row per knot group descriptor"""
    row = start_row
    _header(ws, row, ['Knot group', 'Doubly slice', 'Reason', 'Commutator quotient'])
    row += 1

    for verdict in rows:
        evidence = verdict.get('evidence') or {}
        if 'invariant_factors' in evidence:
            quotient = ' + '.join(f'Z/{d}' for d in evidence['invariant_factors'])
        else:
            quotient = evidence.get('description', '')
        slice_value = verdict['doubly_slice']
        ws.cell(row=row, column=1).value = verdict['knot']
        ws.cell(row=row, column=2).value = 'unknown' if slice_value is None else ('yes' if slice_value else 'no')
        ws.cell(row=row, column=3).value = verdict['reason']
        ws.cell(row=row, column=4).value = quotient
        row += 1

    ws.column_dimensions['A'].width = 28
    ws.column_dimensions['B'].width = 14
    ws.column_dimensions['C'].width = 28
    ws.column_dimensions['D'].width = 44
    return row
