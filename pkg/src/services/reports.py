"""
Reporting service
Renders verification runs and query results as JSON or markdown
"""
import json
import os
from typing import Sequence

from src.config import Config
from src.services.verification import ClaimRecord, RunConfig, STATUSES, exit_code, status_counts

SUMMARY_WIDTH = 120


def build_report(records: Sequence[ClaimRecord], config: RunConfig) -> dict:
    """
    Assemble the report document for a verification run.

    Args:
        records: claim records in suite order
        config: the resolved run configuration

    Returns:
        Dictionary containing:
        - schema_version: report schema version
        - config: the resolved configuration
        - summary: number of claims per status
        - exit_code: 0 when no claim failed, 1 otherwise
        - claims: one entry per claim, in suite order
    """
    return {
        'schema_version': Config.REPORT_SCHEMA_VERSION,
        'config': config.to_json(),
        'summary': status_counts(records),
        'exit_code': exit_code(records),
        'claims': [r.to_json() for r in records],
    }


def to_json_text(data) -> str:
    """Stable JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, default=str) + '\n'


def payload_summary(payload: dict, width: int = SUMMARY_WIDTH) -> str:
    """One line of the scalar payload fields, for tables."""
    parts = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (bool, int, str)) or value is None:
            parts.append(f'{key}={value}')
        elif key == 'checks':
            passed = sum(1 for c in value if c.get('passed'))
            parts.append(f'checks={passed}/{len(value)}')
    text = ', '.join(parts)
    return text if len(text) <= width else text[:width - 3] + '...'


def _escape(text: str) -> str:
    return str(text).replace('|', '\\|')


def render_markdown(report: dict) -> str:
    lines = ['# solvknot verification report', '']
    lines.append(f"Schema version {report['schema_version']}; exit code {report['exit_code']}.")
    lines.append('')
    lines.append('## Configuration')
    lines.append('')
    for key in sorted(report['config']):
        lines.append(f"- {key}: {json.dumps(report['config'][key])}")
    lines.append('')
    lines.append('## Summary')
    lines.append('')
    lines.append('| status | claims |')
    lines.append('| --- | --- |')
    for status in STATUSES:
        lines.append(f"| {status} | {report['summary'].get(status, 0)} |")
    lines.append('')
    lines.append('## Claims')
    lines.append('')
    lines.append('| id | location | status | evidence |')
    lines.append('| --- | --- | --- | --- |')
    for claim in report['claims']:
        status = claim['status']
        if 'radius' in claim:
            status = f"{status}({claim['radius']})"
        lines.append(f"| {claim['id']} | {_escape(claim['location'])} | {status} | "
                     f"{_escape(payload_summary(claim['payload']))} |")

    flagged = [c for c in report['claims'] if c['status'] in ('fail', 'discrepancy')]
    if flagged:
        lines.append('')
        lines.append('## Details')
        for claim in flagged:
            lines.append('')
            lines.append(f"### {claim['id']} ({claim['status']})")
            lines.append('')
            lines.append('```json')
            lines.append(to_json_text(claim['payload']).rstrip('\n'))
            lines.append('```')
    return '\n'.join(lines) + '\n'


def render(report: dict, fmt: str) -> str:
    return render_markdown(report) if fmt == 'md' else to_json_text(report)


def render_result(title: str, data, fmt: str) -> str:
    """Query command output: the JSON document, or a titled markdown block."""
    if fmt != 'md':
        return to_json_text(data)
    lines = [f'## {title}', '']
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            shown = value if isinstance(value, (str, int, bool)) or value is None else json.dumps(
                value, sort_keys=True, default=str)
            lines.append(f'- {key}: {shown}')
    else:
        lines.append('```json')
        lines.append(to_json_text(data).rstrip('\n'))
        lines.append('```')
    return '\n'.join(lines) + '\n'


def default_report_path(fmt: str) -> str:
    return os.path.join(Config.REPORT_DIR, f'verification.{fmt}')


def write_text(path: str, text: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(text)
    return path
