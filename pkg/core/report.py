"""Sweep report records and their CSV / JSON serialization."""

import csv
import io
import json
import math
import os
import logging
import tempfile
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from core.errors import UsageError

logger = logging.getLogger(__name__)

CSV_COLUMNS = ('manifold', 'n', 'd', 't', 'delta', 'lower', 'reference', 'upper',
               'margin_lower', 'margin_upper', 'pass')
FORMATS = ('csv', 'json')

VERDICT_PASS = 'pass'
VERDICT_FAIL = 'fail'
VERDICT_INFORMATIVE = 'informative'


class SweepRecord(NamedTuple):
    """One grid point: bounds (or estimate sides) around a reference value."""
    manifold: str
    n: int
    d: float
    t: float
    delta: Optional[float]
    lower: Optional[float]
    reference: float
    upper: Optional[float]
    margin_lower: Optional[float]
    margin_upper: Optional[float]
    passed: bool

    def as_row(self) -> Dict[str, Any]:
        row = self._asdict()
        row['pass'] = row.pop('passed')
        return row


class SweepReport(NamedTuple):
    suite: str
    manifold: str
    grid: Dict[str, Any]
    records: Tuple[SweepRecord, ...]
    skipped: int = 0
    informative: bool = False
    rel_tol: float = 1e-9
    notes: Tuple[str, ...] = ()
    extra_failures: int = 0

    @property
    def worst(self) -> Dict[str, float]:
        """Smallest margin on each side, or +inf for an empty report."""
        return {
            'margin_lower': min((r.margin_lower for r in self.records if r.margin_lower is not None),
                                default=math.inf),
            'margin_upper': min((r.margin_upper for r in self.records if r.margin_upper is not None),
                                default=math.inf),
        }

    @property
    def violations(self) -> int:
        return sum(1 for r in self.records if not r.passed) + self.extra_failures

    @property
    def verdict(self) -> str:
        if self.informative:
            return VERDICT_INFORMATIVE
        return VERDICT_PASS if self.violations == 0 else VERDICT_FAIL

    def as_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'manifold': self.manifold,
            'grid': self.grid,
            'records': [{k: _json_number(v) if isinstance(v, float) else v for k, v in r.as_row().items()}
                        for r in self.records],
            'worst': {k: _json_number(v) for k, v in self.worst.items()},
            'verdict': self.verdict,
            'skipped': self.skipped,
            'notes': list(self.notes),
        }


def verdict_passes(margin_lower: Optional[float], margin_upper: Optional[float],
                   rel_tol: float) -> bool:
    """A missing margin (not applicable) never fails a record."""
    return all(m is None or m >= -rel_tol for m in (margin_lower, margin_upper))


def _json_number(value: Optional[float]):
    if value is None or math.isnan(value):
        return None
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return value


def _csv_number(value: Optional[float]) -> str:
    if value is None:
        return ''
    return repr(float(value))


def render_csv(reports: List[SweepReport]) -> str:
    """All records of all reports under the fixed CSV header."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        for r in report.records:
            writer.writerow([
                r.manifold, r.n, _csv_number(r.d), _csv_number(r.t), _csv_number(r.delta),
                _csv_number(r.lower), _csv_number(r.reference), _csv_number(r.upper),
                _csv_number(r.margin_lower), _csv_number(r.margin_upper),
                'true' if r.passed else 'false',
            ])
    return buffer.getvalue()


def render_json(reports: List[SweepReport]) -> str:
    payload = [report.as_dict() for report in reports]
    if len(payload) == 1:
        payload = payload[0]
    return json.dumps(payload, indent=2, sort_keys=False, default=_json_number) + '\n'


def render(reports: List[SweepReport], fmt: str) -> str:
    if fmt not in FORMATS:
        raise UsageError(f"Unknown output format '{fmt}'; choose from {', '.join(FORMATS)}")
    return render_csv(reports) if fmt == 'csv' else render_json(reports)


def write_atomic(path: str, text: str):
    """Write text to path through a temporary file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(prefix='.heatbound-', dir=directory)
    try:
        with os.fdopen(fd, 'w', newline='') as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    logger.info(f"Wrote {len(text)} bytes to {path}")
