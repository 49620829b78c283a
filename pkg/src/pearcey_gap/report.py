"""CSV and JSON emitters for command output."""

import csv
import io
import json
from collections.abc import Iterable, Sequence
from typing import Any

from . import __version__

GAP_COLUMNS = ("s", "rho", "m", "F", "est_error", "dF_ds", "dF_drho")
CHART_COLUMNS = ("x", "y", "sign_12", "sign_13", "sign_23")
TABLE_COLUMNS = ("m", "F", "abs_diff")
FIT_COLUMNS = ("s", "F", "G")


def version_line() -> str:
    return f"# pearcey-gap v{__version__}"


def _cell(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value)
    return "" if value is None else value


def to_csv(columns: Sequence[str], rows: Iterable[Sequence[Any] | dict[str, Any]]) -> str:
    """Version line, header row, then one line per row; floats keep full precision."""
    buffer = io.StringIO()
    buffer.write(version_line() + "\n")
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        record = row if isinstance(row, dict) else dict(zip(columns, row))
        writer.writerow({k: _cell(record.get(k)) for k in columns})
    return buffer.getvalue()


def to_json(payload: dict[str, Any]) -> str:
    return json.dumps({"version": __version__, **payload}, indent=2, sort_keys=True) + "\n"


def verify_payload(results) -> dict[str, Any]:
    """Verify report: overall status, failing and tolerance-limited names, every check."""
    failed = [r.name for r in results if not r.passed]
    return {
        "passed": not failed,
        "failed": failed,
        "tolerance_limited": [r.name for r in results if r.tolerance_limited],
        "checks": [r.to_dict() for r in results],
    }
