"""
This module contains utilities for formatting and printing verification reports.
"""

from pathlib import Path
from typing import Iterable, List, Sequence

from pydantic import TypeAdapter

from models.data_models import VerificationReport

_REPORT_LIST = TypeAdapter(List[VerificationReport])


def format_float(value: float) -> str:
    """Scientific notation with 17 significant digits."""
    return f"{value:.16e}"


def format_complex(value: complex) -> str:
    """
    Format a complex number as "re+imj" with 17 significant digits per part.

    Args:
        value: The number to format

    Returns:
        The formatted string
    """
    value = complex(value)
    return f"{value.real:.16e}{value.imag:+.16e}j"


def reports_to_json(reports: Sequence[VerificationReport]) -> str:
    """
    Serialize reports as a JSON array.

    Args:
        reports: The reports, in the order they should appear

    Returns:
        The JSON text, with a trailing newline
    """
    return _REPORT_LIST.dump_json(list(reports), indent=2).decode("utf-8") + "\n"


def reports_to_text(reports: Iterable[VerificationReport]) -> str:
    """
    Render reports as the human readable "- check ..." listing.

    Args:
        reports: The reports to render

    Returns:
        One line per report plus a summary line
    """
    lines = []
    total = 0
    failed = 0
    for report in reports:
        total += 1
        failed += report.status == "fail"
        residual = "" if report.max_residual is None else f" (max residual {report.max_residual:.3e})"
        timing = "" if report.elapsed_ms is None else f" in {report.elapsed_ms:.1f} ms"
        lines.append(f"- {report.check} [{report.target}]: {report.status.upper()}{residual}{timing}")
        reason = report.details.get("reason")
        if reason:
            lines.append(f"  - {reason}")
    lines.append(f"\n- {total - failed} of {total} checks passed")
    return "\n".join(lines) + "\n"


def write_report(path: str, text: str) -> str:
    """
    Write a rendered report to disk.

    Args:
        path: Destination file
        text: Rendered report

    Returns:
        The path written
    """
    Path(path).write_text(text, encoding="utf-8")
    return path
