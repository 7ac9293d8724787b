# src/utils/reporting.py
import logging
import sys
from pathlib import Path
from typing import Dict, Optional, TextIO, Union

try:
    from .. import config
except ImportError:
    sys.path.append(str(Path(__file__).resolve().parent.parent.parent))
    import config

from .codec import dumps

logger = logging.getLogger(__name__)


class ReportWriter:
    """
    Writes JSON reports to standard output or to files under the reports
    directory. Output is deterministic: sorted keys, no timestamps.
    """

    def __init__(self, reports_dir: Optional[Union[str, Path]] = None, stream: Optional[TextIO] = None):
        """
        Args:
            reports_dir: Base directory for relative ``--out`` paths.
                         Defaults to REPORTS_DIR from config.py.
            stream: Where reports go when no output file is given.
        """
        self.reports_dir = Path(reports_dir) if reports_dir is not None else config.REPORTS_DIR
        self.stream = stream

    def resolve(self, out: Union[str, Path]) -> Path:
        path = Path(out)
        if path.is_absolute() or path.parent != Path("."):
            return path
        return self.reports_dir / path

    def write(self, report: Dict, out: Optional[Union[str, Path]] = None) -> Optional[Path]:
        """
        Write one report.

        Args:
            report: JSON-ready dict.
            out: Output file; standard output when omitted.

        Returns:
            The path written, or None for standard output.
        """
        text = dumps(report) + "\n"
        if out is None:
            (self.stream or sys.stdout).write(text)
            return None
        path = self.resolve(out)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        except OSError as e:
            logger.error(f"Failed to write report {path}: {e}", exc_info=True)
            raise
        logger.info(f"Report written to {path}")
        return path


def summarize(report: Dict) -> str:
    """One-line summary for the log."""
    kind = report.get("kind", "report")
    if "error" in report:
        return f"{kind}: {report.get('error_type', 'error')}: {report['error']}"
    if "passed" in report:
        failures = report.get("failures")
        extra = f" ({failures} failures)" if failures else ""
        return f"{kind}: {'passed' if report['passed'] else 'FAILED'}{extra}"
    return f"{kind}: ok"
