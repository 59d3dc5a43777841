"""Report handling and serialization for certification runs."""

import json
import os
from typing import Any, Dict, List, Optional

from loguru import logger

from cohcert.utils.helpers import to_serializable


class ReportManager:
    """Manages saving and loading of run reports."""

    def __init__(self, output_dir: str = "results"):
        """Initialize the report manager.

        Args:
            output_dir: Directory to save reports in.
        """
        self.output_dir = output_dir

    def dumps(self, report: Dict[str, Any]) -> str:
        """Render a report as pretty JSON with a trailing newline."""
        return json.dumps(to_serializable(report), indent=2, ensure_ascii=False) + "\n"

    def save(self, report: Dict[str, Any], filename: Optional[str] = None) -> str:
        """Save a report to a JSON file.

        Args:
            report: Report mapping; dataclasses and arrays inside are converted.
            filename: Optional filename. Defaults to ``report_<task>.json``.

        Returns:
            Path to the saved file.
        """
        if filename is None:
            filename = f"report_{report.get('task', 'run')}.json"
        output_path = filename if os.path.isabs(filename) else os.path.join(self.output_dir, filename)
        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)

        with open(output_path, "w", encoding="utf-8") as f:
            f.write(self.dumps(report))

        logger.info(f"Report saved to {output_path}")
        return output_path

    def load(self, filename: str) -> Dict:
        """Load a report from a JSON file.

        Args:
            filename: Name of the file to load.

        Returns:
            Loaded report dictionary.
        """
        filepath = os.path.join(self.output_dir, filename)
        with open(filepath, "r", encoding="utf-8") as f:
            return json.load(f)

    def list_reports(self) -> List[str]:
        """List all report files in the output directory.

        Returns:
            List of report filenames.
        """
        if not os.path.exists(self.output_dir):
            return []

        return sorted(
            f
            for f in os.listdir(self.output_dir)
            if f.startswith("report_") and f.endswith(".json")
        )
