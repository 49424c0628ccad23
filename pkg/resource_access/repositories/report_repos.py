import logging
import sys
from pathlib import Path

from core.constants import STDOUT_PATH
from exceptions import DataValidationException
from schemas.report_schemas import Report

logger = logging.getLogger(__name__)


class ReportRepository:

    def __init__(self, path: str = STDOUT_PATH):
        self._path = path

    async def save_report(self, report: Report) -> None:
        text = report.to_json()
        if self._path == STDOUT_PATH:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        try:
            Path(self._path).write_text(text, encoding="utf-8")
        except OSError as error:
            logger.error(f"Error while writing report to {self._path}. Details: {error}")
            raise DataValidationException(f"Cannot write report to {self._path}: {error.strerror}")
        logger.info(f"Report for {report.command} written to {self._path}")
