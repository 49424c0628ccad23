import asyncio
import json
import logging
import sys
from argparse import Namespace
from logging.config import dictConfig
from typing import List, Optional

from api.api import api_parser
from api.depends import get_report_repository
from core.constants import EXIT_CHECK_FAILURE, EXIT_OK
from core.config import logging_conf
from exceptions import NcFourierException
from middlewares import add_process_time_log
from schemas.report_schemas import Report

logger = logging.getLogger(__name__)


async def dispatch(args: Namespace) -> Report:
    report = await add_process_time_log(args, args.handler)
    await get_report_repository(args).save_report(report)
    return report


def main(argv: Optional[List[str]] = None) -> int:
    args = api_parser.parse_args(argv)
    try:
        report = asyncio.run(dispatch(args))
    except NcFourierException as exc:
        logger.error(f"{exc.error_code}: {exc.message}")
        sys.stderr.write(json.dumps({"message": exc.message, "error_code": exc.error_code}) + "\n")
        return exc.exit_code
    return EXIT_OK if report.passed else EXIT_CHECK_FAILURE


def run() -> None:
    dictConfig(logging_conf)
    sys.exit(main())


if __name__ == "__main__":
    run()
