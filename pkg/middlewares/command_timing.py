import logging
import time
from argparse import Namespace
from typing import Any, Callable, Coroutine

from schemas.report_schemas import Report

logger = logging.getLogger(__name__)


async def add_process_time_log(
    args: Namespace,
    call_next: Callable[[Namespace], Coroutine[Any, Any, Report]],
) -> Report:
    start_time = time.monotonic()
    report = await call_next(args)
    process_time = time.monotonic() - start_time
    logger.info(f"{report.command} finished in {process_time:.3f}s")
    return report
