from argparse import Namespace
from typing import Optional

from core.config import settings
from core.constants import STDOUT_PATH
from resource_access.repositories.input_repos import InputRepository
from resource_access.repositories.report_repos import ReportRepository


def get_bound(args: Namespace) -> int:
    return getattr(args, "bound", None) or settings.degree_bound


def get_seed(args: Namespace, *fallbacks: Optional[int]) -> int:
    """--seed, then the first given fallback, then NCF_SEED."""
    for value in (getattr(args, "seed", None),) + fallbacks:
        if value is not None:
            return value
    return settings.seed


def get_input_repository(args: Namespace) -> InputRepository:
    return InputRepository(default_bound=get_bound(args))


def get_report_repository(args: Namespace) -> ReportRepository:
    return ReportRepository(getattr(args, "json", None) or STDOUT_PATH)
