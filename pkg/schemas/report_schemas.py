import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from core.constants import REPORT_VERSION
from schemas.enums import CheckStatusEnum


class CheckResult(BaseModel):
    name: str
    status: CheckStatusEnum
    witness: Optional[str] = None
    detail: Dict[str, Any] = {}

    @classmethod
    def of(cls, name: str, ok: bool, witness: str = None, **detail) -> "CheckResult":
        return cls(
            name=name,
            status=CheckStatusEnum.passed if ok else CheckStatusEnum.failed,
            witness=None if ok else witness,
            detail=detail,
        )

    @classmethod
    def skipped(cls, name: str, reason: str) -> "CheckResult":
        return cls(name=name, status=CheckStatusEnum.skipped, witness=reason)


class Report(BaseModel):
    version: str = REPORT_VERSION
    command: str
    inputs: Dict[str, Any] = {}
    notes: List[str] = []
    tables: Dict[str, Any] = {}
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.status != CheckStatusEnum.failed for check in self.checks)

    def check(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"
