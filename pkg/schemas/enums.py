from enum import Enum


class CheckStatusEnum(str, Enum):
    passed = "passed"
    failed = "failed"
    skipped = "skipped"


class SubcommandEnum(str, Enum):
    alg = "alg"
    etale = "etale"
    microloc = "microloc"
    fm = "fm"
    oracle = "oracle"


class OracleKindEnum(str, Enum):
    filtration = "filtration"
    orthogonality = "orthogonality"
    assoc = "assoc"


class FmCheckEnum(str, Enum):
    all = "all"
    inversion = "inversion"
    multiplicativity = "multiplicativity"
    exchange = "exchange"
    algebra = "algebra"
    module = "module"
