from argparse import Namespace

from api.depends import get_bound, get_seed
from core.config import settings
from engines.parser_engines import parse_group
from exceptions import DataValidationException
from schemas.enums import OracleKindEnum
from schemas.report_schemas import Report
from usecases.oracle_usecases import run_oracle_usecase


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "oracle", parents=parents, description="Brute-force oracles for comparison with the engines"
    )
    parser.add_argument("--kind", type=OracleKindEnum, choices=list(OracleKindEnum), required=True)
    parser.add_argument("--gens", type=int, default=2, help="generators of the free algebra")
    parser.add_argument("--group", default=None, help='group spec such as "Z6"')
    parser.set_defaults(handler=run_oracle)


async def run_oracle(args: Namespace) -> Report:
    group = None
    if args.kind != OracleKindEnum.filtration:
        if args.group is None:
            raise DataValidationException(f"Oracle {args.kind.value} needs --group")
        group = parse_group(args.group)
    return await run_oracle_usecase(
        args.kind, args.gens, get_bound(args), group, get_seed(args), settings.budget
    )
