from argparse import Namespace

from api.depends import get_seed
from core.config import settings
from engines.parser_engines import parse_algebra_spec, parse_group
from schemas.enums import FmCheckEnum
from schemas.report_schemas import Report
from usecases.fm_usecases import fm_usecase


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "fm", parents=parents, description="Kernel calculus identities on a finite abelian group"
    )
    parser.add_argument("--group", required=True, help='group spec such as "Z4xZ2"')
    parser.add_argument("--algebra", default=None, help='generators such as "shift=(1,0);twist=(0,1)"')
    parser.add_argument(
        "--check", type=FmCheckEnum, choices=list(FmCheckEnum), default=FmCheckEnum.all, help="identities to verify"
    )
    parser.add_argument("--samples", type=int, default=5, help="random kernels and modules per identity")
    parser.set_defaults(handler=kernel_calculus)


async def kernel_calculus(args: Namespace) -> Report:
    group = parse_group(args.group)
    generators = parse_algebra_spec(args.algebra, group) if args.algebra is not None else None
    return await fm_usecase(
        group,
        generators,
        args.check,
        args.samples,
        get_seed(args),
        settings.closure_bound,
        settings.budget,
    )
