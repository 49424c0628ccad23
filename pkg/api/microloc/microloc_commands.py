from argparse import Namespace
from typing import Optional, Sequence

from api.depends import get_input_repository
from core.config import settings
from engines.ncpoly_engines import NcPoly
from engines.parser_engines import parse_poly
from schemas.report_schemas import Report
from usecases.microloc_usecases import grn_usecase


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("microloc", help="microlocalization of filtered algebras")
    commands = parser.add_subparsers(dest="action", required=True)

    grn = commands.add_parser(
        "grn", parents=parents, description="gr_(n) of a filtered algebra and its localization at a symbol"
    )
    grn.add_argument("--pres", required=True, help="presentation file; generator weights give the filtration")
    grn.add_argument("--n", type=int, default=1, help="level of gr_(n)")
    grn.add_argument("--localize", default=None, help="degree-1 element to invert, as f=<poly> or <poly>")
    grn.add_argument("--lift", default=None, help="second lift of the same symbol")
    grn.add_argument("--order", type=int, default=None, help="truncation order of the t-tower")
    grn.set_defaults(handler=micro_graded)


def localizing_poly(text: Optional[str], names: Sequence[str]) -> Optional[NcPoly]:
    if text is None:
        return None
    _, sep, rest = text.partition("=")
    return parse_poly(rest if sep else text, names)


async def micro_graded(args: Namespace) -> Report:
    pres = await get_input_repository(args).get_presentation(args.pres)
    return await grn_usecase(
        pres,
        args.n,
        localize=localizing_poly(args.localize, pres.names),
        lift=localizing_poly(args.lift, pres.names),
        order=args.order if args.order is not None else settings.truncation_order,
    )
