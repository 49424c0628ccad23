from argparse import Namespace

from api.depends import get_bound, get_input_repository
from engines.diagram_engines import DiagramEngine
from schemas.report_schemas import Report
from usecases.ncalg_usecases import analyze_presentation_usecase, pbw_usecase


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("alg", help="truncated algebras and NC filtrations")
    commands = parser.add_subparsers(dest="action", required=True)

    analyze = commands.add_parser(
        "analyze", parents=parents, description="Basis, filtration dims and filtration checks of a presentation"
    )
    analyze.add_argument("--pres", required=True, help="presentation file")
    analyze.set_defaults(handler=analyze_presentation)

    pbw = commands.add_parser(
        "pbw", parents=parents, description="Graded dims of an enveloping algebra against the symmetric algebra"
    )
    pbw.add_argument("--algebroid", required=True, help="Lie algebroid JSON file")
    pbw.set_defaults(handler=pbw_comparison)


async def analyze_presentation(args: Namespace) -> Report:
    pres = await get_input_repository(args).get_presentation(args.pres)
    return await analyze_presentation_usecase(pres)


async def pbw_comparison(args: Namespace) -> Report:
    algebroid_in = await get_input_repository(args).get_algebroid(args.algebroid)
    algebroid = DiagramEngine.build_algebroid(algebroid_in, get_bound(args))
    return await pbw_usecase(algebroid, algebroid.degree_bound or get_bound(args))
