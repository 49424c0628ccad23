from argparse import Namespace

from api.depends import get_bound, get_input_repository, get_seed
from core.config import settings
from engines.diagram_engines import DiagramEngine
from engines.parser_engines import parse_presentation
from schemas.report_schemas import Report
from usecases.etale_usecases import check_family_usecase, closure_usecase, lift_diagram_usecase


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("etale", help="central extensions and étale lifting")
    commands = parser.add_subparsers(dest="action", required=True)

    lift = commands.add_parser("lift", parents=parents, description="Solve the lifting problem of one diagram")
    lift.add_argument("--diagram", required=True, help="diagram JSON file")
    lift.set_defaults(handler=lift_diagram)

    check = commands.add_parser(
        "check", parents=parents, description="Check formal étaleness over a generated family of diagrams"
    )
    check.add_argument("--alpha", required=True, help="morphism JSON file")
    check.add_argument("--family", required=True, help="family JSON file")
    check.add_argument("--count", type=int, default=None, help="number of generated diagrams")
    check.set_defaults(handler=check_family)

    closure = commands.add_parser(
        "closure", parents=parents, description="Check that A' lies in N_d for a surjective diagram"
    )
    closure.add_argument("--diagram", required=True, help="diagram JSON file")
    closure.add_argument("--d", type=int, default=1, help="level of N_d")
    closure.set_defaults(handler=closure_check)


async def lift_diagram(args: Namespace) -> Report:
    diagram_in = await get_input_repository(args).get_diagram(args.diagram)
    diagram = DiagramEngine.build_diagram(diagram_in, get_bound(args))
    return await lift_diagram_usecase(diagram)


async def check_family(args: Namespace) -> Report:
    repository = get_input_repository(args)
    alpha_in = await repository.get_alpha(args.alpha)
    family_in = await repository.get_family(args.family)
    bound = get_bound(args)
    alpha, coefficients = DiagramEngine.build_alpha(alpha_in, bound)
    factors = DiagramEngine.build_factors(family_in, parse_presentation(alpha_in.R, bound), bound)
    count = args.count or family_in.count or settings.family_size
    return await check_family_usecase(
        alpha, coefficients, factors, count, get_seed(args, family_in.seed), family_in.d
    )


async def closure_check(args: Namespace) -> Report:
    diagram_in = await get_input_repository(args).get_diagram(args.diagram)
    diagram = DiagramEngine.build_diagram(diagram_in, get_bound(args))
    return await closure_usecase(diagram, args.d)
