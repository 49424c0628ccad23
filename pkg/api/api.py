import argparse

from api.alg import alg_commands as alg_router
from api.etale import etale_commands as etale_router
from api.fm import fm_commands as fm_router
from api.microloc import microloc_commands as microloc_router
from api.oracle import oracle_commands as oracle_router
from core.config import settings


def global_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--json", default=argparse.SUPPRESS, help="report path, - for stdout")
    options.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for generated data")
    options.add_argument("--bound", type=int, default=argparse.SUPPRESS, help="default degree bound D")
    return options


def build_parser() -> argparse.ArgumentParser:
    parents = [global_options()]
    parser = argparse.ArgumentParser(prog=settings.project_name, parents=parents)
    subparsers = parser.add_subparsers(dest="command", required=True)

    alg_router.register(subparsers, parents)
    etale_router.register(subparsers, parents)
    microloc_router.register(subparsers, parents)
    fm_router.register(subparsers, parents)
    oracle_router.register(subparsers, parents)
    return parser


api_parser = build_parser()
