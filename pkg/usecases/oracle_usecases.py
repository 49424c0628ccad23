import asyncio
import logging

from engines.algebra_engines import build_truncated
from engines.filtration_engines import nc_filtration
from engines.oracle_engines import associativity_oracle, filtration_oracle, orthogonality_oracle
from schemas.enums import OracleKindEnum
from schemas.group_schemas import FiniteAbGroup
from schemas.presentation_schemas import Generator, Presentation
from schemas.report_schemas import CheckResult, Report

logger = logging.getLogger(__name__)

GENERATOR_NAMES = "xyzwuv"


def free_presentation(generators: int, bound: int) -> Presentation:
    names = GENERATOR_NAMES if generators <= len(GENERATOR_NAMES) else None
    return Presentation(
        name=f"Free{generators}",
        generators=tuple(
            Generator(name=names[i] if names else f"g{i}") for i in range(generators)
        ),
        degree_bound=bound,
    )


def _engine_filtration_dims(generators: int, bound: int) -> list:
    algebra = build_truncated(free_presentation(generators, bound))
    return [algebra.dim] + [nc_filtration(algebra, d).rank for d in range(1, bound + 1)]


async def filtration_oracle_usecase(generators: int, bound: int, budget: int) -> Report:
    logger.info(f"Filtration oracle on {generators} generators at bound {bound}")
    oracle, engine = await asyncio.gather(
        asyncio.to_thread(filtration_oracle, generators, bound, bound, budget),
        asyncio.to_thread(_engine_filtration_dims, generators, bound),
    )
    mismatch = next((d for d, (a, b) in enumerate(zip(oracle["dims"], engine)) if a != b), None)
    return Report(
        command="oracle filtration",
        inputs={"generators": generators, "bound": bound},
        tables={"word_space": oracle["word_space"], "oracle_dims": oracle["dims"], "engine_dims": engine},
        checks=[CheckResult.of("filtration_dims_agree", mismatch is None, f"d={mismatch}")],
    )


async def orthogonality_oracle_usecase(group: FiniteAbGroup, budget: int) -> Report:
    logger.info(f"Orthogonality oracle on {group.label}")
    result = await asyncio.to_thread(orthogonality_oracle, group, budget)
    failures = result["failures"]
    return Report(
        command="oracle orthogonality",
        inputs={"group": group.label},
        tables={"sums": result["sums"], "failures": failures},
        checks=[
            CheckResult.of("character_sums", not failures, f"x={failures[0][0]} x'={failures[0][1]}" if failures else None),
            CheckResult.of("poincare_inverse", result["poincare_inverse"], "P o Q differs from the diagonal"),
            CheckResult.of("inverse_poincare", result["inverse_poincare"], "Q o P differs from the diagonal"),
        ],
    )


async def associativity_oracle_usecase(group: FiniteAbGroup, seed: int, budget: int) -> Report:
    logger.info(f"Associativity oracle on {group.label}, seed {seed}")
    result = await asyncio.to_thread(associativity_oracle, group, seed, budget)
    return Report(
        command="oracle assoc",
        inputs={"group": group.label, "seed": seed},
        tables={"entries": result["entries"], "mismatches": result["mismatches"]},
        checks=[
            CheckResult.of("circle_associative", result["associative"], "(K o L) o M differs from K o (L o M)"),
            CheckResult.of(
                "explicit_sum_agrees",
                not result["mismatches"],
                f"{result['mismatches']} entries differ from the double sum",
            ),
        ],
    )


async def run_oracle_usecase(
    kind: OracleKindEnum, generators: int, bound: int, group: FiniteAbGroup, seed: int, budget: int
) -> Report:
    if kind == OracleKindEnum.filtration:
        return await filtration_oracle_usecase(generators, bound, budget)
    if kind == OracleKindEnum.orthogonality:
        return await orthogonality_oracle_usecase(group, budget)
    return await associativity_oracle_usecase(group, seed, budget)
