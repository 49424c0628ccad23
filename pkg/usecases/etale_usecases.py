import asyncio
import logging
from typing import List, Optional, Sequence

from core.constants import FAMILY_VERDICT_NOTE
from engines.etale_engines import (
    AlgebraMorphism,
    EtaleDiagram,
    FamilyFactor,
    LiftSolution,
    ambient_factor,
    generate_family,
    lift_standard,
    nd_closure_check,
    solve_lifts,
)
from engines.filtration_engines import nc_filtration
from engines.linalg_engines import Vector, qq_str
from engines.ncpoly_engines import NcPoly
from engines.parser_engines import print_presentation
from exceptions import NcFourierException
from schemas.enums import CheckStatusEnum
from schemas.report_schemas import CheckResult, Report

logger = logging.getLogger(__name__)


def _solution_row(diagram: EtaleDiagram, solution: LiftSolution) -> dict:
    return {
        "label": diagram.label,
        "commutes": solution.commutes,
        "exists": solution.exists,
        "unique": solution.unique,
        "nullity": solution.nullity,
        "skipped": solution.skipped,
    }


def _labelled(labels: Sequence[str], vector: Vector) -> dict:
    return {labels[key]: qq_str(coeff) for key, coeff in sorted(vector.items())}


def _standard_checks(diagram: EtaleDiagram) -> List[CheckResult]:
    if diagram.coefficients is None or len(diagram.preimages) < 2:
        return [
            CheckResult.skipped("standard_lift_relations", "no standard étale coefficients or preimages x, y"),
            CheckResult.skipped("standard_lift_in_kernel", "no standard étale coefficients or preimages x, y"),
        ]
    try:
        lift = lift_standard(diagram)
    except NcFourierException as exc:
        logger.error(f"Error while lifting {diagram.label or diagram.etale.name}. Details: {exc.message}")
        return [
            CheckResult.of("standard_lift_relations", False, exc.message, error_code=exc.error_code),
            CheckResult.skipped("standard_lift_in_kernel", exc.message),
        ]
    witness = f"relation {lift.relation_failures[0]}" if lift.relation_failures else None
    return [
        CheckResult.of("standard_lift_relations", not lift.relation_failures, witness),
        CheckResult.of("standard_lift_in_kernel", lift.in_kernel, "p or q is outside ker(gamma)"),
    ]


async def lift_diagram_usecase(diagram: EtaleDiagram) -> Report:
    logger.info(f"Lifting diagram {diagram.label or diagram.etale.name}")
    failures = diagram.extension.failures()
    solution = await asyncio.to_thread(solve_lifts, diagram)
    report = Report(
        command="etale lift",
        inputs={
            "R": print_presentation(diagram.source),
            "S": print_presentation(diagram.etale),
            "label": diagram.label,
        },
        tables={
            "dim_total": diagram.extension.total.dim,
            "dim_quotient": diagram.extension.quotient.dim,
            "dim_kernel": diagram.extension.kernel.rank,
            "lift": _solution_row(diagram, solution),
        },
    )
    if solution.exists and solution.images is not None:
        total = diagram.extension.total
        report.tables["images"] = {
            name: _labelled(total.labels, image)
            for name, image in zip(diagram.etale.names, solution.images)
        }
    if solution.skipped:
        report.notes.append(f"{solution.skipped} constraints leave the degree bound and were skipped")
    report.checks = [
        CheckResult.of("central_extension", not failures, failures[0] if failures else None),
        CheckResult.of("diagram_commutes", solution.commutes, solution.witness),
        CheckResult.of("lift_exists", solution.exists, solution.witness),
        CheckResult.of("lift_unique", solution.unique, f"lift space has dimension {solution.nullity}"),
    ]
    report.checks.extend(await asyncio.to_thread(_standard_checks, diagram))
    return report


async def check_family_usecase(
    alpha: AlgebraMorphism,
    coefficients: Optional[Sequence[NcPoly]],
    factors: Sequence[FamilyFactor],
    count: int,
    seed: int,
    d: int,
) -> Report:
    logger.info(f"Checking {alpha.source.name} -> {alpha.target.presentation.name} over {count} diagrams, seed {seed}")
    diagrams = await asyncio.to_thread(generate_family, alpha, factors, count, seed, coefficients)
    solutions = await asyncio.gather(*(asyncio.to_thread(solve_lifts, diagram) for diagram in diagrams))
    standard = []
    if coefficients is not None:
        standard = await asyncio.gather(*(asyncio.to_thread(_standard_checks, diagram) for diagram in diagrams))

    in_nd = [nc_filtration(factor.algebra, d + 1).is_zero() for factor in factors]
    verdict = all(solution.unique for solution in solutions)
    first_bad = next((k for k, solution in enumerate(solutions) if not solution.unique), None)

    report = Report(
        command="etale check",
        inputs={
            "R": print_presentation(alpha.source),
            "S": print_presentation(alpha.target.presentation),
            "count": count,
            "seed": seed,
            "d": d,
        },
        notes=[FAMILY_VERDICT_NOTE],
        tables={
            "diagrams": [_solution_row(diagram, solution) for diagram, solution in zip(diagrams, solutions)],
            "factors_in_nd": in_nd,
        },
    )
    witness = diagrams[first_bad].label if first_bad is not None else None
    report.checks.append(CheckResult.of("formally_etale", verdict, witness, diagrams=len(diagrams)))
    if coefficients is not None:
        bad = [
            diagram.label
            for diagram, checks in zip(diagrams, standard)
            if any(check.status == CheckStatusEnum.failed for check in checks)
        ]
        report.checks.append(CheckResult.of("standard_lifts_valid", not bad, bad[0] if bad else None))
    if not all(in_nd):
        report.checks.append(CheckResult.skipped("ambient_shadow", f"some factor lies outside N_{d}"))
    elif not verdict:
        report.checks.append(CheckResult.skipped("ambient_shadow", f"no verdict inside N_{d} to carry over"))
    else:
        report.checks.append(await _ambient_check(alpha, coefficients, factors, count, seed, d, report))
    return report


async def _ambient_check(
    alpha: AlgebraMorphism,
    coefficients: Optional[Sequence[NcPoly]],
    factors: Sequence[FamilyFactor],
    count: int,
    seed: int,
    d: int,
    report: Report,
) -> CheckResult:
    extra = await asyncio.to_thread(ambient_factor, factors[0], d)
    if nc_filtration(extra.algebra, d + 1).is_zero():
        return CheckResult.skipped("ambient_shadow", f"ambient factor lies in N_{d}")
    ambient = list(factors) + [extra]
    diagrams = await asyncio.to_thread(generate_family, alpha, ambient, count, seed, coefficients)
    solutions = await asyncio.gather(*(asyncio.to_thread(solve_lifts, diagram) for diagram in diagrams))
    report.tables["ambient_diagrams"] = [
        _solution_row(diagram, solution) for diagram, solution in zip(diagrams, solutions)
    ]
    first_bad = next((k for k, solution in enumerate(solutions) if not solution.unique), None)
    witness = diagrams[first_bad].label if first_bad is not None else None
    logger.info(f"Ambient family with an extra factor of dimension {extra.algebra.dim}: first failure {witness}")
    return CheckResult.of("ambient_shadow", first_bad is None, witness, diagrams=len(diagrams))


async def closure_usecase(diagram: EtaleDiagram, d: int) -> Report:
    logger.info(f"N_{d} closure check for {diagram.label or diagram.etale.name}")
    result = await asyncio.to_thread(nd_closure_check, diagram, d)
    quotient_in_nd = nc_filtration(diagram.extension.quotient, d + 1).is_zero()
    failures = diagram.extension.failures()
    report = Report(
        command="etale closure",
        inputs={"S": print_presentation(diagram.etale), "d": d, "label": diagram.label},
        tables={
            "filtration_dim": result["filtration_dim"],
            "hypotheses": {"beta_surjective": result["beta_surjective"], "quotient_in_nd": quotient_in_nd},
        },
    )
    report.checks = [
        CheckResult.of("central_extension", not failures, failures[0] if failures else None),
    ]
    if result["beta_surjective"] and quotient_in_nd and not failures:
        report.checks.append(
            CheckResult.of(
                "total_in_nd",
                result["in_nd"],
                f"F^{d + 1}(A') has dimension {result['filtration_dim']}",
            )
        )
    else:
        report.checks.append(CheckResult.skipped("total_in_nd", "hypotheses do not hold"))
    return report
