import asyncio
import logging

from engines.algebra_engines import associativity_failures, build_truncated
from engines.algebroid_engines import pbw_dimension_check
from engines.filtration_engines import filtration_checks
from engines.parser_engines import print_presentation
from schemas.presentation_schemas import LieAlgebroidPresentation, Presentation
from schemas.report_schemas import CheckResult, Report

logger = logging.getLogger(__name__)


async def analyze_presentation_usecase(pres: Presentation) -> Report:
    logger.info(f"Analyzing {pres.name} with {len(pres.generators)} generators at bound {pres.degree_bound}")
    algebra = await asyncio.to_thread(build_truncated, pres)
    checks, assoc = await asyncio.gather(
        asyncio.to_thread(filtration_checks, algebra, pres.degree_bound),
        asyncio.to_thread(associativity_failures, algebra),
    )

    report = Report(
        command="alg analyze",
        inputs={"presentation": print_presentation(pres)},
        tables={
            "basis": list(algebra.labels),
            "dims_by_degree": {str(k): v for k, v in sorted(algebra.degree_dims().items())},
            "filtration_dims": checks["filtration_dims"],
            "rd_dims": checks["rd_dims"],
            "overflow_pairs": len(algebra.overflow),
        },
    )
    if algebra.overflow:
        report.notes.append(
            f"inhomogeneous relations: {len(algebra.overflow)} basis products leave the degree bound "
            "and are skipped by the checks"
        )
    witness = None
    if assoc:
        i, j, k = assoc[0]
        witness = f"({algebra.labels[i]}*{algebra.labels[j]})*{algebra.labels[k]}"
    decreasing = checks["decreasing_failures"]
    multiplicative = checks["multiplicativity_failures"]
    report.checks = [
        CheckResult.of("associative", not assoc, witness),
        CheckResult.of(
            "filtration_decreasing",
            not decreasing,
            f"F^{decreasing[0] + 1} is not inside F^{decreasing[0]}" if decreasing else None,
        ),
        CheckResult.of(
            "filtration_multiplicative",
            not multiplicative,
            f"F^{multiplicative[0][0]}*F^{multiplicative[0][1]} leaves F^{sum(multiplicative[0])}"
            if multiplicative
            else None,
        ),
        CheckResult.of("r0_commutative", checks["r0_commutative"], "r_0 has a nonzero commutator"),
        CheckResult.of(
            "rd_idempotent",
            not checks["idempotence_failures"],
            f"r_d(r_d) differs from r_d at d={checks['idempotence_failures'][0]}"
            if checks["idempotence_failures"]
            else None,
        ),
        CheckResult.of(
            "rd_tower",
            not checks["tower_failures"],
            f"r_(d-1)(r_d) differs from r_(d-1) at d={checks['tower_failures'][0]}"
            if checks["tower_failures"]
            else None,
        ),
        CheckResult.of("commutators_in_f1", checks["commutators_in_f1"], "a basis commutator is outside F^1"),
    ]
    return report


async def pbw_usecase(lp: LieAlgebroidPresentation, bound: int) -> Report:
    logger.info(f"PBW comparison for rank {lp.rank} algebroid over {lp.base.name} up to weight {bound}")
    result = await asyncio.to_thread(pbw_dimension_check, lp, bound)
    return Report(
        command="alg pbw",
        inputs={
            "base": print_presentation(lp.base),
            "generators": list(lp.generators),
            "bound": bound,
        },
        tables={"enveloping": result["enveloping"], "symmetric": result["symmetric"]},
        checks=[
            CheckResult.of("jacobi", True),
            CheckResult.of(
                "pbw_dimensions",
                result["match"],
                f"weight {result['first_failure']}",
                first_failure=result["first_failure"],
            ),
        ],
    )
