import asyncio
import logging
from typing import Optional

from engines.microloc_engines import (
    FilteredAlgebra,
    associated_graded,
    filtration_ideals,
    gr_n,
    grn_projection,
    lift_independence,
    localize_deg0,
    quotient_by_t,
    shift_bimodule,
    t_tower,
    tensor_comparison,
)
from engines.ncpoly_engines import NcPoly
from engines.parser_engines import print_presentation
from schemas.presentation_schemas import Presentation
from schemas.report_schemas import CheckResult, Report

logger = logging.getLogger(__name__)


def _flag_checks(results: dict, witness: str) -> list:
    return [CheckResult.of(name, bool(ok), witness) for name, ok in sorted(results.items())]


async def grn_usecase(
    pres: Presentation,
    n: int,
    localize: Optional[NcPoly] = None,
    lift: Optional[NcPoly] = None,
    order: Optional[int] = None,
) -> Report:
    logger.info(f"gr_({n}) of {pres.name} at bound {pres.degree_bound}")
    fa = await asyncio.to_thread(FilteredAlgebra, pres)
    graded, mg, bigger = await asyncio.gather(
        asyncio.to_thread(associated_graded, fa),
        asyncio.to_thread(gr_n, fa, n),
        asyncio.to_thread(gr_n, fa, n + 1),
    )
    (ideals, ideal_checks), quotient, projection, tensor = await asyncio.gather(
        asyncio.to_thread(filtration_ideals, mg),
        asyncio.to_thread(quotient_by_t, mg),
        asyncio.to_thread(grn_projection, bigger, mg),
        asyncio.to_thread(tensor_comparison, mg),
    )

    report = Report(
        command="microloc grn",
        inputs={"presentation": print_presentation(pres), "n": n},
        tables={
            "piece_dims": fa.piece_dims(),
            "grade_dims": mg.grade_dims(),
            "ideal_dims": [ideal.rank for ideal in ideals],
            "projection_kernel_dim": projection["kernel_dim"],
        },
    )
    report.checks = [
        CheckResult.of("gr_commutative", graded.commutative, "gr(A) has a nonzero commutator"),
        CheckResult.of(
            "gr_generated_in_degree_one", graded.generated_in_degree_one, "gr(A) needs generators above degree 1"
        ),
    ]
    report.checks.extend(_flag_checks(mg.t_checks(), f"t fails in gr_({n})"))
    report.checks.extend(_flag_checks(ideal_checks, "principal ideal tower"))
    report.checks.extend(_flag_checks(quotient, f"gr_({n})/(t) against gr(A)"))
    report.checks.append(
        CheckResult.of(
            "projection_algebra_map",
            projection["multiplicative"] and projection["surjective"],
            f"gr_({n + 1}) -> gr_({n}) is not a surjective algebra map",
        )
    )
    report.checks.append(
        CheckResult.of(
            "projection_kernel",
            projection["kernel_dim"] == projection["expected_kernel_dim"],
            f"kernel has dimension {projection['kernel_dim']}, expected {projection['expected_kernel_dim']}",
        )
    )
    if fa.algebra.is_commutative():
        report.checks.append(CheckResult.of("tensor_structure", tensor, "gr_(n)(A) differs from gr(A)[t]/t^(n+1)"))

    if localize is None:
        return report

    loc = await asyncio.to_thread(localize_deg0, mg, localize)
    tower_order = order if order is not None else pres.degree_bound
    bimodule, tower = await asyncio.gather(
        asyncio.to_thread(shift_bimodule, loc, 1),
        asyncio.to_thread(t_tower, loc, tower_order),
    )
    report.inputs["localize"] = localize.format(pres.names)
    report.inputs["order"] = tower_order
    report.tables["localized_dim"] = loc.algebra.dim
    report.tables["degree_zero_dim"] = loc.degree_zero.dim
    report.tables["numerator_bound"] = loc.numerator_bound
    report.tables["shift_piece_dims"] = bimodule["piece_dims"]
    report.tables["t_tower"] = tower
    report.checks.extend(
        [
            CheckResult.of("shift_associative", bimodule["associative"], "O(1) x O(-1) x O(1) products disagree"),
            CheckResult.of("shift_t_maps", bimodule["t_maps_commute"], "t does not commute with O(1) x O(-1)"),
            CheckResult.of("shift_canonical_action", bimodule["canonical_action"], "lift * v is not 1"),
        ]
    )

    if lift is None:
        return report
    second = await asyncio.to_thread(localize_deg0, mg, localize, lift)
    comparison = await asyncio.to_thread(lift_independence, loc, second)
    report.inputs["lift"] = lift.format(pres.names)
    report.tables["lift_comparison"] = comparison
    if not comparison["checked"]:
        report.checks.append(CheckResult.skipped("lift_independent", "every comparison leaves the degree bound"))
    else:
        report.checks.append(
            CheckResult.of(
                "lift_independent",
                not comparison["failures"],
                f"{comparison['failures']} of {comparison['checked']} comparisons fail",
            )
        )
    return report
