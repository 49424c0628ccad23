import asyncio
import logging
from typing import List, Optional, Sequence, Tuple

from core.constants import DISCRETE_MODEL_NOTE
from engines.kernel_engines import (
    Kernel,
    QuasiSpecialAlgebra,
    double_transform,
    field_of,
    inverse_kernel,
    inverse_transform,
    inverse_transform_module,
    module_compatibility_failures,
    orthogonality_failures,
    pairing_is_nondegenerate,
    poincare,
    quasi_special_algebra,
    random_kernel,
    random_module,
    shift_twist_exchange,
    trans_multiplicativity_failures,
    transform_algebra,
    transform_images,
    transform_kernel,
    transform_module,
    transported_constant_failures,
)
from exceptions import BudgetExceeded
from schemas.enums import FmCheckEnum
from schemas.group_schemas import Element, FiniteAbGroup
from schemas.report_schemas import CheckResult, Report

logger = logging.getLogger(__name__)

Generators = Sequence[Tuple[Element, Element]]

MODULE_RANK = 2


def _sample_seeds(seed: int, samples: int, width: int = 1) -> List[int]:
    return [seed * 1000 + k for k in range(samples * width)]


def _inversion_checks(group: FiniteAbGroup, samples: int, seed: int) -> Tuple[List[CheckResult], dict]:
    dual = group.dual_group()
    p, q = poincare(group), inverse_kernel(group)
    pq, qp = p.circle(q), q.circle(p)
    failures, sums = orthogonality_failures(group)

    left_inverse, right_inverse = [], []
    for k in _sample_seeds(seed, samples):
        kernel = random_kernel(group, k)
        if inverse_transform(transform_kernel(kernel)) != kernel:
            left_inverse.append(k)
        if transform_kernel(inverse_transform(kernel)) != kernel:
            right_inverse.append(k)
    checks = [
        CheckResult.of("pairing_nondegenerate", pairing_is_nondegenerate(group), "two characters share a row"),
        CheckResult.of(
            "orthogonality",
            not failures,
            f"x={list(failures[0][0])} x'={list(failures[0][1])}" if failures else None,
            sums=sums,
        ),
        CheckResult.of(
            "poincare_inverse",
            pq == Kernel.diagonal(group),
            f"entry {pq.first_difference(Kernel.diagonal(group))}",
        ),
        CheckResult.of(
            "inverse_poincare",
            qp == Kernel.diagonal(dual),
            f"entry {qp.first_difference(Kernel.diagonal(dual))}",
        ),
        CheckResult.of("transform_left_inverse", not left_inverse, f"kernel seed {left_inverse[:1]}"),
        CheckResult.of("transform_right_inverse", not right_inverse, f"kernel seed {right_inverse[:1]}"),
    ]
    return checks, {"orthogonality_sums": sums}


def _multiplicativity_checks(
    group: FiniteAbGroup, samples: int, seed: int, images: dict
) -> Tuple[List[CheckResult], dict]:
    seeds = _sample_seeds(seed, samples, width=2)
    bad = []
    for left_seed, right_seed in zip(seeds[::2], seeds[1::2]):
        left, right = random_kernel(group, left_seed), random_kernel(group, right_seed)
        if transform_kernel(left.circle(right)) != transform_kernel(left).circle(transform_kernel(right)):
            bad.append([left_seed, right_seed])
    failures, checked = trans_multiplicativity_failures(group, images)
    checks = [
        CheckResult.of("multiplicative_random", not bad, f"kernel seeds {bad[:1]}", pairs=samples),
        CheckResult.of(
            "multiplicative_translations",
            not failures,
            f"shift/twist pairs {[list(map(list, pair)) for pair in failures[0]]}" if failures else None,
            pairs=checked,
        ),
    ]
    return checks, {"translation_pairs": checked}


def _exchange_checks(group: FiniteAbGroup, seed: int, images: dict) -> Tuple[List[CheckResult], dict]:
    records = shift_twist_exchange(group, images)
    unrecognized = [r for r in records if not r["recognized"]]
    not_exchanged = [r for r in records if not r["exchanged"]]
    double = double_transform(random_kernel(group, seed))
    checks = [
        CheckResult.of(
            "exchange_recognized",
            not unrecognized,
            f"shift {unrecognized[0]['shift']} twist {unrecognized[0]['twist']}" if unrecognized else None,
        ),
        CheckResult.of(
            "shift_twist_exchange",
            not not_exchanged,
            f"shift {not_exchanged[0]['shift']} twist {not_exchanged[0]['twist']}" if not_exchanged else None,
        ),
        CheckResult.of(
            "double_transform_inversion",
            double["inversion"],
            f"entry {double['witness']}",
            scalar=double["scalar"],
        ),
    ]
    return checks, {"exchange": records, "double_transform_is_identity": double["identity"]}


def _algebra_checks(algebra: QuasiSpecialAlgebra) -> Tuple[List[CheckResult], dict]:
    group, field = algebra.group, algebra.field
    cocycle = algebra.cocycle_failures()
    associativity = algebra.associativity_failures()
    image = transform_algebra(algebra)
    transported = transported_constant_failures(algebra, image)
    twice = transform_algebra(image)
    inverted = [
        i
        for i, kernel in enumerate(twice.basis)
        if kernel.pair != (group.neg(algebra.basis[i].shift), group.neg(algebra.basis[i].twist))
    ]
    round_trip = transported_constant_failures(algebra, twice)

    scalars = {}
    for i in range(algebra.rank):
        for j in range(i + 1, algebra.rank):
            ratio = algebra.commutator_scalar(i, j)
            if ratio != field.one:
                scalars[f"{i},{j}"] = field.format(ratio)
    checks = [
        CheckResult.of("algebra_unit", algebra.identity_index() is not None, "identity kernel is missing"),
        CheckResult.of("cocycle_law", not cocycle, f"basis pair {cocycle[:1]}"),
        CheckResult.of("algebra_associative", not associativity, f"basis triple {associativity[:1]}"),
        CheckResult.of("transported_constants", not transported, f"basis pair {transported[:1]}"),
        CheckResult.of("double_transform_constants", not round_trip, f"basis pair {round_trip[:1]}"),
        CheckResult.of("double_transform_basis_inverted", not inverted, f"basis kernel {inverted[:1]}"),
    ]
    tables = {
        "algebra": algebra.describe(),
        "algebra_rank": algebra.rank,
        "algebra_commutative": algebra.is_commutative(),
        "commutator_scalars": scalars,
        "transformed": image.describe(),
        "transformed_commutative": image.is_commutative(),
    }
    return checks, tables


def _module_checks(algebra: QuasiSpecialAlgebra, samples: int, seed: int) -> Tuple[List[CheckResult], dict]:
    compatibility, round_trip = [], []
    for k in _sample_seeds(seed, samples):
        module = random_module(algebra.group, MODULE_RANK, k)
        if module_compatibility_failures(algebra, module):
            compatibility.append(k)
        if inverse_transform_module(transform_module(algebra, module)) != module:
            round_trip.append(k)
    checks = [
        CheckResult.of("module_compatibility", not compatibility, f"module seed {compatibility[:1]}"),
        CheckResult.of("module_round_trip", not round_trip, f"module seed {round_trip[:1]}"),
    ]
    return checks, {"module_rank": MODULE_RANK, "modules": samples}


async def fm_usecase(
    group: FiniteAbGroup,
    generators: Optional[Generators],
    check: FmCheckEnum,
    samples: int,
    seed: int,
    closure_bound: int,
    budget: int,
) -> Report:
    if group.order ** 2 > budget:
        logger.error(f"Kernels on {group.label} have {group.order ** 2} entries, budget is {budget}")
        raise BudgetExceeded(f"Kernels on {group.label} have {group.order ** 2} entries, budget is {budget}")
    logger.info(f"Kernel calculus on {group.label}: check {check.value}, {samples} samples, seed {seed}")

    wanted = set(FmCheckEnum) - {FmCheckEnum.all} if check == FmCheckEnum.all else {check}
    report = Report(
        command="fm",
        inputs={
            "group": group.label,
            "algebra": [{"shift": list(x), "twist": list(psi)} for x, psi in generators or []],
            "check": check.value,
            "samples": samples,
            "seed": seed,
        },
        notes=[DISCRETE_MODEL_NOTE],
        tables={"order": group.order, "exponent": group.exponent, "field_degree": field_of(group).degree},
    )

    images = None
    if wanted & {FmCheckEnum.multiplicativity, FmCheckEnum.exchange}:
        images = await asyncio.to_thread(transform_images, group)

    jobs = []
    if FmCheckEnum.inversion in wanted:
        jobs.append(asyncio.to_thread(_inversion_checks, group, samples, seed))
    if FmCheckEnum.multiplicativity in wanted:
        jobs.append(asyncio.to_thread(_multiplicativity_checks, group, samples, seed, images))
    if FmCheckEnum.exchange in wanted:
        jobs.append(asyncio.to_thread(_exchange_checks, group, seed, images))

    algebra_wanted = wanted & {FmCheckEnum.algebra, FmCheckEnum.module}
    algebra = None
    if algebra_wanted and generators:
        algebra = await asyncio.to_thread(quasi_special_algebra, group, generators, closure_bound)
        if FmCheckEnum.algebra in wanted:
            jobs.append(asyncio.to_thread(_algebra_checks, algebra))
        if FmCheckEnum.module in wanted:
            jobs.append(asyncio.to_thread(_module_checks, algebra, samples, seed))

    for checks, tables in await asyncio.gather(*jobs):
        report.checks.extend(checks)
        report.tables.update(tables)
    if algebra_wanted and not generators:
        for kind in sorted(algebra_wanted, key=lambda k: k.value):
            report.checks.append(CheckResult.skipped(kind.value, "no algebra generators given"))
    return report
