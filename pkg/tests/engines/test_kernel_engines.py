import pytest

from engines.cyclotomic_engines import cyclotomic_field
from engines.kernel_engines import (
    GradedModule,
    Kernel,
    TransKernel,
    character,
    double_transform,
    field_of,
    inverse_kernel,
    inverse_transform,
    inverse_transform_module,
    module_compatibility_failures,
    module_failures,
    orthogonality_failures,
    pairing_is_nondegenerate,
    poincare,
    quasi_special_algebra,
    random_kernel,
    random_module,
    recognize_trans_kernel,
    shift_twist_exchange,
    trans_multiplicativity_failures,
    transform_algebra,
    transform_images,
    transform_kernel,
    transform_module,
    translation_algebra,
    transported_constant_failures,
)
from exceptions import GroupMismatch, NotAModule, NotClosed
from schemas.group_schemas import FiniteAbGroup


def test_cyclotomic_field_degrees():
    assert cyclotomic_field(1).degree == 1
    assert cyclotomic_field(4).degree == 2
    assert cyclotomic_field(6).degree == 2
    field = cyclotomic_field(3)
    assert field.zeta(3) == field.one
    assert field.zeta(1) + field.zeta(2) + field.one == field.zero


def test_z2_poincare_kernel(z2):
    kernel = poincare(z2)
    assert kernel.to_table() == [[["1"], ["1"]], [["1"], ["-1"]]]


def test_z3_character_is_zeta(z3):
    field = field_of(z3)
    assert character(z3, (1,), (1,)) == field.zeta(1)
    assert field.format(character(z3, (1,), (1,))) == ["0", "1"]


def test_pairing_nondegenerate(z2_z4):
    assert pairing_is_nondegenerate(z2_z4)
    failures, checked = orthogonality_failures(z2_z4)
    assert failures == []
    assert checked == 64


@pytest.mark.parametrize("moduli", [(1,), (2,), (3,), (2, 2), (2, 4)])
def test_poincare_inverse(moduli):
    group = FiniteAbGroup(moduli=moduli)
    assert poincare(group).circle(inverse_kernel(group)) == Kernel.diagonal(group)
    assert inverse_kernel(group).circle(poincare(group)) == Kernel.diagonal(group.dual_group())


def test_diagonal_is_unit(z3):
    kernel = random_kernel(z3, 1)
    assert Kernel.diagonal(z3).circle(kernel) == kernel
    assert kernel.circle(Kernel.diagonal(z3)) == kernel


def test_circle_fail_group_mismatch(z2, z4):
    with pytest.raises(GroupMismatch):
        Kernel.diagonal(z2).circle(Kernel.diagonal(z2.dual_group()))
    with pytest.raises(GroupMismatch):
        Kernel.diagonal(z2).circle(Kernel.zero(z4, z4))


def test_circle_associative(z4):
    k, l, m = (random_kernel(z4, seed) for seed in range(3))
    assert k.circle(l).circle(m) == k.circle(l.circle(m))


@pytest.mark.parametrize("seed", range(3))
def test_transform_inverts(z2_z4, seed):
    kernel = random_kernel(z2_z4, seed)
    image = transform_kernel(kernel)
    assert image.rows == z2_z4.dual_group()
    assert inverse_transform(image) == kernel
    assert transform_kernel(inverse_transform(kernel)) == kernel


def test_transform_multiplicative(z3):
    left, right = random_kernel(z3, 5), random_kernel(z3, 6)
    assert transform_kernel(left.circle(right)) == transform_kernel(left).circle(transform_kernel(right))


def test_transform_preserves_diagonal(z4):
    assert transform_kernel(Kernel.diagonal(z4)) == Kernel.diagonal(z4.dual_group())


def test_double_transform_is_inversion(z4):
    result = double_transform(random_kernel(z4, 2))
    assert result["inversion"]
    assert result["scalar"] == ["1"]
    assert result["proportional"]
    assert result["witness"] is None


def test_double_transform_identity_on_z2(z2):
    # -a = a on Z/2
    assert double_transform(random_kernel(z2, 3))["identity"]


def test_double_transform_zero_kernel(z4):
    result = double_transform(Kernel.zero(z4, z4))
    assert result["scalar"] is None
    assert result["inversion"]
    assert result["proportional"]


def test_double_transform_scaled_kernel():
    group = FiniteAbGroup(moduli=(3,))
    kernel = random_kernel(group, 1).scale(field_of(group).zeta(1))
    result = double_transform(kernel)
    assert result["scalar"] == ["1"]
    assert result["inversion"]


def test_recognize_trans_kernel(z4):
    field = field_of(z4)
    kernel = TransKernel(z4, (1,), (3,), field.zeta(1)).expand()
    recognized = recognize_trans_kernel(kernel)
    assert recognized.pair == ((1,), (3,))
    assert recognized.scalar == field.zeta(1)
    assert recognize_trans_kernel(random_kernel(z4, 0)) is None


@pytest.mark.parametrize("moduli", [(2,), (3,), (2, 2)])
def test_shift_twist_exchange(moduli):
    group = FiniteAbGroup(moduli=moduli)
    records = shift_twist_exchange(group)
    assert len(records) == group.order ** 2
    assert all(record["recognized"] and record["exchanged"] for record in records)


def test_translation_multiplicativity(z3):
    failures, checked = trans_multiplicativity_failures(z3, transform_images(z3))
    assert failures == []
    assert checked == 81


def test_heisenberg_algebra(z4):
    algebra = quasi_special_algebra(z4, [((1,), (0,)), ((0,), (2,))], 64)
    assert algebra.rank == 8
    assert not algebra.is_commutative()
    shift, twist = algebra.index[((1,), (0,))], algebra.index[((0,), (2,))]
    assert algebra.commutator_scalar(shift, twist) == algebra.field.scalar(-1)
    assert algebra.identity_index() == algebra.index[((0,), (0,))]
    assert algebra.cocycle_failures() == []
    assert algebra.associativity_failures() == []


def test_translation_algebra_is_commutative(z4):
    algebra = translation_algebra(z4, (1,), 64)
    assert algebra.rank == 4
    assert algebra.is_commutative()


def test_closure_fail_bound(z4):
    with pytest.raises(NotClosed):
        quasi_special_algebra(z4, [((1,), (0,)), ((0,), (1,))], 8)


def test_transformed_algebra_keeps_constants(z4):
    algebra = quasi_special_algebra(z4, [((1,), (0,)), ((0,), (2,))], 64)
    image = transform_algebra(algebra)
    assert image.group == z4.dual_group()
    assert transported_constant_failures(algebra, image) == []
    twice = transform_algebra(image)
    assert [t.pair for t in twice.basis] == [(z4.neg(t.shift), z4.neg(t.twist)) for t in algebra.basis]


def test_module_transform(z2):
    algebra = quasi_special_algebra(z2, [((1,), (0,)), ((0,), (1,))], 16)
    module = random_module(z2, 2, 4)
    assert module_compatibility_failures(algebra, module) == []
    assert inverse_transform_module(transform_module(algebra, module)) == module


def test_module_fail_scaled_action(z2):
    algebra = quasi_special_algebra(z2, [((1,), (0,)), ((0,), (1,))], 16)
    module = random_module(z2, 2, 4)
    two = field_of(z2).scalar(2)

    def doubled(i, m):
        return m.acted(algebra.kernel(i)).scale(two)

    assert module_failures(algebra, module) == []
    assert module_failures(algebra, module, doubled)
    with pytest.raises(NotAModule):
        transform_module(algebra, module, doubled)


def test_delta_module_transform_is_constant(z3):
    algebra = translation_algebra(z3, (0,), 16)
    image = transform_module(algebra, GradedModule.delta(z3, (0,)))
    assert image.group == z3.dual_group()
    assert image.is_constant()


@pytest.mark.slow
@pytest.mark.parametrize(
    "moduli", [(n,) for n in range(2, 13)] + [(2, 4), (3, 3), (2, 2, 2)]
)
def test_inversion_sweep(moduli):
    group = FiniteAbGroup(moduli=moduli)
    dual = group.dual_group()
    assert poincare(group).circle(inverse_kernel(group)) == Kernel.diagonal(group)
    assert inverse_kernel(group).circle(poincare(group)) == Kernel.diagonal(dual)
    kernel = random_kernel(group, 11)
    assert inverse_transform(transform_kernel(kernel)) == kernel
    assert transform_kernel(inverse_transform(kernel)) == kernel


@pytest.mark.slow
def test_multiplicativity_sweep():
    group = FiniteAbGroup(moduli=(4, 2))
    for k in range(100):
        left, right = random_kernel(group, 2 * k), random_kernel(group, 2 * k + 1)
        assert transform_kernel(left.circle(right)) == transform_kernel(left).circle(transform_kernel(right))
        assert inverse_transform(transform_kernel(left)) == left


@pytest.mark.slow
def test_module_functoriality_sweep(z4):
    algebra = quasi_special_algebra(z4, [((1,), (0,)), ((0,), (2,))], 64)
    for seed in range(20):
        module = random_module(z4, 2, seed)
        assert module_compatibility_failures(algebra, module) == []
        assert inverse_transform_module(transform_module(algebra, module)) == module
