from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings
from strategies import multivectors

from helicity_algebra.algebra import C3, C5, CL30, Multivector, Signature, volume_element
from helicity_algebra.coefficients import GAUSSIAN
from helicity_algebra.decomposition import (
    DIRECT_SUM,
    DOT,
    MINUS,
    PLUS,
    UNION,
    central_idempotents,
    conjugate_layout,
    decompose,
    epsilon_for,
    epsilon_label,
    ideal_basis_rank,
    in_ideal,
    project,
    quotient_map,
    spinspace_layout,
    union_images,
)
from helicity_algebra.errors import (
    DimensionError,
    HelicityAlgebraError,
    IdealMembershipError,
    ParityError,
)

I = GAUSSIAN.i
HALF = Fraction(1, 2)


def e(sig, *indices, value=1):
    return Multivector.from_blade(sig, indices, value)


@pytest.mark.parametrize("n, label", [(1, "1"), (3, "i"), (5, "1"), (7, "i"), (9, "1")])
def test_epsilon(n, label):
    assert epsilon_label(n) == label


@pytest.mark.parametrize("n", [0, 2, 4, -3])
def test_even_n_rejected(n):
    with pytest.raises(ParityError, match="n must be odd"):
        epsilon_for(n)


def test_c3_idempotents():
    pair = central_idempotents(3)
    assert pair.lambda_minus == Multivector.scalar(C3, HALF) - e(C3, 1, 2, 3, value=I * GAUSSIAN.half())
    assert pair.lambda_plus == Multivector.scalar(C3, HALF) + e(C3, 1, 2, 3, value=I * GAUSSIAN.half())


def test_c5_idempotents():
    pair = central_idempotents(5)
    assert pair.lambda_plus == Multivector.scalar(C5, HALF) + volume_element(C5) * GAUSSIAN.half()


@pytest.mark.parametrize("n", [3, 5, 7])
def test_idempotent_laws(n):
    report = decompose(n)
    assert report.ok
    assert set(report.laws) == {"plus_idempotent", "minus_idempotent", "annihilating", "partition_of_unity", "central"}


@pytest.mark.parametrize("n, swaps", [(3, True), (5, False), (7, True), (9, False)])
def test_pseudo_conjugation_rule(n, swaps):
    assert decompose(n).swap is swaps


def test_decompose_limits():
    with pytest.raises(ParityError, match="n must be odd, got 4"):
        decompose(4)
    with pytest.raises(DimensionError):
        decompose(11)


def test_projection():
    pair = central_idempotents(3)
    x = e(C3, 1)
    assert project(x, PLUS) + project(x, MINUS) == x
    assert in_ideal(pair.lambda_plus, "+")
    assert not in_ideal(x, PLUS)
    with pytest.raises(ParityError):
        project(e(CL30, 1), PLUS)
    with pytest.raises(HelicityAlgebraError):
        project(x, "sideways")


def test_quotient_of_idempotent_is_one():
    for n in (3, 5):
        pair = central_idempotents(n)
        one = Multivector.scalar(Signature.complex(n - 1))
        assert quotient_map(pair.lambda_plus, PLUS) == one
        assert quotient_map(pair.lambda_minus, MINUS) == one


def test_quotient_of_top_generator():
    pair = central_idempotents(3)
    assert quotient_map(pair.lambda_plus * e(C3, 3), PLUS) == e(Signature.complex(2), 1, 2, value=I)
    assert quotient_map(pair.lambda_minus * e(C3, 3), MINUS) == e(Signature.complex(2), 1, 2, value=-I)


def test_quotient_keeps_lower_blades():
    pair = central_idempotents(3)
    image = quotient_map(pair.lambda_plus * e(C3, 1), PLUS)
    assert image.coefficient(0b01) == GAUSSIAN.one


def test_quotient_rejects_non_members():
    with pytest.raises(IdealMembershipError):
        quotient_map(e(C3, 1), PLUS)


def test_union_images_are_ordered():
    plus, minus = union_images(Multivector.scalar(C3))
    assert plus == minus == Multivector.scalar(Signature.complex(2))


@pytest.mark.parametrize("n", [3, 5])
def test_ideal_rank_halves(n):
    assert ideal_basis_rank(n, PLUS) == ideal_basis_rank(n, MINUS) == 1 << (n - 1)


@hsettings(max_examples=40, deadline=None)
@given(multivectors(C3), multivectors(C3))
def test_quotient_is_multiplicative(a, b):
    lam = central_idempotents(3).lambda_plus
    x, y = lam * a, lam * b
    assert quotient_map(x * y, PLUS) == quotient_map(x, PLUS) * quotient_map(y, PLUS)
    assert quotient_map(x + y, PLUS) == quotient_map(x, PLUS) + quotient_map(y, PLUS)


@hsettings(max_examples=20, deadline=None)
@given(multivectors(C5, max_terms=6), multivectors(C5, max_terms=6))
def test_quotient_is_multiplicative_c5(a, b):
    lam = central_idempotents(5).lambda_minus
    x, y = lam * a, lam * b
    assert quotient_map(x * y, MINUS) == quotient_map(x, MINUS) * quotient_map(y, MINUS)


def dotted(label):
    return "".join(ch + DOT for ch in label)


def test_union_layout():
    layout = spinspace_layout(2, UNION)
    assert layout.render() == (
        f"[00,{dotted('00')}] [01,{dotted('01')}]\n[10,{dotted('10')}] [11,{dotted('11')}]"
    )
    swapped = conjugate_layout(layout)
    assert swapped.cells[0][1] == (dotted("01"), "01")
    assert conjugate_layout(swapped) == layout


def test_direct_sum_layout():
    layout = spinspace_layout(2, DIRECT_SUM)
    lines = layout.render().split("\n")
    assert lines[0] == "00 01 0 0"
    assert lines[3] == f"0 0 {dotted('10')} {dotted('11')}"
    swapped = conjugate_layout(layout).render().split("\n")
    assert swapped[0] == f"{dotted('00')} {dotted('01')} 0 0"
    assert swapped[3] == "0 0 10 11"


def test_rank_four_layout():
    layout = spinspace_layout(4, UNION)
    assert len(layout.cells) == 4
    assert layout.cells[3][2][0] == "1110"


def test_layout_arguments_validated():
    with pytest.raises(DimensionError):
        spinspace_layout(3)
    with pytest.raises(HelicityAlgebraError):
        spinspace_layout(2, "tensor")
