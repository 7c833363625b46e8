import pytest

from helicity_algebra.algebra import CL30, Multivector, blade
from helicity_algebra.coefficients import GAUSSIAN
from helicity_algebra.errors import SymbolicError
from helicity_algebra.symbolic import (
    FORMAL,
    FormalSum,
    Token,
    lorentz_gauge,
    maxwell_groups,
    nabla_F_product,
    nabla_groups,
    nabla_product,
    reverse_rs_form,
    riemann_silberstein_form,
    weyl_split_formulas,
)


def applied(mu, symbol, nu, conjugate=False):
    return FormalSum.token(Token(mu, symbol, nu, conjugate))


def test_token_products():
    assert Token(derivative=2) * Token(None, "A", 3) == Token(2, "A", 3)
    assert Token() * Token(None, "E", 1) == Token(None, "E", 1)
    with pytest.raises(SymbolicError):
        Token(None, "A", 1) * Token(derivative=0)
    with pytest.raises(SymbolicError):
        Token(derivative=4)
    with pytest.raises(SymbolicError):
        Token(component=1)


def test_token_text():
    assert str(Token(1, "A", 2)) == "d1A2"
    assert str(Token(None, "phi", 3, True)) == "phi3*"
    assert str(Token()) == "1"


def test_formal_sum_arithmetic():
    x = applied(1, "A", 2) - applied(2, "A", 1)
    assert x.render() == "d1A2 - d2A1"
    assert (x - x).is_zero()
    assert (-x).render() == "-d1A2 + d2A1"
    assert (x * 2).render() == "2*d1A2 - 2*d2A1"
    assert FormalSum.constant(3).render() == "3"


def test_formal_sum_conjugate():
    x = FormalSum.field("phi", 1) * GAUSSIAN.i
    assert x.conjugate() == FormalSum.field("phi", 1, conjugate=True) * (-GAUSSIAN.i)


def test_nabla_a_groups():
    groups = {g.label: g for g in nabla_groups()}
    assert [g.blade for g in nabla_groups()] == ["e0", "e1", "e2", "e3", "e2e3", "e3e1", "e1e2", "e1e2e3"]
    assert groups["Lorentz"].expression == sum(
        (applied(mu, "A", mu) for mu in range(1, 4)), applied(0, "A", 0)
    )
    assert groups["E1"].expression == applied(0, "A", 1) + applied(1, "A", 0)
    assert groups["H2"].expression == applied(3, "A", 1) - applied(1, "A", 3)
    assert groups["zero"].expression.is_zero()


def test_maxwell_groups():
    groups = {g.label: g.expression for g in maxwell_groups()}
    assert groups["divE"].render() == "d1E1 + d2E2 + d3E3"
    assert groups["d0E1-curlH1"].render() == "d0E1 - d2H3 + d3H2"
    assert groups["curlE2+d0H2"].render() == "d0H2 - d1E3 + d3E1"
    assert groups["divH"].render() == "d1H1 + d2H2 + d3H3"


def test_nabla_symbol_validated():
    with pytest.raises(SymbolicError):
        nabla_product("A1")


def test_rs_form_requires_lorentz_condition():
    with pytest.raises(SymbolicError, match="Lorentz"):
        riemann_silberstein_form(nabla_product())


def test_rs_form_round_trip():
    gauged = lorentz_gauge(nabla_product())
    assert gauged.scalar_part().is_zero()
    form = riemann_silberstein_form(gauged)
    assert form.expand() == gauged
    assert form.electric[0] == applied(0, "A", 1) + applied(1, "A", 0)
    assert form.magnetic[1] == applied(3, "A", 1) - applied(1, "A", 3)


def test_reversion_flips_magnetic_groups_only():
    form = riemann_silberstein_form(lorentz_gauge(nabla_product()))
    assert reverse_rs_form(form) == form.reverse().expand()
    assert form.reverse().electric == form.electric
    assert all(b == -a for a, b in zip(form.magnetic, form.reverse().magnetic))


def test_rs_form_of_zero():
    form = riemann_silberstein_form(Multivector.zero(CL30, FORMAL))
    assert all(x.is_zero() for x in form.electric + form.magnetic)


def test_rs_form_rejects_trivector():
    x = Multivector(CL30, {blade(1, 2, 3): FormalSum.field("A", 0)}, FORMAL)
    with pytest.raises(SymbolicError):
        riemann_silberstein_form(x)


def test_nabla_f_has_no_missing_grades():
    assert nabla_F_product().grades() == (0, 1, 2, 3)


def test_weyl_split_formulas():
    formulas = weyl_split_formulas()
    assert len(formulas) == 8
    top, bottom = formulas[0]
    assert top == FormalSum.field("phi", 1) - FormalSum.field("phi", 3)
    assert bottom == FormalSum.field("phi", 2) - FormalSum.field("phi", 4)
    top, bottom = formulas[5]
    assert top.render() == "phi2* - phi4*"
    assert bottom.render() == "-phi1* + phi3*"
    assert formulas[2] == tuple(-x for x in formulas[0])


def test_group_json():
    group = nabla_groups()[4]
    terms = group.expression.to_json()
    assert terms[0] == {"token": {"d": 2, "sym": "A", "c": 3}, "re": "1/1", "im": "0/1"}
    assert terms[1]["re"] == "-1/1"
