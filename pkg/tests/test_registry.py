import pytest

from helicity_algebra.config import Settings
from helicity_algebra.registry import (
    SUITES,
    InvariantRegistry,
    default_registry,
    invariant,
)


@invariant
def always_true(rng, settings):
    """
    Holds
    for every seed
    """
    return True


@invariant(name="coin", suite="rep", description="Draws from the seeded generator")
def coin_flip(rng, settings):
    return rng.random() >= 0.0, f"{rng.random():.6f}"


@invariant(suite="field")
def broken(rng, settings):
    raise ZeroDivisionError("no luck")


@pytest.fixture
def registry():
    reg = InvariantRegistry()
    for func in (always_true, coin_flip, broken):
        reg.register(func)
    return reg


def test_bare_decorator_metadata():
    assert always_true._is_invariant
    assert always_true._invariant_name == "always_true"
    assert always_true._invariant_suite == "algebra"
    assert always_true._invariant_description == "Holds\nfor every seed"


def test_decorator_with_arguments():
    assert coin_flip._invariant_name == "coin"
    assert coin_flip._invariant_suite == "rep"
    assert coin_flip._invariant_description == "Draws from the seeded generator"


def test_registry_queries(registry):
    assert registry.list_invariants() == ["always_true", "coin", "broken"]
    assert registry.list_invariants("rep") == ["coin"]
    assert registry.list_invariants("all") == registry.list_invariants()
    assert registry.suites() == ["algebra", "rep", "field"]
    assert registry.get("coin").func is coin_flip
    assert registry.get("missing") is None


def test_plain_functions_register():
    reg = InvariantRegistry()

    def plain(rng, settings):
        """Plain check"""
        return False

    inv = reg.register(plain, suite="rep")
    assert (inv.name, inv.suite) == ("plain", "rep")
    report = reg.run("rep", seed=1)
    assert report.failed == 1 and not report.ok


def test_registration_errors(registry):
    with pytest.raises(ValueError, match="already registered"):
        registry.register(lambda rng, settings: True, name="coin")
    with pytest.raises(ValueError, match="Suite"):
        InvariantRegistry().register(always_true, suite="physics")
    registry.register(coin_flip)
    assert registry.list_invariants().count("coin") == 1


def test_exceptions_become_failures(registry):
    report = registry.run("field", seed=5)
    (result,) = report.results
    assert not result.passed
    assert result.status == "fail"
    assert result.detail == "error: ZeroDivisionError: no luck"


def test_runs_are_reproducible(registry):
    first = registry.run("rep", seed=11).results[0].detail
    assert registry.run("rep", seed=11).results[0].detail == first
    assert registry.run("rep", seed=12).results[0].detail != first


def test_report_json(registry):
    report = registry.run(seed=3, settings=Settings.load(seed=9))
    data = report.to_json()
    assert data["suite"] == "all"
    assert data["seed"] == 3
    assert (data["passed"], data["failed"]) == (2, 1)
    assert [inv["status"] for inv in data["invariants"]] == ["pass", "pass", "fail"]


def test_unknown_suite(registry):
    with pytest.raises(ValueError):
        registry.run("physics")


def test_default_registry_holds_every_suite():
    reg = default_registry()
    assert reg.suites() == list(SUITES)
    assert "associativity" in reg.list_invariants("algebra")
    assert "helicity_split_weyl" in reg.list_invariants("rep")
    assert "composite_photon_identity" in reg.list_invariants("field")
    assert "always_true" not in reg.list_invariants()


@pytest.mark.parametrize("suite", SUITES)
def test_default_suites_pass(suite, settings):
    report = default_registry().run(suite, settings=settings)
    failures = {r.name: r.detail for r in report.results if not r.passed}
    assert failures == {}
    assert report.passed == len(report.results) > 0


def test_long_names_get_separate_streams():
    reg = InvariantRegistry()

    def draw(rng, settings):
        return True, f"{rng.random():.12f}"

    reg.register(draw, name="quotient_homomorphism_plus", suite="algebra")
    reg.register(draw, name="quotient_homomorphism_minus", suite="algebra")
    first, second = reg.run("algebra", seed=4).results
    assert first.detail != second.detail
