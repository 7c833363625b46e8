"""
Lightweight invariant registration system
Supports invariant registration, querying, and suite execution
"""
import hashlib
import importlib
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from .config import Settings

log = logging.getLogger(__name__)

SUITES = ("algebra", "rep", "field")


@dataclass
class Invariant:
    """Invariant definition"""
    name: str
    suite: str
    description: str
    func: Callable


@dataclass
class InvariantResult:
    name: str
    suite: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class SuiteReport:
    suite: str
    seed: int
    results: List[InvariantResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @property
    def failed(self) -> int:
        return len(self.results) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "failed": self.failed,
            "invariants": [
                {"name": r.name, "suite": r.suite, "status": r.status, "detail": r.detail}
                for r in self.results
            ],
        }


def _clean(text: str) -> str:
    return "\n".join(line.strip() for line in text.strip().split("\n"))


def invariant(name: Optional[str] = None, suite: str = "algebra", description: Optional[str] = None):
    """
    Invariant decorator

    Usage:
        @invariant(name="associativity", suite="algebra")
        def associativity(rng, settings) -> bool:
            ...

    Or use function name and docstring (algebra suite):
        @invariant
        def associativity(rng, settings) -> bool:
            '''(ab)c = a(bc)'''

    The function receives a seeded numpy Generator and the Settings, and
    returns True, False, or a (passed, detail) pair.
    """
    def mark(func: Callable, inv_name: Optional[str], inv_description: Optional[str]) -> Callable:
        func._invariant_name = inv_name or func.__name__
        func._invariant_suite = suite
        func._invariant_description = _clean(inv_description or func.__doc__ or f"{func.__name__} invariant")
        func._is_invariant = True
        return func

    if callable(name):
        return mark(name, None, None)

    def decorator(func: Callable) -> Callable:
        return mark(func, name, description)

    return decorator


class InvariantRegistry:
    """Invariant registry"""

    def __init__(self):
        self._invariants: Dict[str, Invariant] = {}

    def register(self, func: Callable, name: Optional[str] = None, suite: Optional[str] = None,
                 description: Optional[str] = None) -> Invariant:
        """
        Register an invariant

        Args:
            func: Invariant function, plain or decorated with @invariant
            name: Invariant name (optional, uses the decorator metadata or function name)
            suite: Suite name (optional, uses the decorator metadata)
            description: Description (optional, uses the docstring)
        """
        if getattr(func, "_is_invariant", False):
            name = name or func._invariant_name
            suite = suite or func._invariant_suite
            description = description or func._invariant_description
        name = name or func.__name__
        suite = suite or "algebra"
        if suite not in SUITES:
            raise ValueError(f"Suite {suite} is not one of {', '.join(SUITES)}")
        if name in self._invariants and self._invariants[name].func is not func:
            raise ValueError(f"Invariant {name} is already registered")
        inv = Invariant(name=name, suite=suite, description=_clean(description or name), func=func)
        self._invariants[name] = inv
        return inv

    def get(self, name: str) -> Optional[Invariant]:
        return self._invariants.get(name)

    def list_invariants(self, suite: Optional[str] = None) -> List[str]:
        return [n for n, inv in self._invariants.items() if suite in (None, "all", inv.suite)]

    def suites(self) -> List[str]:
        return [s for s in SUITES if any(inv.suite == s for inv in self._invariants.values())]

    def execute(self, inv: Invariant, seed: int, settings: Settings) -> InvariantResult:
        """Run one invariant; exceptions become failed results"""
        rng = np.random.default_rng([seed, _stable_hash(inv.name)])
        start = time.perf_counter()
        try:
            outcome = inv.func(rng, settings)
        except Exception as e:  # reported, not raised
            log.debug("invariant %s raised", inv.name, exc_info=True)
            return InvariantResult(inv.name, inv.suite, False, f"error: {type(e).__name__}: {e}",
                                   time.perf_counter() - start)
        passed, detail = outcome if isinstance(outcome, tuple) else (bool(outcome), "")
        return InvariantResult(inv.name, inv.suite, bool(passed), str(detail), time.perf_counter() - start)

    def run(self, suite: str = "all", seed: Optional[int] = None, settings: Optional[Settings] = None) -> SuiteReport:
        """
        Execute every invariant of a suite

        Args:
            suite: "all" or one of the suite names
            seed: Base seed, uses the settings seed if not provided

        Returns:
            SuiteReport with one result per invariant
        """
        if suite != "all" and suite not in SUITES:
            raise ValueError(f"Suite {suite} is not one of all, {', '.join(SUITES)}")
        settings = settings or Settings.load(seed=seed)
        seed = settings.seed if seed is None else seed
        report = SuiteReport(suite, seed)
        for name in self.list_invariants(suite):
            result = self.execute(self._invariants[name], seed, settings)
            log.debug("%s: %s %s", name, result.status, result.detail)
            report.results.append(result)
        log.info("suite %s: %d passed, %d failed", suite, report.passed, report.failed)
        return report


def _stable_hash(text: str) -> int:
    return int.from_bytes(hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest(), "little")


def default_registry() -> InvariantRegistry:
    """Registry holding every invariant defined in helicity_algebra.checks"""
    registry = InvariantRegistry()
    for module_name in CHECK_MODULES:
        module = importlib.import_module(module_name)
        for attr in vars(module).values():
            if callable(attr) and getattr(attr, "_is_invariant", False):
                registry.register(attr)
    return registry


CHECK_MODULES = (
    "helicity_algebra.checks.algebra",
    "helicity_algebra.checks.rep",
    "helicity_algebra.checks.field",
)
