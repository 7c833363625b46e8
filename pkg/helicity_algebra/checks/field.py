"""
Field suite
Finite-difference pipelines against analytic plane waves
"""
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np

from helicity_algebra.config import Settings
from helicity_algebra.fields import (
    Lattice,
    dh_field,
    dirac_apply,
    em_from_potential,
    max_norm,
    maxwell_residuals,
)
from helicity_algebra.matrices import gamma21, helicity_projectors
from helicity_algebra.registry import invariant
from helicity_algebra.waves import ConvergenceTable, composite_photon, convergence_table

NULL_MOMENTA = ((0, 0, 1), (3, 4, 0), (1, 2, 2))

MAXWELL_PIPELINES = ("divE", "curlH", "curlE", "divH", "potential", "weyl")
DH_PIPELINES = ("dh", "split")

FLOOR = 1e-9


@lru_cache(maxsize=4)
def _tables(settings: Settings) -> Dict[Tuple[Tuple[int, int, int], int], ConvergenceTable]:
    return {
        (k, helicity): convergence_table(k, helicity, settings=settings)
        for k in NULL_MOMENTA
        for helicity in (1, -1)
    }


def _ratios_ok(table: ConvergenceTable, name: str, window) -> bool:
    """Error ratios rescaled to a halving of h"""
    if max(table.errors[name]) < FLOOR:
        return True
    return all(window[0] <= 2.0**order <= window[1] for order in table.local_orders(name))


def _check_pipelines(settings: Settings, names) -> Tuple[bool, str]:
    for (k, helicity), table in _tables(settings).items():
        within = table.within(settings.order_window, FLOOR)
        for name in names:
            if name not in table.errors:
                return False, f"k={k}: pipeline {name} was not evaluated"
            if not within[name]:
                return False, f"k={k} h={helicity:+d}: {name} order {table.orders.get(name)}"
            if not _ratios_ok(table, name, settings.ratio_window):
                return False, f"k={k} h={helicity:+d}: {name} ratios {table.errors[name]}"
    return True, ""


@invariant(suite="field")
def maxwell_plane_wave_convergence(rng, settings):
    """Maxwell, potential and Weyl residuals of periodic plane waves fall as h^2 (halving ratios in [3.2, 4.8])"""
    return _check_pipelines(settings, MAXWELL_PIPELINES)


@invariant(suite="field")
def dh_null_momentum_modes(rng, settings):
    """Massless Dirac-Hestenes modes and their eight Weyl spinors converge at second order"""
    return _check_pipelines(settings, DH_PIPELINES)


@invariant(suite="field")
def constant_potential_vanishes(rng, settings):
    """Constant A gives zero E, H and L; a linear static E with rho = 1 leaves no residual"""
    lattice = Lattice.cube(4, 0.1)
    values = rng.normal(size=4)
    grid = lattice.grid({f"A{mu}": np.full(lattice.extent, values[mu]) for mu in range(4)})
    em = em_from_potential(grid)
    worst = max(max_norm(em[name]) for name in ("E1", "E2", "E3", "H1", "H2", "H3", "L"))
    if worst > settings.tolerance:
        return False, f"constant potential leaves {worst:.3e}"
    if any(v != 0.0 for v in maxwell_residuals(em).norms().values()):
        return False, "zero fields give nonzero residuals"

    c = lattice.coordinates()
    zeros = np.zeros(lattice.extent)
    static = lattice.grid({
        "E1": c["x"] / 3, "E2": c["y"] / 3, "E3": c["z"] / 3,
        "H1": zeros, "H2": zeros, "H3": zeros,
        "rho": np.ones(lattice.extent),
    })
    norms = maxwell_residuals(static).norms()
    if max(norms.values()) > settings.tolerance:
        return False, f"static field residuals {norms}"
    return True


@invariant(suite="field")
def composite_photon_identity(rng, settings):
    """EM field spinor equals the symmetric square of the Weyl amplitude up to one constant"""
    for k in NULL_MOMENTA + ((0.3, -1.1, 0.7),):
        for helicity in (1, -1):
            check = composite_photon(k, helicity)
            if check.deviation > settings.tolerance:
                return False, f"k={k} h={helicity:+d}: deviation {check.deviation:.3e}"
    return True


@invariant(suite="field")
def chirality_separation(rng, settings):
    """D (P+ phi g21) = P- D(phi g21) at every point of a random spinor field"""
    lattice = Lattice.cube(4, 0.2)
    shape = lattice.extent
    grid = lattice.grid({
        f"phi{i}": rng.normal(size=shape) + 1j * rng.normal(size=shape) for i in (1, 2, 3, 4)
    })
    right = dh_field(grid) @ gamma21().to_numpy()
    p_plus, p_minus = (p.to_numpy() for p in helicity_projectors())
    lhs = dirac_apply(grid, p_plus @ right)
    rhs = p_minus @ dirac_apply(grid, right)
    gap = max_norm(lhs - rhs)
    if gap > settings.tolerance * max(1.0, max_norm(rhs)):
        return False, f"projector commutation gap {gap:.3e}"
    return True
