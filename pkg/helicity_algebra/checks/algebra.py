"""
Algebra suite
Product laws, involutions, central idempotents and the quotient map
"""
from helicity_algebra.algebra import (
    C3,
    C5,
    CL13,
    CL30,
    CL41,
    Multivector,
    Signature,
    central_form,
    commutator,
    grade_involution,
    random_multivector,
    reversion,
    volume_element,
)
from helicity_algebra.decomposition import (
    MINUS,
    PLUS,
    central_idempotents,
    decompose,
    epsilon_for,
    ideal_basis_rank,
    quotient_map,
)
from helicity_algebra.coefficients import GAUSSIAN
from helicity_algebra.registry import invariant

_PRODUCT_SIGNATURES = (
    Signature.complex(2),
    C3,
    Signature.complex(4),
    C5,
    CL30,
    CL13,
    CL41,
)


@invariant(suite="algebra")
def associativity(rng, settings):
    """(ab)c = a(bc) on random exact elements of C2..C5, Cl(3,0), Cl(1,3) and Cl(4,1)"""
    for sig in _PRODUCT_SIGNATURES:
        for _ in range(5):
            a, b, c = (random_multivector(sig, rng, density=0.5) for _ in range(3))
            if (a * b) * c != a * (b * c):
                return False, f"associativity fails in {sig}"
    return True


@invariant(suite="algebra")
def involution_laws(rng, settings):
    """
    Reversion reverses products, grade involution preserves them,
    pseudo-conjugation is involutive
    """
    for sig in (C3, CL13, C5):
        for _ in range(10):
            a, b = random_multivector(sig, rng, density=0.6), random_multivector(sig, rng, density=0.6)
            if reversion(a * b) != reversion(b) * reversion(a):
                return False, f"reversion is not an antiautomorphism in {sig}"
            if grade_involution(a * b) != grade_involution(a) * grade_involution(b):
                return False, f"grade involution is not an automorphism in {sig}"
            if a.conjugate().conjugate() != a:
                return False, f"pseudo-conjugation is not involutive in {sig}"
            if (a * b).conjugate() != a.conjugate() * b.conjugate():
                return False, f"pseudo-conjugation is not multiplicative in {sig}"
    return True


@invariant(suite="algebra")
def omega_square_sign(rng, settings):
    """omega^2 = (-1)^(n(n-1)/2) in C_n for n = 1..6"""
    for n in range(1, 7):
        sig = Signature.complex(n)
        omega = volume_element(sig)
        expected = -1 if (n * (n - 1) // 2) % 2 else 1
        if omega * omega != Multivector.scalar(sig, expected):
            return False, f"omega^2 in C{n} is {omega * omega}"
    return True


@invariant(suite="algebra")
def volume_element_center(rng, settings):
    """omega commutes with every blade for odd n, and with the even blades of Cl(1,3)"""
    for n in (3, 5):
        sig = Signature.complex(n)
        omega = volume_element(sig)
        for mask in range(1 << n):
            if not commutator(omega, Multivector(sig, {mask: 1})).is_zero():
                return False, f"omega of C{n} does not commute with blade {mask:b}"
    omega = volume_element(CL13)
    for mask in range(1 << 4):
        if mask.bit_count() % 2 == 0 and not commutator(omega, Multivector(CL13, {mask: 1})).is_zero():
            return False, f"gamma0123 does not commute with even blade {mask:b}"
    return True


@invariant(suite="algebra")
def idempotent_laws(rng, settings):
    """lambda+- are complementary central idempotents for n = 3, 5, 7, 9"""
    for n in (3, 5, 7, 9):
        report = decompose(n)
        failed = [name for name, ok in report.laws.items() if not ok]
        if failed:
            return False, f"C{n}: {', '.join(failed)}"
    return True


@invariant(suite="algebra")
def conjugation_swap_rule(rng, settings):
    """Pseudo-conjugation swaps lambda+- exactly when epsilon = i"""
    for n in (3, 5, 7, 9):
        swaps = central_idempotents(n).conjugation_swaps()
        if swaps != (epsilon_for(n) == GAUSSIAN.i):
            return False, f"C{n}: swap={swaps}"
    return True


@invariant(suite="algebra")
def quotient_homomorphism(rng, settings):
    """quotient_map(xy) = quotient_map(x) quotient_map(y) on 200 ideal pairs per algebra"""
    for n, sig in ((3, C3), (5, C5)):
        pair = central_idempotents(n)
        for side in (PLUS, MINUS):
            lam = pair.get(side)
            if not (quotient_map(lam, side) - Multivector.scalar(Signature.complex(n - 1))).is_zero():
                return False, f"C{n} {side}: lambda does not map to 1"
            for _ in range(100):
                x = lam * random_multivector(sig, rng, density=0.4)
                y = lam * random_multivector(sig, rng, density=0.4)
                if quotient_map(x * y, side) != quotient_map(x, side) * quotient_map(y, side):
                    return False, f"C{n} {side}: product not preserved"
    return True


@invariant(suite="algebra")
def ideal_rank_halving(rng, settings):
    """Quotient images of the ideal basis span exactly 2^(n-1) elements"""
    for n in (3, 5):
        for side in (PLUS, MINUS):
            rank = ideal_basis_rank(n, side)
            if rank != 1 << (n - 1):
                return False, f"C{n} {side}: rank {rank}"
    return True


@invariant(suite="algebra")
def central_form_reversion(rng, settings):
    """Reversion of sum (a + omega b) e_i negates every omega part"""
    for _ in range(20):
        x = random_multivector(C3, rng)
        form = central_form(x)
        if form.expand() != x or form.reverse().expand() != reversion(x):
            return False, f"central form mismatch for {x}"
    return True
