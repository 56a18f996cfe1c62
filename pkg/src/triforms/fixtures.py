"""Named fixture forms used by the CLI examples and the test corpus."""

from __future__ import annotations

from .biquadratic import incidence_form
from .domains import ZZ, Domain
from .poly import VARS_XYZ, MultiPoly


def fermat(n: int, domain: Domain = ZZ) -> MultiPoly:
    """x^n + y^n + z^n."""
    one = domain.one()
    return MultiPoly(
        domain, VARS_XYZ, {(n, 0, 0): one, (0, n, 0): one, (0, 0, n): one}
    )


def coordinate_triangle(domain: Domain = ZZ) -> MultiPoly:
    """xyz, singular at the three coordinate points."""
    return MultiPoly(domain, VARS_XYZ, {(1, 1, 1): domain.one()})


def diagonal_22_same(domain: Domain = ZZ) -> MultiPoly:
    """x1^2 z1^2 + x2^2 z2^2 + x3^2 z3^2."""
    one = domain.one()
    return MultiPoly(
        domain,
        ("x1", "x2", "x3", "z1", "z2", "z3"),
        {(2, 0, 0, 2, 0, 0): one, (0, 2, 0, 0, 2, 0): one, (0, 0, 2, 0, 0, 2): one},
    )


def diagonal_22_cycle(domain: Domain = ZZ) -> MultiPoly:
    """x1^2 z2^2 + x2^2 z3^2 + x3^2 z1^2."""
    one = domain.one()
    return MultiPoly(
        domain,
        ("x1", "x2", "x3", "z1", "z2", "z3"),
        {(2, 0, 0, 0, 2, 0): one, (0, 2, 0, 0, 0, 2): one, (0, 0, 2, 2, 0, 0): one},
    )


def sigma_squared(domain: Domain = ZZ) -> MultiPoly:
    """(x1 z1 + x2 z2 + x3 z3)^2, a canonical ideal element."""
    sigma = incidence_form(domain)
    return sigma * sigma


def weierstrass_cubic(a: int, b: int, domain: Domain = ZZ) -> MultiPoly:
    """y^2 z - x^3 - a x z^2 - b z^3."""
    return MultiPoly(
        domain,
        VARS_XYZ,
        {
            (0, 2, 1): domain.one(),
            (3, 0, 0): domain.neg(domain.one()),
            (1, 0, 2): domain.neg(domain.from_int(a)),
            (0, 0, 3): domain.neg(domain.from_int(b)),
        },
    )
