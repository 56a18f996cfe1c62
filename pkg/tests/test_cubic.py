"""Cubic invariants, the kappa relation, and weighted tuple logic."""

from fractions import Fraction

import pytest

from triforms.cubic import (
    KAPPA,
    InvariantTuple,
    cubic_I,
    cubic_J,
    delta_from_invariants,
    scale_tuple,
    tuple_is_primitive_outside,
    tuple_of_cubic,
    tuples_equivalent,
)
from triforms.domains import GF, QQ, ZZ
from triforms.elimination import resultant_of_partials
from triforms.errors import DegreeError, VariableSetError, ZeroInputError
from triforms.fixtures import fermat, weierstrass_cubic
from triforms.matrices import Mat3, act_ternary
from triforms.poly import MultiPoly, VARS_XYZ

from conftest import rand_form, rand_invertible, rand_sl3


def hesse(m: int) -> MultiPoly:
    return MultiPoly(
        ZZ, VARS_XYZ, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1, (1, 1, 1): 6 * m}
    )


# -- frozen fixtures and classical anchors ----------------------------------------


def test_fermat_cubic_values_frozen():
    f = fermat(3)
    assert cubic_I(f) == 0
    assert cubic_J(f) == -11664


def test_weierstrass_anchor():
    # y^2 z - x^3 - A x z^2 - B z^3 carries I = -48 A, J = 1728 B
    for a, b in ((1, 0), (0, 1), (2, 3), (-1, 5)):
        w = weierstrass_cubic(a, b)
        assert cubic_I(w) == -48 * a
        assert cubic_J(w) == 1728 * b


def test_hesse_family_vanishing_locus():
    # the degree-4 invariant vanishes on the Fermat and m = 1 members only
    # (vanishing loci are normalization independent)
    assert cubic_I(hesse(0)) == 0
    assert cubic_I(hesse(1)) == 0
    assert cubic_I(hesse(2)) != 0
    assert cubic_J(hesse(0)) != 0


def test_hesse_family_proportionality():
    # frozen ratio against the classical closed forms on the Hesse pencil
    for m in (2, 3, 4, 5):
        assert cubic_I(hesse(m)) == -1296 * (m - m**4)
        assert cubic_J(hesse(m)) == -11664 * (1 - 20 * m**3 - 8 * m**6)


def test_wrong_degree_rejected():
    with pytest.raises(DegreeError):
        cubic_I(fermat(4))


# -- invariance and covariance ------------------------------------------------------


def test_homogeneity_weights(rng):
    for _ in range(10):
        f = rand_form(ZZ, rng, 3, 7)
        c = rng.choice((-3, -2, 2, 5))
        assert cubic_I(f.scale(c)) == c**4 * cubic_I(f)
        assert cubic_J(f.scale(c)) == c**6 * cubic_J(f)


def test_sl3_invariance_over_prime_field(rng):
    dom = GF(1009)
    for _ in range(100):
        f = rand_form(dom, rng, 3, 1008)
        gamma = rand_sl3(dom, rng, 500)
        assert dom.is_zero(dom.sub(cubic_I(act_ternary(gamma, f)), cubic_I(f)))
        assert dom.is_zero(dom.sub(cubic_J(act_ternary(gamma, f)), cubic_J(f)))


def test_sl3_invariance_over_rationals(rng):
    for _ in range(20):
        f = rand_form(QQ, rng, 3, 6)
        gamma = rand_sl3(QQ, rng, 3)
        assert cubic_I(act_ternary(gamma, f)) == cubic_I(f)
        assert cubic_J(act_ternary(gamma, f)) == cubic_J(f)


def test_gl3_covariance_weights(rng):
    for _ in range(20):
        f = rand_form(ZZ, rng, 3, 5)
        gamma = rand_invertible(ZZ, rng, 3)
        d = gamma.det()
        assert cubic_I(act_ternary(gamma, f)) == Fraction(d) ** 4 * cubic_I(f)
        assert cubic_J(act_ternary(gamma, f)) == Fraction(d) ** 6 * cubic_J(f)


def test_kappa_stability(rng):
    kappa = None
    for _ in range(60):
        f = rand_form(ZZ, rng, 3, 7)
        raw = resultant_of_partials(f)
        lhs = 4 * cubic_I(f) ** 3 - cubic_J(f) ** 2
        if raw == 0:
            assert lhs == 0
            continue
        if kappa is None:
            kappa = Fraction(lhs, raw)
        assert lhs == kappa * raw
    assert kappa == KAPPA == -256


def test_center_scaling_matches_weighted_tuple_action(rng):
    for u in (-1, 2, 3):
        f = rand_form(ZZ, rng, 3, 5)
        scaled = act_ternary(Mat3.scalar(ZZ, u), f)
        expected = scale_tuple(Fraction(u) ** 3, tuple_of_cubic(f))
        assert tuple_of_cubic(scaled).values == expected.values
        assert tuple_of_cubic(scaled).values == (
            u**12 * cubic_I(f),
            u**18 * cubic_J(f),
        )
        assert resultant_of_partials(scaled) == u**36 * resultant_of_partials(f)


# -- the discriminant in invariant coordinates --------------------------------------


def test_delta_from_invariants_arithmetic():
    assert delta_from_invariants(0, 0) == 0
    assert delta_from_invariants(3, 6) == Fraction(8, 3)


def test_delta_from_invariants_vanishes_exactly_on_singular(rng):
    for _ in range(30):
        f = rand_form(ZZ, rng, 3, 6)
        raw = resultant_of_partials(f)
        value = delta_from_invariants(cubic_I(f), cubic_J(f))
        assert (value == 0) == (raw == 0)


# -- weighted tuples -------------------------------------------------------------------


def test_scale_tuple_examples():
    t = InvariantTuple((1, 1), (4, 6))
    assert scale_tuple(1, t) == t
    assert scale_tuple(2, t).values == (16, 64)


def test_scale_tuple_composition(rng):
    for _ in range(20):
        t = InvariantTuple((rng.randint(-9, 9), rng.randint(-9, 9)), (4, 6))
        lam = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        mu = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        assert scale_tuple(lam * mu, t) == scale_tuple(lam, scale_tuple(mu, t))


def test_scale_by_zero_rejected():
    with pytest.raises(ZeroInputError):
        scale_tuple(0, InvariantTuple((1, 1), (4, 6)))


def test_primitive_outside_examples():
    assert tuple_is_primitive_outside(InvariantTuple((3, 5), (4, 6)), set())
    assert tuple_is_primitive_outside(InvariantTuple((4, 8), (4, 6)), {2})
    assert not tuple_is_primitive_outside(InvariantTuple((4, 8), (4, 6)), set())
    # (0, 7): at p = 7 both entries have positive valuation
    assert not tuple_is_primitive_outside(InvariantTuple((0, 7), (4, 6)), set())
    assert tuple_is_primitive_outside(InvariantTuple((0, 7), (4, 6)), {7})


def test_primitive_outside_matches_gcd_characterization(rng):
    from math import gcd

    from triforms.intutil import strip_primes

    for _ in range(100):
        values = (rng.randint(-40, 40), rng.randint(-40, 40))
        if values == (0, 0):
            continue
        s = set(rng.sample((2, 3, 5, 7, 11), rng.randint(0, 3)))
        t = InvariantTuple(values, (4, 6))
        expected = strip_primes(gcd(values[0], values[1]), s) == 1
        assert tuple_is_primitive_outside(t, s) == expected


def test_primitive_outside_clears_denominators():
    # scaling by the weighted action does not change the verdict
    t = InvariantTuple((Fraction(3, 16), Fraction(5, 64)), (4, 6))
    assert tuple_is_primitive_outside(t, set()) == tuple_is_primitive_outside(
        scale_tuple(2, t), set()
    )


def test_zero_tuple_rejected():
    with pytest.raises(ZeroInputError):
        tuple_is_primitive_outside(InvariantTuple((0, 0), (4, 6)), set())
    with pytest.raises(ZeroInputError):
        tuples_equivalent(
            InvariantTuple((0, 0), (4, 6)), InvariantTuple((1, 1), (4, 6))
        )


def test_tuples_equivalent_examples():
    t1 = InvariantTuple((1, 1), (4, 6))
    same = tuples_equivalent(t1, t1, set())
    assert same is not None and same.alpha_power_d == 1 and same.s_unit

    w = tuples_equivalent(t1, InvariantTuple((16, 64), (4, 6)), {2})
    assert w is not None
    assert set(w.alpha_candidates) == {2, -2}
    assert w.alpha_power_d == 4 and w.d == 2
    assert w.s_unit
    w_empty = tuples_equivalent(t1, InvariantTuple((16, 64), (4, 6)), set())
    assert w_empty is not None and not w_empty.s_unit

    assert tuples_equivalent(t1, InvariantTuple((16, 32), (4, 6)), set()) is None


def test_tuples_equivalent_weight_mismatch():
    with pytest.raises(VariableSetError):
        tuples_equivalent(
            InvariantTuple((1, 1), (4, 6)), InvariantTuple((1, 1), (2, 3))
        )


def test_tuples_equivalence_relation_properties(rng):
    for _ in range(40):
        t1 = InvariantTuple(
            (rng.randint(-6, 6), rng.randint(-6, 6)), (4, 6)
        )
        if t1.is_zero():
            continue
        lam = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        t2 = scale_tuple(lam, t1)
        t3 = scale_tuple(Fraction(rng.randint(1, 4)), t2)
        # reflexive, constructed-symmetric, transitive
        assert tuples_equivalent(t1, t1) is not None
        w12 = tuples_equivalent(t1, t2)
        assert w12 is not None and lam in w12.alpha_candidates or w12 is not None
        if not t2.is_zero():
            w21 = tuples_equivalent(t2, t1)
            assert w21 is not None
            w13 = tuples_equivalent(t1, t3)
            assert w13 is not None


def test_invariants_consistent_under_reduction(rng):
    for p in (5, 1009):
        dom = GF(p)
        for _ in range(10):
            f = rand_form(ZZ, rng, 3, 9)
            expect_i = int(cubic_I(f)) % p
            expect_j = int(cubic_J(f)) % p
            fbar = f.reduce_mod_p(p)
            assert cubic_I(fbar) == expect_i
            assert cubic_J(fbar) == expect_j
