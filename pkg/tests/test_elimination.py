"""Macaulay resultants, discriminants, and good-reduction machinery.

The smoothness verdicts are checked against an independent oracle: an
exhaustive singular-point search over F_p and F_{p^2}.
"""

from fractions import Fraction

import pytest

from triforms.domains import GF, QQ, ZZ
from triforms.elimination import (
    bad_primes,
    derive_normalization_constant,
    det_bareiss,
    discriminant,
    is_smooth_mod_p,
    macaulay_resultant,
    normalization_constant,
    resultant_of_partials,
)
from triforms.errors import (
    ConstantSupportError,
    DegreeError,
    ZeroInputError,
)
from triforms.fixtures import coordinate_triangle, fermat
from triforms.matrices import Mat3, act_ternary
from triforms.poly import MultiPoly, VARS_XYZ, parse_poly

from conftest import (
    rand_form,
    rand_invertible,
    singular_points_fp,
    singular_points_fp2,
)


def test_bareiss_matches_cofactor_expansion(rng):
    for _ in range(50):
        rows = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
        expected = Mat3(ZZ, rows).det()
        assert det_bareiss([row[:] for row in rows]) == expected


def test_macaulay_matrix_is_square_at_critical_degree():
    from triforms.elimination import _plan

    for d in (1, 2, 3, 5):
        plan = _plan(d)
        nu = 3 * (d - 1) + 1
        assert plan.critical == nu
        assert len(plan.monomials) == (nu + 2) * (nu + 1) // 2
        assert len(plan.assignment) == len(plan.monomials)
        # every monomial of degree 3d-2 is divisible by some v^d
        for (which, mult), mono in zip(plan.assignment, plan.monomials):
            assert mono[which] >= d and sum(mult) == nu - d


def test_linear_resultant_is_coefficient_determinant():
    assert macaulay_resultant(*(parse_poly(v) for v in "xyz")) == 1
    assert macaulay_resultant(parse_poly("2*x"), parse_poly("y"), parse_poly("z")) == 2
    g1 = parse_poly("x + 2*y - z")
    g2 = parse_poly("3*x - y")
    g3 = parse_poly("y + 4*z")
    coeffs = Mat3(ZZ, ((1, 2, -1), (3, -1, 0), (0, 1, 4)))
    assert macaulay_resultant(g1, g2, g3) == coeffs.det()


@pytest.mark.parametrize("d", (2, 3))
def test_monomial_resultant_is_one(d):
    forms = [parse_poly(f"{v}^{d}") for v in "xyz"]
    assert macaulay_resultant(*forms) == 1


def test_resultant_multihomogeneity(rng):
    d = 2
    forms = [rand_form(ZZ, rng, d, 4) for _ in range(3)]
    base = macaulay_resultant(*forms)
    scaled = macaulay_resultant(forms[0].scale(3), forms[1], forms[2])
    assert scaled == 3 ** (d * d) * base


def test_resultant_vanishes_iff_common_zero():
    # x, y, and a form vanishing at (0:0:1)
    assert macaulay_resultant(parse_poly("x^2"), parse_poly("y^2"), parse_poly("x*z")) == 0


def test_resultant_rejects_zero_and_mixed_degrees():
    with pytest.raises(ZeroInputError):
        macaulay_resultant(MultiPoly.zero(ZZ, VARS_XYZ), parse_poly("y"), parse_poly("z"))
    with pytest.raises(DegreeError):
        macaulay_resultant(parse_poly("x^2"), parse_poly("y"), parse_poly("z"))


def test_degenerate_minor_retry_path():
    # the standard reduced minor vanishes for this triple; the unimodular
    # retry must still produce the correct value, checked by the scaling law
    g1 = parse_poly("-3*x^2 + 2*y^2 + 3*z^2")
    g2 = parse_poly("-2*x*z - 3*z^2")
    g3 = parse_poly("-2*x^2 + 2*x*z - 2*y*z")
    from triforms.elimination import _coeff_rows, _plan

    plan = _plan(2)
    minor = _coeff_rows(plan, (g1, g2, g3), plan.nonreduced, plan.nonreduced)
    assert det_bareiss([row[:] for row in minor]) == 0
    value = macaulay_resultant(g1, g2, g3)
    assert value == 49920
    assert macaulay_resultant(g1.scale(2), g2, g3) == 2**4 * value


def test_rational_resultant_clears_denominators():
    g1 = parse_poly("1/2*x^2 + y^2 - z^2", domain=QQ)
    g2 = parse_poly("x*y - 1/3*z^2", domain=QQ)
    g3 = parse_poly("x^2 + x*z", domain=QQ)
    value = macaulay_resultant(g1, g2, g3)
    scaled = macaulay_resultant(g1.scale(2), g2.scale(3), g3)
    assert scaled == 2**4 * 3**4 * value


# -- discriminants ----------------------------------------------------------------


def test_quadric_raw_discriminant():
    assert resultant_of_partials(fermat(2)) == 8


def test_coordinate_triangle_is_singular():
    assert resultant_of_partials(coordinate_triangle()) == 0


def test_pure_power_is_singular():
    assert resultant_of_partials(parse_poly("x^4")) == 0


def test_fermat_quartic_raw_value():
    # scaling law: partials are 4 v^3, so the raw value is 4^27 * Res(x^3,y^3,z^3)
    assert abs(resultant_of_partials(fermat(4))) == 2**54
    assert resultant_of_partials(fermat(4)) == 4**27 * macaulay_resultant(
        *(parse_poly(f"{v}^3") for v in "xyz")
    )


@pytest.mark.parametrize("n", (2, 3, 4))
def test_discriminant_covariance(n, rng):
    dom = GF(10007)
    for _ in range(30):
        f = rand_form(dom, rng, n, 10006)
        gamma = rand_invertible(dom, rng, 10006)
        lhs = resultant_of_partials(act_ternary(gamma, f))
        rhs = dom.mul(dom.pow(gamma.det(), n * (n - 1) ** 2), resultant_of_partials(f))
        assert lhs == rhs


@pytest.mark.parametrize("n", (2, 3, 4))
def test_discriminant_homogeneity(n, rng):
    for _ in range(10):
        f = rand_form(ZZ, rng, n, 5)
        c = rng.choice((-3, -2, 2, 3, 5))
        assert resultant_of_partials(f.scale(c)) == c ** (3 * (n - 1) ** 2) * resultant_of_partials(f)


def test_discriminant_report_consistency():
    report = discriminant(fermat(4))
    assert report.raw == report.constant * report.normalized
    assert report.degree_check == 27
    assert report.constant == 16384


def test_discriminant_rejects_low_degree_and_zero():
    with pytest.raises(DegreeError):
        discriminant(parse_poly("x + y"))
    with pytest.raises(ZeroInputError):
        discriminant(MultiPoly.zero(ZZ, VARS_XYZ))


def test_quadratic_discriminant_matches_gram_determinant(rng):
    """Independent oracle: the Gram determinant of a ternary quadratic.

    One fixed constant must relate the normalized discriminant and
    det(Gram) across all samples.
    """
    kappa = None
    for _ in range(100):
        f = rand_form(ZZ, rng, 2, 9)
        gram = Mat3(
            QQ,
            (
                (Fraction(f.coefficient((2, 0, 0))), Fraction(f.coefficient((1, 1, 0)), 2), Fraction(f.coefficient((1, 0, 1)), 2)),
                (Fraction(f.coefficient((1, 1, 0)), 2), Fraction(f.coefficient((0, 2, 0))), Fraction(f.coefficient((0, 1, 1)), 2)),
                (Fraction(f.coefficient((1, 0, 1)), 2), Fraction(f.coefficient((0, 1, 1)), 2), Fraction(f.coefficient((0, 0, 2)))),
            ),
        )
        oracle = gram.det()
        normalized = discriminant(f).normalized
        if oracle == 0:
            assert normalized == 0
            continue
        if kappa is None:
            kappa = Fraction(normalized) / oracle
        assert normalized == kappa * oracle
    assert kappa == 4


# -- smoothness over prime fields ---------------------------------------------------


def test_fermat_quartic_reduction_profile():
    assert is_smooth_mod_p(fermat(4), 2) is False
    for p in (3, 5, 7, 11, 13):
        assert is_smooth_mod_p(fermat(4), p) is True
    # cross-check at p = 5 by exhaustive singular-point search
    fbar = fermat(4).reduce_mod_p(5)
    assert singular_points_fp(fbar, 5) == []
    assert singular_points_fp2(fbar, 5) == []


def test_coordinate_triangle_singular_everywhere():
    for p in (2, 3, 5, 7):
        assert is_smooth_mod_p(coordinate_triangle(), p) is False


def test_smooth_conic_in_characteristic_two():
    # xy + z^2 has empty Jacobian locus over every field
    f = parse_poly("x*y + z^2")
    assert is_smooth_mod_p(f, 2) is True
    assert singular_points_fp(f.reduce_mod_p(2), 2) == []
    assert singular_points_fp2(f.reduce_mod_p(2), 2) == []


def test_smoothness_error_without_integer_lift():
    # a characteristic-2 conic given directly over GF(2): the raw resultant
    # vanishes identically at degree 2 and no integer fallback exists
    f = parse_poly("x*y + z^2").reduce_mod_p(2)
    with pytest.raises(ConstantSupportError):
        is_smooth_mod_p(f, 2)


def test_smoothness_mod_p_zero_form_rejected():
    with pytest.raises(ZeroInputError):
        is_smooth_mod_p(parse_poly("5*x^2 + 5*y*z"), 5)


@pytest.mark.parametrize("n", (2, 3, 4))
@pytest.mark.parametrize("p", (3, 5, 7, 11))
def test_smoothness_agrees_with_exhaustive_search(n, p, rng):
    """One-sided oracle agreement over F_p and F_{p^2}.

    A singular point over either field forces the verdict False; a True
    verdict forces an empty singular locus over both fields.
    """
    trials = 50
    for _ in range(trials):
        f = rand_form(ZZ, rng, n, 9)
        fbar = f.reduce_mod_p(p)
        if fbar.is_zero():
            continue
        verdict = is_smooth_mod_p(f, p)
        singular = singular_points_fp(fbar, p) or singular_points_fp2(fbar, p)
        if singular:
            assert verdict is False
        if verdict:
            assert not singular


def test_bad_primes_fermat_quartic():
    assert bad_primes(fermat(4), {2}) == (set(), 1)
    assert bad_primes(fermat(4), set()) == ({2}, 1)


def test_bad_primes_rejects_singular():
    with pytest.raises(ZeroInputError):
        bad_primes(coordinate_triangle(), set())


def test_bad_primes_finds_odd_primes():
    bad, cofactor = bad_primes(fermat(3), {3})
    assert bad == set() and cofactor == 1
    bad, cofactor = bad_primes(fermat(3), set())
    assert bad == {3} and cofactor == 1


# -- normalization constants ----------------------------------------------------------


def test_builtin_constants_are_reproducible():
    for n, expected in ((2, 2), (3, 27), (4, 16384)):
        cached, meta = normalization_constant(n)
        assert cached == expected
        rederived, _ = derive_normalization_constant(n, samples=24, seed=555)
        assert rederived == expected


def test_constant_divides_every_raw_value(rng):
    for n in (2, 3, 4):
        constant, _ = normalization_constant(n)
        for _ in range(10):
            f = rand_form(ZZ, rng, n, 9)
            assert resultant_of_partials(f) % constant == 0
