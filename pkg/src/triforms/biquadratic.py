"""Bidegree-(2,2) forms modulo the incidence ideal, and their covariants.

The space of bihomogeneous (2,2) forms in (x1, x2, x3, z1, z2, z3) is
36-dimensional; the 9-dimensional subspace of multiples of the incidence
form sigma = x1 z1 + x2 z2 + x3 z3 by (1,1) forms is quotiented out.  A
class is stored as the unique reduction of its coset against a fixed
echelonized basis of {sigma * xi zj} (Hermite normal form over the
integers), under graded-lex monomial order; two inputs are congruent
exactly when they canonicalize identically.

A representative f is a quadratic form in either block: f = (x) G (x)^t
with G symmetric and quadratic in z, and symmetrically for the z-block
(``gram_matrices`` names the two matrices by their contraction block).
Contracting the adjugate of each Gram matrix with the *other* block's
variables produces two sextic covariants,

    sextic_covariant_x(f) = (x) Adj(gram_z) (x)^t      (sextic in x),
    sextic_covariant_z(f) = (z) Adj(gram_x) (z)^t      (sextic in z).

These are independent of the coset representative and satisfy exact
covariance laws under the twisted action; both facts are verified by the
test suite, symbolically and on random samples.

Over a finite field of odd characteristic, a point of the projective plane
lies on the branch locus of the corresponding projection exactly when the
fiber line is tangent to the fiber conic; the restricted-discriminant test
and the exhaustive branch-locus scan below implement that oracle, and the
genericity test combines covariant smoothness with a degenerate-fiber
search over F_p and F_{p^2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from .domains import QQ, ZZ, Domain, PrimeField
from .errors import (
    DegreeError,
    DegeneratePointError,
    DomainMismatchError,
    PrimeError,
    SingularMatrixError,
    VariableSetError,
    ZeroInputError,
)
from .finitefield import QuadExtension, projective_points_prime, ternary_zeros_ext
from .matrices import Mat3, block_substitution
from .poly import VARS_BIQUAD, MultiPoly, _monomial_key

X_BLOCK = ("x1", "x2", "x3")
Z_BLOCK = ("z1", "z2", "z3")
X_TERNARY = X_BLOCK
Z_TERNARY = Z_BLOCK


def incidence_form(domain: Domain, variables=VARS_BIQUAD) -> MultiPoly:
    """sigma = x1 z1 + x2 z2 + x3 z3 over the given variable set."""
    variables = tuple(variables)
    one = domain.one()
    terms = {}
    for xi, zi in zip(X_BLOCK, Z_BLOCK):
        exps = [0] * len(variables)
        exps[variables.index(xi)] += 1
        exps[variables.index(zi)] += 1
        terms[tuple(exps)] = one
    return MultiPoly(domain, variables, terms)


def _check_22(f: MultiPoly):
    if f.vars != VARS_BIQUAD:
        raise VariableSetError(f"expected variables {VARS_BIQUAD}")
    if not f.is_zero() and f.bidegree(X_BLOCK, Z_BLOCK) != (2, 2):
        raise DegreeError("expected a bihomogeneous (2,2) form")


# 36 monomials of bidegree (2,2), graded-lex order, with index maps.
_MONOMIALS_22: list[tuple[int, ...]] = []


def _build_monomials_22():
    out = []
    for a1 in range(3):
        for a2 in range(3 - a1):
            a3 = 2 - a1 - a2
            for b1 in range(3):
                for b2 in range(3 - b1):
                    b3 = 2 - b1 - b2
                    out.append((a1, a2, a3, b1, b2, b3))
    out.sort(key=_monomial_key)
    return out


_MONOMIALS_22 = _build_monomials_22()
_MONO_INDEX_22 = {m: i for i, m in enumerate(_MONOMIALS_22)}

# (i, j) order of the multiplier monomials xi zj for the ideal basis rows
_MULTIPLIERS_11 = [(i, j) for i in range(3) for j in range(3)]


def _ideal_rows(domain: Domain):
    """Coefficient rows of sigma * xi zj in the 36-monomial basis."""
    rows = []
    sigma = incidence_form(domain)
    for i, j in _MULTIPLIERS_11:
        exps = [0] * 6
        exps[i] += 1
        exps[3 + j] += 1
        mono = MultiPoly(domain, VARS_BIQUAD, {tuple(exps): domain.one()})
        prod = sigma * mono
        row = [domain.zero()] * 36
        for e, c in prod.terms.items():
            row[_MONO_INDEX_22[e]] = c
        rows.append(row)
    return rows


_REDUCTION_CACHE: dict = {}


def _reduction_data(domain: Domain):
    """Echelon (fields) or Hermite (ZZ) basis with multiplier tracking.

    Returns a list of (pivot_column, row36, multiplier9) triples: row36 is a
    reduced ideal-basis vector and multiplier9 expresses it as a combination
    of the original sigma * xi zj generators.
    """
    key = domain
    if key in _REDUCTION_CACHE:
        return _REDUCTION_CACHE[key]
    rows = _ideal_rows(domain)
    aug = [row + [domain.one() if k == r else domain.zero() for k in range(9)]
           for r, row in enumerate(rows)]
    pivots = []
    if domain.is_field:
        r = 0
        for col in range(36):
            piv = next((i for i in range(r, len(aug)) if not domain.is_zero(aug[i][col])), None)
            if piv is None:
                continue
            aug[r], aug[piv] = aug[piv], aug[r]
            inv = domain.inv(aug[r][col])
            aug[r] = [domain.mul(inv, v) for v in aug[r]]
            for i in range(len(aug)):
                if i != r and not domain.is_zero(aug[i][col]):
                    c = aug[i][col]
                    aug[i] = [domain.sub(a, domain.mul(c, b)) for a, b in zip(aug[i], aug[r])]
            pivots.append((col, r))
            r += 1
            if r == len(aug):
                break
    elif domain == ZZ:
        r = 0
        for col in range(36):
            while True:
                live = [i for i in range(r, len(aug)) if aug[i][col] != 0]
                if not live:
                    break
                if len(live) == 1:
                    i = live[0]
                    aug[r], aug[i] = aug[i], aug[r]
                    break
                live.sort(key=lambda i: abs(aug[i][col]))
                i0 = live[0]
                for i in live[1:]:
                    q = aug[i][col] // aug[i0][col]
                    aug[i] = [a - q * b for a, b in zip(aug[i], aug[i0])]
            if aug[r][col] != 0:
                if aug[r][col] < 0:
                    aug[r] = [-v for v in aug[r]]
                h = aug[r][col]
                for i in range(r):
                    q = aug[i][col] // h
                    if q:
                        aug[i] = [a - q * b for a, b in zip(aug[i], aug[r])]
                pivots.append((col, r))
                r += 1
                if r == len(aug):
                    break
    else:
        raise DomainMismatchError(f"no canonical reduction over {domain.name}")
    data = [(col, aug[r][:36], aug[r][36:]) for col, r in pivots]
    _REDUCTION_CACHE[key] = data
    return data


def _vector_of(f: MultiPoly):
    row = [f.domain.zero()] * 36
    for e, c in f.terms.items():
        row[_MONO_INDEX_22[e]] = c
    return row


def _poly_of(vector, domain):
    terms = {}
    for idx, c in enumerate(vector):
        if not domain.is_zero(c):
            terms[_MONOMIALS_22[idx]] = c
    return MultiPoly(domain, VARS_BIQUAD, terms)


def _reduce_vector(vector, domain):
    """Reduce against the ideal basis; returns (reduced, multiplier coeffs)."""
    data = _reduction_data(domain)
    v = list(vector)
    mult = [domain.zero()] * 9
    for col, row, tracker in data:
        c = v[col]
        if domain.is_field:
            if domain.is_zero(c):
                continue
            q = c  # pivot normalized to 1
        else:
            q = c // row[col]
            if q == 0:
                continue
        v = [domain.sub(a, domain.mul(q, b)) for a, b in zip(v, row)]
        mult = [domain.add(m, domain.mul(q, t)) for m, t in zip(mult, tracker)]
    return v, mult


class Class22:
    """A (2,2)-form class stored by its canonical representative."""

    __slots__ = ("rep",)

    def __init__(self, rep: MultiPoly):
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, name, value):
        raise AttributeError("Class22 is immutable")

    @property
    def domain(self):
        return self.rep.domain

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Class22):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        return f"Class22({self.rep!r})"

    def reduce_mod_p(self, p: int) -> "Class22":
        return canonicalize(self.rep.reduce_mod_p(p))

    def to_rationals(self) -> "Class22":
        return canonicalize(self.rep.to_rationals())


def canonicalize(f: MultiPoly) -> Class22:
    """The canonical coset representative of f modulo the incidence ideal."""
    _check_22(f)
    reduced, _ = _reduce_vector(_vector_of(f), f.domain)
    return Class22(_poly_of(reduced, f.domain))


def ideal_multiplier(f: MultiPoly) -> MultiPoly | None:
    """The (1,1) form L with f = L * sigma, or None when f is not in the ideal."""
    _check_22(f)
    dom = f.domain
    reduced, mult = _reduce_vector(_vector_of(f), dom)
    if any(not dom.is_zero(c) for c in reduced):
        return None
    terms = {}
    for (i, j), c in zip(_MULTIPLIERS_11, mult):
        if not dom.is_zero(c):
            exps = [0] * 6
            exps[i] += 1
            exps[3 + j] += 1
            terms[tuple(exps)] = c
    return MultiPoly(dom, VARS_BIQUAD, terms)


def is_ideal_member(f: MultiPoly) -> bool:
    return ideal_multiplier(f) is not None


def act_22(gamma: Mat3, cls: Class22) -> Class22:
    """The twisted action: x-block by gamma, z-block by its cofactor matrix.

    Any nonzero determinant is accepted: the incidence form transforms by
    det(gamma), so the ideal is preserved and the class map stays well
    defined even when the determinant is a nonunit integer.
    """
    gamma.domain.require_same(cls.domain)
    if gamma.domain.is_zero(gamma.det()):
        raise SingularMatrixError("the twisted action needs an invertible matrix")
    moved = block_substitution(gamma, gamma.cofactor_matrix(), cls.rep)
    return canonicalize(moved)


# -- Gram matrices and sextic covariants --------------------------------------


def _halving_domain(domain: Domain) -> Domain:
    if domain == ZZ:
        return QQ
    if domain == QQ:
        return QQ
    if isinstance(domain, PrimeField):
        if domain.p == 2:
            raise PrimeError("Gram matrices need odd characteristic")
        return domain
    raise DomainMismatchError(f"no Gram matrices over {domain.name}")


def gram_in_block(f: MultiPoly, block) -> tuple:
    """Symmetric 3x3 G with f = (b1, b2, b3) G (b1, b2, b3)^t for the block.

    Entries are polynomials over f's full variable set with the block
    exponents removed; off-diagonal entries are half the mixed coefficients,
    so the domain must admit exact halving.
    """
    dom = f.domain
    idx = [f.vars.index(b) for b in block]
    zero = MultiPoly.zero(dom, f.vars)
    entries = [[zero for _ in range(3)] for _ in range(3)]

    def add_term(i, j, exps, coeff):
        mono = MultiPoly(dom, f.vars, {tuple(exps): coeff})
        entries[i][j] = entries[i][j] + mono

    for exps, coeff in f.terms.items():
        block_exps = [exps[k] for k in idx]
        if sum(block_exps) != 2:
            raise DegreeError("form is not quadratic in the chosen block")
        rest = list(exps)
        for k in idx:
            rest[k] = 0
        hot = [i for i, e in enumerate(block_exps) if e]
        if len(hot) == 1:
            add_term(hot[0], hot[0], rest, coeff)
        else:
            half = dom.halve(coeff)
            add_term(hot[0], hot[1], rest, half)
            add_term(hot[1], hot[0], rest, half)
    return tuple(tuple(row) for row in entries)


def poly_matrix_adjugate(m) -> tuple:
    """Adjugate of a 3x3 matrix of polynomials."""

    def minor2(p, q, r, s):
        return p * s - q * r

    return (
        (minor2(m[1][1], m[1][2], m[2][1], m[2][2]),
         -minor2(m[0][1], m[0][2], m[2][1], m[2][2]),
         minor2(m[0][1], m[0][2], m[1][1], m[1][2])),
        (-minor2(m[1][0], m[1][2], m[2][0], m[2][2]),
         minor2(m[0][0], m[0][2], m[2][0], m[2][2]),
         -minor2(m[0][0], m[0][2], m[1][0], m[1][2])),
        (minor2(m[1][0], m[1][1], m[2][0], m[2][1]),
         -minor2(m[0][0], m[0][1], m[2][0], m[2][1]),
         minor2(m[0][0], m[0][1], m[1][0], m[1][1])),
    )


def contract_with_block(m, f_vars, block, domain) -> MultiPoly:
    """(b) m (b)^t for the block variables."""
    total = MultiPoly.zero(domain, f_vars)
    bvars = [MultiPoly.variable(domain, f_vars, b) for b in block]
    for i in range(3):
        for j in range(3):
            total = total + bvars[i] * bvars[j] * m[i][j]
    return total


@dataclass(frozen=True)
class GramPair:
    """Gram matrices of a representative, named by their contraction block."""

    in_x: tuple  # f = (x) in_x (x)^t; entries quadratic in z
    in_z: tuple  # f = (z) in_z (z)^t; entries quadratic in x


def gram_matrices(f) -> GramPair:
    rep = f.rep if isinstance(f, Class22) else f
    dom = _halving_domain(rep.domain)
    if dom != rep.domain:
        rep = rep.to_rationals()
    return GramPair(
        in_x=gram_in_block(rep, X_BLOCK),
        in_z=gram_in_block(rep, Z_BLOCK),
    )


def _covariant(rep: MultiPoly, own_block, other_block) -> MultiPoly:
    dom = _halving_domain(rep.domain)
    if dom != rep.domain:
        rep = rep.to_rationals()
    gram = gram_in_block(rep, other_block)
    adj = poly_matrix_adjugate(gram)
    return contract_with_block(adj, rep.vars, own_block, dom)


def sextic_covariant_x(f, x_block=X_BLOCK, z_block=Z_BLOCK) -> MultiPoly:
    """(x) Adj(G) (x)^t for G the Gram matrix in the z-block; sextic in x."""
    rep = f.rep if isinstance(f, Class22) else f
    return _covariant(rep, x_block, z_block)


def sextic_covariant_z(f, x_block=X_BLOCK, z_block=Z_BLOCK) -> MultiPoly:
    """(z) Adj(G) (z)^t for G the Gram matrix in the x-block; sextic in z."""
    rep = f.rep if isinstance(f, Class22) else f
    return _covariant(rep, z_block, x_block)


def covariant_x_ternary(f) -> MultiPoly:
    """sextic_covariant_x as an honest ternary form in (x1, x2, x3)."""
    return sextic_covariant_x(f).restrict_to_vars(X_TERNARY)


def covariant_z_ternary(f) -> MultiPoly:
    return sextic_covariant_z(f).restrict_to_vars(Z_TERNARY)


def verify_well_defined(f: MultiPoly, L: MultiPoly, x_block=X_BLOCK, z_block=Z_BLOCK) -> bool:
    """Covariants agree on f and f + L*sigma computed from raw representatives.

    Works over any variable superset of the two blocks, so L (and f) may
    carry extra indeterminate coefficient variables.
    """
    f.domain.require_same(L.domain)
    if f.vars != L.vars:
        raise VariableSetError("f and L must share a variable set")
    sigma = incidence_form(f.domain, f.vars)
    shifted = f + L * sigma
    same_x = _covariant(f, x_block, z_block) == _covariant(shifted, x_block, z_block)
    same_z = _covariant(f, z_block, x_block) == _covariant(shifted, z_block, x_block)
    return same_x and same_z


# -- tangency, branch locus, genericity over F_p -------------------------------


def _require_odd_prime_class(f) -> tuple[Class22, PrimeField]:
    cls = f if isinstance(f, Class22) else canonicalize(f)
    dom = cls.domain
    if not isinstance(dom, PrimeField):
        raise DomainMismatchError("finite-field scan needs a prime-field class")
    if dom.p == 2:
        raise PrimeError("tangency tests need odd characteristic")
    return cls, dom


def _eval_entry(entry: MultiPoly, assignment: dict, field: PrimeField) -> int:
    p = field.p
    acc = 0
    for exps, coeff in entry.terms.items():
        term = coeff
        for name, e in zip(entry.vars, exps):
            if e:
                term = term * pow(assignment[name], e, p) % p
        acc = (acc + term) % p
    return acc


def _scalar_conic(cls: Class22, point, side: str):
    """3x3 scalar Gram of the fiber conic over an F_p point of one plane."""
    field = cls.domain
    grams = gram_matrices(cls)
    if side == "x":
        gram = grams.in_z  # entries quadratic in x: evaluate at the x-point
        names = X_BLOCK
    elif side == "z":
        gram = grams.in_x
        names = Z_BLOCK
    else:
        raise ValueError("side must be 'x' or 'z'")
    assignment = {name: int(v) % field.p for name, v in zip(names, point)}
    for other in (Z_BLOCK if side == "x" else X_BLOCK):
        assignment[other] = 0  # entries do not involve these, but be total
    return [[_eval_entry(gram[i][j], assignment, field) for j in range(3)] for i in range(3)]


def tangency_test(f, point, side: str = "x"):
    """Restricted discriminant of the fiber conic on the fiber line.

    The line sum(a_i w_i) = 0 is solved for the largest-index nonzero
    coordinate of ``point``; the conic restricted to the remaining two
    parameters is alpha s^2 + beta s t + gamma t^2, and the returned value
    is beta^2 - 4 alpha gamma in F_p.  ``degenerate`` reports the restricted
    form vanishing identically (the fiber contains the whole line).
    """
    cls, field = _require_odd_prime_class(f)
    p = field.p
    a = [int(v) % p for v in point]
    if all(v == 0 for v in a):
        raise ZeroInputError("projective point must be nonzero")
    m = _scalar_conic(cls, a, side)
    pivot = max(i for i in range(3) if a[i])
    params = [i for i in range(3) if i != pivot]
    inv = pow(a[pivot], p - 2, p)
    # w_{param k} = e_k - (a_k / a_pivot) e_pivot
    vecs = []
    for k in params:
        vec = [0, 0, 0]
        vec[k] = 1
        vec[pivot] = (-a[k] * inv) % p
        vecs.append(vec)

    def form(u, v):
        return sum(u[i] * m[i][j] * v[j] for i in range(3) for j in range(3)) % p

    alpha = form(vecs[0], vecs[0])
    gamma = form(vecs[1], vecs[1])
    beta = 2 * form(vecs[0], vecs[1]) % p
    disc = (beta * beta - 4 * alpha * gamma) % p
    degenerate = alpha == 0 and beta == 0 and gamma == 0
    return disc, degenerate


@dataclass(frozen=True)
class BranchLocusReport:
    prime: int
    points_checked: int
    pairing: dict
    counterexamples: tuple

    @property
    def consistent(self) -> bool:
        return not self.counterexamples

    def to_json_dict(self) -> dict:
        return {
            "prime": self.prime,
            "points_checked": self.points_checked,
            "pairing": dict(self.pairing),
            "counterexamples": [
                {"side": side, "point": list(point), "disc": disc, "covariant": cov}
                for side, point, disc, cov in self.counterexamples
            ],
            "consistent": self.consistent,
        }


def branch_locus_report(f) -> BranchLocusReport:
    """Exhaustive check over P^2(F_p): tangency iff covariant vanishing.

    For each point of the x-plane the restricted discriminant of the fiber
    conic must vanish exactly when the x-sextic covariant does (and the
    mirror statement for the z-plane).  A degenerate fiber aborts with the
    offending point: the projection is not a covering there.
    """
    cls, field = _require_odd_prime_class(f)
    if cls.is_zero():
        raise ZeroInputError("the zero class has no branch locus")
    p = field.p
    ix = covariant_x_ternary(cls)
    iz = covariant_z_ternary(cls)
    counterexamples = []
    checked = 0
    for side, sextic in (("x", ix), ("z", iz)):
        for point in projective_points_prime(p):
            disc, degenerate = tangency_test(cls, point, side)
            if degenerate:
                raise DegeneratePointError(
                    f"fiber over {point} on the {side}-side contains its whole line",
                    point=point,
                    side=side,
                )
            cov = sextic.evaluate([v % p for v in point])
            if (disc == 0) != (cov == 0):
                counterexamples.append((side, point, disc, cov))
            checked += 1
    pairing = {
        "x_projection_branch": "sextic_covariant_x",
        "z_projection_branch": "sextic_covariant_z",
    }
    return BranchLocusReport(
        prime=p,
        points_checked=checked,
        pairing=pairing,
        counterexamples=tuple(counterexamples),
    )


def _degenerate_scan_side(cls: Class22, side: str, ext: QuadExtension):
    """Degenerate fiber points over P^2(F_{p^2}) for one projection.

    Degenerate points lie on the vanishing of the side's sextic covariant,
    so only the covariant's zero locus is examined pointwise.
    """
    field = cls.domain
    p = field.p
    sextic = covariant_x_ternary(cls) if side == "x" else covariant_z_ternary(cls)
    if sextic.is_zero():
        raise ZeroInputError(f"{side}-side covariant vanishes identically")
    grams = gram_matrices(cls)
    gram = grams.in_z if side == "x" else grams.in_x
    names = X_BLOCK if side == "x" else Z_BLOCK
    # gram entries as integer-coefficient ternary terms in the block names
    gram_terms = [
        [
            [
                (tuple(e[cls.rep.vars.index(n)] for n in names), c)
                for e, c in gram[i][j].terms.items()
            ]
            for j in range(3)
        ]
        for i in range(3)
    ]
    sextic_terms = list(sextic.terms.items())
    zeros = ternary_zeros_ext(sextic_terms, 6, ext)
    degenerate = []
    zero = ext.zero()
    from .finitefield import evaluate_terms_ext

    for pt in zeros:
        m = [[evaluate_terms_ext(gram_terms[i][j], pt, ext) for j in range(3)] for i in range(3)]
        a = list(pt)
        pivot = max(i for i in range(3) if a[i] != zero)
        params = [i for i in range(3) if i != pivot]
        vecs = []
        for k in params:
            vec = [zero, zero, zero]
            vec[k] = a[pivot]
            vec[pivot] = ext.neg(a[k])
            vecs.append(vec)

        def qform(u, v):
            acc = zero
            for i in range(3):
                for j in range(3):
                    acc = ext.add(acc, ext.mul(ext.mul(u[i], m[i][j]), v[j]))
            return acc

        if (
            qform(vecs[0], vecs[0]) == zero
            and qform(vecs[1], vecs[1]) == zero
            and qform(vecs[0], vecs[1]) == zero
        ):
            degenerate.append(pt)
    return degenerate


def degenerate_points(f, p: int | None = None):
    """Degenerate fiber points of both projections over P^2(F_{p^2})."""
    cls, field = _require_odd_prime_class(f if p is None else _reduced(f, p))
    ext = QuadExtension(field.p)
    return {
        "x": _degenerate_scan_side(cls, "x", ext),
        "z": _degenerate_scan_side(cls, "z", ext),
    }


def _reduced(f, p: int):
    cls = f if isinstance(f, Class22) else canonicalize(f)
    if isinstance(cls.domain, PrimeField):
        return cls
    if cls.domain == ZZ:
        return cls.reduce_mod_p(p)
    raise DomainMismatchError("expected an integer or prime-field class")


def is_generic_mod_p(f, p: int) -> bool:
    """Good-shape proxy for the reduction mod p (documented as a proxy):

    (i) both sextic covariants of the reduction are nonzero and cut smooth
    plane curves over F_p-bar, and (ii) neither projection has a degenerate
    fiber point over P^2(F_p) or P^2(F_{p^2}).  Rejection is sound; the
    F_{p^2} bound on the degeneracy search is the documented approximation.
    """
    if p == 2:
        raise PrimeError("genericity test needs odd characteristic")
    from .elimination import is_smooth_mod_p

    cls = _reduced(f, p)
    if cls.is_zero():
        return False
    ix = covariant_x_ternary(cls)
    iz = covariant_z_ternary(cls)
    if ix.is_zero() or iz.is_zero():
        return False
    if not is_smooth_mod_p(ix, p) or not is_smooth_mod_p(iz, p):
        return False
    ext = QuadExtension(p)
    if _degenerate_scan_side(cls, "x", ext):
        return False
    if _degenerate_scan_side(cls, "z", ext):
        return False
    return True
