"""Double sextics, quartics and the maps between them.

Surfaces are stored by their defining polynomials:

* a double sextic ``y^2 = F(u, v, w)`` in ``P(1,1,1,3)``,
* a quartic ``y^2 C(u, v, w) = Q(u, v, w)`` in ``P^3``,
* its companion double sextic ``y^2 = C Q`` (the two are linked by
  ``y_sextic = C * y_quartic``),
* an alternate elliptic surface ``Y^2 Z = X (X^2 + a4 X Z + b8 Z^2)``.

Verifying a rational map means pulling back the defining polynomial of the
target, reducing modulo the double-cover relation of the source when there
is one, and checking exact divisibility by the source polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import gcd
from typing import Callable

from .instances import (
    ForcedInstance,
    RandomSource,
    binary_form,
    forced_instance,
    normalize_key,
    rank10_quartic_data,
    ternary_form,
    ORDER_TABLE,
)
from .poly_engine import (
    DomainError,
    MultiPoly,
    RationalFunction,
    RationalMap,
    gcd_free_basis,
    reduce_double_cover,
    resultant,
    squarefree_part,
    substitute,
    univariate_gcd,
    var,
)
from .poly_engine import _univariate_parts, _yun

__all__ = [
    "DoubleSexticModel",
    "QuarticModel",
    "SprimeModel",
    "AlternateSurface",
    "DelPezzoModel",
    "GenericityError",
    "SearchFailure",
    "MapVerification",
    "SingularLocusReport",
    "MapCase",
    "MAP_CATALOG",
    "linear_system",
    "del_pezzo_model",
    "del_pezzo_residual",
    "general_position_problems",
    "random_plane_points",
    "integral_point",
    "build_S_rank9",
    "build_S_HN",
    "build_S_rank10",
    "build_S_canonical",
    "build_K",
    "build_Sprime",
    "quartic_from_instance",
    "canonical_from_instance",
    "derive_prime_parameters",
    "params_rank11_residual",
    "verify_map",
    "is_projective_identity",
    "verify_shift_rules",
    "relats_coefficients",
    "verify_relats_and_determinant",
    "verify_tangent_conic",
    "tangent_conic_witness",
    "branch_singular_locus",
    "genus2_fixed_curve_check",
    "map_case",
]

u, v, w, y = var("u"), var("v"), var("w"), var("y")
X, Y, Z = var("X"), var("Y"), var("Z")


class GenericityError(DomainError):
    """Input fails a general-position requirement."""


class SearchFailure(DomainError):
    """No admissible factorization was found."""


def _p(x) -> MultiPoly:
    return MultiPoly.coerce(x)


def _need_form(p: MultiPoly, deg: int, names, label: str):
    extra = [n for n in p.variables if n not in names]
    if extra:
        raise DomainError(f"{label} may only involve {', '.join(names)}; found {extra}")
    if p.is_zero():
        return
    if not p.is_homogeneous() or p.total_degree() != deg:
        raise DomainError(f"{label} must be homogeneous of degree {deg}")


# ---------------------------------------------------------------------------
# models

@dataclass(frozen=True)
class DoubleSexticModel:
    """``y^2 = F(u, v, w)`` with ``F`` a ternary sextic."""

    branch: MultiPoly
    family: str = "general"
    data: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        F = _p(self.branch)
        if F.is_zero():
            raise DomainError("branch sextic is zero")
        _need_form(F, 6, ("u", "v", "w"), "branch")
        object.__setattr__(self, "branch", F)

    def polynomial(self) -> MultiPoly:
        return y * y - self.branch

    def rule(self):
        return ("y", self.branch)


@dataclass(frozen=True)
class QuarticModel:
    """``y^2 C = Q`` in ``P^3 = P(u, v, w, y)``."""

    C: MultiPoly
    Q: MultiPoly

    def __post_init__(self):
        C, Q = _p(self.C), _p(self.Q)
        _need_form(C, 2, ("u", "v", "w"), "C")
        _need_form(Q, 4, ("u", "v", "w"), "Q")
        if C.is_zero() or Q.is_zero():
            raise DomainError("C and Q must be nonzero")
        if squarefree_part_is_square(C * Q):
            raise DomainError("C*Q is a perfect square; the branch curve degenerates")
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "Q", Q)

    def polynomial(self) -> MultiPoly:
        return y * y * self.C - self.Q

    def rule(self):
        return None


@dataclass(frozen=True)
class SprimeModel:
    """``y^2 = C Q``, the double sextic attached to a quartic."""

    C: MultiPoly
    Q: MultiPoly

    def __post_init__(self):
        object.__setattr__(self, "C", _p(self.C))
        object.__setattr__(self, "Q", _p(self.Q))
        QuarticModel(self.C, self.Q)

    def polynomial(self) -> MultiPoly:
        return y * y - self.C * self.Q

    def rule(self):
        return ("y", self.C * self.Q)

    def as_double_sextic(self) -> DoubleSexticModel:
        return DoubleSexticModel(self.C * self.Q, "prime")


@dataclass(frozen=True)
class AlternateSurface:
    """``Y^2 Z = X^3 + A X^2 Z + B X Z^2 + C Z^3`` with A, B, C forms in u, v."""

    A: MultiPoly
    B: MultiPoly
    C: MultiPoly = field(default_factory=lambda: MultiPoly.constant(0))

    def polynomial(self) -> MultiPoly:
        A, B, C = _p(self.A), _p(self.B), _p(self.C)
        return Y * Y * Z - (X ** 3 + A * X * X * Z + B * X * Z * Z + C * Z ** 3)

    def rule(self):
        return None


def squarefree_part_is_square(p: MultiPoly) -> bool:
    """True if the form looks like a constant times a perfect square.

    The test restricts to two fixed affine lines; a form that is a square
    restricts to squares, and a non-square form restricting to squares on
    both lines is non-generic input anyway.
    """
    if p.is_constant():
        return True
    t = var("t")
    for shift in (0, 1):
        sub = {n: 1 + (k + 2 + shift) * t + (k * k + 1 + 3 * shift) * t * t
               for k, n in enumerate(p.variables)}
        q = p.subs(sub)
        if q.is_zero():
            continue
        if q.is_constant():
            return False
        _, a = _univariate_parts(q, "square test")
        if any(k % 2 for _, k in _yun(a)):
            return False
    return True


# -- builders ---------------------------------------------------------------

def build_S_rank9(c0, c2, c4, c6) -> DoubleSexticModel:
    c0 = Fraction(c0)
    c2, c4, c6 = _p(c2), _p(c4), _p(c6)
    for p, d, n in ((c2, 2, "c2"), (c4, 4, "c4"), (c6, 6, "c6")):
        _need_form(p, d, ("u", "v"), n)
    F = c0 * w ** 6 + c2 * w ** 4 + c4 * w ** 2 + c6
    return DoubleSexticModel(F, "rank9", {"c0": c0, "c2": c2, "c4": c4, "c6": c6})


def build_S_HN(c3, a4, d5) -> DoubleSexticModel:
    c3, a4, d5 = _p(c3), _p(a4), _p(d5)
    for p, d, n in ((c3, 3, "c3"), (a4, 4, "a4"), (d5, 5, "d5")):
        _need_form(p, d, ("u", "v"), n)
    return DoubleSexticModel(w * (c3 * w * w + a4 * w + d5), "HN", {"c3": c3, "a4": a4, "d5": d5})


def build_S_rank10(a4, b6pp) -> DoubleSexticModel:
    a4, b6 = _p(a4), _p(b6pp)
    _need_form(a4, 4, ("u", "v"), "a4")
    _need_form(b6, 6, ("u", "v"), "b6''")
    return DoubleSexticModel(u * v * w ** 4 - a4 * w * w + b6, "rank10", {"a4": a4, "b6pp": b6})


def build_S_canonical(a4, b6pp) -> DoubleSexticModel:
    a4, b6 = _p(a4), _p(b6pp)
    _need_form(a4, 4, ("u", "v"), "a4")
    _need_form(b6, 6, ("u", "v"), "b6''")
    if b6.is_zero():
        raise DomainError("b6'' must be nonzero")
    return DoubleSexticModel(v * v * w ** 4 - a4 * w * w + b6, "canonical", {"a4": a4, "b6pp": b6})


def build_K(C, Q) -> QuarticModel:
    return QuarticModel(C, Q)


def build_Sprime(C, Q) -> SprimeModel:
    return SprimeModel(C, Q)


def quartic_from_instance(inst: ForcedInstance) -> QuarticModel:
    """``w (v + h0 w) y^2 = c2 w^2 + e3 w + d4``."""
    if inst.c2 is None:
        raise DomainError(f"instance {inst.key} carries no quartic parameters")
    C = w * (v + inst.h0 * w)
    return QuarticModel(C, inst.c2 * w * w + inst.e3 * w + inst.d4)


def canonical_from_instance(inst: ForcedInstance) -> DoubleSexticModel:
    return build_S_canonical(inst.a4, inst.b6pp)


# ---------------------------------------------------------------------------
# parameters of the quartic from the alternate fibration

def params_rank11_residual(a4, b8, h0, c2, e3, d4):
    """Residuals of ``a4 = v e3 - 2 h0 d4`` and
    ``b8 = a4^2/4 - v^2 (e3^2/4 - c2 d4)``."""
    a4, b8, c2, e3, d4 = map(_p, (a4, b8, c2, e3, d4))
    r1 = a4 - (v * e3 - 2 * h0 * d4)
    r2 = b8 - (a4 * a4 / 4 - v * v * (e3 * e3 / 4 - c2 * d4))
    return r1, r2


def _candidate_factors(b8: MultiPoly, degree: int):
    """Degree-``degree`` divisors of ``b8`` assembled from its gcd-free basis
    and powers of ``v`` (rational factors only)."""
    ov = b8.order("v")
    deh = b8.exact_div(v ** ov).subs({"v": 1})
    pieces = []
    if not deh.is_constant():
        basis, table = gcd_free_basis([deh])
        for b, k in zip(basis, table[0]):
            hb = _homogenize(b)
            pieces.extend([hb] * k)
    pieces.extend([v] * ov)
    seen = set()
    for r in range(len(pieces) + 1):
        for combo in combinations(range(len(pieces)), r):
            if sum(pieces[i].total_degree() for i in combo) != degree:
                continue
            f = MultiPoly.constant(1)
            for i in combo:
                f = f * pieces[i]
            key = str(f)
            if key not in seen:
                seen.add(key)
                yield f


def _homogenize(b: MultiPoly) -> MultiPoly:
    coeffs = b.univariate_coeffs("u") if b.variables else [b.constant_value()]
    d = len(coeffs) - 1
    return sum((c * u ** k * v ** (d - k) for k, c in enumerate(coeffs) if c), MultiPoly.constant(0))


def derive_prime_parameters(a4, b6pp, rho, d4=None):
    """``(h0, c2, e3, d4)`` with ``a4 = v e3 - 2 h0 d4`` and
    ``b8 = a4^2/4 - v^2 (e3^2/4 - c2 d4)``.

    ``d4`` is one factor of ``b8 = d4 * d4'``.  When it is omitted the
    rational divisors of ``b8`` built from its gcd-free basis are tried in
    turn; ``SearchFailure`` is raised if none is admissible.
    """
    a4, b6 = _p(a4), _p(b6pp)
    b8 = a4 * a4 / 4 - v * v * b6
    key = normalize_key(rho)
    candidates = [_p(d4)] if d4 is not None else list(_candidate_factors(b8, 4))
    last = None
    for cand in candidates:
        try:
            out = _prime_from_factor(a4, b8, cand)
        except DomainError as exc:
            last = exc
            continue
        h0, c2, e3, dd = out
        if key in ORDER_TABLE:
            i, j = ORDER_TABLE[key]
            if c2.order("v") < i or dd.order("v") < j:
                last = DomainError(f"orders of c2, d4 at v = 0 fall short of ({i}, {j})")
                continue
        return out
    reason = last or "b8 has no rational quartic factor"
    raise SearchFailure(f"no admissible factorization b8 = d4 d4' ({reason})")


def _prime_from_factor(a4, b8, d4):
    if d4.is_zero() or d4.total_degree() != 4:
        raise DomainError("d4 must be a nonzero quartic form")
    d4p = b8.exact_div(d4)
    alpha0 = a4.coefficient({"u": 4})
    delta0 = d4.coefficient({"u": 4})
    if alpha0 == 0:
        h0 = Fraction(0)
    else:
        if delta0 == 0:
            raise DomainError("d4(1, 0) must be nonzero when a4(1, 0) is")
        h0 = -alpha0 / (2 * delta0)
    e3 = (a4 + 2 * h0 * d4).exact_div(v)
    c2 = (d4p + h0 * h0 * d4 + h0 * a4).exact_div(v * v)
    return h0, c2, e3, d4


# ---------------------------------------------------------------------------
# linear systems and the del Pezzo surface of degree one

PLANE = ("x", "y", "z")


def _monomials(deg: int, names=PLANE):
    out = []
    for combo in combinations_with_replacement(range(len(names)), deg):
        e = [0] * len(names)
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def _mono_poly(e, names=PLANE) -> MultiPoly:
    m = MultiPoly.constant(1)
    for n, k in zip(names, e):
        if k:
            m = m * var(n) ** k
    return m


def _falling(a: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= a - i
    return out


def _nullspace(rows, ncols):
    """Basis of the right kernel of a rational matrix (row reduction)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][f]
        basis.append(vec)
    return basis


def integral_point(p) -> tuple:
    """The same projective point with coprime integer coordinates."""
    p = [Fraction(c) for c in p]
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = g or 1
    return tuple(Fraction(c // g) for c in ints)


def linear_system(d: int, points, mult) -> list:
    """Basis of plane forms of degree ``d`` in x, y, z vanishing to order
    ``mult[i]`` at ``points[i]``."""
    points = [integral_point(p) for p in points]
    if isinstance(mult, int):
        mult = [mult] * len(points)
    if len(mult) != len(points):
        raise DomainError("one multiplicity per point is required")
    monos = _monomials(d)
    rows = []
    for p, m in zip(points, mult):
        if not any(p):
            raise DomainError("the zero vector is not a point")
        if m <= 0:
            continue
        # all partial derivatives of order m - 1 vanish at p
        for da in _monomials(m - 1):
            row = []
            for e in monos:
                if any(ei < di for ei, di in zip(e, da)):
                    row.append(Fraction(0))
                    continue
                c = Fraction(1)
                for ei, di, pi in zip(e, da, p):
                    c *= _falling(ei, di) * pi ** (ei - di)
                row.append(c)
            rows.append(row)
    if not rows:
        kernel = [[Fraction(int(i == j)) for j in range(len(monos))] for i in range(len(monos))]
    else:
        kernel = _nullspace(rows, len(monos))
    out = []
    for vec in kernel:
        f = sum((c * _mono_poly(e) for c, e in zip(vec, monos) if c), MultiPoly.constant(0))
        out.append(f.primitive())
    return out


def _det(mat):
    n = len(mat)
    m = [list(map(Fraction, r)) for r in mat]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def general_position_problems(points) -> list:
    """Violations of: distinct points, no three collinear, no six on a conic,
    and the expected dimensions 2, 4, 7 of the three linear systems."""
    pts = [tuple(Fraction(c) for c in p) for p in points]
    issues = []
    for a, b in combinations(range(len(pts)), 2):
        if _det([pts[a], pts[b], (1, 0, 0)]) == 0 and _det([pts[a], pts[b], (0, 1, 0)]) == 0 \
                and _det([pts[a], pts[b], (0, 0, 1)]) == 0:
            issues.append(f"points {a} and {b} coincide")
    for tri in combinations(range(len(pts)), 3):
        if _det([pts[i] for i in tri]) == 0:
            issues.append(f"points {tri} are collinear")
    conic = _monomials(2)
    for six in combinations(range(len(pts)), 6):
        rows = [[_mono_poly(e).evaluate(dict(zip(PLANE, pts[i]))).constant_value() for e in conic]
                for i in six]
        if _det(rows) == 0:
            issues.append(f"points {six} lie on a conic")
    if issues:
        return issues
    for d, m, expect in ((3, 1, 2), (6, 2, 4), (9, 3, 7)):
        got = len(linear_system(d, pts, m))
        if got != expect:
            issues.append(f"degree {d} forms with multiplicity {m}: dimension {got}, expected {expect}")
    return issues


@dataclass(frozen=True)
class DelPezzoModel:
    points: tuple
    U: MultiPoly
    V: MultiPoly
    W: MultiPoly
    R: MultiPoly
    c0: Fraction
    c2: MultiPoly
    c4: MultiPoly
    c6: MultiPoly
    dimensions: tuple

    def rank9_surface(self) -> DoubleSexticModel:
        return build_S_rank9(self.c0, self.c2, self.c4, self.c6)


def _span_rank(polys) -> int:
    monos = sorted({e for p in polys for e, _ in _exp_items(p)})
    rows = [[dict(_exp_items(p)).get(e, Fraction(0)) for e in monos] for p in polys]
    return len(rows) - len(_nullspace(list(map(list, zip(*rows))), len(rows))) if rows else 0


def _exp_items(p: MultiPoly):
    for mono, c in p.monomials():
        yield tuple(mono.get(n, 0) for n in PLANE), c


def _pick_independent(basis, fixed):
    base_rank = _span_rank(fixed)
    for b in basis:
        if _span_rank(fixed + [b]) > base_rank:
            return b
    raise GenericityError("linear system contributes no new generator")


def del_pezzo_model(points) -> DelPezzoModel:
    """The sextic relation ``R^2 = c0 W^3 + c2(U,V) W^2 + c4(U,V) W + c6(U,V)``
    among the generators of the anticanonical ring of the blow-up of P^2 in
    eight general points."""
    pts = tuple(tuple(Fraction(c) for c in p) for p in points)
    if len(pts) != 8:
        raise DomainError("exactly eight points are required")
    issues = general_position_problems(pts)
    if issues:
        raise GenericityError("points are not in general position: " + "; ".join(issues))
    cubics = linear_system(3, pts, 1)
    sextics = linear_system(6, pts, 2)
    nonics = linear_system(9, pts, 3)
    dims = (len(cubics), len(sextics), len(nonics))
    if dims != (2, 4, 7):
        raise GenericityError(f"linear systems have dimensions {dims}, expected (2, 4, 7)")
    U_, V_ = cubics
    last = None
    # W ranges over combinations of the sextic basis until c6 is squarefree,
    # i.e. until W = 0 meets the surface in a smooth genus-two curve
    for trial in range(_W_TRIALS):
        W_ = sum((((3 * k + 1) * (trial + 1) ** k % 11 + 1) * b for k, b in enumerate(sextics)),
                 MultiPoly.constant(0))
        if _span_rank([U_ * U_, U_ * V_, V_ * V_, W_]) < 4:
            continue
        R_ = _pick_independent(nonics, [U_ ** 3, U_ * U_ * V_, U_ * V_ * V_, V_ ** 3, U_ * W_, V_ * W_])
        try:
            model = _relation(pts, U_, V_, W_, R_, dims)
        except GenericityError as exc:
            last = exc
            continue
        if genus2_fixed_curve_check(model.rank9_surface()):
            return model
        last = GenericityError("c6 is not squarefree")
    raise GenericityError(f"no admissible generator W found ({last})")


_W_TRIALS = 8


def _relation(pts, U_, V_, W_, R_, dims=(2, 4, 7)) -> "DelPezzoModel":
    def binary(deg):
        return [U_ ** (deg - k) * V_ ** k for k in range(deg + 1)]

    # weighted sextic relation: R^2 + R (l1 W + g3) = c0 W^3 + q2 W^2 + q4 W + s6
    cols = [R_ * R_]
    cols += [R_ * W_ * m for m in binary(1)]
    cols += [R_ * m for m in binary(3)]
    cols += [W_ ** 3]
    cols += [W_ * W_ * m for m in binary(2)]
    cols += [W_ * m for m in binary(4)]
    cols += binary(6)
    monos = sorted({e for c in cols for e, _ in _exp_items(c)})
    index = {e: i for i, e in enumerate(monos)}
    rows = [[Fraction(0)] * len(cols) for _ in monos]
    for j, col in enumerate(cols):
        for e, c in _exp_items(col):
            rows[index[e]][j] = c
    kernel = _nullspace(rows, len(cols))
    kernel = [k for k in kernel if k[0]]
    if len(kernel) != 1:
        raise DomainError(f"expected a unique sextic relation, found {len(kernel)}")
    k = [c / kernel[0][0] for c in kernel[0]]
    # R^2 + R*L = P  with  L = l1 W + g3; complete the square R -> R + L/2
    l1 = k[1:3]
    g3 = k[3:7]
    R_new = R_ + (sum((c * m for c, m in zip(l1, binary(1))), MultiPoly.constant(0)) * W_
                  + sum((c * m for c, m in zip(g3, binary(3))), MultiPoly.constant(0))) / 2
    rhs = R_new * R_new
    # re-solve for the pure form with the shifted R
    cols2 = [W_ ** 3] + [W_ * W_ * m for m in binary(2)] + [W_ * m for m in binary(4)] + binary(6)
    monos = sorted({e for c in cols2 + [rhs] for e, _ in _exp_items(c)})
    index = {e: i for i, e in enumerate(monos)}
    mat = [[Fraction(0)] * (len(cols2) + 1) for _ in monos]
    for j, col in enumerate(cols2 + [rhs]):
        for e, c in _exp_items(col):
            mat[index[e]][j] = c
    ker = [kk for kk in _nullspace(mat, len(cols2) + 1) if kk[-1]]
    if len(ker) != 1:
        raise DomainError("completing the square did not give a unique relation")
    sol = [-c / ker[0][-1] for c in ker[0][:-1]]
    c0 = sol[0]
    if c0 == 0:
        raise GenericityError("the relation has c0 = 0")

    def form(cs):
        d = len(cs) - 1
        return sum((c * u ** (d - i) * v ** i for i, c in enumerate(cs)), MultiPoly.constant(0))

    c2 = form(sol[1:4])
    c4 = form(sol[4:9])
    c6 = form(sol[9:16])
    return DelPezzoModel(pts, U_, V_, W_, R_new, c0, c2, c4, c6, dims)


def random_plane_points(seed: int, count: int = 8, bound: int = 3, retries: int = 32):
    """Points with integer coordinates in ``[-bound, bound]`` in general position."""
    src = RandomSource(seed, 1)
    for _ in range(retries):
        pts = [tuple(src.integer(-bound, bound) for _ in range(3)) for _ in range(count)]
        if all(any(p) for p in pts) and not general_position_problems(pts):
            return [tuple(Fraction(c) for c in p) for p in pts]
    raise GenericityError(f"no general point configuration after {retries} draws")


def del_pezzo_residual(m: DelPezzoModel) -> MultiPoly:
    """``R^2 - (c0 W^3 + c2(U,V) W^2 + c4(U,V) W + c6(U,V))`` in x, y, z."""
    sub = {"u": m.U, "v": m.V}
    return m.R * m.R - (m.c0 * m.W ** 3 + m.c2.subs(sub) * m.W ** 2
                        + m.c4.subs(sub) * m.W + m.c6.subs(sub))


# ---------------------------------------------------------------------------
# map verification

@dataclass(frozen=True)
class MapVerification:
    ok: bool
    residual: MultiPoly
    cofactor: MultiPoly | None

    def to_dict(self):
        return {"ok": self.ok, "residual": self.residual.to_text(),
                "cofactor_degree": None if self.cofactor is None else self.cofactor.total_degree()}


def _poly_and_rule(model):
    if isinstance(model, MultiPoly):
        return model, None
    return model.polynomial(), model.rule()


def verify_map(rmap: RationalMap, source, target) -> MapVerification:
    """Pull back the target equation and test divisibility by the source."""
    src_poly, rule = _poly_and_rule(source)
    tgt_poly, _ = _poly_and_rule(target)
    missing = [n for n in tgt_poly.variables if n not in rmap.target_vars]
    if missing:
        raise DomainError(f"map does not define target variables {missing}")
    extra = [n for c in rmap.components for n in c.variables if n not in rmap.source_vars]
    if extra:
        raise DomainError(f"map uses variables {sorted(set(extra))} outside the source")
    pulled = substitute(tgt_poly, rmap, reduce=False).num
    if rule is not None:
        pulled = reduce_double_cover(pulled, *rule)
        if pulled.is_zero():
            return MapVerification(True, pulled, MultiPoly.constant(0))
    q, r = pulled.divmod(src_poly)
    return MapVerification(r.is_zero(), r, q if r.is_zero() else None)


def is_projective_identity(rmap: RationalMap, weights: dict, rule=None) -> bool:
    """True when the map is ``x_i -> lambda^{w_i} x_i`` for one common factor,
    modulo the double-cover rule."""
    names = list(weights)
    if set(names) != set(rmap.target_vars) or set(names) != set(rmap.source_vars):
        return False
    base = next(n for n in names if weights[n] == 1)
    lam = RationalFunction(rmap[base].num, rmap[base].den * var(base))
    for n in names:
        expect = lam ** weights[n] * var(n)
        diff = rmap[n] - expect
        num = diff.num
        if rule is not None:
            num = reduce_double_cover(num, *rule)
        if not num.is_zero():
            return False
    return True


def verify_shift_rules(c0, c2, c4, c6, f0, f2) -> bool:
    """Substituting ``W -> f0 W + f2`` into the cubic in W reproduces the
    transformed coefficients."""
    c0, f0 = Fraction(c0), Fraction(f0)
    c2, c4, c6, f2 = map(_p, (c2, c4, c6, f2))
    W_ = var("w")
    old = c0 * W_ ** 3 + c2 * W_ ** 2 + c4 * W_ + c6
    shifted = old.subs({"w": f0 * W_ + f2})
    n0 = c0 * f0 ** 3
    n2 = (c2 + 3 * c0 * f2) * f0 ** 2
    n4 = (c4 + 2 * c2 * f2 + 3 * c0 * f2 * f2) * f0
    n6 = c6 + c4 * f2 + c2 * f2 * f2 + c0 * f2 ** 3
    return (shifted - (n0 * W_ ** 3 + n2 * W_ ** 2 + n4 * W_ + n6)).is_zero()


# ---------------------------------------------------------------------------
# rational elliptic surface coefficients

def relats_coefficients(alphas, c0):
    """``(c2, c4, c6)`` determined by quadrics ``alpha_0..alpha_4`` and ``c0``."""
    c0 = Fraction(c0)
    if c0 == 0:
        raise DomainError("c0 must be nonzero")
    a0, a1, a2, a3, a4_ = map(_p, alphas)
    c2 = a2
    c4 = (a1 * a3 - 4 * a0 * a4_) / c0
    c6 = (a0 * a3 * a3 + a1 * a1 * a4_ - 4 * a0 * a2 * a4_) / c0 ** 2
    return c2, c4, c6


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def verify_relats_and_determinant(alphas, c0) -> bool:
    """The sextic ``c0 w^6 + c2 w^4 + c4 w^2 + c6`` equals
    ``-det(M) / (2 c0)^2`` for the symmetric matrix built from the alphas."""
    c0 = Fraction(c0)
    c2, c4, c6 = relats_coefficients(alphas, c0)
    a0, a1, a2, a3, a4_ = map(_p, alphas)
    w2 = w * w
    M = [[4 * a0, a1, -2 * c0 * w2],
         [a1, c0 * w2 + a2, a3],
         [-2 * c0 * w2, a3, 4 * a4_]]
    lhs = c0 * w ** 6 + c2 * w ** 4 + c4 * w2 + c6
    rhs = -_det3(M) / (4 * c0 * c0)
    return (lhs - rhs).is_zero()


def verify_tangent_conic(p2, q3, sextic: DoubleSexticModel) -> bool:
    """``c0 p2^3 + c2 p2^2 + c4 p2 + c6 == q3^2`` for a sextic even in w."""
    p2, q3 = _p(p2), _p(q3)
    _need_form(p2, 2, ("u", "v"), "p2")
    _need_form(q3, 3, ("u", "v"), "q3")
    parts = sextic.branch.coefficients_in("w")
    if any(k % 2 for k in parts):
        raise DomainError("the branch sextic must be even in w")
    total = sum((c * p2 ** (k // 2) for k, c in parts.items()), MultiPoly.constant(0))
    return (total - q3 * q3).is_zero()


def tangent_conic_witness(seed: int, height: int = 20):
    """``(p2, q3, sextic)`` where ``w^2 = p2`` is everywhere tangent by construction."""
    src = RandomSource(seed, height)
    c0 = src.nonzero()
    c2, c4 = binary_form(src, 2), binary_form(src, 4)
    p2, q3 = binary_form(src, 2), binary_form(src, 3)
    c6 = q3 * q3 - c0 * p2 ** 3 - c2 * p2 * p2 - c4 * p2
    return p2, q3, build_S_rank9(c0, c2, c4, c6)


# ---------------------------------------------------------------------------
# singular loci of branch curves

@dataclass(frozen=True)
class SingularLocusReport:
    expected: tuple
    expected_singular: tuple
    unexpected: tuple
    status: str

    @property
    def ok(self) -> bool:
        return all(self.expected_singular) and not self.unexpected and self.status == "complete"

    def to_dict(self):
        return {"expected": [list(map(str, p)) for p in self.expected],
                "expected_singular": list(self.expected_singular),
                "unexpected": list(self.unexpected), "status": self.status}


def _is_singular_at(F: MultiPoly, p, names) -> bool:
    vals = dict(zip(names, p))
    if F.evaluate(vals).constant_value():
        return False
    return all(F.diff(n).evaluate(vals).constant_value() == 0 for n in names)


def _normalize_point(p):
    p = tuple(Fraction(c) for c in p)
    k = next(i for i, c in enumerate(p) if c)
    return tuple(c / p[k] for c in p)


def _univariate_common(polys, name):
    """gcd of univariate polynomials in ``name``; zero polynomials are skipped.
    Returns None if all are zero."""
    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        return None
    if any(p.is_constant() for p in nz):
        return MultiPoly.constant(1)
    g = nz[0]
    for p in nz[1:]:
        g = univariate_gcd(g, p)
        if g.is_constant():
            break
    return g


def _plane_singular_locus(F: MultiPoly, expected):
    """Singular points of a plane curve F(u, v, w) = 0, checked chart by chart."""
    names = ("u", "v", "w")
    exp = [_normalize_point(p) for p in expected]
    grads = [F.diff(n) for n in names]
    unexpected = []
    status = "complete"

    def note(pt):
        pt = _normalize_point(pt)
        if pt not in exp:
            unexpected.append("[" + ":".join(str(c) for c in pt) + "]")

    # chart w = 1
    aff = [g.subs({"w": 1}) for g in grads]
    pairs = [(aff[0], aff[1]), (aff[0], aff[2]), (aff[1], aff[2])]
    res = []
    for a, b in pairs:
        if a.is_zero() or b.is_zero():
            continue
        if a.degree("v") < 1 or b.degree("v") < 1:
            # one side free of v: its u-part constrains u directly
            for q in (a, b):
                if q.degree("v") < 1 and not q.is_zero():
                    res.append(q)
            continue
        res.append(resultant(a, b, "v"))
    G = _univariate_common(res, "u")
    if G is None:
        status = "partial"
    elif not G.is_constant():
        basis, _ = gcd_free_basis([G])
        for b in basis:
            if b.total_degree() == 1:
                u0 = -b.coefficient({}) / b.coefficient({"u": 1})
                fib = [g.subs({"u": u0}) for g in aff]
                H = _univariate_common(fib, "v")
                if H is None:
                    status = "partial"
                    continue
                if H.is_constant():
                    continue
                hb, _ = gcd_free_basis([H])
                for h in hb:
                    if h.total_degree() == 1:
                        v0 = -h.coefficient({}) / h.coefficient({"v": 1})
                        note((u0, v0, 1))
                    else:
                        unexpected.append(f"u = {u0}, v root of {h.to_text()}")
            else:
                # irrational u-coordinate: a singular point exists only if the partials
                # share a root over the residue field; resolve by the shear u -> u + v
                if not _shear_clears(F, b):
                    unexpected.append(f"possible point with u root of {b.to_text()}")
                    status = "partial"
    # line w = 0, chart v = 1
    line = [g.subs({"w": 0, "v": 1}) for g in grads]
    H = _univariate_common(line, "u")
    if H is None:
        unexpected.append("the whole line w = 0 is singular")
    elif not H.is_constant():
        hb, _ = gcd_free_basis([H])
        for h in hb:
            if h.total_degree() == 1:
                note((-h.coefficient({}) / h.coefficient({"u": 1}), 1, 0))
            else:
                unexpected.append(f"w = 0, v = 1, u root of {h.to_text()}")
    if _is_singular_at(F, (1, 0, 0), names):
        note((1, 0, 0))
    flags = tuple(_is_singular_at(F, p, names) for p in exp)
    return flags, tuple(unexpected), status


def _shear_clears(F: MultiPoly, b: MultiPoly) -> bool:
    """Project after the substitution u -> u + 3v and check that the factor
    ``b`` disappears, which rules out singular points over its roots."""
    G = F.subs({"u": u + 3 * v})
    aff = [G.diff(n).subs({"w": 1}) for n in ("u", "v", "w")]
    res = []
    for a, c in ((aff[0], aff[1]), (aff[1], aff[2])):
        if a.degree("u") >= 1 and c.degree("u") >= 1:
            res.append(resultant(a, c, "u"))
    Gv = _univariate_common(res, "v")
    if Gv is None:
        return False
    # a genuine singular point (u0, v0) gives a root v0 of Gv and u0 + 3 v0 a root of b
    if Gv.is_constant():
        return True
    return False


def branch_singular_locus(model, expected_points=()) -> SingularLocusReport:
    """Check the expected singular points and search for others.

    For double sextics this is the singular locus of the branch curve.  For
    quartics only the expected points are tested (status ``partial``).
    """
    expected = tuple(tuple(Fraction(c) for c in p) for p in expected_points)
    if isinstance(model, DoubleSexticModel):
        flags, unexpected, status = _plane_singular_locus(model.branch, expected)
        return SingularLocusReport(expected, flags, unexpected, status)
    if isinstance(model, QuarticModel):
        G = model.polynomial()
        names = ("u", "v", "w", "y")
        flags = tuple(_is_singular_at(G, p, names) for p in expected)
        return SingularLocusReport(expected, flags, (), "partial")
    raise DomainError("unsupported model type")


def genus2_fixed_curve_check(model: DoubleSexticModel) -> bool:
    """True iff ``c6 = F(u, v, 0)`` is a squarefree binary sextic."""
    c6 = model.branch.subs({"w": 0})
    if c6.is_zero() or c6.total_degree() != 6:
        return False
    ov = c6.order("v")
    if ov > 1:
        return False
    deh = c6.subs({"v": 1})
    if deh.total_degree() + ov != 6:
        return False
    if deh.is_constant():
        return True
    return squarefree_part(deh).total_degree() == deh.total_degree()


# ---------------------------------------------------------------------------
# catalogue of explicit maps

@dataclass(frozen=True)
class MapCase:
    name: str
    rmap: RationalMap
    source: object
    target: object


def _rmap(assign: dict, source_vars: str) -> RationalMap:
    return RationalMap.from_dict({k: RationalFunction.coerce(val) for k, val in assign.items()},
                                 source_vars.split())


def _R(n, d=1):
    return RationalFunction(_p(n), _p(d), reduce=False)


def _case_birational1(seed, height):
    i = forced_instance("11", seed, height)
    src = AlternateSurface(i.a4, i.b8)
    tgt = build_S_canonical(2 * i.a4, 4 * i.b6pp)
    m = _rmap({"u": u, "v": v, "w": _R(Y, v * X),
               "y": _R(Y * Y, v * X * X) - _R(2 * X + i.a4 * Z, v * Z)}, "u v X Y Z")
    return src, tgt, m


def _case_birational2(seed, height):
    i = forced_instance("11", seed, height)
    src = build_S_canonical(2 * i.a4, 4 * i.b6pp)
    tgt = AlternateSurface(i.a4, i.b8)
    m = _rmap({"u": u, "v": v, "X": -(v * y + i.a4 - v * v * w * w) * Z / 2,
               "Y": -(v * v * w * y + i.a4 * v * w - v ** 3 * w ** 3) * Z / 2, "Z": Z}, "u v w y Z")
    return src, tgt, m


def _prime_factor(i):
    return i.c2 * v * v - i.h0 * i.e3 * v + i.h0 * i.h0 * i.d4


def _case_birational1p(seed, height):
    i = forced_instance("11", seed, height)
    K = quartic_from_instance(i)
    f = _prime_factor(i)
    den = f * Z - i.h0 * X
    m = _rmap({"u": u, "v": v, "w": _R(v * X, den), "y": _R(v * f * Y * Z, den * den)}, "u v X Y Z")
    return AlternateSurface(i.a4, i.b8), SprimeModel(K.C, K.Q), m


def _case_birational2p(seed, height):
    i = forced_instance("11", seed, height)
    K = quartic_from_instance(i)
    f = _prime_factor(i)
    lin = v + i.h0 * w
    m = _rmap({"u": u, "v": v, "X": _R(f * w * Z, lin), "Y": _R(f * v * y * Z, lin * lin), "Z": Z},
              "u v w y Z")
    return SprimeModel(K.C, K.Q), AlternateSurface(i.a4, i.b8), m


def _case_nikulin_cover(seed, height):
    i = forced_instance("13", seed, height)
    m = _rmap({"u": u, "v": v, "X": v * v * w * w, "Y": v * v * w * y, "Z": 1}, "u v w y")
    return canonical_from_instance(i), AlternateSurface(-i.a4, v * v * i.b6pp), m


def _rank10(seed, height):
    d = rank10_quartic_data(seed, height)
    a4 = u * v * d.c2 - d.d4
    b6 = d.e3 * d.e3 / 4 - d.c2 * d.d4
    return d, build_S_rank10(a4, b6)


def _case_rank10_K_to_S(seed, height):
    d, S = _rank10(seed, height)
    m = _rmap({"u": u, "v": v, "w": y, "y": y * y * w - d.c2 * w - d.e3 / 2}, "u v w y")
    return QuarticModel(d.C, d.Q), S, m


def _case_rank10_Sprime_to_S(seed, height):
    d, S = _rank10(seed, height)
    xi = _R(y, d.C)
    m = _rmap({"u": u, "v": v, "w": xi, "y": xi * xi * w - d.c2 * w - d.e3 / 2}, "u v w y")
    return SprimeModel(d.C, d.Q), S, m


def _case_rank10_S_to_K(seed, height):
    d, S = _rank10(seed, height)
    m = _rmap({"u": u, "v": v, "w": _R(y + d.e3 / 2, w * w - d.c2), "y": w}, "u v w y")
    return S, QuarticModel(d.C, d.Q), m


def _case_rank10_projection_p2(seed, height):
    d, S = _rank10(seed, height)
    # target written in the unshifted coordinate eta~ = eta + e3/2
    a4 = S.data["a4"]
    b6 = S.data["b6pp"]
    tgt = (y - d.e3 / 2) ** 2 - (u * v * w ** 4 - a4 * w * w + b6)
    m = _rmap({"u": u, "v": v, "w": y, "y": (y * y - d.c2) * w}, "u v w y")
    return QuarticModel(d.C, d.Q), tgt, m


def _case_rank10_K_to_Sprime(seed, height):
    d, _ = _rank10(seed, height)
    m = _rmap({"u": u, "v": v, "w": w, "y": d.C * y}, "u v w y")
    return QuarticModel(d.C, d.Q), SprimeModel(d.C, d.Q), m


def _hn_data(seed, height):
    src = RandomSource(seed, height)
    a4 = binary_form(src, 4)
    c3, d5 = binary_form(src, 3), binary_form(src, 5)
    return a4, c3, d5


def _case_hn_from_alternate(seed, height):
    a4, c3, d5 = _hn_data(seed, height)
    m = _rmap({"u": c3 * u * Z, "v": c3 * v * Z, "w": X, "y": c3 * c3 * Y * Z * Z}, "u v X Y Z")
    return AlternateSurface(a4, c3 * d5), build_S_HN(c3, a4, d5), m


def _case_hn_to_alternate(seed, height):
    a4, c3, d5 = _hn_data(seed, height)
    m = _rmap({"u": u, "v": v, "X": c3 * w, "Y": c3 * y, "Z": 1}, "u v w y")
    return build_S_HN(c3, a4, d5), AlternateSurface(a4, c3 * d5), m


def _case_hn_refactorization(seed, height):
    src = RandomSource(seed, height)
    a4 = binary_form(src, 4)
    l1, l2, q2, r4 = binary_form(src, 1), binary_form(src, 1), binary_form(src, 2), binary_form(src, 4)
    c3, d5 = l1 * q2, l2 * r4
    c3t, d5t = l2 * q2, l1 * r4
    m = _rmap({"u": c3 * u, "v": c3 * v, "w": c3t * w, "y": c3t * c3 * c3 * y}, "u v w y")
    return build_S_HN(c3t, a4, d5t), build_S_HN(c3, a4, d5), m


def _case_rank12_refactorization(seed, height):
    src = RandomSource(seed, height)
    e3 = binary_form(src, 3)
    l1, l2, l3, r3 = (binary_form(src, 1), binary_form(src, 1), binary_form(src, 1),
                      binary_form(src, 3))
    c2, d4 = l1 * l2, l3 * r3
    c2t, d4t = l1 * l3, l2 * r3
    S = SprimeModel(w * v, c2 * w * w + e3 * w + d4)
    T = SprimeModel(w * v, c2t * w * w + e3 * w + d4t)
    m = _rmap({"u": c2t * u, "v": c2t * v, "w": c2 * w, "y": c2 * c2t * c2t * y}, "u v w y")
    return S, T, m


def _res_coefficients(seed, height):
    src = RandomSource(seed, height)
    return src.nonzero(), binary_form(src, 2), binary_form(src, 4), binary_form(src, 6)


def _case_res_to_del_pezzo(seed, height):
    c0, c2, c4, c6 = _res_coefficients(seed, height)
    res = Y * Y * Z - (c0 * X ** 3 + c2 * X * X * Z + c4 * X * Z * Z + c6 * Z ** 3)
    dp = y * y - (c0 * w ** 3 + c2 * w * w + c4 * w + c6)
    m = _rmap({"u": u * Z, "v": v * Z, "w": X * Z, "y": Y * Z * Z}, "u v X Y Z")
    return res, dp, m


def _case_rank9_double_cover(seed, height):
    c0, c2, c4, c6 = _res_coefficients(seed, height)
    dp = y * y - (c0 * w ** 3 + c2 * w * w + c4 * w + c6)
    m = _rmap({"u": u, "v": v, "w": w * w, "y": y}, "u v w y")
    return build_S_rank9(c0, c2, c4, c6), dp, m


def _case_shift(seed, height):
    c0, c2, c4, c6 = _res_coefficients(seed, height)
    src = RandomSource(seed + 7919, height)
    f0, f2 = src.nonzero(), binary_form(src, 2)
    n0 = c0 * f0 ** 3
    n2 = (c2 + 3 * c0 * f2) * f0 ** 2
    n4 = (c4 + 2 * c2 * f2 + 3 * c0 * f2 * f2) * f0
    n6 = c6 + c4 * f2 + c2 * f2 * f2 + c0 * f2 ** 3
    old = y * y - (c0 * w ** 3 + c2 * w * w + c4 * w + c6)
    new = y * y - (n0 * w ** 3 + n2 * w * w + n4 * w + n6)
    m = _rmap({"u": u, "v": v, "w": f0 * w + f2, "y": y}, "u v w y")
    return new, old, m


_BUILDERS: dict[str, Callable] = {
    "birational1": _case_birational1,
    "birational2": _case_birational2,
    "birational1p": _case_birational1p,
    "birational2p": _case_birational2p,
    "nikulin_double_cover": _case_nikulin_cover,
    "rank10_K_to_S": _case_rank10_K_to_S,
    "rank10_Sprime_to_S": _case_rank10_Sprime_to_S,
    "rank10_S_to_K": _case_rank10_S_to_K,
    "rank10_projection_p2": _case_rank10_projection_p2,
    "rank10_K_to_Sprime": _case_rank10_K_to_Sprime,
    "hn_from_alternate": _case_hn_from_alternate,
    "hn_to_alternate": _case_hn_to_alternate,
    "hn_refactorization": _case_hn_refactorization,
    "rank12_refactorization": _case_rank12_refactorization,
    "res_to_del_pezzo": _case_res_to_del_pezzo,
    "rank9_double_cover": _case_rank9_double_cover,
    "coefficient_shift": _case_shift,
}

MAP_CATALOG = tuple(_BUILDERS)


def map_case(name: str, seed: int, height: int = 20) -> MapCase:
    if name not in _BUILDERS:
        raise KeyError(f"unknown map {name!r}; known: {', '.join(MAP_CATALOG)}")
    source, target, m = _BUILDERS[name](seed, height)
    return MapCase(name, m, source, target)
