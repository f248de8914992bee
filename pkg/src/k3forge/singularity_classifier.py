"""ADE classification of isolated surface double points.

A germ is a polynomial ``f`` in three local variables with ``f(0) = 0`` and
vanishing gradient, known up to a truncation order ``N``.  Classification
follows the usual recognition procedure:

1. diagonalize the quadratic part exactly (symmetric elimination over Q);
2. split off every nondegenerate square by solving ``df/ds = 0`` for ``s``
   as a truncated power series and substituting back;
3. read the type from the residual function of the remaining variables:

   * no residual variable: ``A1``;
   * one variable of order ``k + 1``: ``A_k``;
   * two variables: the cubic jet decides between ``D4`` (three distinct
     lines), ``D_k`` (a double line, ``k`` found by normalizing degree by
     degree to ``x^2 y + c y^(k-1)``) and ``E6/E7/E8`` (a triple line, found
     from the ``y^4``, ``x y^3`` and ``y^5`` coefficients).

Every substitution used raises the degree of the terms it creates above the
degree being decided, so a decision made at degree ``d <= N`` does not depend
on the terms dropped by truncation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .instances import (
    forced_instance,
    normalize_key,
    rank10_quartic_data,
    rank9_coefficients,
    rank9_quartic_data,
)
from .poly_engine import DomainError, MultiPoly, poly_gcd, var
from .surface_models import (
    DoubleSexticModel,
    QuarticModel,
    SprimeModel,
    build_K,
    build_S_rank10,
    build_S_rank9,
    canonical_from_instance,
    quartic_from_instance,
)

__all__ = [
    "ADEType",
    "LocalGerm",
    "NotSingularError",
    "NotADEError",
    "InconclusiveError",
    "localize",
    "classify",
    "DOUBLE_POINTS",
    "DOUBLE_POINT_ROWS",
    "POINTS",
    "DoublePointReport",
    "classify_double_points",
    "parse_ade",
    "diagonalize",
    "point_type",
    "row_models",
]

DEFAULT_TRUNCATION = 20
MAX_TRUNCATION = 24


class NotSingularError(DomainError):
    """The point is a smooth point of the surface."""


class NotADEError(DomainError):
    """The double point is not a simple (ADE) singularity."""


class InconclusiveError(DomainError):
    """The type is not determined below the truncation order."""


@dataclass(frozen=True, order=True)
class ADEType:
    family: str
    index: int

    def __post_init__(self):
        ok = ((self.family == "A" and self.index >= 1)
              or (self.family == "D" and self.index >= 4)
              or (self.family == "E" and self.index in (6, 7, 8)))
        if not ok:
            raise ValueError(f"no simple singularity {self.family}{self.index}")

    @property
    def milnor_number(self) -> int:
        return self.index

    def __str__(self):
        return f"{self.family}{self.index}"


def parse_ade(text: str) -> ADEType:
    t = text.strip().upper()
    if len(t) < 2 or t[0] not in "ADE" or not t[1:].isdigit():
        raise ValueError(f"cannot read ADE type {text!r}")
    return ADEType(t[0], int(t[1:]))


@dataclass(frozen=True)
class LocalGerm:
    """Function germ at the origin of ``names``, kept up to ``truncation_order``."""

    f: MultiPoly
    names: tuple
    truncation_order: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        f = MultiPoly.coerce(self.f)
        names = tuple(self.names)
        extra = [n for n in f.variables if n not in names]
        if extra:
            raise DomainError(f"germ involves variables {extra} outside {names}")
        if self.truncation_order < 3:
            raise ValueError("truncation order must be at least 3")
        if f.constant_term() != 0:
            raise DomainError("germ does not vanish at the origin")
        if any(f.homogeneous_part(1, names).coefficient({n: 1}) for n in names):
            raise NotSingularError("germ has a nonzero linear part")
        object.__setattr__(self, "f", f.truncated(self.truncation_order, names))
        object.__setattr__(self, "names", names)


# ---------------------------------------------------------------------------
# localization

def _weights(model):
    if isinstance(model, (DoubleSexticModel, SprimeModel)):
        return {"u": 1, "v": 1, "w": 1, "y": 3}
    if isinstance(model, QuarticModel):
        return {"u": 1, "v": 1, "w": 1, "y": 1}
    raise DomainError(f"cannot localize on {type(model).__name__}")


def localize(model, point, chart: str, truncation_order: int = DEFAULT_TRUNCATION) -> LocalGerm:
    """Affine equation of ``model`` around ``point`` in the chart ``chart = 1``.

    ``point`` lists the coordinates ``(u, v, w, y)``.  The germ uses the
    three remaining coordinate names as local variables, centred at the point.
    """
    weights = _weights(model)
    order = ("u", "v", "w", "y")
    if chart not in weights:
        raise DomainError(f"unknown chart {chart!r}")
    pt = dict(zip(order, (Fraction(c) for c in point)))
    if len(pt) != 4:
        raise DomainError("a point needs four coordinates (u, v, w, y)")
    c = pt[chart]
    if c == 0:
        raise DomainError(f"point is not in the chart {chart} = 1")
    if weights[chart] != 1 and c != 1:
        raise DomainError(f"normalize the point so that {chart} = 1")
    if weights[chart] == 1:
        pt = {n: x / c ** weights[n] for n, x in pt.items()}
    local = tuple(n for n in order if n != chart)
    sub = {chart: 1}
    sub.update({n: var(n) + pt[n] for n in local})
    f = model.polynomial().subs(sub)
    if f.constant_term() != 0:
        raise DomainError("point does not lie on the model")
    return LocalGerm(f, local, truncation_order)


# ---------------------------------------------------------------------------
# exact linear algebra on the quadratic part

def _quadratic_matrix(f: MultiPoly, names):
    n = len(names)
    H = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if i == j:
                H[i][i] = f.coefficient({names[i]: 2})
            else:
                c = f.coefficient({names[i]: 1, names[j]: 1}) / 2
                H[i][j] = H[j][i] = c
    return H


def _congruence(A, T, E):
    n = len(A)
    AE = [[sum(A[i][k] * E[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    A2 = [[sum(E[k][i] * AE[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    T2 = [[sum(T[i][k] * E[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return A2, T2


def _identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def diagonalize(H):
    """``(T, d)`` with ``T^t H T = diag(d)``, nonzero entries of ``d`` first."""
    n = len(H)
    A = [row[:] for row in H]
    T = _identity(n)
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            E = _identity(n)
            if j is not None:
                E[k][k] = E[j][j] = Fraction(0)
                E[k][j] = E[j][k] = Fraction(1)
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    continue
                # x_j -> x_j + x_k turns the pairing into a square
                E[j][k] = Fraction(1)
            A, T = _congruence(A, T, E)
        E = _identity(n)
        for i in range(k + 1, n):
            E[k][i] = -A[k][i] / A[k][k]
        A, T = _congruence(A, T, E)
    perm = sorted(range(n), key=lambda i: A[i][i] == 0)
    T = [[row[j] for j in perm] for row in T]
    return T, [A[j][j] for j in perm]


def _linear_change(f: MultiPoly, names, T) -> MultiPoly:
    """Substitute ``x_i -> sum_j T[i][j] x_j``."""
    sub = {}
    for i, n in enumerate(names):
        sub[n] = sum((T[i][j] * var(m) for j, m in enumerate(names) if T[i][j]),
                     MultiPoly.constant(0))
    return f.subs(sub)


# ---------------------------------------------------------------------------
# splitting lemma

def _split_square(f: MultiPoly, s: str, d: Fraction, N: int, others) -> MultiPoly:
    """Eliminate ``s`` from ``f = d s^2 + ...``: return ``f(phi, others)``
    where ``phi`` solves ``df/ds = 0`` modulo degree ``N + 1``."""
    rest = f.diff(s) - 2 * d * var(s)
    phi = MultiPoly.constant(0)
    # after k rounds phi is exact through degree k + 1, so round k only needs
    # to be computed through degree k + 2
    for k in range(N + 2):
        n = min(N, k + 2)
        nxt = (-(rest.subs({s: phi}, truncate=n)) / (2 * d)).truncated(n, others)
        if n == N and nxt == phi:
            break
        phi = nxt
    else:
        raise InconclusiveError("splitting did not stabilize")
    return f.subs({s: phi}, truncate=N).truncated(N, others)


def _order(f: MultiPoly, names) -> int | None:
    if f.is_zero():
        return None
    return min(sum(e.get(n, 0) for n in names) for e in _exponent_dicts(f))


def _exponent_dicts(f: MultiPoly):
    vs = f.variables
    for e, _ in f.items():
        yield dict(zip(vs, e))


# ---------------------------------------------------------------------------
# binary residues

def _change_2(g: MultiPoly, x: str, y: str, l1: MultiPoly, l2: MultiPoly, N: int) -> MultiPoly:
    """Rewrite ``g`` in coordinates ``X = l1, Y = l2`` (reusing the names)."""
    a, b = l1.coefficient({x: 1}), l1.coefficient({y: 1})
    c, e = l2.coefficient({x: 1}), l2.coefficient({y: 1})
    det = a * e - b * c
    if det == 0:
        raise DomainError("dependent linear forms")
    X, Y = var(x), var(y)
    sub = {x: (e * X - b * Y) / det, y: (-c * X + a * Y) / det}
    return g.subs(sub, truncate=N)


def _classify_binary(g: MultiPoly, x: str, y: str, N: int) -> ADEType:
    names = (x, y)
    g3 = g.homogeneous_part(3, names)
    if g3.is_zero():
        raise NotADEError("corank 2 with vanishing cubic term: not a simple singularity")
    h = poly_gcd(g3.diff(x), g3.diff(y))
    dh = h.total_degree() if not h.is_zero() else 0
    if dh == 0:
        return ADEType("D", 4)
    if dh == 1:
        l1 = h
        l2 = g3.exact_div(l1 * l1)
        return _d_series(_change_2(g, x, y, l1, l2, N), x, y, N)
    # perfect cube
    l = h.diff(x) if h.coefficient({x: 2}) else h.diff(y)
    l2 = var(y) if l.coefficient({x: 1}) else var(x)
    g = _change_2(g, x, y, l, l2, N)
    if g.coefficient({y: 4}):
        return ADEType("E", 6)
    if g.coefficient({x: 1, y: 3}):
        return ADEType("E", 7)
    if N >= 5 and g.coefficient({y: 5}):
        return ADEType("E", 8)
    if N < 5:
        raise InconclusiveError("E8 test needs truncation order at least 5")
    raise NotADEError("triple line without y^4, x y^3 or y^5 terms: not simple")


def _d_series(g: MultiPoly, x: str, y: str, N: int) -> ADEType:
    """``g`` has cubic jet ``c x^2 y``; normalize to ``x^2 y + c' y^(k-1)``."""
    names = (x, y)
    c = g.coefficient({x: 2, y: 1})
    g = g / c
    X, Y = var(x), var(y)
    for d in range(4, N + 1):
        gd = g.homogeneous_part(d, names)
        if gd.coefficient({y: d}):
            return ADEType("D", d + 1)
        alpha = MultiPoly.constant(0)
        beta = MultiPoly.constant(0)
        for e in _exponent_dicts(gd):
            a, b = e.get(x, 0), e.get(y, 0)
            coef = gd.coefficient(e)
            if a >= 2:
                beta = beta - coef * X ** (a - 2) * Y ** b
            elif a == 1:
                alpha = alpha - coef / 2 * Y ** (d - 2)
        if alpha or beta:
            g = g.subs({x: X + alpha, y: Y + beta}, truncate=N)
    raise InconclusiveError(f"D-series index exceeds truncation order {N}; raise the order")


# ---------------------------------------------------------------------------

def classify(germ: LocalGerm) -> ADEType:
    """ADE type of an isolated double point.

    Every answer is decided at some degree not above the working order, so
    the germ is first tried at low orders and the order is raised only when
    the answer needs more terms.
    """
    N = germ.truncation_order
    orders = sorted({min(o, N) for o in (8, 12)} | {N})
    for n in orders[:-1]:
        try:
            return _classify_at(germ.f.truncated(n, germ.names), germ.names, n)
        except (InconclusiveError, NotADEError):
            continue
    return _classify_at(germ.f, germ.names, N)


def _classify_at(f: MultiPoly, names, N: int) -> ADEType:
    H = _quadratic_matrix(f, names)
    T, d = diagonalize(H)
    rank = sum(1 for c in d if c)
    if rank == 0:
        raise NotADEError("vanishing quadratic part: not a double point")
    f = _linear_change(f, names, T).truncated(N, names)
    for i in range(rank):
        others = names[i + 1:]
        f = _split_square(f, names[i], d[i], N, others)
    rest = names[rank:]
    if not rest:
        return ADEType("A", 1)
    if len(rest) == 1:
        m = _order(f, rest)
        if m is None:
            raise InconclusiveError(f"A-series index exceeds truncation order {N}; raise the order")
        return ADEType("A", m - 1)
    return _classify_binary(f, rest[0], rest[1], N)


# ---------------------------------------------------------------------------
# the table of double points

POINTS = {
    "p": ((0, 0, 1, 0), "w"),
    "p1": ((0, 0, 0, 1), "y"),
    "p2": ((0, 0, 1, 0), "w"),
}

DOUBLE_POINT_ROWS = ("9(9,1)", "9(7,1)", "10(8,1)", "11(7,1)", "12(6,1)", "13(5,1)", "14(4,0)",
                     "14(4,1)", "15(3,1)", "16(2,1)", "17(1,1)", "18(0,0)")

# (S at p, K at p2, K at p1); "none" = no double point there, None = not applicable
DOUBLE_POINTS = {
    "9(9,1)": ("none", None, None),
    "9(7,1)": (None, "none", "A1"),
    "10(8,1)": ("A1", "A1", "A1"),
    "11(7,1)": ("A3", "A1", "A3"),
    "12(6,1)": ("A5", "A3", "A3"),
    "13(5,1)": ("A7", "A3", "A5"),
    "14(4,0)": ("A9", "A3", "A7"),
    "14(4,1)": ("A9", "A3", "A7"),
    "15(3,1)": ("A11", "A3", "A9"),
    "16(2,1)": ("A13", "A5", "A9"),
    "17(1,1)": ("A15", "A5", "A11"),
    "18(0,0)": ("A17", "E6", "A11"),
}

_COLUMNS = (("S", "p"), ("K", "p2"), ("K", "p1"))


def _table_key(rho) -> str:
    k = str(rho).replace(" ", "")
    if k == "9":
        raise ValueError("rank 9 is ambiguous: use 9(9,1) or 9(7,1)")
    if k == "10":
        return "10(8,1)"
    k = normalize_key(k)
    if k not in DOUBLE_POINTS:
        raise ValueError(f"no row {rho!r} in the double point table")
    return k


def row_models(row: str, seed: int, height: int = 20, retries: int = 32):
    """``(S, K)`` for one row; either may be ``None`` where the row has no such model."""
    if row == "9(9,1)":
        return build_S_rank9(*rank9_coefficients(seed, height)), None
    if row == "9(7,1)":
        q = rank9_quartic_data(seed, height)
        return None, build_K(q.C, q.Q)
    if row == "10(8,1)":
        q = rank10_quartic_data(seed, height)
        u, v = var("u"), var("v")
        a4 = u * v * q.c2 - q.d4
        b6 = q.e3 * q.e3 / 4 - q.c2 * q.d4
        return build_S_rank10(a4, b6), build_K(q.C, q.Q)
    inst = forced_instance(row, seed, height, retries)
    return canonical_from_instance(inst), quartic_from_instance(inst)


def point_type(model, point_name: str, truncation_order: int = DEFAULT_TRUNCATION) -> str:
    """ADE type at a named point, or ``"none"`` if the point is off the model or smooth."""
    pt, chart = POINTS[point_name]
    try:
        germ = localize(model, pt, chart, truncation_order)
    except NotSingularError:
        return "none"
    except DomainError as exc:
        if "does not lie" in str(exc):
            return "none"
        raise
    try:
        return str(classify(germ))
    except InconclusiveError:
        if truncation_order >= MAX_TRUNCATION:
            raise
        return point_type(model, point_name, MAX_TRUNCATION)


@dataclass
class DoublePointReport:
    row: str
    seed: int
    expected: tuple
    observed: tuple
    diffs: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diffs

    def to_dict(self) -> dict:
        return {"row": self.row, "seed": self.seed, "ok": self.ok,
                "expected": list(self.expected), "observed": list(self.observed),
                "diffs": list(self.diffs)}


def classify_double_points(rho, seed: int, height: int = 20, retries: int = 32,
                           truncation_order: int = DEFAULT_TRUNCATION) -> DoublePointReport:
    """Build the models of one row, classify at p, p2, p1 and compare."""
    row = _table_key(rho)
    S, K = row_models(row, seed, height, retries)
    expected = DOUBLE_POINTS[row]
    observed = []
    diffs = []
    for (surface, point), want in zip(_COLUMNS, expected):
        model = S if surface == "S" else K
        if want is None or model is None:
            observed.append(None)
            continue
        got = point_type(model, point, truncation_order)
        observed.append(got)
        if got != want:
            diffs.append(f"{surface} at {point}: expected {want}, found {got}")
    return DoublePointReport(row, seed, expected, tuple(observed), diffs)
