"""Elliptic fibrations over the projective line in Weierstrass form.

A model ``y^2 = x^3 + A x^2 + B x + C`` has coefficients that are binary
forms in ``u, v`` of degrees ``2k, 4k, 6k`` (``k = 2`` for K3 surfaces,
``k = 1`` for rational elliptic surfaces).  Singular fibres are read off
with Tate's algorithm in the form that only needs the valuations of
``c4``, ``c6`` and the discriminant at each place.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import inf
from pathlib import Path

from .instances import GenericityError, RandomSource, binary_form, ternary_form
from .poly_engine import (DomainError, MultiPoly, RationalFunction, gcd_free_basis, parse_poly,
                          resultant, squarefree_part, var)

__all__ = [
    "WeierstrassModel",
    "Fiber",
    "FiberConfiguration",
    "GenusOneModel",
    "NonMinimalError",
    "build_alternate",
    "build_b8",
    "discriminant",
    "c4_c6",
    "j_invariant",
    "fiber_configuration",
    "classify_valuations",
    "shioda_tate_rank",
    "two_isogeny",
    "quartic_invariants",
    "quartic_to_weierstrass",
    "pencil_fibration",
    "point_through",
    "frame_of",
    "load_model",
    "model_from_data",
    "conic_quartic_pencil",
    "rank10_pencil",
]

U, V = var("u"), var("v")
BASE = ("u", "v")


class NonMinimalError(DomainError):
    """Valuations do not fit any Kodaira type and cannot be reduced."""


def _poly(x) -> MultiPoly:
    return MultiPoly.coerce(x)


def _check_form(p: MultiPoly, degree: int, label: str):
    extra = [n for n in p.variables if n not in BASE]
    if extra:
        raise DomainError(f"{label} involves {extra}; only u and v are allowed")
    if p.is_zero():
        return
    if not p.is_homogeneous() or p.total_degree() != degree:
        raise DomainError(f"{label} must be a binary form of degree {degree}")


@dataclass(frozen=True)
class WeierstrassModel:
    """``y^2 = x^3 + A x^2 + B x + C`` over ``P^1_[u:v]``."""

    A: MultiPoly
    B: MultiPoly
    C: MultiPoly
    weight: int = 2

    def __post_init__(self):
        object.__setattr__(self, "A", _poly(self.A))
        object.__setattr__(self, "B", _poly(self.B))
        object.__setattr__(self, "C", _poly(self.C))
        if self.weight < 0:
            raise DomainError("weight must be non-negative")
        for p, d, name in ((self.A, 2, "A"), (self.B, 4, "B"), (self.C, 6, "C")):
            _check_form(p, d * self.weight, name)

    @property
    def euler_total(self) -> int:
        return 12 * self.weight

    def equation(self) -> MultiPoly:
        x, y = var("X"), var("Y")
        return y * y - (x ** 3 + self.A * x * x + self.B * x + self.C)


def build_alternate(a4, b8) -> WeierstrassModel:
    """The model ``y^2 = x (x^2 + a4 x + b8)`` carrying a 2-torsion section."""
    return WeierstrassModel(_poly(a4), _poly(b8), MultiPoly.constant(0))


def build_b8(a4, b6pp) -> MultiPoly:
    """``b8 = a4^2/4 - v^2 b6''``."""
    a4 = _poly(a4)
    return a4 * a4 / 4 - V ** 2 * _poly(b6pp)


def c4_c6(m: WeierstrassModel):
    A, B, C = m.A, m.B, m.C
    c4 = 16 * (A * A - 3 * B)
    c6 = -64 * A ** 3 + 288 * A * B - 864 * C
    return c4, c6


def discriminant(m: WeierstrassModel) -> MultiPoly:
    A, B, C = m.A, m.B, m.C
    return 16 * (A * A * B * B - 4 * A ** 3 * C - 4 * B ** 3 - 27 * C * C + 18 * A * B * C)


def j_invariant(m: WeierstrassModel) -> RationalFunction:
    delta = discriminant(m)
    if delta.is_zero():
        raise DomainError("discriminant vanishes identically")
    c4, _ = c4_c6(m)
    return RationalFunction(c4 ** 3, delta)


_ADDITIVE = {2: ("II", 2, None), 3: ("III", 3, "A1"), 4: ("IV", 4, "A2"),
             6: ("I0*", 6, "D4"), 8: ("IV*", 8, "E6"), 9: ("III*", 9, "E7"),
             10: ("II*", 10, "E8")}


def classify_valuations(vc4, vc6, vd):
    """Kodaira symbol, Euler number and root lattice from valuations.

    Zero polynomials have valuation ``inf``.  Raises ``NonMinimalError`` when
    the valuations are non-minimal or inconsistent.
    """
    if vd <= 0:
        return "I0", 0, None
    if vc4 >= 4 and vc6 >= 6 and vd >= 12:
        raise NonMinimalError(f"non-minimal valuations ({vc4}, {vc6}, {vd})")
    if vc4 == 0:
        return f"I{vd}", vd, (f"A{vd - 1}" if vd >= 2 else None)
    if vc4 == 2 and vc6 == 3 and vd > 6:
        n = vd - 6
        return f"I{n}*", vd, f"D{n + 4}"
    if vd in _ADDITIVE:
        return _ADDITIVE[vd]
    raise NonMinimalError(f"valuations ({vc4}, {vc6}, {vd}) match no Kodaira type")


@dataclass(frozen=True)
class Fiber:
    place: str
    multiplicity: int
    kodaira: str
    euler: int
    root: str | None

    def to_dict(self):
        return {"place": self.place, "count": self.multiplicity, "kodaira": self.kodaira,
                "euler": self.euler, "root": self.root}


def _root_rank(label):
    if not label:
        return 0
    return int(label[1:])


_ORDER = {"A": 0, "D": 1, "E": 2}


def _format_roots(labels):
    counts = Counter(l for l in labels if l)
    keys = sorted(counts, key=lambda l: (-_ORDER[l[0]], -int(l[1:])))
    return "+".join(f"{counts[k]}{k}" if counts[k] > 1 else k for k in keys) or "0"


def _kodaira_key(sym):
    if sym.startswith("I") and sym[1:].rstrip("*").isdigit():
        n = int(sym[1:].rstrip("*"))
        return (1 if sym.endswith("*") else 0, n)
    return (2, {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}[sym])


@dataclass(frozen=True)
class FiberConfiguration:
    fibers: tuple
    euler_sum: int
    expected_euler: int
    mw_two_torsion: bool
    reductions: int = 0

    def counts(self) -> dict:
        c: Counter = Counter()
        for f in self.fibers:
            c[f.kodaira] += f.multiplicity
        return dict(c)

    def summary(self) -> str:
        """Compact text such as ``7I2+10I1`` ordered by Euler number."""
        counts = self.counts()
        keys = sorted(counts, key=lambda s: (-dict((f.kodaira, f.euler) for f in self.fibers)[s],
                                             _kodaira_key(s)))
        return "+".join(f"{counts[k]}{k}" if counts[k] > 1 else k for k in keys)

    @property
    def roots(self) -> str:
        labels = []
        for f in self.fibers:
            labels.extend([f.root] * f.multiplicity)
        return _format_roots(labels)

    @property
    def root_rank(self) -> int:
        return sum(_root_rank(f.root) * f.multiplicity for f in self.fibers)

    def to_dict(self):
        return {"fibers": [f.to_dict() for f in self.fibers], "summary": self.summary(),
                "roots": self.roots, "euler_sum": self.euler_sum,
                "mw_two_torsion": self.mw_two_torsion}


def _places(c4, c6, delta):
    """Yield ``(label, degree, form, (v c4, v c6, v delta))`` for every place with
    positive discriminant valuation."""
    vd = delta.order("v")
    if vd > 0:
        yield "[1:0]", 1, V, (c4.order("v"), c6.order("v"), vd)
    polys = {"c4": c4, "c6": c6, "d": delta}
    deh = {k: p.subs({"v": 1}) for k, p in polys.items() if not p.is_zero()}
    nonconst = [k for k, p in deh.items() if not p.is_constant()]
    if "d" not in nonconst:
        return
    basis, table = gcd_free_basis([deh[k] for k in nonconst])
    rows = dict(zip(nonconst, table))
    for j, b in enumerate(basis):
        ed = rows["d"][j]
        if ed == 0:
            continue
        e4 = inf if c4.is_zero() else rows.get("c4", [0] * len(basis))[j]
        e6 = inf if c6.is_zero() else rows.get("c6", [0] * len(basis))[j]
        d = b.total_degree()
        yield f"[{b.to_text()}]", d, _homogenize(b, d), (e4, e6, ed)


def _homogenize(b: MultiPoly, d: int) -> MultiPoly:
    coeffs = b.univariate_coeffs("u") if b.variables else [b.constant_value()]
    return sum((c * U ** k * V ** (d - k) for k, c in enumerate(coeffs) if c), MultiPoly.constant(0))


def fiber_configuration(m: WeierstrassModel) -> FiberConfiguration:
    """Singular fibres of the model with their Kodaira types.

    Places where the model is non-minimal are removed by the substitution
    ``x -> p^2 x, y -> p^3 y``; each reduction lowers the weight by the
    degree of the place.
    """
    delta = discriminant(m)
    if delta.is_zero():
        raise DomainError("discriminant vanishes identically; the model is not elliptic")
    c4, c6 = c4_c6(m)
    weight = m.weight
    reductions = 0
    while True:
        bad = None
        for label, d, form, vals in _places(c4, c6, delta):
            if vals[0] >= 4 and vals[1] >= 6 and vals[2] >= 12:
                bad = (d, form)
                break
        if bad is None:
            break
        d, form = bad
        c4 = c4.exact_div(form ** 4) if not c4.is_zero() else c4
        c6 = c6.exact_div(form ** 6) if not c6.is_zero() else c6
        delta = delta.exact_div(form ** 12)
        weight -= d
        reductions += 1
    fibers = []
    for label, d, form, vals in _places(c4, c6, delta):
        sym, e, root = classify_valuations(*vals)
        fibers.append(Fiber(label, d, sym, e, root))
    fibers.sort(key=lambda f: (-f.euler, f.place))
    total = sum(f.euler * f.multiplicity for f in fibers)
    return FiberConfiguration(tuple(fibers), total, 12 * weight, m.C.is_zero(), reductions)


def shioda_tate_rank(config: FiberConfiguration, rho: int) -> int:
    """Mordell-Weil rank forced by the Shioda-Tate formula."""
    r = rho - 2 - config.root_rank
    if r < 0:
        raise DomainError(f"trivial lattice has rank {2 + config.root_rank} > rho = {rho}")
    return r


def frame_of(m: WeierstrassModel) -> str:
    return fiber_configuration(m).roots


def two_isogeny(m: WeierstrassModel) -> WeierstrassModel:
    """Quotient by the 2-torsion section ``(0, 0)``."""
    if not m.C.is_zero():
        raise DomainError("the model has no 2-torsion section at x = 0")
    return WeierstrassModel(-2 * m.A, m.A * m.A - 4 * m.B, MultiPoly.constant(0), m.weight)


# ---------------------------------------------------------------------------
# genus one models

@dataclass(frozen=True)
class GenusOneModel:
    """``y^2 = a t^4 + b t^3 + c t^2 + d t + e`` with coefficients forms in u, v.

    ``point`` optionally records a known rational point of the generic fibre
    as ``(t, y)``; the Jacobian does not need it.
    """

    coeffs: tuple
    variable: str = "t"
    point: tuple | None = None

    def __post_init__(self):
        cs = tuple(_poly(c) for c in self.coeffs)
        if len(cs) != 5:
            raise DomainError("a quartic needs five coefficients")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_quartic(cls, q: MultiPoly, variable: str = "t", point=None) -> "GenusOneModel":
        parts = _poly(q).coefficients_in(variable)
        if parts and max(parts) > 4:
            raise DomainError("degree in the fibre variable exceeds 4")
        zero = MultiPoly.constant(0)
        return cls(tuple(parts.get(4 - i, zero) for i in range(5)), variable, point)

    def quartic(self) -> MultiPoly:
        t = var(self.variable)
        return sum((c * t ** (4 - i) for i, c in enumerate(self.coeffs)), MultiPoly.constant(0))


def quartic_invariants(g: GenusOneModel):
    a, b, c, d, e = g.coeffs
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c ** 3
    return I, J


def quartic_to_weierstrass(g: GenusOneModel) -> WeierstrassModel:
    """Jacobian ``y^2 = x^3 - 27 I x - 27 J`` of a genus one quartic."""
    I, J = quartic_invariants(g)
    if (4 * I ** 3 - J * J).is_zero():
        raise DomainError("the quartic has a repeated root for every fibre")
    if not I.is_zero():
        deg, div = I.total_degree(), 4
    else:
        deg, div = J.total_degree(), 6
    if deg % div:
        raise DomainError("quartic coefficients do not have the weights of a fibration")
    return WeierstrassModel(MultiPoly.constant(0), -27 * I, -27 * J, deg // div)


def point_through(p, base: MultiPoly, others=(), names=("u", "v", "w")) -> MultiPoly:
    """Adjust ``base`` by a multiple of a monomial so that it vanishes at ``p``."""
    base = _poly(base)
    vals = dict(zip(names, p))
    val = base.evaluate(vals).constant_value()
    if val == 0:
        return base
    d = base.total_degree()
    for mono in ([(d, 0, 0), (0, d, 0), (0, 0, d)] + list(others)):
        m = MultiPoly.constant(1)
        for n, k in zip(names, mono):
            m = m * var(n) ** k
        mv = m.evaluate(vals).constant_value()
        if mv:
            return base - (val / mv) * m
    raise DomainError("cannot force the point: every coordinate vanishes")


def pencil_fibration(C, Q, p0, names=("u", "v", "w")) -> GenusOneModel:
    """Genus one fibration of ``y^2 C = Q`` given by lines through ``p0``.

    ``p0`` is a point of the plane lying on both ``C`` and ``Q``.  The line
    through ``p0`` and ``s e_i + r e_j`` is parametrised as ``p0 + t q``;
    the restriction of ``C Q`` is ``t^2`` times a quartic in ``t`` whose
    coefficients are forms in ``[s:r]`` (renamed ``[u:v]``).
    """
    C, Q = _poly(C), _poly(Q)
    p0 = tuple(Fraction(x) for x in p0)
    vals = dict(zip(names, p0))
    if C.evaluate(vals).constant_value() or Q.evaluate(vals).constant_value():
        raise DomainError("the base point must lie on both curves")
    if not any(p0):
        raise DomainError("the zero vector is not a point")
    # choose the two coordinate directions completing p0 to a basis
    k = next(i for i, x in enumerate(p0) if x)
    i, j = [n for n in range(3) if n != k]
    s, r, t = var("u"), var("v"), var("t")
    subst = {}
    for idx, name in enumerate(names):
        comp = MultiPoly.constant(p0[idx])
        if idx == i:
            comp = comp + t * s
        elif idx == j:
            comp = comp + t * r
        subst[name] = comp
    CQ = (C * Q).subs(subst)
    quart = CQ.exact_div(t * t)
    return GenusOneModel.from_quartic(quart, "t", point=None)


def _squarefree_of_degree(p: MultiPoly, degree: int) -> bool:
    if p.is_zero() or p.total_degree() != degree:
        return False
    return squarefree_part(p).total_degree() == degree


def _conic_det(C: MultiPoly, names=("u", "v", "w")) -> Fraction:
    m = [[C.coefficient({a: 2}) if a == b else C.coefficient({a: 1, b: 1}) / 2
          for b in names] for a in names]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def conic_quartic_pencil(seed: int, height: int = 20, retries: int = 32):
    """``(C, Q, p0)``: a smooth conic and a quartic meeting it transversally,
    both forced through a random point ``p0``."""
    src = RandomSource(seed, height)
    for _ in range(retries):
        p0 = src.point()
        if not any(p0):
            continue
        C = point_through(p0, ternary_form(src, 2))
        Q = point_through(p0, ternary_form(src, 4))
        if _conic_det(C) == 0:
            continue
        if _squarefree_of_degree(resultant(C, Q, "w").subs({"v": 1}), 8):
            return C, Q, p0
    raise GenericityError(f"no transversal conic and quartic after {retries} draws (seed {seed})")


def rank10_pencil(seed: int, height: int = 20, retries: int = 32):
    """``(C, Q, p0)`` with ``C = w^2 - uv`` and ``Q = c2 w^2 + e3 w + d4`` through
    ``p0 = [1 : w0^2 : w0]``; the coefficient of ``u^4`` in ``d4`` is solved for.

    Draws are repeated until ``Q`` has an ordinary node at ``[0:0:1]``
    (``c2`` has distinct roots) and meets ``C`` in eight distinct points.
    """
    src = RandomSource(seed, height)
    w = var("w")
    s = var("s")
    for _ in range(retries):
        w0 = src.nonzero()
        c2, e3 = binary_form(src, 2), binary_form(src, 3)
        deltas = [src.rational() for _ in range(5)]
        at = {"u": 1, "v": w0 * w0}
        rest = (c2.evaluate(at).constant_value() * w0 * w0 + e3.evaluate(at).constant_value() * w0
                + sum(deltas[i] * w0 ** (2 * i) for i in range(1, 5)))
        deltas[0] = -rest
        d4 = sum((d * U ** (4 - i) * V ** i for i, d in enumerate(deltas)), MultiPoly.constant(0))
        Q = c2 * w * w + e3 * w + d4
        k = [c2.coefficient({"u": 2 - i, "v": i}) for i in range(3)]
        if k[1] ** 2 - 4 * k[0] * k[2] == 0:
            continue
        # C is parametrised by [1 : s^2 : s]
        if not _squarefree_of_degree(Q.subs({"u": 1, "v": s * s, "w": s}), 8):
            continue
        return w * w - U * V, Q, (Fraction(1), w0 * w0, w0)
    raise GenericityError(f"no generic rank-ten pencil after {retries} draws (seed {seed})")


def model_from_data(data) -> WeierstrassModel:
    """Weierstrass model from ``{"A": text, "B": text, "C": text}``; missing keys are zero.

    The weight is read from the degrees of the coefficients.
    """
    if not isinstance(data, dict):
        raise DomainError("a model file must hold a JSON object")
    unknown = set(data) - {"A", "B", "C"}
    if unknown:
        raise DomainError(f"unknown model keys {sorted(unknown)}")
    polys = {k: parse_poly(str(data.get(k, "0"))) for k in ("A", "B", "C")}
    weight = None
    for k, d in (("A", 2), ("B", 4), ("C", 6)):
        p = polys[k]
        if p.is_zero():
            continue
        deg = p.total_degree()
        if deg % d:
            raise DomainError(f"{k} has degree {deg}, not a multiple of {d}")
        if weight is None:
            weight = deg // d
        elif weight != deg // d:
            raise DomainError("coefficient degrees do not share one weight")
    if weight is None:
        raise DomainError("all coefficients are zero")
    return WeierstrassModel(polys["A"], polys["B"], polys["C"], weight)


def load_model(path) -> WeierstrassModel:
    return model_from_data(json.loads(Path(path).read_text()))
