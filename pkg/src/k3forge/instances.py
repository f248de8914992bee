"""Seeded random polynomial data and the forced instances of each Picard rank.

Random rationals are drawn as ``n/d`` with ``|n| <= height`` and
``1 <= d <= height``.  Forced instances impose the vanishing orders at
``v = 0`` that single out each lattice of the family, with every other
coefficient random; genericity consequences that do not depend on the
fibration code (orders at ``v = 0``, squarefreeness and coprimality of
the remaining factors) are validated, and the draw is repeated on failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .poly_engine import MultiPoly, gcd_free_basis, var

__all__ = [
    "RandomSource",
    "GenericityError",
    "ForcedInstance",
    "INSTANCE_KEYS",
    "ORDER_TABLE",
    "normalize_key",
    "forced_instance",
    "binary_form",
    "ternary_form",
    "dehomogenize",
    "is_generic_factor",
    "QuarticData",
    "rank10_quartic_data",
    "rank9_quartic_data",
    "rank9_coefficients",
]

U, V, W = var("u"), var("v"), var("w")


class GenericityError(RuntimeError):
    """No generic instance was found within the retry budget."""


class RandomSource:
    """Deterministic source of bounded-height rationals."""

    def __init__(self, seed: int, height: int = 20):
        if height < 1:
            raise ValueError("height must be positive")
        self.seed = seed
        self.height = height
        self._rng = random.Random(seed)

    def rational(self) -> Fraction:
        h = self.height
        return Fraction(self._rng.randint(-h, h), self._rng.randint(1, h))

    def nonzero(self) -> Fraction:
        while True:
            q = self.rational()
            if q:
                return q

    def integer(self, lo: int, hi: int) -> int:
        return self._rng.randint(lo, hi)

    def point(self, n: int = 3):
        return tuple(self.rational() for _ in range(n))


def binary_form(src: RandomSource, degree: int, order: int = 0, names=("u", "v")) -> MultiPoly:
    """Random form of the given degree in two variables whose order in the
    second variable is exactly ``order``."""
    if not 0 <= order <= degree:
        raise ValueError("order must lie between 0 and the degree")
    x, y = var(names[0]), var(names[1])
    p = MultiPoly.constant(0)
    for i in range(order, degree + 1):
        c = src.nonzero() if i == order else src.rational()
        p = p + c * x ** (degree - i) * y ** i
    return p


def ternary_form(src: RandomSource, degree: int, names=("u", "v", "w")) -> MultiPoly:
    xs = [var(n) for n in names]
    p = MultiPoly.constant(0)
    for combo in combinations_with_replacement(range(3), degree):
        term = MultiPoly.constant(src.rational())
        for k in combo:
            term = term * xs[k]
        p = p + term
    return p


def dehomogenize(p: MultiPoly, name: str = "v") -> MultiPoly:
    return p.subs({name: 1})


def is_generic_factor(parts) -> bool:
    """True when the given forms (dehomogenized at ``v = 1``) are squarefree,
    pairwise coprime and keep their degree, i.e. have no root at ``v = 0``."""
    deh = []
    for p in parts:
        if p.is_zero():
            return False
        q = dehomogenize(p)
        if q.degree("u") != p.total_degree():
            return False
        if q.total_degree() > 0:
            deh.append(q)
    if not deh:
        return True
    basis, table = gcd_free_basis(deh)
    total = sum(b.total_degree() for b in basis)
    if total != sum(q.total_degree() for q in deh):
        return False
    return all(k <= 1 for row in table for k in row)


# (ord_v c2, ord_v d4) for the ranks where h0 = 0
ORDER_TABLE = {
    "12(6,1)": (0, 0),
    "13(5,1)": (0, 1),
    "14(4,1)": (0, 2),
    "15(3,1)": (0, 3),
    "16(2,1)": (1, 3),
    "17(1,1)": (1, 4),
    "18(0,0)": (2, 4),
}

INSTANCE_KEYS = ("10(6,0)", "11(7,1)", "12(6,1)", "13(5,1)", "14(4,0)", "14(4,1)",
                 "15(3,1)", "16(2,1)", "17(1,1)", "18(0,0)")

_ALIASES = {
    "9": "9(9,1)", "10": "10(8,1)", "11": "11(7,1)", "12": "12(6,1)", "13": "13(5,1)",
    "15": "15(3,1)", "16": "16(2,1)", "17": "17(1,1)", "18": "18(0,0)",
}


def normalize_key(key) -> str:
    """Accept ``13``, ``"13"``, ``"13(5,1)"`` or ``"14(4,0)"`` style keys."""
    k = str(key).replace(" ", "")
    if k in ("14", "14(4)"):
        raise ValueError("rank 14 is ambiguous: use 14(4,0) or 14(4,1)")
    return _ALIASES.get(k, k)


@dataclass(frozen=True)
class ForcedInstance:
    """Alternate-fibration data of one lattice together with the quartic parameters.

    ``b8 = a4^2/4 - v^2 b6pp`` and, for the quartic ``w (v + h0 w) y^2 =
    c2 w^2 + e3 w + d4``, ``a4 = v e3 - 2 h0 d4`` and
    ``b8 = a4^2/4 - v^2 (e3^2/4 - c2 d4)``.  For the H+N row only ``a4`` and
    ``b8`` are meaningful.
    """

    key: str
    seed: int
    a4: MultiPoly
    b8: MultiPoly
    b6pp: MultiPoly | None = None
    h0: Fraction | None = None
    c2: MultiPoly | None = None
    e3: MultiPoly | None = None
    d4: MultiPoly | None = None
    d4p: MultiPoly | None = None
    attempts: int = 1


def _generic_alternate(a4, b8, extra=()):
    return is_generic_factor([b8, a4 * a4 - 4 * b8, *extra])


def _draw(key: str, src: RandomSource):
    if key == "10(6,0)":
        a4 = binary_form(src, 4)
        b8 = binary_form(src, 8)
        ok = _generic_alternate(a4, b8)
        return ForcedInstance(key, src.seed, a4, b8), ok
    if key == "11(7,1)":
        a4 = binary_form(src, 4)
        d4 = binary_form(src, 4)
        al = [a4.coefficient({"u": 4 - i, "v": i}) for i in range(5)]
        de = [d4.coefficient({"u": 4 - i, "v": i}) for i in range(5)]
        dp = [al[0] ** 2 / (4 * de[0]),
              al[0] * (2 * al[1] * de[0] - al[0] * de[1]) / (4 * de[0] ** 2)]
        dp += [src.rational() for _ in range(3)]
        d4p = sum((c * U ** (4 - i) * V ** i for i, c in enumerate(dp)), MultiPoly.constant(0))
        b8 = d4 * d4p
        b6pp = (a4 * a4 / 4 - b8).exact_div(V ** 2)
        h0 = -al[0] / (2 * de[0])
        e3 = (a4 + 2 * h0 * d4).exact_div(V)
        c2 = (d4p + h0 ** 2 * d4 + h0 * a4).exact_div(V ** 2)
        ok = (is_generic_factor([d4, d4p, b6pp]) and not c2.is_zero())
        return ForcedInstance(key, src.seed, a4, b8, b6pp, h0, c2, e3, d4, d4p), ok
    if key == "14(4,0)":
        a2 = binary_form(src, 2)
        d3 = binary_form(src, 3)
        q2 = binary_form(src, 2)
        a4 = V ** 2 * a2
        b5 = V * a2 * a2 / 4 - d3 * q2
        b6pp = V * b5
        b8 = V ** 3 * d3 * q2
        ok = is_generic_factor([d3 * q2, b5, a2])
        return ForcedInstance(key, src.seed, a4, b8, b6pp, Fraction(0), q2, V * a2, V * d3, None), ok
    if key in ORDER_TABLE:
        i, j = ORDER_TABLE[key]
        e3 = binary_form(src, 3)
        c2 = binary_form(src, 2, i)
        d4 = binary_form(src, 4, j)
        a4 = V * e3
        b8 = V ** 2 * c2 * d4
        b6pp = e3 * e3 / 4 - c2 * d4
        rest_c = c2.exact_div(V ** i)
        rest_d = d4.exact_div(V ** j)
        ok = is_generic_factor([rest_c * rest_d, b6pp]) and (i + j == 0 or b6pp.order("v") == 0)
        return ForcedInstance(key, src.seed, a4, b8, b6pp, Fraction(0), c2, e3, d4, None), ok
    raise KeyError(f"no forced instance for {key!r}")


def forced_instance(key, seed: int, height: int = 20, retries: int = 32) -> ForcedInstance:
    """Random instance of the given lattice row, validated for genericity."""
    key = normalize_key(key)
    src = RandomSource(seed, height)
    for attempt in range(1, retries + 1):
        inst, ok = _draw(key, src)
        if ok:
            return ForcedInstance(**{**inst.__dict__, "attempts": attempt})
    raise GenericityError(f"no generic {key} instance after {retries} draws (seed {seed})")


@dataclass(frozen=True)
class QuarticData:
    """Conic and quartic of ``y^2 C = Q`` drawn at random."""

    C: MultiPoly
    Q: MultiPoly
    c2: MultiPoly | None = None
    e3: MultiPoly | None = None
    d4: MultiPoly | None = None


def rank10_quartic_data(seed: int, height: int = 20) -> QuarticData:
    """``C = w^2 - uv`` and ``Q = c2 w^2 + e3 w + d4`` with random c2, e3, d4."""
    src = RandomSource(seed, height)
    c2, e3, d4 = binary_form(src, 2), binary_form(src, 3), binary_form(src, 4)
    return QuarticData(W * W - U * V, c2 * W * W + e3 * W + d4, c2, e3, d4)


def rank9_quartic_data(seed: int, height: int = 20) -> QuarticData:
    """Random plane conic and quartic."""
    src = RandomSource(seed, height)
    return QuarticData(ternary_form(src, 2), ternary_form(src, 4))


def rank9_coefficients(seed: int, height: int = 20):
    """``(c0, c2, c4, c6)`` for ``y^2 = c0 w^6 + c2 w^4 + c4 w^2 + c6`` with ``c0 != 0``."""
    src = RandomSource(seed, height)
    return (src.nonzero(), binary_form(src, 2), binary_form(src, 4), binary_form(src, 6))
