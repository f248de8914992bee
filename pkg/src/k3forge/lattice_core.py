"""Even integer lattices given by Gram matrices.

Covers the standard constructors (root lattices with negated Cartan matrices,
the hyperbolic plane, the Nikulin lattice), Smith and Hermite normal forms,
discriminant groups with their quadratic forms, and the invariants
``(rho, ell, delta)`` of 2-elementary lattices.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

__all__ = [
    "LatticeError",
    "RankDeficiencyError",
    "ClassificationError",
    "OutOfScopeError",
    "InvalidGlueError",
    "Lattice",
    "DiscriminantGroup",
    "TwoElementaryInvariants",
    "make_standard",
    "parse_lattice",
    "smith_normal_form",
    "hermite_normal_form",
    "determinant",
    "discriminant_form",
    "two_elementary_invariants",
    "same_two_elementary_class",
    "overlattice_from_glue",
    "lattice_from_generators",
    "signature",
    "LATTICE_ROWS",
    "LatticeRow",
    "lattice_row",
]

DELTA_ENUMERATION_CAP = 12


class LatticeError(ValueError):
    pass


class RankDeficiencyError(LatticeError):
    pass


class ClassificationError(LatticeError):
    pass


class OutOfScopeError(LatticeError):
    pass


class InvalidGlueError(LatticeError):
    pass


# ---------------------------------------------------------------------------
# integer matrix utilities

def _identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def _transpose(a):
    return [list(r) for r in zip(*a)]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss elimination)."""
    a = [list(map(int, r)) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]]):
    """Return (U, D, V) with U*m*V = D, U and V unimodular.

    D is diagonal (rectangular if m is) with nonnegative entries, each
    dividing the next; zero entries come last.
    """
    a = [list(map(int, r)) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row dst += k*row src
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        if k:
            for r in a:
                r[dst] += k * r[src]
            for r in V:
                r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        # choose the smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        done = False
            if done:
                # enforce divisibility of the rest of the block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if a[i][j] % a[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # move a smaller remainder into the pivot position
            best = None
            for i in range(t, rows):
                if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best][t])):
                    best = i
            if best != t:
                swap_rows(t, best)
            bestc = None
            for j in range(t, cols):
                if a[t][j] and (bestc is None or abs(a[t][j]) < abs(a[t][bestc])):
                    bestc = j
            if bestc != t:
                swap_cols(t, bestc)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, a, V


def hermite_normal_form(vectors: Sequence[Sequence[int]]):
    """Row-style Hermite normal form; returns the nonzero rows (a basis of the span)."""
    a = [list(map(int, r)) for r in vectors]
    if not a:
        return []
    cols = len(a[0])
    r = 0
    for c in range(cols):
        # Euclid on column c among rows r..end
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            others = [i for i in range(r + 1, len(a)) if a[i][c]]
            if not others:
                break
            for i in others:
                q = a[i][c] // a[r][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [row for row in a[:r] if any(row)]


# ---------------------------------------------------------------------------
# lattices

class Lattice:
    """Even integral lattice ``Z^n`` with symmetric Gram matrix."""

    __slots__ = ("gram", "name", "degenerate_ok")

    def __init__(self, gram: Sequence[Sequence[int]], name: str = "", allow_degenerate: bool = False):
        g = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise LatticeError(f"Gram matrix not symmetric at ({i},{j})")
            if g[i][i] % 2:
                raise LatticeError(f"odd diagonal entry at position {i}: lattice is not even")
        if not allow_degenerate and n and determinant(g) == 0:
            raise RankDeficiencyError("degenerate Gram matrix")
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "degenerate_ok", allow_degenerate)

    def __setattr__(self, key, value):
        raise AttributeError("Lattice is immutable")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        return determinant(self.gram)

    def pair(self, x, y):
        return sum(xi * gij * yj for xi, row in zip(x, self.gram) for gij, yj in zip(row, y))

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        label = self.name or "Lattice"
        return f"<{label} rank {self.rank}>"

    def __add__(self, other: "Lattice") -> "Lattice":
        return direct_sum(self, other)

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "gram": [list(r) for r in self.gram]})

    @classmethod
    def from_json(cls, text: str) -> "Lattice":
        data = json.loads(text)
        return cls(data["gram"], data.get("name", ""))

    def change_basis(self, P: Sequence[Sequence[int]]) -> "Lattice":
        """Lattice with Gram P G P^T (rows of P are the new basis vectors)."""
        g = _matmul(_matmul(P, self.gram), _transpose(P))
        return Lattice(g, self.name, self.degenerate_ok)

    def radical_quotient(self) -> "Lattice":
        """Nondegenerate lattice obtained by dividing out the radical."""
        U, D, V = smith_normal_form(self.gram)
        r = sum(1 for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i])
        basis = [[V[i][j] for i in range(self.rank)] for j in range(r)]
        if not basis:
            raise RankDeficiencyError("lattice is totally degenerate")
        return Lattice(_matmul(_matmul(basis, self.gram), _transpose(basis)), self.name)


def direct_sum(*lats: Lattice) -> Lattice:
    n = sum(L.rank for L in lats)
    g = [[0] * n for _ in range(n)]
    off = 0
    for L in lats:
        for i, row in enumerate(L.gram):
            for j, x in enumerate(row):
                g[off + i][off + j] = x
        off += L.rank
    return Lattice(g, "+".join(L.name for L in lats if L.name))


def rescale(L: Lattice, lam: int) -> Lattice:
    return Lattice([[lam * x for x in row] for row in L.gram], f"{L.name}({lam})" if L.name else "")


def _root_lattice(kind: str, n: int) -> Lattice:
    edges = []
    if kind == "A":
        if n < 1:
            raise LatticeError("A_n needs n >= 1")
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "D":
        if n < 4:
            raise LatticeError("D_m needs m >= 4")
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif kind == "E":
        if n not in (6, 7, 8):
            raise LatticeError("E_k needs k in {6,7,8}")
        # chain 0..n-2 with node n-1 attached to node 2
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    else:
        raise LatticeError(f"unknown root system {kind}")
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return Lattice(g, f"{kind}{n}")


def _nikulin() -> Lattice:
    # e1..e8 orthogonal (-2)-vectors plus the half-sum; coordinates doubled.
    eight = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    half = [1] * 8
    ambient = Lattice([[-2 if i == j else 0 for j in range(8)] for i in range(8)])
    gens2 = eight + [half]  # generators scaled by 2
    basis2 = hermite_normal_form(gens2)
    g = [[Fraction(ambient.pair(a, b), 4) for b in basis2] for a in basis2]
    return Lattice([[int(x) for x in row] for row in g], "N")


def make_standard(name: str, *params) -> Lattice:
    """Standard lattices.

    ``make_standard("A", n)``, ``("D", m)``, ``("E", k)``, ``("H",)``,
    ``("N",)``, ``("diag", R)`` for the rank-one lattice ``<R>``,
    ``("rescale", L, lam)`` and ``("sum", L1, L2, ...)``.  A single string
    argument such as ``"A7"`` or ``"E8"`` is also accepted.
    """
    m = re.fullmatch(r"([ADE])(\d+)", name)
    if m and not params:
        return _root_lattice(m.group(1), int(m.group(2)))
    if name in ("A", "D", "E"):
        if len(params) != 1 or not isinstance(params[0], int):
            raise LatticeError(f"{name} needs one integer parameter")
        return _root_lattice(name, params[0])
    if name == "H":
        return Lattice([[0, 1], [1, 0]], "H")
    if name == "N":
        return _nikulin()
    if name == "diag":
        (R,) = params
        if R == 0 or R % 2:
            raise LatticeError("<R> needs a nonzero even R")
        return Lattice([[R]], f"<{R}>")
    if name == "rescale":
        L, lam = params
        if lam == 0:
            raise LatticeError("rescaling factor must be nonzero")
        return rescale(L, lam)
    if name == "sum":
        if not params:
            raise LatticeError("sum needs at least one lattice")
        return direct_sum(*params)
    raise LatticeError(f"unknown standard lattice {name!r}")


def parse_lattice(text: str) -> Lattice:
    """Build a lattice from a name like ``"H(2)+D4+D4"``, ``"H+7A1"``, ``"<2>+<-2>+8A1"``."""
    parts = [p.strip() for p in text.replace(" ", "").split("+") if p.strip()]
    if not parts:
        raise LatticeError("empty lattice name")
    lats = []
    for part in parts:
        m = re.fullmatch(r"(\d*)(.+?)(?:\((-?\d+)\))?", part)
        count = int(m.group(1)) if m.group(1) else 1
        base, scale = m.group(2), m.group(3)
        dm = re.fullmatch(r"<(-?\d+)>", base)
        if dm:
            L = make_standard("diag", int(dm.group(1)))
        elif base in ("H", "N"):
            L = make_standard(base)
        elif re.fullmatch(r"[ADE]\d+", base):
            L = make_standard(base)
        else:
            raise LatticeError(f"cannot parse lattice summand {part!r}")
        if scale is not None:
            L = rescale(L, int(scale))
        lats.extend([L] * count)
    out = direct_sum(*lats)
    return Lattice(out.gram, text)


# ---------------------------------------------------------------------------
# discriminant forms

@dataclass(frozen=True)
class DiscriminantGroup:
    cyclic_orders: tuple
    generators: tuple  # rational vectors (tuples of Fraction) in the lattice basis
    q_values: dict  # (i,) -> q(g_i); (i, j) -> q(g_i + g_j); values in [0, 2)
    gram: tuple

    @property
    def order(self) -> int:
        out = 1
        for d in self.cyclic_orders:
            out *= d
        return out

    def q(self, vec) -> Fraction:
        """Discriminant quadratic form of a rational vector, reduced mod 2."""
        val = sum(Fraction(a) * g * Fraction(b) for a, row in zip(vec, self.gram) for g, b in zip(row, vec))
        return val % 2

    def b(self, x, y) -> Fraction:
        val = sum(Fraction(a) * g * Fraction(c) for a, row in zip(x, self.gram) for g, c in zip(row, y))
        return val % 1


def discriminant_form(L: Lattice) -> DiscriminantGroup:
    n = L.rank
    if n == 0 or L.det() == 0:
        raise RankDeficiencyError("discriminant form needs a nondegenerate lattice")
    U, D, V = smith_normal_form(L.gram)
    orders = []
    gens = []
    for i in range(n):
        d = D[i][i]
        if d > 1:
            orders.append(d)
            gens.append(tuple(Fraction(V[r][i], d) for r in range(n)))
    qv = {}
    tmp = DiscriminantGroup(tuple(orders), tuple(gens), {}, L.gram)
    for i, g in enumerate(gens):
        qv[(i,)] = tmp.q(g)
    for i, j in itertools.combinations(range(len(gens)), 2):
        qv[(i, j)] = tmp.q([a + b for a, b in zip(gens[i], gens[j])])
    return DiscriminantGroup(tuple(orders), tuple(gens), qv, L.gram)


@dataclass(frozen=True)
class TwoElementaryInvariants:
    rho: int
    ell: int
    delta: int

    def __iter__(self):
        return iter((self.rho, self.ell, self.delta))

    def __str__(self):
        return f"({self.rho},{self.ell},{self.delta})"


def two_elementary_invariants(L: Lattice) -> TwoElementaryInvariants:
    disc = discriminant_form(L)
    for d in disc.cyclic_orders:
        if d != 2:
            raise ClassificationError(f"lattice is not 2-elementary: invariant factor {d}")
    ell = len(disc.cyclic_orders)
    if ell <= DELTA_ENUMERATION_CAP:
        delta = 0
        for mask in itertools.product((0, 1), repeat=ell):
            vec = [sum(m * g[k] for m, g in zip(mask, disc.generators)) for k in range(L.rank)]
            if disc.q(vec).denominator != 1:
                delta = 1
                break
    else:
        delta = int(any(q.denominator != 1 for q in disc.q_values.values()))
    return TwoElementaryInvariants(L.rank, ell, delta)


def signature(L: Lattice):
    """(n_plus, n_minus) via exact rational congruence diagonalisation."""
    a = [[Fraction(x) for x in row] for row in L.gram]
    n = len(a)
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    raise RankDeficiencyError("degenerate Gram matrix")
                # e_k -> e_k + e_j makes the pivot 2*a[k][j] nonzero
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for row in a:
                    row[k] += row[j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
                for j in range(k, n):
                    a[j][i] -= f * a[j][k]
    return pos, neg


def same_two_elementary_class(l1: Lattice, l2: Lattice) -> bool:
    for L in (l1, l2):
        sp, sm = signature(L)
        if sp != 1:
            raise OutOfScopeError(f"signature ({sp},{sm}) is not hyperbolic")
    return tuple(two_elementary_invariants(l1)) == tuple(two_elementary_invariants(l2))


def overlattice_from_glue(L: Lattice, w: Sequence) -> Lattice:
    """Lattice L + Z*w for a glue vector w given in the basis of L."""
    w = [Fraction(x) for x in w]
    if len(w) != L.rank:
        raise InvalidGlueError("glue vector has the wrong length")
    if any((2 * x).denominator != 1 for x in w):
        raise InvalidGlueError("glue vector is not half-integral")
    if all(x.denominator == 1 for x in w):
        return L
    Gw = [sum(g * x for g, x in zip(row, w)) for row in L.gram]
    if any(x.denominator != 1 for x in Gw):
        raise InvalidGlueError("glue vector does not pair integrally with the lattice")
    qw = sum(a * b for a, b in zip(w, Gw))
    if qw.denominator != 1 or qw % 2:
        raise InvalidGlueError(f"glue vector has norm {qw}, not an even integer")
    gens2 = [[2 * int(i == j) for j in range(L.rank)] for i in range(L.rank)] + [[int(2 * x) for x in w]]
    basis2 = hermite_normal_form(gens2)
    g = [[Fraction(L.pair(a, b), 4) for b in basis2] for a in basis2]
    return Lattice([[int(x) for x in row] for row in g], L.name + "+glue" if L.name else "")


def lattice_from_generators(vectors: Sequence[Sequence[int]], ambient: Lattice) -> Lattice:
    """Sublattice spanned by integer vectors (coordinates in the ambient basis)."""
    vectors = [list(map(int, v)) for v in vectors]
    if not vectors:
        raise LatticeError("empty generator set")
    if any(len(v) != ambient.rank for v in vectors):
        raise LatticeError("generator length does not match the ambient rank")
    basis = hermite_normal_form(vectors)
    g = [[ambient.pair(a, b) for b in basis] for a in basis]
    return Lattice(g, ambient.name, allow_degenerate=True)


# ---------------------------------------------------------------------------
# the Neron-Severi lattices of the family and their alternative presentations

@dataclass(frozen=True)
class LatticeRow:
    key: str
    rho: int
    ell: int
    delta: int
    names: tuple  # first entry is the presentation used in the list of twelve
    frame: str | None  # reducible fibres of the alternate fibration


LATTICE_ROWS = (
    LatticeRow("9(9,1)", 9, 9, 1, ("H(2)+7A1",), None),
    LatticeRow("10(8,1)", 10, 8, 1, ("H+8A1",), None),
    LatticeRow("10(6,0)", 10, 6, 0, ("H+N", "H(2)+D4+D4"), "8A1"),
    LatticeRow("11(7,1)", 11, 7, 1, ("H+D4+5A1",), "9A1"),
    LatticeRow("12(6,1)", 12, 6, 1, ("H+D6+4A1", "H+D4+D4+2A1"), "D4+6A1"),
    LatticeRow("13(5,1)", 13, 5, 1, ("H+E7+4A1", "H+D8+3A1", "H+D6+D4+A1"), "D6+5A1"),
    LatticeRow("14(4,0)", 14, 4, 0, ("H+D8+D4",), "E7+5A1"),
    LatticeRow("14(4,1)", 14, 4, 1, ("H+E8+4A1", "H+D10+2A1", "H+E7+D4+A1", "H+D6+D6"), "D8+4A1"),
    LatticeRow("15(3,1)", 15, 3, 1, ("H+E8+D4+A1", "H+D12+A1", "H+E7+D6"), "D10+3A1"),
    LatticeRow("16(2,1)", 16, 2, 1, ("H+E8+D6", "H+D14", "H+E7+E7"), "D12+2A1"),
    LatticeRow("17(1,1)", 17, 1, 1, ("H+E8+E7",), "D14+A1"),
    LatticeRow("18(0,0)", 18, 0, 0, ("H+E8+E8",), "D16"),
)

# lattice of the rank-nine row without a Jacobian fibration but with a quartic model
EXTRA_ROWS = (LatticeRow("9(7,1)", 9, 7, 1, ("H+7A1",), None),)


def lattice_row(key: str) -> LatticeRow:
    for row in LATTICE_ROWS + EXTRA_ROWS:
        if row.key == key:
            return row
    raise KeyError(f"unknown lattice row {key!r}")
