"""Intersection theory on dual graphs of smooth rational curves.

A :class:`DualGraph` is a labelled list of (-2)-curves with their
intersection matrix.  Divisor classes are integer vectors over the curve
labels.  On top of the bilinear form this module provides nefness tests
against the listed curves, the checks behind the quartic polarization
``H = D2 + sum(b_j)``, ADE recognition of configurations of (-2)-classes and
the comparison of the lattice spanned by the curves with the expected
2-elementary invariants.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .lattice_core import (
    ClassificationError,
    Lattice,
    LatticeError,
    TwoElementaryInvariants,
    smith_normal_form,
    two_elementary_invariants,
)

__all__ = [
    "FormatError",
    "InvalidInvolutionError",
    "DualGraph",
    "DivisorClass",
    "NefResult",
    "DecompositionReport",
    "NSReport",
    "GraphEntry",
    "GRAPH_CATALOG",
    "graph_entry",
    "load_graph",
    "graph_from_data",
    "builtin_graph_path",
    "divisor",
    "pair",
    "is_nef_against_listed",
    "verify_polarization_decomposition",
    "chain_type",
    "dynkin_type",
    "ns_check",
    "ns_basis",
    "check_involution_invariance",
    "orthogonal_roots",
    "format_root_label",
]

# Nefness against the listed curves is a certificate from this Picard number on.
COMPLETE_GRAPH_RANK = 14


class FormatError(ValueError):
    """A graph file is malformed; the message names the offending location."""


class InvalidInvolutionError(ValueError):
    pass


@dataclass(frozen=True)
class DualGraph:
    """Curves and their intersection matrix.

    For ordinary dual graphs every diagonal entry is -2 and off-diagonal
    entries are nonnegative.  A graph with ``kind == "basis"`` instead holds
    a lattice basis such as ``f1, f2, e1, ..., e8`` whose Gram matrix may
    contain arbitrary even diagonal entries.
    """

    curves: tuple
    gram: tuple
    lattice: str = ""
    notes: str = ""
    kind: str = "curves"
    source: str = ""
    _index: Mapping = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(self.curves)})

    def __len__(self):
        return len(self.curves)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown curve label {label!r}") from None

    def intersection(self, a: str, b: str) -> int:
        return self.gram[self.index(a)][self.index(b)]

    def neighbours(self, label: str):
        i = self.index(label)
        return [c for j, c in enumerate(self.curves) if j != i and self.gram[i][j]]

    def as_lattice(self) -> Lattice:
        return Lattice(self.gram, self.lattice, allow_degenerate=True)

    def curve(self, label: str) -> "DivisorClass":
        v = [0] * len(self)
        v[self.index(label)] = 1
        return DivisorClass(tuple(v))


@dataclass(frozen=True)
class DivisorClass:
    """Integer combination of the curves of a graph."""

    coefficients: tuple

    def __add__(self, other):
        _same_length(self, other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        _same_length(self, other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coefficients))

    def __mul__(self, k: int):
        return DivisorClass(tuple(k * a for a in self.coefficients))

    __rmul__ = __mul__

    def __len__(self):
        return len(self.coefficients)

    def support(self, g: DualGraph):
        return {c: a for c, a in zip(g.curves, self.coefficients) if a}

    def to_text(self, g: DualGraph) -> str:
        parts = []
        for label, a in self.support(g).items():
            coeff = "" if abs(a) == 1 else str(abs(a))
            sign = "-" if a < 0 else "+"
            parts.append(f"{sign} {coeff}{label}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _same_length(d1: DivisorClass, d2: DivisorClass):
    if len(d1) != len(d2):
        raise ValueError(f"divisor lengths differ: {len(d1)} vs {len(d2)}")


# ---------------------------------------------------------------------------
# loading

def _checked_matrix(curves, gram, where, basis):
    n = len(curves)
    if len(gram) != n or any(len(row) != n for row in gram):
        raise FormatError(f"{where}: Gram matrix must be {n}x{n}")
    for i in range(n):
        for j in range(n):
            if gram[i][j] != gram[j][i]:
                raise FormatError(
                    f"{where}: intersection matrix not symmetric at ({curves[i]}, {curves[j]})")
            if not basis and i != j and gram[i][j] < 0:
                raise FormatError(
                    f"{where}: negative intersection {gram[i][j]} between {curves[i]} and {curves[j]}")
        if not basis and gram[i][i] != -2:
            raise FormatError(f"{where}: diagonal entry for {curves[i]} is {gram[i][i]}, expected -2")
        if basis and gram[i][i] % 2:
            raise FormatError(f"{where}: odd self-intersection for {curves[i]}")


def graph_from_data(data: Mapping, source: str = "<data>") -> DualGraph:
    """Validate a decoded graph document and build the graph."""
    if not isinstance(data, Mapping):
        raise FormatError(f"{source}: top level must be an object")
    curves = data.get("curves")
    if not isinstance(curves, list) or not curves or not all(isinstance(c, str) for c in curves):
        raise FormatError(f"{source}: 'curves' must be a nonempty list of labels")
    seen = set()
    for pos, c in enumerate(curves):
        if c in seen:
            raise FormatError(f"{source}: curves[{pos}]: duplicate label {c!r}")
        seen.add(c)
    kind = data.get("kind", "curves")
    index = {c: i for i, c in enumerate(curves)}
    n = len(curves)
    if kind == "basis":
        gram = data.get("gram")
        if not isinstance(gram, list):
            raise FormatError(f"{source}: basis file needs a 'gram' matrix")
        try:
            gram = [[int(x) for x in row] for row in gram]
        except (TypeError, ValueError):
            raise FormatError(f"{source}: 'gram' entries must be integers") from None
    elif kind == "curves":
        gram = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = data.get("edges", [])
        if not isinstance(edges, list):
            raise FormatError(f"{source}: 'edges' must be a list")
        for pos, edge in enumerate(edges):
            where = f"{source}: edges[{pos}]"
            if not (isinstance(edge, list) and len(edge) == 3):
                raise FormatError(f"{where}: expected [label, label, weight]")
            a, b, w = edge
            if a not in index or b not in index:
                raise FormatError(f"{where}: unknown label in {edge!r}")
            if a == b:
                raise FormatError(f"{where}: loop at {a}")
            if not isinstance(w, int) or isinstance(w, bool):
                raise FormatError(f"{where}: weight must be an integer")
            if w < 0:
                raise FormatError(f"{where}: negative intersection {w} between {a} and {b}")
            i, j = index[a], index[b]
            if gram[i][j]:
                raise FormatError(f"{where}: repeated edge {a}-{b}")
            gram[i][j] = gram[j][i] = w
    else:
        raise FormatError(f"{source}: unknown kind {kind!r}")
    _checked_matrix(curves, gram, source, kind == "basis")
    return DualGraph(
        curves=tuple(curves),
        gram=tuple(tuple(r) for r in gram),
        lattice=str(data.get("lattice", "")),
        notes=str(data.get("notes", "")),
        kind=kind,
        source=source,
    )


def load_graph(path) -> DualGraph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"{path}: cannot read file ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return graph_from_data(data, str(path))


def builtin_graph_path(name: str) -> Path:
    """Path of a graph file shipped with the package (name with or without .json)."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("k3forge") / "data" / "graphs" / name))


# ---------------------------------------------------------------------------
# divisors

_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*([A-Za-z][A-Za-z0-9_]*)\s*")


def divisor(g: DualGraph, spec) -> DivisorClass:
    """Build a divisor class from a label-to-coefficient mapping or a string.

    Strings look like ``"2A1 + 2A2 - A4"`` or ``"3f1+3f2-e1-e2"``.
    """
    if isinstance(spec, DivisorClass):
        if len(spec) != len(g):
            raise ValueError("divisor length does not match the graph")
        return spec
    coeffs = [0] * len(g)
    if isinstance(spec, str):
        pos = 0
        text = spec.strip()
        if not text:
            raise ValueError("empty divisor string")
        while pos < len(text):
            m = _TERM.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse divisor near {text[pos:]!r}")
            sign, num, label = m.groups()
            if pos and not sign:
                raise ValueError(f"missing sign before {label!r}")
            k = int(num) if num else 1
            coeffs[g.index(label)] += -k if sign == "-" else k
            pos = m.end()
    else:
        for label, k in dict(spec).items():
            coeffs[g.index(label)] += int(k)
    return DivisorClass(tuple(coeffs))


def pair(g: DualGraph, d1: DivisorClass, d2: DivisorClass) -> int:
    if len(d1) != len(g) or len(d2) != len(g):
        raise ValueError(f"dimension mismatch: graph has {len(g)} curves, divisors have {len(d1)} and {len(d2)}")
    x, y = d1.coefficients, d2.coefficients
    return sum(xi * gij * yj for xi, row in zip(x, g.gram) if xi for gij, yj in zip(row, y))


def _degrees(g: DualGraph, d: DivisorClass):
    return [sum(gij * dj for gij, dj in zip(row, d.coefficients)) for row in g.gram]


@dataclass(frozen=True)
class NefResult:
    ok: bool
    witness: str | None
    complete: bool

    @property
    def status(self) -> str:
        if not self.ok:
            return "fail"
        return "pass" if self.complete else "partial"

    def __bool__(self):
        return self.ok


def is_nef_against_listed(g: DualGraph, d: DivisorClass, complete: bool | None = None) -> NefResult:
    """Check ``d . C >= 0`` for every listed curve ``C``.

    ``complete`` says whether the listed curves are all the (-2)-curves of the
    surface; by default this is assumed from Picard number 14 on.  When the
    list is not complete a positive answer is only a necessary condition.
    """
    if len(d) != len(g):
        raise ValueError("divisor length does not match the graph")
    if complete is None:
        complete = g.kind == "curves" and ns_rank(g) >= COMPLETE_GRAPH_RANK
    for label, deg in zip(g.curves, _degrees(g, d)):
        if deg < 0:
            return NefResult(False, label, complete)
    return NefResult(True, None, complete)


def ns_rank(g: DualGraph) -> int:
    return len(ns_basis(g))


# ---------------------------------------------------------------------------
# quartic polarization

@dataclass
class DecompositionReport:
    checks: dict
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def verify_polarization_decomposition(g: DualGraph, H, D2, a_set, b_set,
                                      weights_b: Sequence[int] | None = None) -> DecompositionReport:
    """Check the identities tying the quartic polarization to ``D2`` and the exceptional sets.

    ``H`` may be ``None``, in which case it is formed as ``D2 + sum(w_j b_j)``.
    Elements of ``a_set`` and ``b_set`` are labels, mappings or strings
    accepted by :func:`divisor`.
    """
    D2 = divisor(g, D2)
    a = [divisor(g, x) for x in a_set]
    b = [divisor(g, x) for x in b_set]
    weights = list(weights_b) if weights_b is not None else [1] * len(b)
    if len(weights) != len(b):
        raise ValueError("weights_b must have one entry per element of b_set")
    combo = D2
    for w, bj in zip(weights, b):
        combo = combo + w * bj
    H = combo if H is None else divisor(g, H)

    checks, failures = {}, []

    def record(name, value, expected):
        checks[name] = value
        if value != expected:
            failures.append(f"{name} = {value}, expected {expected}")

    record("H^2", pair(g, H, H), 4)
    for i, ai in enumerate(a, 1):
        record(f"H.a{i}", pair(g, H, ai), 0)
    for j, bj in enumerate(b, 1):
        record(f"H.b{j}", pair(g, H, bj), 0)
    checks["H = D2 + sum w b"] = H == combo
    if H != combo:
        failures.append("H differs from D2 + sum of weighted b classes: " + (H - combo).to_text(g))
    record("D2^2", pair(g, D2, D2), 2)
    shifted = H
    for ai in a:
        shifted = shifted - ai
    record("(H - sum a)^2", pair(g, shifted, shifted), 2)
    return DecompositionReport(checks, failures)


# ---------------------------------------------------------------------------
# ADE recognition

def dynkin_type(gram: Sequence[Sequence[int]]) -> str:
    """Dynkin label of a configuration of (-2)-classes with the given Gram matrix.

    Returns strings such as ``"A3"``, ``"D4+2A1"``, ``"E6"``, or
    ``"not-ADE: <reason>"``.
    """
    n = len(gram)
    for i in range(n):
        if gram[i][i] != -2:
            return f"not-ADE: element {i + 1} has self-intersection {gram[i][i]}"
        for j in range(i + 1, n):
            if gram[i][j] not in (0, 1):
                return f"not-ADE: elements {i + 1} and {j + 1} meet with multiplicity {gram[i][j]}"
    adj = {i: [j for j in range(n) if j != i and gram[i][j]] for i in range(n)}
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(comp)
    labels = []
    for comp in comps:
        lab = _component_type(comp, adj)
        if lab.startswith("not-ADE"):
            return lab
        labels.append(lab)
    return format_root_label(labels)


def _component_type(comp, adj) -> str:
    m = len(comp)
    edges = sum(len(adj[x]) for x in comp) // 2
    if edges != m - 1:
        return "not-ADE: configuration contains a cycle"
    degs = {x: len(adj[x]) for x in comp}
    branch = [x for x in comp if degs[x] >= 3]
    if not branch:
        return f"A{m}"
    if len(branch) > 1 or degs[branch[0]] > 3:
        return "not-ADE: branching is not of Dynkin type"
    centre = branch[0]
    arms = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [y for y in adj[cur] if y != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    p, q, r = arms
    if p == 1 and q == 1:
        return f"D{m}"
    if p == 1 and q == 2 and r in (2, 3, 4):
        return f"E{m}"
    return f"not-ADE: arms of lengths {p}, {q}, {r}"


def format_root_label(labels) -> str:
    """Join irreducible labels into a sum such as ``E6+A11`` or ``2A3``."""
    order = {"E": 0, "D": 1, "A": 2}
    counts = {}
    for lab in labels:
        counts[lab] = counts.get(lab, 0) + 1
    keys = sorted(counts, key=lambda s: (order[s[0]], -int(s[1:])))
    return "+".join(f"{counts[k]}{k}" if counts[k] > 1 else k for k in keys)


def chain_type(g: DualGraph, subset: Iterable) -> str:
    """Dynkin type of the classes in ``subset`` (labels or divisor specifications)."""
    classes = [divisor(g, {x: 1} if isinstance(x, str) and x in g._index else x) for x in subset]
    if not classes:
        raise ValueError("subset must be nonempty")
    gram = [[pair(g, x, y) for y in classes] for x in classes]
    return dynkin_type(gram)


# ---------------------------------------------------------------------------
# lattice spanned by the curves

def ns_basis(g: DualGraph):
    """Integer vectors (curve coordinates) mapping onto a basis of the
    nondegenerate lattice spanned by the curves."""
    cached = _BASIS_CACHE.get(g)
    if cached is not None:
        return cached
    U, D, V = smith_normal_form(g.gram)
    n = len(g)
    r = sum(1 for i in range(n) if D[i][i])
    basis = tuple(tuple(V[i][j] for i in range(n)) for j in range(r))
    _BASIS_CACHE[g] = basis
    return basis


_BASIS_CACHE: dict = {}


@dataclass(frozen=True)
class NSReport:
    ok: bool
    found: TwoElementaryInvariants | None
    expected: TwoElementaryInvariants
    message: str

    def __bool__(self):
        return self.ok


def _as_invariants(expected) -> TwoElementaryInvariants:
    if isinstance(expected, TwoElementaryInvariants):
        return expected
    if isinstance(expected, str):
        parts = [int(x) for x in expected.replace("(", "").replace(")", "").split(",")]
        return TwoElementaryInvariants(*parts)
    return TwoElementaryInvariants(*[int(x) for x in expected])


def ns_check(g: DualGraph, expected) -> NSReport:
    """Compare the lattice spanned by the curves with the expected invariants."""
    expected = _as_invariants(expected)
    try:
        L = g.as_lattice().radical_quotient()
        found = two_elementary_invariants(L)
    except (ClassificationError, LatticeError) as exc:
        return NSReport(False, None, expected, f"transcription suspect: {exc}")
    if found == expected:
        return NSReport(True, found, expected, f"curve classes span a lattice with invariants {found}")
    return NSReport(False, found, expected,
                    f"transcription suspect: invariants {found} differ from expected {expected}")


# ---------------------------------------------------------------------------
# involutions

def check_involution_invariance(g: DualGraph, perm: Mapping[str, str], d: DivisorClass) -> bool:
    """True iff the coefficients of ``d`` are constant on the orbits of ``perm``.

    Labels missing from ``perm`` are fixed.  The permutation must have order
    at most two and preserve all intersection numbers.
    """
    full = {c: perm.get(c, c) for c in g.curves}
    for src, dst in perm.items():
        if src not in g._index or dst not in g._index:
            raise InvalidInvolutionError(f"unknown label in permutation: {src}->{dst}")
    if sorted(full.values()) != sorted(g.curves):
        raise InvalidInvolutionError("permutation is not a bijection of the curves")
    for c in g.curves:
        if full[full[c]] != c:
            raise InvalidInvolutionError(f"permutation has order greater than two at {c}")
    for a in g.curves:
        for b in g.curves:
            if g.intersection(a, b) != g.intersection(full[a], full[b]):
                raise InvalidInvolutionError(
                    f"permutation does not preserve intersections: {a}.{b} != {full[a]}.{full[b]}")
    d = divisor(g, d)
    coeff = dict(zip(g.curves, d.coefficients))
    return all(coeff[c] == coeff[full[c]] for c in g.curves)


# ---------------------------------------------------------------------------
# roots orthogonal to a class

def _integer_kernel(rows):
    """Basis of the integer vectors x with ``row . x = 0`` for every row."""
    m = len(rows)
    n = len(rows[0])
    U, D, V = smith_normal_form(rows)
    r = sum(1 for i in range(min(m, n)) if D[i][i])
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def _short_vectors(gram, bound):
    """All nonzero x with x^T G x <= bound for a positive definite G, up to sign."""
    n = len(gram)
    # Cholesky-style decomposition q(x) = sum_i Q[i][i] (x_i + sum_{j>i} Q[i][j] x_j)^2
    Q = [[Fraction(v) for v in row] for row in gram]
    for i in range(n):
        for j in range(i + 1, n):
            Q[j][i] = Q[i][j]
            Q[i][j] = Q[i][j] / Q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                Q[k][l] -= Q[k][i] * Q[i][l]
    result = []
    x = [0] * n

    def rec(i, remaining):
        centre = -sum(Q[i][j] * x[j] for j in range(i + 1, n))
        # (x_i - centre)^2 * Q[i][i] <= remaining
        span = remaining / Q[i][i]
        lo = _ceil(centre - _sqrt_upper(span))
        hi = _floor(centre + _sqrt_upper(span))
        for xi in range(lo, hi + 1):
            t = Q[i][i] * (xi - centre) ** 2
            if t > remaining:
                continue
            x[i] = xi
            if i == 0:
                if any(x):
                    result.append(tuple(x))
            else:
                rec(i - 1, remaining - t)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    half, seen = [], set()
    for v in result:
        if tuple(-a for a in v) not in seen:
            seen.add(v)
            half.append(v)
    return half


def _sqrt_upper(q: Fraction) -> Fraction:
    from math import isqrt
    return Fraction(isqrt(q.numerator * q.denominator) + 1, q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def orthogonal_roots(g: DualGraph, h: DivisorClass, limit: int = 5000):
    """Roots (classes of square -2) of the lattice orthogonal to ``h``.

    ``h`` must have positive square so that its complement is negative
    definite.  Returns the roots as divisor classes (one of each pair
    ``+-r``) and the Dynkin type of the root system they span.
    """
    h = divisor(g, h)
    if pair(g, h, h) <= 0:
        raise ValueError("the class must have positive square")
    basis = [list(b) for b in ns_basis(g)]
    L = [[pair(g, DivisorClass(tuple(x)), DivisorClass(tuple(y))) for y in basis] for x in basis]
    hdeg = [pair(g, h, DivisorClass(tuple(x))) for x in basis]
    kernel = _integer_kernel([hdeg])
    gram = [[-sum(a * L[i][j] * b for i, a in enumerate(u) for j, b in enumerate(v)) for v in kernel]
            for u in kernel]
    vectors = _short_vectors(gram, 2)
    roots = []
    for coeffs in vectors:
        amb = [sum(c * kernel[k][i] for k, c in enumerate(coeffs)) for i in range(len(basis))]
        cls = [sum(a * basis[i][j] for i, a in enumerate(amb)) for j in range(len(g))]
        roots.append(DivisorClass(tuple(cls)))
        if len(roots) > limit:
            raise ValueError("too many roots")
    # number of positive roots determines the type once the rank is known
    rank = _root_rank(g, roots)
    return roots, _type_from_count(rank, len(roots), g, roots)


def _root_rank(g, roots):
    if not roots:
        return 0
    M = [[Fraction(x) for x in r.coefficients] for r in roots]
    rank, col = 0, 0
    rows, cols = len(M), len(M[0])
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(rows):
            if i != rank and M[i][col]:
                f = M[i][col] / M[rank][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def _type_from_count(rank, count, g, roots):
    """Split the root system into irreducible pieces and name each one."""
    if not roots:
        return "empty"
    n = len(roots)
    adj = [[j for j in range(n) if j != i and pair(g, roots[i], roots[j]) != 0] for i in range(n)]
    seen, labels = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        r = _root_rank(g, [roots[i] for i in comp])
        labels.append(_irreducible_name(r, len(comp)))
    return format_root_label(labels)


def _irreducible_name(rank, positive):
    if positive == rank * (rank + 1) // 2:
        return f"A{rank}"
    if rank >= 4 and positive == rank * (rank - 1):
        return f"D{rank}"
    return {36: "E6", 63: "E7", 120: "E8"}[positive]


# ---------------------------------------------------------------------------
# shipped graphs together with the divisors attached to them

@dataclass(frozen=True)
class GraphEntry:
    key: str  # row of the list of lattices, e.g. "13(5,1)"
    file: str
    D2: str
    a_set: tuple = ()
    b_set: tuple = ()
    weights_b: tuple | None = None
    p1: str | None = None
    p2: str | None = None


def _labels(*ks):
    return tuple(f"A{k}" for k in ks)


GRAPH_CATALOG = (
    GraphEntry("10(6,0)", "rank10_HN", "2A1+2A2+A3+A4+A10"),
    GraphEntry("10(8,1)", "rank10_basis", "3f1+3f2-e1-e2-e3-e4-e5-e6-e7-e8",
               ("-f1+f2",), ("e8",), None, "A1", "A1"),
    GraphEntry("11(7,1)", "rank11", "A1+2A2+A3+A4",
               _labels(1), ("2A1-A4+A5+A6+A7+A8",), None, "A3", "A1"),
    GraphEntry("12(6,1)", "rank12", "A6+A7+3A8+2A9+2A10+A11+A12",
               _labels(8, 9, 12), _labels(11, 18, 19), None, "A3", "A3"),
    GraphEntry("13(5,1)", "rank13", "A4+A6+A7+A8+A10+A11+A12+A16+A18",
               _labels(6, 7, 8, 10, 11), _labels(12, 13, 14), None, "A5", "A3"),
    GraphEntry("14(4,0)", "rank14_D8D4", "A1+2A2+3A3+4A4+2A5+5A6+4A7+3A8+2A9+A10",
               _labels(1, 2, 3, 4, 6, 7, 8), _labels(10, 11, 12), None, "A7", "A3"),
    GraphEntry("14(4,1)", "rank14_E8_4A1", "A1+2A2+3A3+A4+3A5+3A6+3A7+3A8+A9+2A10+A11",
               _labels(1, 2, 3, 5, 6, 7, 8), _labels(11, 12, 15), None, "A7", "A3"),
    GraphEntry("15(3,1)", "rank15", "A1+2A2+3A3+A4+" + "+".join(f"3A{k}" for k in range(5, 11)) + "+A11+2A12+A13",
               _labels(1, 2, 3, *range(5, 11)), _labels(13, 14, 16), None, "A9", "A3"),
    GraphEntry("16(2,1)", "rank16", "A1+2A2+3A3+A4+" + "+".join(f"3A{k}" for k in range(5, 13)) + "+A13+2A14+A15",
               _labels(1, 2, 3, *range(5, 11)), _labels(*range(12, 17)), None, "A9", "A5"),
    GraphEntry("17(1,1)", "rank17", "+".join(f"A{k}" for k in range(2, 18)) + "+A19",
               _labels(*range(7, 17), 19), _labels(*range(1, 6)), None, "A11", "A5"),
    GraphEntry("18(0,0)", "rank18", "A1+2A2+3A3+A4+" + "+".join(f"3A{k}" for k in range(5, 16)) + "+A16+2A17+A18+3A19",
               _labels(1, 2, 3, *range(5, 12), 19), _labels(*range(13, 19)), (1, 2, 3, 2, 2, 1), "A11", "E6"),
)


def graph_entry(key: str) -> GraphEntry:
    for e in GRAPH_CATALOG:
        if e.key == key or e.file == key:
            return e
    raise KeyError(f"no shipped graph for {key!r}")
