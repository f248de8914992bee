"""Exact multivariate polynomials and rational functions over Q.

Polynomials are immutable.  A polynomial stores the tuple of variables it
actually uses (in the global canonical order) together with a map from
exponent tuples to nonzero :class:`fractions.Fraction` coefficients, so two
equal polynomials always have identical internal data.

The canonical variable order is ``u < v < w < y < X < Y < Z < s < t`` followed
by every other name in alphabetical order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "MAX_DEGREE",
    "VARIABLE_ORDER",
    "PolyError",
    "DegreeCapError",
    "UnmappedVariableError",
    "MalformedCoverError",
    "DomainError",
    "ParseError",
    "MultiPoly",
    "RationalFunction",
    "RationalMap",
    "var",
    "variables",
    "const",
    "parse_poly",
    "substitute",
    "reduce_double_cover",
    "squarefree_part",
    "gcd_free_basis",
    "resultant",
    "discriminant_univariate",
    "poly_gcd",
    "univariate_gcd",
]

MAX_DEGREE = 64
VARIABLE_ORDER = ("u", "v", "w", "y", "X", "Y", "Z", "s", "t")
_RANK = {name: i for i, name in enumerate(VARIABLE_ORDER)}


class PolyError(ValueError):
    """Base class for polynomial engine errors."""


class DegreeCapError(PolyError):
    pass


class UnmappedVariableError(PolyError):
    pass


class MalformedCoverError(PolyError):
    pass


class DomainError(PolyError):
    pass


class ParseError(PolyError):
    pass


def var_key(name: str):
    """Sort key realising the canonical variable order."""
    if name in _RANK:
        return (0, _RANK[name], "")
    return (1, 0, name)


def _sorted_vars(names: Iterable[str]) -> tuple:
    return tuple(sorted(set(names), key=var_key))


Scalar = Union[int, Fraction]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, terms: Mapping | None = None, variables: Sequence[str] = ()):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise PolyError("duplicate variable names")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise PolyError("exponent vector length does not match variables")
            if any((not isinstance(e, int)) or e < 0 for e in exps):
                raise PolyError("exponents must be nonnegative integers")
            c = _as_fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        target = _sorted_vars(variables)
        if target != variables:
            perm = [variables.index(n) for n in target]
            clean = {tuple(e[i] for i in perm): c for e, c in clean.items()}
            variables = target
        self._set(variables, clean)

    # -- construction helpers -------------------------------------------
    def _set(self, variables: tuple, terms: dict):
        used = [i for i in range(len(variables)) if any(e[i] for e in terms)]
        if len(used) != len(variables):
            variables = tuple(variables[i] for i in used)
            terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
        object.__setattr__(self, "_vars", variables)
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MultiPoly":
        """Build from canonical-order variables and nonzero coefficients."""
        obj = cls.__new__(cls)
        obj._set(variables, terms)
        return obj

    def __setattr__(self, key, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> "MultiPoly":
        c = _as_fraction(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise PolyError(f"invalid variable name {name!r}")
        return cls._raw((name,), {(1,): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.constant(x)
        if isinstance(x, str):
            return parse_poly(x)
        raise TypeError(f"cannot convert {type(x).__name__} to MultiPoly")

    @classmethod
    def from_univariate(cls, coeffs: Sequence, name: str) -> "MultiPoly":
        """Polynomial sum(coeffs[k] * name**k)."""
        return cls._raw((name,), {(k,): _as_fraction(c) for k, c in enumerate(coeffs) if c})

    # -- basic accessors -------------------------------------------------
    @property
    def variables(self) -> tuple:
        return self._vars

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._vars

    def constant_value(self) -> Fraction:
        if self._vars:
            raise DomainError("polynomial is not constant")
        return self._terms.get((), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self._vars), Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    def monomials(self):
        """Iterate over (dict var->exponent, coefficient)."""
        for e, c in self._terms.items():
            yield {n: k for n, k in zip(self._vars, e) if k}, c

    # -- degrees ---------------------------------------------------------
    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def min_total_degree(self) -> int:
        if not self._terms:
            return -1
        return min(sum(e) for e in self._terms)

    def degree(self, name: str | None = None) -> int:
        if name is None:
            return self.total_degree()
        if not self._terms:
            return -1
        if name not in self._vars:
            return 0
        i = self._vars.index(name)
        return max(e[i] for e in self._terms)

    def order(self, name: str) -> int:
        """Largest k such that name**k divides the polynomial (inf for zero)."""
        if not self._terms:
            return float("inf")
        if name not in self._vars:
            return 0
        i = self._vars.index(name)
        return min(e[i] for e in self._terms)

    def is_homogeneous(self, names: Sequence[str] | None = None) -> bool:
        return self.homogeneous_degree(names) is not None

    def homogeneous_degree(self, names: Sequence[str] | None = None):
        """Common degree in ``names`` (all variables by default) or None."""
        if not self._terms:
            return None
        idx = self._indices(names)
        degs = {sum(e[i] for i in idx) for e in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def _indices(self, names):
        if names is None:
            return list(range(len(self._vars)))
        return [self._vars.index(n) for n in names if n in self._vars]

    # -- arithmetic ------------------------------------------------------
    def _aligned(self, other: "MultiPoly"):
        if self._vars == other._vars:
            return self._vars, self._terms, other._terms
        allv = _sorted_vars(self._vars + other._vars)
        return allv, _embed(self._terms, self._vars, allv), _embed(other._terms, other._vars, allv)

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        vs, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly._raw(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly._raw((), {})
            return MultiPoly._raw(self._vars, {e: v * c for e, v in self._terms.items()})
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return MultiPoly._raw((), {})
        if self.total_degree() + other.total_degree() > MAX_DEGREE:
            raise DegreeCapError(f"product degree exceeds {MAX_DEGREE}")
        vs, a, b = self._aligned(other)
        return MultiPoly._raw(vs, _mul_terms(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of polynomial by zero")
            inv = 1 / Fraction(other)
            return self * inv
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if other.is_constant():
            return self / other.constant_value()
        return self.exact_div(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a nonnegative integer")
        if n == 0:
            return MultiPoly.constant(1)
        if self._terms and self.total_degree() * n > MAX_DEGREE:
            raise DegreeCapError(f"power degree exceeds {MAX_DEGREE}")
        if len(self._terms) == 1:
            (e, c), = self._terms.items()
            return MultiPoly._raw(self._vars, {tuple(k * n for k in e): c ** n})
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._vars == other._vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self._vars, frozenset(self._terms.items()))))
        return self._hash

    # -- calculus and substitution ---------------------------------------
    def diff(self, name: str) -> "MultiPoly":
        if name not in self._vars:
            return MultiPoly._raw((), {})
        i = self._vars.index(name)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return MultiPoly._raw(self._vars, out)

    def evaluate(self, values: Mapping[str, Scalar]) -> "MultiPoly":
        """Substitute rational numbers for some variables."""
        idx = [(i, _as_fraction(values[n])) for i, n in enumerate(self._vars) if n in values]
        if not idx:
            return self
        keep = [i for i, n in enumerate(self._vars) if n not in values]
        vs = tuple(self._vars[i] for i in keep)
        out = {}
        for e, c in self._terms.items():
            for i, val in idx:
                if e[i]:
                    c = c * val ** e[i]
                    if not c:
                        break
            if c:
                ne = tuple(e[i] for i in keep)
                s = out.get(ne, 0) + c
                if s:
                    out[ne] = s
                else:
                    out.pop(ne, None)
        return MultiPoly._raw(vs, out)

    def __call__(self, **values) -> "MultiPoly":
        return self.evaluate(values)

    def subs(self, mapping: Mapping[str, "MultiPoly | Scalar"], truncate: int | None = None) -> "MultiPoly":
        """Polynomial composition: replace variables by polynomials.

        When ``truncate`` is given, every intermediate result is cut to total
        degree at most ``truncate`` (useful for local power-series jets).
        """
        mapping = {k: MultiPoly.coerce(v) for k, v in mapping.items() if k in self._vars}
        if not mapping:
            return self.truncated(truncate) if truncate is not None else self
        inner = [n for n in self._vars if n not in mapping]
        # group by the exponents of the substituted variables
        sub_idx = [self._vars.index(n) for n in mapping]
        keep_idx = [self._vars.index(n) for n in inner]
        names = [self._vars[i] for i in sub_idx]
        groups: dict = {}
        for e, c in self._terms.items():
            key = tuple(e[i] for i in sub_idx)
            rest = tuple(e[i] for i in keep_idx)
            groups.setdefault(key, {})[rest] = c
        powers = {n: _PowerCache(mapping[n], truncate) for n in names}
        inner_vs = tuple(inner)
        total = MultiPoly._raw((), {})
        for key, rest_terms in groups.items():
            piece = MultiPoly._raw(inner_vs, rest_terms)
            for n, k in zip(names, key):
                if k:
                    piece = _mul_trunc(piece, powers[n].get(k), truncate)
            total = total + piece
        return total

    def truncated(self, max_degree: int, names: Sequence[str] | None = None) -> "MultiPoly":
        """Drop terms whose degree in ``names`` exceeds ``max_degree``."""
        idx = self._indices(names)
        return MultiPoly._raw(self._vars, {e: c for e, c in self._terms.items()
                                           if sum(e[i] for i in idx) <= max_degree})

    def homogeneous_part(self, d: int, names: Sequence[str] | None = None) -> "MultiPoly":
        idx = self._indices(names)
        return MultiPoly._raw(self._vars, {e: c for e, c in self._terms.items()
                                           if sum(e[i] for i in idx) == d})

    def coefficients_in(self, name: str) -> dict:
        """Map k -> coefficient of name**k (a polynomial free of name)."""
        if name not in self._vars:
            return {0: self} if self._terms else {}
        i = self._vars.index(name)
        vs = self._vars[:i] + self._vars[i + 1:]
        parts: dict = {}
        for e, c in self._terms.items():
            parts.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: MultiPoly._raw(vs, t) for k, t in parts.items()}

    def coefficient(self, monomial: Mapping[str, int]) -> Fraction:
        """Coefficient of an exact monomial, e.g. ``{"u": 2, "v": 1}``."""
        if any(n not in self._vars for n, k in monomial.items() if k):
            return Fraction(0)
        e = tuple(monomial.get(n, 0) for n in self._vars)
        return self._terms.get(e, Fraction(0))

    def univariate_coeffs(self, name: str | None = None) -> list:
        """Dense coefficient list of a univariate polynomial (index = degree)."""
        if not self._terms:
            return []
        if len(self._vars) > 1 or (name is not None and self._vars and self._vars[0] != name):
            raise DomainError("polynomial is not univariate in the requested variable")
        if not self._vars:
            return [self._terms[()]]
        d = max(e[0] for e in self._terms)
        out = [Fraction(0)] * (d + 1)
        for e, c in self._terms.items():
            out[e[0]] = c
        return out

    # -- division --------------------------------------------------------
    def leading_term(self):
        """Leading (exponents, coefficient) in lex order of canonical variables."""
        if not self._terms:
            raise DomainError("zero polynomial has no leading term")
        e = max(self._terms)
        return e, self._terms[e]

    def divmod(self, divisor: "MultiPoly"):
        """Lex-order multivariate division by a single polynomial."""
        divisor = MultiPoly.coerce(divisor)
        if not divisor._terms:
            raise ZeroDivisionError("division by zero polynomial")
        vs = _sorted_vars(self._vars + divisor._vars)
        rem = dict(_embed(self._terms, self._vars, vs))
        dv = _embed(divisor._terms, divisor._vars, vs)
        lead = max(dv)
        lc = dv[lead]
        quot: dict = {}
        rest: dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if all(a >= b for a, b in zip(e, lead)):
                qe = tuple(a - b for a, b in zip(e, lead))
                qc = c / lc
                quot[qe] = quot.get(qe, 0) + qc
                for de, dc in dv.items():
                    te = tuple(a + b for a, b in zip(qe, de))
                    s = rem.get(te, 0) - qc * dc
                    if s:
                        rem[te] = s
                    else:
                        rem.pop(te, None)
            else:
                rest[e] = c
                del rem[e]
        return MultiPoly._raw(vs, {e: c for e, c in quot.items() if c}), MultiPoly._raw(vs, rest)

    def exact_div(self, divisor) -> "MultiPoly":
        divisor = MultiPoly.coerce(divisor)
        if divisor.is_constant():
            return self / divisor.constant_value()
        q, r = self.divmod(divisor)
        if r:
            raise DomainError("polynomial division is not exact")
        return q

    def divides(self, other: "MultiPoly") -> bool:
        return not MultiPoly.coerce(other).divmod(self)[1]

    # -- normalisation ---------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        return Fraction(reduce(gcd, nums), reduce(lcm, dens))

    def primitive(self) -> "MultiPoly":
        """Integer-coefficient primitive part with positive lex-leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return self / c

    def monic(self) -> "MultiPoly":
        if not self._terms:
            raise DomainError("zero polynomial cannot be made monic")
        return self / self.leading_term()[1]

    # -- printing --------------------------------------------------------
    def sorted_terms(self):
        """Terms in canonical printing order: graded, then lex, descending."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self._vars, e) if k)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    def to_text(self) -> str:
        return str(self)


def _coerce_or_none(x):
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MultiPoly.constant(x)
    return None


def _embed(terms: dict, old: tuple, new: tuple) -> dict:
    if old == new:
        return terms
    pos = [new.index(n) for n in old]
    width = len(new)
    out = {}
    for e, c in terms.items():
        ne = [0] * width
        for p, k in zip(pos, e):
            ne[p] = k
        out[tuple(ne)] = c
    return out


def _mul_terms(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _mul_trunc(p: MultiPoly, q: MultiPoly, truncate: int | None) -> MultiPoly:
    if truncate is None:
        return p * q
    if not p._terms or not q._terms:
        return MultiPoly._raw((), {})
    vs, a, b = p._aligned(q)
    out: dict = {}
    bl = [(e, c, sum(e)) for e, c in b.items()]
    for ea, ca in a.items():
        da = sum(ea)
        if da > truncate:
            continue
        for eb, cb, db in bl:
            if da + db <= truncate:
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
    return MultiPoly._raw(vs, {e: c for e, c in out.items() if c})


class _PowerCache:
    def __init__(self, base: MultiPoly, truncate: int | None):
        self.base = base if truncate is None else base.truncated(truncate)
        self.truncate = truncate
        self.cache = {1: self.base}

    def get(self, k: int) -> MultiPoly:
        if k in self.cache:
            return self.cache[k]
        half = self.get(k // 2)
        val = _mul_trunc(half, half, self.truncate)
        if k % 2:
            val = _mul_trunc(val, self.base, self.truncate)
        self.cache[k] = val
        return val


# ---------------------------------------------------------------------------
# parsing
_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)(?:(?:\^|\*\*)(\d+))?)$")


def parse_poly(text: str) -> MultiPoly:
    """Parse the text format ``coef*u^a*v^b + ...`` (``**`` accepted for ``^``)."""
    if not isinstance(text, str):
        raise ParseError("polynomial text must be a string")
    src = text.strip()
    if not src:
        raise ParseError("empty polynomial text")
    src = src.replace("**", "^")
    tokens = _TERM_SPLIT.split(src)
    # tokens alternate: term, sign, term, ...  (first term may be empty)
    pieces = []
    if tokens[0]:
        pieces.append(("+", tokens[0]))
    elif len(tokens) == 1:
        raise ParseError("empty polynomial text")
    for i in range(1, len(tokens), 2):
        if i + 1 >= len(tokens) or not tokens[i + 1]:
            raise ParseError(f"dangling sign in {text!r}")
        pieces.append((tokens[i], tokens[i + 1]))
    total = MultiPoly._raw((), {})
    for sign, term in pieces:
        coef = Fraction(1 if sign == "+" else -1)
        mono: dict = {}
        for factor in term.split("*"):
            factor = factor.strip()
            m = _FACTOR.match(factor)
            if not m:
                raise ParseError(f"cannot parse factor {factor!r} in {text!r}")
            if m.group(1) is not None:
                coef *= Fraction(m.group(1))
            else:
                name = m.group(2)
                mono[name] = mono.get(name, 0) + int(m.group(3) or 1)
        vs = _sorted_vars(mono)
        total = total + MultiPoly._raw(vs, {tuple(mono[n] for n in vs): coef} if coef else {})
    if total.total_degree() > MAX_DEGREE:
        raise DegreeCapError(f"parsed polynomial exceeds degree {MAX_DEGREE}")
    return total


def var(name: str) -> MultiPoly:
    return MultiPoly.variable(name)


def variables(names: str):
    """``u, v, w = variables("u v w")``."""
    return tuple(MultiPoly.variable(n) for n in names.replace(",", " ").split())


def const(c: Scalar) -> MultiPoly:
    return MultiPoly.constant(c)


# ---------------------------------------------------------------------------
# univariate helpers on dense Fraction lists (index = degree)

def _strip(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _udivmod(a: list, b: list):
    a = list(a)
    b = _strip(list(b))
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    db = len(b) - 1
    _strip(a)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        c = a[-1] / lb
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
        a.pop()
        _strip(a)
    return _strip(q), a


def _umonic(a: list) -> list:
    lc = a[-1]
    return [c / lc for c in a]


def _ugcd(a: list, b: list) -> list:
    a = _strip(list(a))
    b = _strip(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    if not a:
        return []
    return _umonic(a)


def _uderiv(a: list) -> list:
    return [c * k for k, c in enumerate(a)][1:]


def _umul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _univariate_parts(p: MultiPoly, what: str):
    if p.is_zero():
        raise DomainError(f"{what}: zero polynomial")
    if len(p.variables) > 1:
        raise DomainError(f"{what}: polynomial must be univariate, got variables {p.variables}")
    name = p.variables[0] if p.variables else None
    return name, p.univariate_coeffs()


def univariate_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Monic gcd of two univariate polynomials in the same variable."""
    names = set(p.variables) | set(q.variables)
    if len(names) > 1:
        raise DomainError("univariate_gcd needs polynomials in one common variable")
    name = names.pop() if names else "t"
    g = _ugcd(p.univariate_coeffs(), q.univariate_coeffs())
    return MultiPoly.from_univariate(g, name)


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of a univariate p, made monic."""
    name, a = _univariate_parts(p, "squarefree_part")
    if name is None:
        return MultiPoly.constant(1)
    g = _ugcd(a, _uderiv(a))
    q, r = _udivmod(a, g)
    assert not r
    return MultiPoly.from_univariate(_umonic(q), name)


def _usub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _strip([x - y for x, y in zip(_pad(a, n), _pad(b, n))])


def _yun(a: list) -> list:
    """Yun square-free decomposition: list of (monic factor, multiplicity)."""
    out = []
    g = _ugcd(a, _uderiv(a))
    b = _udivmod(a, g)[0]
    c = _udivmod(_uderiv(a), g)[0]
    d = _usub(c, _uderiv(b))
    i = 1
    while len(b) > 1:
        f = _ugcd(b, d)
        if len(f) > 1:
            out.append((f, i))
        b = _udivmod(b, f)[0]
        c = _udivmod(d, f)[0]
        d = _usub(c, _uderiv(b))
        i += 1
    return out


def _pad(a: list, n: int) -> list:
    return list(a) + [Fraction(0)] * (n - len(a))


def gcd_free_basis(ps: Sequence[MultiPoly]):
    """Pairwise coprime squarefree basis of univariate polynomials.

    Returns ``(basis, exponents)`` where ``exponents[i][j]`` is the power of
    ``basis[j]`` in ``ps[i]``; every input equals a scalar times the product
    of the basis powers.  Basis elements are monic and sorted by degree and
    then by printed form, so the output is deterministic.
    """
    ps = list(ps)
    if not ps:
        raise DomainError("gcd_free_basis: empty input list")
    names = set()
    dense = []
    for p in ps:
        name, a = _univariate_parts(p, "gcd_free_basis")
        if name is not None:
            names.add(name)
        dense.append(a)
    if len(names) > 1:
        raise DomainError("gcd_free_basis: inputs use different variables")
    name = names.pop() if names else "t"
    pool = []
    for a in dense:
        if len(a) > 1:
            pool.extend(f for f, _ in _yun(a))
    basis: list = []
    for f in pool:
        pending = [f]
        while pending:
            f = pending.pop()
            if len(f) <= 1:
                continue
            for idx, b in enumerate(basis):
                g = _ugcd(f, b)
                if len(g) > 1:
                    del basis[idx]
                    rest_b = _udivmod(b, g)[0]
                    rest_f = _udivmod(f, g)[0]
                    pending.extend([g, _umonic(rest_b) if len(rest_b) > 1 else [], _umonic(rest_f) if len(rest_f) > 1 else []])
                    break
            else:
                basis.append(_umonic(f))
    polys = [MultiPoly.from_univariate(b, name) for b in basis]
    polys.sort(key=lambda q: (q.total_degree(), str(q)))
    dense_basis = [q.univariate_coeffs() for q in polys]
    table = []
    for a in dense:
        row = []
        for b in dense_basis:
            k = 0
            cur = a
            while True:
                q, r = _udivmod(cur, b)
                if r:
                    break
                k += 1
                cur = q
            row.append(k)
        table.append(row)
    return polys, table


# ---------------------------------------------------------------------------
# multivariate gcd

def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalised to be primitive with positive lead."""
    p = MultiPoly.coerce(p)
    q = MultiPoly.coerce(q)
    if p.is_zero():
        return q.primitive() if q else q
    if q.is_zero():
        return p.primitive()
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(1)
    return _mgcd(p.primitive(), q.primitive()).primitive()


def _mgcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(1)
    pv, qv = set(p.variables), set(q.variables)
    # a common factor cannot involve a variable missing from either side
    if pv - qv:
        return _mgcd(_content_in(p, pv - qv), q)
    if qv - pv:
        return _mgcd(p, _content_in(q, qv - pv))
    vs = _sorted_vars(pv)
    if len(vs) == 1:
        x = vs[0]
        return MultiPoly.from_univariate(_ugcd(p.univariate_coeffs(x), q.univariate_coeffs(x)), x)
    # main variable of least degree keeps pseudo-remainders small
    x = min(vs, key=lambda n: (max(p.degree(n), q.degree(n)), var_key(n)))
    cp = _x_content(p, x)
    cq = _x_content(q, x)
    c = _mgcd(cp, cq)
    pp = p.exact_div(cp)
    qq = q.exact_div(cq)
    g = _prs_gcd(pp, qq, x)
    return (g * c)


def _content_in(p: MultiPoly, names) -> MultiPoly:
    """gcd of the coefficients of p regarded as a polynomial in ``names``."""
    parts = [p]
    for n in sorted(names, key=var_key):
        parts = [c for part in parts for c in part.coefficients_in(n).values()]
    parts.sort(key=lambda c: (c.total_degree(), len(c)))
    g = parts[0]
    for c in parts[1:]:
        if g.is_constant():
            break
        g = _mgcd(g.primitive(), c.primitive())
    if g.is_constant():
        return MultiPoly.constant(1)
    return g.primitive()


def _x_content(p: MultiPoly, x: str) -> MultiPoly:
    coeffs = list(p.coefficients_in(x).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = _mgcd(g.primitive(), c.primitive())
    if g.is_constant():
        return MultiPoly.constant(1)
    return g.primitive()


def _prs_gcd(a: MultiPoly, b: MultiPoly, x: str) -> MultiPoly:
    """gcd of x-primitive polynomials via primitive pseudo-remainder sequences."""
    if a.degree(x) < b.degree(x):
        a, b = b, a
    while b and b.degree(x) > 0:
        r = _prem(a, b, x)
        a, b = b, (r if r.is_zero() else _x_primitive(r, x))
    if b.is_zero():
        return _x_primitive(a, x)
    return MultiPoly.constant(1)


def _x_primitive(p: MultiPoly, x: str) -> MultiPoly:
    return p.exact_div(_x_content(p, x)).primitive()


def _prem(a: MultiPoly, b: MultiPoly, x: str) -> MultiPoly:
    db = b.degree(x)
    lb = b.coefficients_in(x)[db]
    xv = MultiPoly.variable(x)
    r = a
    while r and r.degree(x) >= db:
        dr = r.degree(x)
        lr = r.coefficients_in(x)[dr]
        r = r * lb - b * lr * xv ** (dr - db)
    return r


# ---------------------------------------------------------------------------
# rational functions and maps

class RationalFunction:
    """Quotient num/den of polynomials; den is never zero.

    The stored pair is canonical: common factors are cancelled, the numerator
    and denominator have integer coefficients, and the denominator is primitive
    with positive lex-leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, reduce: bool = True):
        num = MultiPoly.coerce(num)
        den = MultiPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = MultiPoly.constant(0), MultiPoly.constant(1)
        elif reduce:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
            scale = den.content()
            if den.leading_term()[1] < 0:
                scale = -scale
            num = num / scale
            den = den / scale
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, key, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return cls(MultiPoly.coerce(x))

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> MultiPoly:
        if not self.is_polynomial():
            raise DomainError("rational function is not a polynomial")
        return self.num / self.den.constant_value()

    @property
    def variables(self):
        return _sorted_vars(self.num.variables + self.den.variables)

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction.coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, other):
        if isinstance(other, (MultiPoly, int, Fraction)):
            other = RationalFunction.coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction(({self.num}) / ({self.den}))"


class RationalMap:
    """A map given by rational functions: target variable -> expression in source variables."""

    def __init__(self, source_vars: Sequence[str], target_vars: Sequence[str], components: Sequence,
                 reduction_rule: tuple | None = None):
        self.source_vars = tuple(source_vars)
        self.target_vars = tuple(target_vars)
        comps = [RationalFunction.coerce(c) for c in components]
        if len(comps) != len(self.target_vars):
            raise PolyError("component count must equal the number of target variables")
        for c in comps:
            extra = set(c.variables) - set(self.source_vars)
            if extra:
                raise PolyError(f"component uses variables {sorted(extra)} outside the source")
        self.components = tuple(comps)
        if reduction_rule is not None:
            y, F = reduction_rule
            F = MultiPoly.coerce(F)
            if y in F.variables:
                raise MalformedCoverError("reduction rule polynomial must not contain its variable")
            reduction_rule = (y, F)
        self.reduction_rule = reduction_rule

    @classmethod
    def from_dict(cls, assignments: Mapping, source_vars: Sequence[str] | None = None,
                  reduction_rule: tuple | None = None) -> "RationalMap":
        comps = {k: RationalFunction.coerce(v) for k, v in assignments.items()}
        if source_vars is None:
            source_vars = _sorted_vars(n for c in comps.values() for n in c.variables)
        return cls(source_vars, list(comps), list(comps.values()), reduction_rule)

    @classmethod
    def identity(cls, names: Sequence[str]) -> "RationalMap":
        return cls(names, names, [MultiPoly.variable(n) for n in names])

    def __getitem__(self, name: str) -> RationalFunction:
        return self.components[self.target_vars.index(name)]

    def compose(self, inner: "RationalMap") -> "RationalMap":
        """The map ``self ∘ inner`` (apply ``inner`` first)."""
        comps = [substitute_rational(c, inner) for c in self.components]
        return RationalMap(inner.source_vars, self.target_vars, comps, inner.reduction_rule)


def substitute(p: MultiPoly, m: RationalMap, reduce: bool = True) -> RationalFunction:
    """Compose p with the map: every variable of p is replaced by its component.

    Denominators are cleared with the least power of each component
    denominator that suffices; if the map carries a reduction rule (y, F), the
    numerator and denominator are reduced modulo y^2 - F.
    """
    p = MultiPoly.coerce(p)
    missing = [n for n in p.variables if n not in m.target_vars]
    if missing:
        raise UnmappedVariableError(f"variables {missing} are not covered by the map")
    num_parts = {}
    dens = {}
    degs = {n: p.degree(n) for n in p.variables}
    for n in p.variables:
        c = m[n]
        if c.den.is_constant():
            num_parts[n] = _PowerCache(c.num / c.den.constant_value(), None)
            dens[n] = None
        else:
            num_parts[n] = _PowerCache(c.num, None)
            dens[n] = _PowerCache(c.den, None)
    total = MultiPoly._raw((), {})
    one = MultiPoly.constant(1)
    for mono, coef in p.monomials():
        term = MultiPoly.constant(coef)
        for n in p.variables:
            k = mono.get(n, 0)
            if k:
                term = term * num_parts[n].get(k)
            if dens[n] is not None and degs[n] - k:
                term = term * dens[n].get(degs[n] - k)
        total = total + term
    den = one
    for n in p.variables:
        if dens[n] is not None and degs[n]:
            den = den * dens[n].get(degs[n])
    if m.reduction_rule is not None:
        y, F = m.reduction_rule
        total = reduce_double_cover(total, y, F)
        den = reduce_double_cover(den, y, F)
    return RationalFunction(total, den, reduce=reduce)


def substitute_rational(r: RationalFunction, m: RationalMap) -> RationalFunction:
    r = RationalFunction.coerce(r)
    num = substitute(r.num, m, reduce=False)
    den = substitute(r.den, m, reduce=False)
    return RationalFunction(num.num * den.den, num.den * den.num)


def reduce_double_cover(p: MultiPoly, y: str, F: MultiPoly) -> MultiPoly:
    """Reduce p modulo y^2 - F so the result has degree at most 1 in y."""
    p = MultiPoly.coerce(p)
    F = MultiPoly.coerce(F)
    if y in F.variables:
        raise MalformedCoverError(f"cover polynomial must not involve {y}")
    parts = p.coefficients_in(y)
    if not parts or max(parts) <= 1:
        return p
    yv = MultiPoly.variable(y)
    Fp = _PowerCache(F, None)
    total = MultiPoly._raw((), {})
    for k, c in parts.items():
        term = c
        if k // 2:
            term = term * Fp.get(k // 2)
        if k % 2:
            term = term * yv
        total = total + term
    return total


# ---------------------------------------------------------------------------
# elimination

def _det_bareiss(mat: list) -> MultiPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(mat)
    if n == 0:
        return MultiPoly.constant(1)
    a = [[MultiPoly.coerce(x) for x in row] for row in mat]
    sign = 1
    prev = MultiPoly.constant(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.constant(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = val.exact_div(prev) if not prev.is_constant() else val / prev.constant_value()
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def sylvester_matrix(p: MultiPoly, q: MultiPoly, x: str) -> list:
    m = p.degree(x)
    n = q.degree(x)
    pc = p.coefficients_in(x)
    qc = q.coefficients_in(x)
    zero = MultiPoly.constant(0)
    rows = []
    for i in range(n):
        row = [zero] * (m + n)
        for k in range(m + 1):
            row[i + m - k] = pc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * (m + n)
        for k in range(n + 1):
            row[i + n - k] = qc.get(k, zero)
        rows.append(row)
    return rows


def resultant(p: MultiPoly, q: MultiPoly, x: str) -> MultiPoly:
    """Sylvester resultant of p and q with respect to x."""
    p = MultiPoly.coerce(p)
    q = MultiPoly.coerce(q)
    if p.is_zero() or q.is_zero() or p.degree(x) < 1 or q.degree(x) < 1:
        raise DomainError(f"resultant needs positive degree in {x} for both inputs")
    return _det_bareiss(sylvester_matrix(p, q, x))


def discriminant_univariate(p: MultiPoly, x: str) -> MultiPoly:
    """Discriminant in x for degree 2, 3 or 4 via the classical closed formulas."""
    p = MultiPoly.coerce(p)
    n = p.degree(x)
    if n not in (2, 3, 4):
        raise DomainError(f"discriminant_univariate supports degrees 2..4, got {n}")
    cf = p.coefficients_in(x)
    c = [cf.get(k, MultiPoly.constant(0)) for k in range(n + 1)][::-1]
    if n == 2:
        a, b, cc = c
        return b * b - a * cc * 4
    if n == 3:
        a, b, cc, d = c
        return (b * b * cc * cc - a * cc ** 3 * 4 - b ** 3 * d * 4
                - a * a * d * d * 27 + a * b * cc * d * 18)
    a, b, cc, d, e = c
    return (a ** 3 * e ** 3 * 256 - a * a * b * d * e * e * 192 - a * a * cc * cc * e * e * 128
            + a * a * cc * d * d * e * 144 - a * a * d ** 4 * 27 + a * b * b * cc * e * e * 144
            - a * b * b * d * d * e * 6 - a * b * cc * cc * d * e * 80 + a * b * cc * d ** 3 * 18
            + a * cc ** 4 * e * 16 - a * cc ** 3 * d * d * 4 - b ** 4 * e * e * 27
            + b ** 3 * cc * d * e * 18 - b ** 3 * d ** 3 * 4 - b * b * cc ** 3 * e * 4
            + b * b * cc * cc * d * d)
