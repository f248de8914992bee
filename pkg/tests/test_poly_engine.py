from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import from_text, to_sympy
from k3forge.poly_engine import (
    MAX_DEGREE,
    DegreeCapError,
    DomainError,
    MalformedCoverError,
    MultiPoly,
    ParseError,
    RationalFunction,
    RationalMap,
    UnmappedVariableError,
    discriminant_univariate,
    gcd_free_basis,
    parse_poly,
    poly_gcd,
    reduce_double_cover,
    resultant,
    squarefree_part,
    substitute,
    univariate_gcd,
    var,
)

u, v, w, y = (var(n) for n in "uvwy")
su, sv, sw, sy = sympy.symbols("u v w y")

coef = st.fractions(min_value=-9, max_value=9, max_denominator=5)


@st.composite
def polys(draw, names=("u", "v", "w"), max_deg=3, max_terms=5):
    p = MultiPoly.constant(0)
    for _ in range(draw(st.integers(0, max_terms))):
        term = MultiPoly.constant(draw(coef))
        for n in names:
            term = term * var(n) ** draw(st.integers(0, max_deg))
        p = p + term
    return p


@st.composite
def upolys(draw, name="u", max_deg=5):
    cs = draw(st.lists(coef, min_size=1, max_size=max_deg + 1))
    return MultiPoly.from_univariate(cs, name)


# -- construction and printing ----------------------------------------------

def test_canonical_internal_form_is_unique():
    p = (u + v) * (u - v)
    q = u * u - v * v
    assert p == q
    assert hash(p) == hash(q)
    assert p.variables == ("u", "v")
    assert (u - u).variables == ()


def test_variable_order_is_fixed_not_alphabetical():
    p = parse_poly("a*y + X*u")
    assert p.variables == ("u", "y", "X", "a")


def test_printing_round_trips_through_parser():
    p = parse_poly("3/4*u^2*v - v^3 + 2*w - 7")
    assert parse_poly(str(p)) == p
    assert str(MultiPoly.constant(0)) == "0"


def test_parser_rejects_garbage():
    for bad in ("", "   ", "u^", "u**", "(u+v)"):
        with pytest.raises(ParseError):
            parse_poly(bad)
    with pytest.raises(ParseError):
        parse_poly(5)


def test_degree_cap():
    with pytest.raises(DegreeCapError):
        u ** (MAX_DEGREE + 1)
    with pytest.raises(DegreeCapError):
        (u ** 40) * (u ** 30)


def test_degree_order_and_homogeneity():
    p = u ** 3 * v + v ** 2 * w ** 2
    assert p.total_degree() == 4
    assert p.degree("v") == 2
    assert p.order("v") == 1
    assert p.is_homogeneous()
    assert p.homogeneous_degree() == 4
    assert not (p + u).is_homogeneous()


@given(polys(), polys())
def test_ring_operations_match_sympy(p, q):
    assert to_sympy(p + q) == sympy.expand(to_sympy(p) + to_sympy(q))
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))


@given(polys(max_deg=2, max_terms=3), st.integers(0, 3))
def test_powers_match_sympy(p, k):
    assert to_sympy(p ** k) == sympy.expand(to_sympy(p) ** k)


@given(polys())
def test_text_form_matches_sympy(p):
    assert from_text(p) == to_sympy(p)


@given(polys())
def test_derivative_matches_sympy(p):
    for n in "uvw":
        assert to_sympy(p.diff(n)) == sympy.diff(to_sympy(p), sympy.Symbol(n))


@given(polys(), polys(), coef)
def test_evaluation_is_a_homomorphism(p, q, c):
    at = {"u": c, "v": Fraction(1, 3)}
    assert (p * q).evaluate(at) == p.evaluate(at) * q.evaluate(at)
    expected = to_sympy(p).subs({su: sympy.Rational(c.numerator, c.denominator),
                                 sv: sympy.Rational(1, 3)})
    assert to_sympy(p.evaluate(at)) == sympy.expand(expected)


@given(polys(), polys())
def test_polynomial_substitution_matches_sympy(p, q):
    got = p.subs({"u": q, "w": 2})
    want = sympy.expand(to_sympy(p).subs({su: to_sympy(q), sw: 2}, simultaneous=True))
    assert to_sympy(got) == want


@given(polys(), polys().filter(lambda q: not q.is_zero()))
def test_exact_division(p, q):
    assert (p * q).exact_div(q) == p


def test_inexact_division_raises():
    with pytest.raises(DomainError):
        (u + 1).exact_div(v)


def test_truncation_keeps_low_degree_terms():
    p = 1 + u + u * v + u ** 3
    assert p.truncated(2) == 1 + u + u * v
    assert p.homogeneous_part(2) == u * v


# -- gcd and factor bookkeeping ----------------------------------------------

@given(polys(max_deg=2, max_terms=3), polys(max_deg=2, max_terms=3), polys(max_deg=1, max_terms=3))
def test_multivariate_gcd_matches_sympy(a, b, c):
    g = poly_gcd(a * c, b * c)
    want = sympy.gcd(to_sympy(a * c), to_sympy(b * c))
    if want == 0:
        assert g.is_zero()
    else:
        assert sympy.simplify(to_sympy(g) / want).is_number


@given(upolys(), upolys())
def test_univariate_gcd_matches_sympy(p, q):
    g = univariate_gcd(p, q)
    want = sympy.Poly(sympy.gcd(to_sympy(p), to_sympy(q)), su)
    if want.is_zero:
        assert g.is_zero()
    else:
        assert to_sympy(g) == want.monic().as_expr()


@given(upolys(max_deg=3), upolys(max_deg=2))
def test_squarefree_part_matches_sympy(p, q):
    f = p * q * q
    if f.is_constant():
        return
    got = to_sympy(squarefree_part(f))
    factors = sympy.factor_list(to_sympy(f), su)[1]
    want = sympy.Poly(sympy.prod([g for g, _ in factors]), su).monic().as_expr()
    assert got == want


@given(st.lists(upolys(max_deg=3), min_size=1, max_size=3))
def test_gcd_free_basis_reconstructs_inputs(ps):
    ps = [p for p in ps if not p.is_zero()]
    if not ps:
        return
    basis, table = gcd_free_basis(ps)
    for b in basis:
        assert b.total_degree() >= 1
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            assert univariate_gcd(basis[i], basis[j]).is_constant()
    for p, row in zip(ps, table):
        prod = MultiPoly.constant(1)
        for b, k in zip(basis, row):
            prod = prod * b ** k
        ratio = sympy.simplify(to_sympy(p) / to_sympy(prod))
        assert ratio.is_number and ratio != 0


def test_gcd_free_basis_small_example():
    basis, table = gcd_free_basis([u * u - 1, u * u - 2 * u + 1])
    assert basis == [u + 1, u - 1]
    assert table == [[1, 1], [0, 2]]


# -- elimination ---------------------------------------------------------------

@given(polys(names=("u", "v"), max_deg=2, max_terms=3), polys(names=("u", "v"), max_deg=2, max_terms=3))
def test_resultant_matches_sympy(p, q):
    if p.degree("u") < 1 or q.degree("u") < 1:
        with pytest.raises(DomainError):
            resultant(p, q, "u")
        return
    got = to_sympy(resultant(p, q, "u"))
    assert got == sympy.expand(sympy.resultant(to_sympy(p), to_sympy(q), su))


@pytest.mark.parametrize("deg", [2, 3, 4])
def test_closed_form_discriminants_match_sympy(deg):
    a = sympy.symbols(f"a0:{deg + 1}")
    p = sum((var(f"a{i}") * u ** i for i in range(deg + 1)), MultiPoly.constant(0))
    want = sympy.discriminant(sum(a[i] * su ** i for i in range(deg + 1)), su)
    assert to_sympy(discriminant_univariate(p, "u")) == sympy.expand(want)


def test_discriminant_degree_out_of_range():
    with pytest.raises(DomainError):
        discriminant_univariate(u ** 5 + 1, "u")


# -- rational functions and maps ---------------------------------------------------

def test_rational_function_reduces():
    r = RationalFunction(u * u - 1, u - 1)
    assert r.is_polynomial()
    assert r.as_polynomial() == u + 1
    assert RationalFunction(2 * u, 4 * v) == RationalFunction(u, 2 * v)


def test_rational_function_zero_denominator():
    with pytest.raises(Exception):
        RationalFunction(u, 0)


@given(polys(names=("u", "v"), max_deg=3, max_terms=4))
def test_substitution_by_rational_map_matches_sympy(p):
    s, t = var("s"), var("t")
    m = RationalMap.from_dict({"u": RationalFunction(s, t), "v": t + 1})
    got = substitute(p, m)
    ss, tt = sympy.symbols("s t")
    want = to_sympy(p).subs({su: ss / tt, sv: tt + 1}, simultaneous=True)
    assert sympy.simplify(to_sympy(got.num) / to_sympy(got.den) - want) == 0


def test_unmapped_variable():
    m = RationalMap.from_dict({"u": var("s")})
    with pytest.raises(UnmappedVariableError):
        substitute(u + v, m)


def test_map_composition():
    inner = RationalMap.from_dict({"u": var("s") + 1, "v": var("s") * var("t")}, source_vars=("s", "t"))
    outer = RationalMap.from_dict({"X": u * v, "Y": u - v}, source_vars=("u", "v"))
    comp = outer.compose(inner)
    assert comp["X"].as_polynomial() == (var("s") + 1) * var("s") * var("t")


@given(polys(names=("u", "y"), max_deg=4, max_terms=4), polys(names=("u",), max_deg=3, max_terms=3))
def test_double_cover_reduction_matches_sympy(p, F):
    got = reduce_double_cover(p, "y", F)
    assert got.degree("y") <= 1
    want = sympy.rem(to_sympy(p), sy ** 2 - to_sympy(F), sy)
    assert to_sympy(got) == sympy.expand(want)


def test_malformed_cover():
    with pytest.raises(MalformedCoverError):
        reduce_double_cover(y ** 2, "y", y + u)
