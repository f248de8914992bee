import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from k3forge.lattice_core import (
    LATTICE_ROWS,
    ClassificationError,
    InvalidGlueError,
    Lattice,
    LatticeError,
    OutOfScopeError,
    RankDeficiencyError,
    determinant,
    discriminant_form,
    hermite_normal_form,
    lattice_from_generators,
    lattice_row,
    make_standard,
    overlattice_from_glue,
    parse_lattice,
    same_two_elementary_class,
    signature,
    smith_normal_form,
    two_elementary_invariants,
)

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def symmetric_even(n):
    def build(entries):
        g = [[0] * n for _ in range(n)]
        k = 0
        for i in range(n):
            for j in range(i, n):
                g[i][j] = g[j][i] = 2 * entries[k] if i == j else entries[k]
                k += 1
        return g
    return st.lists(small, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(build)


@st.composite
def unimodular(draw, n):
    """Product of random elementary integer matrices."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            continue
        k = draw(st.integers(-3, 3))
        for r in range(n):
            P[r][j] += k * P[r][i]
    return P


# -- integer linear algebra ----------------------------------------------------

@given(st.integers(1, 5).flatmap(square))
def test_determinant_matches_sympy(m):
    assert determinant(m) == sympy.Matrix(m).det()


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), st.integers(1, 4)).map(
    lambda t: [row[: t[1]] for row in t[0]])))
def test_smith_normal_form(m):
    U, D, V = smith_normal_form(m)
    M = sympy.Matrix(m)
    assert sympy.Matrix(U) * M * sympy.Matrix(V) == sympy.Matrix(D)
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    want = sympy_snf(M, domain=sympy.ZZ)
    want_diag = sorted(abs(want[i, i]) for i in range(min(want.shape)))
    assert sorted(diag) == want_diag


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=5))
def test_hermite_normal_form_spans_same_module(vectors):
    H = hermite_normal_form(vectors)
    A = sympy.Matrix(vectors)
    if not H:
        assert A.rank() == 0
        return
    B = sympy.Matrix(H)
    assert B.rank() == A.rank() == len(H)
    # rows of B are independent, so each row of A has a unique expression in them
    for i in range(A.rows):
        sol = B.T.gauss_jordan_solve(A.row(i).T)[0]
        assert all(x.is_integer for x in sol)
    # equal covolume then forces the two modules to coincide
    def covolume(M):
        D = sympy_snf(M, domain=sympy.ZZ)
        return sympy.prod([abs(D[i, i]) for i in range(min(D.shape)) if D[i, i]])
    assert covolume(A) == covolume(B)


# -- standard lattices -------------------------------------------------------------

@pytest.mark.parametrize("name,det,orders", [
    ("A1", -2, (2,)),
    ("A3", -4, (4,)),
    ("A7", -8, (8,)),
    ("D4", 4, (2, 2)),
    ("D5", -4, (4,)),
    ("D6", 4, (2, 2)),
    ("E6", 3, (3,)),
    ("E7", -2, (2,)),
    ("E8", 1, ()),
    ("H", -1, ()),
    ("N", 64, (2,) * 6),
])
def test_standard_discriminants(name, det, orders):
    L = make_standard(name)
    assert L.det() == det
    assert tuple(discriminant_form(L).cyclic_orders) == orders if orders else True
    if orders:
        assert signature(L)[0] in (0, 1)


def test_unimodular_has_trivial_discriminant_group():
    with pytest.raises(ClassificationError):
        two_elementary_invariants(make_standard("A3"))
    assert tuple(two_elementary_invariants(parse_lattice("H+E8"))) == (10, 0, 0)


@pytest.mark.parametrize("name,q", [("A1", Fraction(3, 2)), ("E7", Fraction(1, 2)), ("<2>", Fraction(1, 2))])
def test_discriminant_quadratic_values(name, q):
    disc = discriminant_form(parse_lattice(name))
    assert disc.q_values[(0,)] == q


@pytest.mark.parametrize("name,inv", [
    ("D4", (4, 2, 0)),
    ("8A1", (8, 8, 1)),
    ("N", (8, 6, 0)),
    ("H(2)", (2, 2, 0)),
    ("E7", (7, 1, 1)),
    ("D8", (8, 2, 0)),
])
def test_two_elementary_invariants(name, inv):
    assert tuple(two_elementary_invariants(parse_lattice(name))) == inv


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(symmetric_even(n), unimodular(n))))
def test_invariants_are_unchanged_by_unimodular_base_change(data):
    g, P = data
    L = Lattice(g, allow_degenerate=True)
    assume(L.det() != 0)
    M = L.change_basis(P)
    assert M.det() == L.det()
    assert signature(M) == signature(L)
    assert sorted(discriminant_form(M).cyclic_orders) == sorted(discriminant_form(L).cyclic_orders)


@given(st.integers(1, 5).flatmap(symmetric_even))
def test_signature_matches_sympy_eigenvalues(g):
    M = sympy.Matrix(g)
    assume(M.det() != 0)
    eig = M.eigenvals()
    pos = sum(k for e, k in eig.items() if sympy.re(sympy.N(e)) > 0)
    assert signature(Lattice(g)) == (pos, len(g) - pos)


def test_parse_lattice_and_direct_sum():
    L = parse_lattice("<2>+<-2>+8A1")
    assert L.rank == 10
    assert L.det() == -1024
    assert parse_lattice("H(2)").gram == ((0, 2), (2, 0))
    with pytest.raises(LatticeError):
        parse_lattice("Q7")
    with pytest.raises(LatticeError):
        make_standard("diag", 3)
    with pytest.raises(LatticeError):
        make_standard("E", 9)


def test_degenerate_and_json_round_trip():
    with pytest.raises(Exception):
        Lattice([[2, 2], [2, 2]])
    L = Lattice([[2, 2], [2, 2]], allow_degenerate=True)
    assert L.radical_quotient().rank == 1
    with pytest.raises(RankDeficiencyError):
        discriminant_form(L)
    M = parse_lattice("H+D4")
    assert Lattice.from_json(M.to_json()) == M
    json.loads(M.to_json())


# -- glue ---------------------------------------------------------------------------------

def test_half_sum_glue_gives_rank_ten_row():
    base = parse_lattice("<2>+<-2>+8A1")
    L = overlattice_from_glue(base, [0, 0] + [Fraction(1, 2)] * 8)
    assert abs(L.det()) == 256
    assert tuple(two_elementary_invariants(L)) == (10, 8, 1)
    assert same_two_elementary_class(L, parse_lattice("H+8A1"))


def test_nikulin_lattice_is_glued_8A1():
    rebuilt = overlattice_from_glue(parse_lattice("8A1"), [Fraction(1, 2)] * 8)
    assert abs(rebuilt.det()) == 64
    assert tuple(two_elementary_invariants(rebuilt)) == tuple(two_elementary_invariants(make_standard("N")))


@pytest.mark.parametrize("glue", [
    [Fraction(1, 3)] + [0] * 7,
    [Fraction(1, 2)] * 2 + [0] * 6,
    [Fraction(1, 2)] * 7,
])
def test_invalid_glue(glue):
    with pytest.raises(InvalidGlueError):
        overlattice_from_glue(parse_lattice("8A1"), glue)


def test_integral_glue_is_identity():
    L = parse_lattice("4A1")
    assert overlattice_from_glue(L, [1, 0, 0, 0]) is L


def test_sublattice_from_generators():
    E8 = make_standard("E8")
    sub = lattice_from_generators([[1, 0, 0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]], E8)
    assert sub.rank == 2 and sub.det() == 3
    with pytest.raises(LatticeError):
        lattice_from_generators([[1, 0]], E8)


def test_out_of_scope_signature():
    with pytest.raises(OutOfScopeError):
        same_two_elementary_class(parse_lattice("E8"), parse_lattice("E8"))


# -- rows of the family ---------------------------------------------------------------------

@pytest.mark.parametrize("row", LATTICE_ROWS, ids=lambda r: r.key)
def test_every_presentation_has_the_row_invariants(row):
    for name in row.names:
        L = parse_lattice(name)
        assert signature(L) == (1, row.rho - 1)
        assert tuple(two_elementary_invariants(L)) == (row.rho, row.ell, row.delta)


def test_presentation_count_and_lookup():
    assert sum(len(r.names) for r in LATTICE_ROWS) == 23
    assert len(LATTICE_ROWS) == 12
    assert lattice_row("9(7,1)").names == ("H+7A1",)
    with pytest.raises(KeyError):
        lattice_row("19(0,0)")


def test_half_sum_of_four_nodes_builds_D4():
    L = overlattice_from_glue(parse_lattice("4A1"), [Fraction(1, 2)] * 4)
    assert L.det() == 4
    assert tuple(two_elementary_invariants(L)) == (4, 2, 0)
