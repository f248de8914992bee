import json

import pytest
import sympy
from hypothesis import given, strategies as st

from k3forge.divisor_calculus import (
    GRAPH_CATALOG,
    DivisorClass,
    FormatError,
    InvalidInvolutionError,
    builtin_graph_path,
    chain_type,
    check_involution_invariance,
    divisor,
    dynkin_type,
    graph_entry,
    graph_from_data,
    is_nef_against_listed,
    load_graph,
    ns_check,
    orthogonal_roots,
    pair,
    verify_polarization_decomposition,
)
from k3forge.lattice_core import lattice_row, make_standard


def chain(n, prefix="C"):
    labels = [f"{prefix}{i}" for i in range(1, n + 1)]
    edges = [[labels[i], labels[i + 1], 1] for i in range(n - 1)]
    return graph_from_data({"curves": labels, "edges": edges})


def catalog_graph(entry):
    return load_graph(builtin_graph_path(entry.file))


# -- loading and validation ------------------------------------------------------

def test_builtin_files_exist_for_catalog():
    for e in GRAPH_CATALOG:
        assert builtin_graph_path(e.file).exists()
    assert graph_entry("rank13").key == "13(5,1)"
    with pytest.raises(KeyError):
        graph_entry("nope")


@pytest.mark.parametrize("data,fragment", [
    ([], "top level"),
    ({"curves": []}, "nonempty"),
    ({"curves": ["a", "a"]}, "duplicate"),
    ({"curves": ["a", "b"], "edges": [["a", "c", 1]]}, "unknown label"),
    ({"curves": ["a", "b"], "edges": [["a", "a", 1]]}, "loop"),
    ({"curves": ["a", "b"], "edges": [["a", "b", -1]]}, "negative"),
    ({"curves": ["a", "b"], "edges": [["a", "b", 1], ["b", "a", 1]]}, "repeated"),
    ({"curves": ["a"], "kind": "mystery"}, "unknown kind"),
    ({"curves": ["a"], "kind": "basis", "gram": [[3]]}, "odd"),
    ({"curves": ["a", "b"], "kind": "basis", "gram": [[0, 1], [2, 0]]}, "symmetric"),
])
def test_format_errors_name_the_problem(data, fragment):
    with pytest.raises(FormatError, match=fragment):
        graph_from_data(data)


def test_load_graph_reports_line_and_column(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"curves": [\n "a",\n }')
    with pytest.raises(FormatError, match="line 3"):
        load_graph(bad)
    with pytest.raises(FormatError, match="cannot read"):
        load_graph(tmp_path / "missing.json")


def test_round_trip_through_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"curves": ["x", "y"], "edges": [["x", "y", 2]]}))
    g = load_graph(path)
    assert g.intersection("x", "y") == 2
    assert g.neighbours("x") == ["y"]


# -- divisors ------------------------------------------------------------------------

def test_divisor_parsing_forms_agree():
    g = chain(4)
    a = divisor(g, "2C1 + C2 - 3C4")
    b = divisor(g, {"C1": 2, "C2": 1, "C4": -3})
    assert a == b == DivisorClass((2, 1, 0, -3))
    assert a.to_text(g) == "2C1 + C2 - 3C4"
    with pytest.raises(ValueError):
        divisor(g, "C1 C2")
    with pytest.raises(KeyError):
        divisor(g, "C9")


@given(st.lists(st.integers(-5, 5), min_size=5, max_size=5),
       st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_pairing_matches_matrix_product(x, y):
    g = chain(5)
    want = (sympy.Matrix([x]) * sympy.Matrix(g.gram) * sympy.Matrix(y))[0, 0]
    assert pair(g, DivisorClass(tuple(x)), DivisorClass(tuple(y))) == want
    assert pair(g, DivisorClass(tuple(x)), DivisorClass(tuple(y))) == pair(g, DivisorClass(tuple(y)),
                                                                           DivisorClass(tuple(x)))


def test_pair_dimension_mismatch():
    g = chain(3)
    with pytest.raises(ValueError):
        pair(g, DivisorClass((1, 0)), DivisorClass((1, 0, 0)))


# -- Dynkin recognition ----------------------------------------------------------------

@pytest.mark.parametrize("name", ["A1", "A5", "D4", "D7", "E6", "E7", "E8"])
def test_dynkin_type_of_standard_root_lattices(name):
    assert dynkin_type(make_standard(name).gram) == name


def test_dynkin_type_of_sums_and_failures():
    from k3forge.lattice_core import parse_lattice
    assert dynkin_type(parse_lattice("A1+D4+A1+E7").gram) == "E7+D4+2A1"
    cycle = [[-2, 1, 1], [1, -2, 1], [1, 1, -2]]
    assert dynkin_type(cycle).startswith("not-ADE")
    assert dynkin_type([[-2, 2], [2, -2]]).startswith("not-ADE")
    assert dynkin_type([[-4]]).startswith("not-ADE")


def test_chain_type_uses_divisor_specs():
    g = chain(4)
    assert chain_type(g, ["C1", "C2", "C3"]) == "A3"
    assert chain_type(g, ["C1", "C3"]) == "2A1"
    assert chain_type(g, ["C1+C2", "C3"]) == "A2"
    with pytest.raises(ValueError):
        chain_type(g, [])


# -- nefness -----------------------------------------------------------------------------

def test_nef_witness_is_first_negative_curve():
    g = chain(3)
    res = is_nef_against_listed(g, divisor(g, "C2"))
    assert not res.ok and res.witness == "C2" and res.status == "fail"
    g = graph_from_data({"curves": ["C0", "C1"], "edges": [["C0", "C1", 2]]})
    fib = divisor(g, "C0+C1")
    res = is_nef_against_listed(g, fib, complete=True)
    assert res.ok and res.status == "pass"
    assert is_nef_against_listed(g, fib, complete=False).status == "partial"


@pytest.mark.parametrize("entry", GRAPH_CATALOG, ids=lambda e: e.key)
def test_catalog_D2_square_and_nefness(entry):
    g = catalog_graph(entry)
    D2 = divisor(g, entry.D2)
    assert pair(g, D2, D2) == 2
    res = is_nef_against_listed(g, D2)
    assert res.ok
    rho = lattice_row(entry.key).rho
    if g.kind == "curves" and rho >= 14:
        assert res.status == "pass"
    else:
        assert res.status == "partial"


@pytest.mark.parametrize("entry", GRAPH_CATALOG, ids=lambda e: e.key)
def test_catalog_graphs_span_expected_lattice(entry):
    g = catalog_graph(entry)
    row = lattice_row(entry.key)
    rep = ns_check(g, (row.rho, row.ell, row.delta))
    assert rep.ok, rep.message
    assert ns_check(g, "(1,1,1)").ok is False


# -- quartic polarization -----------------------------------------------------------------

@pytest.mark.parametrize("entry", [e for e in GRAPH_CATALOG if e.a_set], ids=lambda e: e.key)
def test_polarization_identities(entry):
    g = catalog_graph(entry)
    dec = verify_polarization_decomposition(g, None, entry.D2, entry.a_set, entry.b_set, entry.weights_b)
    assert dec.ok, dec.failures
    assert dec.checks["H^2"] == 4
    assert dec.checks["(H - sum a)^2"] == 2


@pytest.mark.parametrize("entry", [e for e in GRAPH_CATALOG if e.a_set and e.key != "11(7,1)"],
                         ids=lambda e: e.key)
def test_exceptional_configurations_match_double_points(entry):
    g = catalog_graph(entry)
    assert chain_type(g, entry.a_set) == entry.p1
    assert chain_type(g, entry.b_set) == entry.p2


def test_rank_eleven_exceptional_set_is_single_node():
    # the listed exceptional set over p1 is one curve, while the quartic has an A3 point there
    entry = graph_entry("11(7,1)")
    g = catalog_graph(entry)
    assert chain_type(g, entry.a_set) == "A1"
    assert entry.p1 == "A3"


def test_decomposition_reports_mismatch():
    entry = graph_entry("13(5,1)")
    g = catalog_graph(entry)
    H = divisor(g, entry.D2)
    dec = verify_polarization_decomposition(g, H, entry.D2, entry.a_set, entry.b_set)
    assert not dec.ok
    assert any("H differs" in f for f in dec.failures)
    with pytest.raises(ValueError):
        verify_polarization_decomposition(g, None, entry.D2, entry.a_set, entry.b_set, [1])


# -- involutions and orthogonal roots ------------------------------------------------------

def test_involution_invariance():
    g = chain(3)
    flip = {"C1": "C3", "C3": "C1"}
    assert check_involution_invariance(g, flip, divisor(g, "C1+2C2+C3"))
    assert not check_involution_invariance(g, flip, divisor(g, "C1"))
    with pytest.raises(InvalidInvolutionError):
        check_involution_invariance(g, {"C1": "C2", "C2": "C1"}, divisor(g, "C1"))
    with pytest.raises(InvalidInvolutionError):
        check_involution_invariance(g, {"C1": "C2", "C2": "C3", "C3": "C1"}, divisor(g, "C1"))
    with pytest.raises(InvalidInvolutionError):
        check_involution_invariance(g, {"C1": "Z"}, divisor(g, "C1"))


def test_orthogonal_roots_of_hyperbolic_sum():
    data = {"kind": "basis", "curves": ["f", "g", "r1", "r2"],
            "gram": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -2, 1], [0, 0, 1, -2]]}
    g = graph_from_data(data)
    roots, kind = orthogonal_roots(g, divisor(g, "f+g"))
    # f+g has square 2; its complement is <-2> + A2, holding 3 + 1 positive roots
    assert kind == "A2+A1"
    assert len(roots) == 4
    with pytest.raises(ValueError):
        orthogonal_roots(g, divisor(g, "f"))


@pytest.mark.parametrize("entry", [e for e in GRAPH_CATALOG if e.a_set], ids=lambda e: e.key)
def test_roots_orthogonal_to_polarization_match_double_points(entry):
    from k3forge.divisor_calculus import format_root_label
    g = catalog_graph(entry)
    H = divisor(g, entry.D2)
    for wgt, b in zip(entry.weights_b or [1] * len(entry.b_set), entry.b_set):
        H = H + wgt * divisor(g, b)
    roots, kind = orthogonal_roots(g, H)
    assert kind == format_root_label([entry.p1, entry.p2])
    assert all(pair(g, r, H) == 0 and pair(g, r, r) == -2 for r in roots)
