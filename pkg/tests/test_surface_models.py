from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import to_sympy
from k3forge.instances import RandomSource, binary_form, forced_instance, rank10_quartic_data
from k3forge.poly_engine import DomainError, MultiPoly, RationalFunction, RationalMap, parse_poly, var
from k3forge.surface_models import (
    MAP_CATALOG,
    DoubleSexticModel,
    GenericityError,
    QuarticModel,
    SearchFailure,
    SprimeModel,
    branch_singular_locus,
    build_S_canonical,
    build_S_rank9,
    build_S_rank10,
    del_pezzo_model,
    del_pezzo_residual,
    derive_prime_parameters,
    general_position_problems,
    genus2_fixed_curve_check,
    integral_point,
    is_projective_identity,
    linear_system,
    map_case,
    params_rank11_residual,
    quartic_from_instance,
    random_plane_points,
    relats_coefficients,
    squarefree_part_is_square,
    tangent_conic_witness,
    verify_map,
    verify_relats_and_determinant,
    verify_shift_rules,
    verify_tangent_conic,
)

u, v, w, y = (var(n) for n in "uvwy")


# -- model validation -------------------------------------------------------------------

def test_models_validate_degrees():
    with pytest.raises(DomainError):
        DoubleSexticModel(u ** 5)
    with pytest.raises(DomainError):
        DoubleSexticModel(MultiPoly.constant(0))
    with pytest.raises(DomainError):
        QuarticModel(u * v, u ** 3)
    with pytest.raises(DomainError):
        QuarticModel(w * w, w ** 4)  # C*Q is a square
    with pytest.raises(DomainError):
        build_S_canonical(u ** 4, 0)


def test_square_detection():
    assert squarefree_part_is_square((u + 2 * v - w) ** 2 * (u - w) ** 4)
    assert not squarefree_part_is_square(u * v * (u + w))


def test_sprime_companion():
    C, Q = parse_poly("w^2 - u*v"), parse_poly("u^4 + v^4 + w^4 + u*v*w^2")
    S = SprimeModel(C, Q)
    assert S.as_double_sextic().branch == C * Q


# -- explicit maps ------------------------------------------------------------------------------

@pytest.mark.parametrize("name", MAP_CATALOG)
@pytest.mark.parametrize("seed", [1, 2])
def test_catalog_maps_send_source_into_target(name, seed):
    case = map_case(name, seed)
    res = verify_map(case.rmap, case.source, case.target)
    assert res.ok, f"{name}: residual {res.residual}"


@pytest.mark.parametrize("name", MAP_CATALOG)
def test_perturbed_maps_are_rejected(name):
    case = map_case(name, 1)
    m = case.rmap
    comps = list(m.components)
    # move the last target coordinate by a generic linear form in the source
    shift = sum((var(n) * (k + 3) for k, n in enumerate(m.source_vars)), MultiPoly.constant(0))
    k = len(comps) - 1
    comps[k] = comps[k] + RationalFunction(shift * 7919, 1)
    bad = RationalMap(m.source_vars, m.target_vars, comps, m.reduction_rule)
    assert not verify_map(bad, case.source, case.target).ok


def test_unknown_map_name():
    with pytest.raises(KeyError):
        map_case("nope", 1)


def test_map_missing_target_variable():
    S = build_S_rank10(u ** 4, v ** 6)
    m = RationalMap.from_dict({"u": u, "v": v}, source_vars=("u", "v", "w", "y"))
    with pytest.raises(DomainError):
        verify_map(m, S, S)


def test_projective_identity_detection():
    lam = u + v
    weights = {"u": 1, "v": 1, "w": 1, "y": 3}
    m = RationalMap.from_dict({"u": lam * u, "v": lam * v, "w": lam * w, "y": lam ** 3 * y},
                              source_vars=("u", "v", "w", "y"))
    assert is_projective_identity(m, weights)
    m2 = RationalMap.from_dict({"u": lam * u, "v": lam * v, "w": lam * w, "y": lam ** 2 * y},
                               source_vars=("u", "v", "w", "y"))
    assert not is_projective_identity(m2, weights)


# -- coefficient identities ------------------------------------------------------------------------

@given(st.integers(0, 10 ** 6))
def test_relats_determinant_identity(seed):
    src = RandomSource(seed, 12)
    alphas = [binary_form(src, 2) for _ in range(5)]
    c0 = src.nonzero()
    assert verify_relats_and_determinant(alphas, c0)
    c2, c4, c6 = relats_coefficients(alphas, c0)
    a = [to_sympy(x) for x in alphas]
    W, C0 = sympy.Symbol("w"), sympy.Rational(c0.numerator, c0.denominator)
    M = sympy.Matrix([[4 * a[0], a[1], -2 * C0 * W ** 2],
                      [a[1], C0 * W ** 2 + a[2], a[3]],
                      [-2 * C0 * W ** 2, a[3], 4 * a[4]]])
    sextic = C0 * W ** 6 + to_sympy(c2) * W ** 4 + to_sympy(c4) * W ** 2 + to_sympy(c6)
    assert sympy.expand(sextic + M.det() / (4 * C0 ** 2)) == 0


def test_relats_requires_nonzero_c0():
    with pytest.raises(DomainError):
        relats_coefficients([u * u] * 5, 0)


@given(st.integers(0, 10 ** 6))
def test_shift_rules(seed):
    src = RandomSource(seed, 12)
    c0, c2, c4, c6 = src.nonzero(), binary_form(src, 2), binary_form(src, 4), binary_form(src, 6)
    f0, f2 = src.nonzero(), binary_form(src, 2)
    assert verify_shift_rules(c0, c2, c4, c6, f0, f2)


# -- tangent conics ----------------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(1, 6))
def test_tangent_conic_witness_accepted(seed):
    p2, q3, S = tangent_conic_witness(seed)
    assert verify_tangent_conic(p2, q3, S)


def test_random_conics_rejected():
    p2, q3, S = tangent_conic_witness(1)
    src = RandomSource(99, 20)
    for _ in range(10):
        assert not verify_tangent_conic(binary_form(src, 2), binary_form(src, 3), S)


def test_tangent_conic_needs_even_sextic():
    with pytest.raises(DomainError):
        verify_tangent_conic(u * u, u ** 3, DoubleSexticModel(w * u ** 5 + v ** 6))


# -- singular loci --------------------------------------------------------------------------------------

def test_singular_locus_finds_nodes():
    # union of three lines and a conic: nodes at the pairwise intersections
    lines = u * v * (u + v - w)
    F = lines * (u * u + v * v - 4 * w * w) * (u - 5 * w)
    rep = branch_singular_locus(DoubleSexticModel(F), [(0, 0, 1)])
    assert rep.expected_singular == (True,)
    assert rep.unexpected


def test_smooth_branch_curve():
    F = u ** 6 + v ** 6 + w ** 6
    rep = branch_singular_locus(DoubleSexticModel(F))
    assert rep.ok and rep.status == "complete"


def test_quartic_singular_check_is_partial():
    K = quartic_from_instance(forced_instance("13(5,1)", 1))
    rep = branch_singular_locus(K, [(0, 0, 0, 1)])
    assert rep.status == "partial"
    assert rep.expected_singular == (True,)


def test_genus_two_curve_check():
    assert genus2_fixed_curve_check(build_S_rank9(1, u * v, u ** 4, u ** 6 + v ** 6 - u * v ** 5))
    assert not genus2_fixed_curve_check(build_S_rank9(1, u * v, u ** 4, (u ** 3 + v ** 3) ** 2))


# -- quartic parameters from the alternate fibration ------------------------------------------------------

@pytest.mark.parametrize("key", ["11(7,1)", "12(6,1)", "13(5,1)", "14(4,1)", "15(3,1)", "16(2,1)",
                                 "17(1,1)", "18(0,0)"])
def test_parameters_from_supplied_factor(key):
    inst = forced_instance(key, 1)
    h0, c2, e3, d4 = derive_prime_parameters(inst.a4, inst.b6pp, key, d4=inst.d4)
    r1, r2 = params_rank11_residual(inst.a4, inst.b8, h0, c2, e3, d4)
    assert r1.is_zero() and r2.is_zero()


def test_parameter_search_without_factor():
    inst = forced_instance("17(1,1)", 1)
    out = derive_prime_parameters(inst.a4, inst.b6pp, "17(1,1)")
    r1, r2 = params_rank11_residual(inst.a4, inst.b8, *out)
    assert r1.is_zero() and r2.is_zero()
    irreducible = forced_instance("13(5,1)", 1)
    with pytest.raises(SearchFailure):
        derive_prime_parameters(irreducible.a4, irreducible.b6pp, "13(5,1)")


# -- linear systems and the del Pezzo construction -----------------------------------------------------------

def test_integral_point():
    assert integral_point((Fraction(1, 2), Fraction(-3, 4), 0)) == (2, -3, 0)


def test_linear_system_vanishing_orders_against_sympy():
    pts = random_plane_points(1)
    x, yy, z = sympy.symbols("x y z")
    for deg, mult, dim in ((3, 1, 2), (6, 2, 4), (9, 3, 7)):
        basis = linear_system(deg, pts, mult)
        assert len(basis) == dim
        for f in basis:
            expr = to_sympy(f)
            for p in pts:
                at = {x: sympy.Rational(p[0]), yy: sympy.Rational(p[1]), z: sympy.Rational(p[2])}
                for a in range(mult):
                    for b in range(mult - a):
                        c = mult - 1 - a - b
                        d = sympy.diff(expr, x, a, yy, b, z, c) if (a or b or c) else expr
                        assert d.subs(at) == 0


def test_general_position_problems():
    pts = [(1, 0, 0), (0, 1, 0), (1, 1, 0)] + [(k, k * k, 1) for k in range(5)]
    issues = general_position_problems(pts)
    assert any("collinear" in s for s in issues)
    with pytest.raises(GenericityError):
        del_pezzo_model(pts)
    with pytest.raises(DomainError):
        del_pezzo_model(pts[:7])


@pytest.mark.slow
def test_del_pezzo_relation():
    m = del_pezzo_model(random_plane_points(1))
    assert tuple(m.dimensions) == (2, 4, 7)
    assert del_pezzo_residual(m).is_zero()
    rep = branch_singular_locus(m.rank9_surface())
    assert rep.ok
