import os
import sys

import pytest
import sympy
from hypothesis import HealthCheck, settings

from k3forge.poly_engine import MultiPoly

settings.register_profile(
    "k3forge",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "k3forge"))

SYMBOLS = sympy.symbols("u v w y X Y Z s t x")


def to_sympy(p):
    """Independent conversion of a polynomial into a sympy expression."""
    if isinstance(p, MultiPoly):
        expr = sympy.Integer(0)
        for mono, coef in p.monomials():
            term = sympy.Rational(coef.numerator, coef.denominator)
            for name, k in mono.items():
                term *= sympy.Symbol(name) ** k
            expr += term
        return sympy.expand(expr)
    return sympy.sympify(p)


def from_text(p):
    return sympy.expand(sympy.sympify(str(p).replace("^", "**")))


@pytest.fixture
def sym():
    return to_sympy


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
