"""Test configuration and shared fixtures."""
from dotenv import load_dotenv
import os
import pytest
import sympy

# Load test environment before any modules are imported
load_dotenv('.env.test', override=True)

from lib.qcore import MultiLaurent  # noqa: E402

q_sym, y_sym = sympy.symbols('q y')


def as_sympy(f: MultiLaurent) -> sympy.Expr:
    """The same Laurent polynomial as a sympy expression in q and y"""
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * q_sym ** sympy.Rational(qe, f.g) * y_sym ** ye
         for (qe, ye), c in f.terms.items()),
        sympy.Integer(0),
    )


def sympy_q_coefficients(expr: sympy.Expr, order: int) -> list:
    """Coefficients of q^0 .. q^(order-1) of a power series in q"""
    expansion = sympy.series(expr, q_sym, 0, order).removeO()
    poly = sympy.Poly(sympy.expand(expansion), q_sym)
    return [poly.coeff_monomial(q_sym ** i) for i in range(order)]


@pytest.fixture
def to_sympy():
    return as_sympy


@pytest.fixture
def q_coefficients():
    return sympy_q_coefficients


@pytest.fixture
def golden_dir():
    return os.path.join(os.path.dirname(__file__), 'golden')
