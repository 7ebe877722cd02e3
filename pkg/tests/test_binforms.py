from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from sarkisov.binforms import (BinaryForm, FormError, FormSyntaxError, divide_exact,
                               is_square, is_squarefree, multiply, odd_part, parse_form,
                               rational_linear_factors, root_stats, squarefree_decomposition)

u0 = BinaryForm.linear(1, 0)
u1 = BinaryForm.linear(0, 1)


def f(text):
    return parse_form(text)


def test_multiply_and_divide():
    assert multiply(u0, u1) == f("u0*u1")
    assert divide_exact(f("u0^3*u1"), f("u0^2")) == f("u0*u1")
    with pytest.raises(FormError):
        divide_exact(f("u0^3 + u1^3"), u0)


def test_squarefree_examples():
    assert squarefree_decomposition(f("u0^3*u1^5")) == [(u0, 3), (u1, 5)]
    assert squarefree_decomposition(f("u0^2 - u1^2")) == [(f("u0^2 - u1^2"), 1)]
    assert squarefree_decomposition(f("(u0^2+u1^2)^2*u0")) == [(u0, 1), (f("u0^2+u1^2"), 2)]


def test_squarefree_rejects_zero():
    with pytest.raises(FormError):
        squarefree_decomposition(BinaryForm((0, 0, 0)))


def test_odd_part_square_and_root_stats():
    assert odd_part(f("u0^3*u1^5")) == f("u0*u1")
    assert not is_square(f("u0^3*u1^5"))
    assert is_square(f("(u0^2-u1^2)^2"))
    assert odd_part(f("(u0^2-u1^2)^2")) == BinaryForm.constant(1)
    assert tuple(root_stats(f("u0*u1*(u0^2+u1^2)"))) == (4, 4, 4, 0)


def test_rational_linear_factors():
    g = f("u1^2*(2*u0 - 3*u1)^3*(u0^2 + u1^2)")
    assert rational_linear_factors(g) == [(u1, 2), (f("2*u0 - 3*u1"), 3)]


def test_parse_grammar():
    assert f("u0^3*u1 + u1^4").coeffs == (0, 1, 0, 0, 1)
    assert f("1/2*u0**2 - u1^2") == BinaryForm((Fraction(1, 2), 0, -1))
    assert f("2u0u1").coeffs == (0, 2, 0)
    assert f("u0^3*u1 + u1^4").to_text() == "u0^3*u1 + u1^4"


@pytest.mark.parametrize("text", ["u0 +", "u0^", "u2", "u0 + u1^2", "(u0"])
def test_parse_errors(text):
    with pytest.raises(FormError):
        f(text)


def test_parse_error_position():
    with pytest.raises(FormSyntaxError) as e:
        f("u0 + $u1")
    assert e.value.position == 5


# ---------------------------------------------------------------- properties

coef = st.integers(-20, 20)


@st.composite
def forms(draw, max_degree=12):
    d = draw(st.integers(1, max_degree))
    c = draw(st.lists(coef, min_size=d + 1, max_size=d + 1))
    if c[0] == 0:
        c[0] = 1
    return BinaryForm(tuple(c))


@st.composite
def linear_forms(draw):
    p, q = draw(st.integers(-5, 5)), draw(st.integers(-5, 5))
    if p == q == 0:
        p = 1
    return BinaryForm.linear(p, q)


def _to_sympy(g):
    x, y = sympy.symbols("u0 u1")
    d = g.degree
    return sum(sympy.Rational(c.numerator, c.denominator) * x ** (d - i) * y ** i
               for i, c in enumerate(g.coeffs)), x, y


@given(forms())
def test_reconstruction(g):
    prod = BinaryForm.constant(1)
    for layer, i in squarefree_decomposition(g):
        prod = prod * layer ** i
    assert prod.degree == g.degree
    assert prod.primitive() == g.primitive() or (-prod).primitive() == g.primitive()


@given(forms())
def test_layers_match_sympy(g):
    expr, x, y = _to_sympy(g)
    _, factors = sympy.sqf_list(sympy.Poly(expr, x, y))
    theirs = {}
    for poly, i in factors:
        theirs[i] = theirs.get(i, 0) + poly.total_degree()
    ours = {i: layer.degree for layer, i in squarefree_decomposition(g)}
    assert ours == theirs


@given(forms())
def test_degree_identity(g):
    st_ = root_stats(g)
    extra = sum((i - 1) * layer.degree for layer, i in squarefree_decomposition(g) if i >= 2)
    assert st_.distinct_roots + extra == st_.degree


@given(forms(), linear_forms())
def test_odd_part_laws(g, l):
    odd = odd_part(g)
    assert odd_part(odd) == odd
    assert odd_part(g * l * l) == odd
    assert is_square(g) == (odd.degree == 0)
    assert is_squarefree(g) == (root_stats(g).repeated_roots == 0)


@given(forms(6), forms(6))
def test_divide_exact_inverts_multiply(a, b):
    assert divide_exact(a * b, b) == a


@given(forms())
def test_text_round_trip(g):
    assert parse_form(g.to_text()) == g
