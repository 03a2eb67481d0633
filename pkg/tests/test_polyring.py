from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lgtft.errors import ConstantPotential, NonIsolatedCritical, ParseError, ResourceBudgetExceeded
from lgtft.polyring import (
    GREVLEX,
    LEX,
    GaussianRational,
    I,
    MonomialOrder,
    Polynomial,
    find_weights,
    groebner_basis,
    is_quasi_homogeneous,
    localize_at_point,
    milnor_algebra,
    normal_form,
    parse_polynomial,
    parse_scalar,
    rational_critical_points,
)

from oracles import sympy_milnor_number

XY = ["x", "y"]


def P(text, names=XY):
    return parse_polynomial(text, names)


# ---------------------------------------------------------------- scalars


def test_gaussian_arithmetic():
    a = GaussianRational(Fraction(1, 2), 3)
    assert a * a.inverse() == 1
    assert I * I == -1
    assert (a + a.conjugate()).is_real()
    assert str(GaussianRational(Fraction(-1, 2), -1)) == "(-1/2-i)"
    assert GaussianRational.from_json(a.to_json()) == a
    assert hash(GaussianRational(3)) == hash(Fraction(3))


def test_parse_scalar():
    assert parse_scalar("2*i - 1/3") == GaussianRational(Fraction(-1, 3), 2)


# ---------------------------------------------------------------- parser


def test_parse_and_format():
    p = P("3*x^2 - (1/2 + i)*x*y + 7/3")
    assert p.coefficient((2, 0)) == 3
    assert p.coefficient((1, 1)) == GaussianRational(Fraction(-1, 2), -1)
    assert P(p.to_string(XY)) == p
    assert P("(x+y)**2") == P("x^2 + 2*x*y + y^2")


@pytest.mark.parametrize("text", ["x^^2", "x +", "(x", "q*x", "x/y", "x^-1"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        P(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        P("x + @")
    assert info.value.position == 4


coeff = st.tuples(st.integers(-5, 5), st.integers(1, 4), st.integers(-3, 3)).map(
    lambda t: GaussianRational(Fraction(t[0], t[1]), t[2]))
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coeff, max_size=5).map(
    lambda d: Polynomial(2, d))


@settings(max_examples=60, deadline=None)
@given(polys)
def test_format_parse_roundtrip(p):
    assert P(p.to_string(XY)) == p


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_ring_axioms(p, q):
    assert p * q == q * p
    assert (p + q) * p == p * p + q * p
    assert (p * q).derivative(0) == p.derivative(0) * q + p * q.derivative(0)


# ---------------------------------------------------------------- Groebner


def test_groebner_lex_example():
    gb = groebner_basis([P("3*x^2"), P("3*y^3 - x")], LEX)
    assert [g.to_string(XY, LEX) for g in gb.generators] == ["y^6", "x - 3*y^3"]
    assert gb.verify_cofactors()


def test_groebner_matches_sympy():
    gens = ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"]
    gb = groebner_basis([P(g) for g in gens], GREVLEX)
    x, y = sympy.symbols("x y")
    G = sympy.groebner([sympy.sympify(g.replace("^", "**")) for g in gens], x, y, order="grevlex")
    ours = sorted(str(sympy.expand(sympy.sympify(g.to_string(XY).replace("^", "**")))) for g in gb.generators)
    theirs = sorted(str(sympy.expand(e / sympy.Poly(e, x, y).LC(order="grevlex"))) for e in G.exprs)
    assert ours == theirs


def test_groebner_budget():
    with pytest.raises(ResourceBudgetExceeded):
        groebner_basis([P("x^5 + y^4 + x*y"), P("x^3*y - y^2 + x")], GREVLEX, budget=1)


def test_express_membership():
    gb = groebner_basis([P("x^2"), P("y^3")], GREVLEX)
    c = gb.express(P("x^3*y + 2*y^4"))
    assert c is not None
    assert sum((a * g for a, g in zip(c, gb.originals)), Polynomial.zero(2)) == P("x^3*y + 2*y^4")
    assert gb.express(P("x*y")) is None


@settings(max_examples=30, deadline=None)
@given(polys, polys)
def test_normal_form_is_ring_map(p, q):
    m = milnor_algebra(P("x^3 + y^4"))
    assert m.reduce(p * q) == m.reduce(m.reduce(p) * m.reduce(q))
    assert m.reduce(p + q) == m.reduce(p) + m.reduce(q)
    r, quots = normal_form(p, m.groebner)
    assert p == r + sum((a * g for a, g in zip(quots, m.groebner.generators)), Polynomial.zero(2))


# ---------------------------------------------------------------- Milnor algebras


@pytest.mark.parametrize("text,names,mu", [
    ("z^2", ["z"], 1), ("z^4", ["z"], 3), ("z^7", ["z"], 6),
    ("x^3 + y^3", XY, 4), ("x^2*y + y^3", XY, 4), ("x^2*y + y^5", XY, 6),
    ("x^2 + y^2", XY, 1), ("x^3 + y^7 + x^2*y^5", XY, 20),
])
def test_milnor_number_matches_sympy(text, names, mu):
    assert milnor_algebra(parse_polynomial(text, names)).dimension == mu
    assert sympy_milnor_number(text, names) == mu


@pytest.mark.parametrize("text", ["x^3 + y^3", "x^2*y + y^4", "x^4 + x*y^2"])
def test_milnor_number_order_independent(text):
    assert milnor_algebra(P(text), LEX).dimension == milnor_algebra(P(text), GREVLEX).dimension
    swapped = MonomialOrder("lex", (1, 0))
    assert milnor_algebra(P(text), swapped).dimension == milnor_algebra(P(text)).dimension


def test_cusp_basis():
    m = milnor_algebra(parse_polynomial("z^3", ["z"]))
    assert [b.to_string(["z"]) for b in m.basis_polynomials()] == ["1", "z"]


def test_nonisolated_rejected():
    with pytest.raises(NonIsolatedCritical):
        milnor_algebra(P("x^2*y"))


def test_constant_potential_rejected():
    with pytest.raises(ConstantPotential):
        milnor_algebra(P("5"))


def test_localization_two_points():
    W = parse_polynomial("z^3 - 3*z", ["z"])
    m = milnor_algebra(W)
    pts = rational_critical_points(W, m)
    assert pts == [(GaussianRational(-1),), (GaussianRational(1),)]
    # each localization is a Morse point: local Milnor number 1, total 2
    for pt in pts:
        local = localize_at_point(W, pt)
        assert local.constant_term() == 0
        assert local.coefficient((1,)) == 0
    assert m.dimension == 2


def test_quasi_homogeneity():
    qh = is_quasi_homogeneous(P("x^2*y + y^4"))
    assert qh.is_quasi_homogeneous
    assert qh.integer_weights() == ((3, 2), 8)
    assert not is_quasi_homogeneous(parse_polynomial("z^3 - 3*z", ["z"])).is_quasi_homogeneous


def test_find_weights_underdetermined():
    # x*y alone leaves a one-parameter family of weights
    w = find_weights(P("x*y"))
    assert w is not None and all(q > 0 for q in w) and w[0] + w[1] == 1
