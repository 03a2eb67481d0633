import pytest
from hypothesis import given, settings, strategies as st

from lgtft.errors import MixedParity, ShapeMismatch
from lgtft.polyring import parse_polynomial
from lgtft.superalg import (
    EVEN,
    MIXED,
    ODD,
    SuperMatrix,
    SuperRank,
    compose,
    epsilon_product,
    graded_commutator,
    supertrace,
)

R11 = SuperRank(1, 1)
R21 = SuperRank(2, 1)


def P(s):
    return parse_polynomial(s, ["x", "y"])


def mat(rows, src=R11, tgt=R11, parity=None):
    return SuperMatrix(src, tgt, [[P(e) for e in r] for r in rows], 2, parity)


def test_parity_detection():
    assert mat([["x", "0"], ["0", "y"]]).parity == EVEN
    assert mat([["0", "x"], ["y", "0"]]).parity == ODD
    assert mat([["1", "x"], ["0", "0"]]).parity == MIXED
    with pytest.raises(MixedParity):
        mat([["1", "x"], ["0", "0"]], parity=EVEN)
    with pytest.raises(MixedParity):
        _ = mat([["1", "x"], ["0", "0"]]).degree


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        mat([["1"]])
    a = SuperMatrix.identity(R21, 2)
    with pytest.raises(ShapeMismatch):
        compose(a, SuperMatrix.identity(R11, 2))


def test_blocks_roundtrip():
    m = SuperMatrix.from_blocks(R21, R21, 2, eo=[[P("x")], [P("y")]], oe=[[P("1"), P("x*y")]])
    assert m.parity == ODD
    back = SuperMatrix.from_json(m.to_json(["x", "y"]), ["x", "y"])
    assert back == m


def test_supertrace_values():
    assert supertrace(mat([["x", "0"], ["0", "y"]])) == P("x - y")
    assert supertrace(mat([["0", "x"], ["y", "0"]])).is_zero()


def test_epsilon_product_two():
    a, b = mat([["0", "1"], ["0", "0"]]), mat([["0", "0"], ["1", "0"]])
    # a b - b a
    assert epsilon_product([a, b]) == compose(a, b) - compose(b, a)


entry = st.sampled_from(["0", "1", "x", "y", "x*y", "-2*x + i", "y^2"])


def pure(parity):
    if parity == EVEN:
        return st.tuples(entry, entry).map(lambda t: mat([[t[0], "0"], ["0", t[1]]], parity=EVEN))
    return st.tuples(entry, entry).map(lambda t: mat([["0", t[0]], [t[1], "0"]], parity=ODD))


any_pure = st.sampled_from([EVEN, ODD]).flatmap(pure)


@settings(max_examples=60, deadline=None)
@given(any_pure, any_pure)
def test_supertrace_kills_graded_commutators(a, b):
    assert supertrace(graded_commutator(a, b)).is_zero()


@settings(max_examples=40, deadline=None)
@given(any_pure, any_pure, any_pure)
def test_composition_associative_and_graded(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    ab = compose(a, b)
    if not ab.is_zero():
        assert ab.degree == (a.degree + b.degree) % 2
