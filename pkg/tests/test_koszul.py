import pytest

from lgtft import koszul
from lgtft.errors import NonIsolatedCritical, NotQuasiHomogeneous
from lgtft.polyring import GaussianRational, milnor_algebra, parse_polynomial

QH = [
    ("z^2", ["z"]), ("z^5", ["z"]), ("x^3 + y^3", ["x", "y"]), ("x^2 + y^2", ["x", "y"]),
    ("x^2*y + y^4", ["x", "y"]), ("x^2*y + y^5", ["x", "y"]), ("x^3 + y^4", ["x", "y"]),
    ("a^2 + b^2 + c^2 + d^2", ["a", "b", "c", "d"]), ("x^3 + y^3 + w^3", ["x", "y", "w"]),
]


@pytest.mark.parametrize("text,names", QH)
def test_concentrated_in_degree_zero(text, names):
    W = parse_polynomial(text, names)
    cx = koszul.build(W)
    dims = koszul.cohomology_dims(cx)
    mu = milnor_algebra(W).dimension
    assert dims == {0: mu, **{-k: 0 for k in range(1, len(names) + 1)}}


@pytest.mark.parametrize("text,names", QH[:6])
def test_contraction_squares_to_zero(text, names):
    cx = koszul.build(parse_polynomial(text, names))
    assert all(cx.squares_to_zero(t) for t in range(cx.slice_bound + 1))


@pytest.mark.parametrize("text,names", QH[:6])
def test_dims_independent_of_contraction_scalar(text, names):
    W = parse_polynomial(text, names)
    a = koszul.cohomology_dims(koszul.build(W))
    b = koszul.cohomology_dims(koszul.build(W, scalar=GaussianRational(1)))
    assert a == b


def test_degree_table_shape():
    table = koszul.degree_table(koszul.build(parse_polynomial("x^2*y + y^4", ["x", "y"])))
    assert table == {"weights": [3, 2], "weighted_degree": 8, "degree_table": {"0": 5, "-1": 0, "-2": 0}}


def test_z2_slice_matrix():
    cx = koszul.build(parse_polynomial("z^2", ["z"]))
    _, _, rows = cx.differential(1, 1)
    assert rows == [[GaussianRational(0, -2)]]


def test_rejections():
    with pytest.raises(NotQuasiHomogeneous):
        koszul.build(parse_polynomial("z^3 - 3*z", ["z"]))
    with pytest.raises(NonIsolatedCritical):
        koszul.build(parse_polynomial("x^2*y", ["x", "y"]))
