import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from lgtft.errors import NotAFactorization, NotClosed
from lgtft.matfact import (
    cohomology_coordinates,
    defect_differential,
    elementary_morphism,
    from_blocks,
    hom_cohomology,
    koszul_factorization,
    shift,
    then,
)
from lgtft.polyring import milnor_algebra, parse_polynomial
from lgtft.superalg import EVEN, ODD
from lgtft.tftcheck import random_morphism

from oracles import truncated_hom_dims


def Z(s):
    return parse_polynomial(s, ["z"])


def a_n_object(n, a):
    W = Z(f"z^{n + 1}")
    return from_blocks(W, [[Z(f"z^{a}")]], [[Z(f"z^{n + 1 - a}")]], f"M{a}")


def test_validate_rejects_wrong_square():
    with pytest.raises(NotAFactorization) as info:
        from_blocks(Z("z^3"), [[Z("z")]], [[Z("z")]])
    assert info.value.block == "ee"


def test_koszul_factorization_squares_to_w():
    xy = ["x", "y"]
    k = koszul_factorization([parse_polynomial("x", xy), parse_polynomial("y", xy)],
                             [parse_polynomial("x^2", xy), parse_polynomial("y^2", xy)], "K")
    assert k.rank.even == 2 and k.rank.odd == 2
    assert k.potential == parse_polynomial("x^3 + y^3", xy)


def test_shift_swaps_parity():
    a = a_n_object(2, 1)
    s = shift(a)
    assert [[e.to_string(["z"]) for e in r] for r in s.u] == [["-z^2"]]
    assert [[e.to_string(["z"]) for e in r] for r in s.v] == [["-z"]]
    m = milnor_algebra(a.potential)
    h, hs = hom_cohomology(a, a, m), hom_cohomology(a, s, m)
    assert hs.dims == (h.odd_dim, h.even_dim)


def test_z2_hom_basis():
    a = from_blocks(Z("z^2"), [[Z("z")]], [[Z("z")]], "Z")
    h = hom_cohomology(a, a, milnor_algebra(a.potential))
    assert h.dims == (1, 1)
    assert h.even_basis[0] == a.identity()
    odd = h.odd_basis[0].matrix
    assert odd.block("eo")[0][0] == Z("1") and odd.block("oe")[0][0] == Z("-1")
    assert defect_differential(elementary_morphism(a, a, 0, 1, Z("z"))).matrix.entries[0][0] == Z("z^2")


@pytest.mark.parametrize("n,a,b", [(n, a, b) for n in range(1, 5) for a in range(1, n + 1) for b in range(1, n + 1)])
def test_a_n_hom_matches_bruteforce_oracle(n, a, b):
    A, B = a_n_object(n, a), a_n_object(n, b)
    h = hom_cohomology(A, B, milnor_algebra(A.potential))
    assert h.strategy == "graded"
    assert h.dims == truncated_hom_dims(n, a, b, 6)


@pytest.mark.parametrize("n,a,b", [(3, 2, 2), (4, 2, 3), (2, 1, 1)])
def test_quotient_model_is_two_to_the_d_times(n, a, b):
    A, B = a_n_object(n, a), a_n_object(n, b)
    m = milnor_algebra(A.potential)
    g = hom_cohomology(A, B, m, "graded")
    q = hom_cohomology(A, B, m, "quotient")
    assert q.strategy == "quotient"
    assert sum(q.dims) == 2 * sum(g.dims)


def test_defect_differential_squares_to_zero_and_leibniz():
    rng = random.Random(5)
    A, B = a_n_object(4, 2), a_n_object(4, 3)
    for _ in range(10):
        for pf, pg in itertools.product((EVEN, ODD), repeat=2):
            f = random_morphism(rng, A, B, pf)
            g = random_morphism(rng, B, A, pg)
            assert defect_differential(defect_differential(f)).is_zero()
            lhs = defect_differential(then(g, f))
            sign = -1 if g.degree else 1
            rhs = then(defect_differential(g), f) + then(g, defect_differential(f)).scale(sign)
            assert lhs == rhs


def test_coordinates_of_basis_and_exact():
    A, B = a_n_object(3, 2), a_n_object(3, 1)
    h = hom_cohomology(A, B, milnor_algebra(A.potential))
    n = len(h.basis)
    for k, t in enumerate(h.basis):
        assert h.coordinates(t) == [1 if j == k else 0 for j in range(n)]
    rng = random.Random(1)
    for parity in (EVEN, ODD):
        exact = defect_differential(random_morphism(rng, A, B, parity))
        assert not any(h.coordinates(exact))


def test_coordinates_reject_non_closed():
    A = a_n_object(2, 1)
    h = hom_cohomology(A, A, milnor_algebra(A.potential))
    with pytest.raises(NotClosed):
        cohomology_coordinates(h, elementary_morphism(A, A, 0, 0, Z("1")))


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(0, 10_000))
def test_coordinates_linear_modulo_exact(coeffs, seed):
    A = a_n_object(3, 2)
    h = hom_cohomology(A, A, milnor_algebra(A.potential))
    even = h.even_basis
    combo = even[0].scale(coeffs[0]) + even[1].scale(coeffs[1])
    noise = defect_differential(random_morphism(random.Random(seed), A, A, ODD))
    coords = h.coordinates(combo + noise)
    assert coords[:2] == coeffs and not any(coords[2:])


def test_two_variable_koszul_hom():
    xy = ["x", "y"]
    k = koszul_factorization([parse_polynomial("x", xy), parse_polynomial("y", xy)],
                             [parse_polynomial("x^2", xy), parse_polynomial("y^2", xy)], "K")
    h = hom_cohomology(k, k, milnor_algebra(k.potential))
    # End of the tensor product of two A_2 branes (each End = 1|1): total 4 = 2|2
    assert h.dims == (2, 2)
