"""Jacobian ideals, Milnor algebras, localization and quasi-homogeneity."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import ConstantPotential, NonIsolatedCritical
from .gaussian import ZERO, GaussianRational
from .groebner import DEFAULT_BUDGET, GroebnerBasis, groebner_basis
from .order import GREVLEX, Monomial, MonomialOrder, divides
from .polynomial import Polynomial


def jacobian_ideal(W: Polynomial) -> List[Polynomial]:
    partials = [W.derivative(k) for k in range(W.num_vars)]
    if all(p.is_zero() for p in partials):
        raise ConstantPotential("all partial derivatives of W vanish identically")
    return partials


def hessian(W: Polynomial) -> List[List[Polynomial]]:
    d = W.num_vars
    first = [W.derivative(k) for k in range(d)]
    return [[first[i].derivative(j) for j in range(d)] for i in range(d)]


def poly_det(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by Laplace expansion along the first row (d <= 4 in practice)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Polynomial.zero(m[0][0].num_vars)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def staircase(leading: Sequence[Monomial], num_vars: int) -> Optional[List[Monomial]]:
    """Monomials not divisible by any of ``leading``; None if there are infinitely many."""
    bounds = []
    for k in range(num_vars):
        pure = [m[k] for m in leading if m[k] > 0 and sum(m) == m[k]]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []
    for exps in itertools.product(*(range(b) for b in bounds)):
        if not any(divides(lm, exps) for lm in leading):
            out.append(tuple(exps))
    return out


@dataclass(frozen=True)
class MilnorAlgebra:
    """The finite-dimensional quotient C[z]/J(W) with its standard-monomial basis."""

    potential: Polynomial
    groebner: GroebnerBasis
    basis: Tuple[Monomial, ...]
    _index: Dict[Monomial, int] = field(repr=False, compare=False, hash=False)

    @property
    def ambient_vars(self) -> int:
        return self.potential.num_vars

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> MonomialOrder:
        return self.groebner.order

    def basis_polynomials(self) -> List[Polynomial]:
        return [Polynomial.monomial(m) for m in self.basis]

    def reduce(self, p: Polynomial) -> Polynomial:
        return self.groebner.reduce(p)

    def coordinates(self, p: Polynomial) -> List[GaussianRational]:
        r = self.reduce(p)
        vec = [ZERO] * self.dimension
        for e, c in r.items():
            vec[self._index[e]] = c
        return vec

    def from_coordinates(self, vec: Sequence) -> Polynomial:
        return Polynomial(self.ambient_vars, {m: c for m, c in zip(self.basis, vec)})

    def multiply(self, p: Polynomial, q: Polynomial) -> Polynomial:
        return self.reduce(self.reduce(p) * self.reduce(q))

    def multiplication_table(self) -> List[List[Polynomial]]:
        polys = self.basis_polynomials()
        return [[self.reduce(a * b) for b in polys] for a in polys]

    def weighted_degree_of_basis(self, weights: Sequence) -> Fraction:
        return max(sum(Fraction(w) * e for w, e in zip(weights, m)) for m in self.basis)


def milnor_algebra(W: Polynomial, order: MonomialOrder = GREVLEX, budget: Optional[int] = DEFAULT_BUDGET) -> MilnorAlgebra:
    gens = jacobian_ideal(W)
    gb = groebner_basis(gens, order, budget)
    if gb.generators and any(g.is_constant() for g in gb.generators):
        # W has no critical points at all: the quotient is zero
        return MilnorAlgebra(W, gb, (), {})
    basis = staircase(gb.leading_monomials(), W.num_vars)
    if basis is None:
        raise NonIsolatedCritical(
            "the Jacobian quotient is infinite dimensional (critical locus is not a finite set of points)"
        )
    basis.sort(key=order.key)
    basis = tuple(basis)
    return MilnorAlgebra(W, gb, basis, {m: k for k, m in enumerate(basis)})


def localize_at_point(W: Polynomial, point: Sequence) -> Polynomial:
    """``W(z + p) - W(p)``: recentre coordinates at ``p`` and drop the critical value."""
    point = [GaussianRational.coerce(x) for x in point]
    shifted = W.shift(point)
    return shifted - shifted.constant_term()


def minimal_polynomial(milnor: MilnorAlgebra, p: Polynomial) -> List[GaussianRational]:
    """Coefficients (constant term first, monic) of the minimal polynomial of
    multiplication by ``p`` on the Milnor algebra."""
    from ..linalg import nullspace, transpose

    powers = [milnor.coordinates(Polynomial.constant(milnor.ambient_vars, 1))]
    current = Polynomial.constant(milnor.ambient_vars, 1)
    while True:
        current = milnor.reduce(current * p)
        powers.append(milnor.coordinates(current))
        cols = transpose(powers)
        null = nullspace(cols, len(powers)) if cols else [[GaussianRational(1)]]
        if null:
            v = null[0]
            lead = v[-1]
            return [c / lead for c in v]


def rational_critical_points(W: Polynomial, milnor: Optional[MilnorAlgebra] = None) -> List[Tuple[GaussianRational, ...]]:
    """Critical points of W whose coordinates are all rational.

    Candidate coordinates are the rational roots of the minimal polynomial of
    each coordinate function on the Milnor algebra; tuples of candidates are
    kept when the gradient vanishes there.
    """
    d = W.num_vars
    if milnor is None:
        milnor = milnor_algebra(W, GREVLEX)
    grads = jacobian_ideal(W)
    candidates = []
    for k in range(d):
        coeffs = minimal_polynomial(milnor, Polynomial.variable(d, k))
        candidates.append(_rational_roots(coeffs))
    points = []
    for pt in itertools.product(*candidates):
        if all(not g.evaluate(pt) for g in grads):
            points.append(tuple(pt))
    points.sort(key=lambda p: tuple((x.re, x.im) for x in p))
    return points


def _rational_roots(coeffs: Sequence[GaussianRational]) -> List[GaussianRational]:
    """Roots in Q of a polynomial with coefficients in Q(i) (constant term first)."""
    if any(not c.is_real() for c in coeffs):
        # a real root must be a root of both real and imaginary parts
        re = [c.re for c in coeffs]
        im = [c.im for c in coeffs]
        roots = [r for r in _rational_roots_real(re) if _eval_real(im, r) == 0]
        return [GaussianRational(r) for r in roots]
    return [GaussianRational(r) for r in _rational_roots_real([c.re for c in coeffs])]


def _eval_real(coeffs, x):
    return sum(c * x ** k for k, c in enumerate(coeffs))


def _rational_roots_real(coeffs: Sequence[Fraction]) -> List[Fraction]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    den = lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    roots = set()
    shift = 0
    while ints[shift] == 0:
        shift += 1
    if shift:
        roots.add(Fraction(0))
    ints = ints[shift:]
    if len(ints) == 1:
        return sorted(roots)
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in _divisors(a0):
        for q in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if _eval_real(ints, r) == 0:
                    roots.add(r)
    return sorted(roots)


def _divisors(n: int) -> List[int]:
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            out.append(n // k)
        k += 1
    return sorted(set(out))


@dataclass(frozen=True)
class QuasiHomogeneity:
    """Outcome of the quasi-homogeneity test.

    ``is_quasi_homogeneous`` is the ideal-membership verdict W in J(W).
    ``weights`` (rational, W of weighted degree 1) is a certificate when a
    positive weight vector makes W weighted-homogeneous.
    """

    is_quasi_homogeneous: bool
    weights: Optional[Tuple[Fraction, ...]] = None

    def __bool__(self):
        return self.is_quasi_homogeneous

    def integer_weights(self) -> Optional[Tuple[Tuple[int, ...], int]]:
        """Integer weights and the integer degree of W, or None without a certificate."""
        if self.weights is None:
            return None
        den = lcm(*(w.denominator for w in self.weights))
        return tuple(int(w * den) for w in self.weights), den


def is_quasi_homogeneous(W: Polynomial, order: MonomialOrder = GREVLEX, milnor: Optional[MilnorAlgebra] = None) -> QuasiHomogeneity:
    if milnor is None:
        milnor = milnor_algebra(W, order)
    member = milnor.groebner.contains(W)
    weights = find_weights(W) if member else None
    return QuasiHomogeneity(member, weights)


def find_weights(W: Polynomial) -> Optional[Tuple[Fraction, ...]]:
    """Positive rational weights making every monomial of W have degree 1.

    Exact affine solve; when the solution set is positive dimensional, an
    interior point is located by linear programming and then snapped back to
    an exact rational point on the affine subspace.
    """
    from ..linalg import nullspace, rref, solve

    d = W.num_vars
    exps = [list(e) for e in W.monomials() if any(e)]
    if not exps or W.constant_term():
        return None
    rows = [[Fraction(x) for x in e] for e in exps]
    rhs = [Fraction(1)] * len(rows)
    particular = solve(rows, rhs, d)
    if particular is None:
        return None
    null = nullspace(rows, d)
    part = [x.re for x in particular]
    if not null:
        return tuple(part) if all(w > 0 for w in part) else None
    point = _interior_point(rows, d)
    if point is None:
        return None
    # snap: express point - particular in the nullspace basis with rounded coefficients
    basis = [[x.re for x in v] for v in null]
    pivots = set(rref(rows, d)[1])
    free_cols = [k for k in range(d) if k not in pivots]
    for denom_cap in (12, 60, 360, 5040):
        coeffs = [Fraction(point[c] - float(part[c])).limit_denominator(denom_cap) for c in free_cols]
        w = [part[k] + sum(c * v[k] for c, v in zip(coeffs, basis)) for k in range(d)]
        if all(x > 0 for x in w) and all(sum(a * b for a, b in zip(r, w)) == 1 for r in rows):
            return tuple(w)
    return None


def _interior_point(rows, d):
    import numpy as np
    from scipy.optimize import linprog

    # maximise t subject to A w = 1, w_k >= t, t <= 1
    a_eq = np.array([[float(x) for x in r] + [0.0] for r in rows])
    b_eq = np.ones(len(rows))
    a_ub = np.zeros((d, d + 1))
    for k in range(d):
        a_ub[k, k] = -1.0
        a_ub[k, d] = 1.0
    res = linprog(
        c=[0.0] * d + [-1.0],
        A_ub=a_ub,
        b_ub=np.zeros(d),
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(0, None)] * d + [(None, 1.0)],
        method="highs",
    )
    if not res.success or res.x[d] <= 1e-12:
        return None
    return list(res.x[:d])
