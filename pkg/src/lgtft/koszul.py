"""Koszul complex (wedge^k T, iota_W) of a weighted-homogeneous potential.

The term in cohomological degree -k is free on the basis e_I, |I| = k.
Giving e_i weight N - q_i makes contraction with -i*dW preserve total
weight, so the complex splits into finite-dimensional weight slices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .errors import NotQuasiHomogeneous, TruncationNotStable
from .linalg import rank
from .matfact import monomials_of_weight
from .polyring import GREVLEX, GaussianRational, MonomialOrder, Polynomial, is_quasi_homogeneous, milnor_algebra
from .polyring.gaussian import I, ZERO

CONTRACTION_SCALAR = -I


@dataclass
class KoszulComplex:
    potential: Polynomial
    weights: Tuple[int, ...]
    degree: int
    scalar: GaussianRational = CONTRACTION_SCALAR
    socle_degree: int = 0
    _cache: Dict = field(default_factory=dict, repr=False)

    @property
    def num_vars(self) -> int:
        return self.potential.num_vars

    @property
    def slice_bound(self) -> int:
        return self.socle_degree + self.degree

    @property
    def min_slice(self) -> int:
        return 0

    def _shift(self, subset) -> int:
        return sum(self.degree - self.weights[i] for i in subset)

    def slice_basis(self, k: int, t: int):
        """Basis of the weight-t slice of the degree -k term: pairs (subset, monomial)."""
        out = []
        for subset in itertools.combinations(range(self.num_vars), k):
            for m in monomials_of_weight(self.weights, t - self._shift(subset)):
                out.append((subset, m))
        return out

    def differential(self, k: int, t: int):
        """Matrix (rows: slice of degree -(k-1), cols: slice of degree -k) of the contraction."""
        key = (k, t)
        if key in self._cache:
            return self._cache[key]
        src = self.slice_basis(k, t)
        dst = self.slice_basis(k - 1, t) if k >= 1 else []
        index = {b: n for n, b in enumerate(dst)}
        partials = [self.potential.derivative(j).scale(self.scalar) for j in range(self.num_vars)]
        rows = [[ZERO] * len(src) for _ in dst]
        for col, (subset, m) in enumerate(src):
            for pos, j in enumerate(subset):
                rest = subset[:pos] + subset[pos + 1:]
                sign = -1 if pos % 2 else 1
                for e, c in partials[j].items():
                    mono = tuple(a + b for a, b in zip(e, m))
                    r = index[(rest, mono)]
                    rows[r][col] = rows[r][col] + c * sign
        self._cache[key] = (src, dst, rows)
        return src, dst, rows

    def squares_to_zero(self, t: int) -> bool:
        for k in range(2, self.num_vars + 1):
            _, mid, outer = self.differential(k, t)
            _, _, inner = self.differential(k - 1, t)
            if not mid or not inner:
                continue
            for r in range(len(inner)):
                for c in range(len(outer[0]) if outer else 0):
                    if sum((inner[r][m] * outer[m][c] for m in range(len(mid))), ZERO):
                        return False
        return True

    def slice_cohomology(self, k: int, t: int) -> int:
        src, _, out_rows = self.differential(k, t)
        n = len(src)
        if n == 0:
            return 0
        out_rank = rank(out_rows) if out_rows else 0
        if k < self.num_vars:
            _, _, in_rows = self.differential(k + 1, t)
            in_rank = rank(in_rows) if in_rows and in_rows[0] else 0
        else:
            in_rank = 0
        return n - out_rank - in_rank


def build(W: Polynomial, weights: Optional[Sequence[int]] = None, degree: Optional[int] = None,
          order: MonomialOrder = GREVLEX, scalar: GaussianRational = CONTRACTION_SCALAR) -> KoszulComplex:
    milnor = milnor_algebra(W, order)
    qh = is_quasi_homogeneous(W, order, milnor)
    if weights is None:
        iw = qh.integer_weights() if qh.is_quasi_homogeneous else None
        if iw is None:
            raise NotQuasiHomogeneous("W has no positive weight vector making it weighted-homogeneous")
        weights, degree = iw
    weights = tuple(int(w) for w in weights)
    if degree is None or not W.is_homogeneous(weights) or Fraction(W.weighted_degree(weights)) != degree:
        raise NotQuasiHomogeneous(f"W is not homogeneous of degree {degree} for weights {weights}")
    socle = int(milnor.weighted_degree_of_basis(weights)) if milnor.dimension else 0
    return KoszulComplex(W, weights, int(degree), scalar, socle)


def cohomology_dims(cx: KoszulComplex) -> Dict[int, int]:
    """{cohomological degree: dimension} for degrees 0, -1, ..., -d."""
    dims = {-k: 0 for k in range(cx.num_vars + 1)}
    for t in range(cx.min_slice, cx.slice_bound + 1):
        for k in range(cx.num_vars + 1):
            dims[-k] += cx.slice_cohomology(k, t)
    for t in range(cx.slice_bound + 1, cx.slice_bound + cx.degree + 1):
        for k in range(cx.num_vars + 1):
            if cx.slice_cohomology(k, t):
                raise TruncationNotStable(f"Koszul cohomology in slice {t} beyond the bound")
    return dims


def degree_table(cx: KoszulComplex) -> dict:
    dims = cohomology_dims(cx)
    return {
        "weights": list(cx.weights),
        "weighted_degree": cx.degree,
        "degree_table": {str(k): dims[k] for k in sorted(dims, reverse=True)},
    }
