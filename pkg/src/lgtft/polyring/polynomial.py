"""Sparse multivariate polynomials with Gaussian-rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .gaussian import ONE, ZERO, GaussianRational
from .order import GREVLEX, Monomial, MonomialOrder

_G = GaussianRational


class Polynomial:
    """Immutable sparse polynomial in ``num_vars`` variables.

    Terms are stored as a mapping from exponent tuples to nonzero
    coefficients. Iteration through :meth:`items` is in canonical (sorted)
    order so that every printed or serialized form is deterministic.
    """

    __slots__ = ("num_vars", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Optional[Mapping[Monomial, object]] = None, *, _trusted=False):
        if num_vars < 1:
            raise ValueError("a polynomial needs at least one variable")
        self.num_vars = num_vars
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        clean: Dict[Monomial, GaussianRational] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {num_vars} variables")
            c = _G.coerce(c)
            if c:
                clean[exps] = clean.get(exps, ZERO) + c
        self._terms = {e: c for e, c in clean.items() if c}

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, num_vars: int) -> "Polynomial":
        return cls(num_vars, {}, _trusted=True)

    @classmethod
    def constant(cls, num_vars: int, c=1) -> "Polynomial":
        c = _G.coerce(c)
        return cls(num_vars, {(0,) * num_vars: c} if c else {}, _trusted=True)

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "Polynomial":
        exps = tuple(1 if k == index else 0 for k in range(num_vars))
        return cls(num_vars, {exps: ONE}, _trusted=True)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): c})

    # basic queries ----------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, GaussianRational]:
        return dict(self._terms)

    def items(self, order: Optional[MonomialOrder] = None) -> Iterator[Tuple[Monomial, GaussianRational]]:
        """Terms in canonical order: descending in ``order`` if given, else sorted exponents."""
        if order is None:
            keys = sorted(self._terms)
        else:
            keys = sorted(self._terms, key=order.key, reverse=True)
        for k in keys:
            yield k, self._terms[k]

    def monomials(self) -> Iterable[Monomial]:
        return self._terms.keys()

    def coefficient(self, exps: Sequence[int]) -> GaussianRational:
        return self._terms.get(tuple(exps), ZERO)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> GaussianRational:
        return self._terms.get((0,) * self.num_vars, ZERO)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def weighted_degree(self, weights: Sequence) -> Fraction:
        if not self._terms:
            return Fraction(-1)
        return max(sum(w * x for w, x in zip(weights, e)) for e in self._terms)

    def is_homogeneous(self, weights: Sequence) -> bool:
        degs = {sum(w * x for w, x in zip(weights, e)) for e in self._terms}
        return len(degs) <= 1

    def leading_term(self, order: MonomialOrder = GREVLEX) -> Tuple[Monomial, GaussianRational]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        lm = max(self._terms, key=order.key)
        return lm, self._terms[lm]

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self._terms:
            return self
        _, lc = self.leading_term(order)
        return self.scale(lc.inverse())

    # arithmetic -------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.num_vars != self.num_vars:
            raise ValueError(f"variable count mismatch: {self.num_vars} vs {other.num_vars}")

    def _lift(self, other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Rational, GaussianRational)):
            return Polynomial.constant(self.num_vars, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.num_vars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.num_vars, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _G.coerce(c)
        if not c:
            return Polynomial.zero(self.num_vars)
        if c == 1:
            return self
        return Polynomial(self.num_vars, {e: v * c for e, v in self._terms.items()}, _trusted=True)

    def mul_term(self, exps: Monomial, c) -> "Polynomial":
        """Multiply by the single term ``c * x^exps``."""
        if not c:
            return Polynomial.zero(self.num_vars)
        out = {}
        for e, v in self._terms.items():
            out[tuple(a + b for a, b in zip(e, exps))] = v * c
        return Polynomial(self.num_vars, out, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if not self._terms or not other._terms:
            return Polynomial.zero(self.num_vars)
        out: Dict[Monomial, GaussianRational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial(self.num_vars, {e: c for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.constant(self.num_vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self, index: int) -> "Polynomial":
        out = {}
        for e, c in self._terms.items():
            k = e[index]
            if k:
                e2 = e[:index] + (k - 1,) + e[index + 1:]
                out[e2] = c * k
        return Polynomial(self.num_vars, out, _trusted=True)

    def evaluate(self, point: Sequence) -> GaussianRational:
        point = [_G.coerce(p) for p in point]
        total = ZERO
        for e, c in self._terms.items():
            term = c
            for p, k in zip(point, e):
                if k:
                    term = term * p ** k
            total = total + term
        return total

    def shift(self, point: Sequence) -> "Polynomial":
        """Return ``self(z + point)``."""
        point = [_G.coerce(p) for p in point]
        d = self.num_vars
        result: Dict[Monomial, GaussianRational] = {}
        for e, c in self._terms.items():
            # expand prod_i (z_i + p_i)^{e_i} one variable at a time
            partial = {(0,) * d: c}
            for i, k in enumerate(e):
                if not k:
                    continue
                nxt = {}
                for m, v in partial.items():
                    for j in range(k + 1):
                        coeff = v * comb(k, j) * point[i] ** (k - j)
                        if not coeff:
                            continue
                        m2 = m[:i] + (m[i] + j,) + m[i + 1:]
                        nxt[m2] = nxt.get(m2, ZERO) + coeff
                partial = nxt
            for m, v in partial.items():
                result[m] = result.get(m, ZERO) + v
        return Polynomial(d, result)

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self.num_vars, {e: fn(c) for e, c in self._terms.items()})

    # equality / hashing -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.num_vars == other.num_vars and self._terms == other._terms
        if isinstance(other, (int, Rational, GaussianRational)):
            return self._terms == Polynomial.constant(self.num_vars, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    # printing ---------------------------------------------------------
    def to_string(self, names: Optional[Sequence[str]] = None, order: MonomialOrder = GREVLEX) -> str:
        from .parse import format_polynomial

        return format_polynomial(self, names, order)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.num_vars}, {self.to_string()!r})"


def default_names(num_vars: int):
    return [f"x{k + 1}" for k in range(num_vars)]
