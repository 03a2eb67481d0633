"""Buchberger's algorithm with cofactor tracking, and multivariate division."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import ResourceBudgetExceeded
from .gaussian import ZERO, GaussianRational
from .order import GREVLEX, Monomial, MonomialOrder, divides, mono_div, mono_lcm
from .polynomial import Polynomial

DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis with membership certificates.

    ``cofactors[k][j]`` is the coefficient of ``originals[j]`` in the
    expression of ``generators[k]``, so that
    ``generators[k] == sum_j cofactors[k][j] * originals[j]``.
    """

    generators: Tuple[Polynomial, ...]
    order: MonomialOrder
    cofactors: Tuple[Tuple[Polynomial, ...], ...]
    originals: Tuple[Polynomial, ...]

    @property
    def num_vars(self) -> int:
        return self.originals[0].num_vars

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self, track=False)[0]

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()

    def express(self, p: Polynomial) -> Optional[List[Polynomial]]:
        """Coefficients c_j with p = sum_j c_j * originals[j], or None if p is not in the ideal."""
        rem, quots = normal_form(p, self)
        if not rem.is_zero():
            return None
        return self.to_original(quots)

    def to_original(self, quotients: Sequence[Polynomial]) -> List[Polynomial]:
        d = self.num_vars
        out = [Polynomial.zero(d) for _ in self.originals]
        for q, cof in zip(quotients, self.cofactors):
            if q.is_zero():
                continue
            for j, c in enumerate(cof):
                if not c.is_zero():
                    out[j] = out[j] + q * c
        return out

    def verify_cofactors(self) -> bool:
        for g, cof in zip(self.generators, self.cofactors):
            total = Polynomial.zero(self.num_vars)
            for c, f in zip(cof, self.originals):
                total = total + c * f
            if total != g:
                return False
        return True


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1):
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise ResourceBudgetExceeded(f"Groebner step budget of {self.limit} exhausted")


def _divide(
    terms: Dict[Monomial, GaussianRational],
    divisors: Sequence[Tuple[Monomial, GaussianRational, Dict[Monomial, GaussianRational]]],
    order: MonomialOrder,
    track: bool,
    budget: Optional[_Budget] = None,
    full: bool = True,
):
    """Divide ``terms`` (mutated) by ``divisors``; returns (remainder dict, quotient dicts)."""
    key = order.key
    remainder: Dict[Monomial, GaussianRational] = {}
    quotients: List[Dict[Monomial, GaussianRational]] = [dict() for _ in divisors] if track else []
    while terms:
        lm = max(terms, key=key)
        lc = terms[lm]
        for k, (glm, glc, gterms) in enumerate(divisors):
            if divides(glm, lm):
                shift = mono_div(lm, glm)
                q = lc / glc
                for e, c in gterms.items():
                    e2 = tuple(a + b for a, b in zip(e, shift))
                    v = terms.get(e2, ZERO) - q * c
                    if v:
                        terms[e2] = v
                    else:
                        terms.pop(e2, None)
                if track:
                    quotients[k][shift] = quotients[k].get(shift, ZERO) + q
                if budget is not None:
                    budget.tick()
                break
        else:
            remainder[lm] = lc
            del terms[lm]
            if not full:
                remainder.update(terms)
                break
    return remainder, quotients


def _as_divisor(p: Polynomial, order: MonomialOrder):
    lm, lc = p.leading_term(order)
    return lm, lc, p._terms


def normal_form(p: Polynomial, gb: GroebnerBasis, track: bool = True) -> Tuple[Polynomial, List[Polynomial]]:
    """Fully reduce ``p``; returns (remainder, cofactors) with p = sum cof_k * g_k + remainder."""
    if p.num_vars != gb.num_vars:
        raise ValueError("polynomial and Groebner basis live in different rings")
    d = p.num_vars
    divisors = [_as_divisor(g, gb.order) for g in gb.generators]
    rem, quots = _divide(dict(p._terms), divisors, gb.order, track)
    remainder = Polynomial(d, rem, _trusted=True)
    if not track:
        return remainder, []
    return remainder, [Polynomial(d, {e: c for e, c in q.items() if c}, _trusted=True) for q in quots]


def _combine(a: List[Polynomial], b: List[Polynomial], fa, fb) -> List[Polynomial]:
    return [x * fa - y * fb for x, y in zip(a, b)]


def groebner_basis(
    gens: Sequence[Polynomial],
    order: MonomialOrder = GREVLEX,
    budget: Optional[int] = DEFAULT_BUDGET,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal selection strategy (smallest lcm of
    leading monomials first); Buchberger's product and chain criteria prune
    pairs. Every intermediate polynomial carries its cofactor vector with
    respect to ``gens``.
    """
    if not gens:
        raise ValueError("need at least one generator")
    d = gens[0].num_vars
    if any(g.num_vars != d for g in gens):
        raise ValueError("generators live in different rings")
    originals = tuple(gens)
    m = len(originals)
    steps = _Budget(budget)
    key = order.key

    def unit(j):
        return [Polynomial.constant(d, 1) if k == j else Polynomial.zero(d) for k in range(m)]

    basis: List[Tuple[Polynomial, List[Polynomial]]] = []
    for j, g in enumerate(originals):
        if not g.is_zero():
            basis.append((g, unit(j)))

    if not basis:
        return GroebnerBasis((), order, (), originals)

    def reduce_tracked(p: Polynomial, cof: List[Polynomial], against):
        divisors = [_as_divisor(g, order) for g, _ in against]
        rem, quots = _divide(dict(p._terms), divisors, order, True, steps)
        for q, (_, gcof) in zip(quots, against):
            if q:
                qp = Polynomial(d, {e: c for e, c in q.items() if c}, _trusted=True)
                cof = [c - qp * gc for c, gc in zip(cof, gcof)]
        return Polynomial(d, rem, _trusted=True), cof

    # inter-reduce the input before pairing
    basis.sort(key=lambda t: key(t[0].leading_monomial(order)))
    reduced: List[Tuple[Polynomial, List[Polynomial]]] = []
    for g, cof in basis:
        r, rc = reduce_tracked(g, cof, reduced)
        if not r.is_zero():
            reduced.append((r, rc))
    basis = reduced

    lms = [g.leading_monomial(order) for g, _ in basis]
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}

    def coprime(a, b):
        return all(x == 0 or y == 0 for x, y in zip(a, b))

    while pairs:
        i, j = min(pairs, key=lambda ij: (key(mono_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        if coprime(lms[i], lms[j]):
            continue
        if any(
            k != i and k != j and divides(lms[k], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        steps.tick()
        gi, ci = basis[i]
        gj, cj = basis[j]
        lci = gi.coefficient(lms[i])
        lcj = gj.coefficient(lms[j])
        si = Polynomial(d, {mono_div(lcm, lms[i]): lci.inverse()})
        sj = Polynomial(d, {mono_div(lcm, lms[j]): lcj.inverse()})
        spoly = gi * si - gj * sj
        scof = _combine(ci, cj, si, sj)
        r, rc = reduce_tracked(spoly, scof, basis)
        if r.is_zero():
            continue
        n = len(basis)
        basis.append((r, rc))
        lms.append(r.leading_monomial(order))
        pairs.update((k, n) for k in range(n))

    return _reduce_basis(basis, order, originals, steps)


def _reduce_basis(basis, order, originals, steps) -> GroebnerBasis:
    d = originals[0].num_vars
    key = order.key
    # minimal basis: drop elements whose leading monomial is divisible by another's
    lms = [g.leading_monomial(order) for g, _ in basis]
    keep = []
    for k, lm in enumerate(lms):
        dominated = False
        for j, other in enumerate(lms):
            if j == k:
                continue
            if divides(other, lm) and (other != lm or j < k):
                dominated = True
                break
        if not dominated:
            keep.append(basis[k])
    keep.sort(key=lambda t: key(t[0].leading_monomial(order)))

    gens: List[Polynomial] = []
    cofs: List[Tuple[Polynomial, ...]] = []
    for k, (g, cof) in enumerate(keep):
        others = [keep[j] for j in range(len(keep)) if j != k]
        lm, lc = g.leading_term(order)
        # tail reduction only: the leading term is not divisible by any other leading monomial
        tail = {e: c for e, c in g._terms.items() if e != lm}
        divisors = [_as_divisor(h, order) for h, _ in others]
        rem, quots = _divide(tail, divisors, order, True, steps)
        for q, (_, hc) in zip(quots, others):
            if q:
                qp = Polynomial(d, {e: c for e, c in q.items() if c}, _trusted=True)
                cof = [c - qp * h for c, h in zip(cof, hc)]
        rem[lm] = lc
        inv = lc.inverse()
        gens.append(Polynomial(d, rem, _trusted=True).scale(inv))
        cofs.append(tuple(c.scale(inv) for c in cof))
    return GroebnerBasis(tuple(gens), order, tuple(cofs), tuple(originals))
