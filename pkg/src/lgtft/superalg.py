"""Z2-graded block matrices with polynomial entries.

A :class:`SuperMatrix` from rank ``s0|s1`` to rank ``t0|t1`` is stored as one
dense ``(t0+t1) x (s0+s1)`` array with the even basis vectors first.  Its
four blocks are ``ee`` (t0 x s0), ``eo`` (t0 x s1), ``oe`` (t1 x s0) and
``oo`` (t1 x s1); an even matrix has vanishing ``eo``/``oe`` blocks and an
odd one vanishing ``ee``/``oo`` blocks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

from .errors import MixedParity, ShapeMismatch
from .polyring import GaussianRational, Polynomial, default_names, parse_polynomial

EVEN, ODD, MIXED = "even", "odd", "mixed"


@dataclass(frozen=True)
class SuperRank:
    even: int
    odd: int

    def __post_init__(self):
        if self.even < 0 or self.odd < 0 or self.even + self.odd < 1:
            raise ValueError(f"invalid super rank {self.even}|{self.odd}")

    @property
    def total(self) -> int:
        return self.even + self.odd

    def parity_of(self, index: int) -> int:
        return 0 if index < self.even else 1

    def __str__(self):
        return f"{self.even}|{self.odd}"

    def to_json(self):
        return [self.even, self.odd]


def _parity_value(p: str) -> int:
    if p == EVEN:
        return 0
    if p == ODD:
        return 1
    raise MixedParity("operation requires a matrix of pure parity")


def _parity_name(k: int) -> str:
    return EVEN if k % 2 == 0 else ODD


class SuperMatrix:
    __slots__ = ("source", "target", "num_vars", "entries", "parity")

    def __init__(self, source: SuperRank, target: SuperRank, entries: Sequence[Sequence[Polynomial]],
                 num_vars: int, parity: Optional[str] = None):
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != target.total or any(len(r) != source.total for r in rows):
            raise ShapeMismatch(
                f"entries of shape {len(rows)}x{len(rows[0]) if rows else 0} do not fit {source} -> {target}"
            )
        self.source = source
        self.target = target
        self.num_vars = num_vars
        self.entries = rows
        detected = self._detect_parity()
        if parity is None:
            parity = detected
        elif parity == MIXED:
            pass
        elif detected not in (parity, "zero"):
            raise MixedParity(f"declared {parity} but the matrix has {detected} content")
        self.parity = EVEN if parity == "zero" else parity

    def _detect_parity(self) -> str:
        has_even = has_odd = False
        for i, row in enumerate(self.entries):
            pi = self.target.parity_of(i)
            for j, e in enumerate(row):
                if not e.is_zero():
                    if pi == self.source.parity_of(j):
                        has_even = True
                    else:
                        has_odd = True
        if has_even and has_odd:
            return MIXED
        if has_odd:
            return ODD
        if has_even:
            return EVEN
        return "zero"

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, source: SuperRank, target: SuperRank, num_vars: int, parity: str = EVEN) -> "SuperMatrix":
        z = Polynomial.zero(num_vars)
        return cls(source, target, [[z] * source.total for _ in range(target.total)], num_vars, parity)

    @classmethod
    def identity(cls, rank: SuperRank, num_vars: int) -> "SuperMatrix":
        one = Polynomial.constant(num_vars, 1)
        z = Polynomial.zero(num_vars)
        rows = [[one if i == j else z for j in range(rank.total)] for i in range(rank.total)]
        return cls(rank, rank, rows, num_vars, EVEN)

    @classmethod
    def from_blocks(cls, source: SuperRank, target: SuperRank, num_vars: int, ee=None, eo=None, oe=None, oo=None,
                    parity: Optional[str] = None) -> "SuperMatrix":
        z = Polynomial.zero(num_vars)

        def block(b, nr, nc):
            if b is None:
                return [[z] * nc for _ in range(nr)]
            if len(b) != nr or any(len(r) != nc for r in b):
                raise ShapeMismatch(f"block of wrong shape, expected {nr}x{nc}")
            return [list(r) for r in b]

        t0, t1, s0, s1 = target.even, target.odd, source.even, source.odd
        top = [a + b for a, b in zip(block(ee, t0, s0), block(eo, t0, s1))]
        bottom = [a + b for a, b in zip(block(oe, t1, s0), block(oo, t1, s1))]
        return cls(source, target, top + bottom, num_vars, parity)

    # block access -----------------------------------------------------
    def block(self, name: str) -> List[List[Polynomial]]:
        t0, s0 = self.target.even, self.source.even
        rows = {"e": slice(0, t0), "o": slice(t0, None)}[name[0]]
        cols = {"e": slice(0, s0), "o": slice(s0, None)}[name[1]]
        return [list(r[cols]) for r in self.entries[rows]]

    @property
    def degree(self) -> int:
        return _parity_value(self.parity)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def is_square(self) -> bool:
        return self.source == self.target

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    # arithmetic -------------------------------------------------------
    def _same_shape(self, other: "SuperMatrix"):
        if self.source != other.source or self.target != other.target:
            raise ShapeMismatch(f"{self.source}->{self.target} vs {other.source}->{other.target}")

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._same_shape(other)
        rows = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        parity = self.parity if self.parity == other.parity != MIXED else None
        return SuperMatrix(self.source, self.target, rows, self.num_vars, parity)

    def __neg__(self) -> "SuperMatrix":
        return self.map(lambda e: -e)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-other)

    def scale(self, c) -> "SuperMatrix":
        if isinstance(c, Polynomial):
            return self.map(lambda e: e * c)
        c = GaussianRational.coerce(c)
        return self.map(lambda e: e.scale(c))

    def map(self, fn: Callable[[Polynomial], Polynomial]) -> "SuperMatrix":
        rows = [[fn(e) for e in row] for row in self.entries]
        return SuperMatrix(self.source, self.target, rows, self.num_vars,
                           self.parity if self.parity != MIXED else None)

    def derivative(self, index: int) -> "SuperMatrix":
        return self.map(lambda e: e.derivative(index))

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.source, self.target, self.entries))

    def __repr__(self):
        return f"SuperMatrix({self.source}->{self.target}, {self.parity}, {self.to_json()['blocks']})"

    # serialization ----------------------------------------------------
    def to_json(self, names: Optional[Sequence[str]] = None) -> dict:
        names = names or default_names(self.num_vars)
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "blocks": {
                b: [[e.to_string(names) for e in row] for row in self.block(b)]
                for b in ("ee", "eo", "oe", "oo")
            },
        }

    @classmethod
    def from_json(cls, obj: dict, names: Sequence[str]) -> "SuperMatrix":
        source, target = SuperRank(*obj["source"]), SuperRank(*obj["target"])
        d = len(names)
        blocks = {b: [[parse_polynomial(s, names) for s in row] for row in obj["blocks"].get(b, [])] or None
                  for b in ("ee", "eo", "oe", "oo")}
        for b, (nr, nc) in {"ee": (target.even, source.even), "eo": (target.even, source.odd),
                            "oe": (target.odd, source.even), "oo": (target.odd, source.odd)}.items():
            if blocks[b] is None and nr * nc == 0:
                blocks[b] = [[] for _ in range(nr)] if nr else []
        return cls.from_blocks(source, target, d, **blocks)


def compose(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """``a o b`` (apply ``b`` first)."""
    if b.target != a.source:
        raise ShapeMismatch(f"cannot compose {a.source}->{a.target} after {b.source}->{b.target}")
    d = a.num_vars
    zero = Polynomial.zero(d)
    n = a.source.total
    rows = []
    for i in range(a.target.total):
        arow = a.entries[i]
        out = []
        for j in range(b.source.total):
            acc = zero
            for k in range(n):
                x = arow[k]
                if x.is_zero():
                    continue
                y = b.entries[k][j]
                if y.is_zero():
                    continue
                acc = acc + x * y
            out.append(acc)
        rows.append(out)
    if a.parity != MIXED and b.parity != MIXED:
        parity = _parity_name(a.degree + b.degree)
    else:
        parity = None
    return SuperMatrix(b.source, a.target, rows, d, parity)


def graded_commutator(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """``[a, b] = a o b - (-1)^(|a||b|) b o a``."""
    if not (a.is_square() and b.is_square()) or a.source != b.source:
        raise ShapeMismatch("graded commutator needs square matrices of equal rank")
    sign = -1 if a.degree * b.degree % 2 else 1
    ab = compose(a, b)
    ba = compose(b, a)
    return ab - ba if sign == 1 else ab + ba


def supertrace(a: SuperMatrix) -> Polynomial:
    if not a.is_square():
        raise ShapeMismatch("supertrace needs a square matrix")
    total = Polynomial.zero(a.num_vars)
    r0 = a.source.even
    for k in range(a.source.total):
        total = total + a.entries[k][k] if k < r0 else total - a.entries[k][k]
    return total


def epsilon_product(mats: Sequence[SuperMatrix]) -> SuperMatrix:
    """``sum over permutations s of sign(s) * M_s(1) o ... o M_s(d)``."""
    d = len(mats)
    total = None
    for perm in itertools.permutations(range(d)):
        prod = mats[perm[0]]
        for k in perm[1:]:
            prod = compose(prod, mats[k])
        if _perm_sign(perm) < 0:
            prod = -prod
        total = prod if total is None else total + prod
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign
