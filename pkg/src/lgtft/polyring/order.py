from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    """Lex or graded-reverse-lex, after an optional permutation of variables.

    ``permutation[k]`` is the index of the variable ranked k-th (largest
    first). ``key`` maps an exponent vector to a tuple whose natural ordering
    is the monomial order.
    """

    kind: str = "grevlex"
    permutation: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def _perm(self, exps):
        if self.permutation is None:
            return exps
        return tuple(exps[k] for k in self.permutation)

    def key(self, exps: Monomial):
        e = self._perm(exps)
        if self.kind == "lex":
            return e
        return (sum(e),) + tuple(-x for x in reversed(e))

    def name(self) -> str:
        if self.permutation is None:
            return self.kind
        return f"{self.kind}{list(self.permutation)}"


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def order_from_name(name: str) -> MonomialOrder:
    return {"lex": LEX, "grevlex": GREVLEX}[name]


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))
