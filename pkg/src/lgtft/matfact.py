"""Matrix factorizations of W, the defect differential and Hom cohomology.

Hom cohomology is computed in one of two ways:

* ``graded``: when W is weighted-homogeneous and both factorizations admit
  compatible gradings, the Hom complex splits into finite-dimensional
  weighted pieces and ker/im is computed piece by piece up to a truncation
  bound, with a stabilization check beyond it.  This is exact.
* ``quotient``: otherwise, the differential is reduced modulo the Jacobian
  ideal and the cohomology of the resulting finite complex is returned.
  This is *not* the Hom cohomology in general; its total dimension is
  ``2**d`` times the true total dimension (multiplication by each partial
  derivative of W is null-homotopic on the Hom complex).  Results carry
  ``strategy == "quotient"``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import MixedParity, NotAFactorization, NotClosed, ShapeMismatch, TruncationNotStable
from .linalg import nullspace, rref, solve
from .polyring import (
    GaussianRational,
    MilnorAlgebra,
    Polynomial,
    default_names,
    is_quasi_homogeneous,
)
from .polyring.gaussian import ZERO
from .superalg import EVEN, ODD, SuperMatrix, SuperRank, compose

# ---------------------------------------------------------------- objects


@dataclass(frozen=True, eq=False)
class MatrixFactorization:
    """A pair (E, D) with D odd and D^2 = W * id.

    In block form ``D = [[0, v], [u, 0]]`` with ``u: E0 -> E1`` and
    ``v: E1 -> E0``.
    """

    potential: Polynomial
    rank: SuperRank
    D: SuperMatrix
    name: Optional[str] = None

    @property
    def num_vars(self) -> int:
        return self.potential.num_vars

    @property
    def u(self):
        return self.D.block("oe")

    @property
    def v(self):
        return self.D.block("eo")

    def identity(self) -> "Morphism":
        return Morphism(self, self, SuperMatrix.identity(self.rank, self.num_vars))

    def __eq__(self, other):
        if not isinstance(other, MatrixFactorization):
            return NotImplemented
        return self.potential == other.potential and self.rank == other.rank and self.D == other.D

    def __hash__(self):
        return hash((self.potential, self.rank, self.D))

    def __repr__(self):
        label = self.name or f"rank {self.rank}"
        return f"MatrixFactorization({label})"

    def to_json(self, names=None) -> dict:
        names = names or default_names(self.num_vars)
        return {
            "name": self.name,
            "rank": self.rank.to_json(),
            "u_blocks": [[e.to_string(names) for e in row] for row in self.u],
            "v_blocks": [[e.to_string(names) for e in row] for row in self.v],
        }


def validate(rank: SuperRank, D: SuperMatrix, W: Polynomial, name: Optional[str] = None,
             names=None) -> MatrixFactorization:
    if D.source != rank or D.target != rank:
        raise ShapeMismatch(f"D must be an endomorphism of {rank}")
    if D.parity != ODD and not D.is_zero():
        raise NotAFactorization(f"D must be odd, got {D.parity}")
    sq = compose(D, D)
    for i, row in enumerate(sq.entries):
        for j, e in enumerate(row):
            expected = W if i == j else Polynomial.zero(W.num_vars)
            if e != expected:
                block = ("e" if i < rank.even else "o") + ("e" if j < rank.even else "o")
                raise NotAFactorization(
                    f"D^2 - W*I is nonzero in block {block} at entry ({i},{j}): {(e - expected).to_string(names)}",
                    block=block,
                )
    D = SuperMatrix(rank, rank, D.entries, D.num_vars, ODD)
    return MatrixFactorization(W, rank, D, name)


def from_blocks(W: Polynomial, u, v, name: Optional[str] = None, names=None) -> MatrixFactorization:
    """Factorization with ``u: E0 -> E1`` (r1 x r0) and ``v: E1 -> E0`` (r0 x r1)."""
    r1, r0 = len(u), len(v)
    rank = SuperRank(r0, r1)
    D = SuperMatrix.from_blocks(rank, rank, W.num_vars, eo=v, oe=u)
    return validate(rank, D, W, name, names)


def koszul_factorization(u: Sequence[Polynomial], v: Sequence[Polynomial], name: Optional[str] = None) -> MatrixFactorization:
    """Graded tensor product of the rank 1|1 factorizations (u_k, v_k) of W = sum u_k v_k.

    Realized on the exterior algebra of n generators: D = sum_k (u_k theta_k ^ + v_k iota_k).
    Basis: even subsets then odd subsets, each by (size, lexicographic).
    """
    n = len(u)
    if n < 1 or len(v) != n:
        raise ValueError("koszul_factorization needs equal-length nonempty u and v")
    d = u[0].num_vars
    W = sum((a * b for a, b in zip(u, v)), Polynomial.zero(d))
    subsets = [s for k in range(n + 1) for s in itertools.combinations(range(n), k)]
    even = [s for s in subsets if len(s) % 2 == 0]
    odd = [s for s in subsets if len(s) % 2 == 1]
    order = even + odd
    index = {s: k for k, s in enumerate(order)}
    size = len(order)
    zero = Polynomial.zero(d)
    rows = [[zero] * size for _ in range(size)]
    for s in order:
        j = index[s]
        for k in range(n):
            sign = -1 if sum(1 for x in s if x < k) % 2 else 1
            if k in s:
                t = tuple(x for x in s if x != k)
                rows[index[t]][j] = rows[index[t]][j] + v[k].scale(sign)
            else:
                t = tuple(sorted(s + (k,)))
                rows[index[t]][j] = rows[index[t]][j] + u[k].scale(sign)
    rank = SuperRank(len(even), len(odd))
    D = SuperMatrix(rank, rank, rows, d, ODD)
    return validate(rank, D, W, name)


def shift(a: MatrixFactorization) -> MatrixFactorization:
    """Parity reversal: E0 and E1 swap and D -> -D, so (u, v) -> (-v, -u)."""
    u = [[-e for e in row] for row in a.v]
    v = [[-e for e in row] for row in a.u]
    name = f"{a.name}[1]" if a.name else None
    return from_blocks(a.potential, u, v, name)


@dataclass(frozen=True, eq=False)
class Morphism:
    source: MatrixFactorization
    target: MatrixFactorization
    matrix: SuperMatrix

    def __post_init__(self):
        if self.matrix.source != self.source.rank or self.matrix.target != self.target.rank:
            raise ShapeMismatch("morphism matrix does not match the object ranks")
        if self.source.potential != self.target.potential:
            raise ValueError("morphisms only between factorizations of the same potential")

    @property
    def degree(self) -> int:
        return self.matrix.degree

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self):
        return Morphism(self.source, self.target, -self.matrix)

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, self.matrix.scale(c))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def to_json(self, names=None) -> dict:
        out = self.matrix.to_json(names)
        out["parity"] = self.matrix.parity
        return out


def then(f: Morphism, g: Morphism) -> Morphism:
    """``f o g``: apply g, then f."""
    if g.target != f.source:
        raise ShapeMismatch("morphisms are not composable")
    return Morphism(g.source, f.target, compose(f.matrix, g.matrix))


def defect_differential(f: Morphism) -> Morphism:
    """``D_b o f - (-1)^|f| f o D_a``."""
    if f.matrix.parity not in (EVEN, ODD):
        raise MixedParity("the defect differential needs a morphism of pure parity")
    left = compose(f.target.D, f.matrix)
    right = compose(f.matrix, f.source.D)
    out = left - right if f.degree == 0 else left + right
    parity = ODD if f.degree == 0 else EVEN
    return Morphism(f.source, f.target, SuperMatrix(out.source, out.target, out.entries, out.num_vars, parity))


def zero_morphism(a: MatrixFactorization, b: MatrixFactorization, parity: str = EVEN) -> Morphism:
    return Morphism(a, b, SuperMatrix.zero(a.rank, b.rank, a.num_vars, parity))


def elementary_morphism(a, b, i: int, j: int, poly: Polynomial) -> Morphism:
    z = Polynomial.zero(a.num_vars)
    rows = [[poly if (r, c) == (i, j) else z for c in range(a.rank.total)] for r in range(b.rank.total)]
    return Morphism(a, b, SuperMatrix(a.rank, b.rank, rows, a.num_vars))


def position_parity(a: MatrixFactorization, b: MatrixFactorization, i: int, j: int) -> int:
    return (b.rank.parity_of(i) + a.rank.parity_of(j)) % 2


# ---------------------------------------------------------------- gradings


def object_grading(a: MatrixFactorization, weights: Sequence[int], c: int) -> Optional[List[int]]:
    """Integer weights on the basis of E with every nonzero D_ij homogeneous and
    wt(D_ij) + s_i - s_j = c.  None if no such grading exists."""
    n = a.rank.total
    edges: Dict[int, List[Tuple[int, int]]] = {k: [] for k in range(n)}
    for i, row in enumerate(a.D.entries):
        for j, e in enumerate(row):
            if e.is_zero():
                continue
            if not e.is_homogeneous(weights):
                return None
            w = int(e.weighted_degree(weights))
            # s_i - s_j = c - w
            edges[j].append((i, c - w))
            edges[i].append((j, w - c))
    s: List[Optional[int]] = [None] * n
    for root in range(n):
        if s[root] is not None:
            continue
        s[root] = 0
        stack = [root]
        while stack:
            j = stack.pop()
            for i, delta in edges[j]:
                want = s[j] + delta
                if s[i] is None:
                    s[i] = want
                    stack.append(i)
                elif s[i] != want:
                    return None
    return [int(x) for x in s]


@lru_cache(maxsize=None)
def monomials_of_weight(weights: Tuple[int, ...], w: int) -> Tuple[Tuple[int, ...], ...]:
    if w < 0:
        return ()
    if not weights:
        return ((),) if w == 0 else ()
    head, rest = weights[0], weights[1:]
    out = []
    for k in range(w // head + 1):
        for tail in monomials_of_weight(rest, w - k * head):
            out.append((k,) + tail)
    return tuple(sorted(out))


# ---------------------------------------------------------------- cohomology engines


class _Engine:
    """Shared ker/im bookkeeping for finite pieces of the Hom complex."""

    def __init__(self, a: MatrixFactorization, b: MatrixFactorization):
        self.a, self.b = a, b
        self.d = a.num_vars

    def _apply(self, i: int, j: int, exps, kappa: int) -> Dict[Tuple[int, int, Tuple[int, ...]], GaussianRational]:
        """Coordinates of d(E_ij * z^exps) as a sparse dict keyed by (row, col, monomial)."""
        a, b = self.a, self.b
        out: Dict = {}
        sign = -1 if kappa == 0 else 1
        for k in range(b.rank.total):
            e = b.D.entries[k][i]
            if e.is_zero():
                continue
            for m, c in e.items():
                key = (k, j, tuple(x + y for x, y in zip(m, exps)))
                out[key] = out.get(key, ZERO) + c
        for l in range(a.rank.total):
            e = a.D.entries[j][l]
            if e.is_zero():
                continue
            for m, c in e.items():
                key = (i, l, tuple(x + y for x, y in zip(m, exps)))
                out[key] = out.get(key, ZERO) + c * sign
        return out

    def _vector_to_morphism(self, basis, vec, kappa) -> Morphism:
        d = self.d
        rows = [[{} for _ in range(self.a.rank.total)] for _ in range(self.b.rank.total)]
        for (i, j, m), c in zip(basis, vec):
            if c:
                rows[i][j][m] = rows[i][j].get(m, ZERO) + c
        mat = [[Polynomial(d, cell) for cell in row] for row in rows]
        parity = EVEN if kappa == 0 else ODD
        return Morphism(self.a, self.b, SuperMatrix(self.a.rank, self.b.rank, mat, d, parity))


@dataclass
class _Piece:
    basis: List[Tuple[int, int, Tuple[int, ...]]]
    index: Dict[Tuple[int, int, Tuple[int, ...]], int]
    reps: List[List[GaussianRational]] = field(default_factory=list)
    image: List[List[GaussianRational]] = field(default_factory=list)
    kernel_dim: int = 0


def _quotient_reps(kernel, image_rows, ncols):
    """Deterministic complement of span(image) inside span(kernel)."""
    im_red, im_piv = rref(image_rows, ncols) if image_rows else ([], [])
    reduced = []
    for v in kernel:
        v = list(v)
        for row, pc in zip(im_red, im_piv):
            f = v[pc]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
        reduced.append(v)
    reduced = [v for v in reduced if any(v)]
    if not reduced:
        return [], im_red
    reps, _ = rref(reduced, ncols)
    return reps, im_red


class _GradedEngine(_Engine):
    strategy = "graded"

    def __init__(self, a, b, weights: Sequence[int], w_degree: int, socle_weight: int):
        super().__init__(a, b)
        self.q = tuple(2 * w for w in weights)
        self.c = w_degree
        sa = object_grading(a, self.q, self.c)
        sb = object_grading(b, self.q, self.c)
        if sa is None or sb is None:
            raise ValueError("factorizations admit no compatible grading")
        self.sa, self.sb = sa, sb
        self.pieces: Dict[Tuple[int, int], _Piece] = {}
        offsets = [sb[i] - sa[j] for i in range(b.rank.total) for j in range(a.rank.total)]
        max_d = 0
        for obj in (a, b):
            for row in obj.D.entries:
                for e in row:
                    if not e.is_zero():
                        max_d = max(max_d, int(e.weighted_degree(self.q)))
        self.bound = 2 * (2 * socle_weight) + max_d
        self.t_min = min(offsets)
        self.t_max = self.bound + max(offsets)

    def piece_basis(self, t: int, kappa: int):
        basis = []
        for i in range(self.b.rank.total):
            for j in range(self.a.rank.total):
                if position_parity(self.a, self.b, i, j) != kappa:
                    continue
                w = t - self.sb[i] + self.sa[j]
                for m in monomials_of_weight(self.q, w):
                    basis.append((i, j, m))
        return basis

    def differential_matrix(self, t: int, kappa: int):
        """Columns: basis of piece (t, kappa); rows: basis of piece (t + c, 1 - kappa)."""
        src = self.piece_basis(t, kappa)
        dst = self.piece_basis(t + self.c, 1 - kappa)
        index = {key: k for k, key in enumerate(dst)}
        cols = []
        for (i, j, m) in src:
            col = [ZERO] * len(dst)
            for key, v in self._apply(i, j, m, kappa).items():
                if v:
                    col[index[key]] = col[index[key]] + v
            cols.append(col)
        return src, dst, cols

    def piece(self, t: int, kappa: int) -> _Piece:
        key = (t, kappa)
        if key in self.pieces:
            return self.pieces[key]
        src, dst, cols = self.differential_matrix(t, kappa)
        n = len(src)
        if n == 0:
            p = _Piece([], {})
            self.pieces[key] = p
            return p
        rows = [list(r) for r in zip(*cols)] if dst else []
        kernel = nullspace(rows, n) if rows else [[GaussianRational(1) if i == k else ZERO for i in range(n)] for k in range(n)]
        _, _, prev_cols = self.differential_matrix(t - self.c, 1 - kappa)
        image = [c for c in prev_cols if any(c)]
        reps, im_red = _quotient_reps(kernel, image, n)
        p = _Piece(src, {k: idx for idx, k in enumerate(src)}, reps, im_red, len(kernel))
        self.pieces[key] = p
        return p

    def compute(self):
        classes = {0: [], 1: []}
        for t in range(self.t_min, self.t_max + 1):
            for kappa in (0, 1):
                p = self.piece(t, kappa)
                for vec in p.reps:
                    classes[kappa].append((t, vec))
        for t in range(self.t_max + 1, self.t_max + self.c + 1):
            for kappa in (0, 1):
                if self.piece(t, kappa).reps:
                    raise TruncationNotStable(
                        f"Hom cohomology has classes in weighted degree {t} beyond the truncation bound"
                    )
        return classes

    def project(self, m: Morphism) -> Dict[int, List[Tuple[int, List[GaussianRational]]]]:
        """Coordinates of the homogeneous pieces of a closed morphism, per (t)."""
        kappa = m.degree
        by_t: Dict[int, Dict] = {}
        for i, row in enumerate(m.matrix.entries):
            for j, e in enumerate(row):
                for mono, c in e.items():
                    t = sum(x * y for x, y in zip(self.q, mono)) + self.sb[i] - self.sa[j]
                    by_t.setdefault(t, {})[(i, j, mono)] = c
        out = {}
        for t, entries in sorted(by_t.items()):
            p = self.piece(t, kappa)
            vec = [ZERO] * len(p.basis)
            for key, c in entries.items():
                vec[p.index[key]] = c
            out[t] = _solve_mod_image(p, vec)
        return out


def _solve_mod_image(p: _Piece, vec):
    cols = p.reps + p.image
    if not cols:
        if any(vec):
            raise NotClosed("element is not a cocycle")
        return []
    rows = [list(r) for r in zip(*cols)]
    sol = solve(rows, vec, len(cols))
    if sol is None:
        raise NotClosed("element is not a cocycle")
    return sol[: len(p.reps)]


class _QuotientEngine(_Engine):
    strategy = "quotient"

    def __init__(self, a, b, milnor: MilnorAlgebra):
        super().__init__(a, b)
        self.milnor = milnor
        self.pieces: Dict[int, _Piece] = {}

    def piece_basis(self, kappa: int):
        basis = []
        for i in range(self.b.rank.total):
            for j in range(self.a.rank.total):
                if position_parity(self.a, self.b, i, j) == kappa:
                    for m in self.milnor.basis:
                        basis.append((i, j, m))
        return basis

    def _reduced_vector(self, entries: Dict, basis_index) -> List[GaussianRational]:
        vec = [ZERO] * len(basis_index)
        grouped: Dict[Tuple[int, int], Dict] = {}
        for (i, j, m), c in entries.items():
            cell = grouped.setdefault((i, j), {})
            cell[m] = cell.get(m, ZERO) + c
        for (i, j), terms in grouped.items():
            for m, c in self.milnor.reduce(Polynomial(self.d, terms)).items():
                vec[basis_index[(i, j, m)]] = vec[basis_index[(i, j, m)]] + c
        return vec

    def differential_cols(self, kappa: int):
        src = self.piece_basis(kappa)
        dst = self.piece_basis(1 - kappa)
        index = {k: n for n, k in enumerate(dst)}
        cols = [self._reduced_vector(self._apply(i, j, m, kappa), index) for (i, j, m) in src]
        return src, dst, cols

    def piece(self, kappa: int) -> _Piece:
        if kappa in self.pieces:
            return self.pieces[kappa]
        src, dst, cols = self.differential_cols(kappa)
        n = len(src)
        rows = [list(r) for r in zip(*cols)] if cols and dst else []
        kernel = nullspace(rows, n) if rows else [[GaussianRational(1) if i == k else ZERO for i in range(n)] for k in range(n)]
        _, _, prev_cols = self.differential_cols(1 - kappa)
        image = [c for c in prev_cols if any(c)]
        reps, im_red = _quotient_reps(kernel, image, n) if n else ([], [])
        p = _Piece(src, {k: idx for idx, k in enumerate(src)}, reps, im_red, len(kernel))
        self.pieces[kappa] = p
        return p

    def compute(self):
        return {kappa: [(0, v) for v in self.piece(kappa).reps] for kappa in (0, 1)}

    def project(self, m: Morphism):
        kappa = m.degree
        p = self.piece(kappa)
        entries = {}
        for i, row in enumerate(m.matrix.entries):
            for j, e in enumerate(row):
                for mono, c in e.items():
                    entries[(i, j, mono)] = c
        vec = self._reduced_vector(entries, p.index)
        return {0: _solve_mod_image(p, vec)}


@dataclass(eq=False)
class HomCohomology:
    """Finite-dimensional cohomology of Hom(a, b) with chosen representatives.

    Coordinates are indexed by ``even_basis + odd_basis``.
    """

    source: MatrixFactorization
    target: MatrixFactorization
    even_basis: List[Morphism]
    odd_basis: List[Morphism]
    strategy: str
    _engine: _Engine = field(repr=False)
    _slots: Dict[int, Dict[int, List[int]]] = field(repr=False)
    degrees: List[int] = field(default_factory=list)

    @property
    def even_dim(self) -> int:
        return len(self.even_basis)

    @property
    def odd_dim(self) -> int:
        return len(self.odd_basis)

    @property
    def dims(self) -> Tuple[int, int]:
        return self.even_dim, self.odd_dim

    @property
    def basis(self) -> List[Morphism]:
        return self.even_basis + self.odd_basis

    def parity_of_index(self, k: int) -> int:
        return 0 if k < self.even_dim else 1

    def coordinates(self, m: Morphism) -> List[GaussianRational]:
        return cohomology_coordinates(self, m)

    def element(self, coords: Sequence) -> Morphism:
        """The combination sum_k coords[k] * basis[k] (pure parity required)."""
        out = None
        for c, bvec in zip(coords, self.basis):
            c = GaussianRational.coerce(c)
            if c:
                term = bvec.scale(c)
                out = term if out is None else out + term
        if out is None:
            return zero_morphism(self.source, self.target)
        return out

    def to_json(self, names=None) -> dict:
        return {
            "source": self.source.name,
            "target": self.target.name,
            "strategy": self.strategy,
            "even_dim": self.even_dim,
            "odd_dim": self.odd_dim,
            "basis": [dict(m.to_json(names), weighted_degree=deg) for m, deg in zip(self.basis, self.degrees)],
        }


def _weights_for(milnor: MilnorAlgebra):
    qh = is_quasi_homogeneous(milnor.potential, milnor.order, milnor)
    iw = qh.integer_weights() if qh.is_quasi_homogeneous else None
    return iw


def hom_cohomology(a: MatrixFactorization, b: MatrixFactorization, milnor: MilnorAlgebra,
                   strategy: str = "auto") -> HomCohomology:
    if a.potential != b.potential:
        raise ValueError("Hom between factorizations of different potentials")
    if milnor.potential != a.potential:
        raise ValueError("Milnor algebra was built from a different potential")
    engine: Optional[_Engine] = None
    if strategy in ("auto", "graded"):
        iw = _weights_for(milnor)
        if iw is not None:
            weights, deg = iw
            socle = int(milnor.weighted_degree_of_basis(weights)) if milnor.dimension else 0
            try:
                engine = _GradedEngine(a, b, weights, deg, socle)
            except ValueError:
                engine = None
        if engine is None and strategy == "graded":
            raise ValueError("graded strategy unavailable: W or the factorizations are not graded")
    if engine is None:
        engine = _QuotientEngine(a, b, milnor)
    classes = engine.compute()
    even, odd, degrees = [], [], []
    slots: Dict[int, Dict[int, List[int]]] = {0: {}, 1: {}}
    for kappa, target in ((0, even), (1, odd)):
        for n, (t, vec) in enumerate(classes[kappa]):
            basis = engine.piece(t, kappa).basis if isinstance(engine, _GradedEngine) else engine.piece(kappa).basis
            target.append(engine._vector_to_morphism(basis, vec, kappa))
            slots[kappa].setdefault(t, []).append(n)
            degrees.append(t)
    return HomCohomology(a, b, even, odd, engine.strategy, engine, slots, degrees)


def cohomology_coordinates(h: HomCohomology, m: Morphism) -> List[GaussianRational]:
    if m.source != h.source or m.target != h.target:
        raise ShapeMismatch("morphism does not belong to this Hom space")
    out = [ZERO] * (h.even_dim + h.odd_dim)
    if m.is_zero():
        return out
    if m.matrix.parity not in (EVEN, ODD):
        raise MixedParity("coordinates need a morphism of pure parity")
    kappa = m.degree
    offset = 0 if kappa == 0 else h.even_dim
    if h.strategy == "graded":
        dm = defect_differential(m)
        if not dm.is_zero():
            raise NotClosed("morphism is not closed under the defect differential")
    for t, coords in h._engine.project(m).items():
        slots = h._slots[kappa].get(t, [])
        if len(slots) != len(coords):
            if any(coords):
                raise NotClosed("class outside the computed range")
            continue
        for n, c in zip(slots, coords):
            out[offset + n] = out[offset + n] + c
    return out
