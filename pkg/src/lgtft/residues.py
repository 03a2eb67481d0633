"""Grothendieck residues and the bulk/boundary structure maps.

The global residue ``Res[g dz / (d_1 W, ..., d_d W)]`` (summed over all
critical points) is computed by the transformation law.  For each variable
the minimal polynomial ``P_i(z_i)`` of ``z_i`` on the Milnor algebra lies in
the Jacobian ideal, so ``P_i(z_i) = sum_j a_ij d_j W``.  Then

    Res_dW[g] = Res_P[g * det(a)]

and the right-hand side is the coefficient of ``prod z_i^(N_i - 1)`` in the
remainder of ``g * det(a)`` modulo the univariate ``P_i`` (N_i = deg P_i).
When the origin is the only critical point, ``P_i = z_i^N_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Optional, Tuple

from .errors import NonConstantPhi
from .matfact import MatrixFactorization, Morphism
from .polyring import (
    GREVLEX,
    GaussianRational,
    MilnorAlgebra,
    MonomialOrder,
    Polynomial,
    hessian,
    milnor_algebra,
    poly_det,
)
from .polyring.gaussian import I, ZERO
from .polyring.milnor import minimal_polynomial
from .superalg import ODD, SuperMatrix, epsilon_product, supertrace, compose


@dataclass(frozen=True)
class VolumeForm:
    """Omega = phi * dz_1 ^ ... ^ dz_d."""

    phi: Polynomial

    @classmethod
    def standard(cls, num_vars: int) -> "VolumeForm":
        return cls(Polynomial.constant(num_vars, 1))

    def constant(self) -> GaussianRational:
        if not self.phi.is_constant() or self.phi.is_zero():
            raise NonConstantPhi("only constant, nonzero phi is supported for boundary quantities")
        return self.phi.constant_term()


@dataclass(frozen=True)
class Normalization:
    A: GaussianRational = GaussianRational(1)
    c_e: Optional[GaussianRational] = None
    c_f: Optional[GaussianRational] = None

    def __post_init__(self):
        for name in ("A", "c_e", "c_f"):
            val = getattr(self, name)
            if val is not None and not isinstance(val, GaussianRational):
                object.__setattr__(self, name, GaussianRational.coerce(val))

    def bulk_boundary_scalar(self, d: int) -> GaussianRational:
        if self.c_e is not None:
            return self.c_e
        return I ** d * (-1) ** (d * (d - 1) // 2)

    def boundary_bulk_scalar(self, d: int) -> GaussianRational:
        if self.c_f is not None:
            return self.c_f
        return I ** d / factorial(d)


def boundary_trace_prefactor(d: int) -> GaussianRational:
    return GaussianRational((-1) ** (d * (d - 1) // 2)) / factorial(d)


@dataclass(frozen=True)
class ResidueEngine:
    potential: Polynomial
    milnor: MilnorAlgebra
    univariates: Tuple[Polynomial, ...]
    exponents: Tuple[int, ...]
    certificate: Tuple[Tuple[Polynomial, ...], ...]
    det_a: Polynomial

    @property
    def num_vars(self) -> int:
        return self.potential.num_vars

    def verify_certificate(self) -> bool:
        partials = [self.potential.derivative(j) for j in range(self.num_vars)]
        for p, row in zip(self.univariates, self.certificate):
            total = sum((a * f for a, f in zip(row, partials)), Polynomial.zero(self.num_vars))
            if total != p:
                return False
        return True


def residue_engine(W: Polynomial, order: MonomialOrder = GREVLEX, milnor: Optional[MilnorAlgebra] = None) -> ResidueEngine:
    if milnor is None:
        milnor = milnor_algebra(W, order)
    d = W.num_vars
    univariates, exps, rows = [], [], []
    for k in range(d):
        coeffs = minimal_polynomial(milnor, Polynomial.variable(d, k))
        p = Polynomial(d, {tuple(n if j == k else 0 for j in range(d)): c for n, c in enumerate(coeffs)})
        cof = milnor.groebner.express(p)
        assert cof is not None, "minimal polynomial must lie in the Jacobian ideal"
        univariates.append(p)
        exps.append(len(coeffs) - 1)
        rows.append(tuple(cof))
    det_a = poly_det([list(r) for r in rows])
    return ResidueEngine(W, milnor, tuple(univariates), tuple(exps), tuple(rows), det_a)


def _reduce_univariate(h: Polynomial, engine: ResidueEngine) -> Polynomial:
    """Remainder of h modulo the monic univariate P_k(z_k), one variable at a time."""
    d = h.num_vars
    for k, (p, n) in enumerate(zip(engine.univariates, engine.exponents)):
        # z_k^n = -(lower terms of P_k)
        tail = [(e[k], c) for e, c in p.items() if e[k] < n]
        terms = dict(h.terms)
        changed = True
        while changed:
            changed = False
            for e in sorted(terms, key=lambda e: -e[k]):
                if e[k] < n or e not in terms:
                    continue
                c = terms.pop(e)
                base = e[k] - n
                for j, tc in tail:
                    e2 = e[:k] + (base + j,) + e[k + 1:]
                    v = terms.get(e2, ZERO) - c * tc
                    if v:
                        terms[e2] = v
                    else:
                        terms.pop(e2, None)
                changed = True
        h = Polynomial(d, terms)
    return h


def global_residue(g: Polynomial, engine: ResidueEngine) -> GaussianRational:
    """Res[g dz / (d_1 W, ..., d_d W)] summed over all critical points."""
    if g.is_zero():
        return ZERO
    h = _reduce_univariate(g * engine.det_a, engine)
    return h.coefficient(tuple(n - 1 for n in engine.exponents))


def hessian_determinant(W: Polynomial) -> Polynomial:
    return poly_det(hessian(W))


# ---------------------------------------------------------------- structure maps


def bulk_trace(f: Polynomial, engine: ResidueEngine, vol: Optional[VolumeForm] = None,
               norm: Optional[Normalization] = None) -> GaussianRational:
    vol = vol or VolumeForm.standard(engine.num_vars)
    norm = norm or Normalization()
    return norm.A * global_residue(f * vol.phi, engine)


def det_omega_dD(a: MatrixFactorization, vol: Optional[VolumeForm] = None) -> SuperMatrix:
    """(1/phi) * sum_sigma sign(sigma) d_{s1}D ... d_{sd}D."""
    vol = vol or VolumeForm.standard(a.num_vars)
    phi = vol.constant()
    partials = [a.D.derivative(k) for k in range(a.num_vars)]
    partials = [SuperMatrix(p.source, p.target, p.entries, p.num_vars, ODD) for p in partials]
    return epsilon_product(partials).scale(phi.inverse())


def _kapustin_li_integrand(a: MatrixFactorization, s: Morphism, vol: Optional[VolumeForm],
                           enforce_degree: bool = True) -> Polynomial:
    if s.source != a or s.target != a:
        raise ValueError("boundary quantities need an endomorphism of the object")
    d = a.num_vars
    if vol is not None:
        vol.constant()
    if s.is_zero() or (enforce_degree and s.degree != d % 2):
        return Polynomial.zero(d)
    return supertrace(compose(det_omega_dD(a, vol), s.matrix))


def boundary_bulk(a: MatrixFactorization, s: Morphism, milnor: MilnorAlgebra, vol: Optional[VolumeForm] = None,
                  norm: Optional[Normalization] = None) -> Polynomial:
    """f_a(s) = c_f * str(det_Omega(dD) s), reduced to Milnor normal form."""
    norm = norm or Normalization()
    integrand = _kapustin_li_integrand(a, s, vol)
    return milnor.reduce(integrand).scale(norm.boundary_bulk_scalar(a.num_vars))


def bulk_boundary(a: MatrixFactorization, f: Polynomial, milnor: MilnorAlgebra,
                  norm: Optional[Normalization] = None) -> Morphism:
    """e_a(f) = c_e * NF(f) * id_a."""
    norm = norm or Normalization()
    scalar = milnor.reduce(f).scale(norm.bulk_boundary_scalar(a.num_vars))
    return Morphism(a, a, SuperMatrix.identity(a.rank, a.num_vars).scale(scalar))


def boundary_trace(a: MatrixFactorization, s: Morphism, engine: ResidueEngine, vol: Optional[VolumeForm] = None,
                   norm: Optional[Normalization] = None) -> GaussianRational:
    """Kapustin-Li trace: (-1)^(d(d-1)/2)/d! * A * Res[str(det_Omega(dD) s) * phi]."""
    vol = vol or VolumeForm.standard(a.num_vars)
    norm = norm or Normalization()
    integrand = _kapustin_li_integrand(a, s, vol)
    if integrand.is_zero():
        return ZERO
    return boundary_trace_prefactor(a.num_vars) * norm.A * global_residue(integrand * vol.phi, engine)
