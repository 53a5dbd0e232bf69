"""Drinfel'd polynomials P_V, Q_V and the partner involution.

The sigma/mu sequences are read off the one-dimensional bottom weight space;
the polynomials carry them with the (-1)^i / ([i]_q!)^2 normalization, which
forces constant coefficient 1.  A computed constant term != 1 is an internal
error and is never rescaled away.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import RatFunc, ZPoly, q_factorial
from .linalg import FieldMatrix
from .presentations import (
    AlgebraMismatchError,
    Representation,
    pullback_eta,
    rho_twist,
)
from .modules import (
    WeightData,
    loop_module_of_box,
    weight_decomposition,
)

_ONE = RatFunc.one()


class NotEigenvectorError(ValueError):
    """An operator word failed to act as a scalar on the bottom weight space."""


@dataclass(frozen=True)
class SigmaSequence:
    values: tuple  # sigma_0 .. sigma_d (or mu_0 .. mu_d)

    def __post_init__(self):
        if not self.values or self.values[0] != _ONE:
            raise ValueError("sequence must start with 1")


@dataclass(frozen=True)
class DrinfeldPoly:
    """Polynomial with constant coefficient 1 and honest degree."""

    coeffs: tuple  # RatFunc, constant first

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != _ONE:
            raise RuntimeError("internal error: constant coefficient is not 1")
        if len(self.coeffs) > 1 and self.coeffs[-1].is_zero():
            raise RuntimeError("internal error: trailing zero coefficient")

    @staticmethod
    def from_coeffs(coeffs) -> "DrinfeldPoly":
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        return DrinfeldPoly(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_zpoly(self) -> ZPoly:
        return ZPoly(self.coeffs)

    def __call__(self, z0: RatFunc) -> RatFunc:
        return self.as_zpoly()(z0)

    def __str__(self):
        return str(self.as_zpoly())

    def to_json(self) -> dict:
        return {"coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(obj) -> "DrinfeldPoly":
        return DrinfeldPoly(tuple(RatFunc.from_json(c) for c in obj["coeffs"]))


def _ladder_scalars(rep, wd: WeightData, outer: str, inner: str, count):
    if wd.type_scalar != _ONE:
        raise ValueError("sigma/mu sequences require a type-1 module")
    u0 = wd.spaces[0]
    if u0.dim != 1:
        raise ValueError("bottom weight space must be one-dimensional")
    v = list(u0.basis[0])
    n = count if count is not None else wd.diameter + 1
    outer_m, inner_m = rep.gens[outer], rep.gens[inner]
    values = []
    inner_image = v  # inner^j applied to v, grown incrementally
    for j in range(n):
        w = inner_image
        for _ in range(j):
            w = outer_m.apply(w)
        values.append(_scalar_vs(v, w))
        inner_image = inner_m.apply(inner_image)
    return SigmaSequence(tuple(values))


def _scalar_vs(v, w):
    pivot = next(i for i, x in enumerate(v) if not x.is_zero())
    scalar = w[pivot] / v[pivot]
    if w != [scalar * x for x in v]:
        raise NotEigenvectorError("image is not proportional to the spanning vector")
    return scalar


def sigma_seq(rep: Representation, wd: WeightData, count=None) -> SigmaSequence:
    """Eigenvalues of (e1+)^j (e0+)^j on U_0, j = 0..d."""
    return _ladder_scalars(rep, wd, "e1p", "e0p", count)


def mu_seq(rep: Representation, wd: WeightData, count=None) -> SigmaSequence:
    """Eigenvalues of (e0-)^j (e1-)^j on U_0, j = 0..d."""
    return _ladder_scalars(rep, wd, "e0m", "e1m", count)


def _poly_from_sequence(seq: SigmaSequence) -> DrinfeldPoly:
    coeffs = []
    for i, s in enumerate(seq.values):
        sign = _ONE if i % 2 == 0 else -_ONE
        coeffs.append(sign * s / q_factorial(i) ** 2)
    return DrinfeldPoly.from_coeffs(coeffs)


def drinfeld_P(rep: Representation) -> DrinfeldPoly:
    wd = weight_decomposition(rep)
    return _poly_from_sequence(sigma_seq(rep, wd))


def drinfeld_Q(rep: Representation) -> DrinfeldPoly:
    wd = weight_decomposition(rep)
    return _poly_from_sequence(mu_seq(rep, wd))


def partner(f: DrinfeldPoly) -> DrinfeldPoly:
    """Coefficient reversal a_i -> a_{d-i}/a_d; roots become reciprocals."""
    d = f.degree
    top = f.coeffs[d]
    return DrinfeldPoly.from_coeffs(
        tuple(f.coeffs[d - i] / top for i in range(d + 1))
    )


def drinfeld_of_box(rep: Representation) -> DrinfeldPoly:
    """P_V of the loop-algebra module recovered from a type-1 box module."""
    return drinfeld_P(loop_module_of_box(rep))


def drinfeld_pair_of_box(rep: Representation):
    """(P_V, Q_V) computed through the reconstruction pipeline."""
    loop = loop_module_of_box(rep)
    return drinfeld_P(loop), drinfeld_Q(loop)


def check_partner_theorem(rep: Representation) -> bool:
    """Whether the Drinfel'd polynomials of V and its rho twist are partners."""
    if rep.algebra == "box_q":
        p_here = drinfeld_of_box(rep)
        p_twist = drinfeld_of_box(rho_twist(rep))
    elif rep.algebra == "tet_q":
        from .presentations import equitable_to_chevalley

        p_here = drinfeld_P(equitable_to_chevalley(pullback_eta(rep)))
        p_twist = drinfeld_P(equitable_to_chevalley(pullback_eta(rho_twist(rep))))
    else:
        raise AlgebraMismatchError("partner theorem applies to box_q or tet_q")
    return partner(p_here) == p_twist


def trace_invariants(rep: Representation):
    """(tr(X01*X23), tr(X12*X30)) of an equitable module."""
    if rep.algebra != "uq_loop_equitable":
        raise AlgebraMismatchError("trace invariants need an equitable module")
    g = rep.gens
    return (g["X01"] * g["X23"]).trace(), (g["X12"] * g["X30"]).trace()
