"""The rank-three algebraic Mukai lattice ``L = Z + Z H + Z rho``.

A Mukai vector ``(r, d, a)`` stands for ``r + d H + a rho`` on an abelian
surface whose Neron-Severi group is generated by ``H`` with ``(H^2) = 2D``.
The pairing is ``<v, w> = 2D d1 d2 - r1 a2 - r2 a1``, which has signature
(2, 1).  The map ``iota`` identifies ``L`` with the lattice of symmetric
matrices ``[[x, y sqrt(D)], [y sqrt(D), z]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .errors import InvalidInput, NotUpperHalfPlane

__all__ = [
    "SurfaceParams",
    "MukaiVector",
    "Sym2Matrix",
    "Ext",
    "as_D",
    "pairing",
    "iota",
    "iota_inv",
    "b_form",
    "is_isotropic",
    "is_positive",
    "exp_vector",
    "twist",
    "euler_chi",
    "central_charge",
    "lemma_d_search",
    "hom_vanishing",
    "hom_total_bound",
]


@dataclass(frozen=True)
class SurfaceParams:
    """Half the self-intersection of the polarization, ``D = (H^2)/2``."""

    D: int

    def __post_init__(self):
        if not isinstance(self.D, int) or self.D < 1:
            raise InvalidInput(f"D must be a positive integer, got {self.D!r}")


Params = Union[SurfaceParams, int]


def as_D(P: Params) -> int:
    if isinstance(P, SurfaceParams):
        return P.D
    return SurfaceParams(P).D


@dataclass(frozen=True)
class MukaiVector:
    r: int
    d: int
    a: int

    def __iter__(self):
        return iter((self.r, self.d, self.a))

    def __add__(self, other: MukaiVector) -> MukaiVector:
        return MukaiVector(self.r + other.r, self.d + other.d, self.a + other.a)

    def __neg__(self) -> MukaiVector:
        return MukaiVector(-self.r, -self.d, -self.a)

    def __mul__(self, k: int) -> MukaiVector:
        return MukaiVector(k * self.r, k * self.d, k * self.a)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Sym2Matrix:
    """The symmetric matrix ``[[x, y sqrt(D)], [y sqrt(D), z]]``."""

    x: int
    y: int
    z: int


def pairing(v: MukaiVector, w: MukaiVector, P: Params) -> int:
    D = as_D(P)
    return 2 * D * v.d * w.d - v.r * w.a - w.r * v.a


def iota(v: MukaiVector, P: Params | None = None) -> Sym2Matrix:
    return Sym2Matrix(v.r, v.d, v.a)


def iota_inv(M: Sym2Matrix) -> MukaiVector:
    return MukaiVector(M.x, M.y, M.z)


def b_form(M1: Sym2Matrix, M2: Sym2Matrix, P: Params) -> int:
    D = as_D(P)
    return 2 * D * M1.y * M2.y - (M1.x * M2.z + M1.z * M2.x)


def is_isotropic(v: MukaiVector, P: Params) -> bool:
    return as_D(P) * v.d * v.d == v.r * v.a


def is_positive(v: MukaiVector) -> bool:
    if v.r:
        return v.r > 0
    if v.d:
        return v.d > 0
    return v.a > 0


def exp_vector(m: int, P: Params) -> MukaiVector:
    """Mukai vector ``(1, m, m^2 D)`` of a line bundle with ``c_1 = mH``."""
    return MukaiVector(1, m, m * m * as_D(P))


def twist(v: MukaiVector, p: int, P: Params) -> MukaiVector:
    """Multiply ``v`` by ``e^{pH}``, i.e. tensor with ``O(pH)``."""
    D = as_D(P)
    return MukaiVector(v.r, v.d + p * v.r, v.a + 2 * D * p * v.d + p * p * D * v.r)


def euler_chi(v: MukaiVector, w: MukaiVector, P: Params) -> int:
    """Euler characteristic ``chi(E, F) = -<v(E), v(F)>``."""
    return -pairing(v, w, P)


def central_charge(z, v: MukaiVector, P: Params):
    """``Z(E) = <e^{zH}, v(E)> = 2Dz d - a - z^2 D r``.

    ``z`` may be a Python complex number or a :class:`GaussianRational`;
    with the latter the result is exact.
    """
    if not z.imag > 0:
        raise NotUpperHalfPlane(f"Im(z) must be positive, got z={z}")
    D = as_D(P)
    return 2 * D * v.d * z - v.a - z * z * (D * v.r)


def lemma_d_search(P: Params, k: int, m: int, bound: int) -> MukaiVector | None:
    """Exhaustively look for a nonzero isotropic vector in the box
    ``max(|r|, |d|, |a|) <= bound`` orthogonal to ``e^{kH}``, ``e^{(k+m)H}``
    and ``e^{(k+2m)H}``.

    No such vector exists for ``m >= 1``, so ``None`` is the expected answer;
    anything else is a counterexample.
    """
    D = as_D(P)
    if m < 1:
        raise InvalidInput(f"m must be positive, got {m}")
    if bound < 1:
        return None
    span = np.arange(-bound, bound + 1, dtype=np.int64)
    r, d, a = np.meshgrid(span, span, span, indexing="ij")
    mask = (D * d * d == r * a) & ((r != 0) | (d != 0) | (a != 0))
    for shift in (k, k + m, k + 2 * m):
        e = exp_vector(shift, D)
        mask &= 2 * D * d * e.d - r * e.a - e.r * a == 0
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    i, j, l = hits[0]
    return MukaiVector(int(span[i]), int(span[j]), int(span[l]))


class Ext(str, Enum):
    HOM = "Hom"
    EXT1 = "Ext1"
    EXT2 = "Ext2"


def hom_vanishing(
    vE: MukaiVector,
    vF: MukaiVector,
    E_locally_free: bool,
    F_locally_free: bool,
    P: Params,
) -> frozenset[Ext]:
    """Which of Hom, Ext^1, Ext^2 between semi-homogeneous sheaves with
    Mukai vectors ``vE``, ``vF`` are forced to vanish.

    Only vanishing is reported; an empty set means nothing is forced.
    Locally free sheaves have positive rank, torsion ones rank zero.
    """
    for v, free, name in ((vE, E_locally_free, "E"), (vF, F_locally_free, "F")):
        if free and v.r <= 0:
            raise InvalidInput(f"{name} is flagged locally free but has rank {v.r}")
        if not free and v.r != 0:
            raise InvalidInput(f"{name} is flagged torsion but has rank {v.r}")
        if not (is_isotropic(v, P) and is_positive(v)):
            raise InvalidInput(f"{name} must be positive isotropic, got {v}")

    pr = pairing(vE, vF, P)
    if pr == 0:
        return frozenset()
    if pr > 0:
        # every listed case with positive pairing kills Hom and Ext^2
        if E_locally_free or not F_locally_free:
            return frozenset({Ext.HOM, Ext.EXT2})
        return frozenset()

    if E_locally_free and F_locally_free:
        # compare (mu(E), H) and (mu(F), H) through dE/rE vs dF/rF
        lhs, rhs = vE.d * vF.r, vF.d * vE.r
        if lhs > rhs:
            return frozenset({Ext.HOM, Ext.EXT1})
        if rhs > lhs:
            return frozenset({Ext.EXT1, Ext.EXT2})
        return frozenset()
    if E_locally_free:
        return frozenset({Ext.EXT1, Ext.EXT2})
    if not F_locally_free:
        raise InvalidInput("two torsion semi-homogeneous sheaves cannot pair negatively")
    return frozenset()


def hom_total_bound(vL: MukaiVector, vE: MukaiVector, P: Params) -> int:
    """``max{4 |chi(L(pH), E)| : p in {0, +-1, +-2}}``, an upper bound for the
    total dimension of ``Hom(L, E[k])`` over all ``k``."""
    if vL.r != 1:
        raise InvalidInput(f"vL must be a line-bundle vector with rank 1, got {vL}")
    return max(4 * abs(euler_chi(twist(vL, p, P), vE, P)) for p in (0, 1, -1, 2, -2))
