"""Matrices of cohomological Fourier-Mukai transforms and their action.

An :class:`FMMatrix` is ``[[a, b sqrt(D)], [c sqrt(D), d]]`` with integers
``a, b, c, d`` and ``ad - bcD = 1``.  It acts on ``Sym2Matrix`` by
``M -> A M A^t`` and hence on Mukai vectors.  :class:`GhatElement` is the
more general shape ``[[p1 sqrt(r1), p2 sqrt(r2)], [q1 sqrt(r2), q2 sqrt(r1)]]``
with ``r1 r2 = D``, recovered from a pair of isotropic vectors by
:func:`factor_isotropic_pair`.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Union

from .errors import InternalNonIntegral, NotClosed, NotFactorizable, NotUnimodular
from .exact_arith import QuadraticReal, Surd, eigenvalues, squarefree_decompose
from .mukai_lattice import (
    MukaiVector,
    Params,
    Sym2Matrix,
    as_D,
    is_isotropic,
    is_positive,
    pairing,
)

__all__ = [
    "FMMatrix",
    "GhatElement",
    "ShiftedFM",
    "make_fm",
    "identity_fm",
    "ghat_act",
    "act_on_vector",
    "transform_pq",
    "power",
    "eigen_projectors",
    "power_closed",
    "rep3_matrix",
    "charpoly3",
    "theta_square",
    "construct_pair",
    "factor_isotropic_pair",
    "random_fm",
]


@dataclass(frozen=True)
class FMMatrix:
    """``[[a, b sqrt(D)], [c sqrt(D), d]]`` with ``ad - bcD = 1``.

    The constructor only checks the determinant.  Use :func:`make_fm` to get
    the trace-normalized representative; ``negated`` records whether the
    input was flipped to reach it.
    """

    a: int
    b: int
    c: int
    d: int
    D: int
    negated: bool = field(default=False, compare=False)

    def __post_init__(self):
        as_D(self.D)
        det = self.a * self.d - self.b * self.c * self.D
        if det != 1:
            raise NotUnimodular(
                f"ad-bcD = {det} != 1 for ({self.a},{self.b},{self.c},{self.d}), D={self.D}"
            )

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: FMMatrix) -> FMMatrix:
        if self.D != other.D:
            raise ValueError("matrices over different D")
        a, b, c, d, D = self.a, self.b, self.c, self.d, self.D
        e, f, g, h = other.entries
        return FMMatrix(a * e + b * g * D, a * f + b * h, c * e + d * g, c * f * D + d * h, D)

    def __neg__(self) -> FMMatrix:
        return FMMatrix(-self.a, -self.b, -self.c, -self.d, self.D, not self.negated)

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}*sqrt({self.D})], [{self.c}*sqrt({self.D}), {self.d}]]"


def make_fm(a: int, b: int, c: int, d: int, P: Params) -> FMMatrix:
    A = FMMatrix(a, b, c, d, as_D(P))
    if A.trace < 0:
        return -A
    return A


def identity_fm(P: Params) -> FMMatrix:
    return FMMatrix(1, 0, 0, 1, as_D(P))


@dataclass(frozen=True)
class GhatElement:
    """``[[p1 sqrt(r1), p2 sqrt(r2)], [q1 sqrt(r2), q2 sqrt(r1)]]``.

    Stored up to a global sign: the first nonzero of ``(p1, q2, p2)`` is made
    positive.
    """

    p1: int
    q1: int
    p2: int
    q2: int
    r1: int
    r2: int

    def __post_init__(self):
        if self.r1 < 1 or self.r2 < 1:
            raise InvalidGhat(f"r1, r2 must be positive, got {self.r1}, {self.r2}")
        det = self.det
        if det not in (1, -1):
            raise InvalidGhat(f"p1 q2 r1 - p2 q1 r2 = {det}, expected +-1")
        lead = next(v for v in (self.p1, self.q2, self.p2) if v != 0)
        if lead < 0:
            for name in ("p1", "q1", "p2", "q2"):
                object.__setattr__(self, name, -getattr(self, name))

    @property
    def D(self) -> int:
        return self.r1 * self.r2

    @property
    def det(self) -> int:
        return self.p1 * self.q2 * self.r1 - self.p2 * self.q1 * self.r2

    @classmethod
    def from_fm(cls, A: FMMatrix) -> GhatElement:
        return cls(A.a, A.c, A.b, A.d, 1, A.D)

    def surd_entries(self) -> list[list[Surd]]:
        return [
            [Surd(self.p1, self.r1), Surd(self.p2, self.r2)],
            [Surd(self.q1, self.r2), Surd(self.q2, self.r1)],
        ]


class InvalidGhat(NotUnimodular):
    pass


@dataclass(frozen=True)
class ShiftedFM:
    """A transform modulo ``T`` together with an accumulated even shift."""

    matrix: FMMatrix
    shift: int = 0

    def __post_init__(self):
        if self.shift % 2:
            raise ValueError(f"shift must be even, got {self.shift}")


# matrices whose entries are sums of surds, as {radicand: coeff}

_SurdSum = dict


def _surd_matrix(g: Union[GhatElement, FMMatrix]) -> list[list[_SurdSum]]:
    if isinstance(g, FMMatrix):
        rows = [[Surd(g.a), Surd(g.b, g.D)], [Surd(g.c, g.D), Surd(g.d)]]
    else:
        rows = g.surd_entries()
    return [[{s.radicand: s.coeff} if s.coeff else {} for s in row] for row in rows]


def _surd_matmul(X, Y):
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            acc = defaultdict(int)
            for k in range(2):
                for r1, c1 in X[i][k].items():
                    for r2, c2 in Y[k][j].items():
                        s = Surd(c1 * c2, r1 * r2)
                        acc[s.radicand] += s.coeff
            row.append({r: c for r, c in acc.items() if c})
        out.append(row)
    return out


def _transpose(X):
    return [[X[0][0], X[1][0]], [X[0][1], X[1][1]]]


def _integer_part(entry: _SurdSum) -> int | None:
    if not entry:
        return 0
    if set(entry) == {1}:
        return entry[1]
    return None


def _sqrtD_part(entry: _SurdSum, D: int) -> int | None:
    """Return ``y`` if ``entry == y sqrt(D)``, else None."""
    if not entry:
        return 0
    s, f = squarefree_decompose(D)
    if set(entry) != {f} or entry[f] % s:
        return None
    return entry[f] // s


def ghat_act(g: Union[GhatElement, FMMatrix], M: Sym2Matrix) -> Sym2Matrix:
    """``g . M = g M g^t``, computed with surd arithmetic."""
    D = g.D
    G = _surd_matrix(g)
    Mm = _surd_matrix_sym(M, D)
    out = _surd_matmul(_surd_matmul(G, Mm), _transpose(G))
    x = _integer_part(out[0][0])
    z = _integer_part(out[1][1])
    y = _sqrtD_part(out[0][1], D)
    if x is None or y is None or z is None or out[0][1] != out[1][0]:
        raise InternalNonIntegral(f"g M g^t left Sym2(Z, {D}): {out}")
    return Sym2Matrix(x, y, z)


def _surd_matrix_sym(M: Sym2Matrix, D: int):
    off = Surd(M.y, D)
    off_e = {off.radicand: off.coeff} if off.coeff else {}
    return [
        [{1: M.x} if M.x else {}, off_e],
        [dict(off_e), {1: M.z} if M.z else {}],
    ]


def act_on_vector(A: FMMatrix, v: MukaiVector) -> MukaiVector:
    """Action on ``(r, d, a)``; the integer expansion of ``A iota(v) A^t``."""
    a, b, c, d, D = A.a, A.b, A.c, A.d, A.D
    r, y, z = v.r, v.d, v.a
    return MukaiVector(
        a * a * r + 2 * a * b * D * y + b * b * D * z,
        a * c * r + (a * d + b * c * D) * y + b * d * z,
        c * c * D * r + 2 * c * d * D * y + d * d * z,
    )


def transform_pq(A: FMMatrix, p: int, q: int) -> tuple[int, int]:
    """Apply ``A`` to the column ``(p, q sqrt(D))``."""
    return A.a * p + A.b * A.D * q, A.c * p + A.d * q


def power(A: FMMatrix, n: int) -> FMMatrix:
    if n < 0:
        raise ValueError("negative powers are not supported")
    result = identity_fm(A.D)
    base = A
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def eigen_projectors(A: FMMatrix):
    """Return ``(alpha, beta, P, Q)`` for ``tr A > 2``.

    ``P = (A - beta E)/(alpha - beta)`` and ``Q = (A - alpha E)/(beta - alpha)``
    are given as 4-tuples of :class:`QuadraticReal` coefficients in the slots
    ``(a, b, c, d)`` of ``[[a, b sqrt(D)], [c sqrt(D), d]]``.
    """
    alpha, beta = eigenvalues(A.trace)
    if alpha == beta:
        raise ValueError("projectors need distinct eigenvalues")
    gap = alpha - beta
    Pm = ((A.a - beta) / gap, A.b / gap, A.c / gap, (A.d - beta) / gap)
    Qm = ((alpha - A.a) / gap, -A.b / gap, -A.c / gap, (alpha - A.d) / gap)
    return alpha, beta, Pm, Qm


def _as_int(q: QuadraticReal) -> int:
    if not q.is_rational or q.x.denominator != 1:
        raise InternalNonIntegral(f"expected an integer, got {q}")
    return int(q.x)


def power_closed(A: FMMatrix, n: int) -> FMMatrix:
    """``A^n`` from the closed forms, dispatching on the trace.

    * ``tr > 2``: ``alpha^n P + beta^n Q`` in exact quadratic arithmetic
    * ``tr = 2``: ``E + n (A - E)``
    * ``tr`` in ``{0, 1}`` (or negated): ``A`` has order 4 resp. 6
    """
    if n < 0:
        raise ValueError("negative powers are not supported")
    tr = abs(A.trace)
    sign = 1 if A.trace >= 0 else -1
    if tr > 2:
        alpha, beta, Pm, Qm = eigen_projectors(A)
        an, bn = alpha**n, beta**n
        a, b, c, d = (_as_int(an * p + bn * q) for p, q in zip(Pm, Qm))
        return FMMatrix(a, b, c, d, A.D)
    if tr == 2:
        # A = sign*(E + N) with N nilpotent
        N = (sign * A.a - 1, sign * A.b, sign * A.c, sign * A.d - 1)
        s = sign**n
        return FMMatrix(s * (1 + n * N[0]), s * n * N[1], s * n * N[2], s * (1 + n * N[3]), A.D)
    period = 4 if tr == 0 else 6
    result = identity_fm(A.D)
    for _ in range(n % period):
        result = result @ A
    return result


def rep3_matrix(A: FMMatrix) -> list[list[int]]:
    """Matrix of :func:`act_on_vector` in the coordinates ``(r, d, a)``."""
    cols = [act_on_vector(A, e) for e in (MukaiVector(1, 0, 0), MukaiVector(0, 1, 0), MukaiVector(0, 0, 1))]
    return [[cols[j].r for j in range(3)], [cols[j].d for j in range(3)], [cols[j].a for j in range(3)]]


def charpoly3(M: list[list[int]]) -> tuple[int, int, int, int]:
    """Coefficients ``(1, c2, c1, c0)`` of ``det(xE - M)``, highest first."""
    tr = M[0][0] + M[1][1] + M[2][2]
    minors = (
        M[0][0] * M[1][1] - M[0][1] * M[1][0]
        + M[0][0] * M[2][2] - M[0][2] * M[2][0]
        + M[1][1] * M[2][2] - M[1][2] * M[2][1]
    )
    det = (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )
    return (1, -tr, minors, -det)


def theta_square(g: GhatElement) -> ShiftedFM:
    """Square ``g`` and read off the induced shift.

    The square always has the shape ``[[a, b sqrt(D)], [c sqrt(D), d]]``.
    Its transform agrees with the square of ``g``'s transform modulo ``T``
    up to shift 0 when ``(p1 + q2) p2 > 0`` or ``p2 = 0``, and shift -2
    otherwise.
    """
    D = g.D
    G = _surd_matrix(g)
    S = _surd_matmul(G, G)
    a = _integer_part(S[0][0])
    d = _integer_part(S[1][1])
    b = _sqrtD_part(S[0][1], D)
    c = _sqrtD_part(S[1][0], D)
    if None in (a, b, c, d):
        raise NotClosed(f"square of {g} is not of the form [[a, b sqrt(D)], [c sqrt(D), d]]: {S}")
    trace_part = g.p1 + g.q2
    shift = 0 if (trace_part * g.p2 > 0 or g.p2 == 0) else -2
    return ShiftedFM(make_fm(a, b, c, d, D), shift)


def construct_pair(g: GhatElement) -> tuple[MukaiVector, MukaiVector]:
    """Images ``(v1, v2)`` of ``O`` and of the point class under ``g``."""
    v1 = MukaiVector(g.p1 * g.p1 * g.r1, g.p1 * g.q1, g.q1 * g.q1 * g.r2)
    v2 = MukaiVector(g.p2 * g.p2 * g.r2, g.p2 * g.q2, g.q2 * g.q2 * g.r1)
    return v1, v2


def _exact_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None


def _divisors(n: int) -> list[int]:
    small = [k for k in range(1, math.isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def factor_isotropic_pair(v1: MukaiVector, v2: MukaiVector, P: Params) -> GhatElement:
    """Recover ``(p1, q1, p2, q2, r1, r2)`` from ``v1 = v(Phi(O))`` and
    ``v2 = v(Phi(point))``.

    Searches the splittings ``r1 r2 = D`` in increasing ``r1``, takes square
    roots of the rank and ``a`` components and fixes signs from the ``H``
    components and ``p1 q2 r1 - p2 q1 r2 = 1``.
    """
    D = as_D(P)
    for v in (v1, v2):
        if not (is_isotropic(v, D) and is_positive(v)):
            raise NotFactorizable(f"{v} is not a positive isotropic vector for D={D}")
    pr = pairing(v1, v2, D)
    if pr != -1:
        raise NotFactorizable(f"<v1, v2> = {pr}, expected -1")

    for r1 in _divisors(D):
        r2 = D // r1
        if v1.r % r1 or v1.a % r2 or v2.r % r2 or v2.a % r1:
            continue
        mags = (
            _exact_sqrt(v1.r // r1),
            _exact_sqrt(v1.a // r2),
            _exact_sqrt(v2.r // r2),
            _exact_sqrt(v2.a // r1),
        )
        if None in mags:
            continue
        P1, Q1, P2, Q2 = mags
        for s1 in (1, -1):
            for s2 in (1, -1):
                for s3 in (1, -1):
                    p1, q1, p2, q2 = P1, s1 * Q1, s2 * P2, s3 * Q2
                    if p1 * q1 != v1.d or p2 * q2 != v2.d:
                        continue
                    if p1 * q2 * r1 - p2 * q1 * r2 != 1:
                        continue
                    return GhatElement(p1, q1, p2, q2, r1, r2)
    raise NotFactorizable(f"no splitting of D={D} factors {v1}, {v2}")


def random_fm(rng: random.Random, D: int, *, min_trace: int = 3, max_entry: int = 6) -> FMMatrix:
    """Draw a random trace-normalized ``FMMatrix`` with ``b != 0`` and
    ``tr >= min_trace``, by solving ``bcD = ad - 1`` for ``c``.

    Some ``D`` admit no solution inside the initial box (``D = 10`` with
    entries up to 6), so the box widens every 500 rejected draws.
    """
    misses = 0
    while True:
        a = rng.randint(-max_entry, max_entry)
        d = rng.randint(-max_entry, max_entry)
        b = rng.choice([k for k in range(-max_entry, max_entry + 1) if k])
        num = a * d - 1
        if num % (b * D) == 0:
            A = make_fm(a, b, num // (b * D), d, D)
            if A.trace >= min_trace:
                return A
        misses += 1
        if misses % 500 == 0:
            max_entry += 1
