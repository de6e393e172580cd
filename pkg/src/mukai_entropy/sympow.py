"""Symmetric-power action of SL(2, Z) and the entropy for ppav's.

For a principally polarized abelian variety of dimension ``d`` the
transforms generated by the Poincare transform and ``O(H)`` act on the
classes generated by ``H`` through ``Sym^d`` of the standard
representation.  Binary forms of degree ``d`` use the basis
``x^d, x^(d-1) y, ..., y^d``; column ``i`` of the matrix is the expansion of
the image of ``x^(d-i) y^i`` under ``(x, y) -> (x, y) M``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotUnimodular, OutOfScopeTrace
from .exact_arith import eigenvalues, to_float

__all__ = ["SymPowerRep", "sym_power", "ppav_entropy", "matmul"]

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class SymPowerRep:
    d: int
    matrix: tuple[tuple[int, ...], ...]

    def as_lists(self) -> IntMatrix:
        return [list(row) for row in self.matrix]


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, u in enumerate(p):
        if u:
            for j, w in enumerate(q):
                out[i + j] += u * w
    return out


def _poly_pow(p: list[int], k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = _poly_mul(out, p)
    return out


def _check_unimodular(M) -> int:
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if det not in (1, -1):
        raise NotUnimodular(f"det M = {det}, expected +-1")
    return det


def sym_power(M, d: int) -> SymPowerRep:
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    _check_unimodular(M)
    (a, b), (c, e) = M
    # coefficients in powers of y (x-degree implied): x -> a x + c y, y -> b x + e y
    x_img = [a, c]
    y_img = [b, e]
    cols = []
    for i in range(d + 1):
        cols.append(_poly_mul(_poly_pow(x_img, d - i), _poly_pow(y_img, i)))
    rows = tuple(tuple(cols[j][i] for j in range(d + 1)) for i in range(d + 1))
    return SymPowerRep(d, rows)


def matmul(X, Y) -> IntMatrix:
    n, k, m = len(X), len(Y), len(Y[0])
    return [[sum(X[i][l] * Y[l][j] for l in range(k)) for j in range(m)] for i in range(n)]


def ppav_entropy(M, d: int, t: float) -> float:
    """``h_t = d log|alpha| - d t`` for ``det M = 1`` and ``tr M < -2``."""
    if _check_unimodular(M) != 1:
        raise NotUnimodular("ppav entropy needs det M = 1")
    tr = M[0][0] + M[1][1]
    if tr >= -2:
        raise OutOfScopeTrace(f"formula only covers tr M < -2, got tr M = {tr}")
    alpha, _ = eigenvalues(-tr)
    return d * math.log(to_float(alpha)) - d * t
