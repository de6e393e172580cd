"""Categorical entropy of the transforms ``Phi_A`` attached to FM matrices.

Two independent routes are provided:

* :func:`entropy_closed` evaluates the closed-form case table in the trace
  of ``A`` and the sign of ``b``;
* :func:`entropy_estimate` measures the growth of the Euler-characteristic
  complexity ``delta'_0(n)`` between split generators ``G`` and
  ``Phi^n(G')`` and adds the shift drift obtained from the squaring rule
  for ``theta``.

Both give ``h_t = log rho + slope * t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateSequence, NotApplicable, PoleHit
from .exact_arith import GaussianRational, QuadraticReal, eigenvalues, to_float
from .fm_group import FMMatrix, GhatElement, act_on_vector, power, theta_square, transform_pq
from .mukai_lattice import central_charge, euler_chi, exp_vector

__all__ = [
    "EntropyFunction",
    "GrowthSequence",
    "KTReport",
    "spectral_radius",
    "entropy_closed",
    "slope_step",
    "slope_fixed_point",
    "shift_drift",
    "choose_twist",
    "delta0_sequence",
    "delta0_term_pq",
    "entropy_estimate",
    "mass_growth_estimate",
    "kt_check",
    "G_INDICES",
    "GPRIME_INDICES",
]

# split generators G = sum_{i=-3..-1} N^i, G' = sum_{j=1..3} N^j
G_INDICES = (-3, -2, -1)
GPRIME_INDICES = (1, 2, 3)

ONE = QuadraticReal(Fraction(1))


@dataclass(frozen=True)
class EntropyFunction:
    """``h_t = log(rho) + slope * t`` with ``rho`` kept exact."""

    rho: QuadraticReal
    slope: Fraction

    @property
    def rho_is_one(self) -> bool:
        return self.rho == 1

    @property
    def h0(self) -> float:
        return 0.0 if self.rho_is_one else math.log(to_float(self.rho))

    def __call__(self, t: float) -> float:
        return self.h0 + float(self.slope) * t

    def describe(self) -> str:
        base = "0" if self.rho_is_one else f"log({self.rho})"
        if self.slope == 0:
            return base
        return f"{base} - ({-self.slope})*t" if self.slope < 0 else f"{base} + ({self.slope})*t"


@dataclass
class GrowthSequence:
    n_values: list[int]
    delta_values: list[int]
    ratio_estimates: list[float] = field(default_factory=list)
    m: int = 1


@dataclass(frozen=True)
class KTReport:
    estimate: float
    log_rho: float
    difference: float
    tol: float
    passed: bool


def spectral_radius(A: FMMatrix) -> QuadraticReal:
    """``alpha^2`` for ``tr A > 2``; exactly 1 otherwise."""
    tr = abs(A.trace)
    if tr <= 2:
        return ONE
    alpha, _ = eigenvalues(tr)
    return alpha * alpha


def entropy_closed(A: FMMatrix) -> EntropyFunction:
    tr = A.trace
    if tr < 0:
        A = -A
        tr = -tr
    rho = spectral_radius(A)
    if A.b == 0:
        return EntropyFunction(ONE, Fraction(0))
    if tr >= 2:
        slope = Fraction(0) if A.b > 0 else Fraction(-2)
    elif tr == 1:
        slope = Fraction(-2, 3) if A.b > 0 else Fraction(-4, 3)
    else:
        slope = Fraction(-1)
    return EntropyFunction(rho, slope)


# slopes of semi-homogeneous sheaves under Phi


def slope_step(A: FMMatrix, x):
    """``x -> (c + d x) / (a + b D x)``, the action on slopes ``mu = xH``."""
    den = A.a + A.b * A.D * x
    if den == 0:
        raise PoleHit(f"a + bDx vanishes at x={x}")
    num = A.c + A.d * x
    if isinstance(den, int):
        return Fraction(num, den)
    return num / den


def slope_fixed_point(A: FMMatrix) -> QuadraticReal:
    """Attracting fixed point ``s = (alpha - a) / (bD)`` of :func:`slope_step`."""
    if A.b == 0:
        raise NotApplicable("slope map has no finite attracting fixed point when b = 0")
    alpha, _ = eigenvalues(A.trace)
    return (alpha - A.a) / (A.b * A.D)


def shift_drift(A: FMMatrix) -> Fraction:
    """Average homological shift per application of ``Phi_A`` modulo ``T``.

    Repeated squaring gives ``Phi^(2^k) = Phi_{A_k}[s_k]`` with
    ``s_{k+1} = 2 s_k + sigma(A_k)``, where ``sigma`` is the shift from
    :func:`theta_square`.  Either the normalized ``A_k`` cycle, in which
    case a power of ``Phi`` is a pure shift, or ``tr A_k >= 2``, after which
    ``sigma`` is constant and the drift is ``(s_k + sigma) / 2^k``.
    """
    seen: dict[tuple[int, int, int, int], tuple[int, int]] = {}
    Ak, sk, k = A if A.trace >= 0 else -A, 0, 0
    while True:
        key = Ak.entries
        if key in seen:
            j, sj = seen[key]
            return Fraction(sk - sj, 2**k - 2**j)
        seen[key] = (k, sk)
        sq = theta_square(GhatElement.from_fm(Ak))
        if Ak.trace >= 2:
            # b keeps its sign and tr stays >= 2 under squaring
            return Fraction(sk + sq.shift, 2**k)
        Ak, sk, k = sq.matrix, 2 * sk + sq.shift, k + 1


def choose_twist(A: FMMatrix) -> int:
    """Smallest integer ``m >= 1`` with ``m > |s| + 1``."""
    if A.b == 0 or A.trace < 2:
        raise NotApplicable("twist selection needs b != 0 and tr A >= 2")
    s = slope_fixed_point(A)
    return max(1, math.floor(abs(s) + 1) + 1)


def _default_twist(A: FMMatrix) -> int:
    if A.b != 0 and A.trace >= 2:
        return choose_twist(A)
    return 1


def _log_ratio(num: int, den: int) -> float:
    return math.log(Fraction(num, den))


def delta0_sequence(A: FMMatrix, m: int, n_max: int) -> GrowthSequence:
    """``delta'_0(n) = sum_{i,j} |chi(N^i, Phi^n N^j)|`` for ``n = 0..n_max``
    with ``c_1(N) = mH``, plus ratio estimates ``log(delta(n+1)/delta(n))``.

    A zero term makes the corresponding ratio ``nan``.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    if m < 1:
        raise ValueError("twist m must be positive")
    D = A.D
    sources = [exp_vector(i * m, D) for i in G_INDICES]
    targets = [exp_vector(j * m, D) for j in GPRIME_INDICES]
    deltas = []
    An = power(A, 0)
    for n in range(n_max + 1):
        images = [act_on_vector(An, w) for w in targets]
        deltas.append(sum(abs(euler_chi(v, w, D)) for v in sources for w in images))
        An = An @ A
    ratios = [
        _log_ratio(deltas[n + 1], deltas[n]) if deltas[n] and deltas[n + 1] else math.nan
        for n in range(n_max)
    ]
    return GrowthSequence(list(range(n_max + 1)), deltas, ratios, m)


def delta0_term_pq(A: FMMatrix, m: int, n: int, i: int, j: int) -> int:
    """One term of ``delta'_0(n)`` via the determinant-square formula
    ``D * (q' - i m p')^2`` with ``(p', q') = A^n (1, jm)``."""
    p, q = 1, j * m
    for _ in range(n):
        p, q = transform_pq(A, p, q)
    return A.D * (q - i * m * p) ** 2


def entropy_estimate(A: FMMatrix, t: float, n_max: int, m: int | None = None) -> float:
    """Growth-rate estimate of ``h_t`` from the ``delta'_0`` sequence.

    Periodic cases (``|tr A| <= 1``) carry no growth and return the drift
    term alone.
    """
    drift = shift_drift(A)
    if abs(A.trace) <= 1:
        return float(drift) * t + 0.0  # no negative zero
    seq = delta0_sequence(A, m or _default_twist(A), n_max)
    tail = seq.delta_values[n_max // 2:]
    if any(v == 0 for v in tail):
        raise DegenerateSequence(
            f"delta'_0 vanishes past n={n_max // 2} for {A}; try another twist"
        )
    return seq.ratio_estimates[-1] + float(drift) * t


def _log_abs(z: GaussianRational) -> float:
    n2 = z.abs2()
    return 0.5 * (math.log(n2.numerator) - math.log(n2.denominator))


def _logsumexp(xs: list[float]) -> float:
    top = max(xs)
    return top + math.log(sum(math.exp(x - top) for x in xs))


def mass_growth_estimate(A: FMMatrix, z: complex, m: int, n_max: int) -> float:
    """Ratio estimate of the growth of ``sum_j |Z(Phi^n N^j)|`` for the
    central charge ``Z(E) = <e^{zH}, v(E)>``."""
    if abs(A.trace) <= 2:
        raise NotApplicable("mass growth is only compared for tr A > 2")
    zq = z if isinstance(z, GaussianRational) else GaussianRational.from_complex(z)
    D = A.D
    targets = [exp_vector(j * m, D) for j in GPRIME_INDICES]

    def log_mass(An: FMMatrix) -> float:
        return _logsumexp([_log_abs(central_charge(zq, act_on_vector(An, w), D)) for w in targets])

    An = power(A, n_max - 1)
    return log_mass(An @ A) - log_mass(An)


def kt_check(A: FMMatrix, n_max: int = 40, tol: float = 1e-6) -> KTReport:
    """Compare the estimated ``h_0`` with ``log rho``."""
    est = entropy_estimate(A, 0.0, n_max)
    log_rho = math.log(to_float(spectral_radius(A)))
    diff = abs(est - log_rho)
    return KTReport(est, log_rho, diff, tol, diff < tol)
