"""Independent reference computations for the test-suite.

Nothing here imports the package: these are the brute-force or floating
point routes that the exact implementations are checked against.
"""

import math

import numpy as np
import sympy


def fm_float(a, b, c, d, D):
    r = math.sqrt(D)
    return np.array([[a, b * r], [c * r, d]], dtype=float)


def naive_power(a, b, c, d, D, n):
    """Repeated multiplication of the integer data, no squaring."""
    P = (1, 0, 0, 1)
    for _ in range(n):
        e, f, g, h = P
        P = (e * a + f * c * D, e * b + f * d, g * a + h * c, g * b * D + h * d)
    return P


def sym2_float(x, y, z, D):
    r = math.sqrt(D)
    return np.array([[x, y * r], [y * r, z]], dtype=float)


def act_float(A, M):
    return A @ M @ A.T


def binary_form_matrix(M, d):
    """Sym^d matrix via sympy polynomial expansion; column i is the image of
    x^(d-i) y^i under (x, y) -> (x, y) M."""
    x, y = sympy.symbols("x y")
    (a, b), (c, e) = M
    xi, yi = a * x + c * y, b * x + e * y
    cols = []
    for i in range(d + 1):
        poly = sympy.Poly(sympy.expand(xi ** (d - i) * yi**i), x, y)
        cols.append([int(poly.coeff_monomial(x ** (d - k) * y**k)) for k in range(d + 1)])
    return [[cols[j][k] for j in range(d + 1)] for k in range(d + 1)]


def riemann_roch_chi(m1, m2, D):
    """chi(L1, L2) = (c_1(L2 - L1)^2)/2 on an abelian surface with (H^2) = 2D."""
    return (m2 - m1) ** 2 * 2 * D // 2
