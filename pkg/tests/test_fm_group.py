import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mukai_entropy.errors import NotFactorizable, NotUnimodular
from mukai_entropy.fm_group import (
    FMMatrix,
    GhatElement,
    InvalidGhat,
    ShiftedFM,
    act_on_vector,
    charpoly3,
    construct_pair,
    eigen_projectors,
    factor_isotropic_pair,
    ghat_act,
    identity_fm,
    make_fm,
    power,
    power_closed,
    rep3_matrix,
    theta_square,
    transform_pq,
)
from mukai_entropy.mukai_lattice import MukaiVector, Sym2Matrix, b_form, iota, is_isotropic, pairing

from oracles import act_float, fm_float, naive_power, sym2_float
from strategies import fm_matrices, ghat_elements, vectors

V = MukaiVector
A0 = FMMatrix(2, 1, 1, 1, 1)


class TestMakeFM:
    def test_accepts(self):
        A = make_fm(2, 1, 1, 1, 1)
        assert A.trace == 3 and not A.negated

    def test_normalizes_sign(self):
        A = make_fm(-2, -1, -1, -1, 1)
        assert A == A0 and A.negated

    def test_rejects_non_unimodular(self):
        with pytest.raises(NotUnimodular):
            make_fm(1, 1, 1, 1, 1)

    @given(fm_matrices())
    def test_trace_nonnegative(self, A):
        B = make_fm(*A.entries, A.D)
        assert B.trace >= 0
        assert B.a * B.d - B.b * B.c * B.D == 1

    @given(fm_matrices(), fm_matrices())
    def test_product_matches_float(self, A, B):
        if A.D != B.D:
            return
        C = A @ B
        np.testing.assert_allclose(fm_float(*C.entries, C.D), fm_float(*A.entries, A.D) @ fm_float(*B.entries, B.D), atol=1e-6)


class TestAction:
    def test_example(self):
        assert act_on_vector(A0, V(1, 0, 0)) == V(4, 2, 1)
        assert ghat_act(A0, Sym2Matrix(1, 0, 0)) == Sym2Matrix(4, 2, 1)

    def test_identity(self):
        E = identity_fm(5)
        assert act_on_vector(E, V(3, -1, 7)) == V(3, -1, 7)
        assert ghat_act(E, Sym2Matrix(3, -1, 7)) == Sym2Matrix(3, -1, 7)

    @given(fm_matrices(), vectors)
    def test_routes_agree(self, A, v):
        assert ghat_act(A, iota(v)) == iota(act_on_vector(A, v))

    @given(fm_matrices(max_len=3, k=2), st.builds(V, st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9)))
    def test_float_oracle(self, A, v):
        out = act_on_vector(A, v)
        ref = act_float(fm_float(*A.entries, A.D), sym2_float(v.r, v.d, v.a, A.D))
        np.testing.assert_allclose(sym2_float(out.r, out.d, out.a, A.D), ref, rtol=1e-9, atol=1e-6)

    @given(fm_matrices(), vectors, vectors)
    def test_isometry(self, A, v, w):
        D = A.D
        assert b_form(ghat_act(A, iota(v)), ghat_act(A, iota(w)), D) == pairing(v, w, D)

    @given(ghat_elements(), vectors)
    def test_ghat_preserves_isotropy(self, g, v):
        D = g.D
        M = ghat_act(g, iota(v))
        assert b_form(M, M, D) == g.det**2 * pairing(v, v, D)

    @given(fm_matrices(), st.integers(-50, 50), st.integers(-50, 50))
    def test_pq_rank_one(self, A, p, q):
        # A (u u^t) A^t = (A u)(A u)^t
        p2, q2 = transform_pq(A, p, q)
        D = A.D
        assert act_on_vector(A, V(p * p, p * q, q * q * D)) == V(p2 * p2, p2 * q2, q2 * q2 * D)

    def test_transform_pq_example(self):
        assert transform_pq(A0, 1, 0) == (2, 1)
        assert transform_pq(identity_fm(3), 4, -2) == (4, -2)


class TestPower:
    def test_examples(self):
        assert power(A0, 2) == FMMatrix(5, 3, 3, 2, 1)
        assert power(A0, 0) == identity_fm(1)
        assert power(FMMatrix(0, 1, -1, 0, 1), 4) == identity_fm(1)

    @given(fm_matrices(), st.integers(0, 30))
    def test_naive_oracle(self, A, n):
        assert power(A, n).entries == naive_power(*A.entries, A.D, n)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            power(A0, -1)


class TestPowerClosed:
    def test_parabolic(self):
        assert power_closed(FMMatrix(2, 1, -1, 0, 1), 5) == FMMatrix(6, 5, -5, -4, 1)

    def test_hyperbolic(self):
        assert power_closed(A0, 3) == power(A0, 3) == FMMatrix(13, 8, 8, 5, 1)

    def test_elliptic_periods(self):
        assert power_closed(FMMatrix(1, 1, -1, 0, 1), 6) == identity_fm(1)
        assert power_closed(FMMatrix(0, 1, -1, 0, 1), 4) == identity_fm(1)

    def test_projectors(self):
        alpha, beta, P, Q = eigen_projectors(A0)
        # P + Q = E, PQ = 0 in the (a, b sqrt(D), c sqrt(D), d) slots with D = 1
        assert (P[0] + Q[0], P[1] + Q[1], P[2] + Q[2], P[3] + Q[3]) == (1, 0, 0, 1)
        assert P[0] * Q[0] + P[1] * Q[2] == 0
        assert alpha * beta == 1

    @given(fm_matrices(), st.integers(0, 25))
    def test_agrees_with_power(self, A, n):
        assert power_closed(A, n) == power(A, n)

    @pytest.mark.parametrize("A", [FMMatrix(-2, 1, -1, 0, 1), FMMatrix(-1, 1, -1, 0, 1), FMMatrix(-3, 1, -1, 0, 1)])
    def test_negative_trace(self, A):
        for n in range(13):
            assert power_closed(A, n) == power(A, n)


class TestRep3:
    def test_identity(self):
        assert rep3_matrix(identity_fm(2)) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_examples(self):
        # (x^2 - 7x + 1)(x - 1)
        assert charpoly3(rep3_matrix(A0)) == (1, -8, 8, -1)
        # tau = 0: (x + 1)^2 (x - 1)
        assert charpoly3(rep3_matrix(FMMatrix(0, 1, -1, 0, 1))) == (1, 1, -1, -1)

    @given(fm_matrices())
    def test_charpoly_law(self, A):
        k = A.trace**2 - 1
        assert charpoly3(rep3_matrix(A)) == (1, -k, k, -1)

    @given(fm_matrices(max_len=3, k=2))
    def test_charpoly_vs_numpy(self, A):
        M = np.array(rep3_matrix(A), dtype=float)
        np.testing.assert_allclose(np.poly(M), charpoly3(rep3_matrix(A)), rtol=1e-7, atol=1e-6)


class TestThetaSquare:
    def test_example(self):
        g = GhatElement(1, 1, 1, 1, 2, 1)
        out = theta_square(g)
        assert out == ShiftedFM(FMMatrix(3, 2, 2, 3, 2), 0)

    def test_diagonal_type(self):
        g = GhatElement(1, 0, 0, 1, 1, 3)
        assert theta_square(g).shift == 0

    def test_traceless_shift(self):
        # [[sqrt 2, 1], [-3, -sqrt 2]], det = -2 + 3 = 1, p1 + q2 = 0
        g = GhatElement(1, -3, 1, -1, 2, 1)
        assert g.det == 1
        sq = theta_square(g)
        assert sq.shift == -2
        assert sq.matrix.entries == (1, 0, 0, 1)

    def test_negative_product(self):
        g = GhatElement(1, 1, -1, 0, 1, 1)
        assert (g.p1 + g.q2) * g.p2 < 0
        assert theta_square(g).shift == -2

    @given(ghat_elements())
    def test_square_lands_in_fm(self, g):
        sq = theta_square(g)
        assert sq.matrix.D == g.D
        assert sq.shift in (0, -2)

    def test_invalid_ghat(self):
        with pytest.raises(InvalidGhat):
            GhatElement(1, 1, 1, 1, 1, 1)
        with pytest.raises(NotUnimodular):
            GhatElement(2, 0, 0, 1, 1, 1)

    def test_odd_shift_rejected(self):
        with pytest.raises(ValueError):
            ShiftedFM(A0, -1)


class TestFactor:
    def test_example(self):
        g = factor_isotropic_pair(V(2, 1, 1), V(1, 1, 2), 2)
        assert (g.p1, g.q1, g.p2, g.q2, g.r1, g.r2) == (1, 1, 1, 1, 2, 1)

    @pytest.mark.parametrize("D", [1, 2, 6, 12])
    def test_identity_pair(self, D):
        g = factor_isotropic_pair(V(1, 0, 0), V(0, 0, 1), D)
        assert (g.p1, g.q1, g.p2, g.q2, g.r1, g.r2) == (1, 0, 0, 1, 1, D)

    @pytest.mark.parametrize("D", [2, 3, 7])
    def test_bad_pairing(self, D):
        assert pairing(V(1, 0, 0), V(1, 1, D), D) == -D
        with pytest.raises(NotFactorizable):
            factor_isotropic_pair(V(1, 0, 0), V(1, 1, D), D)

    def test_not_isotropic(self):
        with pytest.raises(NotFactorizable):
            factor_isotropic_pair(V(1, 0, 1), V(0, 0, 1), 1)

    @given(ghat_elements())
    def test_pair_is_isotropic_with_pairing(self, g):
        v1, v2 = construct_pair(g)
        D = g.D
        assert is_isotropic(v1, D) and is_isotropic(v2, D)
        assert pairing(v1, v2, D) == -(g.det**2)

    @settings(max_examples=300)
    @given(ghat_elements())
    def test_roundtrip(self, g):
        if g.det != 1:
            return
        v1, v2 = construct_pair(g)
        h = factor_isotropic_pair(v1, v2, g.D)
        assert construct_pair(h) == (v1, v2)
        Sg, Sh = g.surd_entries(), h.surd_entries()
        neg = [[type(s)(-s.coeff, s.radicand) for s in row] for row in Sh]
        assert Sg == Sh or Sg == neg
