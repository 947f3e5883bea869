"""Tests for matrices over U(gl_n)."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from smartgl.errors import InvalidParameterError, RankMismatchError, SingularMatrixError
from smartgl.matrices import (
    UEAMatrix,
    embed,
    f_matrix,
    f_power,
    gelfand,
    identity,
    inverse_transpose,
    is_singular,
    linear_element,
    mat_trace,
    numeric_matrix,
    numeric_unit,
    phi,
    phi_generator,
    psi,
    psi_generator,
    render_numeric,
    trace_closed_form,
)
from smartgl.pbw import UEAElement, monomials_up_to, mul


def e(n, i, j):
    return UEAElement.generator(n, i, j)


class TestNumeric:
    """Rational numeric matrices on sympy."""

    def test_inverse_transpose(self):
        """Q^{-T} of [[1,2],[3,5]] is [[-5,3],[2,-1]]."""
        q = numeric_matrix([[1, 2], [3, 5]])
        assert inverse_transpose(q) == numeric_matrix([[-5, 3], [2, -1]])

    def test_singular_inverse(self):
        """Singular matrices have no inverse transpose."""
        q = numeric_matrix([[1, 2], [2, 4]])
        assert is_singular(q)
        with pytest.raises(SingularMatrixError):
            inverse_transpose(q)

    def test_rational_strings(self):
        """Entries may be p/q strings."""
        q = numeric_matrix([["1/2", 0], [0, "-3/4"]])
        assert q[0, 0] == sympy.Rational(1, 2)
        assert render_numeric(q) == [["1/2", "0"], ["0", "-3/4"]]

    def test_non_square_rejected(self):
        """Only square matrices are accepted."""
        with pytest.raises(RankMismatchError):
            numeric_matrix([[1, 2]])

    def test_unit_bounds(self):
        """Matrix units use 1-based indices within range."""
        assert numeric_unit(2, 1, 2)[0, 1] == 1
        with pytest.raises(InvalidParameterError):
            numeric_unit(2, 0, 1)

    def test_linear_element(self):
        """Σ m_ij e_ij."""
        m = numeric_matrix([[1, 2], [0, "1/3"]])
        assert linear_element(m) == e(2, 1, 1) + 2 * e(2, 1, 2) + e(2, 2, 2).scale(Fraction(1, 3))


class TestUEAMatrix:
    """Mat_n(U) arithmetic."""

    def test_identity_is_neutral(self):
        """I·M = M·I = M."""
        m = f_matrix(2)
        assert identity(2) @ m == m
        assert m @ identity(2) == m

    def test_embed_and_trace(self):
        """Numeric matrices embed with constant entries."""
        assert mat_trace(identity(3)) == 3
        assert embed(numeric_matrix([[1, 2], [3, 4]])).entry(2, 1) == 3

    def test_addition_and_transpose(self):
        """M + M^T is symmetric."""
        m = f_matrix(2)
        s = m + m.transpose()
        assert s == s.transpose()
        assert (m - m) == embed(numeric_matrix([[0, 0], [0, 0]]))

    def test_left_scale_keeps_order(self):
        """a·M puts a on the left of every entry."""
        m = f_matrix(2).left_scale(e(2, 2, 1))
        assert m.entry(1, 2) == mul(e(2, 2, 1), e(2, 2, 1))
        assert m.entry(2, 1) == mul(e(2, 2, 1), e(2, 1, 2))

    def test_shape_checked(self):
        """Rows must be n×n over rank n."""
        with pytest.raises(RankMismatchError):
            UEAMatrix(2, [[e(2, 1, 1)]])


class TestFPowers:
    """Powers of F and traces against them."""

    def test_f_entries(self):
        """F has e_ji at position (i, j)."""
        f = f_matrix(3)
        for i in range(1, 4):
            for j in range(1, 4):
                assert f.entry(i, j) == e(3, j, i)

    def test_closed_form_trace(self):
        """tr(E_ij F^{m+1}) = Σ e_{i r1} ⋯ e_{rm j}."""
        n = 2
        for m in range(3):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    assert f_power(n, m + 1).entry(j, i) == trace_closed_form(n, i, j, m)

    def test_f_power_order(self):
        """m must be positive."""
        with pytest.raises(InvalidParameterError):
            f_power(2, 0)

    def test_gelfand_first(self):
        """tr(F) = Σ e_ii."""
        assert gelfand(2, 1) == e(2, 1, 1) + e(2, 2, 2)

    def test_gelfand_second(self):
        """tr(F²) = Σ e_ij e_ji."""
        expected = sum(
            (mul(e(2, i, j), e(2, j, i)) for i in (1, 2) for j in (1, 2)), UEAElement.zero(2)
        )
        assert gelfand(2, 2) == expected

    def test_gelfand_order(self):
        """k must be positive."""
        with pytest.raises(InvalidParameterError):
            gelfand(2, 0)


class TestHomomorphisms:
    """ψ and φ respect products."""

    def test_generator_images(self):
        """ψ(e12) = e12·I − E21 and φ(e12) = e12·I + E12."""
        p = psi_generator(2, 1, 2)
        assert p.entry(1, 1) == e(2, 1, 2)
        assert p.entry(2, 1) == -1
        assert p.entry(1, 2) == 0
        f = phi_generator(2, 1, 2)
        assert f.entry(1, 2) == 1
        assert psi(e(2, 1, 2)) == p
        assert phi(e(2, 1, 2)) == f

    @pytest.mark.parametrize("image", [psi, phi])
    def test_multiplicative(self, image):
        """image(ab) = image(a)·image(b) on a straightening product."""
        a, b = e(2, 2, 1), e(2, 1, 2) + e(2, 1, 1)
        assert image(mul(a, b)) == image(a) @ image(b)

    @pytest.mark.parametrize("image", [psi, phi])
    @settings(max_examples=30, deadline=None)
    @given(data=st.data())
    def test_multiplicative_on_random_monomials(self, image, data):
        """image(ab) = image(a)·image(b) for monomials of degree ≤ 3, n ≤ 3."""
        n = data.draw(st.integers(1, 3))
        degree_bounded = st.sampled_from(monomials_up_to(n, 3))
        a = UEAElement.from_monomial(data.draw(degree_bounded))
        b = UEAElement.from_monomial(data.draw(degree_bounded))
        assert image(mul(a, b)) == image(a) @ image(b)

    @pytest.mark.parametrize("image", [psi, phi])
    def test_unit(self, image):
        """1 maps to the identity."""
        assert image(UEAElement.one(2)) == identity(2)
