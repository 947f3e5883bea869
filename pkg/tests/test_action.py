"""Tests for the gl_2n action on U(gl_n)."""

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from smartgl.action import (
    Block,
    Gl2nElement,
    ModuleSpec,
    Mutation,
    act,
    act_alternative,
    act_identity,
    act_parabolic,
    b_eigenvalues,
    block_of,
    monomial_factors,
    twist,
)
from smartgl.errors import NotParabolicError, RankMismatchError, SingularMatrixError
from smartgl.expr import parse_uea
from smartgl.matrices import numeric_matrix
from smartgl.pbw import (
    MEMO_TABLES,
    Monomial,
    UEAElement,
    configure_memo,
    degree,
    monomials_up_to,
    mul,
)

Q = [[1, 2], [3, 5]]


def unit(n, row, col):
    return Gl2nElement.unit(n, row, col)


DENSE = Gl2nElement.from_rows(
    2, [[1, 2, 3, 4], [-1, "1/2", 0, 5], [2, 7, -3, 1], ["2/3", 1, 1, -4]]
)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def nonsingular(draw):
    rows = draw(st.lists(st.lists(rationals, min_size=2, max_size=2), min_size=2, max_size=2))
    matrix = numeric_matrix(rows)
    assume(matrix.det() != 0)
    return matrix


class TestGl2nElement:
    """Block structure of gl_2n elements."""

    def test_block_of(self):
        """Positions map to A, B, C, D blocks."""
        assert block_of(2, 1, 2) is Block.A
        assert block_of(2, 1, 3) is Block.B
        assert block_of(2, 3, 1) is Block.C
        assert block_of(2, 4, 4) is Block.D

    def test_blocks_round_trip(self):
        """from_blocks inverts blocks()."""
        x = Gl2nElement.from_rows(1, [[1, 2], [3, 4]])
        assert Gl2nElement.from_blocks(*x.blocks()) == x
        assert x.b_block == numeric_matrix([[2]])

    def test_bracket_of_units(self):
        """[e12, e21] = e11 − e22 in gl_2."""
        assert unit(1, 1, 2).bracket(unit(1, 2, 1)) == unit(1, 1, 1) - unit(1, 2, 2)

    def test_parabolic(self):
        """A + B elements are parabolic."""
        assert (unit(2, 1, 1) + unit(2, 2, 3)).is_parabolic()
        assert not unit(2, 3, 1).is_parabolic()

    def test_units_listing(self):
        """Nonzero entries listed row-major."""
        x = 2 * unit(2, 3, 1) - unit(2, 4, 4)
        assert [(r, c, int(v)) for r, c, v in x.units()] == [(3, 1, 2), (4, 4, -1)]

    def test_shape_checked(self):
        """The matrix must be 2n×2n."""
        with pytest.raises(RankMismatchError):
            Gl2nElement(2, numeric_matrix([[1, 0], [0, 1]]))


class TestModuleSpec:
    """Construction of M_Q."""

    def test_default_is_identity(self):
        """No Q means Q = I."""
        spec = ModuleSpec.create(2)
        assert spec.q == sympy.eye(2)
        assert not spec.is_singular

    def test_singular(self):
        """Singular Q has no Q^{-T}."""
        spec = ModuleSpec.create(2, [[1, 0], [0, 0]])
        assert spec.is_singular
        with pytest.raises(SingularMatrixError, match="Q singular: C-action undefined"):
            spec.require_nonsingular("C-action")

    def test_shape(self):
        """Q must be n×n."""
        with pytest.raises(RankMismatchError):
            ModuleSpec.create(2, [[1]])


class TestIdentityModule:
    """The Q = I action."""

    def test_a_unit_is_left_multiplication(self):
        """A-units multiply on the left."""
        a = parse_uea("e[2,1] e[1,2]", 2)
        assert act_identity(unit(2, 1, 2), a) == mul(UEAElement.generator(2, 1, 2), a)

    def test_d_unit_is_right_multiplication(self):
        """D-units act by a ↦ −a e."""
        a = parse_uea("e[2,1]", 2)
        assert act_identity(unit(2, 3, 4), a) == -mul(a, UEAElement.generator(2, 1, 2))

    def test_c_unit_on_one(self):
        """n = 1: e_{2,1}·1 = −e11 − e11²."""
        assert act_identity(unit(1, 2, 1), UEAElement.one(1)) == parse_uea("-e[1,1] - e[1,1]^2", 1)

    def test_b_unit_lowers(self):
        """n = 1: e_{1,2}·e11² = (e11 − 1)²."""
        a = parse_uea("e[1,1]^2", 1)
        assert act_identity(unit(1, 1, 2), a) == parse_uea("(e[1,1] - 1)^2", 1)

    def test_bracket_axiom_spot_check(self):
        """X·(Y·a) − Y·(X·a) = [X,Y]·a for a B-unit and a C-unit."""
        x, y = unit(2, 1, 4), unit(2, 4, 1)
        a = parse_uea("e[1,2] e[2,1]", 2)
        lhs = act_identity(x, act_identity(y, a)) - act_identity(y, act_identity(x, a))
        assert lhs == act_identity(x.bracket(y), a)

    def test_rank_mismatch(self):
        """Vectors must live over the same n."""
        with pytest.raises(RankMismatchError):
            act_identity(unit(2, 1, 1), UEAElement.one(1))


class TestTwistedModule:
    """M_Q for general Q."""

    def test_b_unit_eigenvalue(self):
        """e_{1,4}·1 = q_12 = 2."""
        spec = ModuleSpec.create(2, Q)
        assert act(spec, unit(2, 1, 4), UEAElement.one(2)) == 2
        assert act_parabolic(spec, unit(2, 1, 4), UEAElement.one(2)) == 2

    def test_parabolic_agrees_with_act(self):
        """On A + B elements both actions coincide for nonsingular Q."""
        spec = ModuleSpec.create(2, Q)
        for m in monomials_up_to(2, 2):
            a = UEAElement.from_monomial(m)
            for x in (unit(2, 1, 3), unit(2, 2, 4), unit(2, 2, 1)):
                assert act(spec, x, a) == act_parabolic(spec, x, a)

    def test_identity_q_matches_identity_action(self):
        """Q = I gives act_identity."""
        spec = ModuleSpec.identity(2)
        a = parse_uea("e[1,2]^2 + e[2,1]", 2)
        for x in (unit(2, 3, 2), unit(2, 4, 3)):
            assert act(spec, x, a) == act_identity(x, a)

    def test_singular_q_rejected(self):
        """C-units need a nonsingular Q."""
        spec = ModuleSpec.create(1, [[0]])
        with pytest.raises(SingularMatrixError, match="Q singular: C-action undefined"):
            act(spec, unit(1, 2, 1), UEAElement.one(1))

    def test_parabolic_with_singular_q(self):
        """The parabolic action exists for Q = 0."""
        spec = ModuleSpec.create(1, [[0]])
        assert act_parabolic(spec, unit(1, 1, 2), UEAElement.one(1)) == 0
        with pytest.raises(NotParabolicError):
            act_parabolic(spec, unit(1, 2, 1), UEAElement.one(1))

    def test_b_eigenvalues_recover_q(self):
        """e_{i,n+j}·1 = q_ij."""
        spec = ModuleSpec.create(2, [["1/2", 2], [3, 5]])
        assert b_eigenvalues(spec) == spec.q

    def test_degree_shift_of_c_unit(self):
        """C-units raise degree by two."""
        spec = ModuleSpec.create(2, Q)
        a = parse_uea("e[1,2]", 2)
        assert degree(act(spec, unit(2, 3, 2), a)) == 3

    def test_mutations_are_named(self):
        """Mutation names parse from their CLI spelling."""
        assert Mutation("literal-d-term") is Mutation.LITERAL_D_TERM
        assert Mutation("none") is Mutation.NONE


class TestTwist:
    """The automorphism φ_S."""

    def test_inverse_twist(self):
        """φ_{S^{-1}} undoes φ_S."""
        s = numeric_matrix(Q)
        x = Gl2nElement.from_rows(2, [[1, 2, 3, 4], [0, 1, 0, 1], [2, 0, 1, 0], [1, 1, 1, 1]])
        assert twist(sympy.ImmutableMatrix(s.inv()), twist(s, x)) == x

    def test_twist_preserves_brackets(self):
        """φ_S([X, Y]) = [φ_S X, φ_S Y]."""
        s = numeric_matrix(Q)
        x, y = unit(2, 1, 3) + unit(2, 4, 2), unit(2, 3, 1) - unit(2, 2, 2)
        assert twist(s, x.bracket(y)) == twist(s, x).bracket(twist(s, y))

    def test_twist_scalar(self):
        """n = 1, S = 2: B halves, C doubles."""
        s = numeric_matrix([[2]])
        assert twist(s, unit(1, 1, 2)) == Gl2nElement.from_rows(1, [[0, "1/2"], [0, 0]])
        assert twist(s, unit(1, 2, 1)) == Gl2nElement.from_rows(1, [[0, 0], [2, 0]])

    def test_singular_s(self):
        """S must be invertible."""
        with pytest.raises(SingularMatrixError):
            twist(numeric_matrix([[0]]), unit(1, 1, 2))

    def test_composition(self):
        """φ_S ∘ φ_T = φ_{S.T}."""
        s, t = numeric_matrix(Q), numeric_matrix([["1/2", 1], [0, 3]])
        assert twist(s, twist(t, DENSE)) == twist(s * t, DENSE)

    @given(nonsingular(), nonsingular())
    @settings(max_examples=25, deadline=None)
    def test_composition_random(self, s, t):
        """φ_S ∘ φ_T = φ_{S.T} for random rational S, T."""
        assert twist(s, twist(t, DENSE)) == twist(s * t, DENSE)


class TestAlternativeFormula:
    """The subset-sum expression of the action."""

    @pytest.mark.parametrize("q", [[[1]], [[2]], [["-1/3"]]])
    def test_agrees_for_n1(self, q):
        """n = 1, all units, monomials of degree ≤ 3."""
        spec = ModuleSpec.create(1, q)
        for m in monomials_up_to(1, 3):
            a = UEAElement.from_monomial(m)
            for r in (1, 2):
                for c in (1, 2):
                    x = unit(1, r, c)
                    assert act_alternative(spec, x, monomial_factors(m)) == act(spec, x, a)

    def test_agrees_on_mixed_element(self):
        """A general element on e12 e21 with Q = [[1,2],[3,5]]."""
        spec = ModuleSpec.create(2, Q)
        m = Monomial.from_map(2, {(1, 2): 1, (2, 1): 1})
        x = Gl2nElement.from_rows(2, [[1, 0, 2, 0], [0, 0, 0, 1], [1, 0, 0, 3], [0, 2, 1, 0]])
        assert act_alternative(spec, x, monomial_factors(m)) == act(
            spec, x, UEAElement.from_monomial(m)
        )

    def test_factor_list(self):
        """Factors repeat exponents in row-major order."""
        m = Monomial.from_map(2, {(2, 1): 1, (1, 1): 2})
        factors = monomial_factors(m)
        assert len(factors) == 3
        assert factors[2] == numeric_matrix([[0, 0], [1, 0]])


class TestMemoTables:
    """configure_memo bounds the action and matrix tables as well."""

    def test_action_tables_registered(self):
        """The unit action, parabolic B-action and F-power tables are sized centrally."""
        assert {
            "smartgl.action._unit_action",
            "smartgl.action._parabolic_b_unit",
            "smartgl.matrices._generator_matrix_power",
        } <= set(MEMO_TABLES)

    def test_size_limits_every_table(self):
        """Size 0 turns every table off, a small size caps them, results are unchanged."""
        spec = ModuleSpec.create(2, Q)
        x = Gl2nElement.from_rows(2, [[1, 0, 2, 0], [0, 0, 0, 1], [1, 0, 0, 3], [0, 2, 1, 0]])
        a = parse_uea("e[1,2] e[2,1] + e[2,2]^2", 2)
        singular = ModuleSpec.create(2, [[1, 0], [0, 0]])
        parabolic = unit(2, 1, 3) + unit(2, 2, 1)
        try:
            configure_memo(0)
            assert all(table.cache_info() is None for table in MEMO_TABLES.values())
            expected = act(spec, x, a), act_parabolic(singular, parabolic, a)
            configure_memo(4)
            assert (act(spec, x, a), act_parabolic(singular, parabolic, a)) == expected
            for table in MEMO_TABLES.values():
                info = table.cache_info()
                assert info.maxsize == 4
                assert info.currsize <= 4
        finally:
            configure_memo()
