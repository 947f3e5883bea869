"""
The gl_2n-module structures on U(gl_n).

An element of gl_2n is a rational 2n×2n matrix read in blocks ``(A B; C D)``.
On the vector ``a`` of M_I ≅ U(A) it acts by

    X·a = A a − a D + tr(ψ(a).B^T) − tr(φ(a).F².C) − tr(φ(a).C) tr(F)

and the module M_Q for nonsingular Q is the twist of M_I by the automorphism
φ_{Q^{-T}}: (A B; C D) ↦ (A, B.Q^T; Q^{-T}.C, Q^{-T}.D.Q^T).

The parabolic part A + B acts for every Q, singular or not, by
``A a + tr(ψ(a).Q.B^T)``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Any, NamedTuple

import sympy

from .errors import (
    InvalidParameterError,
    NotParabolicError,
    RankMismatchError,
    SingularMatrixError,
)
from .matrices import (
    NumericMatrix,
    as_fraction,
    as_rational,
    f_power,
    gelfand,
    inverse_transpose,
    is_singular,
    linear_element,
    mat_mul,
    numeric_identity,
    numeric_matrix,
    numeric_unit,
    phi,
    psi,
)
from .pbw import Monomial, UEAElement, linear_combination, memoized, mul

logger = logging.getLogger(__name__)

ModuleVector = UEAElement


class Block(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


class Mutation(str, Enum):
    """Diagnostic corruptions of the action formula.

    Only ``NONE`` is a module structure; the others exist so the bracket-axiom
    suite can show it catches each of them.
    """

    NONE = "none"
    SIGN_FLIP = "sign-flip"
    DROP_F2 = "drop-f2"
    Q_FOR_Q_INV_T = "q-for-q-inv-t"
    LITERAL_D_TERM = "literal-d-term"


def block_of(n: int, row: int, col: int) -> Block:
    """Block containing the 1-based position (row, col) of a 2n×2n matrix."""
    top, left = row <= n, col <= n
    if top:
        return Block.A if left else Block.B
    return Block.C if left else Block.D


@dataclass(frozen=True)
class Gl2nElement:
    """A rational 2n×2n matrix, viewed in blocks (A B; C D)."""

    n: int
    matrix: NumericMatrix

    def __post_init__(self) -> None:
        size = 2 * self.n
        if self.matrix.shape != (size, size):
            raise RankMismatchError(f"gl_2n element for n={self.n} must be {size}×{size}")

    @classmethod
    def zero(cls, n: int) -> Gl2nElement:
        return cls(n, sympy.ImmutableMatrix(sympy.zeros(2 * n, 2 * n)))

    @classmethod
    def unit(cls, n: int, row: int, col: int) -> Gl2nElement:
        """The basis element e_{row,col} of gl_2n (1-based, up to 2n)."""
        return cls(n, numeric_unit(2 * n, row, col))

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[Sequence[Any]]) -> Gl2nElement:
        return cls(n, numeric_matrix(rows))

    @classmethod
    def from_blocks(
        cls, a: NumericMatrix, b: NumericMatrix, c: NumericMatrix, d: NumericMatrix
    ) -> Gl2nElement:
        n = a.rows
        for block in (a, b, c, d):
            if block.shape != (n, n):
                raise RankMismatchError("blocks must share one n×n shape")
        full = sympy.Matrix.vstack(sympy.Matrix.hstack(a, b), sympy.Matrix.hstack(c, d))
        return cls(n, sympy.ImmutableMatrix(full))

    def _block(self, top: bool, left: bool) -> NumericMatrix:
        n = self.n
        r0 = 0 if top else n
        c0 = 0 if left else n
        return sympy.ImmutableMatrix(self.matrix[r0 : r0 + n, c0 : c0 + n])

    @property
    def a_block(self) -> NumericMatrix:
        return self._block(True, True)

    @property
    def b_block(self) -> NumericMatrix:
        return self._block(True, False)

    @property
    def c_block(self) -> NumericMatrix:
        return self._block(False, True)

    @property
    def d_block(self) -> NumericMatrix:
        return self._block(False, False)

    def blocks(self) -> tuple[NumericMatrix, NumericMatrix, NumericMatrix, NumericMatrix]:
        return self.a_block, self.b_block, self.c_block, self.d_block

    def units(self) -> list[tuple[int, int, Any]]:
        """Nonzero entries as (row, col, coefficient), row-major, 1-based."""
        size = 2 * self.n
        return [
            (i + 1, j + 1, as_fraction(self.matrix[i, j]))
            for i in range(size)
            for j in range(size)
            if self.matrix[i, j] != 0
        ]

    def is_parabolic(self) -> bool:
        """True when the C and D blocks vanish (the element lies in A + B)."""
        return self.c_block.is_zero_matrix and self.d_block.is_zero_matrix

    def bracket(self, other: Gl2nElement) -> Gl2nElement:
        """[X, Y] = XY − YX."""
        self._check(other)
        return Gl2nElement(
            self.n,
            sympy.ImmutableMatrix(self.matrix * other.matrix - other.matrix * self.matrix),
        )

    def _check(self, other: Gl2nElement) -> None:
        if other.n != self.n:
            raise RankMismatchError(f"gl_{2 * self.n} vs gl_{2 * other.n}")

    def __add__(self, other: Gl2nElement) -> Gl2nElement:
        self._check(other)
        return Gl2nElement(self.n, sympy.ImmutableMatrix(self.matrix + other.matrix))

    def __sub__(self, other: Gl2nElement) -> Gl2nElement:
        self._check(other)
        return Gl2nElement(self.n, sympy.ImmutableMatrix(self.matrix - other.matrix))

    def __rmul__(self, factor: Any) -> Gl2nElement:
        return Gl2nElement(self.n, sympy.ImmutableMatrix(self.matrix * as_rational(factor)))


@dataclass(frozen=True)
class ModuleSpec:
    """The pair (n, Q) fixing M_Q, with Q^{-T} cached when Q is nonsingular."""

    n: int
    q: NumericMatrix
    q_inv_t: NumericMatrix | None = None

    @classmethod
    def create(cls, n: int, q: Any = None) -> ModuleSpec:
        if n < 1:
            raise InvalidParameterError("rank must be at least 1")
        if q is None:
            matrix = numeric_identity(n)
        elif isinstance(q, sympy.MatrixBase):
            matrix = sympy.ImmutableMatrix(q)
        else:
            matrix = numeric_matrix(q)
        if matrix.shape != (n, n):
            raise RankMismatchError(f"Q must be {n}×{n}, got {matrix.rows}×{matrix.cols}")
        q_inv_t = None if is_singular(matrix) else inverse_transpose(matrix)
        return cls(n, matrix, q_inv_t)

    @classmethod
    def identity(cls, n: int) -> ModuleSpec:
        return cls.create(n)

    @property
    def is_singular(self) -> bool:
        return self.q_inv_t is None

    def require_nonsingular(self, what: str = "gl_2n action") -> NumericMatrix:
        if self.q_inv_t is None:
            raise SingularMatrixError(f"Q singular: {what} undefined")
        return self.q_inv_t


# the Q = I formula, memoized per basis unit and PBW monomial


class _Variant(NamedTuple):
    use_f2: bool = True
    trace_sign: int = 1


_EXACT = _Variant()


@memoized
def _tr_f(n: int) -> UEAElement:
    return gelfand(n, 1)


@memoized
def _phi_times_f2(m: Monomial) -> Any:
    return mat_mul(phi(UEAElement.from_monomial(m)), f_power(m.rank, 2))


@memoized
def _unit_action(n: int, row: int, col: int, m: Monomial, variant: _Variant) -> UEAElement:
    a = UEAElement.from_monomial(m)
    block = block_of(n, row, col)
    if block is Block.A:
        return mul(UEAElement.generator(n, row, col), a)
    if block is Block.D:
        return -mul(a, UEAElement.generator(n, row - n, col - n))
    if block is Block.B:
        # tr(ψ(a).E_ji) is the (i, j) entry of ψ(a)
        return psi(a).rows[row - 1][col - n - 1]
    # C = E_rc: tr(M.E_rc) is the (c, r) entry of M
    r, c = row - n, col
    phi_a = phi(a)
    quadratic = _phi_times_f2(m) if variant.use_f2 else phi_a
    linear = mul(phi_a.rows[c - 1][r - 1], _tr_f(n))
    return -quadratic.rows[c - 1][r - 1] - linear.scale(variant.trace_sign)


def _apply(x: Gl2nElement, a: UEAElement, variant: _Variant) -> UEAElement:
    if a.rank != x.n:
        raise RankMismatchError(f"gl_{2 * x.n} element on a rank {a.rank} vector")
    terms = list(a.terms.items())
    return linear_combination(
        x.n,
        (
            (coeff * c, _unit_action(x.n, row, col, m, variant))
            for row, col, coeff in x.units()
            for m, c in terms
        ),
    )


def act_identity(x: Gl2nElement, a: ModuleVector) -> ModuleVector:
    """X·a in the Q = I module."""
    return _apply(x, a, _EXACT)


def twist(s: NumericMatrix, x: Gl2nElement) -> Gl2nElement:
    """φ_S: (A B; C D) ↦ (A, B.S^{-1}; S.C, S.D.S^{-1})."""
    if s.shape != (x.n, x.n):
        raise RankMismatchError(f"S must be {x.n}×{x.n}")
    if is_singular(s):
        raise SingularMatrixError("twist needs a nonsingular S")
    s_inv = s.inv()
    a, b, c, d = x.blocks()
    return Gl2nElement.from_blocks(a, b * s_inv, s * c, s * d * s_inv)


def _singular_what(x: Gl2nElement) -> str:
    if not x.c_block.is_zero_matrix:
        return "C-action"
    if not x.d_block.is_zero_matrix:
        return "D-action"
    return "gl_2n action"


def _mutated(spec: ModuleSpec, x: Gl2nElement, mutation: Mutation) -> tuple[Gl2nElement, _Variant]:
    q, p = spec.q, spec.q_inv_t
    a, b, c, d = x.blocks()
    if mutation is Mutation.SIGN_FLIP:
        return twist(p, x), _Variant(trace_sign=-1)
    if mutation is Mutation.DROP_F2:
        return twist(p, x), _Variant(use_f2=False)
    if mutation is Mutation.Q_FOR_Q_INV_T:
        return Gl2nElement.from_blocks(a, b * q.T, q * c, q * d * q.T), _EXACT
    if mutation is Mutation.LITERAL_D_TERM:
        return Gl2nElement.from_blocks(a, b * q.T, p * c, d), _EXACT
    return twist(p, x), _EXACT


def act(
    spec: ModuleSpec, x: Gl2nElement, a: ModuleVector, mutation: Mutation = Mutation.NONE
) -> ModuleVector:
    """X·a in M_Q, defined as act_identity(φ_{Q^{-T}}(X), a).

    Args:
        spec: The module M_Q; Q must be nonsingular.
        x: Any rational element of gl_2n.
        a: Vector of M_Q ≅ U(gl_n).
        mutation: Diagnostic corruption of the formula; leave at ``NONE``.
    """
    if x.n != spec.n:
        raise RankMismatchError(f"gl_{2 * x.n} element on M_Q with n={spec.n}")
    spec.require_nonsingular(_singular_what(x))
    target, variant = _mutated(spec, x, Mutation(mutation))
    return _apply(target, a, variant)


@memoized
def _parabolic_b_unit(spec: ModuleSpec, row: int, col: int, m: Monomial) -> UEAElement:
    # tr(ψ(a).Q.E_ji) = Σ_k ψ(a)_ik q_kj
    psi_row = psi(UEAElement.from_monomial(m)).rows[row - 1]
    return linear_combination(
        spec.n,
        ((as_fraction(spec.q[k, col - 1]), psi_row[k]) for k in range(spec.n)),
    )


def act_parabolic(spec: ModuleSpec, x: Gl2nElement, a: ModuleVector) -> ModuleVector:
    """(A B; 0 0)·a = A a + tr(ψ(a).Q.B^T), valid for every Q."""
    if x.n != spec.n or a.rank != spec.n:
        raise RankMismatchError("element, vector and module disagree on n")
    if not x.is_parabolic():
        raise NotParabolicError("the parabolic action needs zero C and D blocks")
    n = spec.n
    terms = list(a.terms.items())
    parts = []
    for row, col, coeff in x.units():
        for m, c in terms:
            if col <= n:
                parts.append((coeff * c, _unit_action(n, row, col, m, _EXACT)))
            else:
                parts.append((coeff * c, _parabolic_b_unit(spec, row, col - n, m)))
    return linear_combination(n, parts)


def monomial_factors(m: Monomial) -> list[NumericMatrix]:
    """A PBW monomial as its ordered list of matrix units, exponents repeated."""
    return [numeric_unit(m.rank, g.row, g.col) for g in m.generators()]


def _ordered_product(n: int, matrices: Sequence[NumericMatrix]) -> NumericMatrix:
    result = sympy.eye(n)
    for factor in matrices:
        result = result * factor
    return sympy.ImmutableMatrix(result)


def _trace_against(n: int, numeric: NumericMatrix, power: int) -> UEAElement:
    # tr(N.F^power) = Σ_ab N_ab (F^power)_ba
    f = f_power(n, power)
    return linear_combination(
        n,
        (
            (as_fraction(numeric[i, j]), f.rows[j][i])
            for i in range(n)
            for j in range(n)
            if numeric[i, j] != 0
        ),
    )


def act_alternative(
    spec: ModuleSpec, x: Gl2nElement, factors: Sequence[NumericMatrix]
) -> ModuleVector:
    """X·(A_1 ⋯ A_k) by the subset-sum formula.

    Inside each trace products are numeric; outside, the surviving factors
    ∏_{i∉S} A_i are multiplied in U(gl_n) in their original order.
    """
    n = spec.n
    if x.n != n:
        raise RankMismatchError(f"gl_{2 * x.n} element on M_Q with n={n}")
    p = spec.require_nonsingular(_singular_what(x))
    for factor in factors:
        if factor.shape != (n, n):
            raise RankMismatchError(f"factors must be {n}×{n}")
    q = spec.q
    a_blk, b_blk, c_blk, d_blk = x.blocks()
    elements = [linear_element(factor) for factor in factors]

    product_all = UEAElement.one(n)
    for e in elements:
        product_all = mul(product_all, e)

    result = mul(linear_element(a_blk), product_all) - mul(
        product_all, linear_element(sympy.ImmutableMatrix(p * d_blk * q.T))
    )
    tr_f = _tr_f(n)
    k = len(factors)
    parts = []
    for size in range(k + 1):
        for subset in combinations(range(k), size):
            inside = _ordered_product(n, [factors[i] for i in subset])
            inside_t = _ordered_product(n, [factors[i].T for i in subset])
            b_scalar = (-1) ** size * (b_blk.T * inside_t * q).trace()
            c_numeric = sympy.ImmutableMatrix(p * c_blk * inside)
            bracket = (
                UEAElement.constant(n, as_fraction(b_scalar))
                - _trace_against(n, c_numeric, 2)
                - tr_f.scale(as_fraction(c_numeric.trace()))
            )
            outside = UEAElement.one(n)
            for i in range(k):
                if i not in subset:
                    outside = mul(outside, elements[i])
            parts.append((1, mul(outside, bracket)))
    return result + linear_combination(n, parts)


def b_eigenvalues(spec: ModuleSpec) -> NumericMatrix:
    """The scalars e_{i,n+j}·1, recovered through the parabolic action."""
    n = spec.n
    one = UEAElement.one(n)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            value = act_parabolic(spec, Gl2nElement.unit(n, i, n + j), one)
            row.append(value.constant_term())
        rows.append(row)
    return numeric_matrix(rows)
