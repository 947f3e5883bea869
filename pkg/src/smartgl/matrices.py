"""
Matrices over U(gl_n).

``UEAMatrix`` realizes U(A) ⊗ A ≅ Mat_n(U(A)): an n×n array of
:class:`~smartgl.pbw.UEAElement`. Numeric matrices (Q, S and the blocks of a
gl_2n element) are ``sympy.ImmutableMatrix`` objects with rational entries and
enter U-matrices only through :func:`embed`.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from itertools import product
from typing import Any

import sympy

from .errors import InvalidParameterError, RankMismatchError, SingularMatrixError
from .pbw import Monomial, UEAElement, as_scalar, linear_combination, memoized, mul

logger = logging.getLogger(__name__)

NumericMatrix = sympy.ImmutableMatrix


# numeric helpers


def as_rational(value: Any) -> sympy.Rational:
    """Exact sympy rational from ints, Fractions, ``"p/q"`` strings or sympy numbers."""
    if isinstance(value, sympy.Basic):
        if not value.is_Rational:
            raise TypeError(f"{value!r} is not an exact rational")
        return value
    f = as_scalar(value)
    return sympy.Rational(f.numerator, f.denominator)


def as_fraction(value: Any) -> Fraction:
    return as_scalar(value)


def numeric_matrix(rows: Iterable[Iterable[Any]]) -> NumericMatrix:
    """Build a square rational matrix from nested rows."""
    data = [[as_rational(x) for x in row] for row in rows]
    if not data or any(len(row) != len(data) for row in data):
        raise RankMismatchError("numeric matrix must be square and non-empty")
    return sympy.ImmutableMatrix(data)


def numeric_identity(n: int) -> NumericMatrix:
    return sympy.ImmutableMatrix(sympy.eye(n))


def numeric_unit(n: int, row: int, col: int) -> NumericMatrix:
    """The matrix unit E_{row,col} (1-based indices)."""
    if not (1 <= row <= n and 1 <= col <= n):
        raise InvalidParameterError(f"unit E[{row},{col}] outside 1..{n}")
    m = sympy.zeros(n, n)
    m[row - 1, col - 1] = 1
    return sympy.ImmutableMatrix(m)


def is_singular(m: NumericMatrix) -> bool:
    """Exact determinant test."""
    return m.det() == 0


def inverse_transpose(m: NumericMatrix) -> NumericMatrix:
    """Q^{-T} := (Q^{-1})^T."""
    if is_singular(m):
        raise SingularMatrixError("matrix is singular")
    return sympy.ImmutableMatrix(m.inv().T)


def linear_element(m: NumericMatrix) -> UEAElement:
    """Σ m_ij e_ij: a numeric matrix read as a degree-one element of U(gl_n)."""
    n = m.rows
    terms = {}
    for i in range(n):
        for j in range(n):
            if m[i, j] != 0:
                vector = [0] * (n * n)
                vector[i * n + j] = 1
                terms[Monomial(vector)] = as_fraction(m[i, j])
    return UEAElement(n, terms)


# U-matrices


class UEAMatrix:
    """An n×n matrix with entries in U(gl_n).

    Args:
        rank: The n of gl_n; also the size of the matrix.
        rows: n rows of n :class:`UEAElement` entries.
    """

    __slots__ = ("rank", "rows")

    def __init__(self, rank: int, rows: Sequence[Sequence[UEAElement]]):
        if len(rows) != rank or any(len(row) != rank for row in rows):
            raise RankMismatchError(f"a rank {rank} U-matrix needs {rank}×{rank} entries")
        for row in rows:
            for entry in row:
                if entry.rank != rank:
                    raise RankMismatchError("entry over a different rank")
        self.rank = rank
        self.rows: tuple[tuple[UEAElement, ...], ...] = tuple(tuple(row) for row in rows)

    def entry(self, row: int, col: int) -> UEAElement:
        """Entry at 1-based position (row, col)."""
        return self.rows[row - 1][col - 1]

    def transpose(self) -> UEAMatrix:
        n = self.rank
        return UEAMatrix(n, [[self.rows[j][i] for j in range(n)] for i in range(n)])

    def left_scale(self, a: UEAElement) -> UEAMatrix:
        """a·M, the U-factor placed to the left of every entry."""
        return UEAMatrix(self.rank, [[mul(a, x) for x in row] for row in self.rows])

    def __add__(self, other: UEAMatrix) -> UEAMatrix:
        return mat_add(self, other)

    def __sub__(self, other: UEAMatrix) -> UEAMatrix:
        return mat_add(self, mat_scale(other, -1))

    def __matmul__(self, other: UEAMatrix) -> UEAMatrix:
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UEAMatrix):
            return NotImplemented
        return self.rank == other.rank and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.rank, self.rows))

    def __repr__(self) -> str:
        from .expr import print_normal

        body = "; ".join(", ".join(print_normal(x) for x in row) for row in self.rows)
        return f"UEAMatrix([{body}])"


def _check_same_rank(m1: UEAMatrix, m2: UEAMatrix) -> None:
    if m1.rank != m2.rank:
        raise RankMismatchError(f"rank {m1.rank} vs rank {m2.rank}")


def embed(m: NumericMatrix) -> UEAMatrix:
    """Numeric matrix as a U-matrix with constant entries."""
    n = m.rows
    if m.cols != n:
        raise RankMismatchError("only square matrices embed")
    return UEAMatrix(
        n, [[UEAElement.constant(n, as_fraction(m[i, j])) for j in range(n)] for i in range(n)]
    )


def identity(n: int) -> UEAMatrix:
    return embed(numeric_identity(n))


def mat_add(m1: UEAMatrix, m2: UEAMatrix) -> UEAMatrix:
    _check_same_rank(m1, m2)
    return UEAMatrix(m1.rank, [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(m1.rows, m2.rows)])


def mat_scale(m: UEAMatrix, factor: Any) -> UEAMatrix:
    return UEAMatrix(m.rank, [[x.scale(factor) for x in row] for row in m.rows])


def mat_mul(m1: UEAMatrix, m2: UEAMatrix) -> UEAMatrix:
    """Matrix product with entrywise U-multiplication, factor order preserved."""
    _check_same_rank(m1, m2)
    n = m1.rank
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(
                linear_combination(
                    n,
                    (
                        (1, mul(m1.rows[i][k], m2.rows[k][j]))
                        for k in range(n)
                        if m1.rows[i][k] and m2.rows[k][j]
                    ),
                )
            )
        rows.append(row)
    return UEAMatrix(n, rows)


def mat_trace(m: UEAMatrix) -> UEAElement:
    """tr(a ⊗ B) := a·tr(B), i.e. the sum of the diagonal entries."""
    return linear_combination(m.rank, ((1, m.rows[i][i]) for i in range(m.rank)))


def f_matrix(n: int) -> UEAMatrix:
    """F := (e_{j,i})_{i,j}; entry (i, j) is the generator e_{j,i}."""
    return f_power(n, 1)


@memoized
def _generator_matrix_power(n: int, m: int) -> UEAMatrix:
    generators = UEAMatrix(
        n, [[UEAElement.generator(n, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    )
    result = generators
    for _ in range(m - 1):
        result = mat_mul(result, generators)
    return result


def f_power(n: int, m: int) -> UEAMatrix:
    """F^m, the coefficient products read in the order that gives

        tr(E_ij . F^{m+1}) = Σ_{r_1..r_m} e_{i r_1} e_{r_1 r_2} ⋯ e_{r_m j}.

    This equals (E^m)^T with E = (e_{ij}); the plain Mat_n(U) power of F
    reverses every word and breaks the module identities for n ≥ 2.
    """
    if m < 1:
        raise InvalidParameterError("F^m needs m ≥ 1")
    return _generator_matrix_power(n, m).transpose()


def gelfand(n: int, k: int) -> UEAElement:
    """The Gelfand invariant tr(F^k), central in U(gl_n)."""
    if k < 1:
        raise InvalidParameterError("Gelfand invariants are indexed by k ≥ 1")
    return mat_trace(f_power(n, k))


def trace_closed_form(n: int, row: int, col: int, m: int) -> UEAElement:
    """Σ_{r_1..r_m} e_{row,r_1} e_{r_1,r_2} ⋯ e_{r_m,col}, generated word by word."""
    total = UEAElement.zero(n)
    for path in product(range(1, n + 1), repeat=m):
        stops = (row, *path, col)
        word = UEAElement.one(n)
        for a, b in zip(stops, stops[1:]):
            word = mul(word, UEAElement.generator(n, a, b))
        total = total + word
    return total


# the homomorphisms ψ and φ


def _generator_images(n: int, row: int, col: int, transpose_unit: bool, sign: int) -> UEAMatrix:
    scalar = UEAElement.generator(n, row, col)
    unit_row, unit_col = (col, row) if transpose_unit else (row, col)
    rows = []
    for i in range(1, n + 1):
        line = []
        for j in range(1, n + 1):
            x = scalar if i == j else UEAElement.zero(n)
            if (i, j) == (unit_row, unit_col):
                x = x + sign
            line.append(x)
        rows.append(line)
    return UEAMatrix(n, rows)


def psi_generator(n: int, row: int, col: int) -> UEAMatrix:
    """ψ(e_ij) = e_ij·I − E_ji."""
    return _generator_images(n, row, col, transpose_unit=True, sign=-1)


def phi_generator(n: int, row: int, col: int) -> UEAMatrix:
    """φ(e_ij) = e_ij·I + E_ij."""
    return _generator_images(n, row, col, transpose_unit=False, sign=1)


@memoized
def _psi_monomial(m: Monomial) -> UEAMatrix:
    result = identity(m.rank)
    for g in m.generators():
        result = mat_mul(result, psi_generator(m.rank, g.row, g.col))
    return result


@memoized
def _phi_monomial(m: Monomial) -> UEAMatrix:
    result = identity(m.rank)
    for g in m.generators():
        result = mat_mul(result, phi_generator(m.rank, g.row, g.col))
    return result


def _extend_linearly(a: UEAElement, image: Any) -> UEAMatrix:
    n = a.rank
    rows = [[UEAElement.zero(n) for _ in range(n)] for _ in range(n)]
    terms = list(a.terms.items())
    for i in range(n):
        for j in range(n):
            rows[i][j] = linear_combination(n, ((c, image(m).rows[i][j]) for m, c in terms))
    return UEAMatrix(n, rows)


def psi(a: UEAElement) -> UEAMatrix:
    """The algebra homomorphism generated by A ↦ A ⊗ I − 1 ⊗ A^T."""
    return _extend_linearly(a, _psi_monomial)


def phi(a: UEAElement) -> UEAMatrix:
    """The algebra homomorphism generated by A ↦ A ⊗ I + 1 ⊗ A."""
    return _extend_linearly(a, _phi_monomial)


def render_numeric(m: NumericMatrix) -> list[list[str]]:
    """Rows of a numeric matrix as rational strings."""
    return [[str(as_rational(m[i, j])) for j in range(m.cols)] for i in range(m.rows)]
