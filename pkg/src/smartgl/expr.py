"""
Expression language for U(gl_n) and gl_2n elements.

Grammar::

    element  := ['+'|'-'] term (('+'|'-') term)*
    term     := factor (factor | '*' starred)*
    factor   := atom ('^' uint)?
    starred  := (int ('/' uint)? | atom) ('^' uint)?
    atom     := rational | 'e[' uint ',' uint ']' | '(' element ')'
    rational := uint ('/' uint)?

Juxtaposition and ``*`` both multiply; multiplication is noncommutative and
left-associative. Whitespace is ignored. A rational right after ``*`` may be
negative (``e[1,2] * -1/2``); elsewhere a ``-`` separates terms, so
``e[1,1] -3`` is e_11 − 3.

Example:
    >>> print_normal(parse_uea("e[1,2] e[2,1] - e[2,1] e[1,2]", 2))
    'e[1,1] - e[2,2]'
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

import pyparsing as pp
import sympy

from .action import Gl2nElement
from .errors import (
    ExponentOverflowError,
    ExprSyntaxError,
    IndexOutOfRangeError,
    NonlinearExpressionError,
)
from .matrices import UEAMatrix
from .pbw import Monomial, UEAElement, mul

logger = logging.getLogger(__name__)

MAX_EXPONENT = 64


@dataclass(frozen=True)
class _Num:
    numerator: int
    denominator: int
    loc: int


@dataclass(frozen=True)
class _Gen:
    row: int
    col: int
    loc: int


@dataclass(frozen=True)
class _Pow:
    base: Any
    power: int
    loc: int


@dataclass(frozen=True)
class _Product:
    factors: tuple[Any, ...]


@dataclass(frozen=True)
class _Sum:
    terms: tuple[tuple[int, Any], ...]


_Node = Union[_Num, _Gen, _Pow, _Product, _Sum]


def _num_action(s: str, loc: int, toks: pp.ParseResults) -> _Num:
    numerator, _, denominator = toks[0].partition("/")
    return _Num(int(numerator), int(denominator or 1), loc)


def _pow_action(s: str, loc: int, toks: pp.ParseResults) -> Any:
    return _Pow(toks[0], int(toks[1]), loc) if len(toks) == 2 else toks[0]


def _build_grammar() -> pp.ParserElement:
    uint = pp.Regex(r"\d+")
    rational = pp.Regex(r"\d+(?:/\d+)?").set_parse_action(_num_action)
    # after an explicit "*" a rational may carry its own sign
    signed_rational = pp.Regex(r"-\d+(?:/\d+)?").set_parse_action(_num_action)

    generator = (
        pp.Suppress("e") + pp.Suppress("[") + uint + pp.Suppress(",") + uint + pp.Suppress("]")
    )
    generator.set_parse_action(lambda s, loc, toks: _Gen(int(toks[0]), int(toks[1]), loc))

    element = pp.Forward()
    atom = rational | generator | (pp.Suppress("(") + element + pp.Suppress(")"))

    exponent = pp.Optional(pp.Suppress("^") + uint)
    factor = (atom + exponent).set_parse_action(_pow_action)
    starred = (signed_rational | atom) + exponent
    starred.set_parse_action(_pow_action)

    term = factor + pp.ZeroOrMore((pp.Suppress("*") + starred) | factor)
    term.set_parse_action(lambda toks: _Product(tuple(toks)))

    sign = pp.one_of("+ -")
    element <<= pp.Optional(sign) + term + pp.ZeroOrMore(sign + term)
    element.set_parse_action(_sum_action)
    return element


def _sum_action(toks: pp.ParseResults) -> _Sum:
    items = list(toks)
    if not isinstance(items[0], str):
        items.insert(0, "+")
    terms = tuple(
        (1 if items[i] == "+" else -1, items[i + 1]) for i in range(0, len(items), 2)
    )
    return _Sum(terms)


_GRAMMAR = _build_grammar()


def _parse(text: str) -> _Node:
    try:
        result = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise ExprSyntaxError(exc.msg, exc.loc) from None
    return result[0]


def _scalar(node: _Num) -> Fraction:
    if node.denominator == 0:
        raise ExprSyntaxError("zero denominator", node.loc)
    return Fraction(node.numerator, node.denominator)


def _check_power(node: _Pow, max_exponent: int) -> None:
    if node.power > max_exponent:
        raise ExponentOverflowError(
            f"exponent {node.power} exceeds {max_exponent} (at position {node.loc})"
        )


def _eval_uea(node: _Node, n: int, max_exponent: int) -> UEAElement:
    if isinstance(node, _Num):
        return UEAElement.constant(n, _scalar(node))
    if isinstance(node, _Gen):
        if not (1 <= node.row <= n and 1 <= node.col <= n):
            raise IndexOutOfRangeError(
                f"e[{node.row},{node.col}] outside 1..{n} (at position {node.loc})"
            )
        return UEAElement.generator(n, node.row, node.col)
    if isinstance(node, _Pow):
        _check_power(node, max_exponent)
        return _eval_uea(node.base, n, max_exponent) ** node.power
    if isinstance(node, _Product):
        result = UEAElement.one(n)
        for factor in node.factors:
            result = mul(result, _eval_uea(factor, n, max_exponent))
        return result
    total = UEAElement.zero(n)
    for sign, term in node.terms:
        value = _eval_uea(term, n, max_exponent)
        total = total + value if sign > 0 else total - value
    return total


def parse_uea(text: str, n: int, max_exponent: int = MAX_EXPONENT) -> UEAElement:
    """Parse ``text`` and return its PBW normal form in U(gl_n).

    Raises:
        ExprSyntaxError: The text does not match the grammar.
        IndexOutOfRangeError: Some e[i,j] has an index outside 1..n.
        ExponentOverflowError: Some exponent exceeds ``max_exponent``.
    """
    return _eval_uea(_parse(text), n, max_exponent)


# linear evaluation: a value is (constant, {(i, j): coefficient})


_Linear = tuple[Fraction, dict[tuple[int, int], Fraction]]


def _eval_linear(node: _Node, size: int, max_exponent: int) -> _Linear:
    if isinstance(node, _Num):
        return _scalar(node), {}
    if isinstance(node, _Gen):
        if not (1 <= node.row <= size and 1 <= node.col <= size):
            raise IndexOutOfRangeError(
                f"e[{node.row},{node.col}] outside 1..{size} (at position {node.loc})"
            )
        return Fraction(0), {(node.row, node.col): Fraction(1)}
    if isinstance(node, _Pow):
        _check_power(node, max_exponent)
        const, linear = _eval_linear(node.base, size, max_exponent)
        if node.power == 0:
            return Fraction(1), {}
        if not linear:
            return const**node.power, {}
        if node.power == 1:
            return const, linear
        raise NonlinearExpressionError(f"power of a gl_2n element (at position {node.loc})")
    if isinstance(node, _Product):
        const, linear = Fraction(1), {}
        for factor in node.factors:
            f_const, f_linear = _eval_linear(factor, size, max_exponent)
            if linear and f_linear:
                raise NonlinearExpressionError("product of gl_2n elements")
            merged: dict[tuple[int, int], Fraction] = {}
            for key, c in linear.items():
                merged[key] = merged.get(key, Fraction(0)) + c * f_const
            for key, c in f_linear.items():
                merged[key] = merged.get(key, Fraction(0)) + const * c
            linear = {key: c for key, c in merged.items() if c}
            const *= f_const
        return const, linear
    total_const = Fraction(0)
    total: dict[tuple[int, int], Fraction] = {}
    for sign, term in node.terms:
        const, linear = _eval_linear(term, size, max_exponent)
        total_const += sign * const
        for key, c in linear.items():
            total[key] = total.get(key, Fraction(0)) + sign * c
    return total_const, {key: c for key, c in total.items() if c}


def parse_gl2n(text: str, n: int, max_exponent: int = MAX_EXPONENT) -> Gl2nElement:
    """Parse a linear combination of e[i,j], 1 ≤ i, j ≤ 2n, into a gl_2n element.

    Raises:
        NonlinearExpressionError: Products or powers of generators, or constants.
    """
    size = 2 * n
    const, linear = _eval_linear(_parse(text), size, max_exponent)
    if const:
        raise NonlinearExpressionError("constant terms are not elements of gl_2n")
    matrix = sympy.zeros(size, size)
    for (row, col), c in linear.items():
        matrix[row - 1, col - 1] = sympy.Rational(c.numerator, c.denominator)
    return Gl2nElement(n, sympy.ImmutableMatrix(matrix))


# printing


def _monomial_text(m: Monomial) -> str:
    return "".join(
        f"e[{g.row},{g.col}]" + (f"^{power}" if power > 1 else "")
        for g, power in m.as_map().items()
    )


def _join_terms(parts: list[tuple[Fraction, str]]) -> str:
    if not parts:
        return "0"
    out = []
    for index, (coeff, body) in enumerate(parts):
        magnitude = abs(coeff)
        if not body:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude} {body}"
        if index == 0:
            out.append(f"-{text}" if coeff < 0 else text)
        else:
            out.append(f" - {text}" if coeff < 0 else f" + {text}")
    return "".join(out)


def print_normal(a: UEAElement) -> str:
    """Deterministic text of ``a``: degree first, then row-major lexicographic."""
    return _join_terms([(c, _monomial_text(m)) for m, c in a.sorted_terms()])


def print_gl2n(x: Gl2nElement) -> str:
    """Linear combination text of a gl_2n element, row-major order."""
    return _join_terms([(c, f"e[{row},{col}]") for row, col, c in x.units()])


def render_matrix(m: UEAMatrix) -> list[list[str]]:
    return [[print_normal(x) for x in row] for row in m.rows]


# JSON codec


def encode_json(a: UEAElement) -> list[list[Any]]:
    """``[[ [[i, j, exp], ...], "p/q" ], ...]`` in printing order."""
    return [
        [
            [[g.row, g.col, power] for g, power in m.as_map().items()],
            f"{c.numerator}/{c.denominator}",
        ]
        for m, c in a.sorted_terms()
    ]


def decode_json(data: list[list[Any]], n: int) -> UEAElement:
    terms: dict[Monomial, Fraction] = {}
    for factors, coeff in data:
        m = Monomial.from_map(n, {(i, j): power for i, j, power in factors})
        terms[m] = terms.get(m, Fraction(0)) + Fraction(str(coeff))
    return UEAElement(n, terms)
