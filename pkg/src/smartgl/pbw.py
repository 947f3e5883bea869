"""
PBW arithmetic in U(gl_n).

Elements are sparse exact-rational combinations of PBW monomials
``e_11^l11 e_12^l12 ... e_1n^l1n e_21^l21 ... e_nn^lnn`` (row-major generator
order). Products are brought back to normal form by straightening with the
gl_n bracket ``[e_ab, e_cd] = δ_bc e_ad − δ_da e_cb``.

Example:
    >>> e12 = UEAElement.generator(2, 1, 2)
    >>> e21 = UEAElement.generator(2, 2, 1)
    >>> commutator(e12, e21) == UEAElement.generator(2, 1, 1) - UEAElement.generator(2, 2, 2)
    True
"""

from __future__ import annotations

import functools
import logging
from collections.abc import Callable, Iterable, Iterator, Mapping
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, isqrt
from types import MappingProxyType
from typing import Any, NamedTuple

from .errors import InvalidParameterError, RankMismatchError

logger = logging.getLogger(__name__)

DEFAULT_MEMO_SIZE = 65536


def as_scalar(value: Any) -> Fraction:
    """Convert ints, Fractions, ``"p/q"`` strings and sympy rationals to a Fraction.

    Floats are refused: every computation in SmartGL is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "p") and hasattr(value, "q") and getattr(value, "is_Rational", False):
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"cannot use {value!r} as an exact scalar")


class GeneratorIndex(NamedTuple):
    """Index (row, col) of the generator e_{row,col}; tuple order is row-major."""

    row: int
    col: int


def generator_position(n: int, row: int, col: int) -> int:
    """Return the row-major position of e_{row,col} in an exponent vector."""
    if not (1 <= row <= n and 1 <= col <= n):
        raise InvalidParameterError(f"generator e[{row},{col}] outside 1..{n}")
    return (row - 1) * n + (col - 1)


class Monomial(tuple):
    """Exponent vector of a PBW monomial, indexed row-major (e_11, e_12, ..., e_nn).

    The all-zero vector is the monomial 1.
    """

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int] = ()) -> Monomial:
        return super().__new__(cls, exponents)

    @classmethod
    def one(cls, n: int) -> Monomial:
        return cls((0,) * (n * n))

    @classmethod
    def from_map(cls, n: int, exponents: Mapping[tuple[int, int], int]) -> Monomial:
        """Build a monomial from ``{(i, j): exponent}``."""
        vector = [0] * (n * n)
        for (row, col), power in exponents.items():
            if power < 0:
                raise InvalidParameterError(f"negative exponent for e[{row},{col}]")
            vector[generator_position(n, row, col)] += power
        return cls(vector)

    @property
    def rank(self) -> int:
        return isqrt(len(self))

    @property
    def degree(self) -> int:
        return sum(self)

    def exponent(self, row: int, col: int) -> int:
        return self[generator_position(self.rank, row, col)]

    def as_map(self) -> dict[GeneratorIndex, int]:
        n = self.rank
        return {
            GeneratorIndex(pos // n + 1, pos % n + 1): power
            for pos, power in enumerate(self)
            if power
        }

    def word(self) -> tuple[int, ...]:
        """Generator positions in reading order, each repeated by its exponent."""
        return tuple(pos for pos, power in enumerate(self) for _ in range(power))

    def generators(self) -> list[GeneratorIndex]:
        n = self.rank
        return [GeneratorIndex(pos // n + 1, pos % n + 1) for pos in self.word()]

    def decrement(self, row: int, col: int) -> Monomial | None:
        """Lower the exponent of e_{row,col} by one; None when it is already zero."""
        pos = generator_position(self.rank, row, col)
        if not self[pos]:
            return None
        vector = list(self)
        vector[pos] -= 1
        return Monomial(vector)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Degree first, then row-major lexicographic order of the word."""
        return (self.degree, self.word())

    def __repr__(self) -> str:
        factors = [
            f"e[{g.row},{g.col}]" + (f"^{power}" if power > 1 else "")
            for g, power in self.as_map().items()
        ]
        return f"Monomial({''.join(factors) or '1'})"


# memo tables


class Memo:
    """A function wrapped in an ``lru_cache`` whose size can change at runtime."""

    def __init__(self, fn: Callable[..., Any], size: int | None):
        functools.update_wrapper(self, fn)
        self._fn = fn
        self.resize(size)

    def resize(self, size: int | None) -> None:
        self._call: Callable[..., Any] = (
            self._fn if size == 0 else functools.lru_cache(maxsize=size)(self._fn)
        )

    def __call__(self, *args: Any) -> Any:
        return self._call(*args)

    def cache_info(self) -> Any:
        info = getattr(self._call, "cache_info", None)
        return info() if info else None

    def cache_clear(self) -> None:
        clear = getattr(self._call, "cache_clear", None)
        if clear:
            clear()


MEMO_TABLES: dict[str, Memo] = {}
_memo_size: int | None = DEFAULT_MEMO_SIZE


def memoized(fn: Callable[..., Any]) -> Memo:
    """Register ``fn`` as a memo table sized by :func:`configure_memo`."""
    table = Memo(fn, _memo_size)
    MEMO_TABLES[f"{fn.__module__}.{fn.__name__}"] = table
    return table


def _last_generator(m: Monomial) -> int:
    for pos in range(len(m) - 1, -1, -1):
        if m[pos]:
            return pos
    return -1


def _bracket_generators(n: int, x: int, y: int) -> list[tuple[int, int]]:
    """[g_x, g_y] as a list of (position, coefficient)."""
    a, b = divmod(x, n)
    c, d = divmod(y, n)
    out = []
    if b == c:
        out.append((a * n + d, 1))
    if d == a:
        out.append((c * n + b, -1))
    return out


def _times_generator_impl(m: Monomial, g: int) -> tuple[tuple[Monomial, int], ...]:
    # m = rest·x with x the last generator of the word; m·g = (rest·g)·x + rest·[x, g].
    top = _last_generator(m)
    if top <= g:
        bumped = list(m)
        bumped[g] += 1
        return ((Monomial(bumped), 1),)
    n = isqrt(len(m))
    shortened = list(m)
    shortened[top] -= 1
    rest = Monomial(shortened)
    acc: dict[Monomial, int] = {}
    for u, c in _times_generator(rest, g):
        for v, d in _times_generator(u, top):
            acc[v] = acc.get(v, 0) + c * d
    for h, sign in _bracket_generators(n, top, g):
        for v, d in _times_generator(rest, h):
            acc[v] = acc.get(v, 0) + sign * d
    return tuple((v, c) for v, c in acc.items() if c)


_times_generator = memoized(_times_generator_impl)


def configure_memo(size: int | None = DEFAULT_MEMO_SIZE) -> None:
    """Resize every table registered with :func:`memoized`.

    Args:
        size: Maximum number of entries per table; ``None`` means unbounded,
            ``0`` disables caching.
    """
    global _memo_size
    _memo_size = size
    for table in MEMO_TABLES.values():
        table.resize(size)
    logger.debug("%d memo tables configured with size %s", len(MEMO_TABLES), size)


def memo_info() -> Any:
    """Return the lru_cache statistics of the straightening table (None if disabled)."""
    return _times_generator.cache_info()


def _mono_mul_terms(m1: Monomial, m2: Monomial) -> dict[Monomial, int]:
    word = m2.word()
    if not word or _last_generator(m1) <= word[0]:
        return {Monomial(x + y for x, y in zip(m1, m2)): 1}
    current: dict[Monomial, int] = {m1: 1}
    for g in word:
        step: dict[Monomial, int] = {}
        for u, c in current.items():
            for v, d in _times_generator(u, g):
                step[v] = step.get(v, 0) + c * d
        current = {v: c for v, c in step.items() if c}
    return current


class UEAElement:
    """A sparse exact-rational combination of PBW monomials in U(gl_n).

    Instances are immutable. Zero coefficients are never stored, so the zero
    element has an empty term map.

    Args:
        rank: The n of gl_n.
        terms: Mapping ``Monomial -> coefficient``.
    """

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Monomial, Any] | None = None):
        if rank < 1:
            raise InvalidParameterError("rank must be at least 1")
        size = rank * rank
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if len(m) != size:
                raise RankMismatchError(f"monomial of length {len(m)} in rank {rank}")
            key = m if isinstance(m, Monomial) else Monomial(m)
            value = clean.get(key, Fraction(0)) + as_scalar(c)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        self.rank = rank
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _from_clean(cls, rank: int, terms: Mapping[Monomial, Any]) -> UEAElement:
        obj = cls.__new__(cls)
        obj.rank = rank
        obj._terms = {m: Fraction(c) for m, c in terms.items() if c}
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, rank: int) -> UEAElement:
        return cls(rank)

    @classmethod
    def one(cls, rank: int) -> UEAElement:
        return cls.constant(rank, 1)

    @classmethod
    def constant(cls, rank: int, value: Any) -> UEAElement:
        return cls(rank, {Monomial.one(rank): value})

    @classmethod
    def generator(cls, rank: int, row: int, col: int) -> UEAElement:
        vector = [0] * (rank * rank)
        vector[generator_position(rank, row, col)] = 1
        return cls._from_clean(rank, {Monomial(vector): 1})

    @classmethod
    def from_monomial(cls, m: Monomial, coefficient: Any = 1) -> UEAElement:
        return cls(m.rank, {m: coefficient})

    # inspection

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient(Monomial.one(self.rank))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m.degree == 0 for m in self._terms)

    def degree(self) -> int | None:
        """Maximal monomial degree; None stands for the degree of 0."""
        return degree(self)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms ordered by degree, then row-major lexicographic word."""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    # arithmetic

    def _coerce(self, other: Any) -> UEAElement:
        if isinstance(other, UEAElement):
            if other.rank != self.rank:
                raise RankMismatchError(f"rank {self.rank} vs rank {other.rank}")
            return other
        return UEAElement.constant(self.rank, other)

    def __add__(self, other: Any) -> UEAElement:
        try:
            rhs = self._coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in rhs._terms.items():
            acc[m] = acc.get(m, 0) + c
        return UEAElement._from_clean(self.rank, acc)

    __radd__ = __add__

    def __neg__(self) -> UEAElement:
        return UEAElement._from_clean(self.rank, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> UEAElement:
        try:
            rhs = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: Any) -> UEAElement:
        return (-self) + other

    def scale(self, factor: Any) -> UEAElement:
        factor = as_scalar(factor)
        return UEAElement._from_clean(self.rank, {m: c * factor for m, c in self._terms.items()})

    def __mul__(self, other: Any) -> UEAElement:
        if isinstance(other, UEAElement):
            return mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other: Any) -> UEAElement:
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, power: int) -> UEAElement:
        if power < 0:
            raise InvalidParameterError("negative powers do not exist in U(gl_n)")
        result = UEAElement.one(self.rank)
        for _ in range(power):
            result = mul(result, self)
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UEAElement):
            return self.rank == other.rank and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == UEAElement.constant(self.rank, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.sorted_terms())

    def __repr__(self) -> str:
        from .expr import print_normal

        return f"UEAElement(n={self.rank}, {print_normal(self)})"


def _check_rank(a: UEAElement, b: UEAElement) -> None:
    if a.rank != b.rank:
        raise RankMismatchError(f"rank {a.rank} vs rank {b.rank}")


def mono_mul(m1: Monomial, m2: Monomial) -> UEAElement:
    """PBW normal form of the product of two monomials."""
    if len(m1) != len(m2):
        raise RankMismatchError("monomials over different ranks")
    return UEAElement._from_clean(m1.rank, _mono_mul_terms(m1, m2))


def mul(a: UEAElement, b: UEAElement) -> UEAElement:
    """Product in U(gl_n), bilinear extension of :func:`mono_mul`."""
    _check_rank(a, b)
    acc: dict[Monomial, Fraction] = {}
    for m1, c1 in a._terms.items():
        for m2, c2 in b._terms.items():
            c = c1 * c2
            for m, k in _mono_mul_terms(m1, m2).items():
                acc[m] = acc.get(m, 0) + c * k
    return UEAElement._from_clean(a.rank, acc)


def commutator(a: UEAElement, b: UEAElement) -> UEAElement:
    """[a, b] = ab − ba."""
    return mul(a, b) - mul(b, a)


def degree(a: UEAElement) -> int | None:
    """Filtration degree of ``a``; None for the zero element."""
    if not a._terms:
        return None
    return max(m.degree for m in a._terms)


def degree_at_most(a: UEAElement, bound: int) -> bool:
    """True when ``a`` lies in the filtration piece of degree ``bound`` (0 always does)."""
    d = degree(a)
    return d is None or d <= bound


def linear_combination(rank: int, pairs: Iterable[tuple[Any, UEAElement]]) -> UEAElement:
    """Σ c·x over ``(c, x)`` pairs, accumulated in one pass."""
    acc: dict[Monomial, Fraction] = {}
    for c, x in pairs:
        if x.rank != rank:
            raise RankMismatchError(f"rank {x.rank} in a rank {rank} combination")
        c = as_scalar(c)
        if not c:
            continue
        for m, k in x._terms.items():
            acc[m] = acc.get(m, 0) + c * k
    return UEAElement._from_clean(rank, acc)


def monomials_of_degree(n: int, d: int) -> list[Monomial]:
    """All PBW monomials of degree ``d`` over rank ``n``, row-major lexicographic."""
    out = []
    for word in combinations_with_replacement(range(n * n), d):
        vector = [0] * (n * n)
        for pos in word:
            vector[pos] += 1
        out.append(Monomial(vector))
    return out


def monomials_up_to(n: int, d: int) -> list[Monomial]:
    """All PBW monomials of degree ≤ ``d``, ordered by degree then lexicographically."""
    return [m for k in range(d + 1) for m in monomials_of_degree(n, k)]


def filtration_dimension(n: int, d: int) -> int:
    """dim M^(d) = C(n² + d, n²)."""
    return comb(n * n + d, n * n)
