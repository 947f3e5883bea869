"""
Mechanical verification of the module identities.

Every check enumerates its inputs deterministically (row-major basis order,
degree-then-lexicographic monomial order) and records each comparison in a
:class:`VerificationReport`, so counterexamples are reproducible.
Suites are registered with :func:`~smartgl.decorators.verification_suite`
and can be run by name through :func:`run_suite`.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Any

import sympy

from .action import (
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
)
from .decorators import NONSINGULAR, SINGULAR, SUITES, get_suite, verification_suite
from .errors import InvalidParameterError, NonsingularMatrixError
from .expr import print_gl2n, print_normal
from .matrices import as_fraction, f_power, gelfand, linear_element, render_numeric
from .pbw import (
    Monomial,
    UEAElement,
    commutator,
    degree,
    degree_at_most,
    filtration_dimension,
    linear_combination,
    monomials_up_to,
    mul,
)

logger = logging.getLogger(__name__)

DEGREE_SHIFT = {Block.A: 1, Block.B: 0, Block.C: 2, Block.D: 1}


@dataclass
class Failure:
    input: str
    expected: str
    got: str

    def to_dict(self) -> dict[str, str]:
        return {"input": self.input, "expected": self.expected, "got": self.got}


@dataclass
class VerificationReport:
    """Outcome of one suite run.

    Attributes:
        suite: Suite name.
        params: JSON-ready parameters (n, Q rows, bounds).
        attempted: Number of comparisons made.
        failures: Counterexamples, in enumeration order.
        notes: Extra findings, e.g. socle interpretations.
    """

    suite: str
    params: dict[str, Any]
    attempted: int = 0
    failures: list[Failure] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, described: str, expected: Any, got: Any) -> bool:
        self.attempted += 1
        if not ok:
            failure = Failure(described, _text(expected), _text(got))
            logger.debug("%s failure: %s", self.suite, failure)
            self.failures.append(failure)
        return ok

    def compare(self, described: str, expected: Any, got: Any) -> bool:
        return self.record(expected == got, described, expected, got)

    def to_dict(self) -> dict[str, Any]:
        data = {
            "suite": self.suite,
            "params": self.params,
            "attempted": self.attempted,
            "failures": [f.to_dict() for f in self.failures],
            "passed": self.passed,
        }
        if self.notes:
            data["notes"] = self.notes
        return data


def _text(value: Any) -> str:
    if isinstance(value, UEAElement):
        return print_normal(value)
    if isinstance(value, Gl2nElement):
        return print_gl2n(value)
    return str(value)


def _params(spec: ModuleSpec | None = None, **extra: Any) -> dict[str, Any]:
    params: dict[str, Any] = {}
    if spec is not None:
        params["n"] = spec.n
        params["q"] = render_numeric(spec.q)
    params.update(extra)
    return params


def _units(n: int) -> list[Gl2nElement]:
    size = 2 * n
    return [Gl2nElement.unit(n, r, c) for r, c in product(range(1, size + 1), repeat=2)]


def _unit_index(n: int, row: int, col: int) -> int:
    return (row - 1) * 2 * n + col - 1


def _action_table(
    spec: ModuleSpec, units: Sequence[Gl2nElement], mutation: Mutation
) -> Callable[[int, UEAElement], UEAElement]:
    """Unit action extended linearly, memoized per (unit, monomial)."""
    cache: dict[tuple[int, Monomial], UEAElement] = {}

    def act_on(index: int, vector: UEAElement) -> UEAElement:
        parts = []
        for m, c in vector.terms.items():
            key = (index, m)
            if key not in cache:
                cache[key] = act(spec, units[index], UEAElement.from_monomial(m), mutation)
            parts.append((c, cache[key]))
        return linear_combination(spec.n, parts)

    return act_on


# module structure


@verification_suite(
    "bracket", requires=NONSINGULAR, n="n", q="q", deg_bound="deg", mutation="mutate"
)
def check_bracket_axiom(
    n: int,
    q: Any = None,
    deg_bound: int = 2,
    mutation: Mutation | str | None = None,
    stop_on_first: bool = False,
) -> VerificationReport:
    """X·(Y·a) − Y·(X·a) = [X,Y]·a for unit pairs and monomials of degree ≤ deg_bound."""
    spec = ModuleSpec.create(n, q)
    spec.require_nonsingular()
    mutation = Mutation(mutation or Mutation.NONE)
    report = VerificationReport(
        "bracket", _params(spec, deg=deg_bound, mutation=mutation.value)
    )
    units = _units(n)
    act_on = _action_table(spec, units, mutation)
    monomials = monomials_up_to(n, deg_bound)
    vectors = [UEAElement.from_monomial(m) for m in monomials]
    images = {
        (i, k): act_on(i, v) for i in range(len(units)) for k, v in enumerate(vectors)
    }
    for (i, x), (j, y) in product(enumerate(units), repeat=2):
        bracket_terms = [(c, _unit_index(n, r, s)) for r, s, c in x.bracket(y).units()]
        for k, a in enumerate(vectors):
            got = act_on(i, images[j, k]) - act_on(j, images[i, k])
            expected = linear_combination(n, ((c, images[u, k]) for c, u in bracket_terms))
            described = f"X={print_gl2n(x)}, Y={print_gl2n(y)}, a={print_normal(a)}"
            if not report.compare(described, expected, got) and stop_on_first:
                return report
    return report


@verification_suite("equivalence", requires=NONSINGULAR, n="n", q="q", deg_bound="deg")
def check_equivalence(n: int, q: Any = None, deg_bound: int = 2) -> VerificationReport:
    """The subset-sum formula agrees with the twisted action on every unit and monomial."""
    spec = ModuleSpec.create(n, q)
    spec.require_nonsingular()
    report = VerificationReport("equivalence", _params(spec, deg=deg_bound))
    for x in _units(n):
        for m in monomials_up_to(n, deg_bound):
            a = UEAElement.from_monomial(m)
            report.compare(
                f"X={print_gl2n(x)}, a={print_normal(a)}",
                act(spec, x, a),
                act_alternative(spec, x, monomial_factors(m)),
            )
    return report


@verification_suite("degree", n="n", q="q", deg_bound="deg")
def check_degree_contract(n: int, q: Any = None, deg_bound: int = 3) -> VerificationReport:
    """A, B, C, D units raise the filtration degree by at most 1, 0, 2, 1.

    For singular Q only the parabolic units are checked.
    """
    spec = ModuleSpec.create(n, q)
    report = VerificationReport("degree", _params(spec, deg=deg_bound))
    for x in _units(n):
        row, col, _ = x.units()[0]
        block = block_of(n, row, col)
        if spec.is_singular and block in (Block.C, Block.D):
            continue
        shift = DEGREE_SHIFT[block]
        for m in monomials_up_to(n, deg_bound):
            a = UEAElement.from_monomial(m)
            image = act_parabolic(spec, x, a) if x.is_parabolic() else act(spec, x, a)
            report.record(
                degree_at_most(image, m.degree + shift),
                f"X={print_gl2n(x)}, a={print_normal(a)}",
                f"degree ≤ {m.degree + shift}",
                f"degree {degree(image)}",
            )
    return report


@verification_suite("eigenvalues", n="n", q="q")
def check_eigenvalues(n: int, q: Any = None) -> VerificationReport:
    """e_{i,n+j}·1 = q_ij, so Q is recovered from the module."""
    spec = ModuleSpec.create(n, q)
    report = VerificationReport("eigenvalues", _params(spec))
    recovered = b_eigenvalues(spec)
    for i, j in product(range(n), repeat=2):
        report.compare(f"e[{i + 1},{n + j + 1}]·1", spec.q[i, j], recovered[i, j])
    return report


@verification_suite("mutation", requires=NONSINGULAR, in_all=False, n="n", q="q", deg_bound="deg")
def check_mutation_sensitivity(n: int, q: Any = None, deg_bound: int = 2) -> VerificationReport:
    """Every corruption of the action formula yields a bracket-axiom counterexample.

    Mutations that coincide with the exact formula for the given Q (Q = Q^{-T})
    are skipped and listed under ``notes["skipped"]``.
    """
    spec = ModuleSpec.create(n, q)
    p = spec.require_nonsingular()
    report = VerificationReport("mutation", _params(spec, deg=deg_bound))
    skipped = []
    for mutation in Mutation:
        if mutation is Mutation.NONE:
            continue
        if mutation in (Mutation.Q_FOR_Q_INV_T, Mutation.LITERAL_D_TERM) and p == spec.q:
            skipped.append(mutation.value)
            continue
        outcome = check_bracket_axiom(n, spec.q, deg_bound, mutation, stop_on_first=True)
        witness = outcome.failures[0].input if outcome.failures else "none"
        report.record(not outcome.passed, mutation.value, "counterexample", witness)
    if skipped:
        report.notes["skipped"] = skipped
    return report


# trace identities in U(gl_n)


def _trace_unit_power(n: int, row: int, col: int, m: int) -> UEAElement:
    # tr(E_row,col . F^m) is the (col, row) entry of F^m
    return f_power(n, m).entry(col, row)


@verification_suite("glemma", n="n", m_max="k")
def check_glemma(n: int, m_max: int = 3) -> VerificationReport:
    """[A, tr(B.F^m)] = tr([A,B].F^m) for all units A, B and 1 ≤ m ≤ m_max."""
    if n < 1 or m_max < 1:
        raise InvalidParameterError("glemma needs n ≥ 1 and m_max ≥ 1")
    report = VerificationReport("glemma", _params(n=n, m_max=m_max))
    indices = list(product(range(1, n + 1), repeat=2))
    for m in range(1, m_max + 1):
        for (i, j), (k, l) in product(indices, repeat=2):
            a = UEAElement.generator(n, i, j)
            got = commutator(a, _trace_unit_power(n, k, l, m))
            expected = UEAElement.zero(n)
            if j == k:
                expected = expected + _trace_unit_power(n, i, l, m)
            if l == i:
                expected = expected - _trace_unit_power(n, k, j, m)
            report.compare(f"A=e[{i},{j}], B=e[{k},{l}], m={m}", expected, got)
    return report


@verification_suite("gelfand", n="n", k_max="k")
def check_gelfand_central(n: int, k_max: int = 3) -> VerificationReport:
    """[e_ij, tr(F^k)] = 0 for all i, j and k ≤ k_max."""
    if n < 1 or k_max < 1:
        raise InvalidParameterError("gelfand needs n ≥ 1 and k_max ≥ 1")
    report = VerificationReport("gelfand", _params(n=n, k_max=k_max))
    for k in range(1, k_max + 1):
        invariant = gelfand(n, k)
        for i, j in product(range(1, n + 1), repeat=2):
            report.compare(
                f"e[{i},{j}], k={k}",
                UEAElement.zero(n),
                commutator(UEAElement.generator(n, i, j), invariant),
            )
    return report


# lemmas on M_I


def _left_power(n: int, i: int, j: int, m: int) -> UEAElement:
    return UEAElement.generator(n, i, j) ** m


@verification_suite("rel", n="n", m_max="k", deg_bound="deg")
def check_rel_operator(n: int, m_max: int = 3, deg_bound: int = 2) -> VerificationReport:
    """[e_{j,k+n}, e_ij^m] as an operator on M_I.

    It acts as −m e_ij^{m−1} e_{i,k+n} for i ≠ j and as
    ((e_ii − 1)^m − e_ii^m) e_{i,k+n} for i = j.
    """
    spec = ModuleSpec.identity(n)
    report = VerificationReport("rel", _params(spec, m_max=m_max, deg=deg_bound))
    indices = range(1, n + 1)
    monomials = monomials_up_to(n, deg_bound)
    for i, j, k in product(indices, repeat=3):
        b_outer = Gl2nElement.unit(n, j, k + n)
        b_inner = Gl2nElement.unit(n, i, k + n)
        for m in range(1, m_max + 1):
            power = _left_power(n, i, j, m)
            if i == j:
                e = UEAElement.generator(n, i, i)
                coefficient = (e - 1) ** m - power
            else:
                coefficient = _left_power(n, i, j, m - 1).scale(-m)
            for mono in monomials:
                a = UEAElement.from_monomial(mono)
                got = act_identity(b_outer, mul(power, a)) - mul(power, act_identity(b_outer, a))
                expected = mul(coefficient, act_identity(b_inner, a))
                report.compare(
                    f"i={i}, j={j}, k={k}, m={m}, a={print_normal(a)}", expected, got
                )
    return report


@verification_suite("mod", n="n", deg_bound="deg")
def check_mod_leading(n: int, deg_bound: int = 3) -> VerificationReport:
    """(e_{j,k+n} − δ_jk)·f lowers degree, with leading part −l_kj f/e_kj."""
    spec = ModuleSpec.identity(n)
    report = VerificationReport("mod", _params(spec, deg=deg_bound))
    for f_mono in monomials_up_to(n, deg_bound):
        d = f_mono.degree
        f = UEAElement.from_monomial(f_mono)
        for j, k in product(range(1, n + 1), repeat=2):
            g = act_identity(Gl2nElement.unit(n, j, k + n), f)
            if j == k:
                g = g - f
            lowered = f_mono.decrement(k, j)
            leading = g
            if lowered is not None:
                leading = g + UEAElement.from_monomial(lowered, f_mono.exponent(k, j))
            ok = degree_at_most(g, d - 1) and degree_at_most(leading, d - 2)
            report.record(
                ok,
                f"f={print_normal(f)}, j={j}, k={k}",
                f"degree ≤ {d - 1}, remainder degree ≤ {d - 2}",
                f"degree {degree(g)}, remainder degree {degree(leading)}",
            )
    return report


@verification_suite("filtration", n="n", deg_bound="deg")
def check_filtration_dimension(n: int, deg_bound: int = 2) -> VerificationReport:
    """Words of length ≤ d in the generators span a space of dimension C(n²+d, n²)."""
    report = VerificationReport("filtration", _params(n=n, deg=deg_bound))
    generators = [UEAElement.generator(n, i, j) for i, j in product(range(1, n + 1), repeat=2)]
    for d in range(deg_bound + 1):
        basis = {m: idx for idx, m in enumerate(monomials_up_to(n, d))}
        rows = []
        for length in range(d + 1):
            for word in product(generators, repeat=length):
                value = UEAElement.one(n)
                for g in word:
                    value = mul(value, g)
                row = [0] * len(basis)
                for m, c in value.terms.items():
                    row[basis[m]] = sympy.Rational(c.numerator, c.denominator)
                rows.append(row)
        rank = sympy.Matrix(rows).rank()
        report.compare(f"dim M^({d})", filtration_dimension(n, d), rank)
    return report


# simplicity witness


@dataclass(frozen=True)
class Reduction:
    """Result of :func:`reduce_to_constant`.

    Attributes:
        scalar: Constant term left after applying the operator word.
        word: The operator word, e.g. ``"(e[1,2]-1)^2"``; empty for constants.
        leading: The maximal-degree monomial p the word was built from.
        residual: Non-constant remainder (zero when the reduction succeeded).
    """

    scalar: Fraction
    word: str
    leading: Monomial
    residual: UEAElement

    @property
    def is_witness(self) -> bool:
        return self.scalar != 0 and self.residual.is_zero()

    def to_dict(self) -> dict[str, Any]:
        return {
            "scalar": str(self.scalar),
            "word": self.word,
            "leading": print_normal(UEAElement.from_monomial(self.leading)),
            "residual": print_normal(self.residual),
            "witness": self.is_witness,
        }


def _operator_text(n: int, i: int, j: int, power: int) -> str:
    text = f"e[{j},{n + i}]"
    if i == j:
        text = f"({text}-1)"
    return text if power == 1 else f"{text}^{power}"


def reduce_to_constant(f: UEAElement, n: int | None = None) -> Reduction:
    """Apply B_p = ∏(e_{j,n+i} − δ_ij)^{l_ij} to ``f`` on M_I.

    p is the first maximal-degree monomial of ``f`` in printing order. The
    B-operators commute, so they are applied in row-major order of (i, j).

    Raises:
        InvalidParameterError: ``f`` is zero.
    """
    n = f.rank if n is None else n
    if f.is_zero():
        raise InvalidParameterError("cannot reduce the zero vector")
    top = max(m.degree for m in f.terms)
    p = next(m for m, _ in f.sorted_terms() if m.degree == top)
    value = f
    words = []
    for (i, j), power in p.as_map().items():
        unit = Gl2nElement.unit(n, j, n + i)
        for _ in range(power):
            image = act_identity(unit, value)
            value = image - value if i == j else image
        words.append(_operator_text(n, i, j, power))
    scalar = value.constant_term()
    residual = value - scalar
    logger.debug("reduced %s via %s to %s", print_normal(f), "".join(words) or "1", scalar)
    return Reduction(scalar, "".join(words), p, residual)


# socle


@dataclass(frozen=True)
class SocleFiltration:
    layers: list[int]
    cumulative: list[int]


def _operator_matrix(
    spec: ModuleSpec, i: int, j: int, basis: dict[Monomial, int]
) -> sympy.Matrix:
    n = spec.n
    unit = Gl2nElement.unit(n, i, n + j)
    shift = spec.q[i - 1, j - 1]
    matrix = sympy.zeros(len(basis), len(basis))
    for m, col in basis.items():
        a = UEAElement.from_monomial(m)
        image = act_parabolic(spec, unit, a) - a.scale(as_fraction(shift))
        for mono, c in image.terms.items():
            matrix[basis[mono], col] = sympy.Rational(c.numerator, c.denominator)
    return matrix


def socle_filtration(n: int, q: Any = None, k_max: int = 3) -> SocleFiltration:
    """Dimensions of ker(𝔪^k) and of the layers ker(𝔪^k)/ker(𝔪^{k−1}), k = 1..k_max.

    𝔪 is spanned by the operators e_{i,n+j} − q_ij. Each lowers degree, so
    ker(𝔪^k) lies in M^(k−1) and the computation runs on M^(k_max−1).
    """
    if k_max < 1:
        raise InvalidParameterError("socle needs k_max ≥ 1")
    spec = ModuleSpec.create(n, q)
    spec.require_nonsingular("socle")
    basis = {m: idx for idx, m in enumerate(monomials_up_to(n, k_max - 1))}
    size = len(basis)
    operators = [
        _operator_matrix(spec, i, j, basis) for i, j in product(range(1, n + 1), repeat=2)
    ]
    annihilator = sympy.eye(size)  # rows cut out ker(𝔪^0) = 0
    cumulative: list[int] = []
    for k in range(1, k_max + 1):
        if annihilator.rows == 0:
            kernel = [sympy.eye(size)[:, c] for c in range(size)]
        else:
            stacked = sympy.Matrix.vstack(*(annihilator * x for x in operators))
            kernel = stacked.nullspace()
        cumulative.append(len(kernel))
        if k < k_max:
            if kernel:
                span = sympy.Matrix.hstack(*kernel)
                rows = [v.T for v in span.T.nullspace()]
                annihilator = sympy.Matrix.vstack(*rows) if rows else sympy.zeros(0, size)
            else:
                annihilator = sympy.eye(size)
        logger.debug("socle k=%s: dim ker = %s", k, cumulative[-1])
    layers = [c - prev for c, prev in zip(cumulative, [0] + cumulative[:-1])]
    return SocleFiltration(layers, cumulative)


def socle_layers(n: int, q: Any = None, k_max: int = 3) -> list[int]:
    """Layer dimensions of the socle filtration for k = 1..k_max."""
    return socle_filtration(n, q, k_max).layers


def socle_formula(n: int, k: int) -> int:
    """C(n²+k−2, k−1)."""
    return comb(n * n + k - 2, k - 1)


@verification_suite("socle", requires=NONSINGULAR, n="n", q="q", k_max="k")
def check_socle(n: int, q: Any = None, k_max: int = 3) -> VerificationReport:
    """Socle layers against C(n²+k−2, k−1); notes which reading of the formula matches."""
    spec = ModuleSpec.create(n, q)
    report = VerificationReport("socle", _params(spec, k_max=k_max))
    filtration = socle_filtration(n, spec.q, k_max)
    formula = [socle_formula(n, k) for k in range(1, k_max + 1)]
    for k, (expected, got) in enumerate(zip(formula, filtration.layers), start=1):
        report.compare(f"layer k={k}", expected, got)
    if filtration.layers == formula:
        matches = "layer"
    elif filtration.cumulative == formula:
        matches = "cumulative"
    else:
        matches = "neither"
    report.notes.update(
        layers=filtration.layers,
        cumulative=filtration.cumulative,
        formula=formula,
        matches=matches,
    )
    return report


# singular Q


def singular_generator(spec: ModuleSpec) -> UEAElement:
    """α = Σ (A₀)_ij e_ij with A₀ = v e_1^T, v the first kernel vector of Q^T."""
    kernel = spec.q.T.nullspace()
    if not kernel:
        raise NonsingularMatrixError("Q is nonsingular: no proper submodule to check")
    v = kernel[0]
    a0 = sympy.zeros(spec.n, spec.n)
    a0[:, 0] = v
    return linear_element(sympy.ImmutableMatrix(a0))


@verification_suite("singular", requires=SINGULAR, n="n", q="q", deg_bound="deg")
def check_singular_submodule(n: int, q: Any, deg_bound: int = 2) -> VerificationReport:
    """B·(aα) = tr(Q.B^T.ψ(a))α for every B-unit, so U(A)α is stable under A + B."""
    spec = ModuleSpec.create(n, q)
    if not spec.is_singular:
        raise NonsingularMatrixError("Q is nonsingular: no proper submodule to check")
    alpha = singular_generator(spec)
    report = VerificationReport(
        "singular", _params(spec, deg=deg_bound, alpha=print_normal(alpha))
    )
    for i, j in product(range(1, n + 1), repeat=2):
        unit = Gl2nElement.unit(n, i, n + j)
        for m in monomials_up_to(n, deg_bound):
            a = UEAElement.from_monomial(m)
            got = act_parabolic(spec, unit, mul(a, alpha))
            expected = mul(act_parabolic(spec, unit, a), alpha)
            report.compare(f"B=e[{i},{n + j}], a={print_normal(a)}", expected, got)
    return report


# running by name


def run_suite(name: str, options: Any) -> list[VerificationReport]:
    """Run one suite, or every applicable suite for ``"all"``.

    Args:
        name: Registered suite name or ``"all"``.
        options: Namespace with the attributes named in each suite's parameter map.
    """
    spec = ModuleSpec.create(options.n, options.q)
    if name == "all":
        suites = [
            s for s in SUITES.values() if s.in_all and s.applies_to(spec.is_singular)
        ]
    else:
        suites = [get_suite(name)]
    reports = []
    for suite in suites:
        kwargs = suite.resolve(options)
        if "q" in kwargs:
            kwargs["q"] = spec.q
        reports.append(suite.func(**kwargs))
    return reports
