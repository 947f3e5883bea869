"""
Decorators for SmartGL.

:func:`verification_suite` registers a check function under a suite name,
remembers which option supplies each of its keyword arguments, and logs
start, completion and timing of every run.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import wraps
from typing import Any, TypeVar

from .errors import UsageError

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

NONSINGULAR = "nonsingular"
SINGULAR = "singular"
ANY_Q = "any"


@dataclass(frozen=True)
class Suite:
    """A registered verification suite.

    Attributes:
        name: Name used by ``verify --suite``.
        func: The decorated check function.
        params: Keyword argument name mapped to the option attribute feeding it.
        requires: Which Q the suite applies to: nonsingular, singular or any.
        in_all: Whether ``verify --suite all`` runs it.
    """

    name: str
    func: Callable[..., Any]
    params: Mapping[str, str] = field(default_factory=dict)
    requires: str = ANY_Q
    in_all: bool = True

    def applies_to(self, singular: bool) -> bool:
        if self.requires == NONSINGULAR:
            return not singular
        if self.requires == SINGULAR:
            return singular
        return True

    def resolve(self, options: Any) -> dict[str, Any]:
        """Keyword arguments for ``func`` read from an options namespace."""
        return {arg: getattr(options, option) for arg, option in self.params.items()}


SUITES: dict[str, Suite] = {}


def verification_suite(
    name: str, requires: str = ANY_Q, in_all: bool = True, **param_map: str
) -> Callable[[F], F]:
    """Register a check function as the suite ``name``.

    Args:
        name: Suite name; must be unique.
        requires: ``"nonsingular"``, ``"singular"`` or ``"any"``.
        in_all: False for diagnostic suites left out of ``all``.
        **param_map: ``argument="option"`` pairs used by :meth:`Suite.resolve`.

    Example::

        @verification_suite("glemma", n="n", m_max="k")
        def check_glemma(n, m_max): ...
    """
    if requires not in (NONSINGULAR, SINGULAR, ANY_Q):
        raise ValueError(f"unknown requirement {requires!r}")

    def decorator(func: F) -> F:
        if name in SUITES:
            raise ValueError(f"suite {name!r} registered twice")

        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            logger.info("suite %s started %s", name, kwargs or args)
            started = time.perf_counter()
            report = func(*args, **kwargs)
            elapsed = time.perf_counter() - started
            failed = len(getattr(report, "failures", ()))
            logger.info(
                "suite %s finished: %s checks, %s failures, %.2fs",
                name,
                getattr(report, "attempted", "?"),
                failed,
                elapsed,
            )
            return report

        SUITES[name] = Suite(name, wrapper, dict(param_map), requires, in_all)
        return wrapper  # type: ignore[return-value]

    return decorator


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        known = ", ".join(sorted(SUITES))
        raise UsageError(f"unknown suite {name!r}; choose from {known}, all") from None
