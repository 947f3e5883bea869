"""
Configuration for SmartGL.

Options are plain namespaces built by merging incoming values over
:data:`DEFAULT_OPTIONS`; matrices arrive as JSON text (inline or ``@path``)
with exact rational entries.
"""

from __future__ import annotations

import json
import logging
import os
from collections.abc import Mapping
from pathlib import Path
from types import SimpleNamespace
from typing import Any

import sympy

from .errors import RankMismatchError, UsageError
from .matrices import NumericMatrix, as_rational
from .pbw import DEFAULT_MEMO_SIZE

logger = logging.getLogger(__name__)

MAX_RANK = 3
MAX_DEGREE = 4
MEMO_SIZE_ENV = "SMARTGL_MEMO_SIZE"

DEFAULT_OPTIONS: dict[str, Any] = {
    "n": 1,
    "q": None,
    "output": "pretty",
    "deg": 2,
    "k": 3,
    "mutate": None,
    "allow_large": False,
    "verbose": 0,
}


def filtered_dict(data: Mapping[str, Any] | None, ignore_none: bool = False) -> dict[str, Any]:
    """Return ``data`` as a dict, dropping ``None`` values when ``ignore_none``."""
    if not data:
        return {}
    if not ignore_none:
        return dict(data)
    return {k: v for k, v in data.items() if v is not None}


class SmartOptions(SimpleNamespace):
    """Namespace of options: ``incoming`` merged over ``defaults``.

    Args:
        incoming: Runtime values, e.g. ``vars()`` of parsed CLI arguments.
        defaults: Baseline values; :data:`DEFAULT_OPTIONS` when omitted.
        ignore_none: Skip incoming entries whose value is ``None``, so flags
            left off the command line keep their defaults.

    Example:
        >>> opts = SmartOptions({"n": 2, "q": None}, ignore_none=True)
        >>> opts.n, opts.deg
        (2, 2)
    """

    def __init__(
        self,
        incoming: Mapping[str, Any] | None = None,
        defaults: Mapping[str, Any] | None = None,
        *,
        ignore_none: bool = False,
    ):
        base = DEFAULT_OPTIONS if defaults is None else defaults
        merged = dict(base) | filtered_dict(incoming, ignore_none)
        object.__setattr__(self, "_data", merged)
        super().__init__(**merged)

    def as_dict(self) -> dict[str, Any]:
        """Return a copy of current options."""
        return dict(self._data)

    def __setattr__(self, key: str, value: Any) -> None:
        self._data[key] = value
        super().__setattr__(key, value)


def check_bounds(options: SmartOptions) -> None:
    """Refuse ranks and degrees above the desk-scale limits unless ``allow_large``."""
    if options.n < 1:
        raise UsageError("--n must be at least 1")
    if options.allow_large:
        return
    if options.n > MAX_RANK:
        raise UsageError(f"--n {options.n} exceeds {MAX_RANK}; pass --allow-large")
    for name in ("deg", "k"):
        value = getattr(options, name, None)
        if value is not None and value > MAX_DEGREE:
            raise UsageError(f"--{name} {value} exceeds {MAX_DEGREE}; pass --allow-large")


def _read_source(text: str) -> str:
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            return path.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read matrix file {path}: {exc}") from None
    return text


def _entry(value: Any) -> sympy.Rational:
    if isinstance(value, float) or (isinstance(value, str) and "." in value):
        raise UsageError(f"matrix entry {value!r}: decimals are not accepted, use p/q")
    try:
        return as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise UsageError(f"matrix entry {value!r} is not an exact rational") from None


def load_matrix(text: str, n: int) -> NumericMatrix:
    """Parse an n×n rational matrix from inline JSON or ``@path``.

    Entries are ints or rational strings such as ``"3/4"``; floats are rejected.

    Raises:
        UsageError: Malformed JSON, non-rational entries or a wrong shape.
    """
    try:
        data = json.loads(_read_source(text))
    except json.JSONDecodeError as exc:
        raise UsageError(f"matrix is not valid JSON: {exc.msg}") from None
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise UsageError("matrix must be an array of arrays")
    if len(data) != n or any(len(row) != n for row in data):
        raise RankMismatchError(f"matrix must be {n}×{n}")
    return sympy.ImmutableMatrix([[_entry(x) for x in row] for row in data])


def memo_size_from_env(environ: Mapping[str, str] | None = None) -> int:
    """Memo table size from ``SMARTGL_MEMO_SIZE``.

    Unset or ``none`` gives the default size; ``0`` disables caching.
    """
    env = os.environ if environ is None else environ
    raw = env.get(MEMO_SIZE_ENV, "").strip().lower()
    if raw in ("", "none"):
        return DEFAULT_MEMO_SIZE
    try:
        size = int(raw)
    except ValueError:
        raise UsageError(f"{MEMO_SIZE_ENV} must be an integer, got {raw!r}") from None
    if size < 0:
        raise UsageError(f"{MEMO_SIZE_ENV} must not be negative")
    return size
