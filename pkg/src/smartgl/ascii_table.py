"""
Plain-text tables for the pretty CLI output.

A table is described by a dict::

    {"title": "bracket", "headers": [{"name": "input", "type": "str", "align": "left"}, ...],
     "rows": [[...], ...], "max_width": 120}

Cells are formatted by column ``type`` (``str``, ``int``, ``bool``, ``rational``,
``list``) and long cells wrap inside their column.
"""

from __future__ import annotations

import textwrap
from collections.abc import Mapping, Sequence
from fractions import Fraction
from typing import Any

Header = Mapping[str, Any]


def format_cell(value: Any, coldef: Header) -> str:
    ctype = coldef.get("type", "str")
    if ctype == "bool":
        return "yes" if value else "no"
    if ctype == "int":
        return str(int(value))
    if ctype == "rational":
        return str(Fraction(str(value)))
    if ctype == "list":
        return ", ".join(str(v) for v in value)
    return str(value)


def compute_col_widths(
    names: Sequence[str],
    rows: Sequence[Sequence[str]],
    max_width: int = 120,
    minw: int = 4,
    pad: int = 1,
) -> list[int]:
    """Column widths from content, shrunk proportionally to fit ``max_width``."""
    usable = max_width - (len(names) + 1)
    widths = []
    for i, name in enumerate(names):
        longest = max([len(name)] + [len(row[i]) for row in rows])
        widths.append(max(longest + pad, minw))
    total = sum(widths)
    if total > usable:
        scale = usable / total
        widths = [max(minw, int(w * scale)) for w in widths]
    return widths


def wrap_row(row: Sequence[str], widths: Sequence[int]) -> list[list[str]]:
    return [textwrap.wrap(cell, w) or [""] for cell, w in zip(row, widths)]


def merge_wrapped(wrapped: Sequence[Sequence[str]]) -> list[list[str]]:
    """Turn per-column line lists into physical lines."""
    height = max(len(col) for col in wrapped)
    return [[col[i] if i < len(col) else "" for col in wrapped] for i in range(height)]


def apply_align(text: str, width: int, align: str) -> str:
    if align == "right":
        return text.rjust(width)
    if align == "center":
        return text.center(width)
    return text.ljust(width)


def draw_table(
    headers: Sequence[Header], rows: Sequence[Sequence[str]], max_width: int = 120
) -> str:
    names = [h["name"] for h in headers]
    widths = compute_col_widths(names, rows, max_width)
    rule = "+" + "+".join("-" * w for w in widths) + "+"

    def lines(row: Sequence[str]) -> list[str]:
        return [
            "|"
            + "|".join(
                apply_align(text, w, h.get("align", "left"))
                for text, w, h in zip(line, widths, headers)
            )
            + "|"
            for line in merge_wrapped(wrap_row(row, widths))
        ]

    out = [rule, *lines(names), rule]
    for row in rows:
        out.extend(lines(row))
        out.append(rule)
    return "\n".join(out)


def render_ascii_table(data: Mapping[str, Any], max_width: int | None = None) -> str:
    """Render a table description as bordered text, with an optional centered title."""
    headers = data["headers"]
    if max_width is None:
        max_width = data.get("max_width", 120)
    formatted = [[format_cell(c, h) for c, h in zip(row, headers)] for row in data["rows"]]
    table = draw_table(headers, formatted, max_width=max_width)
    title = data.get("title")
    return title.center(max_width).rstrip() + "\n" + table if title else table
