"""Tests for ascii_table module."""

from fractions import Fraction

import sympy

from smartgl.ascii_table import (
    apply_align,
    compute_col_widths,
    draw_table,
    format_cell,
    merge_wrapped,
    render_ascii_table,
    wrap_row,
)


class TestFormatCell:
    """Cell formatting by column type."""

    def test_bool(self):
        assert format_cell(True, {"type": "bool"}) == "yes"
        assert format_cell(False, {"type": "bool"}) == "no"

    def test_int(self):
        assert format_cell(3, {"type": "int"}) == "3"

    def test_rational(self):
        """Fractions and sympy rationals print reduced."""
        assert format_cell(Fraction(6, 4), {"type": "rational"}) == "3/2"
        assert format_cell(sympy.Rational(-2, 4), {"type": "rational"}) == "-1/2"
        assert format_cell(4, {"type": "rational"}) == "4"

    def test_list(self):
        assert format_cell([1, 4, 10], {"type": "list"}) == "1, 4, 10"

    def test_default_is_str(self):
        assert format_cell("e[1,1]", {}) == "e[1,1]"


class TestLayout:
    """Widths, wrapping and alignment."""

    def test_widths_from_content(self):
        """Width is the longest cell plus padding, at least the minimum."""
        widths = compute_col_widths(["suite", "n"], [["bracket", "2"]])
        assert widths == [8, 4]

    def test_widths_shrink_to_fit(self):
        """Wide tables are scaled down."""
        widths = compute_col_widths(["a", "b"], [["x" * 100, "y" * 100]], max_width=50)
        assert sum(widths) + 3 <= 50

    def test_wrap_and_merge(self):
        """Long cells wrap into several physical lines."""
        wrapped = wrap_row(["one two three", "x"], [5, 3])
        lines = merge_wrapped(wrapped)
        assert lines == [["one", "x"], ["two", ""], ["three", ""]]

    def test_align(self):
        assert apply_align("7", 3, "right") == "  7"
        assert apply_align("7", 3, "center") == " 7 "
        assert apply_align("7", 3, "left") == "7  "


class TestRender:
    """Whole tables."""

    def test_draw_table(self):
        headers = [{"name": "k"}, {"name": "dim", "align": "right"}]
        text = draw_table(headers, [["1", "1"], ["2", "4"]])
        assert text.splitlines() == [
            "+----+----+",
            "|k   | dim|",
            "+----+----+",
            "|1   |   1|",
            "+----+----+",
            "|2   |   4|",
            "+----+----+",
        ]

    def test_render_with_title(self):
        """The title is centered above the table."""
        data = {
            "title": "socle",
            "max_width": 20,
            "headers": [{"name": "k", "type": "int"}, {"name": "ok", "type": "bool"}],
            "rows": [[1, True]],
        }
        lines = render_ascii_table(data).splitlines()
        assert lines[0] == "socle".center(20).rstrip()
        assert "|1   |yes |" in lines

    def test_render_without_title(self):
        data = {"headers": [{"name": "x"}], "rows": [["a"]]}
        assert render_ascii_table(data).startswith("+")
