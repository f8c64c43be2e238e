from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from elltrace.exceptions import ParseError
from elltrace.parsing import evaluate, split_top_level


def ev(text, **symbols):
    return evaluate(text, Fraction, {k: Fraction(v) for k, v in symbols.items()})


@pytest.mark.parametrize("text, expected", [
    ("1+2*3", 7),
    ("(1+2)*3", 9),
    ("2^3", 8),
    ("-2^2", -4),
    ("2**10", 1024),
    ("57/64x", Fraction(57, 64) * 5),
    ("2x^2", 50),
    ("3(x+1)", 18),
    ("x/8 - 1", Fraction(-3, 8)),
    ("--1", 1),
    ("  7  ", 7),
])
def test_precedence_and_implicit_multiplication(text, expected):
    assert ev(text, x=5) == expected


@pytest.mark.parametrize("text, column", [
    ("1 + ", 5),
    ("2 * $", 5),
    ("(1 + 2", 7),
    ("x^y", 3),
    ("", 1),
    ("1 2", 3),
    ("z", 1),
    ("2^3^1", 4),
])
def test_errors_are_located(text, column):
    with pytest.raises(ParseError) as exc:
        ev(text, x=1, y=2)
    assert exc.value.column == column
    assert exc.value.line == 1


def test_error_line_numbers():
    with pytest.raises(ParseError) as exc:
        ev("1 +\n  * 2")
    assert (exc.value.line, exc.value.column) == (2, 3)


def test_error_message_mentions_location():
    with pytest.raises(ParseError, match=r"line 1, column 3"):
        ev("1 ? 2")


def test_split_top_level():
    assert split_top_level("(a, b), c") == ["(a, b)", " c"]
    assert split_top_level("a/(b,c),d") == ["a/(b,c)", "d"]


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6))
def test_sum_of_literals(values):
    text = " + ".join(f"({v})" for v in values)
    assert ev(text) == sum(values)
