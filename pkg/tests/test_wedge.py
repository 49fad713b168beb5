"""Exact wedge arithmetic over the symbol basis."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from cvol.wedge import SymbolVector, WedgeExpr, combine, is_zero, sym, wedge

SYMBOLS = ["log_x", "log_1mx", "log_y", "log_1my", "log_xmy", "pi_i"]


def random_vector(rng: random.Random) -> SymbolVector:
    return SymbolVector(
        {s: rng.randint(-5, 5) for s in rng.sample(SYMBOLS, rng.randint(1, 4))}
    )


def test_self_wedge_vanishes():
    x = sym("log_x")
    assert is_zero(wedge(x, x))


def test_alternation_with_sum():
    a, b = sym("log_x"), sym("log_y")
    # (a + b) ^ b = a ^ b
    assert wedge(a + b, b) == wedge(a, b)


def test_expansion_example():
    # (log x + 2 pi i) ^ (-log(1-x) + pi i)
    left = sym("log_x") + sym("pi_i", 2)
    right = -sym("log_1mx") + sym("pi_i")
    result = wedge(left, right)
    expected = combine(
        [
            (-1, wedge(sym("log_x"), sym("log_1mx"))),
            (1, wedge(sym("log_x"), sym("pi_i"))),
            (2, wedge(sym("log_1mx"), sym("pi_i"))),
        ]
    )
    assert result == expected


def test_combine_cancels():
    w = wedge(sym("log_x"), sym("log_y"))
    assert is_zero(combine([(1, w), (-1, w)]))


def test_combine_accumulates():
    w = wedge(sym("log_x"), sym("log_y"))
    assert combine([(2, w), (3, w)]) == 5 * w


def test_is_zero_on_empty():
    assert is_zero(WedgeExpr())


def test_is_zero_negative():
    assert not is_zero(wedge(sym("log_x"), sym("log_y")))


def test_canonical_pair_order():
    forward = wedge(sym("log_x"), sym("pi_i"))
    backward = wedge(sym("pi_i"), sym("log_x"))
    assert forward == -1 * backward


@given(st.integers(-6, 6), st.integers(-6, 6), st.data())
@settings(max_examples=200)
def test_bilinearity(m, n, data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    a, b, c = (random_vector(rng) for _ in range(3))
    lhs = wedge(m * a + n * b, c)
    rhs = combine([(m, wedge(a, c)), (n, wedge(b, c))])
    assert lhs == rhs


@given(st.data())
@settings(max_examples=200)
def test_antisymmetry(data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    a, b = random_vector(rng), random_vector(rng)
    assert is_zero(wedge(a, b) + wedge(b, a))
