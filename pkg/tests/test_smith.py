"""Smith normal form against the minor-gcd oracle and hand cases."""
import random

import pytest

from corrkit.smith import integer_solve, invariant_factors, smith_normal_form

from oracles import int_det, minor_gcd_invariant_factors


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def test_hand_cases():
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert invariant_factors([[1, 0], [0, 1]]) == [1, 1]
    assert invariant_factors([[0]]) == []
    assert invariant_factors([[4, 2], [2, 4]]) == [2, 6]


def test_decomposition_shape():
    m = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    u, s, v = smith_normal_form(m)
    assert _matmul(_matmul(u, m), v) == s
    assert abs(int_det(u)) == 1
    assert abs(int_det(v)) == 1
    diag = [s[i][i] for i in range(3)]
    for a, b in zip(diag, diag[1:]):
        if b:
            assert a and b % a == 0


def test_against_minor_gcd_oracle_random():
    rng = random.Random(90125)
    for _ in range(150):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        assert invariant_factors(m) == minor_gcd_invariant_factors(m), m


def test_zero_and_rectangular():
    u, s, v = smith_normal_form([[0, 0, 0]])
    assert s == [[0, 0, 0]]
    assert invariant_factors([[0, 0], [0, 0]]) == []
    assert invariant_factors([[3], [6]]) == [3]


def test_integer_solve():
    m = [[2, 0], [0, 3]]
    assert integer_solve(m, [4, 9]) == [2, 3]
    assert integer_solve(m, [1, 0]) is None
    # underdetermined but solvable
    x = integer_solve([[1, 1]], [5])
    assert x is not None and x[0] + x[1] == 5


def test_torsion_detected():
    # Z^2 / <(2,0),(0,2)> has two factors of 2
    assert invariant_factors([[2, 0], [0, 2]]) == [2, 2]
    # and a unimodular change of basis does not alter them
    assert invariant_factors([[2, 2], [0, 2]]) == [2, 2]


@pytest.mark.parametrize("m", [
    [[1]],
    [[0, 1], [1, 0]],
    [[6, 10, 15]],
    [[2, 3], [3, 2], [1, 1]],
])
def test_oracle_agreement_fixed(m):
    assert invariant_factors(m) == minor_gcd_invariant_factors(m)
