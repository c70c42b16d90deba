"""Exact rational linear algebra: solvers, spans, and the PSD test."""
from fractions import Fraction

import pytest

from corrkit.exactlinalg import (SpanSolver, det, express, frac, is_psd,
                                 nullspace, rank, rref, same_span, solve,
                                 sort_key, vadd, vclean, vec_repr, vscale)


def test_frac_accepts_strings_and_ints():
    assert frac("3/2") == Fraction(3, 2)
    assert frac(-4) == Fraction(-4)
    assert frac(Fraction(1, 3)) == Fraction(1, 3)


def test_vclean_drops_zeros():
    assert vclean({"a": Fraction(0), "b": Fraction(2)}) == {"b": Fraction(2)}


def test_vadd_cancels():
    u = {"a": Fraction(1), "b": Fraction(2)}
    v = {"a": Fraction(-1), "c": Fraction(1)}
    assert vadd(u, v) == {"b": Fraction(2), "c": Fraction(1)}


def test_sort_key_orders_mixed_types():
    keys = [("v", 2), "P1", 3, ("v", 1), 1, "A"]
    assert sorted(keys, key=sort_key) == [1, 3, "A", "P1", ("v", 1), ("v", 2)]


def test_sort_key_handles_tuples():
    items = [("v", 10), ("v", 2), "w1"]
    ordered = sorted(items, key=sort_key)
    assert ordered.index(("v", 2)) < ordered.index(("v", 10))


def test_vec_repr_deterministic():
    v = {"b": Fraction(1), "a": Fraction(-2)}
    assert vec_repr(v) == "(-2)*a + b" or vec_repr(v).count("a") == 1


def test_rref_identifies_pivots():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    _, pivots = rref(rows)
    assert pivots == [0, 1]
    assert rank(rows) == 2


def test_solve_consistent_and_inconsistent():
    a = [[1, 1], [0, 1]]
    assert solve(a, [3, 1]) == [Fraction(2), Fraction(1)]
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


def test_nullspace_annihilates():
    a = [[1, 2, 3], [0, 1, 1]]
    for v in nullspace(a):
        for row in a:
            assert sum(r * x for r, x in zip(row, v)) == 0
    assert len(nullspace(a)) == 1


def test_express_in_terms_of_generators():
    gens = [{"x": Fraction(1)}, {"x": Fraction(1), "y": Fraction(1)}]
    coeffs = express({"y": Fraction(2)}, gens)
    assert coeffs == [Fraction(-2), Fraction(2)]
    assert express({"z": Fraction(1)}, gens) is None


def test_span_solver_incremental():
    s = SpanSolver()
    assert s.add({"a": Fraction(1)})
    assert not s.add({"a": Fraction(7)})
    assert s.add({"b": Fraction(1)})
    assert s.dim == 2
    assert s.contains({"a": Fraction(2), "b": Fraction(-1)})
    assert not s.contains({"c": Fraction(1)})


def test_same_span():
    a = [{"x": Fraction(1)}, {"y": Fraction(1)}]
    b = [{"x": Fraction(1), "y": Fraction(1)}, {"x": Fraction(1), "y": Fraction(-1)}]
    assert same_span(a, b)
    assert not same_span(a, [{"x": Fraction(1)}])


def test_det_small():
    assert det([[2, 0], [0, 3]]) == 6
    assert det([[1, 2], [2, 4]]) == 0
    assert det([[0, 1], [1, 0]]) == -1


@pytest.mark.parametrize("g,expect", [
    ([[1, 0], [0, 1]], True),
    ([[1, 2], [2, 1]], False),
    ([[2, 1], [1, 2]], True),
    ([[0, 0], [0, 0]], True),
    ([[1, 1], [1, 1]], True),
])
def test_is_psd(g, expect):
    gm = [[Fraction(x) for x in row] for row in g]
    assert is_psd(gm) is expect
