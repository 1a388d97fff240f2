from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lieco.linalg import fmt, inverse, matmul, min_norm_solve, nullspace, rank, rref, solve

from conftest import sym

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_and_rref_match_sympy(m):
    ref, piv = sympy.Matrix(sym(m)).rref()
    got, pivots = rref(m)
    assert rank(m) == sym(m).rank()
    assert tuple(pivots) == tuple(piv)
    assert sym(got) == ref


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_nullspace_spans_sympy_kernel(m):
    ns = nullspace(m)
    oracle = sym(m).nullspace()
    assert len(ns) == len(oracle)
    for v in ns:
        assert all(x == 0 for x in sym(m) * sympy.Matrix([sympy.Rational(str(x)) for x in v]))


@settings(max_examples=50, deadline=None)
@given(matrices(4, 4), st.lists(entries, min_size=4, max_size=4))
def test_min_norm_solution_is_orthogonal_to_kernel(m, x):
    cols = len(m[0])
    x = x[:cols]
    b = [sum((a * y for a, y in zip(row, x)), Fraction(0)) for row in m]
    mu = min_norm_solve(m, b)
    assert mu is not None
    assert [sum((a * y for a, y in zip(row, mu)), Fraction(0)) for row in m] == b
    for k in nullspace(m):
        assert sum((a * y for a, y in zip(k, mu)), Fraction(0)) == 0


def test_inconsistent_system_has_no_solution():
    assert solve([[1, 1], [2, 2]], [1, 3]) is None
    assert min_norm_solve([[1, 1], [2, 2]], [1, 3]) is None


def test_inverse_roundtrip():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert matmul(a, inverse(a)) == [[1, 0], [0, 1]]


def test_fmt():
    assert fmt(Fraction(-3, 6)) == "-1/2"
    assert fmt(4) == "4"
