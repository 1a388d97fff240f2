from fractions import Fraction

import pytest
import sympy

from lieco import catalog
from lieco.algebra import make_algebra

CATALOG_NAMES = ("abelian2", "heisenberg1", "galilei11", "poincare11", "su2", "sl2r")


def alg(name):
    return catalog.get(name).algebra


@pytest.fixture(scope="session")
def algebras():
    return {n: alg(n) for n in CATALOG_NAMES}


@pytest.fixture(scope="session")
def su2():
    return catalog.get("su2")


def sym(m):
    """sympy Matrix from nested rationals (the independent oracle)."""
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])


def frac_rows(m):
    return [[Fraction(int(x.p), int(x.q)) for x in m.row(i)] for i in range(m.rows)]


def su2_by_hand():
    return make_algebra("su2", ["X1", "X2", "X3"], {("X1", "X2"): {"X3": 1}, ("X2", "X3"): {"X1": 1}, ("X3", "X1"): {"X2": 1}})


def random_rational(rng, lo=-5, hi=5, den=4):
    return Fraction(int(rng.integers(lo * den, hi * den + 1)), den)
