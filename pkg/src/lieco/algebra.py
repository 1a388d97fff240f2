"""Finite-dimensional real Lie algebras given by rational structure constants.

Convention: ``[X_i, X_j] = sum_k C^k_ij X_k``.  Only entries with ``i < j`` are
stored; the rest follow by antisymmetry.

The infinitesimal coadjoint action follows ``coad X (mu)(Y) = mu([X, Y])``
with no extra minus sign.  The more common convention ``-coad^T`` is one
transpose and one sign away; converting is left to the caller.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import AntisymmetryViolation, DimensionMismatch, JacobiViolation, ValidationError
from .linalg import Matrix, inverse, matvec, to_fraction

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants over Q with named basis.

    ``structure`` holds ``((i, j, k), C^k_ij)`` for ``i < j`` and nonzero
    values only, sorted, so two algebras compare equal iff their tables do.
    Build instances with :func:`make_algebra` or :func:`validate_algebra`.
    """

    name: str
    basis_names: tuple[str, ...]
    structure: tuple[tuple[tuple[int, int, int], Fraction], ...]
    _dense: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.basis_names)
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), v in self.structure:
            c[i][j][k] = v
            c[j][i][k] = -v
        object.__setattr__(self, "_dense", tuple(tuple(tuple(row) for row in plane) for plane in c))

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def c(self, i: int, j: int, k: int) -> Fraction:
        return self._dense[i][j][k]

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self._dense[i][j]

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError(f"unknown basis element {name!r} in algebra {self.name}") from None

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(a == i)) for a in range(self.dim))

    def is_abelian(self) -> bool:
        return not self.structure


def make_algebra(name: str, basis_names: Sequence[str], brackets: Mapping) -> LieAlgebra:
    """Build (without validation) from ``{(i, j): {k: coeff}}`` with integer or name keys."""
    names = tuple(basis_names)
    idx = {n: a for a, n in enumerate(names)}

    def key(x):
        return idx[x] if isinstance(x, str) else int(x)

    acc: dict[tuple[int, int, int], Fraction] = {}
    for (a, b), rhs in brackets.items():
        i, j = key(a), key(b)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for target, coeff in rhs.items():
            k = key(target)
            acc[(i, j, k)] = acc.get((i, j, k), Fraction(0)) + sign * to_fraction(coeff)
    structure = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
    return LieAlgebra(name, names, structure)


def _check(n, vec, what="vector"):
    if len(vec) != n:
        raise DimensionMismatch(f"{what} has length {len(vec)}, algebra has dimension {n}")


def as_vector(algebra: LieAlgebra, x: Sequence) -> Vector:
    _check(algebra.dim, x)
    return tuple(to_fraction(v) for v in x)


def jacobi_residual(algebra: LieAlgebra, i: int, j: int, k: int) -> Vector:
    """[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]."""
    n = algebra.dim
    out = [Fraction(0)] * n
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for m in range(n):
            cm = algebra.c(a, b, m)
            if cm:
                for l in range(n):
                    out[l] += cm * algebra.c(m, c, l)
    return tuple(out)


def validate_algebra(
    raw: Mapping,
    basis_names: Sequence[str],
    name: str = "g",
) -> LieAlgebra:
    """Check antisymmetry and Jacobi exactly and return the algebra.

    ``raw`` maps basis-name pairs ``(A, B)`` to ``{C: coeff}`` and stands for
    ``[A, B] = sum coeff C``.  A pair may appear in both orders only if the two
    right-hand sides are negatives of each other.
    """
    names = tuple(basis_names)
    if len(set(names)) != len(names):
        raise ValidationError("basis names are not distinct")
    idx = {nm: a for a, nm in enumerate(names)}
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (a, b), rhs in raw.items():
        for nm in (a, b, *rhs):
            if nm not in idx:
                raise ValidationError(f"unknown basis element {nm!r}")
        i, j = idx[a], idx[b]
        vals = {idx[k]: to_fraction(v) for k, v in rhs.items()}
        if i == j:
            nz = [k for k, v in vals.items() if v != 0]
            if nz:
                raise AntisymmetryViolation(a, a, names[nz[0]], f"[{a},{a}] must vanish")
            continue
        table[(i, j)] = vals
    for (i, j), vals in table.items():
        if (j, i) in table and i < j:
            other = table[(j, i)]
            for k in sorted(set(vals) | set(other)):
                if vals.get(k, 0) != -other.get(k, 0):
                    raise AntisymmetryViolation(names[i], names[j], names[k])
    brackets = {(i, j): vals for (i, j), vals in table.items() if i < j or (j, i) not in table}
    algebra = make_algebra(name, names, brackets)
    check_jacobi(algebra)
    return algebra


def check_jacobi(algebra: LieAlgebra) -> None:
    for i, j, k in itertools.combinations(range(algebra.dim), 3):
        res = jacobi_residual(algebra, i, j, k)
        if any(res):
            names = algebra.basis_names
            raise JacobiViolation(names[i], names[j], names[k], res)


def bracket(algebra: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    """([X, Y])^k = sum_ij X^i Y^j C^k_ij."""
    x = as_vector(algebra, x)
    y = as_vector(algebra, y)
    n = algebra.dim
    out = [Fraction(0)] * n
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if not y[j]:
                continue
            w = x[i] * y[j]
            row = algebra.bracket_basis(i, j)
            for k in range(n):
                if row[k]:
                    out[k] += w * row[k]
    return tuple(out)


def ad_matrix(algebra: LieAlgebra, x: Sequence) -> Matrix:
    """Matrix of Y -> [X, Y] acting on column vectors."""
    x = as_vector(algebra, x)
    n = algebra.dim
    return [
        [sum((x[i] * algebra.c(i, j, k) for i in range(n)), Fraction(0)) for j in range(n)]
        for k in range(n)
    ]


def coad_matrix(algebra: LieAlgebra, x: Sequence) -> Matrix:
    """Matrix M with (M mu)_j = mu([X, X_j]) = sum_{i,k} X^i C^k_ij mu_k."""
    x = as_vector(algebra, x)
    n = algebra.dim
    return [
        [sum((x[i] * algebra.c(i, j, k) for i in range(n)), Fraction(0)) for k in range(n)]
        for j in range(n)
    ]


def coad(algebra: LieAlgebra, x: Sequence, mu: Sequence) -> Vector:
    return tuple(matvec(coad_matrix(algebra, x), as_vector(algebra, mu)))


def pair(mu: Sequence, x: Sequence) -> Fraction:
    """Dual pairing mu(X)."""
    return sum((to_fraction(a) * to_fraction(b) for a, b in zip(mu, x)), Fraction(0))


def change_basis(algebra: LieAlgebra, t: Matrix, basis_names: Sequence[str] | None = None) -> LieAlgebra:
    """Structure constants in the basis Y_a = sum_b t[b][a] X_b (columns of t)."""
    n = algebra.dim
    if len(t) != n or any(len(row) != n for row in t):
        raise DimensionMismatch("basis change must be a square matrix of the algebra dimension")
    tinv = inverse(t)
    cols = [[t[b][a] for b in range(n)] for a in range(n)]
    brackets = {}
    for a in range(n):
        for c in range(a + 1, n):
            v = bracket(algebra, cols[a], cols[c])
            coords = matvec(tinv, v)
            brackets[(a, c)] = {k: coords[k] for k in range(n) if coords[k]}
    return make_algebra(algebra.name, basis_names or algebra.basis_names, brackets)
