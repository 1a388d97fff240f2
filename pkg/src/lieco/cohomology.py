"""Second Lie algebra cohomology with trivial real coefficients.

A 2-cochain is an antisymmetric matrix ``gamma[i][j] = Gamma(X_i, X_j)``.  As a
vector it is listed by its entries ``(i, j)`` with ``i < j`` in lexicographic
order; every basis returned here is ordered by pivot position in that list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import LieAlgebra, as_vector, check_jacobi, make_algebra
from .errors import DimensionMismatch, DivergenceError, NotACoboundary, NotASubalgebra, NotClosed
from .linalg import Matrix, identity, min_norm_solve, nullspace, row_space_basis, to_fraction


def pair_index(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


@dataclass(frozen=True)
class AlgebraTwoCocycle:
    """Antisymmetric bilinear form on the algebra (closedness checked separately)."""

    gamma: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def zero(cls, n: int) -> "AlgebraTwoCocycle":
        return cls(tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_pairs(cls, n: int, entries: Mapping[tuple[int, int], object]) -> "AlgebraTwoCocycle":
        g = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in entries.items():
            if i == j:
                if to_fraction(v) != 0:
                    raise ValueError("diagonal cocycle entries must vanish")
                continue
            g[i][j] += to_fraction(v)
            g[j][i] -= to_fraction(v)
        return cls(tuple(tuple(r) for r in g))

    @classmethod
    def from_vector(cls, n: int, vec: Sequence) -> "AlgebraTwoCocycle":
        return cls.from_pairs(n, dict(zip(pair_index(n), vec)))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence]) -> "AlgebraTwoCocycle":
        g = tuple(tuple(to_fraction(x) for x in row) for row in rows)
        n = len(g)
        for i in range(n):
            if len(g[i]) != n:
                raise DimensionMismatch("cocycle matrix must be square")
            for j in range(n):
                if g[i][j] != -g[j][i]:
                    raise ValueError(f"cocycle matrix is not antisymmetric at ({i}, {j})")
        return cls(g)

    @property
    def dim(self) -> int:
        return len(self.gamma)

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return sum(
            (to_fraction(x[i]) * self.gamma[i][j] * to_fraction(y[j]) for i in range(self.dim) for j in range(self.dim)),
            Fraction(0),
        )

    def as_vector(self) -> list[Fraction]:
        return [self.gamma[i][j] for i, j in pair_index(self.dim)]

    def is_zero(self) -> bool:
        return not any(self.as_vector())

    def __add__(self, other: "AlgebraTwoCocycle") -> "AlgebraTwoCocycle":
        return AlgebraTwoCocycle.from_vector(self.dim, [a + b for a, b in zip(self.as_vector(), other.as_vector())])

    def scaled(self, s) -> "AlgebraTwoCocycle":
        s = to_fraction(s)
        return AlgebraTwoCocycle.from_vector(self.dim, [s * a for a in self.as_vector()])


def _closure_rows(algebra: LieAlgebra) -> Matrix:
    """One linear constraint per triple i<j<k on the (i<j)-entry unknowns."""
    n = algebra.dim
    pairs = pair_index(n)
    col = {p: a for a, p in enumerate(pairs)}
    rows = []
    for i, j, k in itertools.combinations(range(n), 3):
        row = [Fraction(0)] * len(pairs)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m in range(n):
                cm = algebra.c(a, b, m)
                if cm and m != c:
                    if m < c:
                        row[col[(m, c)]] += cm
                    else:
                        row[col[(c, m)]] -= cm
        rows.append(row)
    return rows


def closedness_residual(algebra: LieAlgebra, gamma: AlgebraTwoCocycle) -> list[Fraction]:
    """Gamma([X_i,X_j],X_k) + cyclic, for every triple i<j<k."""
    vec = gamma.as_vector()
    return [sum((r * v for r, v in zip(row, vec)), Fraction(0)) for row in _closure_rows(algebra)]


def is_closed(algebra: LieAlgebra, gamma: AlgebraTwoCocycle) -> bool:
    return not any(closedness_residual(algebra, gamma))


def _require_closed(algebra: LieAlgebra, gamma: AlgebraTwoCocycle) -> None:
    if gamma.dim != algebra.dim:
        raise DimensionMismatch(f"cocycle has dimension {gamma.dim}, algebra has {algebra.dim}")
    res = closedness_residual(algebra, gamma)
    bad = [t for t, r in zip(itertools.combinations(range(algebra.dim), 3), res) if r]
    if bad:
        names = algebra.basis_names
        i, j, k = bad[0]
        raise NotClosed(f"cocycle condition fails on ({names[i]}, {names[j]}, {names[k]})")


def cocycle_space(algebra: LieAlgebra) -> list[AlgebraTwoCocycle]:
    """Exact basis of Z^2, one element per free (i<j) entry."""
    n = algebra.dim
    rows = _closure_rows(algebra)
    basis = nullspace(rows, ncols=len(pair_index(n)))
    return [AlgebraTwoCocycle.from_vector(n, v) for v in basis]


def coboundary_of(algebra: LieAlgebra, mu: Sequence) -> AlgebraTwoCocycle:
    """Gamma_mu(X, Y) = mu([X, Y])."""
    mu = as_vector(algebra, mu)
    n = algebra.dim
    return AlgebraTwoCocycle.from_pairs(
        n, {(i, j): sum((mu[k] * algebra.c(i, j, k) for k in range(n)), Fraction(0)) for i, j in pair_index(n)}
    )


def _coboundary_map(algebra: LieAlgebra) -> Matrix:
    """Matrix (pairs x dim) of mu -> Gamma_mu."""
    n = algebra.dim
    return [[algebra.c(i, j, k) for k in range(n)] for i, j in pair_index(n)]


def coboundary_space(algebra: LieAlgebra) -> list[AlgebraTwoCocycle]:
    """Exact basis of B^2 in reduced echelon form over the (i<j) entries."""
    n = algebra.dim
    gens = [coboundary_of(algebra, algebra.basis_vector(k)).as_vector() for k in range(n)]
    return [AlgebraTwoCocycle.from_vector(n, v) for v in row_space_basis(gens)]


@dataclass(frozen=True)
class H2Report:
    z2_dim: int
    b2_dim: int
    h2_dim: int
    z2_basis: tuple[AlgebraTwoCocycle, ...]
    b2_basis: tuple[AlgebraTwoCocycle, ...]


def h2(algebra: LieAlgebra) -> H2Report:
    z = cocycle_space(algebra)
    b = coboundary_space(algebra)
    return H2Report(len(z), len(b), len(z) - len(b), tuple(z), tuple(b))


@dataclass(frozen=True)
class H2Decomposition:
    trivial: bool
    mu: tuple[Fraction, ...] | None
    representative: AlgebraTwoCocycle


def reduce_modulo_coboundaries(algebra: LieAlgebra, gamma: AlgebraTwoCocycle) -> AlgebraTwoCocycle:
    """Canonical representative: zero at every pivot entry of the B^2 basis."""
    vec = gamma.as_vector()
    for b in coboundary_space(algebra):
        bv = b.as_vector()
        p = next(a for a, x in enumerate(bv) if x)
        f = vec[p] / bv[p]
        if f:
            vec = [x - f * y for x, y in zip(vec, bv)]
    return AlgebraTwoCocycle.from_vector(algebra.dim, vec)


def h2_decompose(algebra: LieAlgebra, gamma: AlgebraTwoCocycle) -> H2Decomposition:
    """Decide whether a closed Gamma is a coboundary.

    When it is, ``mu`` is the least-norm solution of Gamma = Gamma_mu (mu is
    only defined modulo the annihilator {mu : Gamma_mu = 0}).
    """
    _require_closed(algebra, gamma)
    mu = min_norm_solve(_coboundary_map(algebra), gamma.as_vector())
    if mu is not None:
        return H2Decomposition(True, tuple(mu), AlgebraTwoCocycle.zero(algebra.dim))
    return H2Decomposition(False, None, reduce_modulo_coboundaries(algebra, gamma))


@dataclass(frozen=True)
class CentralExtension:
    """Base algebra extended by a central generator X_0 (placed last)."""

    base: LieAlgebra
    extended: LieAlgebra
    central_index: int
    cocycle: AlgebraTwoCocycle
    lambda0: tuple[Fraction, ...] | None = None

    def read_cocycle(self) -> AlgebraTwoCocycle:
        """Gamma recovered from the X_0 component of the extended brackets."""
        n = self.base.dim
        z = self.central_index
        return AlgebraTwoCocycle.from_pairs(n, {(i, j): self.extended.c(i, j, z) for i, j in pair_index(n)})


def _central_name(names: Sequence[str]) -> str:
    name = "X0"
    while name in names:
        name += "_"
    return name


def _extend(algebra: LieAlgebra, gamma: AlgebraTwoCocycle, name: str | None) -> LieAlgebra:
    n = algebra.dim
    brackets = {}
    for i, j in pair_index(n):
        rhs = {k: algebra.c(i, j, k) for k in range(n) if algebra.c(i, j, k)}
        if gamma.gamma[i][j]:
            rhs[n] = gamma.gamma[i][j]
        brackets[(i, j)] = rhs
    names = algebra.basis_names + (_central_name(algebra.basis_names),)
    ext = make_algebra(name or f"{algebra.name}_ext", names, brackets)
    check_jacobi(ext)
    return ext


def central_extension(algebra: LieAlgebra, gamma: AlgebraTwoCocycle, name: str | None = None) -> CentralExtension:
    """[X_i, X_j] = C^k_ij X_k + Gamma_ij X_0, X_0 central."""
    _require_closed(algebra, gamma)
    return CentralExtension(algebra, _extend(algebra, gamma, name), algebra.dim, gamma)


def pseudo_extension(algebra: LieAlgebra, lambda0: Sequence, name: str | None = None) -> CentralExtension:
    """[X_i, X_j] = C^k_ij (X_k + lambda0_k X_0)."""
    l0 = as_vector(algebra, lambda0)
    gamma = coboundary_of(algebra, l0)
    return CentralExtension(algebra, _extend(algebra, gamma, name), algebra.dim, gamma, l0)


def trivialize_pseudo_extension(ext: CentralExtension) -> Matrix:
    """Basis change (columns = new generators in old coordinates) that removes X_0.

    New generators are X_i + mu_i X_0 with mu = lambda0 when the extension
    records it, otherwise a solution of Gamma = Gamma_mu.
    """
    mu = ext.lambda0
    if mu is None:
        dec = h2_decompose(ext.base, ext.cocycle)
        if not dec.trivial:
            raise NotACoboundary("extension cocycle is not a coboundary; no trivializing basis exists")
        mu = dec.mu
    n = ext.base.dim
    z = ext.central_index
    t = identity(n + 1)
    others = [a for a in range(n + 1) if a != z]
    for i, a in enumerate(others):
        t[z][a] = mu[i]
    return t


@dataclass(frozen=True)
class Contraction:
    algebra: LieAlgebra
    cocycle: AlgebraTwoCocycle | None
    weights: tuple[int, ...]


def iw_contraction(
    algebra: LieAlgebra,
    subalgebra_names: Sequence[str],
    gamma: AlgebraTwoCocycle | None = None,
    cocycle_scale: int = 1,
) -> Contraction:
    """Inonu-Wigner contraction with respect to the span of ``subalgebra_names``.

    Weights are 0 on the subalgebra and 1 elsewhere.  C^k_ij survives iff
    w_i + w_j - w_k == 0.  Gamma_ij is rescaled by eps^(w_i + w_j - s); it
    survives iff w_i + w_j == s and diverges if nonzero with w_i + w_j < s.
    """
    sub = [algebra.index(nm) for nm in subalgebra_names]
    if len(set(sub)) != len(sub):
        raise NotASubalgebra("repeated subalgebra generator")
    n = algebra.dim
    w = tuple(0 if a in sub else 1 for a in range(n))
    for i, j in itertools.combinations(sorted(sub), 2):
        for k in range(n):
            if w[k] == 1 and algebra.c(i, j, k):
                names = algebra.basis_names
                raise NotASubalgebra(f"[{names[i]}, {names[j]}] has a component along {names[k]}")
    brackets = {}
    for i, j in pair_index(n):
        brackets[(i, j)] = {k: algebra.c(i, j, k) for k in range(n) if algebra.c(i, j, k) and w[i] + w[j] == w[k]}
    contracted = make_algebra(f"{algebra.name}_contracted", algebra.basis_names, brackets)
    check_jacobi(contracted)
    new_gamma = None
    if gamma is not None:
        _require_closed(algebra, gamma)
        entries = {}
        for i, j in pair_index(n):
            v = gamma.gamma[i][j]
            if not v:
                continue
            e = w[i] + w[j] - cocycle_scale
            if e < 0:
                raise DivergenceError(algebra.basis_names[i], algebra.basis_names[j])
            if e == 0:
                entries[(i, j)] = v
        new_gamma = AlgebraTwoCocycle.from_pairs(n, entries)
    return Contraction(contracted, new_gamma, w)
