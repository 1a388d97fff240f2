"""Presymplectic forms, characteristic subalgebras and the integrality test."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import LieAlgebra, as_vector, bracket, coad_matrix, pair
from .cohomology import AlgebraTwoCocycle, _require_closed
from .errors import DimensionMismatch
from .linalg import Matrix, matvec, nullspace, rank, transpose


@dataclass(frozen=True)
class PresymplecticForm:
    """omega_ij = Gamma_ij + lambda0([X_i, X_j]).

    ``basis`` is a rational basis (columns) in which omega becomes the
    standard form: pairs (e_a, f_a) with omega(e_a, f_a) = 1 followed by a
    kernel basis.
    """

    omega: tuple[tuple[Fraction, ...], ...]
    lambda0: tuple[Fraction, ...]
    gamma: AlgebraTwoCocycle | None
    rank: int
    basis: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        n = len(self.omega)
        return sum((x[i] * self.omega[i][j] * y[j] for i in range(n) for j in range(n)), Fraction(0))


def omega_matrix(algebra: LieAlgebra, lambda0: Sequence, gamma: AlgebraTwoCocycle | None = None) -> Matrix:
    l0 = as_vector(algebra, lambda0)
    n = algebra.dim
    if gamma is not None and gamma.dim != n:
        raise DimensionMismatch(f"cocycle has dimension {gamma.dim}, algebra has {n}")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            v = sum((l0[k] * algebra.c(i, j, k) for k in range(n)), Fraction(0))
            if gamma is not None:
                v += gamma.gamma[i][j]
            row.append(v)
        out.append(row)
    return out


def _skew(w: Matrix, u, v) -> Fraction:
    return sum((u[i] * w[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j]), Fraction(0))


def symplectic_basis(w: Matrix) -> tuple[Matrix, int]:
    """Skew Gram-Schmidt over Q.

    Returns (vectors, r): vectors e_1..e_r, f_1..f_r, then kernel vectors,
    with w(e_a, f_b) = delta_ab and all other pairings zero.
    """
    n = len(w)
    pool = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    es, fs = [], []
    while True:
        hit = None
        for a, u in enumerate(pool):
            for b in range(a + 1, len(pool)):
                s = _skew(w, u, pool[b])
                if s:
                    hit = (a, b, s)
                    break
            if hit:
                break
        if hit is None:
            break
        a, b, s = hit
        e = pool[a]
        f = [x / s for x in pool[b]]
        rest = [v for c, v in enumerate(pool) if c not in (a, b)]
        pool = []
        for v in rest:
            wf = _skew(w, v, f)
            we = _skew(w, v, e)
            pool.append([x - wf * y + we * z for x, y, z in zip(v, e, f)])
        es.append(e)
        fs.append(f)
    return es + fs + pool, len(es)


def presymplectic_matrix(
    algebra: LieAlgebra,
    lambda0: Sequence,
    gamma: AlgebraTwoCocycle | None = None,
) -> PresymplecticForm:
    if gamma is not None:
        _require_closed(algebra, gamma)
    w = omega_matrix(algebra, lambda0, gamma)
    vecs, r = symplectic_basis(w)
    rk = rank(w) if w else 0
    assert rk == 2 * r
    return PresymplecticForm(
        tuple(tuple(row) for row in w),
        as_vector(algebra, lambda0),
        gamma,
        rk,
        tuple(tuple(v) for v in transpose(vecs)) if vecs else (),
    )


def is_subalgebra(algebra: LieAlgebra, vectors: Sequence[Sequence]) -> bool:
    """Whether the span of ``vectors`` is closed under the bracket."""
    if not vectors:
        return True
    span = [list(v) for v in vectors]
    base_rank = rank(span)
    for a in range(len(span)):
        for b in range(a + 1, len(span)):
            if rank(span + [list(bracket(algebra, span[a], span[b]))]) != base_rank:
                return False
    return True


def characteristic_subalgebra(
    algebra: LieAlgebra,
    lambda0: Sequence,
    gamma: AlgebraTwoCocycle | None = None,
) -> list[tuple[Fraction, ...]]:
    """Kernel of omega: vectors Y with sum_i Y^i omega_ij = 0 for all j."""
    if gamma is not None:
        _require_closed(algebra, gamma)
    w = omega_matrix(algebra, lambda0, gamma)
    kernel = [tuple(v) for v in nullspace(transpose(w), ncols=algebra.dim)]
    if gamma is None or gamma.is_zero():
        # kernel of lambda0([., .]) is the isotropy algebra of lambda0
        assert is_subalgebra(algebra, kernel), "characteristic kernel not closed under bracket"
    return kernel


def isotropy_subalgebra(algebra: LieAlgebra, mu: Sequence) -> list[tuple[Fraction, ...]]:
    """{Y : coad(Y) mu = 0}, assembled column by column from coad_matrix."""
    mu = as_vector(algebra, mu)
    n = algebra.dim
    cols = [matvec(coad_matrix(algebra, algebra.basis_vector(i)), mu) for i in range(n)]
    return [tuple(v) for v in nullspace(transpose(cols), ncols=n)]


def coad_deformed_infinitesimal(
    algebra: LieAlgebra,
    gamma: AlgebraTwoCocycle | None,
    x: Sequence,
    mu: Sequence,
) -> tuple[Fraction, ...]:
    """coad X (mu) + Gamma(X, .)."""
    x = as_vector(algebra, x)
    out = matvec(coad_matrix(algebra, x), as_vector(algebra, mu))
    if gamma is not None:
        n = algebra.dim
        out = [out[j] + sum((x[i] * gamma.gamma[i][j] for i in range(n)), Fraction(0)) for j in range(n)]
    return tuple(out)


def orbit_symplectic_form_at(
    algebra: LieAlgebra,
    gamma: AlgebraTwoCocycle | None,
    nu: Sequence,
    x: Sequence,
    y: Sequence,
) -> Fraction:
    """nu([X, Y]) + Gamma(X, Y)."""
    x, y = as_vector(algebra, x), as_vector(algebra, y)
    val = pair(as_vector(algebra, nu), bracket(algebra, x, y))
    if gamma is not None:
        val += gamma(x, y)
    return val


@dataclass(frozen=True)
class CompactGeneratorDatum:
    """A generator X with exp(period * X) = identity in the group."""

    generator: tuple[Fraction, ...]
    period: float
    label: str = ""

    def __post_init__(self):
        if not self.period > 0:
            raise ValueError("period must be positive")


@dataclass(frozen=True)
class IntegralityResult:
    integral: bool
    details: tuple[dict, ...]
    notes: tuple[str, ...] = ()


INTEGRALITY_TOL = 1e-9


def integrality_check(
    algebra: LieAlgebra,
    lambda0: Sequence,
    compact_data: Sequence[CompactGeneratorDatum],
    tol: float = INTEGRALITY_TOL,
) -> IntegralityResult:
    """lambda0(X) * T must lie in 2*pi*Z for every compact X in the isotropy algebra.

    Generators outside the characteristic subalgebra are skipped and reported.
    Each datum is checked on its own and the results are conjoined.
    """
    l0 = as_vector(algebra, lambda0)
    w = omega_matrix(algebra, l0)
    details = []
    ok = True
    for d in compact_data:
        x = as_vector(algebra, d.generator)
        label = d.label or str([str(v) for v in x])
        if any(matvec(transpose(w), list(x))):
            details.append({"generator": label, "status": "skipped", "reason": "not in characteristic subalgebra"})
            continue
        phase = float(pair(l0, x)) * d.period
        k = round(phase / (2 * math.pi))
        good = abs(phase - 2 * math.pi * k) <= tol
        ok = ok and good
        details.append(
            {
                "generator": label,
                "status": "checked",
                "period": d.period,
                "phase": phase,
                "winding": phase / (2 * math.pi),
                "integral": good,
            }
        )
    notes = ()
    if sum(1 for d in details if d["status"] == "checked") > 1:
        notes = ("compact directions are checked independently and conjoined",)
    return IntegralityResult(ok, tuple(details), notes)
