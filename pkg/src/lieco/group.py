"""Group-level objects: coordinate realizations and the identities they must satisfy.

Everything here is double precision.  Conventions, fixed once:

* ``Ad(g)`` is the matrix of X -> g X g^-1 acting on algebra column vectors.
* ``Coad(g) = Ad(g^-1)^T`` acts on coalgebra column vectors, so that
  ``(Coad(g) mu)(X) = mu(Ad(g^-1) X)``.
* Right-invariant fields generate left translations:
  ``X^R_i(g) = d/dt (exp(t X_i) * g)``.
* The differential of a 1-cochain F at the identity is the matrix
  ``D[i][j] = dF_i / dg^j``; for Noether invariants it reproduces the algebra
  cocycle Gamma_0 entrywise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .algebra import LieAlgebra
from .cohomology import AlgebraTwoCocycle
from .errors import ChartOverflow, UnsupportedDegree
from .symplectic import CompactGeneratorDatum

FD_STEP = 1e-6
# second derivatives divide by h^2; a larger step keeps round-off below 1e-8
FD_STEP_OUTER = 1e-4


@dataclass(frozen=True)
class Casimir:
    """Polynomial orbit invariant declared by the catalog."""

    name: str
    formula: str
    fn: Callable[[np.ndarray], float] = field(repr=False, compare=False)

    def __call__(self, mu) -> float:
        return float(self.fn(np.asarray(mu, dtype=float)))


@dataclass(frozen=True)
class GroupCocycle:
    """A U(1) exponent xi on a realization together with its algebra cocycle.

    ``lam`` is set when xi is the coboundary of a generating function, and
    ``noether`` when the catalog provides a closed form for F(g).
    """

    name: str
    xi: Callable[[np.ndarray, np.ndarray], float] = field(repr=False, compare=False)
    gamma0: AlgebraTwoCocycle
    lam: Callable[[np.ndarray], float] | None = field(default=None, repr=False, compare=False)
    noether: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False, compare=False)
    casimirs: tuple[Casimir, ...] = ()
    description: str = ""


@dataclass(frozen=True)
class GroupRealization:
    """A group in a single coordinate chart with a faithful matrix representation.

    Coordinates are chosen so that exp(t X_i) has coordinates t e_i.
    """

    name: str
    algebra: LieAlgebra
    law: Callable[[np.ndarray, np.ndarray], np.ndarray] = field(repr=False)
    inverse: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    ad: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    to_matrix: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    from_matrix: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    basis_matrices: tuple[np.ndarray, ...] = field(repr=False)
    cocycles: tuple[GroupCocycle, ...] = ()
    casimirs: tuple[Casimir, ...] = ()
    compact_data: tuple[CompactGeneratorDatum, ...] = ()
    chart_box: tuple[tuple[float, float], ...] = ()
    sample_box: tuple[tuple[float, float], ...] = ()
    notes: tuple[str, ...] = ()
    description: str = ""

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def identity(self) -> np.ndarray:
        return np.zeros(self.dim)

    def cocycle(self, name: str) -> GroupCocycle:
        for c in self.cocycles:
            if c.name == name:
                return c
        raise KeyError(f"{self.name} has no cocycle named {name!r}")

    def exp_map(self, x: Sequence[float], t: float = 1.0) -> np.ndarray:
        """Coordinates of exp(t X) computed in the matrix representation."""
        from scipy.linalg import expm

        m = sum(float(c) * b for c, b in zip(x, self.basis_matrices))
        return self.from_matrix(expm(t * m))


class GroupElement(NamedTuple):
    """Coordinates plus an optional U(1) phase theta (zeta = exp(i theta))."""

    coords: np.ndarray
    phase: float | None = None


def wrap_phase(theta: float) -> float:
    """Representative in (-pi, pi]."""
    r = math.remainder(theta, 2 * math.pi)
    return math.pi if r == -math.pi else r


def extended_law(real: GroupRealization, cocycle: GroupCocycle, g1: GroupElement, g2: GroupElement) -> GroupElement:
    """(g', zeta') * (g, zeta) = (g' g, zeta' zeta exp(i xi(g', g)))."""
    c1, c2 = np.asarray(g1.coords, float), np.asarray(g2.coords, float)
    theta = (g1.phase or 0.0) + (g2.phase or 0.0) + cocycle.xi(c1, c2)
    return GroupElement(real.law(c1, c2), wrap_phase(theta))


def sample(real: GroupRealization, rng: np.random.Generator, n: int) -> np.ndarray:
    box = np.asarray(real.sample_box, float)
    return rng.uniform(box[:, 0], box[:, 1], size=(n, real.dim))


def coad(real: GroupRealization, g) -> np.ndarray:
    """Coad(g) = Ad(g^-1)^T."""
    return real.ad(real.inverse(np.asarray(g, float))).T


def ad_from_matrix(real: GroupRealization, m: np.ndarray) -> np.ndarray:
    """Ad by conjugation in the matrix representation (independent of the chart)."""
    minv = np.linalg.inv(m)
    basis = np.array([b.ravel() for b in real.basis_matrices]).T
    cols = [np.linalg.lstsq(basis, (m @ b @ minv).ravel(), rcond=None)[0] for b in real.basis_matrices]
    return np.real(np.array(cols).T)


# -- cochains -----------------------------------------------------------------


def group_coboundary(real: GroupRealization | None, action: str, n: int, cochain: Callable, elements: Sequence):
    """(delta gamma_n)(g_1, ..., g_{n+1}).

    ``action`` is ``"trivial"`` (real values) or ``"coad"`` (coalgebra
    vectors, acted on by Coad of ``real``).  ``cochain`` takes n coordinate
    arrays; for n = 0 it takes none.
    """
    if n < 0 or n > 3:
        raise UnsupportedDegree(f"coboundary of degree {n} not supported")
    g = [np.asarray(e, float) for e in elements]
    if len(g) != n + 1:
        raise ValueError(f"degree {n} coboundary needs {n + 1} elements")
    if action == "trivial":
        act = lambda h, v: v  # noqa: E731
    elif action == "coad":
        act = lambda h, v: coad(real, h) @ np.asarray(v, float)  # noqa: E731
    else:
        raise ValueError(f"unknown action {action!r}")
    total = act(g[0], cochain(*g[1:]))
    for i in range(1, n + 1):
        merged = g[: i - 1] + [real.law(g[i - 1], g[i])] + g[i + 1 :]
        total = total + (-1) ** i * np.asarray(cochain(*merged))
    total = total + (-1) ** (n + 1) * np.asarray(cochain(*g[:n]))
    return total


def coboundary_from_lambda(real: GroupRealization, lam: Callable, g1, g2) -> float:
    """xi_lambda(g', g) = lambda(g' g) - lambda(g') - lambda(g), lambda shifted so lambda(e) = 0."""
    g1, g2 = np.asarray(g1, float), np.asarray(g2, float)
    l0 = lam(real.identity)
    return (lam(real.law(g1, g2)) - l0) - (lam(g1) - l0) - (lam(g2) - l0)


def xi_of_lambda(real: GroupRealization, lam: Callable) -> Callable:
    return lambda g1, g2: coboundary_from_lambda(real, lam, g1, g2)


def verify_group_two_cocycle(real: GroupRealization, xi: Callable, samples: int, seed: int) -> float:
    """Largest |(delta xi)(g1, g2, g3)| over random triples (trivial action)."""
    rng = np.random.default_rng(seed)
    pts = sample(real, rng, 3 * samples).reshape(samples, 3, real.dim)
    return max(abs(float(group_coboundary(real, "trivial", 2, xi, t))) for t in pts)


# -- derivatives ----------------------------------------------------------------


def _grad(f: Callable[[np.ndarray], object], x: np.ndarray, h: float) -> np.ndarray:
    """Central differences; rows are partial derivatives."""
    x = np.asarray(x, float)
    out = []
    for i in range(len(x)):
        e = np.zeros_like(x)
        e[i] = h
        out.append((np.asarray(f(x + e), float) - np.asarray(f(x - e), float)) / (2 * h))
    return np.array(out)


def lambda_gradient(real: GroupRealization, lam: Callable, h: float = FD_STEP) -> tuple[np.ndarray, float]:
    """lambda0_i = d lambda / d g^i at e, with an O(h^2) error estimate from a 2h step."""
    g1 = _grad(lam, real.identity, h)
    g2 = _grad(lam, real.identity, 2 * h)
    return g1, float(np.max(np.abs(g1 - g2))) if len(g1) else 0.0


def gamma_from_xi(real: GroupRealization, xi: Callable, h: float = FD_STEP_OUTER) -> np.ndarray:
    """Gamma_ij = d2 xi / dg'^i dg^j - d2 xi / dg'^j dg^i at (e, e)."""
    n = real.dim
    a = np.zeros((n, n))
    e = np.eye(n) * h
    for i in range(n):
        for j in range(n):
            a[i, j] = (xi(e[i], e[j]) - xi(e[i], -e[j]) - xi(-e[i], e[j]) + xi(-e[i], -e[j])) / (4 * h * h)
    return a - a.T


def left_invariant_fields(real: GroupRealization, g, h: float = FD_STEP) -> np.ndarray:
    """Column i holds X^L_i(g) = d/dt (g * exp(t X_i))."""
    g = np.asarray(g, float)
    return _grad(lambda k: real.law(g, k), real.identity, h).T


def right_invariant_fields(real: GroupRealization, g, h: float = FD_STEP) -> np.ndarray:
    """Column i holds X^R_i(g) = d/dt (exp(t X_i) * g)."""
    g = np.asarray(g, float)
    return _grad(lambda k: real.law(k, g), real.identity, h).T


def left_invariant_forms(real: GroupRealization, g, h: float = FD_STEP) -> np.ndarray:
    """Row i holds theta^{L(i)} in the coordinate coframe dg^j."""
    return np.linalg.inv(left_invariant_fields(real, g, h))


@dataclass(frozen=True)
class ThetaEvaluation:
    """Theta at a point: dg-components and the d(zeta)/(i zeta) component."""

    base_point: np.ndarray
    dual_components: np.ndarray
    phase_component: float = 1.0


def theta_components(real: GroupRealization, xi: Callable, g, h: float = FD_STEP) -> np.ndarray:
    g = np.asarray(g, float)
    ginv = real.inverse(g)
    return _grad(lambda k: xi(ginv, k), g, h)


def theta_at(real: GroupRealization, cocycle: GroupCocycle | str, g, h: float = FD_STEP) -> ThetaEvaluation:
    """Theta = d zeta / (i zeta) + d xi(g', g)/d g^i |_{g' = g^-1} dg^i."""
    if isinstance(cocycle, str):
        cocycle = real.cocycle(cocycle)
    g = np.asarray(g, float)
    return ThetaEvaluation(g, theta_components(real, cocycle.xi, g, h), 1.0)


def noether_numeric(real: GroupRealization, xi: Callable, g, h: float = FD_STEP) -> np.ndarray:
    """F_i(g) = Theta(X~^R_i(g)), including the phase part of the extended field."""
    g = np.asarray(g, float)
    phase_part = _grad(lambda k: xi(k, g), real.identity, h)
    return phase_part + right_invariant_fields(real, g, h).T @ theta_components(real, xi, g, h)


def noether_invariants(real: GroupRealization, cocycle: GroupCocycle | str, g, method: str = "auto") -> np.ndarray:
    """Noether invariants F(g); ``method`` is ``auto`` (closed form if declared), ``numeric`` or ``closed``."""
    if isinstance(cocycle, str):
        cocycle = real.cocycle(cocycle)
    g = np.asarray(g, float)
    if method == "closed" or (method == "auto" and cocycle.noether is not None):
        if cocycle.noether is None:
            raise ValueError(f"{cocycle.name} has no closed-form Noether invariants")
        return np.asarray(cocycle.noether(g), float)
    if method not in ("auto", "numeric"):
        raise ValueError(f"unknown method {method!r}")
    return noether_numeric(real, cocycle.xi, g)


def noether_differential(
    real: GroupRealization, cocycle: GroupCocycle | str, method: str = "numeric", h: float = FD_STEP
) -> np.ndarray:
    """D[i][j] = dF_i/dg^j at the identity."""
    return _grad(lambda g: noether_invariants(real, cocycle, g, method), real.identity, h).T


# -- actions --------------------------------------------------------------------


def extended_coadjoint(real: GroupRealization, cocycle: GroupCocycle | str, g, mu, mu_zeta: float, method: str = "auto"):
    """(Coad(g) mu + mu_zeta F(g), mu_zeta)."""
    g = np.asarray(g, float)
    out = coad(real, g) @ np.asarray(mu, float)
    if mu_zeta:
        out = out + mu_zeta * noether_invariants(real, cocycle, g, method)
    return out, float(mu_zeta)


def coad_deformed(real: GroupRealization, gamma: Callable | None, g, mu) -> np.ndarray:
    """Coad_gamma(g) mu = Coad(g) mu + gamma(g)."""
    g = np.asarray(g, float)
    out = coad(real, g) @ np.asarray(mu, float)
    return out if gamma is None else out + np.asarray(gamma(g), float)


def symplectic_coboundary_of_lambda(real: GroupRealization, lambda0, g) -> np.ndarray:
    """gamma_lambda(g) = Coad(g) lambda0 - lambda0; depends on lambda only through lambda0."""
    l0 = np.asarray(lambda0, float)
    return coad(real, g) @ l0 - l0


def omega_float(algebra: LieAlgebra, mu, gamma: AlgebraTwoCocycle | np.ndarray | None = None) -> np.ndarray:
    """Float version of omega_ij = Gamma_ij + mu([X_i, X_j])."""
    n = algebra.dim
    c = np.array([[[float(algebra.c(i, j, k)) for k in range(n)] for j in range(n)] for i in range(n)])
    w = np.einsum("ijk,k->ij", c, np.asarray(mu, float)) if n else np.zeros((0, 0))
    if gamma is not None:
        g = gamma if isinstance(gamma, np.ndarray) else np.array([[float(x) for x in r] for r in gamma.gamma])
        w = w + g
    return w


def ad_equivariance_check(real: GroupRealization, lambda0, g) -> float:
    """max |Coad(g) Omega(l0) Coad(g)^T - Omega(Coad(g) l0)|.

    Omega(l0)_ij = l0([X_i, X_j]).  Transporting the form with Ad(g^-1)
    (equivalently Coad(g) on the coalgebra index) is the orientation under
    which the identity holds; at g = e it is trivially exact.
    """
    g = np.asarray(g, float)
    l0 = np.asarray(lambda0, float)
    cg = coad(real, g)
    lhs = cg @ omega_float(real.algebra, l0) @ cg.T
    rhs = omega_float(real.algebra, cg @ l0)
    return float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0

