"""Sampled numerical verification of group-level identities for a realization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CatalogSelfTestFailure
from .group import (
    GroupCocycle,
    GroupRealization,
    ad_equivariance_check,
    coad,
    extended_coadjoint,
    group_coboundary,
    noether_differential,
    noether_invariants,
    sample,
    symplectic_coboundary_of_lambda,
    verify_group_two_cocycle,
)

COCYCLE_TOL = 1e-9
EQUIVARIANCE_TOL = 1e-9
DIFFERENTIAL_TOL = 1e-4


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tol


def random_cochain(real: GroupRealization, action: str, rng: np.random.Generator):
    """A smooth nonlinear 1-cochain with random coefficients."""
    n = real.dim
    a = rng.normal(size=(n, n))
    b = rng.normal(size=n)
    if action == "trivial":
        return lambda g: float(np.sin(b @ g) + 0.5 * g @ a @ g)
    c = rng.normal(size=(n, n))
    return lambda g: c @ np.tanh(a @ g + b) + 0.25 * (g @ g) * b


def nilpotency_residual(real: GroupRealization, action: str, samples: int, seed: int) -> float:
    """max |delta(delta gamma_1)| over random triples."""
    rng = np.random.default_rng(seed)
    g1 = random_cochain(real, action, rng)

    def d1(x, y):
        return group_coboundary(real, action, 1, g1, (x, y))

    pts = sample(real, rng, 3 * samples).reshape(samples, 3, real.dim)
    return max(float(np.max(np.abs(group_coboundary(real, action, 2, d1, t)))) for t in pts)


def noether_cocycle_residual(
    real: GroupRealization, cocycle: GroupCocycle, samples: int, seed: int, method: str = "numeric"
) -> float:
    """max |F(g'g) - Coad(g')F(g) - F(g')| over random pairs."""
    rng = np.random.default_rng(seed)
    pts = sample(real, rng, 2 * samples).reshape(samples, 2, real.dim)
    worst = 0.0
    for g1, g2 in pts:
        f = lambda g: noether_invariants(real, cocycle, g, method)  # noqa: E731
        r = f(real.law(g1, g2)) - coad(real, g1) @ f(g2) - f(g1)
        worst = max(worst, float(np.max(np.abs(r))))
    return worst


def _gamma0(cocycle: GroupCocycle) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in cocycle.gamma0.gamma])


def differential_checks(real: GroupRealization, cocycle: GroupCocycle) -> tuple[float, float]:
    """(antisymmetry of dF at e, relative error of dF at e against Gamma0).

    Relative error uses max(1, |Gamma0_ij|) so vanishing entries are compared absolutely.
    """
    d = noether_differential(real, cocycle, "numeric")
    g0 = _gamma0(cocycle)
    anti = float(np.max(np.abs(d + d.T)))
    rel = float(np.max(np.abs(d - g0) / np.maximum(1.0, np.abs(g0))))
    return anti, rel


def equivariance_residual(real: GroupRealization, samples: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    pts = sample(real, rng, samples)
    lam = rng.normal(size=(samples, real.dim))
    return max(ad_equivariance_check(real, l0, g) for g, l0 in zip(pts, lam))


def translation_residual(real: GroupRealization, cocycle: GroupCocycle | None, samples: int, seed: int) -> float:
    """max |Coad_{gamma + Delta_mu}(g) mu0 + mu - Coad_gamma(g)(mu + mu0)| with gamma = F."""
    rng = np.random.default_rng(seed)
    pts = sample(real, rng, samples)
    worst = 0.0
    for g in pts:
        mu, mu0 = rng.normal(size=real.dim), rng.normal(size=real.dim)
        cg = coad(real, g)
        gam = noether_invariants(real, cocycle, g) if cocycle is not None else np.zeros(real.dim)
        lhs = cg @ mu0 + gam + symplectic_coboundary_of_lambda(real, mu, g) + mu
        rhs = cg @ (mu + mu0) + gam
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def extended_action_residual(real: GroupRealization, cocycle: GroupCocycle, samples: int, seed: int) -> float:
    """Action axiom of the extended coadjoint action on random (g', g, mu, mu_zeta)."""
    rng = np.random.default_rng(seed)
    pts = sample(real, rng, 2 * samples).reshape(samples, 2, real.dim)
    worst = 0.0
    for g1, g2 in pts:
        mu, mz = rng.normal(size=real.dim), float(rng.normal())
        step, z = extended_coadjoint(real, cocycle, g2, mu, mz)
        two, _ = extended_coadjoint(real, cocycle, g1, step, z)
        one, _ = extended_coadjoint(real, cocycle, real.law(g1, g2), mu, mz)
        worst = max(worst, float(np.max(np.abs(two - one))))
    return worst


def verify_realization(real: GroupRealization, samples: int = 1000, seed: int = 42, tol: float = 1e-8) -> list[Check]:
    """Run every sampled check; ``tol`` applies to the 1e-8 class of identities."""
    from .catalog import self_test

    checks = []
    try:
        for key, value in sorted(self_test(real, seed=seed, pairs=min(samples, 200), triples=samples).items()):
            checks.append(Check(f"realization.{key}", float(value), _self_test_tol(key)))
    except CatalogSelfTestFailure as exc:
        checks.append(Check(f"realization.{exc.invariant}", float("inf"), 0.0))
    pairs = max(1, samples // 2)
    for action in ("trivial", "coad"):
        checks.append(Check(f"nilpotency.{action}", nilpotency_residual(real, action, pairs, seed), tol))
    checks.append(Check("ad_equivariance", equivariance_residual(real, pairs, seed), EQUIVARIANCE_TOL))
    checks.append(Check("translation.undeformed", translation_residual(real, None, min(samples, 200), seed), tol))
    for c in real.cocycles:
        checks.append(Check(f"{c.name}.cocycle_identity", verify_group_two_cocycle(real, c.xi, samples, seed), COCYCLE_TOL))
        checks.append(Check(f"{c.name}.noether_cocycle", noether_cocycle_residual(real, c, samples, seed), tol))
        anti, rel = differential_checks(real, c)
        checks.append(Check(f"{c.name}.noether_differential_antisymmetry", anti, DIFFERENTIAL_TOL))
        checks.append(Check(f"{c.name}.noether_differential_vs_gamma0", rel, DIFFERENTIAL_TOL))
        checks.append(Check(f"{c.name}.translation", translation_residual(real, c, min(samples, 200), seed), tol))
        checks.append(Check(f"{c.name}.extended_action", extended_action_residual(real, c, min(samples, 500), seed), tol))
    return checks


def _self_test_tol(key: str) -> float:
    table = {
        "law_identity": 1e-12,
        "law_inverse": 1e-12,
        "matrix_rep": 1e-10,
        "ad_homomorphism": 1e-9,
        "ad_conjugation": 1e-9,
        "one_parameter_coords": 1e-10,
        "ad_differential": 1e-6,
    }
    if key in table:
        return table[key]
    suffix = key.rsplit(".", 1)[-1]
    return {"cocycle_identity": 1e-9, "noether_closed_form": 1e-7}.get(suffix, 1e-6)
