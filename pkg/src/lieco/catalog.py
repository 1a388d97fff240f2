"""Compiled-in group realizations.

Each entry carries a closed-form group law and Ad, a faithful matrix
representation, declared exponents xi with their algebra cocycles, orbit
invariants and compact generators.  Declared closed forms are never taken on
trust: :func:`self_test` checks them when the catalog is first loaded.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from .algebra import make_algebra
from .cohomology import AlgebraTwoCocycle, coboundary_of
from .errors import CatalogSelfTestFailure, ChartOverflow
from .group import (
    Casimir,
    GroupCocycle,
    GroupRealization,
    ad_from_matrix,
    gamma_from_xi,
    lambda_gradient,
    noether_numeric,
    sample,
    verify_group_two_cocycle,
    xi_of_lambda,
)
from .symplectic import CompactGeneratorDatum

SAMPLE_BOX = 0.8


def _e(n, i, j, dtype=float):
    m = np.zeros((n, n), dtype=dtype)
    m[i, j] = 1
    return m


def _box(n, r):
    return tuple((-r, r) for _ in range(n))


def _pseudo(real_ad, inverse, lambda0):
    l0 = np.asarray(lambda0, float)
    return lambda g: real_ad(inverse(g)).T @ l0 - l0


# -- abelian R^2 ----------------------------------------------------------------


def abelian2() -> GroupRealization:
    alg = make_algebra("abelian2", ["X1", "X2"], {})
    weyl = GroupCocycle(
        "weyl",
        xi=lambda g1, g2: 0.5 * (g1[0] * g2[1] - g1[1] * g2[0]),
        gamma0=AlgebraTwoCocycle.from_pairs(2, {(0, 1): 1}),
        noether=lambda g: np.array([g[1], -g[0]]),
        description="xi((a',b'),(a,b)) = (a'b - b'a)/2",
    )
    return GroupRealization(
        name="abelian2",
        algebra=alg,
        law=lambda g1, g2: np.asarray(g1, float) + np.asarray(g2, float),
        inverse=lambda g: -np.asarray(g, float),
        ad=lambda g: np.eye(2),
        to_matrix=lambda g: np.array([[1.0, 0, g[0]], [0, 1, g[1]], [0, 0, 1]]),
        from_matrix=lambda m: np.array([m[0, 2], m[1, 2]]),
        basis_matrices=(_e(3, 0, 2), _e(3, 1, 2)),
        cocycles=(weyl,),
        chart_box=_box(2, 6.0),
        sample_box=_box(2, SAMPLE_BOX),
        description="R^2 with coordinates (a, b)",
    )


# -- Heisenberg -------------------------------------------------------------------


def _heis_law(g1, g2):
    a1, b1, p1 = g1
    a2, b2, p2 = g2
    return np.array([a1 + a2, b1 + b2, p1 + p2 + 0.5 * (a1 * b2 - b1 * a2)])


def _heis_ad(g):
    a, b, _ = g
    return np.array([[1.0, 0, 0], [0, 1, 0], [-b, a, 1]])


def heisenberg1() -> GroupRealization:
    alg = make_algebra("heisenberg1", ["X1", "X2", "X3"], {("X1", "X2"): {"X3": 1}})
    inverse = lambda g: -np.asarray(g, float)  # noqa: E731
    l0 = (0, 0, 1)
    central = GroupCocycle(
        "pseudo_central",
        xi=None,
        gamma0=coboundary_of(alg, l0),
        lam=lambda g: g[2],
        noether=_pseudo(_heis_ad, inverse, l0),
        casimirs=(Casimir("central", "mu3 + 1", lambda m: m[2] + 1),),
        description="coboundary of lambda(a,b,phi) = phi",
    )
    real = GroupRealization(
        name="heisenberg1",
        algebra=alg,
        law=_heis_law,
        inverse=inverse,
        ad=_heis_ad,
        to_matrix=lambda g: np.array([[1.0, g[0], g[2] + 0.5 * g[0] * g[1]], [0, 1, g[1]], [0, 0, 1]]),
        from_matrix=lambda m: np.array([m[0, 1], m[1, 2], m[0, 2] - 0.5 * m[0, 1] * m[1, 2]]),
        basis_matrices=(_e(3, 0, 1), _e(3, 1, 2), _e(3, 0, 2)),
        cocycles=(central,),
        casimirs=(Casimir("central", "mu3", lambda m: m[2]),),
        chart_box=_box(3, 6.0),
        sample_box=_box(3, SAMPLE_BOX),
        description="central extension of abelian2 by its Weyl cocycle; coordinates (a, b, phi)",
    )
    return _bind_lambda(real)


def _bind_lambda(real: GroupRealization) -> GroupRealization:
    """Fill in xi = xi_lambda for cocycles declared only through lambda."""
    fixed = []
    for c in real.cocycles:
        if c.xi is None:
            c = GroupCocycle(c.name, xi_of_lambda(real, c.lam), c.gamma0, c.lam, c.noether, c.casimirs, c.description)
        fixed.append(c)
    object.__setattr__(real, "cocycles", tuple(fixed))
    return real


# -- Galilei (1+1) ---------------------------------------------------------------


def _gal_law(g1, g2):
    b1, a1, v1 = g1
    b2, a2, v2 = g2
    return np.array([b1 + b2, a1 + a2 + v1 * b2, v1 + v2])


def _gal_inverse(g):
    b, a, v = g
    return np.array([-b, -a + v * b, -v])


def _gal_ad(g):
    b, a, v = g
    return np.array([[1.0, 0, 0], [v, 1, -b], [0, 0, 1]])


def galilei11(mass: int = 1) -> GroupRealization:
    alg = make_algebra("galilei11", ["H", "P", "K"], {("K", "H"): {"P": 1}})
    m = float(mass)
    mass_cocycle = GroupCocycle(
        "mass",
        xi=lambda g1, g2: -m * (g1[2] * g2[1] + 0.5 * g1[2] ** 2 * g2[0]),
        gamma0=AlgebraTwoCocycle.from_pairs(3, {(2, 1): -mass}),
        noether=lambda g: m * np.array([-0.5 * g[2] ** 2, g[2], g[2] * g[0] - g[1]]),
        casimirs=(Casimir("internal_energy", f"{mass}*mu_H + mu_P^2/2", lambda mu: m * mu[0] + 0.5 * mu[1] ** 2),),
        description=f"mass cocycle, m = {mass}: xi(g',g) = -m (v' a + v'^2 b / 2)",
    )
    return GroupRealization(
        name="galilei11",
        algebra=alg,
        law=_gal_law,
        inverse=_gal_inverse,
        ad=_gal_ad,
        to_matrix=lambda g: np.array([[1.0, 0, g[0]], [g[2], 1, g[1]], [0, 0, 1]]),
        from_matrix=lambda mt: np.array([mt[0, 2], mt[1, 2], mt[1, 0]]),
        basis_matrices=(_e(3, 0, 2), _e(3, 1, 2), _e(3, 1, 0)),
        cocycles=(mass_cocycle,),
        casimirs=(Casimir("momentum", "mu_P", lambda mu: mu[1]),),
        chart_box=_box(3, 6.0),
        sample_box=_box(3, SAMPLE_BOX),
        description="Galilei group in 1+1 dimensions; coordinates (b, a, v) = (time, space, boost)",
    )


# -- Poincare (1+1) ----------------------------------------------------------------


def _poi_law(g1, g2):
    b1, a1, x1 = g1
    b2, a2, x2 = g2
    ch, sh = math.cosh(x1), math.sinh(x1)
    return np.array([b1 + ch * b2 + sh * a2, a1 + sh * b2 + ch * a2, x1 + x2])


def _poi_inverse(g):
    b, a, x = g
    ch, sh = math.cosh(x), math.sinh(x)
    return np.array([-(ch * b - sh * a), -(ch * a - sh * b), -x])


def _poi_ad(g):
    b, a, x = g
    ch, sh = math.cosh(x), math.sinh(x)
    return np.array([[ch, sh, -a], [sh, ch, -b], [0, 0, 1.0]])


def poincare11(mass: int = 1) -> GroupRealization:
    alg = make_algebra("poincare11", ["H", "P", "K"], {("K", "H"): {"P": 1}, ("K", "P"): {"H": 1}})
    l0 = (-mass, 0, 0)
    pseudo = GroupCocycle(
        "pseudo_mass",
        xi=None,
        gamma0=coboundary_of(alg, l0),
        lam=lambda g: -mass * g[0],
        noether=_pseudo(_poi_ad, _poi_inverse, l0),
        casimirs=(
            Casimir("mass_shell", f"(mu_H - {mass})^2 - mu_P^2", lambda mu: (mu[0] - mass) ** 2 - mu[1] ** 2),
        ),
        description=f"pseudo-cocycle generated by lambda = -{mass} b (lambda0_H = -{mass})",
    )
    real = GroupRealization(
        name="poincare11",
        algebra=alg,
        law=_poi_law,
        inverse=_poi_inverse,
        ad=_poi_ad,
        to_matrix=lambda g: np.array(
            [[math.cosh(g[2]), math.sinh(g[2]), g[0]], [math.sinh(g[2]), math.cosh(g[2]), g[1]], [0, 0, 1.0]]
        ),
        from_matrix=lambda mt: np.array([mt[0, 2], mt[1, 2], math.asinh(mt[1, 0])]),
        basis_matrices=(_e(3, 0, 2), _e(3, 1, 2), _e(3, 0, 1) + _e(3, 1, 0)),
        cocycles=(pseudo,),
        casimirs=(Casimir("mass_shell", "mu_H^2 - mu_P^2", lambda mu: mu[0] ** 2 - mu[1] ** 2),),
        chart_box=_box(3, 6.0),
        sample_box=_box(3, SAMPLE_BOX),
        description="Poincare group in 1+1 dimensions (c = 1); coordinates (b, a, rapidity)",
    )
    return _bind_lambda(real)


# -- SU(2) -------------------------------------------------------------------------

_SIGMA = (
    np.array([[0, 1], [1, 0]], complex),
    np.array([[0, -1j], [1j, 0]], complex),
    np.array([[1, 0], [0, -1]], complex),
)
_SU2_BASIS = tuple(-0.5j * s for s in _SIGMA)
_I2 = np.eye(2, dtype=complex)


def _su2_one(k, t):
    return math.cos(t / 2) * _I2 - 1j * math.sin(t / 2) * _SIGMA[k]


def _su2_matrix(g):
    return _su2_one(0, g[0]) @ _su2_one(1, g[1]) @ _su2_one(2, g[2])


def _rot(k, t):
    c, s = math.cos(t), math.sin(t)
    if k == 0:
        return np.array([[1.0, 0, 0], [0, c, -s], [0, s, c]])
    if k == 1:
        return np.array([[c, 0, s], [0, 1.0, 0], [-s, 0, c]])
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1.0]])


def _su2_ad(g):
    return _rot(0, g[0]) @ _rot(1, g[1]) @ _rot(2, g[2])


def _su2_from_matrix(u):
    r = np.array([[float(np.real(-2 * np.trace(xk @ u @ xj @ u.conj().T))) for xj in _SU2_BASIS] for xk in _SU2_BASIS])
    s2 = min(1.0, max(-1.0, r[0, 2]))
    t2 = math.asin(s2)
    if math.cos(t2) < 1e-6:
        raise ChartOverflow("su2: second-kind coordinates are singular at |t2| = pi/2")
    t1 = math.atan2(-r[1, 2], r[2, 2])
    t3 = math.atan2(-r[0, 1], r[0, 0])
    g = np.array([t1, t2, t3])
    if np.max(np.abs(_su2_matrix(g) - u)) > 1e-8:
        # u and -u share a rotation; exp(2 pi X1) = -1 picks the other sheet
        g[0] = t1 - 2 * math.pi if t1 > 0 else t1 + 2 * math.pi
        if np.max(np.abs(_su2_matrix(g) - u)) > 1e-8:
            raise ChartOverflow("su2: coordinate extraction failed")
    return g


def su2() -> GroupRealization:
    alg = make_algebra(
        "su2", ["X1", "X2", "X3"], {("X1", "X2"): {"X3": 1}, ("X2", "X3"): {"X1": 1}, ("X3", "X1"): {"X2": 1}}
    )

    def law(g1, g2):
        return _su2_from_matrix(_su2_matrix(g1) @ _su2_matrix(g2))

    def inverse(g):
        return _su2_from_matrix(_su2_matrix(g).conj().T)

    l0 = (0, 0, 1)
    pseudo = GroupCocycle(
        "pseudo",
        xi=None,
        gamma0=coboundary_of(alg, l0),
        lam=lambda g: g[2],
        noether=_pseudo(_su2_ad, inverse, l0),
        casimirs=(Casimir("radius2", "mu1^2 + mu2^2 + (mu3 + 1)^2", lambda m: m[0] ** 2 + m[1] ** 2 + (m[2] + 1) ** 2),),
        description="pseudo-cocycle generated by lambda = t3 (lambda0 = (0, 0, 1))",
    )
    period = 4 * math.pi
    real = GroupRealization(
        name="su2",
        algebra=alg,
        law=law,
        inverse=inverse,
        ad=_su2_ad,
        to_matrix=_su2_matrix,
        from_matrix=_su2_from_matrix,
        basis_matrices=_SU2_BASIS,
        cocycles=(pseudo,),
        casimirs=(Casimir("radius2", "mu1^2 + mu2^2 + mu3^2", lambda m: m[0] ** 2 + m[1] ** 2 + m[2] ** 2),),
        compact_data=tuple(
            CompactGeneratorDatum(alg.basis_vector(k), period, alg.basis_names[k]) for k in range(3)
        ),
        chart_box=_box(3, math.pi),
        sample_box=_box(3, SAMPLE_BOX),
        description="SU(2), coordinates of the second kind exp(t1 X1) exp(t2 X2) exp(t3 X3), X_k = -i sigma_k / 2",
    )
    return _bind_lambda(real)


# -- SL(2, R) -----------------------------------------------------------------------

_SL2_BASIS = (
    np.array([[0.5, 0.0], [0.0, -0.5]]),
    np.array([[0.0, 0.5], [0.5, 0.0]]),
    np.array([[0.0, 0.5], [-0.5, 0.0]]),
)


def _sl2_one(k, t):
    h = t / 2
    if k == 0:
        return np.array([[math.exp(h), 0.0], [0.0, math.exp(-h)]])
    if k == 1:
        return np.array([[math.cosh(h), math.sinh(h)], [math.sinh(h), math.cosh(h)]])
    return np.array([[math.cos(h), math.sin(h)], [-math.sin(h), math.cos(h)]])


def _sl2_matrix(g):
    return _sl2_one(0, g[0]) @ _sl2_one(1, g[1]) @ _sl2_one(2, g[2])


def _sl2_from_matrix(m):
    p = m[0, 0] * m[1, 0] - m[0, 1] * m[1, 1]
    q = m[0, 0] * m[1, 1] + m[0, 1] * m[1, 0]
    base = math.atan2(-p, q)
    best = None
    for k in (0, -1, 1, -2, 2):
        t3 = base + k * math.pi
        n = m @ _sl2_one(2, -t3)
        if n[0, 0] <= 0 or n[1, 1] <= 0 or abs(n[0, 1] / n[0, 0]) >= 1:
            continue
        g = np.array([math.log(n[0, 0] / n[1, 1]), 2 * math.atanh(n[0, 1] / n[0, 0]), t3])
        if np.max(np.abs(_sl2_matrix(g) - m)) < 1e-8 * max(1.0, np.max(np.abs(m))):
            if best is None or abs(t3) < abs(best[2]):
                best = g
    if best is None:
        raise ChartOverflow("sl2r: coordinate extraction failed")
    return best


def _sl2_ad(g):
    t1, t2, t3 = g
    c1, s1 = math.cosh(t1), math.sinh(t1)
    c2, s2 = math.cosh(t2), math.sinh(t2)
    c3, s3 = math.cos(t3), math.sin(t3)
    a1 = np.array([[1.0, 0, 0], [0, c1, s1], [0, s1, c1]])
    a2 = np.array([[c2, 0, -s2], [0, 1.0, 0], [-s2, 0, c2]])
    a3 = np.array([[c3, s3, 0], [-s3, c3, 0], [0, 0, 1.0]])
    return a1 @ a2 @ a3


def sl2r() -> GroupRealization:
    alg = make_algebra(
        "sl2r", ["X1", "X2", "X3"], {("X1", "X2"): {"X3": 1}, ("X2", "X3"): {"X1": -1}, ("X3", "X1"): {"X2": -1}}
    )

    def law(g1, g2):
        return _sl2_from_matrix(_sl2_matrix(g1) @ _sl2_matrix(g2))

    def inverse(g):
        return _sl2_from_matrix(np.linalg.inv(_sl2_matrix(g)))

    l0 = (0, 0, 1)
    pseudo = GroupCocycle(
        "pseudo",
        xi=None,
        gamma0=coboundary_of(alg, l0),
        lam=lambda g: g[2],
        noether=_pseudo(_sl2_ad, inverse, l0),
        casimirs=(Casimir("killing", "mu1^2 + mu2^2 - (mu3 + 1)^2", lambda m: m[0] ** 2 + m[1] ** 2 - (m[2] + 1) ** 2),),
        description="pseudo-cocycle generated by lambda = t3 (lambda0 = (0, 0, 1))",
    )
    real = GroupRealization(
        name="sl2r",
        algebra=alg,
        law=law,
        inverse=inverse,
        ad=_sl2_ad,
        to_matrix=_sl2_matrix,
        from_matrix=_sl2_from_matrix,
        basis_matrices=_SL2_BASIS,
        cocycles=(pseudo,),
        casimirs=(Casimir("killing", "mu1^2 + mu2^2 - mu3^2", lambda m: m[0] ** 2 + m[1] ** 2 - m[2] ** 2),),
        compact_data=(CompactGeneratorDatum(alg.basis_vector(2), 4 * math.pi, "X3"),),
        chart_box=_box(3, 3.0),
        sample_box=_box(3, SAMPLE_BOX),
        notes=(
            "SL(2,R) is not simply connected and has multiply connected orbits; equivalence here is decided at "
            "the level of gradients lambda0 only, not of inequivalent pseudo-cocycles sharing a gradient.",
        ),
        description="SL(2,R), coordinates of the second kind; X1 = diag(1,-1)/2, X2 = sigma_1/2, X3 = i sigma_2/2",
    )
    return _bind_lambda(real)


# -- self test -------------------------------------------------------------------------

BUILDERS = {
    "abelian2": abelian2,
    "heisenberg1": heisenberg1,
    "galilei11": galilei11,
    "poincare11": poincare11,
    "su2": su2,
    "sl2r": sl2r,
}


def _fail(real, what, value, tol):
    if not value <= tol:
        raise CatalogSelfTestFailure(real.name, what, f"(residual {value:.3e} > {tol:.0e})")


def self_test(real: GroupRealization, seed: int = 0, pairs: int = 200, triples: int = 1000) -> dict[str, float]:
    """Check every GroupRealization invariant; raise CatalogSelfTestFailure on the first violation."""
    rng = np.random.default_rng(seed)
    n = real.dim
    out: dict[str, float] = {}
    gs = sample(real, rng, pairs)
    hs = sample(real, rng, pairs)
    e = real.identity

    out["law_identity"] = max(
        max(np.max(np.abs(real.law(e, g) - g)), np.max(np.abs(real.law(g, e) - g))) for g in gs
    )
    _fail(real, "law(identity, g) = g = law(g, identity)", out["law_identity"], 1e-12)
    out["law_inverse"] = max(np.max(np.abs(real.law(real.inverse(g), g))) for g in gs)
    _fail(real, "law(inverse(g), g) = identity", out["law_inverse"], 1e-12)
    out["matrix_rep"] = max(
        np.max(np.abs(real.to_matrix(real.law(g, h)) - real.to_matrix(g) @ real.to_matrix(h))) for g, h in zip(gs, hs)
    )
    _fail(real, "matrix representation is a homomorphism", out["matrix_rep"], 1e-10)
    out["ad_homomorphism"] = max(
        np.max(np.abs(real.ad(real.law(g, h)) - real.ad(g) @ real.ad(h))) for g, h in zip(gs, hs)
    )
    _fail(real, "Ad(g'g) = Ad(g')Ad(g)", out["ad_homomorphism"], 1e-9)
    out["ad_conjugation"] = max(np.max(np.abs(real.ad(g) - ad_from_matrix(real, real.to_matrix(g)))) for g in gs[:50])
    _fail(real, "Ad agrees with matrix conjugation", out["ad_conjugation"], 1e-9)
    out["one_parameter_coords"] = max(
        np.max(np.abs(real.exp_map(np.eye(n)[i], t) - t * np.eye(n)[i])) for i in range(n) for t in (-0.7, 0.3)
    )
    _fail(real, "exp(t X_i) has coordinates t e_i", out["one_parameter_coords"], 1e-10)
    h = 1e-5
    worst = 0.0
    for i in range(n):
        d = (real.ad(h * np.eye(n)[i]) - real.ad(-h * np.eye(n)[i])) / (2 * h)
        exact = np.array([[float(real.algebra.c(i, j, k)) for j in range(n)] for k in range(n)])
        worst = max(worst, float(np.max(np.abs(d - exact))))
    out["ad_differential"] = worst
    _fail(real, "d/dt Ad(exp(t X_i)) = ad(X_i)", worst, 1e-6)

    for c in real.cocycles:
        res = verify_group_two_cocycle(real, c.xi, triples, seed + 1)
        out[f"{c.name}.cocycle_identity"] = res
        _fail(real, f"{c.name}: 2-cocycle identity", res, 1e-9)
        g0 = np.array([[float(x) for x in row] for row in c.gamma0.gamma])
        res = float(np.max(np.abs(gamma_from_xi(real, c.xi) - g0)))
        out[f"{c.name}.gamma0"] = res
        _fail(real, f"{c.name}: Gamma0 = antisymmetrized mixed derivative of xi", res, 1e-6)
        if c.lam is not None:
            grad, _ = lambda_gradient(real, c.lam)
            res = float(np.max(np.abs(np.array([[float(x) for x in r] for r in coboundary_of(real.algebra, grad).gamma]) - g0)))
            out[f"{c.name}.lambda0"] = res
            _fail(real, f"{c.name}: Gamma0 = lambda0([.,.])", res, 1e-6)
        if c.noether is not None:
            res = max(float(np.max(np.abs(c.noether(g) - noether_numeric(real, c.xi, g)))) for g in gs[:20])
            out[f"{c.name}.noether_closed_form"] = res
            _fail(real, f"{c.name}: closed-form Noether invariants", res, 1e-7)
    return out


@functools.lru_cache(maxsize=None)
def _load(name: str) -> GroupRealization:
    real = BUILDERS[name]()
    self_test(real)
    return real


def get(name: str) -> GroupRealization:
    if name not in BUILDERS:
        raise KeyError(f"no catalog group named {name!r}; known: {', '.join(BUILDERS)}")
    return _load(name)


def catalog() -> list[GroupRealization]:
    return [get(name) for name in BUILDERS]


def find_by_algebra(algebra) -> GroupRealization | None:
    """Catalog entry whose algebra has the same basis names and structure constants."""
    for name in BUILDERS:
        real = get(name)
        if real.algebra.basis_names == algebra.basis_names and real.algebra.structure == algebra.structure:
            if real.name == algebra.name:
                return real
    for name in BUILDERS:
        real = get(name)
        if real.algebra.basis_names == algebra.basis_names and real.algebra.structure == algebra.structure:
            return real
    return None
