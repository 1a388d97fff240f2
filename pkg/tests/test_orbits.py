import math

import numpy as np
import pytest

from lieco import catalog
from lieco.cohomology import AlgebraTwoCocycle
from lieco.orbits import (
    DISTINCT,
    EQUIVALENT,
    INCONCLUSIVE,
    act,
    orbit_invariants,
    pseudo_class_equivalent,
    same_orbit,
    symplectomorphism_witness_check,
)


def sound(real, verdict, mu1, mu2, cocycle=None, tol=1e-7):
    assert verdict.status == EQUIVALENT
    assert verdict.residual < 1e-8
    assert symplectomorphism_witness_check(real, mu2, mu1, verdict.witness, cocycle) < tol


def test_invariant_examples():
    su2 = catalog.get("su2")
    p = orbit_invariants(su2.algebra, (0, 0, 1), None, su2.casimirs)
    assert p.omega_rank == 2 and dict(p.casimir_values)["radius2"] == 1
    p = orbit_invariants(su2.algebra, (0, 0, 0), None, su2.casimirs)
    assert p.omega_rank == 0 and dict(p.casimir_values)["radius2"] == 0
    ab = catalog.get("abelian2")
    weyl = ab.cocycle("weyl")
    p = orbit_invariants(ab.algebra, (5, -3), weyl.gamma0, weyl.casimirs)
    assert p.omega_rank == 2 and p.casimir_values == ()


def test_su2_rotation():
    su2 = catalog.get("su2")
    v = same_orbit(su2, (0, 0, 1), (1, 0, 0))
    sound(su2, v, (0, 0, 1), (1, 0, 0))
    # analytic witness: rotation by pi/2 about axis 2
    assert np.allclose(act(su2, None, (0, math.pi / 2, 0), (0, 0, 1)), (1, 0, 0), atol=1e-12)


def test_su2_distinct_radius():
    v = same_orbit(catalog.get("su2"), (0, 0, 1), (0, 0, 2))
    assert v.status == DISTINCT
    s = v.separating_invariant
    assert s.name == "radius2" and (s.value1, s.value2) == (1, 4)


def test_weyl_plane_is_one_deformed_orbit():
    ab = catalog.get("abelian2")
    v = same_orbit(ab, (1, 2), (0, 0), "weyl")
    sound(ab, v, (1, 2), (0, 0), "weyl")
    # oracle: F(g) = (b, -a) so Coad_F(g)(1, 2) = (1 + b, 2 - a) = 0 at g = (2, -1)
    assert np.allclose(v.witness, (2, -1), atol=1e-8)


def test_pseudo_class_collapse():
    ab = catalog.get("abelian2")
    v = pseudo_class_equivalent(ab, (1, 0), (0, 1))
    assert v.status == DISTINCT and v.separating_invariant.name.startswith("fixed_point")
    v = pseudo_class_equivalent(ab, (1, 0), (0, 1), "weyl")
    sound(ab, v, (1, 0), (0, 1), "weyl")


def test_identity_witness():
    su2 = catalog.get("su2")
    assert symplectomorphism_witness_check(su2, (0.3, 0.1, 2), (0.3, 0.1, 2), (0, 0, 0)) == 0


def test_wrong_witness_fails():
    su2 = catalog.get("su2")
    assert symplectomorphism_witness_check(su2, (1, 0, 0), (0, 0, 1), (0.3, 0, 0)) > 0.1


@pytest.mark.parametrize("name", ["su2", "sl2r", "galilei11", "poincare11", "heisenberg1", "abelian2"])
def test_reflexivity(name):
    real = catalog.get(name)
    rng = np.random.default_rng(21)
    for _ in range(100):
        mu = tuple(float(x) for x in rng.normal(size=real.dim))
        v = same_orbit(real, mu, mu)
        assert v.status == EQUIVALENT and v.residual == 0


CASES = [
    ("su2", None, (0, 0, 1), (1, 0, 0)),
    ("su2", None, (0, 0, 1), (0, 0, 2)),
    ("su2", None, (0.6, 0, 0.8), (0, -1, 0)),
    ("su2", "pseudo", (0, 0, 1), (0, 2, -1)),
    ("su2", "pseudo", (0, 0, 1), (0, 1, -1)),
    ("sl2r", None, (0, 0, 1), (0, 0.75, 1.25)),
    ("sl2r", None, (0, 0, 1), (0, 0, -1)),
    ("galilei11", None, (0, 1, 0), (0, 1, 3)),
    ("galilei11", "mass", (1, 0, 0), (1.5, 1, 0)),
    ("galilei11", "mass", (1, 0, 0), (2, 0, 0)),
    ("poincare11", None, (2, 1, 0), (2.5, 2, 0)),
    ("poincare11", "pseudo_mass", (1, 1, 0), (2, 0, 0)),
    ("heisenberg1", None, (0, 0, 1), (3, -2, 1)),
    ("heisenberg1", None, (0, 0, 1), (0, 0, 2)),
    ("abelian2", "weyl", (1, 2), (-4, 0.5)),
]


@pytest.mark.parametrize("name,cocycle,mu1,mu2", CASES)
def test_soundness_and_symmetry(name, cocycle, mu1, mu2):
    real = catalog.get(name)
    fwd = same_orbit(real, mu1, mu2, cocycle)
    back = same_orbit(real, mu2, mu1, cocycle)
    assert {fwd.status, back.status} != {EQUIVALENT, DISTINCT}
    for v, a, b in ((fwd, mu1, mu2), (back, mu2, mu1)):
        if v.status == EQUIVALENT:
            sound(real, v, a, b, cocycle)


@pytest.mark.parametrize("name,cocycle,mu1,mu2", CASES)
def test_separating_invariants_are_constant_on_orbits(name, cocycle, mu1, mu2):
    real = catalog.get(name)
    v = same_orbit(real, mu1, mu2, cocycle)
    if v.status != DISTINCT or v.separating_invariant.name in ("omega_rank",) or v.separating_invariant.name.startswith("fixed_point"):
        return
    c = real.cocycle(cocycle) if cocycle else None
    cas = {k.name: k for k in (c.casimirs if c else real.casimirs)}[v.separating_invariant.name]
    rng = np.random.default_rng(5)
    box = np.asarray(real.chart_box)
    for t in rng.uniform(box[:, 0] * 0.3, box[:, 1] * 0.3, size=(10, real.dim)):
        moved = act(real, c, t, np.asarray(mu1, float))
        assert abs(cas(moved) - cas(mu1)) < 1e-6 * max(1.0, abs(cas(mu1)))


def test_expected_verdicts():
    got = {(n, c, m1, m2): same_orbit(catalog.get(n), m1, m2, c).status for n, c, m1, m2 in CASES}
    # deformed su2 orbits are spheres centred at -lambda0 = (0, 0, -1)
    assert got[("su2", "pseudo", (0, 0, 1), (0, 2, -1))] == EQUIVALENT
    assert got[("su2", "pseudo", (0, 0, 1), (0, 1, -1))] == DISTINCT
    # the two sheets of mu1^2 + mu2^2 - mu3^2 = -1 share every declared invariant
    assert got[("sl2r", None, (0, 0, 1), (0, 0, -1))] == INCONCLUSIVE
    assert got[("galilei11", "mass", (1, 0, 0), (2, 0, 0))] == DISTINCT
    assert got[("heisenberg1", None, (0, 0, 1), (0, 0, 2))] == DISTINCT


def test_search_is_deterministic():
    su2 = catalog.get("su2")
    a = same_orbit(su2, (0, 0, 1), (0.6, 0, 0.8), seed=7)
    b = same_orbit(su2, (0, 0, 1), (0.6, 0, 0.8), seed=7)
    assert a == b


def test_inconclusive_when_budget_is_tiny():
    su2 = catalog.get("su2")
    v = same_orbit(su2, (0, 0, 1), (1, 0, 0), restarts=1, budget=1)
    assert v.status == INCONCLUSIVE and v.witness is None and v.residual > 1e-8


def test_screen_uses_deformed_omega():
    ab = catalog.get("abelian2")
    g = AlgebraTwoCocycle.from_pairs(2, {(0, 1): 1})
    assert orbit_invariants(ab.algebra, (0, 0), g).omega_rank == 2
    assert orbit_invariants(ab.algebra, (0, 0)).omega_rank == 0
