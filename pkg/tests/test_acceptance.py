"""Acceptance criteria 1-12, each at its stated tolerance.

Every criterion prints one ``PASS``/``FAIL`` line.  Run with ``pytest
tests/test_acceptance.py -v`` or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
import scipy.linalg

sys.path.insert(0, str(Path(__file__).parent))

from lieco import catalog  # noqa: E402
from lieco.cli import run_command  # noqa: E402
from lieco.cohomology import AlgebraTwoCocycle, coboundary_of, cocycle_space, h2, h2_decompose, iw_contraction  # noqa: E402
from lieco.fileio import parse_algebra_file  # noqa: E402
from lieco.linalg import rank  # noqa: E402
from lieco.orbits import DISTINCT, EQUIVALENT, pseudo_class_equivalent, same_orbit, symplectomorphism_witness_check  # noqa: E402
from lieco.symplectic import characteristic_subalgebra, integrality_check, isotropy_subalgebra, presymplectic_matrix  # noqa: E402
from lieco.verify import differential_checks, nilpotency_residual, noether_cocycle_residual, translation_residual  # noqa: E402

DATA = Path(__file__).parent / "data"
SEED = 42


def report(label: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {label}: {detail}")


def _r(x):
    return Fraction(int(x), 4)


# -- criteria -------------------------------------------------------------------


def criterion_1():
    expected = {"galilei11": 2, "heisenberg1": 2, "su2": 0, "sl2r": 0, "poincare11": 1, "abelian2": 1}
    got, slow = {}, 0.0
    for name, want in expected.items():
        alg = parse_algebra_file((DATA / f"{name}.alg").read_text())
        t = time.perf_counter()
        got[name] = h2(alg).h2_dim
        slow = max(slow, time.perf_counter() - t)
    ok = got == expected and slow < 1.0
    return ok, f"h2 dims {got}, slowest {slow:.3f}s"


def _generation(sub, scale):
    p, g = catalog.get("poincare11").algebra, catalog.get("galilei11").algebra
    gamma = coboundary_of(p, (-1, 0, 0))  # mu_H = -m, m = 1
    before = h2_decompose(p, gamma).trivial
    con = iw_contraction(p, sub, gamma, scale)
    is_galilei = con.algebra.structure == g.structure
    after = h2_decompose(con.algebra, con.cocycle).trivial
    return is_galilei, before, after, con


def criterion_2():
    # no 0/1 weighting achieves it at s = 1: {H} kills Gamma_KP, {K} keeps [K,P] = H (still poincare11)
    rows = []
    ok = False
    for sub in (["H"], ["K"]):
        is_gal, before, after, con = _generation(sub, 1)
        rows.append(f"sub={sub}: galilei={is_gal} before_trivial={before} after_trivial={after}")
        ok = ok or (is_gal and before and not after)
    return ok, "s=1; " + "; ".join(rows)


def criterion_2_corrected():
    is_gal, before, after, con = _generation(["H"], 2)
    ok = is_gal and before and not after and con.cocycle == coboundary_of(catalog.get("poincare11").algebra, (-1, 0, 0))
    return ok, f"sub=[H], s=2: galilei={is_gal} before_trivial={before} after_trivial={after}"


def criterion_3():
    worst = 0.0
    for name in ("abelian2", "galilei11"):
        real = catalog.get(name)
        for action in ("trivial", "coad"):
            # a fresh random 1-cochain for each of the 500 triples
            worst = max(worst, max(nilpotency_residual(real, action, 1, SEED + k) for k in range(500)))
    return worst < 1e-8, f"max |delta delta gamma_1| = {worst:.2e} (tol 1e-8)"


def _cocycles():
    return [(real, c) for real in catalog.catalog() for c in real.cocycles]


def criterion_4():
    res, anti = 0.0, 0.0
    names = []
    for real, c in _cocycles():
        res = max(res, noether_cocycle_residual(real, c, 1000, SEED, method="numeric"))
        anti = max(anti, differential_checks(real, c)[0])
        names.append(f"{real.name}/{c.name}")
    ok = res < 1e-8 and anti < 1e-4
    return ok, f"{len(names)} cocycles, cocycle residual {res:.2e} (tol 1e-8), antisymmetry {anti:.2e} (tol 1e-4)"


def criterion_5():
    worst = max(differential_checks(real, c)[1] for real, c in _cocycles())
    return worst < 1e-4, f"max relative error of dF(e) vs Gamma0 = {worst:.2e} (tol 1e-4)"


def criterion_6():
    from lieco.group import ad_equivariance_check, sample

    worst = 0.0
    for name in ("su2", "abelian2"):
        real = catalog.get(name)
        rng = np.random.default_rng(SEED)
        for g in sample(real, rng, 500):
            worst = max(worst, ad_equivariance_check(real, rng.normal(size=real.dim), g))
    return worst < 1e-9, f"max residual {worst:.2e} over 500 samples each (tol 1e-9)"


def criterion_7():
    su2 = catalog.get("su2")
    t = time.perf_counter()
    eq = same_orbit(su2, (0, 0, 1), (1, 0, 0))
    ds = same_orbit(su2, (0, 0, 1), (0, 0, 2))
    wc = symplectomorphism_witness_check(su2, (1, 0, 0), (0, 0, 1), eq.witness) if eq.witness else math.inf
    took = time.perf_counter() - t
    ok = (
        eq.status == EQUIVALENT
        and eq.residual < 1e-8
        and ds.status == DISTINCT
        and ds.separating_invariant.name == "radius2"
        and wc < 1e-7
        and took < 10
    )
    return ok, f"{eq.status} residual {eq.residual:.1e}; {ds.status} via {ds.separating_invariant and ds.separating_invariant.name}; witness check {wc:.1e}; {took:.2f}s"


def criterion_8():
    ab = catalog.get("abelian2")
    plain = pseudo_class_equivalent(ab, (1, 0), (0, 1))
    weyl = pseudo_class_equivalent(ab, (1, 0), (0, 1), "weyl")
    sound = weyl.witness is not None and symplectomorphism_witness_check(ab, (0, 1), (1, 0), weyl.witness, "weyl") < 1e-7
    ok = weyl.status == EQUIVALENT and plain.status == DISTINCT and sound
    return ok, f"with Weyl cocycle: {weyl.status}; without: {plain.status}"


def criterion_9():
    bad = []
    rng = np.random.default_rng(SEED)
    for real in catalog.catalog():
        a = real.algebra
        z = [g.as_vector() for g in cocycle_space(a)]
        for _ in range(200):
            l0 = [_r(x) for x in rng.integers(-12, 13, a.dim)]
            coeffs = [_r(x) for x in rng.integers(-8, 9, len(z))]
            gamma = AlgebraTwoCocycle.from_vector(a.dim, [sum((c * v[i] for c, v in zip(coeffs, z)), Fraction(0)) for i in range(len(z[0]))])
            if presymplectic_matrix(a, l0, gamma).rank % 2:
                bad.append(f"{real.name}: odd rank")
            ker = characteristic_subalgebra(a, l0)
            iso = isotropy_subalgebra(a, l0)
            if len(ker) != len(iso) or (ker and rank([list(v) for v in ker + iso]) != len(ker)):
                bad.append(f"{real.name}: kernel mismatch at {l0}")
    return not bad, f"{len(catalog.catalog())} algebras x 200 samples; violations: {bad[:3] or 'none'}"


def criterion_10():
    su2 = catalog.get("su2")
    data = su2.compact_data
    accepted = [integrality_check(su2.algebra, (0, 0, Fraction(k, 2)), data).integral for k in (1, 2, 3)]
    rejected = not integrality_check(su2.algebra, (0, 0, Fraction(3, 10)), data).integral
    x3 = su2.basis_matrices[2]
    period = next(d.period for d in data if d.label == "X3")
    drift = float(np.max(np.abs(scipy.linalg.expm(period * x3) - np.eye(2))))
    ok = all(accepted) and rejected and drift < 1e-9
    return ok, f"accepts k/2 for k=1,2,3: {accepted}; rejects 3/10: {rejected}; |expm(T X3) - I| = {drift:.1e}"


def criterion_11():
    worst = 0.0
    for name, cname in (("abelian2", "weyl"), ("galilei11", "mass")):
        real = catalog.get(name)
        worst = max(worst, translation_residual(real, real.cocycle(cname), 200, SEED))
    return worst < 1e-8, f"max residual {worst:.2e} over 200 samples each (tol 1e-8)"


CLI_COMMANDS = [
    ["h2", "galilei11.alg"],
    ["h2", "heisenberg1.alg"],
    ["h2", "su2.alg"],
    ["h2", "sl2r.alg"],
    ["h2", "poincare11.alg"],
    ["h2", "abelian2.alg"],
    ["contract", "poincare11.alg", "--sub", "H", "--cocycle", "poincare11.mu_h.cocycle", "--scale", "1"],
    ["contract", "poincare11.alg", "--sub", "H", "--cocycle", "poincare11.mu_h.cocycle", "--scale", "2"],
    ["group-verify", "abelian2.alg", "--samples", "200"],
    ["group-verify", "galilei11.alg", "--samples", "200"],
    ["orbit", "su2.alg", "--mu", "0,0,1", "--nu", "1,0,0"],
    ["orbit", "su2.alg", "--mu", "0,0,1", "--nu", "0,0,2"],
    ["pseudo-class", "su2.alg", "--l0", "0,0,1", "--l0b", "1,0,0", "--seed", "7"],
    ["pseudo-class", "abelian2.alg", "--l0", "1,0", "--l0b", "0,1", "--cocycle", "weyl"],
    ["pseudo-class", "abelian2.alg", "--l0", "1,0", "--l0b", "0,1"],
    ["witness-check", "su2.alg", "--l0", "1,0,0", "--l0b", "0,0,1", "--witness", "0.3,0,0"],
    ["integrality", "su2.alg", "--l0", "0,0,1/2"],
    ["integrality", "su2.alg", "--l0", "0,0,3/10"],
    ["omega", "su2.alg", "--l0", "0,0,1"],
    ["char-sub", "su2.alg", "--l0", "0,0,1"],
]


def criterion_12():
    import os

    here = os.getcwd()
    os.chdir(DATA)
    try:
        differing = []
        for argv in CLI_COMMANDS:
            for fmt in ("json", "text"):
                outs = []
                for _ in range(2):
                    buf = io.StringIO()
                    run_command([*argv, "--format", fmt], stdout=buf, stderr=io.StringIO())
                    outs.append(buf.getvalue())
                if outs[0] != outs[1]:
                    differing.append(" ".join(argv))
    finally:
        os.chdir(here)
    return not differing, f"{len(CLI_COMMANDS)} commands x 2 formats, differing: {differing or 'none'}"


CRITERIA = [
    ("1", "cohomology dimensions", criterion_1),
    ("2", "generation of cohomology under contraction (scale s=1)", criterion_2),
    ("2-corrected", "generation of cohomology under contraction (scale s=2)", criterion_2_corrected),
    ("3", "nilpotency of the group coboundary", criterion_3),
    ("4", "Noether invariants form a symplectic 1-cocycle", criterion_4),
    ("5", "differential of F at e equals Gamma0", criterion_5),
    ("6", "Ad-equivariance of the presymplectic form", criterion_6),
    ("7", "orbit classification on su2", criterion_7),
    ("8", "deformed-class collapse", criterion_8),
    ("9", "rank parity and kernel equality", criterion_9),
    ("10", "integrality and period oracle", criterion_10),
    ("11", "translation identity", criterion_11),
    ("12", "determinism of CLI reports", criterion_12),
]


@pytest.mark.parametrize("label,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(label, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print()
        report(f"{label} ({title})", ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for label, title, fn in CRITERIA:
        ok, detail = fn()
        report(f"{label} ({title})", ok, detail)
        failures += not ok
    sys.exit(1 if failures else 0)
