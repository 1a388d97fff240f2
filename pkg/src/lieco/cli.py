"""``lieco`` command-line interface.

Exit codes: 0 success, 1 definite negative answer from a check command,
2 malformed input or a mathematical precondition failure.
"""

from __future__ import annotations

import argparse
import os
import shlex
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .algebra import LieAlgebra
from .cohomology import (
    AlgebraTwoCocycle,
    central_extension,
    h2,
    h2_decompose,
    iw_contraction,
    pseudo_extension,
    trivialize_pseudo_extension,
)
from .errors import LiecoError, NotACoboundary, ParseError
from .fileio import (
    parse_algebra_file,
    parse_cocycle_file,
    parse_functional_file,
    parse_vector,
    serialize_algebra,
    serialize_cocycle,
)
from .report import Report, digest

DEFAULT_SEED = 42


class InputError(LiecoError):
    """Bad command-line input that is not a parse error of a file."""


@dataclass
class Context:
    args: argparse.Namespace
    blobs: list[bytes] = field(default_factory=list)
    exit_code: int = 0

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        self.blobs.append(data)
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError:
            raise ParseError(1, 1, f"{path} is not UTF-8 text") from None


# -- argument resolution --------------------------------------------------------


def _catalog():
    from . import catalog

    return catalog


def load_algebra(ctx: Context, spec: str) -> LieAlgebra:
    """A path to an algebra file, or the name of a catalog group."""
    if not Path(spec).exists():
        cat = _catalog()
        if spec in cat.BUILDERS:
            alg = cat.get(spec).algebra
            ctx.blobs.append(serialize_algebra(alg).encode())
            return alg
    return parse_algebra_file(ctx.read(spec))


def load_vector(ctx: Context, text: str | None, algebra: LieAlgebra, flag: str) -> tuple[Fraction, ...]:
    if text is None:
        raise InputError(f"{flag} is required")
    if Path(text).is_file():
        return parse_functional_file(ctx.read(text), algebra.dim)
    ctx.blobs.append(f"{flag}={text}".encode())
    try:
        return parse_vector(text, algebra.dim)
    except ParseError as exc:
        raise InputError(f"{flag}: {exc.message}") from None


def load_cocycle(ctx: Context, path: str | None, algebra: LieAlgebra) -> AlgebraTwoCocycle | None:
    if path is None:
        return None
    return parse_cocycle_file(ctx.read(path), algebra)


def resolve_realization(ctx: Context, algebra: LieAlgebra):
    real = _catalog().find_by_algebra(algebra)
    if real is None:
        raise InputError(
            f"algebra {algebra.name!r} has no group realization in the catalog (see 'lieco catalog'); "
            "group-level commands need one"
        )
    return real


def resolve_group_cocycle(ctx: Context, real, spec: str | None):
    """Catalog cocycle by name, or the catalog cocycle whose Gamma0 equals a cocycle file."""
    if spec is None:
        return None
    names = [c.name for c in real.cocycles]
    if spec in names and not Path(spec).is_file():
        ctx.blobs.append(f"cocycle={spec}".encode())
        return real.cocycle(spec)
    gamma = parse_cocycle_file(ctx.read(spec), real.algebra)
    for c in real.cocycles:
        if c.gamma0 == gamma:
            return c
    raise InputError(
        f"no group-level cocycle of {real.name} has this algebra cocycle; available: {', '.join(names) or 'none'}"
    )


# -- formatting helpers ---------------------------------------------------------


def cocycle_entries(gamma: AlgebraTwoCocycle, algebra: LieAlgebra) -> dict[str, Fraction]:
    names = algebra.basis_names
    return {
        f"{names[i]} {names[j]}": gamma.gamma[i][j]
        for i in range(gamma.dim)
        for j in range(i + 1, gamma.dim)
        if gamma.gamma[i][j]
    }


def named(vec: Sequence, algebra: LieAlgebra) -> dict:
    return {nm: v for nm, v in zip(algebra.basis_names, vec)}


def _verdict(v) -> dict:
    out = {"status": v.status, "residual": v.residual, "witness": list(v.witness) if v.witness else None}
    if v.separating_invariant is not None:
        s = v.separating_invariant
        out["separating_invariant"] = {"name": s.name, "value1": s.value1, "value2": s.value2, "resolution": s.resolution}
    if v.restart is not None:
        out["restart"] = v.restart
    out["evaluations"] = v.evaluations
    return out


# -- commands -------------------------------------------------------------------


def cmd_validate(ctx: Context) -> dict:
    alg = load_algebra(ctx, ctx.args.algebra)
    return {"valid": True, "algebra": alg.name, "dim": alg.dim, "basis": list(alg.basis_names), "canonical": serialize_algebra(alg)}


def cmd_h2(ctx: Context) -> dict:
    alg = load_algebra(ctx, ctx.args.algebra)
    rep = h2(alg)
    out = {
        "algebra": alg.name,
        "z2_dim": rep.z2_dim,
        "b2_dim": rep.b2_dim,
        "h2_dim": rep.h2_dim,
        "z2_basis": [cocycle_entries(g, alg) for g in rep.z2_basis],
        "b2_basis": [cocycle_entries(g, alg) for g in rep.b2_basis],
    }
    gamma = load_cocycle(ctx, ctx.args.cocycle, alg)
    if gamma is not None:
        out["decomposition"] = _decomposition(alg, gamma)
    return out


def _decomposition(alg: LieAlgebra, gamma: AlgebraTwoCocycle) -> dict:
    d = h2_decompose(alg, gamma)
    return {
        "trivial": d.trivial,
        "mu": named(d.mu, alg) if d.mu is not None else None,
        "representative": cocycle_entries(d.representative, alg),
    }


def _extension_report(ext) -> dict:
    return {
        "central_generator": ext.extended.basis_names[ext.central_index],
        "cocycle": cocycle_entries(ext.cocycle, ext.base),
        "readback_matches": ext.read_cocycle() == ext.cocycle,
        "extended": serialize_algebra(ext.extended),
    }


def cmd_extend(ctx: Context) -> dict:
    alg = load_algebra(ctx, ctx.args.algebra)
    if ctx.args.cocycle is None:
        raise InputError("--cocycle is required")
    return _extension_report(central_extension(alg, load_cocycle(ctx, ctx.args.cocycle, alg)))


def cmd_pseudo_extend(ctx: Context) -> dict:
    alg = load_algebra(ctx, ctx.args.algebra)
    l0 = load_vector(ctx, ctx.args.l0, alg, "--l0")
    out = _extension_report(pseudo_extension(alg, l0))
    out["lambda0"] = named(l0, alg)
    return out


def cmd_trivialize(ctx: Context) -> dict:
    alg = load_algebra(ctx, ctx.args.algebra)
    if ctx.args.cocycle is not None:
        ext = central_extension(alg, load_cocycle(ctx, ctx.args.cocycle, alg))
    else:
        ext = pseudo_extension(alg, load_vector(ctx, ctx.args.l0, alg, "--l0"))
    try:
        t = trivialize_pseudo_extension(ext)
    except NotACoboundary as exc:
        ctx.exit_code = 1
        return {"trivial": False, "reason": str(exc), "representative": _decomposition(alg, ext.cocycle)["representative"]}
    from .algebra import change_basis

    new = change_basis(ext.extended, t)
    z = ext.central_index
    clean = all(k != z or i == z or j == z for (i, j, k), _ in new.structure)
    return {"trivial": True, "basis_change": [list(row) for row in t], "x0_free": clean, "trivialized": serialize_algebra(new)}


def _omega_inputs(ctx: Context):
    alg = load_algebra(ctx, ctx.args.algebra)
    l0 = load_vector(ctx, ctx.args.l0, alg, "--l0")
    return alg, l0, load_cocycle(ctx, ctx.args.cocycle, alg)


def cmd_omega(ctx: Context) -> dict:
    from .symplectic import presymplectic_matrix

    alg, l0, gamma = _omega_inputs(ctx)
    form = presymplectic_matrix(alg, l0, gamma)
    return {
        "omega": [list(r) for r in form.omega],
        "rank": form.rank,
        "orbit_dim": form.rank,
        # pairs (e_a, f_a) with omega(e_a, f_a) = 1, then a kernel basis
        "symplectic_basis": [list(v) for v in zip(*form.basis)],
    }


def cmd_char_sub(ctx: Context) -> dict:
    from .symplectic import characteristic_subalgebra, is_subalgebra, isotropy_subalgebra

    alg, l0, gamma = _omega_inputs(ctx)
    basis = characteristic_subalgebra(alg, l0, gamma)
    out = {"dim": len(basis), "basis": [named(v, alg) for v in basis], "closed_under_bracket": is_subalgebra(alg, basis)}
    if gamma is None or gamma.is_zero():
        from .linalg import rank

        iso = isotropy_subalgebra(alg, l0)
        both = [list(v) for v in basis] + [list(v) for v in iso]
        same = len(iso) == len(basis) and (not both or rank(both) == len(basis))
        out["agrees_with_isotropy"] = same
    return out


def _search(ctx: Context) -> dict:
    a = ctx.args
    return {"tol": a.tol, "restarts": a.restarts, "budget": a.budget, "seed": a.seed}


def _orbit_common(ctx: Context, first: str, second: str, which) -> dict:
    from .orbits import EQUIVALENT, DISTINCT, symplectomorphism_witness_check

    alg = load_algebra(ctx, ctx.args.algebra)
    real = resolve_realization(ctx, alg)
    cocycle = resolve_group_cocycle(ctx, real, ctx.args.cocycle)
    v1 = load_vector(ctx, getattr(ctx.args, first), alg, "--" + first.replace("_", "-"))
    v2 = load_vector(ctx, getattr(ctx.args, second), alg, "--" + second.replace("_", "-"))
    verdict = which(real, v1, v2, cocycle, **_search(ctx))
    out = {
        "realization": real.name,
        "cocycle": cocycle.name if cocycle else None,
        "verdict": _verdict(verdict),
    }
    if verdict.status == EQUIVALENT:
        out["witness_check_residual"] = symplectomorphism_witness_check(real, v2, v1, verdict.witness, cocycle)
    if verdict.status == DISTINCT:
        ctx.exit_code = 1
    if real.notes:
        out["notes"] = list(real.notes)
    return out


def cmd_orbit(ctx: Context) -> dict:
    from .orbits import same_orbit

    return _orbit_common(ctx, "mu", "nu", same_orbit)


def cmd_pseudo_class(ctx: Context) -> dict:
    from .orbits import pseudo_class_equivalent

    return _orbit_common(ctx, "l0", "l0b", pseudo_class_equivalent)


def cmd_witness_check(ctx: Context) -> dict:
    from .orbits import symplectomorphism_witness_check

    alg = load_algebra(ctx, ctx.args.algebra)
    real = resolve_realization(ctx, alg)
    cocycle = resolve_group_cocycle(ctx, real, ctx.args.cocycle)
    l1 = load_vector(ctx, ctx.args.l0, alg, "--l0")
    l2 = load_vector(ctx, ctx.args.l0b, alg, "--l0b")
    if ctx.args.witness is None:
        raise InputError("--witness is required")
    ctx.blobs.append(f"--witness={ctx.args.witness}".encode())
    try:
        w = [float(x) for x in ctx.args.witness.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"--witness: expected {alg.dim} comma-separated floats") from None
    if len(w) != alg.dim:
        raise InputError(f"--witness: expected {alg.dim} components, got {len(w)}")
    r = symplectomorphism_witness_check(real, l1, l2, w, cocycle)
    valid = r < ctx.args.tol
    if not valid:
        ctx.exit_code = 1
    return {"realization": real.name, "cocycle": cocycle.name if cocycle else None, "residual": r, "valid": valid}


def cmd_integrality(ctx: Context) -> dict:
    from .symplectic import integrality_check

    alg = load_algebra(ctx, ctx.args.algebra)
    l0 = load_vector(ctx, ctx.args.l0, alg, "--l0")
    real = _catalog().find_by_algebra(alg)
    data = real.compact_data if real else ()
    res = integrality_check(alg, l0, data)
    if not res.integral:
        ctx.exit_code = 1
    notes = list(res.notes)
    if real is None:
        notes.append("no catalog realization: no compact generator data, so the check is vacuous")
    return {"realization": real.name if real else None, "integral": res.integral, "details": list(res.details), "notes": notes}


def cmd_contract(ctx: Context) -> dict:
    alg = load_algebra(ctx, ctx.args.algebra)
    if not ctx.args.sub:
        raise InputError("--sub is required")
    sub = [s for s in ctx.args.sub.replace(",", " ").split() if s]
    for s in sub:
        if s not in alg.basis_names:
            raise InputError(f"--sub: unknown basis name {s!r}")
    gamma = load_cocycle(ctx, ctx.args.cocycle, alg)
    con = iw_contraction(alg, sub, gamma, ctx.args.scale)
    out = {
        "subalgebra": sub,
        "weights": named(con.weights, alg),
        "scale": ctx.args.scale,
        "contracted": serialize_algebra(con.algebra),
    }
    if gamma is not None:
        out["cocycle_before"] = {"entries": cocycle_entries(gamma, alg), **_decomposition(alg, gamma)}
        out["cocycle_after"] = {"entries": cocycle_entries(con.cocycle, con.algebra), **_decomposition(con.algebra, con.cocycle)}
        out["cohomology_generated"] = out["cocycle_before"]["trivial"] and not out["cocycle_after"]["trivial"]
    return out


def cmd_group_verify(ctx: Context) -> dict:
    from .verify import verify_realization

    alg = load_algebra(ctx, ctx.args.algebra)
    real = resolve_realization(ctx, alg)
    checks = verify_realization(real, ctx.args.samples, ctx.args.seed, ctx.args.tol)
    ok = all(c.passed for c in checks)
    if not ok:
        ctx.exit_code = 1
    return {
        "realization": real.name,
        "all_passed": ok,
        "checks": [{"name": c.name, "residual": c.residual, "tol": c.tol, "passed": c.passed} for c in checks],
    }


def cmd_catalog(ctx: Context) -> dict:
    cat = _catalog()
    entries = []
    export = Path(ctx.args.export) if ctx.args.export else None
    if export is not None:
        export.mkdir(parents=True, exist_ok=True)
    for real in cat.catalog():
        alg = real.algebra
        entries.append(
            {
                "name": real.name,
                "dim": real.dim,
                "basis": list(alg.basis_names),
                "description": real.description,
                "casimirs": [c.name for c in real.casimirs],
                "cocycles": [
                    {"name": c.name, "gamma0": cocycle_entries(c.gamma0, alg), "casimirs": [k.name for k in c.casimirs]}
                    for c in real.cocycles
                ],
                "compact_data": [{"generator": named(d.generator, alg), "period": d.period} for d in real.compact_data],
                "notes": list(real.notes),
            }
        )
        if export is not None:
            (export / f"{real.name}.alg").write_text(serialize_algebra(alg), encoding="utf-8")
            for c in real.cocycles:
                (export / f"{real.name}.{c.name}.cocycle").write_text(serialize_cocycle(c.gamma0, alg), encoding="utf-8")
    out = {"groups": entries}
    if export is not None:
        out["exported"] = sorted(p.name for p in export.iterdir() if p.suffix in (".alg", ".cocycle"))
    return out


COMMANDS = {
    "validate": (cmd_validate, "Parse and validate an algebra file (antisymmetry, Jacobi)."),
    "h2": (cmd_h2, "Dimensions and bases of Z2, B2 and H2; decompose --cocycle if given."),
    "extend": (cmd_extend, "Central extension by the 2-cocycle in --cocycle."),
    "pseudo-extend": (cmd_pseudo_extend, "Pseudo-extension by the coboundary of --l0."),
    "trivialize": (cmd_trivialize, "Basis change removing the central term of a (pseudo-)extension."),
    "omega": (cmd_omega, "Presymplectic matrix at --l0 (plus --cocycle), rank and symplectic basis."),
    "char-sub": (cmd_char_sub, "Characteristic subalgebra (kernel of omega)."),
    "orbit": (cmd_orbit, "Do --mu and --nu lie on the same (deformed) coadjoint orbit?"),
    "pseudo-class": (cmd_pseudo_class, "Are --l0 and --l0b in the same pseudo-cohomology class?"),
    "witness-check": (cmd_witness_check, "Check that --witness maps --l0b to --l0 and transports omega."),
    "integrality": (cmd_integrality, "Integrality of --l0 against catalog compact generator periods."),
    "contract": (cmd_contract, "Inonu-Wigner contraction with respect to --sub, with optional --cocycle."),
    "group-verify": (cmd_group_verify, "Sampled verification of all group-level identities of a realization."),
    "catalog": (cmd_catalog, "List catalog groups; --export DIR writes their algebra and cocycle files."),
}

# flags accepted by each command besides --format
_FLAGS = {
    "validate": (),
    "h2": ("cocycle",),
    "extend": ("cocycle",),
    "pseudo-extend": ("l0",),
    "trivialize": ("cocycle", "l0"),
    "omega": ("l0", "cocycle"),
    "char-sub": ("l0", "cocycle"),
    "orbit": ("mu", "nu", "cocycle", "tol", "seed", "restarts", "budget"),
    "pseudo-class": ("l0", "l0b", "cocycle", "tol", "seed", "restarts", "budget"),
    "witness-check": ("l0", "l0b", "witness", "cocycle", "tol"),
    "integrality": ("l0",),
    "contract": ("sub", "cocycle", "scale"),
    "group-verify": ("samples", "seed", "tol"),
    "catalog": ("export",),
}

_FLAG_HELP = {
    "cocycle": ("--cocycle", dict(metavar="FILE", help="2-cocycle file; for group commands also a catalog cocycle name")),
    "l0": ("--l0", dict(metavar="CSV", help="coalgebra vector lambda0, e.g. 0,0,1/2 (or a functional file)")),
    "l0b": ("--l0b", dict(metavar="CSV", help="second coalgebra vector")),
    "mu": ("--mu", dict(metavar="CSV", help="first coalgebra point")),
    "nu": ("--nu", dict(metavar="CSV", help="second coalgebra point")),
    "witness": ("--witness", dict(metavar="CSV", help="exponential parameters t of h = exp(t1 X1)...exp(tn Xn)")),
    "tol": ("--tol", dict(type=float, default=1e-8, metavar="FLOAT", help="tolerance (default 1e-8)")),
    "seed": ("--seed", dict(type=int, default=None, metavar="INT", help="random seed (default LIECO_SEED or 42)")),
    "samples": ("--samples", dict(type=int, default=1000, metavar="INT", help="sample count (default 1000)")),
    "restarts": ("--restarts", dict(type=int, default=32, metavar="INT", help="optimizer restarts (default 32)")),
    "budget": ("--budget", dict(type=int, default=2000, metavar="INT", help="evaluations per restart (default 2000)")),
    "scale": ("--scale", dict(type=int, default=1, metavar="INT", help="cocycle scale exponent s (default 1)")),
    "sub": ("--sub", dict(metavar="NAMES", help="subalgebra basis names, comma separated")),
    "export": ("--export", dict(metavar="DIR", help="write NAME.alg and NAME.COCYCLE.cocycle files into DIR")),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lieco", description="Lie algebra cohomology, pseudo-extensions and coadjoint orbits.")
    p.add_argument("--version", action="version", version=f"lieco {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, help=helptext, description=helptext)
        if name != "catalog":
            sp.add_argument("algebra", metavar="ALGEBRA", help="algebra file, or a catalog group name")
        for flag in _FLAGS[name]:
            opt, kw = _FLAG_HELP[flag]
            sp.add_argument(opt, dest=flag, **kw)
        sp.add_argument("--format", choices=("text", "json"), default="text", help="output format (default text)")
    return p


def _tolerances(args) -> dict:
    keys = ("tol", "samples", "restarts", "budget", "scale")
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


def run_command(argv: Sequence[str], stdout=None, stderr=None) -> tuple[int, Report | None]:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0), None
    if hasattr(args, "seed") and args.seed is None:
        env = os.environ.get("LIECO_SEED")
        try:
            args.seed = int(env) if env is not None else DEFAULT_SEED
        except ValueError:
            print(f"lieco: error: LIECO_SEED={env!r} is not an integer", file=stderr)
            return 2, None
    ctx = Context(args)
    echo = " ".join(["lieco", *(shlex.quote(a) for a in argv)])
    try:
        results = COMMANDS[args.command][0](ctx)
        code = ctx.exit_code
    except LiecoError as exc:
        results = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = 2
        print(f"lieco: {type(exc).__name__}: {exc}", file=stderr)
    report = Report(echo, digest(ctx.blobs), results, getattr(args, "seed", None), _tolerances(args))
    stdout.write(report.render(args.format))
    return code, report


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
