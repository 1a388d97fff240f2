"""Line-oriented text formats for algebras, 2-cocycles and coalgebra vectors.

Algebra file::

    # comment
    algebra su2
    dim 3
    names X1 X2 X3
    bracket X1 X2 = 1 X3
    bracket X2 X3 = 1 X1 - 1/2 X3

Cocycle file (names refer to an algebra given separately)::

    cocycle K P = -1
    H K = 1/2

Functional file: one line ``functional c1 c2 ... cN`` (the keyword is optional).

Numbers are integers, ``p/q`` or decimals with at most 9 fraction digits and
are always converted exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Sequence

from .algebra import LieAlgebra, validate_algebra
from .cohomology import AlgebraTwoCocycle
from .errors import ParseError
from .linalg import fmt

_NUMBER = re.compile(r"[+-]?(\d+/\d+|\d+\.\d{1,9}|\d+\.|\.\d{1,9}|\d+)\Z")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
MAX_FRACTION_DIGITS = 9


def parse_number(token: str, line: int = 0, column: int = 0) -> Fraction:
    if not _NUMBER.match(token):
        if re.fullmatch(r"[+-]?\d*\.\d{10,}", token):
            raise ParseError(line, column, f"decimal {token!r} has more than {MAX_FRACTION_DIGITS} fraction digits")
        raise ParseError(line, column, f"expected a number, got {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(line, column, f"zero denominator in {token!r}") from None


def _tokens(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """Yield (line number, [(column, token)]) for non-empty lines, comments stripped."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]
        if toks:
            yield lineno, toks


def _split_terms(toks, lineno):
    """Parse ``c1 N1 + c2 N2 - c3 N3`` (coefficients optional) into [(coeff, name, column)]."""
    terms = []
    pos = 0
    sign = 1
    expect_sep = False
    while pos < len(toks):
        col, tok = toks[pos]
        if expect_sep:
            if tok not in ("+", "-"):
                raise ParseError(lineno, col, f"expected '+' or '-', got {tok!r}")
            sign = 1 if tok == "+" else -1
            expect_sep = False
            pos += 1
            continue
        if tok in ("+", "-") and not terms and pos == 0:
            sign = -1 if tok == "-" else 1
            pos += 1
            continue
        coeff = Fraction(1)
        if not _NAME.match(tok):
            coeff = parse_number(tok, lineno, col)
            pos += 1
            if pos == len(toks):
                if coeff == 0 and not terms:
                    return []
                raise ParseError(lineno, col, "coefficient without a basis name")
            col, tok = toks[pos]
        if not _NAME.match(tok):
            raise ParseError(lineno, col, f"expected a basis name, got {tok!r}")
        terms.append((sign * coeff, tok, col))
        sign = 1
        expect_sep = True
        pos += 1
    if not expect_sep:
        col = toks[-1][0] if toks else 1
        raise ParseError(lineno, col, "dangling sign")
    return terms


def parse_algebra_file(text: str) -> LieAlgebra:
    name = dim = names = None
    header_line = 1
    brackets: dict[tuple[str, str], dict[str, Fraction]] = {}
    seen: dict[frozenset, int] = {}
    for lineno, toks in _tokens(text):
        col, key = toks[0]
        args = toks[1:]
        if key == "algebra":
            if name is not None:
                raise ParseError(lineno, col, "second 'algebra' line")
            if len(args) != 1 or not _NAME.match(args[0][1]):
                raise ParseError(lineno, col, "expected 'algebra NAME'")
            name = args[0][1]
            header_line = lineno
        elif key == "dim":
            if dim is not None:
                raise ParseError(lineno, col, "second 'dim' line")
            if len(args) != 1 or not args[0][1].isdigit():
                raise ParseError(lineno, col, "expected 'dim N' with N a non-negative integer")
            dim = int(args[0][1])
        elif key == "names":
            if names is not None:
                raise ParseError(lineno, col, "second 'names' line")
            if dim is None:
                raise ParseError(header_line, 1, "header is missing the 'dim' line")
            for c, nm in args:
                if not _NAME.match(nm):
                    raise ParseError(lineno, c, f"invalid basis name {nm!r}")
            names = [nm for _, nm in args]
            if len(names) != dim:
                raise ParseError(lineno, col, f"dim is {dim} but {len(names)} names given")
            if len(set(names)) != len(names):
                raise ParseError(lineno, col, "repeated basis name")
        elif key == "bracket":
            if name is None or dim is None or names is None:
                missing = [k for k, v in (("algebra", name), ("dim", dim), ("names", names)) if v is None]
                raise ParseError(header_line, 1, f"header incomplete before first bracket: missing {', '.join(missing)}")
            if len(args) < 4 or args[2][1] != "=":
                raise ParseError(lineno, col, "expected 'bracket A B = c1 N1 + ...'")
            (ca, a), (cb, b) = args[0], args[1]
            for c, nm in ((ca, a), (cb, b)):
                if nm not in names:
                    raise ParseError(lineno, c, f"unknown basis name {nm!r}")
            if a == b:
                raise ParseError(lineno, cb, "bracket of a generator with itself")
            pair = frozenset((a, b))
            if pair in seen:
                raise ParseError(lineno, col, f"duplicate bracket [{a}, {b}] (first given on line {seen[pair]})")
            seen[pair] = lineno
            rhs: dict[str, Fraction] = {}
            for coeff, nm, c in _split_terms(args[3:], lineno):
                if nm not in names:
                    raise ParseError(lineno, c, f"unknown basis name {nm!r}")
                rhs[nm] = rhs.get(nm, Fraction(0)) + coeff
            brackets[(a, b)] = rhs
        else:
            raise ParseError(lineno, col, f"unknown keyword {key!r}")
    missing = [k for k, v in (("algebra", name), ("dim", dim), ("names", names)) if v is None]
    if missing:
        raise ParseError(header_line, 1, f"header incomplete: missing {', '.join(missing)}")
    return validate_algebra(brackets, names, name)


def _term(coeff: Fraction, nm: str, first: bool) -> str:
    if first:
        return f"{fmt(coeff)} {nm}"
    return f"{'-' if coeff < 0 else '+'} {fmt(abs(coeff))} {nm}"


def serialize_algebra(algebra: LieAlgebra) -> str:
    names = algebra.basis_names
    lines = [f"algebra {algebra.name}", f"dim {algebra.dim}", "names " + " ".join(names)]
    rows: dict[tuple[int, int], list] = {}
    for (i, j, k), v in algebra.structure:
        rows.setdefault((i, j), []).append((k, v))
    for (i, j), terms in sorted(rows.items()):
        rhs = " ".join(_term(v, names[k], t == 0) for t, (k, v) in enumerate(terms))
        lines.append(f"bracket {names[i]} {names[j]} = {rhs}")
    return "\n".join(lines) + "\n"


def parse_cocycle_file(text: str, algebra: LieAlgebra) -> AlgebraTwoCocycle:
    """Entries ``A B = c``; pairs not listed are zero.  Closedness is not checked here."""
    names = algebra.basis_names
    entries: dict[tuple[int, int], Fraction] = {}
    seen: dict[frozenset, int] = {}
    for lineno, toks in _tokens(text):
        if toks[0][1] == "cocycle":
            toks = toks[1:]
            if len(toks) <= 1 and all(t != "=" for _, t in toks):
                continue  # header "cocycle [NAME]"
        if len(toks) != 4 or toks[2][1] != "=":
            raise ParseError(lineno, toks[0][0], "expected 'A B = c'")
        (ca, a), (cb, b), _, (cc, c) = toks
        for col, nm in ((ca, a), (cb, b)):
            if nm not in names:
                raise ParseError(lineno, col, f"unknown basis name {nm!r}")
        value = parse_number(c, lineno, cc)
        if a == b:
            if value:
                raise ParseError(lineno, cb, "cocycle value on a generator with itself must be 0")
            continue
        pair = frozenset((a, b))
        if pair in seen:
            raise ParseError(lineno, ca, f"duplicate entry ({a}, {b}) (first given on line {seen[pair]})")
        seen[pair] = lineno
        i, j = names.index(a), names.index(b)
        if i > j:
            i, j, value = j, i, -value
        entries[(i, j)] = value
    return AlgebraTwoCocycle.from_pairs(algebra.dim, entries)


def serialize_cocycle(gamma: AlgebraTwoCocycle, algebra: LieAlgebra) -> str:
    names = algebra.basis_names
    lines = ["cocycle"]
    for i in range(gamma.dim):
        for j in range(i + 1, gamma.dim):
            v = gamma.gamma[i][j]
            if v:
                lines.append(f"{names[i]} {names[j]} = {fmt(v)}")
    return "\n".join(lines) + "\n"


def parse_vector(text: str, dim: int | None = None, line: int = 1) -> tuple[Fraction, ...]:
    """Comma- or space-separated exact numbers, e.g. ``0,0,1/2``."""
    out = []
    for m in re.finditer(r"[^,\s]+", text):
        out.append(parse_number(m.group(), line, m.start() + 1))
    if not out:
        raise ParseError(line, 1, "empty vector")
    if dim is not None and len(out) != dim:
        raise ParseError(line, 1, f"expected {dim} components, got {len(out)}")
    return tuple(out)


def parse_functional_file(text: str, dim: int | None = None) -> tuple[Fraction, ...]:
    lines = list(_tokens(text))
    if len(lines) != 1:
        raise ParseError(lines[1][0] if len(lines) > 1 else 1, 1, "expected exactly one 'functional' line")
    lineno, toks = lines[0]
    if toks[0][1] == "functional":
        toks = toks[1:]
    if not toks:
        raise ParseError(lineno, 1, "empty functional")
    vec = tuple(parse_number(t, lineno, c) for c, t in toks)
    if dim is not None and len(vec) != dim:
        raise ParseError(lineno, 1, f"expected {dim} components, got {len(vec)}")
    return vec


def serialize_functional(mu: Sequence) -> str:
    return "functional " + " ".join(fmt(Fraction(v)) for v in mu) + "\n"
