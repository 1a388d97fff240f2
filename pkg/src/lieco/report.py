"""Deterministic text and JSON reports.

Exact rationals become ``"p/q"`` strings, floats keep Python's shortest
round-trip repr, and JSON keys are sorted, so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

import numpy as np

from . import __version__
from .linalg import fmt


def plain(x: Any) -> Any:
    """Convert a result tree to JSON-safe builtins."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isfinite(x):
            return 0.0 if x == 0 else x
        return repr(x)
    if isinstance(x, np.ndarray):
        return plain(x.tolist())
    if isinstance(x, Mapping):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    raise TypeError(f"cannot put {type(x).__name__} in a report")


def digest(blobs: Sequence[bytes]) -> str:
    h = hashlib.sha256()
    for b in blobs:
        h.update(len(b).to_bytes(8, "big"))
        h.update(b)
    return h.hexdigest()


@dataclass
class Report:
    command: str
    inputs_sha256: str
    results: dict = field(default_factory=dict)
    seed: int | None = None
    tolerances: dict = field(default_factory=dict)
    version: str = __version__

    def tree(self) -> dict:
        return plain(
            {
                "command": self.command,
                "inputs_sha256": self.inputs_sha256,
                "results": self.results,
                "seed": self.seed,
                "tolerances": self.tolerances,
                "version": self.version,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.tree(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        t = self.tree()
        lines = [f"lieco {t['version']}", f"command: {t['command']}", f"inputs sha256: {t['inputs_sha256']}"]
        if t["seed"] is not None:
            lines.append(f"seed: {t['seed']}")
        if t["tolerances"]:
            lines.append("tolerances: " + ", ".join(f"{k}={_scalar(v)}" for k, v in sorted(t["tolerances"].items())))
        lines.append("results:")
        _render(t["results"], 1, lines)
        return "\n".join(lines) + "\n"

    def render(self, form: str) -> str:
        return self.to_json() if form == "json" else self.to_text()


def _scalar(v) -> str:
    if v == {}:
        return "{}"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return not v
    return not isinstance(v, list) or (isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v))


def _render(node, depth, lines):
    pad = "  " * depth
    if isinstance(node, dict):
        for k, v in node.items():
            if isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}{k}: |")
                lines.extend(pad + "  " + row for row in v.splitlines())
            elif isinstance(v, list) and _flat(v):
                lines.append(f"{pad}{k}: [{', '.join(_scalar(x) for x in v)}]")
            elif _flat(v):
                lines.append(f"{pad}{k}: {_scalar(v)}")
            else:
                lines.append(f"{pad}{k}:")
                _render(v, depth + 1, lines)
    elif isinstance(node, list):
        for v in node:
            if _flat(v):
                text = f"[{', '.join(_scalar(x) for x in v)}]" if isinstance(v, list) else _scalar(v)
                lines.append(f"{pad}- {text}")
            else:
                lines.append(f"{pad}-")
                _render(v, depth + 1, lines)
    else:
        lines.append(pad + _scalar(node))
