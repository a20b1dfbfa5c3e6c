"""Session files: named algebras, modules and chains in one JSON document.

::

    {"p": 5,
     "algebras": {"F2": {"dim": 3, "mult": [[i, j, k, c], ...], "degrees": [[0, 0], ...]}},
     "modules": {"D": {"ring": "F2", "dim": 3, "action": [[[..]], ...]},
                 "k": {"ring": "F2", "construct": "residue"}},
     "chains": {"pair": {"ring": "F3", "modules": ["C1", "C2"]}},
     "options": {"N": 4, "W": 3, "seed": 0, "trials": 64}}

Structure constants are sparse quadruples ``e_i e_j = sum c e_k``.  A module
is either explicit (``dim`` and one ``dim x dim`` matrix per basis vector of
the ring) or ``construct``-ed as ``regular``, ``residue`` or ``dualizing``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .algebra import Algebra, validate_algebra
from .errors import NameNotFound, ParseError
from .exactlin import DEFAULT_PRIME
from .fixtures import f1, f2, f3_chain
from .fmodule import Module, dualizing_module, regular_module, residue_field
from .semidual import Chain

DEFAULT_OPTIONS = {"N": 4, "W": 3, "seed": 0, "trials": 64}
CONSTRUCTS = {"regular": regular_module, "residue": residue_field, "dualizing": dualizing_module}


@dataclass
class Session:
    p: int
    algebras: dict[str, Algebra] = field(default_factory=dict)
    modules: dict[str, Module] = field(default_factory=dict)
    chains: dict[str, Chain] = field(default_factory=dict)
    options: dict = field(default_factory=lambda: dict(DEFAULT_OPTIONS))
    problems: list[tuple[str, str]] = field(default_factory=list)

    def algebra(self, name: str) -> Algebra:
        return _lookup(self.algebras, name, "algebra")

    def module(self, name: str) -> Module:
        return _lookup(self.modules, name, "module")

    def chain(self, name: str) -> Chain:
        return _lookup(self.chains, name, "chain")


def _lookup(table: dict, name: str, kind: str):
    try:
        return table[name]
    except KeyError:
        raise NameNotFound(f"no {kind} named {name!r}; known: {sorted(table)}") from None


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{what} must be an integer, got {x!r}")
    return x


def _mult(raw: dict, name: str, p: int) -> np.ndarray:
    dim = _int(raw.get("dim"), f"algebra {name}: dim")
    if dim < 1:
        raise ParseError(f"algebra {name}: dim must be positive")
    mult = np.zeros((dim, dim, dim), dtype=np.int64)
    for entry in raw.get("mult", []):
        if not (isinstance(entry, list) and len(entry) == 4):
            raise ParseError(f"algebra {name}: structure constants are [i, j, k, c] quadruples")
        i, j, k, c = (_int(v, f"algebra {name}: entry") for v in entry)
        if not all(0 <= v < dim for v in (i, j, k)):
            raise ParseError(f"algebra {name}: index out of range in {entry}")
        mult[i, j, k] = c % p
    return mult


def _degrees(raw, rows: int, what: str):
    if raw is None:
        return None
    arr = np.asarray(raw)
    if arr.ndim != 2 or arr.shape[0] != rows or not np.issubdtype(arr.dtype, np.integer):
        raise ParseError(f"{what}: degrees must be {rows} integer rows")
    return arr.astype(np.int64)


def load_session(doc: dict, validate: bool = True) -> Session:
    """Parse a session document.

    With ``validate`` every algebra and module is checked and the first
    violation raises; otherwise violations are collected in ``problems``
    (keyed by object name) and the object is left out.
    """
    if not isinstance(doc, dict):
        raise ParseError("session must be a JSON object")
    if not doc:
        return Session(DEFAULT_PRIME)
    unknown = set(doc) - {"p", "algebras", "modules", "chains", "options"}
    if unknown:
        raise ParseError(f"unknown top-level keys {sorted(unknown)}")
    p = _int(doc.get("p", DEFAULT_PRIME), "p")
    s = Session(p)
    opts = doc.get("options", {})
    if not isinstance(opts, dict) or set(opts) - set(DEFAULT_OPTIONS):
        raise ParseError(f"options are limited to {sorted(DEFAULT_OPTIONS)}")
    s.options.update({k: _int(v, f"option {k}") for k, v in opts.items()})

    for name, raw in doc.get("algebras", {}).items():
        mult = _mult(raw, name, p)
        degrees = _degrees(raw.get("degrees"), mult.shape[0], f"algebra {name}")
        try:
            s.algebras[name] = validate_algebra(mult, p, names=raw.get("names"), degrees=degrees)
        except ValueError as exc:
            if validate:
                raise
            s.problems.append((name, f"{type(exc).__name__}: {exc}"))

    for name, raw in doc.get("modules", {}).items():
        ring_name = raw.get("ring")
        if ring_name not in s.algebras and any(n == ring_name for n, _ in s.problems):
            s.problems.append((name, f"ring {ring_name} is invalid"))
            continue
        ring = s.algebra(ring_name)
        if "construct" in raw:
            make = CONSTRUCTS.get(raw["construct"])
            if make is None:
                raise ParseError(f"module {name}: construct must be one of {sorted(CONSTRUCTS)}")
            m = make(ring)
        else:
            dim = _int(raw.get("dim"), f"module {name}: dim")
            act = np.asarray(raw.get("action"))
            if act.shape != (ring.dim, dim, dim) or not np.issubdtype(act.dtype, np.integer):
                raise ParseError(f"module {name}: action must be {ring.dim} integer {dim}x{dim} matrices")
            m = Module(ring, act, degrees=_degrees(raw.get("degrees"), dim, f"module {name}"))
            try:
                m.validate()
            except ValueError as exc:
                if validate:
                    raise
                s.problems.append((name, f"{type(exc).__name__}: {exc}"))
                continue
        m.name = name
        s.modules[name] = m

    for name, raw in doc.get("chains", {}).items():
        ring = s.algebra(raw.get("ring"))
        mods = [s.module(m) for m in raw.get("modules", [])]
        if any(m.ring is not ring for m in mods):
            raise ParseError(f"chain {name}: modules are not over {raw.get('ring')}")
        s.chains[name] = Chain(ring, mods, names=list(raw.get("modules", [])))
    return s


def read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    if not text.strip():
        return {}
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def algebra_to_json(a: Algebra) -> dict:
    m = np.mod(a.mult, a.p)
    out = {
        "dim": a.dim,
        "names": list(a.names),
        "mult": [[int(i), int(j), int(k), int(m[i, j, k])] for i, j, k in zip(*np.nonzero(m))],
    }
    if a.degrees is not None:
        out["degrees"] = a.degrees.tolist()
    return out


def module_to_json(m: Module, ring_name: str) -> dict:
    out = {"ring": ring_name, "dim": m.dim, "action": m.action.tolist()}
    if m.degrees is not None:
        out["degrees"] = m.degrees.tolist()
    return out


def fixture_session(p: int = DEFAULT_PRIME) -> dict:
    """F1, F2, F3 with their standard modules and the length-2 chain over F3."""
    a1, a2 = f1(p), f2(p)
    a3, (c1, c2) = f3_chain(p)
    return {
        "p": p,
        "algebras": {"F1": algebra_to_json(a1), "F2": algebra_to_json(a2), "F3": algebra_to_json(a3)},
        "modules": {
            "k1": {"ring": "F1", "construct": "residue"},
            "D2": {"ring": "F2", "construct": "dualizing"},
            "k2": {"ring": "F2", "construct": "residue"},
            "C1": module_to_json(c1, "F3"),
            "C2": module_to_json(c2, "F3"),
        },
        "chains": {"F2chain": {"ring": "F2", "modules": ["D2"]}, "F3chain": {"ring": "F3", "modules": ["C1", "C2"]}},
        "options": dict(DEFAULT_OPTIONS),
    }


__all__ = [
    "DEFAULT_OPTIONS",
    "Session",
    "algebra_to_json",
    "fixture_session",
    "load_session",
    "module_to_json",
    "read_json",
]
