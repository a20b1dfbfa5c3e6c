"""Semidualizing modules, total reflexivity, chains and their daggers.

Every predicate returns a :class:`Verdict`.  Conditions of the form
``Ext^{>=1} = 0`` are checked in degrees ``1..bound`` and the verdict
records the bound, so a pass always means "verified up to ``bound``".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations

import numpy as np

from . import exactlin as el
from .algebra import Algebra
from .errors import NotSemidualizing, PreconditionUnverified
from .fmodule import (
    Module,
    ModuleHom,
    hom_module,
    iso_probe,
    regular_module,
    tensor_module,
)
from .homology import ext_dims, tor_dims


@dataclass
class Failure:
    condition: str
    degree: int | None = None
    witness: object = None

    def to_dict(self) -> dict:
        return {"condition": self.condition, "degree": self.degree, "witness": _plain(self.witness)}


@dataclass
class Verdict:
    """Outcome of a bounded check; ``passed`` iff there are no failures.

    ``unknowns`` lists conditions the isomorphism probe could not settle;
    they do not count as failures.
    """

    check: str
    bound: int | None = None
    failures: list[Failure] = field(default_factory=list)
    unknowns: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        return "unknown" if self.unknowns else "pass"

    def fail(self, condition: str, degree: int | None = None, witness=None) -> None:
        self.failures.append(Failure(condition, degree, witness))

    def absorb(self, other: "Verdict", prefix: str | None = None) -> "Verdict":
        tag = f"{prefix}: " if prefix else ""
        for f in other.failures:
            self.failures.append(Failure(tag + f.condition, f.degree, f.witness))
        self.unknowns.extend(tag + u for u in other.unknowns)
        return self

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "status": self.status,
            "bound": self.bound,
            "failures": [f.to_dict() for f in self.failures],
            "unknowns": list(self.unknowns),
            "details": _plain(self.details),
        }


def _plain(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _ext_vanishing(v: Verdict, m: Module, n: Module, bound: int, label: str) -> list[int]:
    dims = ext_dims(m, n, bound)
    for i in range(1, bound + 1):
        if dims[i]:
            v.fail(label, i, dims[i])
    return dims


# ------------------------------------------------------------ predicates


def homothety_matrix(c: Module, hom=None) -> tuple[np.ndarray, object]:
    """``chi_C : R -> Hom(C, C)`` in the canonical bases."""
    hom = hom or hom_module(c, c)
    cols = [hom.coords_of(c.action[i])[0] for i in range(c.ring.dim)]
    mat = np.array(cols, dtype=np.int64).T.reshape(hom.dim, c.ring.dim)
    return mat, hom


def is_semidualizing(c: Module, bound: int = 4) -> Verdict:
    """Homothety ``R -> Hom(C, C)`` bijective and ``Ext^{1..bound}(C, C) = 0``."""
    v = Verdict("semidualizing", bound)
    if c.dim == 0:
        v.fail("zero module")
        return v
    chi, hom = homothety_matrix(c)
    rk = el.rank(chi, c.p)
    v.details["dim_end"] = hom.dim
    if not (hom.dim == c.ring.dim and rk == hom.dim):
        v.fail("homothety not bijective", 0, {"dim_R": c.ring.dim, "dim_Hom": hom.dim, "rank": rk})
        return v
    _ext_vanishing(v, c, c, bound, "Ext(C,C)")
    return v


def biduality_matrix(m: Module, c: Module):
    """``delta : M -> Hom(Hom(M, C), C)``, ``x -> (f -> f(x))``."""
    dual = hom_module(m, c)
    bidual = hom_module(dual, c)
    mats = dual.basis_matrices()  # (h, c, m)
    cols = []
    for j in range(m.dim):
        ev = mats[:, :, j].T if dual.dim else el.zeros(c.dim, 0)  # (c, h)
        cols.append(bidual.coords_of(ev)[0] if bidual.dim else np.zeros(0, dtype=np.int64))
    mat = np.array(cols, dtype=np.int64).T.reshape(bidual.dim, m.dim)
    return mat, dual, bidual


def is_totally_reflexive_wrt(m: Module, c: Module, bound: int = 4) -> Verdict:
    """Biduality iso, ``Ext^{1..bound}(M, C) = 0 = Ext^{1..bound}(M^dag, C)``."""
    v = Verdict("totally_reflexive", bound)
    delta, dual, bidual = biduality_matrix(m, c)
    rk = el.rank(delta, m.p) if delta.size else 0
    v.details["dims"] = {"M": m.dim, "dual": dual.dim, "bidual": bidual.dim}
    if not (bidual.dim == m.dim and rk == m.dim):
        v.fail("biduality not bijective", 0, {"dim_M": m.dim, "dim_bidual": bidual.dim, "rank": rk})
        return v
    _ext_vanishing(v, m, c, bound, "Ext(M,C)")
    if v.passed:
        _ext_vanishing(v, dual, c, bound, "Ext(Hom(M,C),C)")
    return v


def precedes(c: Module, b: Module, bound: int = 4, check: bool = True) -> Verdict:
    """``[C] <= [B]``: ``B`` is totally ``C``-reflexive.

    With ``check`` both modules are first confirmed semidualizing.
    """
    if check:
        for name, x in (("C", c), ("B", b)):
            sv = is_semidualizing(x, bound)
            if not sv.passed:
                raise NotSemidualizing(f"{name} = {x.name} is not semidualizing: {[f.condition for f in sv.failures]}")
    v = is_totally_reflexive_wrt(b, c, bound)
    v.check = "precedes"
    return v


def in_auslander_class(m: Module, c: Module, bound: int = 4) -> Verdict:
    """``gamma : M -> Hom(C, C (x) M)`` iso, Tor and Ext vanishing."""
    v = Verdict("auslander_class", bound)
    t = tensor_module(c, m)
    hom = hom_module(c, t)
    cols = []
    for j in range(m.dim):
        mat = t.proj[:, [a * m.dim + j for a in range(c.dim)]]
        cols.append(hom.coords_of(mat)[0] if hom.dim else np.zeros(0, dtype=np.int64))
    gamma = np.array(cols, dtype=np.int64).T.reshape(hom.dim, m.dim)
    rk = el.rank(gamma, m.p) if gamma.size else 0
    if not (hom.dim == m.dim and rk == m.dim):
        v.fail("gamma not bijective", 0, {"dim_M": m.dim, "dim_target": hom.dim, "rank": rk})
        return v
    tors = tor_dims(c, m, bound)
    for i in range(1, bound + 1):
        if tors[i]:
            v.fail("Tor(C,M)", i, tors[i])
    if v.passed:
        _ext_vanishing(v, c, t, bound, "Ext(C,C*M)")
    return v


# -------------------------------------------------------- constructions


def dagger(m: Module, c: Module) -> Module:
    return hom_module(m, c)


def composition_pairing(m: Module, b: Module, c: Module, preconditions=None, bound: int = 4):
    """``phi : Hom(M, B) (x) Hom(B, C) -> Hom(M, C)``, ``f (x) g -> g f``.

    ``preconditions`` are the verdicts for ``[C] <= [B]`` and for ``M``
    being totally B- and C-reflexive; when omitted they are computed.
    """
    if preconditions is None:
        preconditions = [
            precedes(c, b, bound, check=False),
            is_totally_reflexive_wrt(m, b, bound),
            is_totally_reflexive_wrt(m, c, bound),
        ]
    bad = [pv.check for pv in preconditions if not pv.passed]
    if bad or len(preconditions) < 3:
        raise PreconditionUnverified(f"composition map hypotheses not verified: {bad or 'missing'}")
    hmb, hbc, hmc = hom_module(m, b), hom_module(b, c), hom_module(m, c)
    t = tensor_module(hmb, hbc)
    fs, gs = hmb.basis_matrices(), hbc.basis_matrices()
    cols = []
    for s in range(t.dim):
        x, y = t.rep_pair(s)
        cols.append(hmc.coords_of(el.matmul(gs[y], fs[x], m.p))[0])
    mat = np.array(cols, dtype=np.int64).T.reshape(hmc.dim, t.dim)
    phi = ModuleHom(t, hmc, mat)
    v = Verdict("composition_iso", bound)
    if not phi.is_valid():
        v.fail("composition map is not linear over R")
    if not phi.is_iso():
        v.fail("composition map not bijective", 0, {"source": t.dim, "target": hmc.dim, "rank": phi.rank()})
    return phi, v


# ---------------------------------------------------------------- chains


class Chain:
    """``[C_n] <| ... <| [C_1] <| [C_0 = R]`` given by ``modules = [C_1 .. C_n]``."""

    def __init__(self, ring: Algebra, modules: list[Module], names: list[str] | None = None):
        for c in modules:
            if c.ring is not ring:
                raise ValueError("chain modules must share the ring")
        self.ring = ring
        self.modules = list(modules)
        self.names = names or [c.name or f"C{i + 1}" for i, c in enumerate(modules)]
        self.verdicts: dict = {}
        self._regular = regular_module(ring)
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return len(self.modules)

    def c(self, i: int) -> Module:
        return self._regular if i == 0 else self.modules[i - 1]

    def __repr__(self) -> str:
        return f"Chain(n={self.n}, {' <| '.join(reversed(self.names))} <| R)"


def iterated_dagger(chain: Chain, subset) -> Module:
    """``C_i = C_0^{dag C_{i_1} ... dag C_{i_j}}`` folded left to right."""
    key = ("dagger", tuple(sorted(subset)))
    if key not in chain._cache:
        x = chain.c(0)
        for i in sorted(subset):
            x = hom_module(x, chain.c(i))
        chain._cache[key] = x
    return chain._cache[key]


def b_module(chain: Chain, subset) -> Module:
    """``B_i = B_{i_1} (x) ... (x) B_{i_j}`` with ``B_i = Hom(C_{i-1}, C_i)``."""
    key = ("b", tuple(sorted(subset)))
    if key not in chain._cache:
        idx = sorted(subset)
        if not idx:
            out = chain.c(0)
        else:
            parts = [hom_module(chain.c(i - 1), chain.c(i)) for i in idx]
            out = reduce(tensor_module, parts)
        out.name = "B{" + ",".join(map(str, idx)) + "}"
        chain._cache[key] = out
    return chain._cache[key]


def check_chain_product(chain: Chain, trials: int = 64, seed: int = 0, bound: int = 3) -> Verdict:
    """``C_n = C_0 (x) Hom(C_0, C_1) (x) ... (x) Hom(C_{n-1}, C_n)``."""
    v = Verdict("chain_product", bound)
    prod = b_module(chain, range(1, chain.n + 1))
    probe = iso_probe(prod, chain.c(chain.n), trials, seed, bound)
    v.details["probe"] = probe.status
    if probe.is_not_iso:
        v.fail("product not isomorphic to C_n", None, {probe.invariant: probe.values})
    elif not probe.is_iso:
        v.unknowns.append("isomorphism B_[n] ~ C_n not settled")
    return v


def distinctness(chain: Chain, trials: int = 64, seed: int = 0, bound: int = 3) -> Verdict:
    """Pairwise non-isomorphism of ``C_0, ..., C_n`` by the iso probe."""
    v = Verdict("distinct", bound)
    for i, j in combinations(range(chain.n + 1), 2):
        probe = iso_probe(chain.c(i), chain.c(j), trials, seed, bound)
        v.details[f"{i},{j}"] = probe.status if not probe.is_not_iso else probe.invariant
        if probe.is_iso:
            v.fail(f"C{i} isomorphic to C{j}")
        elif not probe.is_not_iso:
            v.unknowns.append(f"distinctness of C{i}, C{j}")
    return v


def verify_chain(chain: Chain, bound: int = 4, trials: int = 64, seed: int = 0) -> Verdict:
    """Each ``C_i`` semidualizing, ``[C_i] <= [C_j]`` for ``i > j``, distinct classes."""
    v = Verdict("chain", bound)
    for i in range(1, chain.n + 1):
        v.absorb(is_semidualizing(chain.c(i), bound), f"C{i} semidualizing")
    if not v.passed:
        return v
    for j in range(chain.n):
        for i in range(j + 1, chain.n + 1):
            v.absorb(precedes(chain.c(i), chain.c(j), bound, check=False), f"[C{i}] <= [C{j}]")
    v.absorb(distinctness(chain, trials, seed, min(bound, 3)))
    chain.verdicts["chain"] = v
    return v


def is_suitable_chain(chain: Chain, bound: int = 4, trials: int = 64, seed: int = 0) -> Verdict:
    """Chain conditions plus: ``C_i`` totally ``C_t``-reflexive for ``max(i) <= t <= n``.

    Distinctness the probe cannot settle is reported in ``unknowns``
    (suitable modulo distinctness) instead of failing.
    """
    v = Verdict("suitable", bound)
    v.absorb(verify_chain(chain, bound, trials, seed))
    if not v.passed:
        return v
    n = chain.n
    checked = 0
    for size in range(n + 1):
        for subset in combinations(range(1, n + 1), size):
            ci = iterated_dagger(chain, subset)
            lo = max(subset) if subset else 1
            for t in range(lo, n + 1):
                tag = "C{" + ",".join(map(str, subset)) + f"}} vs C{t}"
                v.absorb(is_totally_reflexive_wrt(ci, chain.c(t), bound), tag)
                checked += 1
    v.details["reflexivity_checks"] = checked
    chain.verdicts["suitable"] = v
    return v


def rechain_at(chain: Chain, k: int, bound: int = 4, verify: bool = True) -> Chain:
    """``[C_n] <| .. <| [C_k] <| [C_1^dag] <| .. <| [C_{k-1}^dag] <| [R]``, daggers into ``C_k``."""
    if not 1 <= k <= chain.n:
        raise ValueError(f"k must lie in 1..{chain.n}")
    ck = chain.c(k)
    prefix = [hom_module(chain.c(j), ck) for j in range(k - 1, 0, -1)]
    for j, x in zip(range(k - 1, 0, -1), prefix):
        x.name = f"Hom(C{j},C{k})"
    mods = prefix + [chain.c(i) for i in range(k, chain.n + 1)]
    out = Chain(chain.ring, mods)
    if verify:
        v = is_suitable_chain(out, bound)
        if not v.passed:
            from .errors import HypothesisFailed

            raise HypothesisFailed(f"re-chained sequence is not suitable: {[f.condition for f in v.failures][:3]}")
    return out
