"""Command layer shared by the HTTP service and the command line.

Each ``run_*`` function takes plain JSON-shaped input, returns a
:class:`Report`, and raises only for malformed input (``SdchainsError``
subclasses other than :class:`HypothesisFailed`, which becomes a failed
check).
"""

from __future__ import annotations

import time
from typing import Any, Literal

from pydantic import BaseModel, Field, computed_field

from .algebra import is_gorenstein, socle_dim
from .errors import HypothesisFailed
from .fmodule import min_generators
from .presentation import (
    all_subsets,
    build_presentation,
    converse_chain_from_presentation,
    presentation_from_json,
    presentation_to_json,
    verify_subset_multiplication,
    verify_tensor_lemmas,
    verify_theorem_main,
)
from .semidual import Verdict, is_semidualizing, is_suitable_chain, verify_chain
from .session import load_session

Status = Literal["pass", "fail", "unknown"]


class CheckResult(BaseModel):
    operation: str
    arguments: dict[str, Any] = Field(default_factory=dict)
    status: Status
    failures: list[dict[str, Any]] = Field(default_factory=list)
    unknowns: list[str] = Field(default_factory=list)
    details: dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    command: str
    results: list[CheckResult] = Field(default_factory=list)
    bounds: dict[str, int] = Field(default_factory=dict)
    timing: float = 0.0

    @computed_field
    @property
    def exit_code(self) -> int:
        """0 all pass, 1 some failure, 3 no failure but something unknown."""
        statuses = {r.status for r in self.results}
        if "fail" in statuses:
            return 1
        return 3 if "unknown" in statuses else 0

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            args = " ".join(f"{k}={v}" for k, v in r.arguments.items())
            out.append(f"{r.status.upper():7s} {r.operation} {args}".rstrip())
            out.extend(f"        - {f['condition']}" + (f" (degree {f['degree']})" if f.get("degree") is not None else "") for f in r.failures[:10])
            out.extend(f"        ? {u}" for u in r.unknowns[:10])
        bounds = ", ".join(f"{k}={v}" for k, v in self.bounds.items())
        out.append(f"{self.command}: exit {self.exit_code}" + (f" [{bounds}]" if bounds else "") + f" in {self.timing:.2f}s")
        return out


def result_of(v: Verdict, operation: str | None = None, **arguments) -> CheckResult:
    d = v.to_dict()
    return CheckResult(
        operation=operation or v.check,
        arguments=arguments,
        status=d["status"],
        failures=d["failures"],
        unknowns=d["unknowns"],
        details=d["details"],
    )


def _hypothesis_failure(operation: str, exc: HypothesisFailed, **arguments) -> CheckResult:
    return CheckResult(
        operation=operation,
        arguments=arguments,
        status="fail",
        failures=[{"condition": f"hypothesis failed: {exc}", "degree": None, "witness": None}],
    )


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def run_validate(doc: dict) -> Report:
    with _Timer() as t:
        s = load_session(doc, validate=False)
        results = []
        for name, a in s.algebras.items():
            results.append(
                CheckResult(
                    operation="algebra",
                    arguments={"name": name},
                    status="pass",
                    details={"dim": a.dim, "embedding_dim": a.embedding_dim, "socle_dim": socle_dim(a), "gorenstein": is_gorenstein(a)},
                )
            )
        for name, problem in s.problems:
            results.append(
                CheckResult(
                    operation="invariants",
                    arguments={"name": name},
                    status="fail",
                    failures=[{"condition": problem, "degree": None, "witness": None}],
                )
            )
        for name, m in s.modules.items():
            results.append(
                CheckResult(
                    operation="module",
                    arguments={"name": name},
                    status="pass",
                    details={"dim": m.dim, "b0": min_generators(m)[0], "socle_dim": m.socle.dim},
                )
            )
        for name, c in s.chains.items():
            results.append(CheckResult(operation="chain", arguments={"name": name}, status="pass", details={"n": c.n}))
    return Report(command="validate", results=results, timing=t.elapsed)


def run_semidual(doc: dict, module: str, bound: int | None = None) -> Report:
    s = load_session(doc)
    bound = bound or s.options["N"]
    with _Timer() as t:
        v = is_semidualizing(s.module(module), bound)
    return Report(command="semidual", results=[result_of(v, module=module)], bounds={"N": bound}, timing=t.elapsed)


def run_chain(doc: dict, chain: str, bound: int | None = None, suitable: bool = False, trials: int | None = None, seed: int | None = None) -> Report:
    s = load_session(doc)
    bound, trials, seed = bound or s.options["N"], trials or s.options["trials"], s.options["seed"] if seed is None else seed
    with _Timer() as t:
        c = s.chain(chain)
        v = is_suitable_chain(c, bound, trials, seed) if suitable else verify_chain(c, bound, trials, seed)
    return Report(command="chain", results=[result_of(v, chain=chain)], bounds={"N": bound}, timing=t.elapsed)


def run_present(doc: dict, chain: str, bound: int | None = None, trials: int | None = None, seed: int | None = None) -> tuple[Report, dict | None]:
    """Build ``Q``; returns the report and the ``Q`` document (``None`` on failure)."""
    s = load_session(doc)
    bound, trials, seed = bound or s.options["N"], trials or s.options["trials"], s.options["seed"] if seed is None else seed
    c = s.chain(chain)
    with _Timer() as t:
        try:
            pres = build_presentation(c.ring, c, bound, trials, seed)
        except HypothesisFailed as exc:
            return Report(command="present", results=[_hypothesis_failure("present", exc, chain=chain)], bounds={"N": bound}), None
        qdoc = presentation_to_json(pres)
        mult = result_of(verify_subset_multiplication(pres), chain=chain)
    built = CheckResult(
        operation="present",
        arguments={"chain": chain},
        status="pass",
        details={"dim_Q": pres.q.dim, "blocks": qdoc["blocks"], "ideal_dims": [i.dim for i in pres.ideals]},
    )
    return Report(command="present", results=[built, mult], bounds={"N": bound}, timing=t.elapsed), qdoc


def run_verify_theorem(qdoc: dict, bound: int = 4, window: int = 3) -> Report:
    pres = presentation_from_json(qdoc)
    with _Timer() as t:
        v = verify_theorem_main(pres, bound, window)
    results = [result_of(v, "theorem")]
    for item, pairs in v.details["items"].items():
        for pair, status in pairs.items():
            results.append(CheckResult(operation=f"item{item}", arguments={"pair": pair}, status=status))
    return Report(command="verify-theorem", results=results, bounds={"N": bound, "W": window}, timing=t.elapsed)


def run_converse(qdoc: dict, bound: int = 4, bass_bound: int = 5, trials: int = 64, seed: int = 0) -> Report:
    pres = presentation_from_json(qdoc)
    with _Timer() as t:
        res = converse_chain_from_presentation(pres.q, pres.ideals, bound, bass_bound, trials, seed)
    results = [result_of(res.distinctness, "converse"), result_of(res.chain_verdict, "converse_chain")]
    return Report(command="converse", results=results, bounds={"N": bound, "bass": bass_bound}, timing=t.elapsed)


def run_tensor_lemmas(qdoc: dict, bound: int = 4, pairs: list[tuple[tuple[int, ...], tuple[int, ...]]] | None = None) -> Report:
    pres = presentation_from_json(qdoc)
    if pairs is None:
        subsets = all_subsets(pres.n)
        pairs = [(a, b) for a in subsets for b in subsets]
    with _Timer() as t:
        results = [
            result_of(verify_tensor_lemmas(pres, a, b, bound), "tensor_lemmas", lam=list(a), gam=list(b)) for a, b in pairs
        ]
    return Report(command="tensor-lemmas", results=results, bounds={"N": bound}, timing=t.elapsed)


__all__ = [
    "CheckResult",
    "Report",
    "run_chain",
    "run_converse",
    "run_present",
    "run_semidual",
    "run_tensor_lemmas",
    "run_validate",
    "run_verify_theorem",
]
