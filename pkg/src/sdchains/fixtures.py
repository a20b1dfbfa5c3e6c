"""The standard example algebras and chains.

``F1 = F_p[x]/(x^2)``, ``F2 = F_p[x,y]/(x^2, xy, y^2)`` and ``F3 = F2 (x) F2``.
All are monomial algebras, so they come with the fine multigrading by
exponent vectors, which the homology code uses to split eliminations.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .algebra import Algebra, tensor_algebra, validate_algebra
from .exactlin import DEFAULT_PRIME
from .fmodule import Module, dualizing_module, free_module, regular_module, tensor_module


def monomial_algebra(exponents, p: int = DEFAULT_PRIME, names=None) -> Algebra:
    """``k[x_1..x_n] / (monomials outside the list)``.

    ``exponents`` must be closed under division and start with the zero
    vector.  Basis vectors are graded by their exponent vectors.
    """
    exps = [tuple(int(v) for v in e) for e in exponents]
    index = {e: i for i, e in enumerate(exps)}
    if len(index) != len(exps):
        raise ValueError("repeated monomial")
    if any(v != 0 for v in exps[0]):
        raise ValueError("the first monomial must be 1")
    d = len(exps)
    mult = np.zeros((d, d, d), dtype=np.int64)
    for i, a in enumerate(exps):
        for j, b in enumerate(exps):
            k = index.get(tuple(x + y for x, y in zip(a, b)))
            if k is not None:
                mult[i, j, k] = 1
    if names is None:
        names = [_monomial_name(e) for e in exps]
    return validate_algebra(mult, p, names=names, degrees=np.array(exps, dtype=np.int64))


def _monomial_name(e, letters="xyzwuv") -> str:
    parts = []
    for v, c in zip(e, letters):
        if v == 1:
            parts.append(c)
        elif v > 1:
            parts.append(f"{c}^{v}")
    return "".join(parts) or "1"


def truncated_polynomial(n_vars: int, top: int, p: int = DEFAULT_PRIME) -> Algebra:
    """``k[x_1..x_n] / (x_1..x_n)^(top+1)``."""
    exps = sorted((e for e in product(range(top + 1), repeat=n_vars) if sum(e) <= top), key=lambda e: (sum(e), tuple(-v for v in e)))
    return monomial_algebra(exps, p)


def f1(p: int = DEFAULT_PRIME) -> Algebra:
    return monomial_algebra([(0,), (1,)], p)


def f2(p: int = DEFAULT_PRIME) -> Algebra:
    return monomial_algebra([(0, 0), (1, 0), (0, 1)], p)


def f3(p: int = DEFAULT_PRIME) -> Algebra:
    return tensor_algebra(f2(p), f2(p))


def tensor_of_modules_over_product(m: Module, n: Module, ring: Algebra) -> Module:
    """``M (x)_k N`` over ``ring = A (x)_k B`` for ``M`` over ``A``, ``N`` over ``B``."""
    act = np.einsum("iab,jcd->ijacbd", m.action, n.action).reshape(
        ring.dim, m.dim * n.dim, m.dim * n.dim
    )
    degrees = None
    if m.degrees is not None and n.degrees is not None:
        degrees = np.concatenate(
            [np.repeat(m.degrees, n.dim, axis=0), np.tile(n.degrees, (m.dim, 1))], axis=1
        )
    return Module(ring, act, name=f"{m.name}*{n.name}", degrees=degrees)


def f3_chain(p: int = DEFAULT_PRIME) -> tuple[Algebra, list[Module]]:
    """``[D(F3)] <| [D(F2) (x) F2] <| [F3]`` as ``(F3, [C1, C2])``."""
    a = f2(p)
    r = tensor_algebra(a, a)
    c1 = tensor_of_modules_over_product(dualizing_module(a), regular_module(a), r)
    c1.name = "D(F2)*F2"
    c2 = dualizing_module(r)
    c2.name = "D(F3)"
    return r, [c1, c2]


__all__ = [
    "f1",
    "f2",
    "f3",
    "f3_chain",
    "free_module",
    "monomial_algebra",
    "tensor_module",
    "tensor_of_modules_over_product",
    "truncated_polynomial",
]
