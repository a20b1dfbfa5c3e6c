"""Trivial extensions ``R |x M`` and module transport along them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactlin as el
from .algebra import Algebra, AlgebraHom
from .fmodule import HomModule, Module, hom_module, regular_module, restrict_scalars


@dataclass
class TrivialExtension:
    """``total = base |x module``: base basis first, then the fiber basis."""

    base: Algebra
    module: Module
    total: Algebra
    embed: AlgebraHom
    project: AlgebraHom

    @property
    def labels(self) -> list[str]:
        return ["Base"] * self.base.dim + ["Fiber"] * self.module.dim

    @property
    def fiber_indices(self) -> range:
        return range(self.base.dim, self.total.dim)


def trivial_extension(base: Algebra, module: Module) -> TrivialExtension:
    """Multiplication ``(r, m)(r', m') = (r r', r m' + r' m)``."""
    if module.ring is not base:
        raise ValueError("module is not over the base algebra")
    d, m = base.dim, module.dim
    t = d + m
    mult = np.zeros((t, t, t), dtype=np.int64)
    mult[:d, :d, :d] = base.mult
    # (e_i, 0)(0, f_a) = (0, e_i f_a); column a of action[i] is e_i f_a
    block = np.transpose(module.action, (0, 2, 1))  # [i, a, :] = e_i f_a
    mult[:d, d:, d:] = block
    mult[d:, :d, d:] = np.transpose(block, (1, 0, 2))
    names = list(base.names) + [f"m{a}" for a in range(m)]
    degrees = None
    if base.degrees is not None and module.degrees is not None:
        degrees = np.concatenate([base.degrees, module.degrees])
    total = Algebra(mult, base.p, names=names, degrees=degrees)
    embed = AlgebraHom(base, total, np.eye(t, d, dtype=np.int64))
    project = AlgebraHom(total, base, np.eye(d, t, dtype=np.int64))
    return TrivialExtension(base, module, total, embed, project)


def restrict(n: Module, ext: TrivialExtension) -> Module:
    """Restriction of scalars along ``R -> R |x M``."""
    return restrict_scalars(n, ext.embed)


def total_as_base_module(ext: TrivialExtension) -> Module:
    return restrict(regular_module(ext.total), ext)


@dataclass
class Coinduced:
    """``Hom_R(R |x M, Y)`` as a module over the trivial extension.

    ``hom`` is the underlying R-module of maps; ``base_piece`` is the copy of
    ``Y`` (maps vanishing on the fiber, determined by their value at 1) and
    ``fiber_piece`` the copy of ``Hom_R(M, Y)`` (maps vanishing on the base).
    ``from_y`` and ``from_fiber_hom`` are the coordinate injections.
    """

    module: Module
    hom: HomModule
    fiber_hom: HomModule
    base_piece: el.Subspace
    fiber_piece: el.Subspace
    from_y: np.ndarray
    from_fiber_hom: np.ndarray

    def split(self, coords) -> tuple[np.ndarray, np.ndarray]:
        """Components (value at 1 in Y, restriction to M in Hom(M, Y))."""
        mat = self.hom.matrix_of(coords)
        d = self.hom.source.ring.dim
        y = mat[:, 0]
        f = self.fiber_hom.coords_of(mat[:, d:])[0]
        return y, f


def coinduced(ext: TrivialExtension, y: Module) -> Coinduced:
    """``Hom_R(R_k, Y)`` with ``(s psi)(x) = psi(s x)``."""
    src = total_as_base_module(ext)
    hom = hom_module(src, y)
    p = ext.base.p
    mats = hom.basis_matrices()
    h = hom.dim
    act = np.zeros((ext.total.dim, h, h), dtype=np.int64)
    for s in range(ext.total.dim if h else 0):
        img = np.mod(mats @ ext.total.left[s], p).reshape(h, -1)
        act[s] = hom.space.coords(img).T
    module = Module(ext.total, act, name=f"Coind({y.name})", degrees=hom.degrees)

    d = ext.base.dim
    fiber_hom = hom_module(ext.module, y)
    # Y -> Hom: y |-> (r, m) |-> r y
    cols_y = []
    for j in range(y.dim):
        mat = el.zeros(y.dim, src.dim)
        vec = el.zeros(y.dim, 1)
        vec[j, 0] = 1
        mat[:, :d] = np.mod(np.einsum("iab,bc->ai", y.action, vec), p)
        cols_y.append(hom.coords_of(mat)[0])
    from_y = np.array(cols_y, dtype=np.int64).T.reshape(h, y.dim)
    cols_f = []
    for f in fiber_hom.basis_matrices():
        mat = el.zeros(y.dim, src.dim)
        mat[:, d:] = f
        cols_f.append(hom.coords_of(mat)[0])
    from_fiber = np.array(cols_f, dtype=np.int64).T.reshape(h, fiber_hom.dim)
    base_piece = el.Subspace.span(from_y.T, h, p)
    fiber_piece = el.Subspace.span(from_fiber.T, h, p)
    return Coinduced(module, hom, fiber_hom, base_piece, fiber_piece, from_y, from_fiber)


def chain_over_extension(chain, k: int, bound: int = 4, verify: bool = True):
    """The length ``n-1`` chain over ``R_k = R |x Hom(C_{k-1}, C_k)``.

    ``C_l^(k) = Hom_R(R_k, Hom(C_{k-1-l}, C_k))`` for ``l < k-1`` and
    ``Hom_R(R_k, C_{l+1})`` for ``l >= k-1``.  Returns the extension and
    the chain ``[C_1^(k), ..., C_{n-1}^(k)]``; with ``verify`` the input
    must be suitable and so must the output.
    """
    from .errors import HypothesisFailed
    from .semidual import Chain, is_suitable_chain

    n = chain.n
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    if verify:
        v = chain.verdicts.get("suitable") or is_suitable_chain(chain, bound)
        if not v.passed:
            raise HypothesisFailed(f"input chain is not suitable: {[f.condition for f in v.failures][:3]}")
    ck = chain.c(k)
    ext = trivial_extension(chain.ring, hom_module(chain.c(k - 1), ck))
    mods, names = [], []
    for l in range(1, n):
        if l < k - 1:
            y, tag = hom_module(chain.c(k - 1 - l), ck), f"Hom(C{k - 1 - l},C{k})"
        else:
            y, tag = chain.c(l + 1), chain.names[l]
        co = coinduced(ext, y)
        co.module.name = f"Hom(R{k},{tag})"
        co.module.splitting = co
        mods.append(co.module)
        names.append(co.module.name)
    out = Chain(ext.total, mods, names)
    if verify and n > 1:
        v = is_suitable_chain(out, bound)
        if not v.passed:
            raise HypothesisFailed(f"derived chain is not suitable: {[f.condition for f in v.failures][:3]}")
    return ext, out
