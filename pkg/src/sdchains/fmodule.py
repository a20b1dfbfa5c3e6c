"""Finitely generated modules over an :class:`~sdchains.algebra.Algebra`.

A module is a representation: one ``m x m`` action matrix per algebra basis
vector.  Hom and tensor are computed as linear systems; every construction
that produces a module returns the structural maps needed to interpret its
elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import exactlin as el
from .algebra import Algebra, AlgebraHom
from .errors import ModuleError, NotAnnihilated


class Module:
    """Left module over ``ring`` with ``action[i]`` the matrix of ``e_i``."""

    def __init__(self, ring: Algebra, action, name: str | None = None, degrees=None, check: bool = False):
        self.ring = ring
        self.p = ring.p
        act = np.mod(np.asarray(action, dtype=np.int64), ring.p)
        if act.ndim != 3 or act.shape[0] != ring.dim or act.shape[1] != act.shape[2]:
            raise ModuleError(f"need {ring.dim} square action matrices, got shape {act.shape}")
        self.action = act
        self.dim = act.shape[1]
        self.name = name
        self.degrees = None if degrees is None else _degree_rows(degrees, self.dim)
        if check:
            self.validate()

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"Module{tag}(dim={self.dim}, ring dim={self.ring.dim})"

    def validate(self) -> "Module":
        """Raise ``ModuleError`` unless the actions form a representation."""
        m, c, p = self.dim, self.ring.mult, self.p
        if not np.array_equal(self.action[0], el.identity(m)):
            raise ModuleError("unit does not act as the identity")
        lhs = np.mod(np.einsum("iab,jbc->ijac", self.action, self.action), p)
        rhs = np.mod(np.einsum("ijk,kac->ijac", c, self.action), p)
        bad = np.argwhere((lhs != rhs).any(axis=(2, 3)))
        if bad.size:
            i, j = bad[0]
            raise ModuleError(f"action of e{i} e{j} is not the product of the actions")
        return self

    @property
    def gen_actions(self) -> np.ndarray:
        return self.action[list(self.ring.generators)]

    def act(self, r) -> np.ndarray:
        return np.mod(np.tensordot(np.asarray(r, dtype=np.int64), self.action, axes=1), self.p)

    @cached_property
    def radical_space(self) -> el.Subspace:
        """``m M`` as a subspace of the coordinates."""
        gens = self.gen_actions
        if gens.shape[0] == 0 or self.dim == 0:
            return el.Subspace.zero(self.dim, self.p)
        return el.Subspace.span(np.transpose(gens, (0, 2, 1)).reshape(-1, self.dim), self.dim, self.p)

    @cached_property
    def socle(self) -> el.Subspace:
        gens = self.gen_actions
        if gens.shape[0] == 0 or self.dim == 0:
            return el.Subspace.whole(self.dim, self.p)
        return el.Subspace.span(el.kernel_basis(gens.reshape(-1, self.dim), self.p), self.dim, self.p)


def _degree_rows(degrees, dim: int) -> np.ndarray:
    d = np.asarray(degrees, dtype=np.int64)
    return d if d.ndim == 2 and d.shape[0] == dim else d.reshape(dim, -1)


def free_module(ring: Algebra, rank: int = 1) -> Module:
    act = np.zeros((ring.dim, rank * ring.dim, rank * ring.dim), dtype=np.int64)
    for b in range(rank):
        s = slice(b * ring.dim, (b + 1) * ring.dim)
        act[:, s, s] = ring.left
    degrees = None if ring.degrees is None else np.tile(ring.degrees, (rank, 1))
    return Module(ring, act, name=f"R^{rank}", degrees=degrees)


def residue_field(ring: Algebra) -> Module:
    act = np.zeros((ring.dim, 1, 1), dtype=np.int64)
    act[0, 0, 0] = 1
    return Module(ring, act, name="k", degrees=_zero_degrees(ring, 1))


def zero_module(ring: Algebra) -> Module:
    return Module(ring, np.zeros((ring.dim, 0, 0), dtype=np.int64), name="0", degrees=_zero_degrees(ring, 0))


def _zero_degrees(ring: Algebra, n: int):
    return None if ring.degrees is None else np.zeros((n, ring.degrees.shape[1]), dtype=np.int64)


def linear_dual(m: Module, shift=None) -> Module:
    """``Hom_k(M, k)`` with ``(r f)(x) = f(r x)``; dual basis coordinates."""
    degrees = None
    if m.degrees is not None:
        degrees = -m.degrees if shift is None else np.asarray(shift) - m.degrees
    return Module(m.ring, np.transpose(m.action, (0, 2, 1)).copy(), name=f"D({m.name})", degrees=degrees)


def dualizing_module(ring: Algebra) -> Module:
    """The linear dual ``D(A) = Hom_k(A, k)``."""
    return linear_dual(free_module(ring), shift=None if ring.degrees is None else ring.degrees.max(axis=0))


def with_degrees(m: Module, degree) -> Module:
    """Copy of ``m`` with every basis vector placed in one multidegree."""
    deg = np.tile(np.asarray(degree, dtype=np.int64), (m.dim, 1))
    return Module(m.ring, m.action, name=m.name, degrees=deg)


@dataclass
class ModuleHom:
    source: Module
    target: Module
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.mod(np.asarray(self.matrix, dtype=np.int64).reshape(self.target.dim, self.source.dim), self.source.p)

    def is_valid(self) -> bool:
        p = self.source.p
        for a, b in zip(self.source.action, self.target.action):
            if not np.array_equal(el.matmul(self.matrix, a, p), el.matmul(b, self.matrix, p)):
                return False
        return True

    def rank(self) -> int:
        return el.rank(self.matrix, self.source.p)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def compose(self, first: "ModuleHom") -> "ModuleHom":
        return ModuleHom(first.source, self.target, el.matmul(self.matrix, first.matrix, self.source.p))


def _homogeneous_degrees(space: el.Subspace, coord_degrees) -> np.ndarray | None:
    if coord_degrees is None:
        return None
    return coord_degrees[list(space.pivots)] if space.dim else np.zeros((0, coord_degrees.shape[1]), dtype=np.int64)


class HomModule(Module):
    """``Hom_R(M, N)`` with its basis of matrices.

    Elements are coordinate vectors; ``space`` holds the rref basis of the
    hom space inside ``Hom_k(M, N)`` flattened row-major (target x source).
    """

    def __init__(self, source: Module, target: Module, space: el.Subspace, action, degrees=None):
        super().__init__(source.ring, action, name=f"Hom({source.name},{target.name})", degrees=degrees)
        self.source = source
        self.target = target
        self.space = space

    def matrix_of(self, coeffs) -> np.ndarray:
        v = el.matmul(np.asarray(coeffs, dtype=np.int64).reshape(1, -1), self.space.basis, self.p)
        return v.reshape(self.target.dim, self.source.dim)

    def basis_matrices(self) -> np.ndarray:
        return self.space.basis.reshape(self.space.dim, self.target.dim, self.source.dim)

    def coords_of(self, matrix) -> np.ndarray:
        width = self.target.dim * self.source.dim
        if width == 0:
            return np.zeros((1, 0), dtype=np.int64)
        m = np.mod(np.asarray(matrix, dtype=np.int64).reshape(-1, width), self.p)
        if not self.space.contains(m):
            raise ValueError("matrix is not a module homomorphism")
        return self.space.coords(m)

    def hom_of(self, coeffs) -> ModuleHom:
        return ModuleHom(self.source, self.target, self.matrix_of(coeffs))


def hom_space(m: Module, n: Module) -> el.Subspace:
    """The subspace of ``Hom_k(M, N)`` commuting with the ring action."""
    p = m.p
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return el.Subspace.zero(dm * dn, p)
    basis = el.identity(dn * dm)
    for a, b in zip(m.gen_actions, n.gen_actions):
        if basis.shape[0] == 0:
            break
        x = basis.reshape(-1, dn, dm)
        res = np.mod(x @ a - b @ x, p).reshape(basis.shape[0], -1)
        ker = el.kernel_basis(res.T, p)
        basis = el.matmul(ker, basis, p)
    return el.Subspace.span(basis, dn * dm, p)


def _coord_degrees_hom(m: Module, n: Module):
    if m.degrees is None or n.degrees is None:
        return None
    return (n.degrees[:, None, :] - m.degrees[None, :, :]).reshape(n.dim * m.dim, m.degrees.shape[1])


def hom_module(m: Module, n: Module) -> HomModule:
    """``Hom_R(M, N)`` with action ``(r f)(x) = f(r x)``."""
    if m.ring is not n.ring:
        raise ModuleError("modules over different rings")
    space = hom_space(m, n)
    p = m.p
    h = space.dim
    act = np.zeros((m.ring.dim, h, h), dtype=np.int64)
    if h:
        mats = space.basis.reshape(h, n.dim, m.dim)
        for i in range(m.ring.dim):
            img = np.mod(mats @ m.action[i], p).reshape(h, -1)
            act[i] = space.coords(img).T
    return HomModule(m, n, space, act, degrees=_homogeneous_degrees(space, _coord_degrees_hom(m, n)))


class TensorModule(Module):
    """``M (x)_R N`` as a quotient of ``M (x)_k N``.

    ``proj`` maps a coordinate vector of ``M (x)_k N`` (index ``i*dim N + j``)
    to quotient coordinates; ``reps`` lists the pure tensors whose classes
    form the basis.
    """

    def __init__(self, left: Module, right: Module, relations: el.Subspace, proj, action, degrees=None):
        super().__init__(left.ring, action, name=f"({left.name}*{right.name})", degrees=degrees)
        self.left = left
        self.right = right
        self.relations = relations
        self.proj = proj
        self.reps = tuple(relations.complement_coordinates())

    def element(self, x, y) -> np.ndarray:
        """Class of the pure tensor ``x (x) y``."""
        return el.matmul(self.proj, np.kron(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)), self.p)

    def rep_pair(self, s: int) -> tuple[int, int]:
        r = self.reps[s]
        return divmod(r, self.right.dim)


def tensor_module(m: Module, n: Module) -> TensorModule:
    if m.ring is not n.ring:
        raise ModuleError("modules over different rings")
    p = m.p
    dm, dn = m.dim, n.dim
    big = dm * dn
    rel_rows = []
    for a, b in zip(m.gen_actions, n.gen_actions):
        op = np.mod(np.kron(a, el.identity(dn)) - np.kron(el.identity(dm), b), p)
        rel_rows.append(op.T)  # rows = images of pure basis tensors
    rels = el.Subspace.span(np.concatenate(rel_rows) if rel_rows else el.zeros(0, big), big, p)
    keep = rels.complement_coordinates()
    proj = rels.reduce(el.identity(big))[:, keep].T.copy() if big else el.zeros(0, 0)
    q = len(keep)
    act = np.zeros((m.ring.dim, q, q), dtype=np.int64)
    eye_n = el.identity(dn)
    for i in range(m.ring.dim):
        op = np.kron(m.action[i], eye_n)[:, keep]
        act[i] = el.matmul(proj, op, p)
    degrees = None
    if m.degrees is not None and n.degrees is not None:
        degrees = (m.degrees[:, None, :] + n.degrees[None, :, :]).reshape(big, m.degrees.shape[1])[keep]
    return TensorModule(m, n, rels, proj, act, degrees=degrees)


def min_generators(m: Module) -> tuple[int, np.ndarray]:
    """Minimal number of generators and lifted generator vectors (rows)."""
    rad = m.radical_space
    idx = rad.complement_coordinates()
    gens = el.identity(m.dim)[idx] if idx else el.zeros(0, m.dim)
    return len(idx), gens


def free_cover_matrix(m: Module, gens=None) -> np.ndarray:
    """k-matrix of ``R^b -> M`` sending the j-th basis vector to ``gens[j]``.

    Column ``j * dim R + i`` is ``e_i * gens[j]``.
    """
    if gens is None:
        _, gens = min_generators(m)
    d = m.ring.dim
    b = gens.shape[0]
    cols = np.einsum("iab,jb->jia", m.action, gens).reshape(b * d, m.dim)
    return np.mod(cols.T, m.p)


def is_cyclic(m: Module) -> bool:
    return min_generators(m)[0] == 1


def is_free(m: Module) -> bool:
    b, gens = min_generators(m)
    if b == 0:
        return True
    cover = free_cover_matrix(m, gens)
    return b * m.ring.dim - el.rank(cover, m.p) == 0


@dataclass
class DirectSum:
    module: Module
    inclusions: tuple[ModuleHom, ModuleHom]
    projections: tuple[ModuleHom, ModuleHom]


def direct_sum(m: Module, n: Module) -> DirectSum:
    if m.ring is not n.ring:
        raise ModuleError("modules over different rings")
    dm, dn = m.dim, n.dim
    act = np.zeros((m.ring.dim, dm + dn, dm + dn), dtype=np.int64)
    act[:, :dm, :dm] = m.action
    act[:, dm:, dm:] = n.action
    degrees = None
    if m.degrees is not None and n.degrees is not None:
        degrees = np.concatenate([m.degrees, n.degrees])
    s = Module(m.ring, act, name=f"({m.name}+{n.name})", degrees=degrees)
    eye = el.identity(dm + dn)
    inc = (ModuleHom(m, s, eye[:, :dm]), ModuleHom(n, s, eye[:, dm:]))
    pro = (ModuleHom(s, m, eye[:dm]), ModuleHom(s, n, eye[dm:]))
    return DirectSum(s, inc, pro)


def submodule(m: Module, space: el.Subspace, name=None) -> tuple[Module, ModuleHom]:
    """A submodule given by an invariant subspace, with its inclusion."""
    basis = space.basis
    k = space.dim
    act = np.zeros((m.ring.dim, k, k), dtype=np.int64)
    for i in range(m.ring.dim):
        img = el.matmul(basis, m.action[i].T, m.p)  # rows: images of basis vectors
        if not space.contains(img):
            raise ModuleError("subspace is not invariant")
        act[i] = space.coords(img).T
    degrees = None if m.degrees is None else m.degrees[list(space.pivots)]
    sub = Module(m.ring, act, name=name, degrees=degrees)
    return sub, ModuleHom(sub, m, basis.T)


def quotient_module(m: Module, space: el.Subspace, name=None) -> tuple[Module, ModuleHom]:
    keep = space.complement_coordinates()
    proj = space.reduce(el.identity(m.dim))[:, keep].T.copy()
    act = np.zeros((m.ring.dim, len(keep), len(keep)), dtype=np.int64)
    for i in range(m.ring.dim):
        act[i] = el.matmul(proj, m.action[i][:, keep], m.p)
    degrees = None if m.degrees is None else m.degrees[keep]
    q = Module(m.ring, act, name=name, degrees=degrees)
    return q, ModuleHom(m, q, proj)


def restrict_scalars(m: Module, hom: AlgebraHom, name=None) -> Module:
    """View a module over ``hom.target`` as a module over ``hom.source``."""
    if hom.target is not m.ring:
        raise ModuleError("homomorphism does not land in the module's ring")
    act = np.mod(np.einsum("ks,kab->sab", hom.matrix, m.action), m.p)
    return Module(hom.source, act, name=name or m.name, degrees=m.degrees)


def descend(m: Module, proj: AlgebraHom, name=None) -> Module:
    """View an ``A``-module killed by ``ker(proj)`` as an ``A/I``-module."""
    if proj.source is not m.ring:
        raise ModuleError("projection does not start at the module's ring")
    ker = proj.kernel()
    if ker.dim:
        kill = np.mod(np.tensordot(ker.basis, m.action, axes=1), m.p)
        if kill.any():
            raise NotAnnihilated("kernel of the projection does not annihilate the module")
    if getattr(proj.target, "quotient_of", None) is proj.source:
        reps = proj.target.rep_indices
    else:
        reps = _section_indices(proj)
    return Module(proj.target, m.action[list(reps)], name=name or m.name, degrees=m.degrees)


def _section_indices(proj: AlgebraHom) -> list[int]:
    """Source basis indices mapping onto the target basis vectors."""
    out = []
    cols = proj.matrix
    for t in range(proj.target.dim):
        e = np.zeros(proj.target.dim, dtype=np.int64)
        e[t] = 1
        hits = np.flatnonzero((cols == e[:, None]).all(axis=0))
        if hits.size == 0:
            raise ValueError("projection has no basis section")
        out.append(int(hits[0]))
    return out


def regular_module(ring: Algebra) -> Module:
    m = free_module(ring, 1)
    m.name = "R"
    return m


@dataclass
class IsoProbe:
    """Outcome of :func:`iso_probe`: ``status`` is iso, not_iso or unknown."""

    status: str
    hom: ModuleHom | None = None
    invariant: str | None = None
    values: tuple = field(default=())

    @property
    def is_iso(self) -> bool:
        return self.status == "iso"

    @property
    def is_not_iso(self) -> bool:
        return self.status == "not_iso"


def module_invariants(m: Module, bound: int = 3):
    """Iso-invariants in increasing cost: dim, b0, socle, action ranks, Betti, Bass."""
    from . import homology

    yield "dim", lambda: m.dim
    yield "b0", lambda: min_generators(m)[0]
    yield "socle_dim", lambda: m.socle.dim
    yield "action_ranks", lambda: tuple(el.rank(a, m.p) for a in m.action)
    yield "betti", lambda: tuple(homology.minimal_free_resolution(m, bound).betti)
    yield "bass", lambda: tuple(homology.bass_numbers(m, bound).values)


def iso_probe(m: Module, n: Module, trials: int = 64, seed: int = 0, bound: int = 3) -> IsoProbe:
    """Three-tier isomorphism probe: invariants, random search, Unknown.

    Besides invariants of each module separately, the probe compares
    ``dim End(M), dim Hom(N, M), dim Hom(M, N), dim End(N)``, which must all
    agree when ``M`` and ``N`` are isomorphic.
    """
    if m.ring is not n.ring:
        raise ModuleError("modules over different rings")
    for (name, fm), (_, fn) in zip(module_invariants(m, bound), module_invariants(n, bound)):
        a, b = fm(), fn()
        if a != b:
            return IsoProbe("not_iso", invariant=name, values=(a, b))
        if name == "socle_dim":
            found = _random_iso(m, n, trials, seed)
            if found is not None:
                return IsoProbe("iso", hom=found)
        if name == "action_ranks":
            dims = tuple(hom_space(x, y).dim for x, y in ((m, m), (n, m), (m, n), (n, n)))
            if len(set(dims)) > 1:
                return IsoProbe("not_iso", invariant="hom_dims", values=dims)
    found = _random_iso(m, n, trials, seed + 1)
    if found is not None:
        return IsoProbe("iso", hom=found)
    return IsoProbe("unknown")


def _random_iso(m: Module, n: Module, trials: int, seed: int) -> ModuleHom | None:
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return ModuleHom(m, n, el.zeros(0, 0))
    space = hom_space(m, n)
    if space.dim == 0:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        c = rng.integers(0, m.p, size=space.dim)
        mat = el.matmul(c.reshape(1, -1), space.basis, m.p).reshape(n.dim, m.dim)
        if el.is_invertible(mat, m.p):
            return ModuleHom(m, n, mat)
    return None
