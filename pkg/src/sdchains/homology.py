"""Free resolutions, Ext and Tor, Bass numbers and complete resolutions.

A free module ``A^b`` has coordinates ``(j, a)`` at index ``j * dim A + a``
(generator ``j`` times basis vector ``e_a``).  A map between free modules is
stored by its *entries*: one sparse ``b_target x b_source`` matrix per
algebra basis vector, so the coefficient of ``e_l`` in the image of ``e_j``
is ``sum_a entries[a][l, j] e_a``.

When the algebra and the modules carry a consistent multigrading every map
is homogeneous and all eliminations are done one degree at a time.  Without
a grading everything sits in a single block, which gives the same numbers
more slowly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from . import exactlin as el
from .algebra import Algebra, AlgebraHom
from .errors import MultipleNonvanishingDegrees, NotAnnihilated, NotTotallyReflexive
from .fmodule import (
    Module,
    descend,
    hom_module,
    linear_dual,
    min_generators,
    regular_module,
    residue_field,
    restrict_scalars,
    submodule,
    quotient_module,
)

# ---------------------------------------------------------------- gradings


def ring_is_homogeneous(a: Algebra) -> bool:
    cached = getattr(a, "_homogeneous", None)
    if cached is not None:
        return cached
    ok = a.degrees is not None
    if ok:
        i, j, k = np.nonzero(a.mult)
        ok = bool(np.array_equal(a.degrees[i] + a.degrees[j], a.degrees[k]))
    a._homogeneous = ok
    return ok


def module_is_homogeneous(m: Module) -> bool:
    if m.degrees is None or not ring_is_homogeneous(m.ring):
        return False
    if m.degrees.shape[1] != m.ring.degrees.shape[1]:
        return False
    a, r, c = np.nonzero(m.action)
    return bool(np.array_equal(m.ring.degrees[a] + m.degrees[c], m.degrees[r]))


def grading(ring: Algebra, *modules: Module) -> tuple[np.ndarray, list[np.ndarray]]:
    """Degrees used for block elimination; zero-width when any piece is ungraded."""
    if all(module_is_homogeneous(m) for m in modules) and ring_is_homogeneous(ring):
        return ring.degrees, [m.degrees for m in modules]
    return np.zeros((ring.dim, 0), dtype=np.int64), [np.zeros((m.dim, 0), dtype=np.int64) for m in modules]


def _groups(degs: np.ndarray) -> dict[tuple, np.ndarray]:
    if degs.shape[0] == 0:
        return {}
    if degs.shape[1] == 0:
        return {(): np.arange(degs.shape[0])}
    keys, inv = np.unique(degs, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    order = np.argsort(inv, kind="stable")
    bounds = np.searchsorted(inv[order], np.arange(len(keys) + 1))
    return {tuple(int(x) for x in keys[g]): order[bounds[g] : bounds[g + 1]] for g in range(len(keys))}


def free_degrees(shifts: np.ndarray, fiber: np.ndarray) -> np.ndarray:
    """Coordinate degrees of ``(j, c)``: generator shift plus fiber degree."""
    return (shifts[:, None, :] + fiber[None, :, :]).reshape(shifts.shape[0] * fiber.shape[0], fiber.shape[1])


def block_rank(mat, row_deg: np.ndarray, col_deg: np.ndarray, p: int) -> int:
    """Rank of a homogeneous sparse matrix, computed block by block."""
    if mat.shape[0] == 0 or mat.shape[1] == 0 or mat.nnz == 0:
        return 0
    rows = _groups(row_deg)
    csr = mat.tocsr()
    total = 0
    for key, cols in _groups(col_deg).items():
        r = rows.get(key)
        if r is None:
            continue
        sub = csr[r][:, cols]
        if sub.nnz:
            total += el.rank(np.mod(sub.toarray(), p), p)
    return total


# ------------------------------------------------------------ free maps


@dataclass
class FreeMap:
    """Map ``A^{b_src} -> A^{b_tgt}`` stored by entries (see module docstring)."""

    ring: Algebra
    entries: list  # per basis vector: sparse (b_tgt x b_src)
    src_shifts: np.ndarray
    tgt_shifts: np.ndarray

    @property
    def n_src(self) -> int:
        return self.src_shifts.shape[0]

    @property
    def n_tgt(self) -> int:
        return self.tgt_shifts.shape[0]

    def dual(self) -> "FreeMap":
        """``Hom_A(-, A)`` of the map, in dual bases."""
        return FreeMap(self.ring, [e.T.tocsr() for e in self.entries], -self.tgt_shifts, -self.src_shifts)

    def entry_tensor(self) -> np.ndarray:
        """Dense ``(b_tgt, b_src, dim A)`` array of ring coefficients."""
        out = np.zeros((self.n_tgt, self.n_src, self.ring.dim), dtype=np.int64)
        for a, e in enumerate(self.entries):
            if e.nnz:
                out[:, :, a] = e.toarray()
        return np.mod(out, self.ring.p)

    def with_coefficients(self, m: Module, transpose: bool = False):
        """``sum_a entries[a] (x) A_M[a]``: the map after tensoring with ``M``.

        With ``transpose`` the entries are transposed first, which gives the
        induced map ``Hom(A^{b_tgt}, M) -> Hom(A^{b_src}, M)``.
        """
        p = self.ring.p
        shape = (self.n_src, self.n_tgt) if transpose else (self.n_tgt, self.n_src)
        out = sparse.csr_matrix((shape[0] * m.dim, shape[1] * m.dim), dtype=np.int64)
        for a, e in enumerate(self.entries):
            if e.nnz == 0 or not m.action[a].any():
                continue
            blk = e.T if transpose else e
            out = out + sparse.kron(blk, sparse.csr_matrix(m.action[a]), format="csr")
        out.data %= p
        out.eliminate_zeros()
        return out

    def k_matrix(self):
        return self.with_coefficients(regular_module(self.ring))

    def compose(self, first: "FreeMap") -> "FreeMap":
        """``self`` after ``first`` (entries multiply in the ring)."""
        p = self.ring.p
        c = self.ring.mult
        d = self.ring.dim
        out = [sparse.csr_matrix((self.n_tgt, first.n_src), dtype=np.int64) for _ in range(d)]
        for a, ea in enumerate(self.entries):
            if ea.nnz == 0:
                continue
            for b, eb in enumerate(first.entries):
                if eb.nnz == 0:
                    continue
                prod = (ea @ eb).tocsr()
                if prod.nnz == 0:
                    continue
                for k in np.flatnonzero(c[a, b]):
                    out[k] = out[k] + prod * int(c[a, b, k])
        for o in out:
            o.data %= p
            o.eliminate_zeros()
        return FreeMap(self.ring, out, first.src_shifts, self.tgt_shifts)

    def is_zero(self) -> bool:
        return all(e.nnz == 0 for e in self.entries)


def _entries_from_vectors(vectors: list[tuple[np.ndarray, np.ndarray]], n_tgt: int, d: int) -> list:
    """Entries of the map whose t-th generator goes to ``vectors[t]``.

    Each vector is ``(coordinates, values)`` in the free module ``A^{n_tgt}``.
    """
    rows: list[list[int]] = [[] for _ in range(d)]
    cols: list[list[int]] = [[] for _ in range(d)]
    vals: list[list[int]] = [[] for _ in range(d)]
    for t, (coords, values) in enumerate(vectors):
        nz = values != 0
        for coord, v in zip(coords[nz], values[nz]):
            j, a = divmod(int(coord), d)
            rows[a].append(j)
            cols[a].append(t)
            vals[a].append(int(v))
    n = len(vectors)
    return [
        sparse.csr_matrix((np.array(vals[a], dtype=np.int64), (rows[a], cols[a])), shape=(n_tgt, n))
        for a in range(d)
    ]


# ----------------------------------------------------------- resolutions


@dataclass
class Resolution:
    """Free resolution ``... -> F_1 -> F_0 -> M``.

    ``generators`` holds the images in ``M`` of the basis of ``F_0`` (rows);
    ``maps[i - 1]`` is ``d_i : F_i -> F_{i-1}``.
    """

    module: Module
    generators: np.ndarray
    shifts: list
    maps: list = field(default_factory=list)
    minimal: bool = True

    @property
    def ring(self) -> Algebra:
        return self.module.ring

    @property
    def betti(self) -> list[int]:
        return [s.shape[0] for s in self.shifts]

    @property
    def length(self) -> int:
        return len(self.maps)

    def differential(self, i: int) -> FreeMap:
        return self.maps[i - 1]

    def augmentation_matrix(self) -> np.ndarray:
        """k-matrix of ``F_0 -> M``; column ``(j, a)`` is ``e_a * generators[j]``."""
        return _augmentation(self.module, self.generators)

    def differential_matrix(self, i: int) -> np.ndarray:
        """Dense k-matrix of ``d_i`` (``d_0`` is the augmentation)."""
        if i == 0:
            return self.augmentation_matrix()
        return np.mod(self.maps[i - 1].k_matrix().toarray(), self.ring.p)

    def check(self) -> dict[str, bool]:
        """``d d = 0``, stagewise exactness by rank count, minimality."""
        p = self.ring.p
        d = self.ring.dim
        degA, (degM,) = grading(self.ring, self.module)
        aug = sparse.csr_matrix(self.augmentation_matrix())
        degs = [free_degrees(s, degA) for s in self.shifts]
        ranks = [block_rank(aug, degM, degs[0], p)]
        dd = not np.mod((aug @ self.maps[0].k_matrix()).toarray(), p).any() if self.maps else True
        for i, fm in enumerate(self.maps, start=1):
            ranks.append(block_rank(fm.k_matrix(), degs[i - 1], degs[i], p))
            if i >= 2:
                comp = self.maps[i - 2].compose(fm)
                dd = dd and comp.is_zero()
        exact = ranks[0] == self.module.dim
        for i in range(1, len(ranks)):
            # dim ker d_{i-1} == rank d_i
            exact = exact and self.betti[i - 1] * d - ranks[i - 1] == ranks[i]
        minimal = all(fm.entries[0].nnz == 0 for fm in self.maps)
        return {"dd_zero": bool(dd), "exact": bool(exact), "minimal": bool(minimal)}


def _augmentation(m: Module, gens: np.ndarray) -> np.ndarray:
    b = gens.shape[0]
    cols = np.einsum("iab,jb->jia", m.action, gens).reshape(b * m.ring.dim, m.dim)
    return np.mod(cols.T, m.p)


def _kernel_generators(ring: Algebra, phi, src_deg: np.ndarray, tgt_deg: np.ndarray, b: int, rng=None):
    """Homogeneous generators of ``ker(phi)`` for ``phi`` out of ``A^b``.

    Minimal unless ``rng`` is given, in which case one redundant generator
    per nonzero degree block is added (used to build padded resolutions).
    Returns a list of ``(degree, coordinates, values)``.
    """
    p, d = ring.p, ring.dim
    csc = phi.tocsc()
    rows_by = _groups(tgt_deg)
    src_groups = _groups(src_deg)
    kernels: dict[tuple, np.ndarray] = {}
    for key, cols in src_groups.items():
        rows = rows_by.get(key)
        if rows is None or csc.shape[0] == 0:
            ker = el.identity(len(cols))
        else:
            sub = csc[:, cols][rows].toarray()
            ker = el.kernel_basis(np.mod(sub, p), p) if sub.any() else el.identity(len(cols))
        if ker.shape[0]:
            kernels[key] = ker
    if not kernels:
        return []
    # m K, degree by degree
    radical: dict[tuple, list[np.ndarray]] = {}
    eye_b = sparse.identity(b, dtype=np.int64, format="csr")
    for x in ring.generators:
        shift = tuple(int(v) for v in ring.degrees[x]) if src_deg.shape[1] else ()
        act = sparse.kron(eye_b, sparse.csr_matrix(ring.left[x]), format="csr")
        for key, ker in kernels.items():
            tkey = tuple(k + s for k, s in zip(key, shift))
            tcols = src_groups.get(tkey)
            if tcols is None:
                continue
            sub = act[tcols][:, src_groups[key]]
            if sub.nnz == 0:
                continue
            img = np.mod(ker @ sub.T.toarray(), p)
            radical.setdefault(tkey, []).append(img)
    out = []
    for key in sorted(kernels):
        ker = kernels[key]
        n = ker.shape[1]
        rad = radical.get(key)
        space = el.Subspace.span(np.concatenate(rad), n, p) if rad else el.Subspace.zero(n, p)
        chosen = space.extend_from(ker)
        cols = src_groups[key]
        for c in chosen:
            out.append((key, cols, ker[c]))
        if rng is not None and space.dim:
            extra = space.basis[int(rng.integers(space.dim))]
            out.append((key, cols, extra))
    return out


def _resolve_steps(m: Module, length: int, rng=None):
    """Yield the resolution after each new stage (it is extended in place)."""
    ring = m.ring
    p, d = ring.p, ring.dim
    degA, (degM,) = grading(ring, m)
    g = degA.shape[1]
    _, gens = min_generators(m)
    if rng is not None and gens.shape[0]:
        # a redundant generator (twice the first one) breaks minimality at F_0
        gens = np.concatenate([gens, np.mod(2 * gens[:1], p)])
    if gens.shape[0]:
        lead = np.argmax(gens != 0, axis=1)
        shifts0 = degM[lead]
    else:
        shifts0 = np.zeros((0, g), dtype=np.int64)
    res = Resolution(m, gens, [shifts0], minimal=rng is None)
    yield res
    phi = sparse.csr_matrix(_augmentation(m, gens))
    tgt_deg = degM
    for _ in range(length):
        b = res.shifts[-1].shape[0]
        if b == 0:
            return
        src_deg = free_degrees(res.shifts[-1], degA)
        kg = _kernel_generators(ring, phi, src_deg, tgt_deg, b, rng)
        if not kg:
            return
        shifts = np.array([key for key, _, _ in kg], dtype=np.int64).reshape(len(kg), g)
        entries = _entries_from_vectors([(cols, vec) for _, cols, vec in kg], b, d)
        fm = FreeMap(ring, entries, shifts, res.shifts[-1])
        res.maps.append(fm)
        res.shifts.append(shifts)
        phi = fm.k_matrix()
        tgt_deg = src_deg
        yield res


def _resolve(m: Module, length: int, rng=None) -> Resolution:
    res = None
    for res in _resolve_steps(m, length, rng):
        pass
    return res


def _truncate(res: Resolution, length: int) -> Resolution:
    if res.length <= length:
        return res
    return Resolution(res.module, res.generators, res.shifts[: length + 1], res.maps[:length], res.minimal)


def minimal_free_resolution(m: Module, length: int) -> Resolution:
    """Minimal free resolution of ``m`` computed through ``F_length``.

    Results are cached on the module, so asking again for a shorter or
    equal length is free.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    cached = getattr(m, "_resolution", None)
    if cached is not None and (cached[1] >= length):
        return _truncate(cached[0], length)
    res = _resolve(m, length)
    m._resolution = (res, length)
    return res


def padded_resolution(m: Module, length: int, seed: int = 0) -> Resolution:
    """A deliberately non-minimal resolution (one redundant generator per stage)."""
    return _resolve(m, length, rng=np.random.default_rng(seed))


def cheaper_resolution(first: Module, second: Module, length: int) -> tuple[int, Resolution]:
    """Resolve two modules in lockstep and return whichever finishes first.

    The one with fewer generators in its newest stage is advanced next, so
    the work is at most about twice that of the cheaper resolution.
    Returns ``(index, resolution)`` with ``index`` 0 or 1.
    """
    for idx, mod in enumerate((first, second)):
        cached = getattr(mod, "_resolution", None)
        if cached is not None and cached[1] >= length:
            return idx, _truncate(cached[0], length)
    steps = [_resolve_steps(first, length), _resolve_steps(second, length)]
    current = [next(steps[0]), next(steps[1])]
    while True:
        idx = 0 if current[0].betti[-1] <= current[1].betti[-1] else 1
        try:
            next(steps[idx])
        except StopIteration:
            mod = (first, second)[idx]
            mod._resolution = (current[idx], length)
            return idx, current[idx]


# ------------------------------------------------------------- Ext / Tor


def _stage_dims(res: Resolution, n: Module, up_to: int, contravariant: bool) -> list[int]:
    ring = res.ring
    p = ring.p
    _, (_, degN) = grading(ring, res.module, n)
    if degN.shape[1] == 0:
        # grading unusable for this pair: drop it everywhere
        shifts = [np.zeros((s.shape[0], 0), dtype=np.int64) for s in res.shifts]
    else:
        shifts = res.shifts
    sign = -1 if contravariant else 1
    coord = [free_degrees(sign * s, degN) for s in shifts]
    ranks = []  # ranks[i] = rank of the map induced by d_i
    for i in range(1, min(up_to + 1, res.length) + 1):
        mat = res.maps[i - 1].with_coefficients(n, transpose=contravariant)
        if contravariant:
            ranks.append(block_rank(mat, coord[i], coord[i - 1], p))
        else:
            ranks.append(block_rank(mat, coord[i - 1], coord[i], p))
    dims = []
    for i in range(up_to + 1):
        b = res.betti[i] if i < len(res.betti) else 0
        r_in = ranks[i - 1] if 1 <= i <= len(ranks) else 0
        r_out = ranks[i] if i < len(ranks) else 0
        dims.append(b * n.dim - r_in - r_out)
    return dims


def ext_dims(m: Module, n: Module, up_to: int, resolution: Resolution | None = None, method: str = "auto") -> list[int]:
    """``[dim Ext^0_A(M, N), ..., dim Ext^up_to_A(M, N)]``.

    ``method`` is ``"resolve"`` (use a resolution of ``M``), ``"dual"``
    (use ``Ext^i(M, N) = D Tor_i(D N, M)``, resolving ``D N``) or ``"auto"``
    (whichever resolution turns out cheaper).
    """
    _same_ring(m, n)
    if resolution is not None or method == "resolve":
        res = resolution or minimal_free_resolution(m, up_to + 1)
        return _stage_dims(res, n, up_to, contravariant=True)
    dn = linear_dual(n)
    if method == "dual":
        return _stage_dims(minimal_free_resolution(dn, up_to + 1), m, up_to, contravariant=False)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    idx, res = cheaper_resolution(m, dn, up_to + 1)
    if idx == 0:
        return _stage_dims(res, n, up_to, contravariant=True)
    return _stage_dims(res, m, up_to, contravariant=False)


def tor_dims(m: Module, n: Module, up_to: int, resolution: Resolution | None = None, method: str = "auto") -> list[int]:
    """``[dim Tor_0^A(M, N), ..., dim Tor_up_to^A(M, N)]``.

    ``method="resolve"`` always resolves ``M``; ``"auto"`` may resolve ``N``
    instead (Tor is balanced).
    """
    _same_ring(m, n)
    if resolution is not None or method == "resolve":
        res = resolution or minimal_free_resolution(m, up_to + 1)
        return _stage_dims(res, n, up_to, contravariant=False)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    idx, res = cheaper_resolution(m, n, up_to + 1)
    return _stage_dims(res, (n, m)[idx], up_to, contravariant=False)


def _same_ring(m: Module, n: Module) -> None:
    if m.ring is not n.ring:
        raise ValueError("modules over different rings")


@dataclass
class BassSequence:
    values: list[int]
    bound: int

    def __post_init__(self):
        if any(v < 0 for v in self.values):
            raise ValueError("Bass numbers are nonnegative")


def bass_numbers(m: Module, up_to: int) -> BassSequence:
    """``mu^i = dim Ext^i(k, M)``, read off as the Betti numbers of ``D M``."""
    res = minimal_free_resolution(linear_dual(m), up_to)
    betti = res.betti + [0] * (up_to + 1 - len(res.betti))
    return BassSequence(betti[: up_to + 1], up_to)


def shift_equivalent(a: BassSequence | list, b: BassSequence | list, max_shift: int) -> int | None:
    """Some ``e`` with ``I_a(t) = t^e I_b(t)`` on the overlap, searched by ``|e|``.

    That is ``a_i = b_{i-e}`` wherever both sides are defined.
    """
    av = list(getattr(a, "values", a))
    bv = list(getattr(b, "values", b))
    for mag in range(max_shift + 1):
        for e in ((0,) if mag == 0 else (mag, -mag)):
            idx = [i for i in range(len(av)) if 0 <= i - e < len(bv)]
            if idx and all(av[i] == bv[i - e] for i in idx):
                return e
    return None


# ------------------------------------------------------ syzygies, G-dim


def syzygy(m: Module, g: int) -> Module:
    """The ``g``-th syzygy of ``m`` in its minimal resolution."""
    if g == 0:
        return m
    res = minimal_free_resolution(m, g)
    if res.length < g:
        return Module(m.ring, np.zeros((m.ring.dim, 0, 0), dtype=np.int64), name=f"Syz{g}")
    from .fmodule import free_module

    free = free_module(m.ring, res.betti[g - 1])
    image = np.mod(res.maps[g - 1].k_matrix().toarray(), m.p)
    space = el.Subspace.span(image.T, free.dim, m.p)
    sub, _ = submodule(free, space, name=f"Syz{g}({m.name})")
    return sub


def gdim_probe(m: Module, bound: int) -> int | None:
    """Least ``g <= bound`` whose syzygy is totally reflexive, or ``None``."""
    from .semidual import is_totally_reflexive_wrt

    r = regular_module(m.ring)
    for g in range(bound + 1):
        if is_totally_reflexive_wrt(syzygy(m, g), r, bound).passed:
            return g
    return None


def ext_module(m: Module, n: Module, i: int) -> Module:
    """``Ext^i_A(M, N)`` with its A-module structure."""
    if i == 0:
        return hom_module(m, n)
    p = m.p
    res = minimal_free_resolution(m, i + 1)
    from .fmodule import free_module

    if res.length < i:
        return Module(m.ring, np.zeros((m.ring.dim, 0, 0), dtype=np.int64), name=f"Ext{i}")
    # Hom(F_i, N) = N^{b_i}; the A-action is diagonal
    b = res.betti[i]
    ambient = Module(m.ring, np.stack([np.kron(el.identity(b), n.action[a]) for a in range(m.ring.dim)]))
    if i < res.length:
        out = np.mod(res.maps[i].with_coefficients(n, transpose=True).toarray(), p)
        z = el.Subspace.span(el.kernel_basis(out, p), ambient.dim, p)
    else:
        z = el.Subspace.whole(ambient.dim, p)
    inc = np.mod(res.maps[i - 1].with_coefficients(n, transpose=True).toarray(), p)
    bnd = el.Subspace.span(inc.T, ambient.dim, p)
    zmod, zinc = submodule(ambient, z)
    bcoords = z.coords(bnd.basis) if bnd.dim else el.zeros(0, z.dim)
    q, _ = quotient_module(zmod, el.Subspace.span(bcoords, z.dim, p), name=f"Ext{i}")
    return q


def ext_over_quotient(proj: AlgebraHom, c: Module, i: int) -> Module:
    """``Ext^i_A(S, C)`` for ``S = A / ker(proj)``, returned as an S-module."""
    s_as_a = restrict_scalars(regular_module(proj.target), proj, name="S")
    e = ext_module(s_as_a, c, i)
    return descend(e, proj, name=f"Ext^{i}(S,{c.name})")


# -------------------------------------------------- complete resolutions


@dataclass
class CompleteResolution:
    """Window ``T_{-W-1} <- ... <- T_W`` of a complete resolution.

    ``maps[i]`` is the differential leaving ``T_i`` for ``-W <= i <= W``;
    ``T_i = F_i`` for ``i >= 0`` so the comparison map to ``resolution`` is
    the identity there.
    """

    module: Module
    window: int
    maps: dict
    shifts: dict
    resolution: Resolution
    coresolution: Resolution

    @property
    def interior(self) -> range:
        return range(-self.window + 1, self.window)

    def comparison_is_identity(self, i: int) -> bool:
        return i >= 0

    def homology_dims(self, n: Module, contravariant: bool) -> dict[int, int]:
        ring = self.module.ring
        p = ring.p
        _, (_, degN) = grading(ring, self.module, n)
        sign = -1 if contravariant else 1
        coord = {}
        for i, s in self.shifts.items():
            if degN.shape[1] != s.shape[1]:
                s = np.zeros((s.shape[0], 0), dtype=np.int64)
                degN = np.zeros((n.dim, 0), dtype=np.int64)
            coord[i] = free_degrees(sign * s, degN)
        ranks = {}
        for i, fm in self.maps.items():
            mat = fm.with_coefficients(n, transpose=contravariant)
            if contravariant:
                ranks[i] = block_rank(mat, coord[i], coord[i - 1], p)
            else:
                ranks[i] = block_rank(mat, coord[i - 1], coord[i], p)
        return {i: self.shifts[i].shape[0] * n.dim - ranks[i] - ranks[i + 1] for i in self.interior}

    def check(self) -> dict[str, bool]:
        r = regular_module(self.module.ring)
        dd = all(self.maps[i - 1].compose(self.maps[i]).is_zero() for i in range(-self.window + 1, self.window + 1))
        exact = all(v == 0 for v in self.homology_dims(r, contravariant=False).values())
        hom_exact = all(v == 0 for v in self.homology_dims(r, contravariant=True).values())
        return {"dd_zero": dd, "exact": exact, "hom_exact": hom_exact}


def complete_resolution(m: Module, window: int = 3, bound: int = 4, check_reflexive: bool = True) -> CompleteResolution:
    """Splice the resolution of ``M`` with the dual of the resolution of ``M*``."""
    from .semidual import is_totally_reflexive_wrt

    ring = m.ring
    r = regular_module(ring)
    if check_reflexive:
        verdict = is_totally_reflexive_wrt(m, r, bound)
        if not verdict.passed:
            raise NotTotallyReflexive(f"{m.name} is not totally reflexive: {verdict.failures}")
    star = hom_module(m, r)
    f = minimal_free_resolution(m, window)
    gres = minimal_free_resolution(star, window)
    g = grading(ring, m, star)[0].shape[1]
    ung = g == 0

    def fix(s):
        if ung:
            return np.zeros((s.shape[0], 0), dtype=np.int64)
        return s

    def zero_map(src, tgt):
        return FreeMap(ring, [sparse.csr_matrix((tgt.shape[0], src.shape[0]), dtype=np.int64)] * ring.dim, src, tgt)

    shifts: dict[int, np.ndarray] = {}
    empty = np.zeros((0, 0 if ung else g), dtype=np.int64)
    for i in range(window + 1):
        shifts[i] = fix(f.shifts[i]) if i < len(f.shifts) else empty
    for j in range(1, window + 2):
        s = gres.shifts[j - 1] if j - 1 < len(gres.shifts) else None
        shifts[-j] = -fix(s) if s is not None else empty
    maps: dict[int, FreeMap] = {}
    for i in range(1, window + 1):
        if i <= f.length:
            fm = f.maps[i - 1]
            maps[i] = FreeMap(ring, fm.entries, shifts[i], shifts[i - 1])
        else:
            maps[i] = zero_map(shifts[i], shifts[i - 1])
    for j in range(1, window + 1):
        if j <= gres.length:
            dm = gres.maps[j - 1].dual()
            maps[-j] = FreeMap(ring, dm.entries, shifts[-j], shifts[-j - 1])
        else:
            maps[-j] = zero_map(shifts[-j], shifts[-j - 1])
    # splice F_0 -> G_0^*: e_j -> sum_l psi_l(m_j) e_l^*
    mats = star.basis_matrices()
    psis = np.mod(np.tensordot(gres.generators, mats, axes=1), ring.p) if gres.generators.shape[0] else np.zeros((0, ring.dim, m.dim), dtype=np.int64)
    vals = np.mod(np.einsum("lam,jm->lja", psis, f.generators), ring.p)  # (c0, b0, dim A)
    entries = [sparse.csr_matrix(vals[:, :, a]) for a in range(ring.dim)]
    maps[0] = FreeMap(ring, entries, shifts[0], shifts[-1])
    return CompleteResolution(m, window, maps, shifts, f, gres)


def tate_ext_dims(m: Module, n: Module, window: int = 3, bound: int = 4, complete: CompleteResolution | None = None) -> dict[int, int]:
    """``dim H^i Hom(T, N)`` for ``i`` in the interior of the window."""
    t = complete or complete_resolution(m, window, bound)
    return t.homology_dims(n, contravariant=True)


def tate_tor_dims(m: Module, n: Module, window: int = 3, bound: int = 4, complete: CompleteResolution | None = None) -> dict[int, int]:
    """``dim H_i (T (x) N)`` for ``i`` in the interior of the window."""
    t = complete or complete_resolution(m, window, bound)
    return t.homology_dims(n, contravariant=False)


def single_nonvanishing_degree(dims: list[int]) -> int:
    nz = [i for i, v in enumerate(dims) if v]
    if len(nz) != 1:
        raise MultipleNonvanishingDegrees(f"nonzero Ext in degrees {nz}")
    return nz[0]


__all__ = [
    "BassSequence",
    "CompleteResolution",
    "FreeMap",
    "NotAnnihilated",
    "Resolution",
    "bass_numbers",
    "block_rank",
    "complete_resolution",
    "ext_dims",
    "cheaper_resolution",
    "ext_module",
    "ext_over_quotient",
    "gdim_probe",
    "grading",
    "minimal_free_resolution",
    "padded_resolution",
    "residue_field",
    "shift_equivalent",
    "single_nonvanishing_degree",
    "syzygy",
    "tate_ext_dims",
    "tate_tor_dims",
    "tor_dims",
]
