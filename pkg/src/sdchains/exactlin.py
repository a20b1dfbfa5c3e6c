"""Dense exact linear algebra over a prime field F_p.

Matrices are ``numpy.int64`` arrays whose entries are kept reduced into
``[0, p)``.  Small matrices are eliminated with vectorised numpy row
operations; large ones are handed to FLINT's ``nmod_mat`` (via
python-flint), which is exact and much faster.  Both paths return the same
reduced row echelon form, so every derived basis is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

try:  # pragma: no cover - exercised implicitly when available
    import flint
except ImportError:  # pragma: no cover
    flint = None

DEFAULT_PRIME = 5

# entries above which elimination is delegated to FLINT
FLINT_THRESHOLD = 160 * 160


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def as_matrix(entries, p: int, shape=None) -> np.ndarray:
    """Coerce nested lists / arrays to a reduced int64 matrix."""
    m = np.array(entries, dtype=np.int64)
    if shape is not None:
        m = m.reshape(shape)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else m.reshape(0, 0)
    return np.mod(m, p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.mod(a @ b, p)


def inv_scalar(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse mod p")
    return pow(int(a), p - 2, p)


def _pivots_of(r: np.ndarray, rank: int) -> list[int]:
    if rank == 0:
        return []
    return [int(c) for c in np.argmax(r[:rank] != 0, axis=1)]


def _rref_numpy(m: np.ndarray, p: int) -> tuple[np.ndarray, int, list[int]]:
    a = np.mod(m, p)
    rows, cols = a.shape
    inverses = np.array([0] + [pow(i, p - 2, p) for i in range(1, p)], dtype=np.int64)
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = np.mod(a[r] * inverses[a[r, c]], p)
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = np.mod(a[hit] - np.outer(col[hit], a[r]), p)
        pivots.append(c)
        r += 1
    return a, r, pivots


def _to_flint(m: np.ndarray, p: int):
    rows, cols = m.shape
    return flint.nmod_mat(rows, cols, m.ravel().tolist(), p)


def _from_flint(fm, rows: int, cols: int) -> np.ndarray:
    it = map(int, fm.entries())
    return np.fromiter(it, dtype=np.int64, count=rows * cols).reshape(rows, cols)


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns of ``m``."""
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return np.mod(m, p), 0, []
    if flint is not None and rows * cols > FLINT_THRESHOLD:
        red, rank = _to_flint(np.mod(m, p), p).rref()
        out = _from_flint(red, rows, cols)
        return out, int(rank), _pivots_of(out, int(rank))
    return _rref_numpy(m, p)


def rank(m: np.ndarray, p: int) -> int:
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return 0
    if flint is not None and rows * cols > FLINT_THRESHOLD:
        return int(_to_flint(np.mod(m, p), p).rank())
    return _rref_numpy(m, p)[1]


def _kernel_from_rref(red: np.ndarray, rk: int, pivots: list[int], cols: int, p: int) -> np.ndarray:
    free = [c for c in range(cols) if c not in set(pivots)]
    kb = zeros(len(free), cols)
    if not free:
        return kb
    free_idx = np.array(free)
    kb[np.arange(len(free)), free_idx] = 1
    if rk:
        # v_f = e_f - sum_i red[i, f] e_{pivot_i}
        kb[:, np.array(pivots)] = np.mod(-red[:rk][:, free_idx].T, p)
    return kb


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning the right null space ``{v : m @ v = 0}``.

    One basis vector per free column of the rref, with a 1 in that column.
    """
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    if rows == 0:
        return identity(cols)
    red, rk, pivots = rref(m, p)
    return _kernel_from_rref(red, rk, pivots, cols, p)


def solve(m: np.ndarray, b, p: int) -> np.ndarray | None:
    """Some ``x`` with ``m @ x = b``; free variables are set to zero.

    Returns ``None`` when the system is inconsistent.
    """
    m = np.asarray(m, dtype=np.int64)
    b = np.mod(np.asarray(b, dtype=np.int64).reshape(-1), p)
    rows, cols = m.shape
    if b.shape[0] != rows:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {rows}")
    aug = np.concatenate([np.mod(m, p), b.reshape(-1, 1)], axis=1)
    red, rk, pivots = rref(aug, p)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = red[i, cols]
    return x


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("only square matrices are invertible")
    red, rk, _ = rref(np.concatenate([np.mod(m, p), identity(n)], axis=1), p)
    if rk < n or not np.array_equal(red[:, :n], identity(n)):
        raise ValueError("matrix is singular")
    return red[:, n:]


def is_invertible(m: np.ndarray, p: int) -> bool:
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``F_p^n`` held by its canonical (rref) basis.

    Coordinates relative to the rref basis are read off at the pivot
    columns, which makes membership tests and coordinate extraction cheap.
    """

    basis: np.ndarray
    pivots: tuple[int, ...]
    ambient: int
    p: int = field(compare=False)

    @classmethod
    def span(cls, vectors, ambient: int, p: int) -> "Subspace":
        v = np.asarray(vectors, dtype=np.int64)
        if v.size == 0:
            return cls(zeros(0, ambient), (), ambient, p)
        v = v.reshape(-1, ambient)
        if v.shape[0] == 0:
            return cls(zeros(0, ambient), (), ambient, p)
        red, rk, piv = rref(v, p)
        return cls(red[:rk].copy(), tuple(piv), ambient, p)

    @classmethod
    def zero(cls, ambient: int, p: int) -> "Subspace":
        return cls(zeros(0, ambient), (), ambient, p)

    @classmethod
    def whole(cls, ambient: int, p: int) -> "Subspace":
        return cls(identity(ambient), tuple(range(ambient)), ambient, p)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vectors: np.ndarray) -> np.ndarray:
        """Remainders of ``vectors`` (rows) modulo the subspace."""
        v = np.mod(np.atleast_2d(np.asarray(vectors, dtype=np.int64)), self.p)
        if self.dim == 0:
            return v
        c = v[:, list(self.pivots)]
        return np.mod(v - c @ self.basis, self.p)

    def coords(self, vectors: np.ndarray) -> np.ndarray:
        """Coordinates of vectors assumed to lie in the subspace."""
        v = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
        return np.mod(v[:, list(self.pivots)], self.p)

    def contains(self, vectors) -> bool:
        v = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
        if v.size == 0:
            return True
        return not self.reduce(v).any()

    def contains_space(self, other: "Subspace") -> bool:
        return self.contains(other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(np.concatenate([self.basis, other.basis]), self.ambient, self.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient, self.p)
        # a @ self.basis == b @ other.basis
        stacked = np.concatenate([self.basis, np.mod(-other.basis, self.p)]).T
        ker = kernel_basis(stacked, self.p)
        vecs = matmul(ker[:, : self.dim], self.basis, self.p)
        return Subspace.span(vecs, self.ambient, self.p)

    def complement_coordinates(self) -> list[int]:
        """Standard basis indices spanning a complement (the non-pivots)."""
        piv = set(self.pivots)
        return [i for i in range(self.ambient) if i not in piv]

    def extend_from(self, candidates: np.ndarray) -> list[int]:
        """Indices of candidate rows that extend this subspace, greedily."""
        chosen: list[int] = []
        cur = self
        red = cur.reduce(candidates) if len(candidates) else candidates
        if not len(candidates):
            return chosen
        # one elimination over [basis; candidates] in order gives the greedy choice
        stack = np.concatenate([cur.basis, red])
        _, _, piv = rref(stack.T, self.p)
        for c in piv:
            if c >= cur.dim:
                chosen.append(c - cur.dim)
        return chosen

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.pivots, self.basis.tobytes()))
