"""Finite-dimensional commutative local algebras over F_p.

An algebra is stored by structure constants ``mult[i, j]`` = coordinates of
``e_i * e_j``.  Inputs must be in *locality normal form*: ``e_0`` is the unit
and ``e_1, ..., e_{d-1}`` are nilpotent and span an ideal, which is then the
unique maximal ideal.  Every construction in the package preserves this
form, so no radical computation is ever needed.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from . import exactlin as el
from .errors import NoUnit, NotAssociative, NotCommutative, NotLocal, UnitInIdeal


class Algebra:
    """Commutative local F_p-algebra given by structure constants.

    ``degrees`` optionally assigns a multidegree (tuple of ints) to every
    basis vector; when present the multiplication is assumed homogeneous.
    """

    def __init__(self, mult, p: int, names=None, degrees=None):
        self.mult = np.mod(np.asarray(mult, dtype=np.int64), p)
        d = self.mult.shape[0]
        if self.mult.shape != (d, d, d):
            raise ValueError(f"structure constants must be d x d x d, got {self.mult.shape}")
        self.p = p
        self.dim = d
        self.names = tuple(names) if names is not None else tuple(f"e{i}" for i in range(d))
        self.degrees = None if degrees is None else np.asarray(degrees, dtype=np.int64).reshape(d, -1)

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, p={self.p})"

    @cached_property
    def left(self) -> np.ndarray:
        """``left[i]`` is the matrix of multiplication by ``e_i``."""
        return np.ascontiguousarray(np.transpose(self.mult, (0, 2, 1)))

    def mul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return np.mod(np.einsum("i,j,ijk->k", x, y, self.mult), self.p)

    def left_matrix(self, x) -> np.ndarray:
        return np.mod(np.tensordot(np.asarray(x, dtype=np.int64), self.left, axes=1), self.p)

    def unit(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[0] = 1
        return v

    @cached_property
    def maximal_square(self) -> el.Subspace:
        """The subspace spanned by products of maximal-ideal basis vectors."""
        if self.dim <= 1:
            return el.Subspace.zero(self.dim, self.p)
        prods = self.mult[1:, 1:].reshape(-1, self.dim)
        return el.Subspace.span(prods, self.dim, self.p)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Basis indices whose classes form a basis of m/m^2.

        They generate the algebra, so commuting with their action is enough
        for a linear map to be a module homomorphism.
        """
        sq = self.maximal_square
        cand = np.eye(self.dim, dtype=np.int64)[1:]
        return tuple(1 + i for i in sq.extend_from(cand))

    @property
    def embedding_dim(self) -> int:
        return len(self.generators)

    @cached_property
    def socle(self) -> el.Subspace:
        if self.dim == 1:
            return el.Subspace.whole(1, self.p)
        stacked = np.concatenate([self.left[g] for g in self.generators])
        return el.Subspace.span(el.kernel_basis(stacked, self.p), self.dim, self.p)


def validate_algebra(mult, p: int, names=None, degrees=None) -> Algebra:
    """Check every algebra invariant and return the validated algebra.

    Raises the specific ``AlgebraError`` subclass naming the witness.
    """
    if not el.is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    a = Algebra(mult, p, names=names, degrees=degrees)
    c, d = a.mult, a.dim
    eye = np.eye(d, dtype=np.int64)
    for j in range(d):
        if not np.array_equal(c[0, j], eye[j]) or not np.array_equal(c[j, 0], eye[j]):
            raise NoUnit(f"e0 * e{j} != e{j}")
    diff = np.argwhere((c != np.transpose(c, (1, 0, 2))).any(axis=2))
    if diff.size:
        i, j = diff[0]
        raise NotCommutative(f"e{i} * e{j} != e{j} * e{i}")
    lhs = np.mod(np.einsum("ijl,lkm->ijkm", c, c), p)
    rhs = np.mod(np.einsum("jkl,ilm->ijkm", c, c), p)
    bad = np.argwhere((lhs != rhs).any(axis=3))
    if bad.size:
        i, j, k = bad[0]
        raise NotAssociative(f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})")
    if d > 1:
        leak = np.argwhere(c[1:, :, 0] != 0)
        if leak.size:
            i, j = leak[0]
            raise NotLocal(f"e{i + 1} * e{j} has a unit component; span(e1..) is not an ideal")
        for i in range(1, d):
            power = eye[i]
            for _ in range(d):
                power = a.mul(power, eye[i])
            if power.any():
                raise NotLocal(f"e{i} is not nilpotent")
    return a


class Ideal:
    """Ideal of an algebra, held as a subspace of coordinates."""

    def __init__(self, parent: Algebra, space: el.Subspace):
        self.parent = parent
        self.space = space

    @classmethod
    def from_vectors(cls, parent: Algebra, vectors, close: bool = False) -> "Ideal":
        """Span of ``vectors``; with ``close`` the ideal they generate."""
        v = np.asarray(vectors, dtype=np.int64).reshape(-1, parent.dim)
        if close and v.shape[0]:
            v = np.mod(np.einsum("ikj,rj->irk", parent.left, v), parent.p).reshape(-1, parent.dim)
        return cls(parent, el.Subspace.span(v, parent.dim, parent.p))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> np.ndarray:
        return self.space.basis

    def is_closed(self) -> bool:
        if self.dim == 0:
            return True
        imgs = np.einsum("ikj,rj->irk", self.parent.left, self.basis).reshape(-1, self.parent.dim)
        return self.space.contains(np.mod(imgs, self.parent.p))

    def is_proper(self) -> bool:
        return 0 not in self.space.pivots

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.parent, self.space + other.space)

    def intersect(self, other: "Ideal") -> "Ideal":
        return Ideal(self.parent, self.space.intersect(other.space))

    def product(self, other: "Ideal") -> "Ideal":
        if self.dim == 0 or other.dim == 0:
            return Ideal(self.parent, el.Subspace.zero(self.parent.dim, self.parent.p))
        prods = np.einsum("ai,bj,ijk->abk", self.basis, other.basis, self.parent.mult)
        return Ideal.from_vectors(self.parent, np.mod(prods, self.parent.p).reshape(-1, self.parent.dim))

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and self.space == other.space

    def __repr__(self) -> str:
        return f"Ideal(dim={self.dim} in {self.parent!r})"


def maximal_ideal(a: Algebra) -> Ideal:
    return Ideal(a, el.Subspace.span(np.eye(a.dim, dtype=np.int64)[1:], a.dim, a.p))


def socle_dim(a: Algebra) -> int:
    return a.socle.dim


def is_gorenstein(a: Algebra) -> bool:
    return socle_dim(a) == 1


class AlgebraHom:
    """Coordinate matrix (target.dim x source.dim) of an algebra map."""

    def __init__(self, source: Algebra, target: Algebra, matrix):
        self.source = source
        self.target = target
        self.matrix = np.mod(np.asarray(matrix, dtype=np.int64), source.p)

    def __call__(self, x) -> np.ndarray:
        return el.matmul(self.matrix, np.asarray(x, dtype=np.int64), self.source.p)

    def is_valid(self) -> bool:
        s, t, m = self.source, self.target, self.matrix
        if m.shape != (t.dim, s.dim):
            return False
        if not np.array_equal(m[:, 0], t.unit()):
            return False
        lhs = np.mod(np.einsum("kl,ijl->ijk", m, s.mult), s.p)
        rhs = np.mod(np.einsum("ai,bj,abk->ijk", m, m, t.mult), s.p)
        return bool(np.array_equal(lhs, rhs))

    def kernel(self) -> Ideal:
        return Ideal(self.source, el.Subspace.span(el.kernel_basis(self.matrix, self.source.p), self.source.dim, self.source.p))

    def is_surjective(self) -> bool:
        return el.rank(self.matrix, self.source.p) == self.target.dim

    def compose(self, first: "AlgebraHom") -> "AlgebraHom":
        """``self`` after ``first``."""
        return AlgebraHom(first.source, self.target, el.matmul(self.matrix, first.matrix, self.source.p))


def identity_hom(a: Algebra) -> AlgebraHom:
    return AlgebraHom(a, a, el.identity(a.dim))


def quotient_algebra(a: Algebra, ideal: Ideal) -> tuple[Algebra, AlgebraHom]:
    """``A / I`` in normal form, with the verified projection.

    The quotient basis is the cosets of the standard basis vectors at the
    non-pivot columns of I, so the coset of the unit comes first.
    """
    if not ideal.is_proper():
        raise UnitInIdeal("the ideal contains a unit")
    keep = ideal.space.complement_coordinates()
    reduced = ideal.space.reduce(el.identity(a.dim))  # row j = e_j mod I
    proj = reduced[:, keep].T.copy()  # (len(keep), d)
    sub = a.mult[np.ix_(keep, keep)]  # products of kept basis vectors in A
    qmult = np.mod(np.einsum("abk,sk->abs", sub, proj), a.p)
    degrees = None if a.degrees is None else a.degrees[keep]
    q = Algebra(qmult, a.p, names=[a.names[i] for i in keep], degrees=degrees)
    q.rep_indices = tuple(keep)
    q.quotient_of = a
    return q, AlgebraHom(a, q, proj)


def tensor_algebra(a: Algebra, b: Algebra) -> Algebra:
    """``A (x)_k B`` with basis ordered lexicographically (unit pair first)."""
    if a.p != b.p:
        raise ValueError("algebras over different primes")
    d = a.dim * b.dim
    mult = np.einsum("ijk,abc->iajbkc", a.mult, b.mult).reshape(d, d, d)
    names = [f"{x}*{y}" if x != "1" and y != "1" else (y if x == "1" else x) for x in a.names for y in b.names]
    degrees = None
    if a.degrees is not None and b.degrees is not None:
        # product grading: degrees of the two factors side by side
        da, db = a.degrees.shape[1], b.degrees.shape[1]
        degrees = np.concatenate(
            [np.repeat(a.degrees, b.dim, axis=0), np.tile(b.degrees, (a.dim, 1))], axis=1
        ).reshape(d, da + db)
    return Algebra(np.mod(mult, a.p), a.p, names=names, degrees=degrees)
