"""Dense rational tensors: flattenings, multilinear rank, concision, reshapes.

Entries are stored in lexicographic multi-index order with the last index
varying fastest. Factor indices are 0-based.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

import numpy as np

from .errors import (BadFactorIndex, LengthMismatch, ShapeMismatch,
                     SingularFactorMatrix, ZeroTensor)
from .linalg import Q, QMatrix, QVector, det, rank, rref

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Tensor:
    shape: tuple
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "shape", tuple(int(n) for n in self.shape))
        object.__setattr__(self, "entries", tuple(Q(x) for x in self.entries))
        if any(n < 1 for n in self.shape):
            raise ShapeMismatch(f"factor dimensions must be >= 1, got {self.shape}")
        if len(self.entries) != prod(self.shape):
            raise LengthMismatch(
                f"shape {self.shape} needs {prod(self.shape)} entries, got {len(self.entries)}")

    @classmethod
    def from_entries(cls, shape: Sequence[int], entries: Sequence) -> "Tensor":
        return cls(tuple(shape), tuple(entries))

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "Tensor":
        return cls(arr.shape, tuple(arr.reshape(-1)))

    @classmethod
    def zeros(cls, shape: Sequence[int]) -> "Tensor":
        return cls(tuple(shape), (_ZERO,) * prod(shape))

    @property
    def order(self) -> int:
        return len(self.shape)

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=object).reshape(self.shape)

    def __getitem__(self, idx: tuple) -> Fraction:
        return self.entries[np.ravel_multi_index(idx, self.shape)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "Tensor") -> "Tensor":
        return add(self, other)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return sub(self, other)


def _check_factor(T: Tensor, l: int) -> None:
    if not 0 <= l < T.order:
        raise BadFactorIndex(f"factor {l} out of range for a {T.order}-factor tensor")


def flatten(T: Tensor, l: int) -> QMatrix:
    """The n_l x prod(other dims) flattening; columns run over the remaining
    indices in their original order, last fastest."""
    _check_factor(T, l)
    a = np.moveaxis(T.array(), l, 0).reshape(T.shape[l], -1)
    return QMatrix(a.shape[0], a.shape[1], tuple(a.reshape(-1)))


def unflatten(M: QMatrix, shape: Sequence[int], l: int) -> Tensor:
    """Inverse of :func:`flatten` for a tensor whose factor ``l`` has dimension M.rows."""
    shape = list(shape)
    shape[l] = M.rows
    rest = shape[:l] + shape[l + 1:]
    a = np.array(M.entries, dtype=object).reshape([M.rows] + rest)
    return Tensor.from_array(np.moveaxis(a, 0, l))


def multilinear_rank(T: Tensor) -> tuple[int, ...]:
    return tuple(rank(flatten(T, l)) for l in range(T.order))


def mode_product(T: Tensor, l: int, M: QMatrix) -> Tensor:
    """Apply M (new_dim x n_l) to factor l."""
    _check_factor(T, l)
    if M.cols != T.shape[l]:
        raise ShapeMismatch(f"matrix {M.shape} cannot act on factor {l} of dimension {T.shape[l]}")
    return unflatten(M @ flatten(T, l), T.shape, l)


def apply_gl(T: Tensor, mats: Sequence[QMatrix | None], check_invertible: bool = True) -> Tensor:
    """Multilinear action (g_1, ..., g_k) . T; ``None`` leaves a factor alone."""
    if len(mats) != T.order:
        raise ShapeMismatch(f"need {T.order} factor matrices, got {len(mats)}")
    for l, g in enumerate(mats):
        if g is None:
            continue
        if check_invertible and (g.rows != g.cols or det(g) == 0):
            raise SingularFactorMatrix(f"factor matrix {l} is not invertible")
        T = mode_product(T, l, g)
    return T


def permute_factors(T: Tensor, perm: Sequence[int]) -> Tensor:
    """New factor p is old factor perm[p]."""
    if sorted(perm) != list(range(T.order)):
        raise BadFactorIndex(f"{perm} is not a permutation of {T.order} factors")
    return Tensor.from_array(np.transpose(T.array(), perm))


def rank1(vectors: Sequence[Sequence]) -> Tensor:
    vs = [tuple(Q(x) for x in v) for v in vectors]
    entries = tuple(prod(c, start=Fraction(1)) for c in itertools.product(*vs))
    return Tensor(tuple(len(v) for v in vs), entries)


def add(S: Tensor, T: Tensor) -> Tensor:
    if S.shape != T.shape:
        raise ShapeMismatch(f"shape {S.shape} vs {T.shape}")
    return Tensor(S.shape, tuple(a + b for a, b in zip(S.entries, T.entries)))


def sub(S: Tensor, T: Tensor) -> Tensor:
    if S.shape != T.shape:
        raise ShapeMismatch(f"shape {S.shape} vs {T.shape}")
    return Tensor(S.shape, tuple(a - b for a, b in zip(S.entries, T.entries)))


def scale(T: Tensor, c) -> Tensor:
    c = Q(c)
    return Tensor(T.shape, tuple(c * x for x in T.entries))


def slice_along(T: Tensor, l: int, index: int) -> Tensor:
    """The order-(k-1) slice with factor l fixed at ``index``."""
    _check_factor(T, l)
    return Tensor.from_array(np.take(T.array(), index, axis=l))


def rank1_factors(T: Tensor) -> list[QVector] | None:
    """Vectors v_1..v_k with T = v_1 x ... x v_k, or None if T is not rank 1.

    Each v_l is the fiber of T through its first nonzero entry, with all
    normalization put on v_0. The decomposition is checked exactly.
    """
    if T.is_zero():
        return None
    arr = T.array()
    pos = next(i for i, x in enumerate(T.entries) if x)
    idx = np.unravel_index(pos, T.shape)
    pivot = T.entries[pos]
    vectors = []
    for l in range(T.order):
        sl = list(idx)
        sl[l] = slice(None)
        fiber = tuple(arr[tuple(sl)])
        vectors.append(fiber if l == 0 else tuple(x / pivot for x in fiber))
    return vectors if rank1(vectors) == T else None


@dataclass(frozen=True)
class ConcisionResult:
    """Concise core plus the maps that rebuild the input.

    ``injections[l]`` is n_l x n'_l with full column rank. A dropped factor
    (flattening rank 1) keeps its n_l x 1 direction there. ``factor_map[p]``
    is the original index of core factor p.
    """
    core: Tensor
    injections: tuple
    dropped_factors: tuple
    factor_map: tuple
    full_core: Tensor = field(repr=False)

    @property
    def concise_shape(self) -> tuple[int, ...]:
        return self.core.shape

    def reconstruct(self) -> Tensor:
        return apply_gl(self.full_core, list(self.injections), check_invertible=False)


def concise_factor(T: Tensor, l: int) -> tuple[Tensor, QMatrix]:
    """Rewrite factor l in the basis of pivot columns of its flattening.

    Returns (T', B) with T = B applied to factor l of T'. If the flattening
    already has full row rank, B is the identity and T' = T.
    """
    F = flatten(T, l)
    R, pivots, r = rref(F)
    if r == T.shape[l]:
        return T, QMatrix.identity(r)
    if r == 0:
        raise ZeroTensor("cannot concise the zero tensor")
    B = F.submatrix(range(F.rows), pivots)
    coeffs = R.submatrix(range(r), range(F.cols))
    return unflatten(coeffs, T.shape, l), B


def concise(T: Tensor) -> ConcisionResult:
    if T.is_zero():
        raise ZeroTensor("the zero tensor has no concise space")
    core = T
    injections = []
    for l in range(T.order):
        core, B = concise_factor(core, l)
        injections.append(B)
    dropped = tuple(l for l in range(T.order) if core.shape[l] == 1)
    kept = tuple(l for l in range(T.order) if core.shape[l] > 1)
    squeezed = Tensor(tuple(core.shape[l] for l in kept), core.entries)
    return ConcisionResult(squeezed, tuple(injections), dropped, kept, full_core=core)


@dataclass(frozen=True)
class ReshapePair:
    merged: Tensor
    i: int
    j: int
    n_i: int
    n_j: int
    rest: tuple  # original indices of the unmerged factors, in order


def reshape_pair(T: Tensor, i: int, j: int) -> ReshapePair:
    """Group factors i and j into one factor of dimension n_i n_j, placed first.

    Merged index is a * n_j + b for a in factor i and b in factor j.
    """
    _check_factor(T, i)
    _check_factor(T, j)
    if i == j:
        raise BadFactorIndex("reshape needs two distinct factors")
    rest = tuple(l for l in range(T.order) if l not in (i, j))
    a = np.transpose(T.array(), (i, j) + rest)
    merged = a.reshape((T.shape[i] * T.shape[j],) + tuple(T.shape[l] for l in rest))
    return ReshapePair(Tensor.from_array(merged), i, j, T.shape[i], T.shape[j], rest)


def unreshape_vector(v: Sequence, n_i: int, n_j: int) -> QMatrix:
    if len(v) != n_i * n_j:
        raise LengthMismatch(f"vector of length {len(v)} is not {n_i}x{n_j}")
    return QMatrix(n_i, n_j, tuple(Q(x) for x in v))


def undo_reshape(S: Tensor, pair: ReshapePair) -> Tensor:
    """Inverse of :func:`reshape_pair` for a tensor with the merged layout."""
    a = S.array().reshape((pair.n_i, pair.n_j) + S.shape[1:])
    order = (pair.i, pair.j) + pair.rest
    inv = [order.index(l) for l in range(len(order))]
    return Tensor.from_array(np.transpose(a, inv))
