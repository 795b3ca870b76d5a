"""Seeded random members of each family, in any compatible shape."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .errors import IncompatibleShape
from .linalg import QMatrix, det
from .tensor import Tensor, add, apply_gl, permute_factors, rank1, scale

FAMILIES = ("a", "b", "c", "d", "e", "f")


def _rat(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 3))


def _nonzero(rng: random.Random) -> Fraction:
    while True:
        q = _rat(rng)
        if q:
            return q


def random_gl(rng: random.Random, n: int) -> QMatrix:
    while True:
        M = QMatrix(n, n, tuple(_rat(rng) for _ in range(n * n)))
        if det(M):
            return M


def _e(n: int, i: int) -> tuple:
    return tuple(Fraction(int(k == i)) for k in range(n))


def _comb(a, b, s, t) -> tuple:
    return tuple(s * x + t * y for x, y in zip(a, b))


def _sum(terms: Sequence[Tensor]) -> Tensor:
    out = terms[0]
    for t in terms[1:]:
        out = add(out, t)
    return out


def compatible(family: str, shape: Sequence[int]) -> bool:
    shape = tuple(shape)
    s = tuple(sorted(shape))
    if family == "a":
        return shape == (3, 3)
    if family == "b":
        return shape == (2, 2, 2)
    if family == "c":
        return shape == (2, 2, 2, 2)
    if family in ("d", "e"):
        return s == (2, 2, 3)
    if family == "f":
        if s == (2, 3, 3):
            return True
        return (len(shape) >= 4 and all(n in (2, 3) for n in shape)
                and shape.count(3) <= 2 and shape != (2, 2, 2, 2))
    raise IncompatibleShape(f"unknown family {family!r}")


def _canonical_three(family: str, rng: random.Random) -> Tensor:
    """Representative in shape (3, 2, 2) for d and e, (3, 3, 2) for f."""
    u = [_e(3, i) for i in range(3)]
    v1, v2 = _e(2, 0), _e(2, 1)
    if family == "d":
        w = _comb(v1, v2, _nonzero(rng), _nonzero(rng))
        return _sum([rank1([u[0], v1, v1]), rank1([u[1], v2, v2]), rank1([u[2], w, w])])
    if family == "e":
        q = _comb(v1, v2, _rat(rng), _nonzero(rng)) if rng.random() < 0.5 else \
            _comb(v1, v2, _nonzero(rng), _rat(rng))
        return _sum([rank1([u[0], v1, v1]), rank1([u[1], v2, v1]), rank1([u[2], q, v2])])
    raise AssertionError(family)


def _glue(rng: random.Random, shape: tuple, i: int, j: int) -> Tensor:
    # s1 (a1 b1 + a2 b2) ⊗ u ⊗ ... + s2 a3 b3 ⊗ ũ ⊗ ...  on the pair (i, j)
    def triple(n: int):
        if n == 3:
            return [_e(3, 0), _e(3, 1), _e(3, 2)]
        return [_e(2, 0), _e(2, 1), _comb(_e(2, 0), _e(2, 1), _nonzero(rng), _nonzero(rng))]

    a, b = triple(shape[i]), triple(shape[j])
    if shape[i] == 2 and shape[j] == 2:
        b = [_e(2, 0), _e(2, 1), _comb(_e(2, 0), _e(2, 1), _nonzero(rng), _nonzero(rng))]
    s1, s2 = _nonzero(rng), _nonzero(rng)
    rest = [l for l in range(len(shape)) if l not in (i, j)]
    first = {l: _e(2, 0) for l in rest}
    second = {l: _e(2, 1) for l in rest}

    def term(x, y, others):
        vs = []
        for l in range(len(shape)):
            vs.append(x if l == i else y if l == j else others[l])
        return rank1(vs)

    return _sum([scale(term(a[0], b[0], first), s1), scale(term(a[1], b[1], first), s1),
                 scale(term(a[2], b[2], second), s2)])


def generate(family: str, shape: Sequence[int], seed: int = 0) -> Tensor:
    """A member of ``family`` with the given shape: a canonical representative
    with seeded rational parameters, moved by seeded invertible matrices on
    every factor. Deterministic in (family, shape, seed)."""
    shape = tuple(int(n) for n in shape)
    if family not in FAMILIES:
        raise IncompatibleShape(f"unknown family {family!r}")
    if not compatible(family, shape):
        raise IncompatibleShape(f"family {family} has no concise member of shape {shape}")
    rng = random.Random(f"{family}:{shape}:{seed}")

    if family == "a":
        T = _sum([scale(rank1([_e(3, i), _e(3, i)]), _nonzero(rng)) for i in range(3)])
    elif family == "b":
        e1, e2 = _e(2, 0), _e(2, 1)
        a, b, c = (_comb(e1, e2, _rat(rng), _nonzero(rng)) for _ in range(3))
        T = _sum([rank1([a, e1, e1]), rank1([e1, b, e1]), rank1([e1, e1, c])])
    elif family == "c":
        terms = []
        cs = [_nonzero(rng) for _ in range(4)]
        for vs in ([_e(2, 0)] * 4, [_e(2, 1)] * 4,
                   [_comb(_e(2, 0), _e(2, 1), 1, c) for c in cs]):
            terms.append(scale(rank1(vs), _nonzero(rng)))
        T = _sum(terms)
    elif family in ("d", "e"):
        T = _to_shape(_canonical_three(family, rng), shape)
    else:
        if len(shape) == 3:
            T = _glue(rng, shape, *[l for l in range(3) if shape[l] == 3])
        else:
            threes = [l for l in range(len(shape)) if shape[l] == 3]
            if len(threes) == 2:
                i, j = threes
            elif len(threes) == 1:
                i = threes[0]
                j = rng.choice([l for l in range(len(shape)) if l != i])
            else:
                i, j = sorted(rng.sample(range(len(shape)), 2))
            T = _glue(rng, shape, i, j)
    return apply_gl(T, [random_gl(rng, n) for n in T.shape])


def _to_shape(T: Tensor, shape: tuple) -> Tensor:
    """Permute factors of T so its shape becomes ``shape``."""
    src = list(range(T.order))
    perm = []
    for n in shape:
        l = next(l for l in src if T.shape[l] == n)
        src.remove(l)
        perm.append(l)
    return permute_factors(T, perm)
