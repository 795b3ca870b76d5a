"""Decide whether a rational tensor is one of the six families (a)-(f) of
non-identifiable rank-3 tensors.

Pipeline: multilinear-rank filter, concision, then a three-factor branch
(hyperdeterminant and Kronecker invariants of the slice pencil) or a
many-factor branch (σ3 test for four qubits, reshape plus eigenvector split
for the glued family f).
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .errors import BadShape, InconsistentInvariants, NotConciseInput, NotFullRowRank
from .forms import BinaryForm
from .linalg import QMatrix, eigen2x2, inverse, rank, right_inverse
from .pencil import kronecker_invariants, pencil_of, tensor_rank_from_pencil
from .tensor import (Tensor, apply_gl, concise, concise_factor, flatten, multilinear_rank,
                     permute_factors, rank1, rank1_factors, reshape_pair, undo_reshape,
                     unreshape_vector)


class Family(enum.Enum):
    MatrixCase = "a"
    Tangential = "b"
    Defective4 = "c"
    ConicIrreducible = "d"
    ConicReducible = "e"
    GeneralGlue = "f"


class Reason(enum.Enum):
    RankExceeds3ByFlattening = "RankExceeds3ByFlattening"
    RankOne = "RankOne"
    MatrixNotRank3 = "MatrixNotRank3"
    IdentifiableRank2 = "IdentifiableRank2"
    ConciseSpaceNotInList = "ConciseSpaceNotInList"
    ThreeFactor333 = "ThreeFactor333"
    NoReshapeSplits = "NoReshapeSplits"
    Sigma3TestFailed = "Sigma3TestFailed"


def _q(x: Fraction) -> str:
    return str(x)


def _mat_json(M: QMatrix) -> list[list[str]]:
    return [[_q(x) for x in row] for row in M.to_rows()]


@dataclass(frozen=True)
class ClassificationReport:
    input_shape: tuple
    multilinear_rank: tuple
    concise_shape: tuple
    factor_map: tuple  # concise factor p came from input factor factor_map[p]
    verdict: Family | None  # None means not on the list
    reason: Reason | None = None
    rank: int | None = None
    witness: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def label(self) -> str:
        return self.verdict.value if self.verdict else "not_on_list"

    def to_json(self) -> dict:
        return {
            "verdict": self.label,
            "reason": self.reason.value if self.reason else None,
            "concise_shape": list(self.concise_shape),
            "multilinear_rank": list(self.multilinear_rank),
            "rank": self.rank,
            "witness": self.witness,
            "input_shape": list(self.input_shape),
            "factor_map": list(self.factor_map),
            "detail": self.detail,
        }


def _found(T: Tensor, family: Family, witness: dict | None = None, detail: str = "") -> ClassificationReport:
    return ClassificationReport(T.shape, T.shape, T.shape, tuple(range(T.order)), family,
                                rank=3, witness=witness or {}, detail=detail)


def _not_found(T: Tensor, reason: Reason, rank: int | None = None, witness: dict | None = None,
               detail: str = "") -> ClassificationReport:
    return ClassificationReport(T.shape, T.shape, T.shape, tuple(range(T.order)), None, reason,
                                rank, witness or {}, detail)


# ---------------------------------------------------------------- three factors

def hyperdeterminant(T: Tensor) -> Fraction:
    """Discriminant of det(λA0 + μA1) for a 2x2x2 tensor."""
    if T.shape != (2, 2, 2):
        raise BadShape(f"hyperdeterminant needs shape (2,2,2), got {T.shape}")
    P = pencil_of(T)
    A, B = P.A0, P.A1
    b2 = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    b0 = B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0]
    b1 = A[0, 0] * B[1, 1] + B[0, 0] * A[1, 1] - A[0, 1] * B[1, 0] - B[0, 1] * A[1, 0]
    return b1 * b1 - 4 * b0 * b2


def _is_f_fingerprint(inv) -> bool:
    # the divisors of diag(λ, λ, μ) up to a change of parameters:
    # one rational line twice, another once, each with exponent 1
    if inv.col_indices or inv.row_indices:
        return False
    if any(b.degree != 1 or e != 1 for b, e in inv.divisors) or len(inv.divisors) != 3:
        return False
    bases = sorted((b.coeffs for b, _ in inv.divisors))
    return len(set(bases)) == 2


def classify_three(T: Tensor) -> ClassificationReport:
    """Classify a concise 3-factor tensor with dims in {2, 3}.

    Factors are sorted by dimension first; the report's factor_map says
    which input factor each sorted factor came from.
    """
    if T.order != 3 or any(n not in (2, 3) for n in T.shape):
        raise BadShape(f"classify_three needs 3 factors of dimension 2 or 3, got {T.shape}")
    if multilinear_rank(T) != T.shape:
        raise NotConciseInput(f"tensor of shape {T.shape} is not concise")
    perm = tuple(sorted(range(3), key=lambda l: T.shape[l]))
    S = permute_factors(T, perm)
    shape = S.shape

    if shape == (2, 2, 2):
        h = hyperdeterminant(S)
        w = {"hyperdeterminant": _q(h)}
        rep = (_found(S, Family.Tangential, w) if h == 0
               else _not_found(S, Reason.IdentifiableRank2, 2, w))
    elif shape == (2, 2, 3):
        inv = kronecker_invariants(pencil_of(S))
        w = {"pencil": inv.to_json()}
        if inv.col_indices == (2,) and not inv.divisors:
            rep = _found(S, Family.ConicIrreducible, w)
        elif inv.col_indices == (1,) and len(inv.divisors) == 1 and inv.divisors[0][0].degree == 1:
            rep = _found(S, Family.ConicReducible, w)
        else:
            raise InconsistentInvariants(f"unexpected invariants for a concise 2x2x3 tensor: {inv}")
    elif shape == (2, 3, 3):
        inv = kronecker_invariants(pencil_of(S))
        r = tensor_rank_from_pencil(inv)
        w = {"pencil": inv.to_json()}
        if r == 3 and _is_f_fingerprint(inv):
            rep = _found(S, Family.GeneralGlue, w)
        else:
            rep = _not_found(S, Reason.NoReshapeSplits, r, w,
                             detail="pencil divisors are not those of diag(λ, λ, μ)")
    else:
        rep = _not_found(S, Reason.ThreeFactor333)
    return replace(rep, input_shape=T.shape, multilinear_rank=T.shape, factor_map=perm)


# ---------------------------------------------------------------- eigen split

@dataclass(frozen=True)
class NoSplit:
    reason: str  # SingularPencilPair, RepeatedEigenvalue or IrrationalConjugatePair


@dataclass(frozen=True)
class EigenSplit:
    C1: QMatrix
    C2: QMatrix
    beta: Fraction  # C2' = C2 + beta C1 was used as the normalization
    eigenvalues: tuple
    x: tuple
    y: tuple
    x_full: tuple = ()
    y_full: tuple = ()
    rank_x: int | None = None
    rank_y: int | None = None
    pair: tuple = ()

    def to_json(self) -> dict:
        out = {
            "C1": _mat_json(self.C1), "C2": _mat_json(self.C2), "beta": _q(self.beta),
            "eigenvalues": [_q(t) for t in self.eigenvalues],
            "x": [_q(t) for t in self.x], "y": [_q(t) for t in self.y],
        }
        if self.pair:
            out.update({"pair": list(self.pair),
                        "x_full": [_q(t) for t in self.x_full],
                        "y_full": [_q(t) for t in self.y_full],
                        "rank_x": self.rank_x, "rank_y": self.rank_y})
        return out


_BETAS = tuple(Fraction(b) for b in (0, 1, -1, 2, -2, 3))


def _normalized_inverse(C1: QMatrix, C2: QMatrix):
    for beta in _BETAS:
        C = C2 + C1.scale(beta)
        try:
            return beta, right_inverse(C)
        except NotFullRowRank:
            continue
    return None


def eigen_split(C1: QMatrix, C2: QMatrix) -> EigenSplit | NoSplit:
    """Eigenvectors of C1 · C2'^{-1} for 2 x M slices C1, C2.

    C2' = C2 + βC1 for the first β in a fixed list making it full row rank;
    a right inverse stands in for the inverse when M > 2. Eigenvalues are
    listed largest first, eigenvectors scaled so their last nonzero entry is 1.
    """
    if C1.shape != C2.shape or C1.rows != 2:
        raise BadShape(f"eigen_split needs two 2xM matrices, got {C1.shape} and {C2.shape}")
    found = _normalized_inverse(C1, C2)
    if found is None:
        return NoSplit("SingularPencilPair")
    beta, R = found
    eig = eigen2x2(C1 @ R)
    if eig.kind == "repeated":
        return NoSplit("RepeatedEigenvalue")
    if eig.kind == "irrational":
        return NoSplit("IrrationalConjugatePair")
    x, y = eig.eigenvectors
    return EigenSplit(C1, C2, beta, eig.eigenvalues, x, y)


def _pencil_slices(core: Tensor, l: int = 1) -> tuple[QMatrix, QMatrix]:
    """C_b[a, rest] = core[a, b, rest] with b running over factor l (factor 0 gives rows)."""
    arr = core.array()
    cols = core.entries and len(core.entries) // (core.shape[0] * core.shape[l])
    out = []
    for b in range(core.shape[l]):
        sl = arr.take(b, axis=l).reshape(core.shape[0], -1)
        out.append(QMatrix(core.shape[0], cols, tuple(sl.reshape(-1))))
    return out[0], out[1]


def _split_core(core: Tensor, x: Sequence, y: Sequence):
    """Write core = x ⊗ R_x + y ⊗ R_y (x, y in factor 0); return (R_x, R_y) if
    both are rank 1, with their vectors."""
    G = QMatrix.from_columns([x, y])
    D = apply_gl(core, [inverse(G)] + [None] * (core.order - 1), check_invertible=False)
    parts = []
    for a in (0, 1):
        R = Tensor(core.shape[1:], D.entries[a * len(D.entries) // 2:(a + 1) * len(D.entries) // 2])
        vs = rank1_factors(R)
        if vs is None:
            return None
        parts.append(vs)
    return parts


def case_f_test(T: Tensor, i: int, j: int) -> EigenSplit | None:
    """Look for T = X ⊗ u_3 ⊗ ... + Y ⊗ ũ_3 ⊗ ... with X, Y matrices on the
    factor pair (i, j) of matrix ranks {2, 1}. Every witness is verified by
    exact reconstruction."""
    k = T.order
    if k < 4 or any(n not in (2, 3) for n in T.shape):
        raise BadShape(f"case_f_test needs k >= 4 factors of dimension 2 or 3, got {T.shape}")
    if any(T.shape[l] != 2 for l in range(k) if l not in (i, j)):
        return None
    pair = reshape_pair(T, i, j)
    S, B = concise_factor(pair.merged, 0)
    if S.shape[0] != 2:
        return None
    if multilinear_rank(S)[1:] != S.shape[1:]:
        return None
    C1, C2 = _pencil_slices(S, 1)
    split = eigen_split(C1, C2)
    if isinstance(split, NoSplit):
        return None
    parts = _split_core(S, split.x, split.y)
    if parts is None:
        return None
    x_full, y_full = B @ split.x, B @ split.y
    terms = [rank1([v] + rest) for v, rest in zip((x_full, y_full), parts)]
    merged = Tensor(pair.merged.shape, tuple(a + b for a, b in zip(terms[0].entries, terms[1].entries)))
    if undo_reshape(merged, pair) != T:
        return None
    rx = rank(unreshape_vector(x_full, pair.n_i, pair.n_j))
    ry = rank(unreshape_vector(y_full, pair.n_i, pair.n_j))
    if {rx, ry} != {1, 2}:
        return None
    return replace(split, x_full=x_full, y_full=y_full, rank_x=rx, rank_y=ry, pair=(i, j))


# ---------------------------------------------------------------- rank <= 2

def _minors_vanish(P: Tensor, Qt: Tensor, d: Fraction) -> bool:
    # P + √d Q has all 2x2 minors of every flattening zero
    for l in range(P.order):
        A, B = flatten(P, l), flatten(Qt, l)
        for r1, r2 in itertools.combinations(range(A.rows), 2):
            for c1, c2 in itertools.combinations(range(A.cols), 2):
                p11, p12, p21, p22 = A[r1, c1], A[r1, c2], A[r2, c1], A[r2, c2]
                q11, q12, q21, q22 = B[r1, c1], B[r1, c2], B[r2, c1], B[r2, c2]
                if p11 * p22 + d * q11 * q22 - p12 * p21 - d * q12 * q21:
                    return False
                if p11 * q22 + q11 * p22 - p12 * q21 - q12 * p21:
                    return False
    return True


def rank_at_most_2(T: Tensor) -> bool:
    """Complex tensor rank of T is at most 2 (decided exactly over Q)."""
    if T.is_zero():
        return True
    core = concise(T).core
    if core.order <= 2:
        return all(n <= 2 for n in core.shape)
    if any(n != 2 for n in core.shape):
        return False
    C1, C2 = _pencil_slices(core, 1)
    found = _normalized_inverse(C1, C2)
    if found is None:
        return False
    beta, R = found
    M = C1 @ R
    eig = eigen2x2(M)
    if eig.kind == "repeated":
        return False
    if eig.kind == "distinct":
        return _split_core(core, *eig.eigenvectors) is not None
    # conjugate pair: contract factor 0 with the left eigenvector a + √d b
    a = (M[1, 0], (M[1, 1] - M[0, 0]) / 2)
    b = (Fraction(0), Fraction(1, 2))
    P = _contract0(core, a)
    Qt = _contract0(core, b)
    return _minors_vanish(P, Qt, eig.discriminant)


def _contract0(core: Tensor, v: Sequence) -> Tensor:
    half = len(core.entries) // 2
    e = tuple(v[0] * p + v[1] * q for p, q in zip(core.entries[:half], core.entries[half:]))
    return Tensor(core.shape[1:], e)


def balanced_flattening_ranks(T: Tensor) -> tuple[int, int, int]:
    """Ranks of the 4x4 flattenings {0,1|2,3}, {0,2|1,3}, {0,3|1,2}."""
    if T.shape != (2, 2, 2, 2):
        raise BadShape(f"need shape (2,2,2,2), got {T.shape}")
    out = []
    for other in (1, 2, 3):
        rest = [l for l in (1, 2, 3) if l != other]
        a = T.array().transpose([0, other] + rest).reshape(4, 4)
        out.append(rank(QMatrix(4, 4, tuple(a.reshape(-1)))))
    return tuple(out)


def sigma3_minus_sigma2_2222(T: Tensor) -> bool:
    """Four-qubit membership in σ3 ∖ σ2: all balanced flattenings have rank
    at most 3 and some has rank 3."""
    ranks = balanced_flattening_ranks(T)
    return max(ranks) == 3


# ---------------------------------------------------------------- dispatch

def _f_report(T: Tensor, split: EigenSplit) -> ClassificationReport:
    return _found(T, Family.GeneralGlue, split.to_json())


def classify_multi(T: Tensor) -> ClassificationReport:
    k = T.order
    if k < 4 or any(n not in (2, 3) for n in T.shape):
        raise BadShape(f"classify_multi needs k >= 4 factors of dimension 2 or 3, got {T.shape}")
    if multilinear_rank(T) != T.shape:
        raise NotConciseInput(f"tensor of shape {T.shape} is not concise")
    threes = [l for l in range(k) if T.shape[l] == 3]
    if len(threes) > 2:
        return _not_found(T, Reason.ConciseSpaceNotInList)
    if not threes and k == 4:
        ranks = balanced_flattening_ranks(T)
        w = {"balanced_flattening_ranks": list(ranks)}
        if max(ranks) == 3:
            return _found(T, Family.Defective4, w)
        return _not_found(T, Reason.Sigma3TestFailed, witness=w)
    if not threes:
        pairs = itertools.combinations(range(k), 2)
    elif len(threes) == 1:
        a = threes[0]
        pairs = ((a, j) for j in range(k) if j != a)
    else:
        pairs = [tuple(threes)]
    for i, j in pairs:
        split = case_f_test(T, i, j)
        if split is not None:
            return _f_report(T, split)
    return _not_found(T, Reason.NoReshapeSplits)


def classify(T: Tensor) -> ClassificationReport:
    mlr = multilinear_rank(T)
    if T.is_zero():
        return ClassificationReport(T.shape, mlr, (), (), None, Reason.RankOne, 0,
                                    detail="zero tensor")
    if any(r >= 4 for r in mlr):
        return ClassificationReport(T.shape, mlr, (), (), None, Reason.RankExceeds3ByFlattening,
                                    detail=f"flattening ranks {list(mlr)}")
    c = concise(T)
    core = c.core
    base = ClassificationReport(T.shape, mlr, core.shape, c.factor_map, None)
    if core.order <= 1:
        return replace(base, reason=Reason.RankOne, rank=1)
    if core.order == 2:
        r = core.shape[0]
        if r == 3:
            return replace(base, verdict=Family.MatrixCase, rank=3)
        return replace(base, reason=Reason.MatrixNotRank3, rank=r)
    sub = classify_three(core) if core.order == 3 else classify_multi(core)
    fmap = tuple(c.factor_map[p] for p in sub.factor_map)
    witness = dict(sub.witness)
    if "pair" in witness:
        witness["input_pair"] = [fmap[p] for p in witness["pair"]]
    return replace(sub, input_shape=T.shape, multilinear_rank=mlr,
                   concise_shape=sub.concise_shape, factor_map=fmap, witness=witness)
