"""Homogeneous matrix pencils λ·A0 + μ·A1 over the rationals.

Invariant polynomials, elementary divisors (μ-powers are the infinite ones),
minimal indices, Kronecker invariants and normal form, and the tensor rank
of a 2 x m x n tensor read off from its pencil.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadShape, InconsistentInvariants, NotConcisePencil, ShapeMismatch
from .forms import BinaryForm, divisor_key, factor, gcd, interpolate
from .linalg import Q, QMatrix, det, rank
from .tensor import Tensor, slice_along

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Pencil:
    A0: QMatrix
    A1: QMatrix

    def __post_init__(self):
        if self.A0.shape != self.A1.shape:
            raise ShapeMismatch(f"pencil slices differ in shape: {self.A0.shape} vs {self.A1.shape}")

    @classmethod
    def from_rows(cls, A0, A1) -> "Pencil":
        return cls(QMatrix.from_rows(A0), QMatrix.from_rows(A1))

    @property
    def shape(self) -> tuple[int, int]:
        return self.A0.shape

    @property
    def rows(self) -> int:
        return self.A0.rows

    @property
    def cols(self) -> int:
        return self.A0.cols

    def at(self, lam, mu) -> QMatrix:
        return self.A0.scale(lam) + self.A1.scale(mu)

    def transpose(self) -> "Pencil":
        return Pencil(self.A0.transpose(), self.A1.transpose())

    def transform(self, U: QMatrix, V: QMatrix) -> "Pencil":
        """U · P · V"""
        return Pencil(U @ self.A0 @ V, U @ self.A1 @ V)

    def mix_parameters(self, g: QMatrix) -> "Pencil":
        """Act by g on the parameter factor, as a mode product on the tensor would."""
        return Pencil(self.A0.scale(g[0, 0]) + self.A1.scale(g[0, 1]),
                      self.A0.scale(g[1, 0]) + self.A1.scale(g[1, 1]))

    def entry(self, i: int, j: int) -> BinaryForm:
        return BinaryForm((self.A0[i, j], self.A1[i, j]))

    def __str__(self) -> str:
        cells = [[str(self.entry(i, j)) for j in range(self.cols)] for i in range(self.rows)]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in r) + "]" for r in cells)


def pencil_of(T: Tensor, param_factor: int = 0) -> Pencil:
    """Pencil of a 3-factor tensor with the dimension-2 factor ``param_factor``
    as parameters: A0, A1 are the slices at index 0 and 1. The other two
    factors give rows and columns, in their original order."""
    if T.order != 3 or not 0 <= param_factor < 3 or T.shape[param_factor] != 2:
        raise BadShape(f"need a 3-factor tensor with dimension 2 at factor {param_factor}, "
                       f"got shape {T.shape}")
    m, n = (T.shape[l] for l in range(3) if l != param_factor)
    slices = [slice_along(T, param_factor, a) for a in (0, 1)]
    return Pencil(*(QMatrix(m, n, s.entries) for s in slices))


def tensor_of(P: Pencil) -> Tensor:
    """Inverse of :func:`pencil_of` with the parameter factor first."""
    return Tensor((2, P.rows, P.cols), P.A0.entries + P.A1.entries)


def _sample_points(P: Pencil) -> list[tuple[Fraction, Fraction]]:
    # a nonzero form of degree <= min(m, n) cannot vanish at all of these
    k = min(P.shape)
    return [(Fraction(1), _ZERO)] + [(Fraction(t), Fraction(1)) for t in range(k)]


def pencil_rank(P: Pencil) -> int:
    if 0 in P.shape:
        return 0
    return max(rank(P.at(lam, mu)) for lam, mu in _sample_points(P))


def minor_forms(P: Pencil, j: int):
    """All j x j minors of the pencil as binary forms of degree j."""
    evals = [P.at(t, 1) for t in range(j + 1)]
    for rows in itertools.combinations(range(P.rows), j):
        for cols in itertools.combinations(range(P.cols), j):
            yield interpolate([det(E.submatrix(rows, cols)) for E in evals], j)


def determinantal_divisor(P: Pencil, j: int) -> BinaryForm:
    """D_j: monic gcd of all j x j minors (D_0 = 1; the zero form when j > rank)."""
    if j == 0:
        return BinaryForm.one()
    D = BinaryForm(())
    for f in minor_forms(P, j):
        D = gcd(D, f)
        if D.is_constant():
            break
    return D


def invariant_polynomials(P: Pencil) -> list[BinaryForm]:
    """i_1, ..., i_r with i_j = D_{r-j+1} / D_{r-j}, so i_{j+1} divides i_j."""
    r = pencil_rank(P)
    D = [determinantal_divisor(P, j) for j in range(r + 1)]
    out = [D[r - j + 1].exact_div(D[r - j]).monic() for j in range(1, r + 1)]
    if sum(f.degree for f in out) != D[r].degree:
        raise InconsistentInvariants("degrees of invariant polynomials do not add up to deg D_r")
    return out


def elementary_divisors(P: Pencil, invariants: list[BinaryForm] | None = None) -> list[tuple[BinaryForm, int]]:
    if invariants is None:
        invariants = invariant_polynomials(P)
    out = []
    for f in invariants:
        if not f.is_constant():
            out.extend(factor(f))
    return sorted(out, key=lambda be: divisor_key(*be))


def _kernel_dims(P: Pencil, d: int) -> int:
    # coefficients x_0..x_d of x = Σ x_c λ^{d-c} μ^c; equation row block c' holds
    # A0 x_{c'} + A1 x_{c'-1} = 0 for c' = 0..d+1
    m, n = P.shape
    rows = []
    for c2 in range(d + 2):
        for i in range(m):
            row = [_ZERO] * (n * (d + 1))
            if c2 <= d:
                row[c2 * n:(c2 + 1) * n] = P.A0.row(i)
            if c2 >= 1:
                row[(c2 - 1) * n:c2 * n] = P.A1.row(i)
            rows.append(row)
    return n * (d + 1) - rank(QMatrix.from_rows(rows, cols=n * (d + 1)))


def _column_indices(P: Pencil, r: int) -> list[int]:
    want = P.cols - r
    out = []
    s = [0, 0]  # s_{d-2}, s_{d-1}
    d = 0
    while len(out) < want:
        if d > r:
            raise InconsistentInvariants("minimal index search ran past the pencil rank")
        sd = _kernel_dims(P, d)
        out.extend([d] * (sd - 2 * s[1] + s[0]))
        s = [s[1], sd]
        d += 1
    if len(out) != want:
        raise InconsistentInvariants("minimal index count overshoot")
    return out


def minimal_indices(P: Pencil) -> tuple[list[int], list[int]]:
    """Column and row minimal indices, ascending, zeros included."""
    r = pencil_rank(P)
    return _column_indices(P, r), _column_indices(P.transpose(), r)


@dataclass(frozen=True)
class KroneckerInvariants:
    rows: int
    cols: int
    col_indices: tuple
    row_indices: tuple
    divisors: tuple  # ((base, exponent), ...) sorted, μ first
    pencil_rank: int

    @property
    def g(self) -> int:
        return self.col_indices.count(0)

    @property
    def h(self) -> int:
        return self.row_indices.count(0)

    @property
    def regular_size(self) -> int:
        return sum(b.degree * e for b, e in self.divisors)

    @property
    def infinite_divisors(self) -> tuple:
        return tuple((b, e) for b, e in self.divisors if b == BinaryForm.mu())

    @property
    def finite_divisors(self) -> tuple:
        return tuple((b, e) for b, e in self.divisors if b != BinaryForm.mu())

    def check(self) -> None:
        eps = [e for e in self.col_indices if e > 0]
        eta = [e for e in self.row_indices if e > 0]
        N = self.regular_size
        if self.cols != self.g + sum(e + 1 for e in eps) + sum(eta) + N:
            raise InconsistentInvariants(f"column count does not match {self}")
        if self.rows != self.h + sum(eps) + sum(e + 1 for e in eta) + N:
            raise InconsistentInvariants(f"row count does not match {self}")
        if self.pencil_rank != sum(eps) + sum(eta) + N:
            raise InconsistentInvariants(f"rank does not match {self}")

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "col_indices": list(self.col_indices),
            "row_indices": list(self.row_indices),
            "divisors": [{"base": str(b), "exponent": e} for b, e in self.divisors],
            "regular_size": self.regular_size,
            "pencil_rank": self.pencil_rank,
        }


def kronecker_invariants(P: Pencil) -> KroneckerInvariants:
    cols, rows = minimal_indices(P)
    inv = KroneckerInvariants(P.rows, P.cols, tuple(cols), tuple(rows),
                              tuple(elementary_divisors(P)), pencil_rank(P))
    inv.check()
    return inv


def delta(divisors) -> int:
    """Number of non-squarefree invariant polynomials of the regular part."""
    counts = Counter(b for b, e in divisors if e >= 2)
    return max(counts.values(), default=0)


def tensor_rank_from_pencil(inv: KroneckerInvariants) -> int:
    if 0 in inv.col_indices or 0 in inv.row_indices:
        raise NotConcisePencil("zero minimal index: the tensor is not concise")
    return (sum(e + 1 for e in inv.col_indices) + sum(e + 1 for e in inv.row_indices)
            + inv.regular_size + delta(inv.divisors))


@dataclass(frozen=True)
class Block:
    kind: str  # "zero", "L", "LT", "N" or "F"
    size: int  # ε, η, u or the exponent e; unused for "zero"
    pencil: Pencil
    base: BinaryForm | None = None

    @property
    def label(self) -> str:
        if self.kind == "zero":
            return f"0_{{{self.pencil.rows}x{self.pencil.cols}}}"
        if self.kind == "F":
            return f"F[({self.base})^{self.size}]"
        return f"{self.kind}_{self.size}"


def _mat(rows: int, cols: int, ones) -> QMatrix:
    e = [[_ZERO] * cols for _ in range(rows)]
    for i, j in ones:
        e[i][j] = Fraction(1)
    return QMatrix.from_rows(e, cols=cols)


def _l_block(eps: int) -> Pencil:
    # λ on the diagonal, μ on the superdiagonal
    return Pencil(_mat(eps, eps + 1, [(i, i) for i in range(eps)]),
                  _mat(eps, eps + 1, [(i, i + 1) for i in range(eps)]))


def _n_block(u: int) -> Pencil:
    # μ on the diagonal, λ on the superdiagonal; det = μ^u
    return Pencil(_mat(u, u, [(i, i + 1) for i in range(u - 1)]),
                  _mat(u, u, [(i, i) for i in range(u)]))


def _finite_block(base: BinaryForm, e: int) -> Pencil:
    # λI − μK with K the companion matrix of p(t, 1)^e; det = p^e
    q = (base ** e).monic().coeffs  # monic in λ since base is not μ
    k = len(q) - 1
    K = [[_ZERO] * k for _ in range(k)]
    for i in range(1, k):
        K[i][i - 1] = Fraction(1)
    for i in range(k):
        K[i][k - 1] = -q[k - i]
    return Pencil(QMatrix.identity(k), QMatrix.from_rows(K, cols=k).scale(-1))


def block_diag(pencils: list[Pencil], rows: int, cols: int) -> Pencil:
    out = [[[_ZERO] * cols for _ in range(rows)] for _ in range(2)]
    i0 = j0 = 0
    for P in pencils:
        for s, A in enumerate((P.A0, P.A1)):
            for i in range(P.rows):
                for j in range(P.cols):
                    out[s][i0 + i][j0 + j] = A[i, j]
        i0 += P.rows
        j0 += P.cols
    return Pencil(QMatrix.from_rows(out[0], cols=cols), QMatrix.from_rows(out[1], cols=cols))


@dataclass(frozen=True)
class NormalForm:
    invariants: KroneckerInvariants
    blocks: tuple
    pencil: Pencil

    @property
    def labels(self) -> list[str]:
        return [b.label for b in self.blocks]


def normal_form_from_invariants(inv: KroneckerInvariants) -> NormalForm:
    blocks = []
    if inv.g or inv.h:
        blocks.append(Block("zero", 0, Pencil(QMatrix.zeros(inv.h, inv.g), QMatrix.zeros(inv.h, inv.g))))
    for e in sorted(x for x in inv.col_indices if x > 0):
        blocks.append(Block("L", e, _l_block(e)))
    for e in sorted(x for x in inv.row_indices if x > 0):
        blocks.append(Block("LT", e, _l_block(e).transpose()))
    for b, e in inv.infinite_divisors:
        blocks.append(Block("N", e, _n_block(e)))
    for b, e in inv.finite_divisors:
        blocks.append(Block("F", e, _finite_block(b, e), base=b))
    return NormalForm(inv, tuple(blocks), block_diag([b.pencil for b in blocks], inv.rows, inv.cols))


def normal_form(P: Pencil) -> NormalForm:
    return normal_form_from_invariants(kronecker_invariants(P))


def strictly_equivalent(P1: Pencil, P2: Pencil) -> bool:
    return P1.shape == P2.shape and kronecker_invariants(P1) == kronecker_invariants(P2)


def _root_profile(divisors) -> dict:
    # linear base -> sorted exponents
    prof: dict = {}
    for b, e in divisors:
        prof.setdefault(b, []).append(e)
    return {b: tuple(sorted(es)) for b, es in prof.items()}


def orbit_equivalent(P1: Pencil, P2: Pencil) -> bool:
    """Strict equivalence up to a change of parameters (λ, μ) by GL2(Q).

    Decided when all divisor bases are linear and there are at most three
    distinct roots, since PGL2 acts 3-transitively on the projective line.
    Raises NotImplementedError otherwise (unless the pencils are strictly
    equivalent).
    """
    if P1.shape != P2.shape:
        return False
    k1, k2 = kronecker_invariants(P1), kronecker_invariants(P2)
    if k1 == k2:
        return True
    if (k1.col_indices, k1.row_indices) != (k2.col_indices, k2.row_indices):
        return False
    if any(b.degree != 1 for b, _ in k1.divisors + k2.divisors):
        raise NotImplementedError("orbit equivalence with non-linear divisors")
    p1, p2 = _root_profile(k1.divisors), _root_profile(k2.divisors)
    if max(len(p1), len(p2)) > 3:
        raise NotImplementedError("orbit equivalence with more than three divisor roots")
    return sorted(p1.values()) == sorted(p2.values())
