"""Acceptance suite, criteria 1-8. Each test reports one PASS/FAIL line,
collected in the pytest terminal summary.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or
``python tests/test_acceptance.py``.
"""
import itertools
import random
import sys
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE_LINES, EXAMPLE_A, EXAMPLE_B, WORKED_ENTRIES, e, pencil, r1, tsum  # noqa: E402
from rank3id.classifier import (Family, classify, hyperdeterminant,  # noqa: E402
                                rank_at_most_2)
from rank3id.forms import BinaryForm  # noqa: E402
from rank3id.generate import generate, random_gl  # noqa: E402
from rank3id.linalg import QMatrix, rank  # noqa: E402
from rank3id.pencil import (determinantal_divisor, elementary_divisors,  # noqa: E402
                            invariant_polynomials, kronecker_invariants, normal_form,
                            pencil_rank, tensor_of, tensor_rank_from_pencil)
from rank3id.tensor import Tensor, apply_gl, concise, permute_factors, scale  # noqa: E402

lam, mu, one = BinaryForm.lam(), BinaryForm.mu(), BinaryForm.one()


def report(n, ok, note=""):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f" ({note})" if note else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


# 1 ---------------------------------------------------------------------------

def test_criterion_1_worked_example():
    t0 = time.perf_counter()
    T = Tensor.from_entries((3, 2, 2, 2), WORKED_ENTRIES)
    rep = classify(T)
    elapsed = time.perf_counter() - t0
    w = rep.witness
    y_matrix = [w["y_full"][0:2], w["y_full"][2:4], w["y_full"][4:6]]
    ok = (rep.verdict is Family.GeneralGlue
          and w["x"] == ["-2", "1"] and w["y"] == ["-2/3", "1"]
          and {w["rank_x"], w["rank_y"]} == {1, 2}
          and y_matrix == [["0", "0"], ["8/3", "44/3"], ["16/3", "88/3"]]
          and elapsed < 1)
    report(1, ok, f"verdict {rep.label}, ranks {w.get('rank_x')},{w.get('rank_y')}, {elapsed:.3f}s")


# 2 ---------------------------------------------------------------------------

def test_criterion_2_pencil_example():
    t0 = time.perf_counter()
    P = pencil(EXAMPLE_B, EXAMPLE_A)
    inv = kronecker_invariants(P)
    D = [determinantal_divisor(P, j) for j in range(1, 5)]
    ipolys = invariant_polynomials(P)
    nf = normal_form(P)
    N1 = nf.blocks[-1].pencil
    elapsed = time.perf_counter() - t0
    ok = (inv.col_indices == (0, 0, 2) and inv.row_indices == (0,)
          and elementary_divisors(P) == [(mu, 1)]
          and D == [one, one, mu, BinaryForm(())]
          and sorted(map(str, ipolys)) == ["1", "1", "μ"]
          and pencil_rank(P) == 3
          and nf.labels == ["0_{1x2}", "L_2", "N_1"]
          and N1.at(0, 1).to_rows() == [[1]]
          and elapsed < 1)
    report(2, ok, f"blocks {nf.labels}, D_1..D_4 = {[str(d) for d in D]}, {elapsed:.3f}s")


# 3 ---------------------------------------------------------------------------

def test_criterion_3_conic_fingerprints():
    # [λ 0 μ; 0 λ μ] and [λ 0 λ+μ; 0 μ λ+μ]
    reducible = pencil([[1, 0, 0], [0, 1, 0]], [[0, 0, 1], [0, 0, 1]])
    irreducible = pencil([[1, 0, 1], [0, 0, 1]], [[0, 0, 1], [0, 1, 1]])
    ki, kr = kronecker_invariants(irreducible), kronecker_invariants(reducible)
    ok_inv = (ki.col_indices == (2,) and ki.divisors == ()
              and kr.col_indices == (1,) and len(kr.divisors) == 1 and kr.divisors[0][0].degree == 1)
    vd, ve = classify(tensor_of(irreducible)).label, classify(tensor_of(reducible)).label
    report(3, ok_inv and vd == "d" and ve == "e", f"irreducible -> {vd}, reducible -> {ve}")


# 4 ---------------------------------------------------------------------------

def test_criterion_4_rank_formula():
    cases = {
        "case 7": (([[1, 0, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 0]]), 3),
        "case 8": (([[1, 0, 0], [0, 1, 0]], [[0, 1, 0], [0, 0, 1]]), 3),
        "diag(λ,λ,μ)": (([[1, 0, 0], [0, 1, 0], [0, 0, 0]], [[0, 0, 0], [0, 0, 0], [0, 0, 1]]), 3),
        "diag(λ,λ+μ,μ)": (([[1, 0, 0], [0, 1, 0], [0, 0, 0]], [[0, 0, 0], [0, 1, 0], [0, 0, 1]]), 3),
        "[[λ,μ],[0,λ]]": (([[1, 0], [0, 1]], [[0, 1], [0, 0]]), 3),
        "diag(λ,μ)": (([[1, 0], [0, 0]], [[0, 0], [0, 1]]), 2),
    }
    got = {name: tensor_rank_from_pencil(kronecker_invariants(pencil(*p))) for name, (p, _) in cases.items()}
    jordan = kronecker_invariants(pencil([[1, 0], [0, 1]], [[0, 1], [0, 0]]))
    ok = all(got[n] == want for n, (_, want) in cases.items()) and jordan.divisors == ((lam, 2),)
    report(4, ok, ", ".join(f"{n}={r}" for n, r in got.items()))


# 5 ---------------------------------------------------------------------------

ROUND_TRIP_SHAPES = {
    "a": [(3, 3)],
    "b": [(2, 2, 2)],
    "c": [(2, 2, 2, 2)],
    "d": [(3, 2, 2)],
    "e": [(3, 2, 2)],
    "f": [(3, 3, 2), (3, 2, 2, 2), (3, 3, 2, 2), (2, 2, 2, 2, 2), (3, 2, 2, 2, 2), (3, 3, 2, 2, 2),
          (2, 2, 2, 2, 2, 2), (3, 2, 2, 2, 2, 2), (3, 3, 2, 2, 2, 2)],
}
# a generic tensor of shape (3,3) or (3,2,2) is itself in family a or d
NEGATIVE_SHAPES = [(2, 2, 2), (2, 2, 2, 2), (3, 3, 2), (3, 3, 3), (3, 2, 2, 2), (3, 3, 2, 2),
                   (2, 2, 2, 2, 2), (3, 2, 2, 2, 2), (3, 3, 2, 2, 2), (2, 2, 2, 2, 2, 2),
                   (3, 2, 2, 2, 2, 2), (3, 3, 2, 2, 2, 2)]


def random_tensor(rng, shape):
    n = 1
    for d in shape:
        n *= d
    return Tensor(shape, tuple(F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)))


def test_criterion_5_round_trips():
    t0 = time.perf_counter()
    failures = []
    for fam, shapes in ROUND_TRIP_SHAPES.items():
        for shape in shapes:
            for seed in range(100):
                got = classify(generate(fam, shape, seed)).label
                if got != fam:
                    failures.append((fam, shape, seed, got))
    rng = random.Random("negative controls")
    for shape in NEGATIVE_SHAPES:
        for _ in range(100):
            got = classify(random_tensor(rng, shape)).label
            if got != "not_on_list":
                failures.append(("random", shape, got))
    elapsed = time.perf_counter() - t0
    n = 100 * (sum(map(len, ROUND_TRIP_SHAPES.values())) + len(NEGATIVE_SHAPES))
    report(5, not failures and elapsed < 60,
           f"{n} cases, {len(failures)} failures {failures[:3]}, {elapsed:.1f}s")


# 6 ---------------------------------------------------------------------------

INSTANCES = [("a", (3, 3)), ("b", (2, 2, 2)), ("c", (2, 2, 2, 2)), ("d", (3, 2, 2)),
             ("e", (3, 2, 2)), ("f", (3, 3, 2)), ("f", (3, 2, 2, 2)), ("f", (2, 2, 2, 2, 2))]


def test_criterion_6_gl_and_permutation_invariance():
    rng = random.Random("invariance")
    bad = []
    for fam, shape in INSTANCES:
        T = generate(fam, shape, 0)
        want = classify(T).label
        for trial in range(50):
            perm = list(range(T.order))
            rng.shuffle(perm)
            S = permute_factors(apply_gl(T, [random_gl(rng, n) for n in T.shape]), perm)
            got = classify(S).label
            if got != want or want != fam:
                bad.append((fam, shape, trial, got))
    report(6, not bad, f"{50 * len(INSTANCES)} trials, {len(bad)} changed verdicts")


# 7 ---------------------------------------------------------------------------

def test_criterion_7_hyperdeterminant_controls():
    rng = random.Random("hdet")
    zero_fail = sum(hyperdeterminant(generate("b", (2, 2, 2), s)) != 0 for s in range(1000))
    nonzero_fail = 0
    for _ in range(1000):
        c = F(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 4))
        T = r1(e(2, 0), e(2, 0), e(2, 0)) + scale(r1(e(2, 1), e(2, 1), e(2, 1)), c)
        T = apply_gl(T, [random_gl(rng, 2) for _ in range(3)])
        nonzero_fail += hyperdeterminant(T) == 0
    report(7, zero_fail == 0 and nonzero_fail == 0,
           f"tangential nonzero: {zero_fail}/1000, two-term zero: {nonzero_fail}/1000")


# 8 ---------------------------------------------------------------------------

def oracle_rank_at_most_2(T):
    """Complex rank <= 2 without eigenvectors: border rank <= 2 (every bipartition
    flattening has rank <= 2) and not tangential (the concise grouping
    (0 | 1 | rest) has nonzero hyperdeterminant)."""
    if T.is_zero():
        return True
    core = concise(T).core
    if core.order <= 2:
        return all(n <= 2 for n in core.shape)
    if any(n != 2 for n in core.shape):
        return False
    k = core.order
    arr = core.array()
    for size in range(1, k // 2 + 1):
        for left in itertools.combinations(range(k), size):
            right = [l for l in range(k) if l not in left]
            M = arr.transpose(list(left) + right).reshape(2 ** size, -1)
            if rank(QMatrix(M.shape[0], M.shape[1], tuple(M.reshape(-1)))) > 2:
                return False
    grouped = Tensor((2, 2, 2 ** (k - 2)), core.entries)
    g = concise(grouped).core
    return g.shape == (2, 2, 2) and hyperdeterminant(g) != 0


def test_criterion_8_rank_at_most_2_oracle():
    rng = random.Random("rank two")
    shapes = [(2, 2), (2, 3), (2, 2, 2), (3, 2, 2), (2, 2, 2, 2), (2, 2, 2, 2, 2)]
    disagreements = []
    reduced = 0
    for trial in range(500):
        shape = shapes[trial % len(shapes)]
        s = rng.randint(1, 3)
        terms = [r1(*[[F(rng.randint(-2, 2)) for _ in range(n)] for n in shape]) for _ in range(s)]
        T = tsum(*terms)
        expected = s <= 2 or oracle_rank_at_most_2(T)
        if s <= 2 and not oracle_rank_at_most_2(T):
            disagreements.append(("oracle", trial))
        reduced += s == 3 and expected
        if rank_at_most_2(T) != expected:
            disagreements.append((trial, shape, s))
    report(8, not disagreements,
           f"500 sums, {reduced} three-term sums of rank <= 2, {len(disagreements)} disagreements")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
