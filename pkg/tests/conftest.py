from fractions import Fraction

import pytest

from rank3id.linalg import QMatrix
from rank3id.pencil import Pencil
from rank3id.tensor import Tensor, add, rank1

# 3x2x2x2 tensor of the reshape worked example, last index fastest
WORKED_ENTRIES = [12, 8, 6, 4, 30, 20, 15, 10, 8, 8, 5, 6, 35, 38, 23, 30,
                  16, 16, 10, 12, 52, 64, 37, 54]

# 4x6 example pencil λ·B + μ·A. Entry (2,3) of A is 1, which the pencil's
# stated kernel vectors require (see the ledger).
EXAMPLE_B = [[0, 0, 1, 3, 0, 0], [2, 1, 1, 0, 1, 0], [0, 0, 0, 0, 0, 0], [2, 1, 2, 3, 1, 0]]
EXAMPLE_A = [[1, 0, 0, 1, 1, 2], [0, 0, 1, 3, 0, 0], [0, 0, 0, 1, 1, 1], [1, 0, 1, 4, 1, 2]]


def e(n, i):
    return tuple(Fraction(int(k == i)) for k in range(n))


def r1(*vectors):
    return rank1(vectors)


def tsum(*terms):
    out = terms[0]
    for t in terms[1:]:
        out = add(out, t)
    return out


def pencil(A0, A1):
    return Pencil(QMatrix.from_rows(A0), QMatrix.from_rows(A1))


@pytest.fixture
def worked_tensor():
    return Tensor.from_entries((3, 2, 2, 2), WORKED_ENTRIES)


@pytest.fixture
def example_pencil():
    return pencil(EXAMPLE_B, EXAMPLE_A)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
