import random
from fractions import Fraction as F

from jetorders.linalg import SpanChecker, nullspace, rank_exact, rref


def test_rank_examples():
    eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert rank_exact(eye) == 3
    assert rank_exact([[0] * 5, [0] * 5]) == 0
    assert rank_exact([[1, 2], [2, 4], [3, 5]]) == 2


def test_rank_fractions():
    m = [[F(1, 2), F(1, 3)], [F(1, 4), F(1, 6)]]
    assert rank_exact(m) == 1
    m[1][1] = F(1, 5)
    assert rank_exact(m) == 2


def test_rank_matches_rref_randomized():
    rng = random.Random(9)
    for _ in range(50):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        m = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(nc)] for _ in range(nr)]
        reduced, pivots = rref(m, nc)
        assert rank_exact(m) == len(pivots)
        for vec in nullspace(m, nc):
            assert all(sum(a * b for a, b in zip(row, vec)) == 0 for row in m)
        assert len(nullspace(m, nc)) == nc - len(pivots)


def test_rank_modular_fastpath_large_identity():
    n = 40
    eye = [[F(i == j) for j in range(n)] for i in range(n)]
    assert rank_exact(eye) == n


def test_rank_modular_fastpath_not_trusted_when_deficient():
    # a large matrix of rank 1: the modular pass cannot certify, Bareiss decides
    n = 30
    m = [[(i + 1) * (j + 1) for j in range(n)] for i in range(n)]
    assert rank_exact(m) == 1


def test_span_checker():
    rows = [[1, 0, 1], [0, 1, 1]]
    sc = SpanChecker(rows, 3)
    assert sc.rank == 2
    assert sc.contains([2, 3, 5])
    assert not sc.contains([1, 0, 0])
