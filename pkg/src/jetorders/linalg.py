"""Exact linear algebra over the rationals.

Everything here is integer/Fraction arithmetic; no floating point is used
anywhere.  Ranks are computed by fraction-free (Bareiss) elimination after
clearing denominators.  A modular elimination pass (numpy, single word
primes) is used as a fast path, but its result is only trusted when it
certifies itself: a rank mod p is always a lower bound for the rational
rank, so hitting min(rows, cols) proves the exact answer.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

_PRIMES = (1_000_003, 999_999_937)

# matrices at least this large try the modular fast path first
_MODULAR_MIN_DIM = 24


def _as_integer_rows(rows):
    """Scale each row by the lcm of its denominators; returns plain ints."""
    out = []
    for row in rows:
        den = 1
        for e in row:
            if isinstance(e, Fraction):
                d = e.denominator
                den = den // gcd(den, d) * d
        out.append([int(e * den) if den != 1 else int(e) for e in row])
    return out


def _rank_mod_p(int_rows, ncols, p):
    a = np.array([[v % p for v in row] for row in int_rows], dtype=np.int64)
    nrows = a.shape[0]
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        col = a[r + 1:, c]
        nz = np.nonzero(col)[0]
        if nz.size:
            block = a[r + 1:, c:]
            block[nz] = (block[nz] - np.outer(col[nz], a[r, c:])) % p
        r += 1
        if r == nrows:
            break
    return r


def _rank_bareiss(int_rows, ncols):
    m = [row[:] for row in int_rows]
    nrows = len(m)
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        pivot = m[rank][c]
        prow = m[rank]
        for i in range(rank + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * pivot - f * prow[j]) // prev
                row[c] = 0
            elif pivot != prev:
                for j in range(c + 1, ncols):
                    row[j] = row[j] * pivot // prev
        prev = pivot
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_exact(rows, ncols=None):
    """Exact rank of a matrix with integer or Fraction entries."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    if ncols == 0:
        return 0
    ints = _as_integer_rows(rows)
    ceiling = min(len(ints), ncols)
    if ceiling >= _MODULAR_MIN_DIM:
        for p in _PRIMES:
            if _rank_mod_p(ints, ncols, p) == ceiling:
                return ceiling
    return _rank_bareiss(ints, ncols)


def rref(rows, ncols):
    """Reduced row echelon form over Fraction.  Returns (rows, pivot_cols)."""
    m = [[Fraction(e) for e in row] for row in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [e * inv for e in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def nullspace(rows, ncols):
    """Basis of the right kernel, one Fraction vector per free column."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(v)
    return basis


class SpanChecker:
    """Incremental membership test for the row span of a rational matrix."""

    def __init__(self, rows, ncols):
        self.ncols = ncols
        self._rref, self._pivots = rref(rows, ncols) if rows else ([], [])

    @property
    def rank(self):
        return len(self._pivots)

    def residual(self, vector):
        v = [Fraction(e) for e in vector]
        for row, pc in zip(self._rref, self._pivots):
            f = v[pc]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vector):
        return not any(self.residual(vector))
