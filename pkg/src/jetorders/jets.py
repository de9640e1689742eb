"""Taylor/jet matrices of a polynomial subspace and the orders they define.

The jet matrix of order n at a point has one row per basis element and one
column per exponent alpha with |alpha| <= n (ordered by total degree, then
lexicographically); the entry is d^alpha(p)/alpha!.  Rank-deficiency of rows
gives the injectivity order at the point, rank-deficiency of columns the
jet (surjectivity) order.  At the generic point, ranks are taken over the
rational function field.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra import (
    Polynomial,
    as_exact,
    binomial_product,
    exponents_upto,
    multi_factorial,
    poly_divexact,
)
from .linalg import SpanChecker, rank_exact

#: default side length above which symbolic elimination is not attempted
SYMBOLIC_THRESHOLD = 12

#: default number of random evaluations for large symbolic ranks
RANDOM_TRIALS = 4


class _Generic:
    """Tag for `the generic point` (rank over the rational function field)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "GENERIC"


GENERIC = _Generic()


class InternalConsistencyError(RuntimeError):
    """A rank search failed to terminate where the theory says it must."""


class DependentBasisError(ValueError):
    """The proposed basis of a subspace is linearly dependent."""


class SubspaceV:
    """A finite-dimensional subspace of Q[x_1..x_n] given by an ordered basis.

    When every basis element is a single monomial x^m the exponent set is
    recorded in `monomial_points`, which unlocks the lattice-point methods.
    """

    def __init__(self, nvars, basis, monomial_points=None):
        basis = tuple(basis)
        if not basis:
            raise ValueError("empty basis")
        for p in basis:
            if p.nvars != nvars:
                raise ValueError("basis element in wrong polynomial ring")
            if p.is_zero:
                raise DependentBasisError("zero polynomial in basis")
        self.nvars = int(nvars)
        self.basis = basis

        detected = [p.monomial_exponent for p in basis]
        if monomial_points is not None:
            monomial_points = tuple(tuple(m) for m in monomial_points)
            if list(monomial_points) != detected:
                raise ValueError("monomial_points do not match the basis")
        elif all(m is not None for m in detected):
            monomial_points = tuple(detected)
        if monomial_points is not None and len(set(monomial_points)) != len(monomial_points):
            raise DependentBasisError("duplicate monomial in basis")
        self.monomial_points = monomial_points

        if monomial_points is None:
            support = sorted({e for p in basis for e in p.support()})
            index = {e: i for i, e in enumerate(support)}
            rows = []
            for p in basis:
                row = [Fraction(0)] * len(support)
                for e, c in p.items():
                    row[index[e]] = c
                rows.append(row)
            if rank_exact(rows) != len(basis):
                raise DependentBasisError("basis is linearly dependent over Q")

        self.max_degree = max(int(p.degree) for p in basis)
        self._generic_cache = {}

    @classmethod
    def from_monomials(cls, nvars, exponents):
        exponents = [tuple(e) for e in exponents]
        basis = [Polynomial.monomial(e, 1, nvars) for e in exponents]
        return cls(nvars, basis, monomial_points=exponents)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def is_monomial(self):
        return self.monomial_points is not None

    def __repr__(self):
        return f"SubspaceV(nvars={self.nvars}, dim={self.dim})"

    def generic_report(self, seed=0, symbolic_threshold=SYMBOLIC_THRESHOLD, trials=RANDOM_TRIALS):
        key = (seed, symbolic_threshold, trials)
        if key not in self._generic_cache:
            self._generic_cache[key] = n_inj_at(
                self, GENERIC, seed=seed, symbolic_threshold=symbolic_threshold, trials=trials
            )
        return self._generic_cache[key]


@dataclass(frozen=True)
class JetMatrix:
    """Matrix of the order-n Taylor map, exact or symbolic."""

    order: int
    point: object  # tuple of Fractions, or GENERIC
    columns: tuple  # exponent tuples, (degree, lex) order
    entries: tuple  # tuple of row tuples; Fraction (at a point) or Polynomial
    monomial_points: tuple | None = None

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.columns)

    def transpose(self):
        rows = tuple(zip(*self.entries)) if self.entries else ()
        return JetMatrix(self.order, self.point, self.columns, rows, None)


def jet_matrix(V, n, at=GENERIC):
    """Jet matrix of V at order n, at a rational point or the generic point.

    Entry (i, alpha) is d^alpha(p_i)/alpha!; for monomial basis rows this is
    C(m, alpha) x^(m - alpha).
    """
    if n < 0:
        raise ValueError("jet order must be >= 0")
    cols = exponents_upto(V.nvars, n)
    symbolic = at is GENERIC
    if not symbolic:
        at = tuple(as_exact(c) for c in at)
        if len(at) != V.nvars:
            raise ValueError(f"point has {len(at)} coordinates, expected {V.nvars}")
    rows = []
    for p in V.basis:
        m = p.monomial_exponent
        if m is not None:
            row = []
            for alpha in cols:
                c = binomial_product(m, alpha)
                if not c:
                    row.append(Polynomial.zero(V.nvars) if symbolic else Fraction(0))
                    continue
                exp = tuple(a - b for a, b in zip(m, alpha))
                if symbolic:
                    row.append(Polynomial.monomial(exp, c, V.nvars))
                else:
                    value = Fraction(c)
                    for base, e in zip(at, exp):
                        if e:
                            value *= base ** e
                    row.append(value)
        else:
            row = []
            for alpha in cols:
                d = p.derivative(alpha)
                entry = d * Fraction(1, multi_factorial(alpha))
                row.append(entry if symbolic else entry(at))
        rows.append(tuple(row))
    return JetMatrix(n, GENERIC if symbolic else at, tuple(cols), tuple(rows),
                     V.monomial_points)


# ---------------------------------------------------------------------------
# ranks of symbolic (polynomial-entry) matrices


@dataclass(frozen=True)
class RankResult:
    value: int
    method: str  # "exact" | "monomial-scaling" | "symbolic" | "randomized"
    certified: bool

    def __int__(self):
        return self.value


def _monomial_scaling_rank(rows):
    """Generic rank via row/column scaling, for matrices of monomial entries
    whose exponents decompose as row_offset + column_offset on the support.

    Such a matrix equals D_r C D_c with D_r, D_c invertible diagonal
    matrices over the function field, so its generic rank is the rank of
    the integer-coefficient matrix C.  Returns None when the reduction does
    not apply.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    coeffs = [[0] * ncols for _ in range(nrows)]
    expo = {}
    for i, row in enumerate(rows):
        for j, p in enumerate(row):
            if p.is_zero:
                continue
            term = p.single_term()
            if term is None:
                return None
            expo[(i, j)] = term[0]
            coeffs[i][j] = term[1]
    if not expo:
        return RankResult(0, "monomial-scaling", True)
    nv = len(next(iter(expo.values())))
    zero = (0,) * nv
    row_off = [None] * nrows
    col_off = [None] * ncols
    for i in range(nrows):
        if row_off[i] is not None:
            continue
        if not any((i, j) in expo for j in range(ncols)):
            continue
        row_off[i] = zero
        stack = [("r", i)]
        while stack:
            kind, k = stack.pop()
            if kind == "r":
                for j in range(ncols):
                    e = expo.get((k, j))
                    if e is None:
                        continue
                    want = tuple(a - b for a, b in zip(e, row_off[k]))
                    if col_off[j] is None:
                        col_off[j] = want
                        stack.append(("c", j))
                    elif col_off[j] != want:
                        return None
            else:
                for i2 in range(nrows):
                    e = expo.get((i2, k))
                    if e is None:
                        continue
                    want = tuple(a - b for a, b in zip(e, col_off[k]))
                    if row_off[i2] is None:
                        row_off[i2] = want
                        stack.append(("r", i2))
                    elif row_off[i2] != want:
                        return None
    return RankResult(rank_exact(coeffs, ncols), "monomial-scaling", True)


def _rank_symbolic(rows, ncols):
    """Deterministic fraction-free elimination over the polynomial ring."""
    m = [list(row) for row in rows]
    nrows = len(m)
    rank = 0
    prev = None
    for c in range(ncols):
        piv = None
        best = None
        for i in range(rank, nrows):
            if not m[i][c].is_zero:
                size = (len(m[i][c]._terms), int(m[i][c].degree))
                if best is None or size < best:
                    best = size
                    piv = i
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        pivot = m[rank][c]
        prow = m[rank]
        for i in range(rank + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                num = row[j] * pivot - f * prow[j]
                row[j] = poly_divexact(num, prev) if prev is not None else num
            row[c] = Polynomial.zero(pivot.nvars)
        prev = pivot
        rank += 1
        if rank == nrows:
            break
    return rank


def _random_point(rng, nvars, spread):
    return tuple(Fraction(rng.randint(1, spread) * rng.choice((-1, 1)))
                 for _ in range(nvars))


def generic_rank(rows, seed=0, symbolic_threshold=SYMBOLIC_THRESHOLD, trials=RANDOM_TRIALS):
    """Rank of a matrix of polynomials over the rational function field.

    Strategy: a scaling reduction for decomposable monomial matrices (jet
    matrices of monomial subspaces always are); deterministic fraction-free
    elimination up to `symbolic_threshold` per side; otherwise seeded random
    evaluations, keeping the maximum.  Random evaluation is a certified
    lower bound, exact when it reaches min(rows, cols).
    """
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return RankResult(0, "symbolic", True)
    nrows, ncols = len(rows), len(rows[0])
    result = _monomial_scaling_rank(rows)
    if result is not None:
        return result
    if max(nrows, ncols) <= symbolic_threshold:
        return RankResult(_rank_symbolic(rows, ncols), "symbolic", True)
    rng = random.Random(seed)
    nvars = rows[0][0].nvars
    best = 0
    ceiling = min(nrows, ncols)
    for t in range(trials):
        point = _random_point(rng, nvars, 10 ** (t + 2))
        values = [[p(point) for p in row] for row in rows]
        best = max(best, rank_exact(values, ncols))
        if best == ceiling:
            break
    return RankResult(best, "randomized", best == ceiling)


def rank_of_jet_matrix(J, seed=0, symbolic_threshold=SYMBOLIC_THRESHOLD, trials=RANDOM_TRIALS):
    if J.point is GENERIC:
        return generic_rank(J.entries, seed, symbolic_threshold, trials)
    return RankResult(rank_exact(J.entries), "exact", True)


# ---------------------------------------------------------------------------
# order reports


@dataclass(frozen=True)
class OrderReport:
    """Jet-rank profile of V at one point and the orders derived from it."""

    point: object
    n_inj: int
    n_surj: int
    gap_sequence: tuple
    rank_profile: tuple
    weierstrass_order: int
    n_inj_generic: int
    dim: int
    method: str

    def to_dict(self):
        if self.point is GENERIC:
            pt = "GENERIC"
        else:
            pt = [str(c) for c in self.point]
        return {
            "point": pt,
            "n_inj": self.n_inj,
            "n_surj": self.n_surj,
            "gap_sequence": list(self.gap_sequence),
            "rank_profile": list(self.rank_profile),
            "weierstrass_order": self.weierstrass_order,
            "n_inj_generic": self.n_inj_generic,
            "dim": self.dim,
            "method": self.method,
        }


def _profile(V, at, seed, symbolic_threshold, trials):
    """Rank profile r_0 <= r_1 <= ... up to the first full-rank order."""
    ranks = []
    methods = set()
    for n in range(V.max_degree + 1):
        res = rank_of_jet_matrix(jet_matrix(V, n, at), seed, symbolic_threshold, trials)
        methods.add(res.method)
        value = res.value
        if ranks and value < ranks[-1]:
            # randomized estimates are lower bounds; ranks never decrease in n
            value = ranks[-1]
        ranks.append(value)
        if value == V.dim:
            return ranks, methods
    raise InternalConsistencyError(
        f"jet rank of a {V.dim}-dimensional independent subspace did not reach "
        f"{V.dim} by order {V.max_degree}"
    )


def n_inj_at(V, at=GENERIC, seed=0, generic_order=None,
             symbolic_threshold=SYMBOLIC_THRESHOLD, trials=RANDOM_TRIALS):
    """Smallest n making the order-n Taylor map of V injective at `at`.

    Returns the full OrderReport (rank profile, gap sequence, jet order and
    Weierstrass order against the generic injectivity order).
    """
    ranks, methods = _profile(V, at, seed, symbolic_threshold, trials)
    n_inj = len(ranks) - 1
    gaps = tuple(i for i in range(1, len(ranks)) if ranks[i] > ranks[i - 1])

    n_surj = -1
    for n, r in enumerate(ranks):
        if r == comb(n + V.nvars, V.nvars):
            n_surj = n
        else:
            break

    if at is GENERIC:
        generic_order = n_inj
    elif generic_order is None:
        generic_order = V.generic_report(seed, symbolic_threshold, trials).n_inj

    method = "exact" if at is not GENERIC else "+".join(sorted(methods))
    return OrderReport(
        point=at if at is GENERIC else tuple(as_exact(c) for c in at),
        n_inj=n_inj,
        n_surj=n_surj,
        gap_sequence=gaps,
        rank_profile=tuple(ranks),
        weierstrass_order=n_inj - generic_order - 1,
        n_inj_generic=generic_order,
        dim=V.dim,
        method=method,
    )


def n_surj_at(V, at, seed=0):
    """Largest n with the Taylor maps of all orders <= n surjective at `at`.

    Returns -1 when even the order-0 map fails (every basis element
    vanishes at the point).
    """
    return n_inj_at(V, at, seed=seed).n_surj


def weierstrass_scan(V, points, seed=0, symbolic_threshold=SYMBOLIC_THRESHOLD,
                     trials=RANDOM_TRIALS):
    """Per-point OrderReports with Weierstrass orders against N_inj."""
    generic = V.generic_report(seed, symbolic_threshold, trials)
    return [
        n_inj_at(V, p, seed=seed, generic_order=generic.n_inj,
                 symbolic_threshold=symbolic_threshold, trials=trials)
        for p in points
    ]


# ---------------------------------------------------------------------------
# Weierstrass loci as rank-drop minors


@dataclass(frozen=True)
class MinorsReport:
    order: int  # the generic injectivity order used
    minors: tuple  # nonzero maximal minors, as Polynomials
    total: int  # number of maximal minors of the matrix
    truncated: bool

    def __iter__(self):
        return iter(self.minors)


def _det_polynomial(rows):
    """Determinant of a square polynomial matrix (column DP expansion)."""
    d = len(rows)
    nvars = rows[0][0].nvars
    states = {(): Polynomial.constant(nvars, 1)}
    for j in range(d):
        new = {}
        for used, acc in states.items():
            used_set = set(used)
            for i in range(d):
                if i in used_set:
                    continue
                entry = rows[i][j]
                if entry.is_zero:
                    continue
                sign = -1 if sum(1 for u in used if u > i) % 2 else 1
                term = acc * entry if sign == 1 else acc * (-entry)
                key = tuple(sorted(used + (i,)))
                if key in new:
                    new[key] = new[key] + term
                else:
                    new[key] = term
        states = {k: v for k, v in new.items() if not v.is_zero}
        if not states:
            return Polynomial.zero(nvars)
    return states.get(tuple(range(d)), Polynomial.zero(nvars))


def _det_int(rows):
    """Fraction-free determinant of a square integer matrix."""
    m = [list(r) for r in rows]
    d = len(m)
    sign = 1
    prev = 1
    for c in range(d - 1):
        piv = None
        for i in range(c, d):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        pivot = m[c][c]
        for i in range(c + 1, d):
            f = m[i][c]
            for j in range(c + 1, d):
                m[i][j] = (m[i][j] * pivot - f * m[c][j]) // prev
        prev = pivot
    return sign * m[d - 1][d - 1]


def weierstrass_minors(V, seed=0, cap=200, symbolic_threshold=SYMBOLIC_THRESHOLD,
                       trials=RANDOM_TRIALS):
    """All nonzero maximal minors of the symbolic jet matrix at the generic
    injectivity order.  Their common zero locus is the set of points of the
    affine chart whose injectivity order exceeds the generic one.
    """
    generic = V.generic_report(seed, symbolic_threshold, trials)
    J = jet_matrix(V, generic.n_inj, GENERIC)
    d = V.dim
    total = comb(J.ncols, d)
    truncated = total > cap
    minors = []
    combos = itertools.combinations(range(J.ncols), d)
    if truncated:
        combos = itertools.islice(combos, cap)
    monomial = V.is_monomial
    for combo in combos:
        if monomial:
            ints = [[binomial_product(m, J.columns[j]) for j in combo]
                    for m in V.monomial_points]
            c = _det_int(ints)
            if c:
                exp = [0] * V.nvars
                for m in V.monomial_points:
                    exp = [a + b for a, b in zip(exp, m)]
                for j in combo:
                    exp = [a - b for a, b in zip(exp, J.columns[j])]
                minors.append(Polynomial.monomial(tuple(exp), c, V.nvars))
        else:
            det = _det_polynomial([[row[j] for j in combo] for row in J.entries])
            if not det.is_zero:
                minors.append(det)
    return MinorsReport(generic.n_inj, tuple(minors), total, truncated)


def in_minor_zero_locus(report, point):
    """True when every minor vanishes at the rational point."""
    return all(m(point) == 0 for m in report.minors)


def span_checker(V):
    """Membership test for span(V) in coefficient space; used by callers
    that need `does this polynomial lie in V`."""
    support = sorted({e for p in V.basis for e in p.support()})
    index = {e: i for i, e in enumerate(support)}
    rows = []
    for p in V.basis:
        row = [Fraction(0)] * len(support)
        for e, c in p.items():
            row[index[e]] = c
        rows.append(row)
    return SpanChecker(rows, len(support)), index
