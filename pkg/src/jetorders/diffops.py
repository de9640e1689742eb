"""Differential operators preserving a monomial subspace.

For a monomial exponent set P, a weight-w operator of order <= n is a
combination of terms x^(alpha+w) d^alpha with alpha + w >= 0 and
|alpha| <= n; it sends x^m to c_m x^(m+w) with c_m the falling-factorial
sum of its coefficients.  Preservation of span{x^m : m in P} forces
c_m = 0 whenever m + w falls outside P, and the annihilator slice is cut
out by c_m = 0 for every m.  The image of all preserving operators inside
End(V) is assembled weight by weight; only weights in P - P can act
nontrivially.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    DifferentialOperator,
    Polynomial,
    exponents_upto,
    falling_factorial,
    op_apply,
)
from .linalg import SpanChecker, nullspace, rank_exact


def _normalize_points(points):
    if hasattr(points, "monomial_points"):
        if points.monomial_points is None:
            raise ValueError("subspace has no monomial structure")
        return list(points.monomial_points)
    return [tuple(int(c) for c in p) for p in points]


def _weight_terms(nvars, weight, order):
    return [a for a in exponents_upto(nvars, order)
            if all(ai + wi >= 0 for ai, wi in zip(a, weight))]


@dataclass(frozen=True)
class WeightSpace:
    weight: tuple
    order: int
    terms: tuple  # alpha exponents indexing the coefficients
    constraint_matrix: tuple  # rows over Q
    basis: tuple  # weight-homogeneous DifferentialOperators
    annihilator_dim: int

    @property
    def dimension(self):
        return len(self.basis)


def preserving_weight_space(points, weight, order):
    """Exact basis of the weight-w slice of the order-<=n operators
    preserving the monomial subspace on P, plus the annihilator dimension
    of the same slice."""
    points = _normalize_points(points)
    nvars = len(points[0])
    weight = tuple(int(w) for w in weight)
    if len(weight) != nvars:
        raise ValueError(f"weight has {len(weight)} entries, expected {nvars}")
    terms = _weight_terms(nvars, weight, order)
    point_set = set(points)
    preserve_rows = []
    all_rows = []
    for m in points:
        row = [Fraction(falling_factorial(m, a)) for a in terms]
        all_rows.append(row)
        target = tuple(mi + wi for mi, wi in zip(m, weight))
        if target not in point_set:
            preserve_rows.append(row)
    if terms:
        kernel = nullspace(preserve_rows, len(terms))
        ann = len(nullspace(all_rows, len(terms)))
    else:
        kernel, ann = [], 0
    ops = []
    for vec in kernel:
        op_terms = {}
        for a, c in zip(terms, vec):
            if c:
                beta = tuple(ai + wi for ai, wi in zip(a, weight))
                op_terms[(beta, a)] = c
        ops.append(DifferentialOperator(nvars, op_terms))
    return WeightSpace(
        weight=weight,
        order=order,
        terms=tuple(terms),
        constraint_matrix=tuple(tuple(r) for r in preserve_rows),
        basis=tuple(ops),
        annihilator_dim=ann,
    )


def annihilator_weight_dim(points, weight, order):
    """Dimension of the weight-w slice of the order-<=n annihilator."""
    return preserving_weight_space(points, weight, order).annihilator_dim


def weight_window(points):
    """All weights that can act nontrivially on the subspace: P - P."""
    points = _normalize_points(points)
    return sorted({tuple(a - b for a, b in zip(p, q))
                   for p, q in itertools.product(points, points)})


@dataclass(frozen=True)
class EndImage:
    dim: int
    matrices: tuple  # flattened dim*dim rational vectors, one per spanning operator
    rank: int
    by_weight: tuple  # ((weight, preserving dim, annihilator dim), ...)

    @property
    def full(self):
        return self.rank == self.dim * self.dim


def evaluation_image(V, order):
    """Span inside End(V) of all order-<=n operators preserving monomial V,
    computed weight by weight over P - P."""
    points = _normalize_points(V)
    nvars = len(points[0])
    index = {m: i for i, m in enumerate(points)}
    dim = len(points)
    flat = []
    by_weight = []
    for w in weight_window(points):
        space = preserving_weight_space(points, w, order)
        by_weight.append((w, space.dimension, space.annihilator_dim))
        for vec_op in space.basis:
            matrix = [[Fraction(0)] * dim for _ in range(dim)]
            for j, m in enumerate(points):
                target = tuple(mi + wi for mi, wi in zip(m, w))
                c = Fraction(0)
                for (beta, alpha), coeff in vec_op.items():
                    c += coeff * falling_factorial(m, alpha)
                if c:
                    matrix[index[target]][j] = c
            flat.append([e for row in matrix for e in row])
    rank = rank_exact(flat, dim * dim) if flat else 0
    return EndImage(dim=dim, matrices=tuple(map(tuple, flat)), rank=rank,
                    by_weight=tuple(by_weight))


def check_irreducible(V, order):
    """True iff the preserving operators of order <= n span all of End(V)."""
    image = evaluation_image(V, order)
    return image.rank == image.dim * image.dim


def evaluation_image_dense_rank(V, order):
    """Independent recomputation of the evaluation-image rank.

    Parametrizes every operator with |alpha| <= n and beta in the bounding
    box (P - P) + [0, n]^nvars, solves the preservation constraints in one
    dense system, and ranks the resulting matrices on the basis of V.
    """
    points = _normalize_points(V)
    nvars = len(points[0])
    dim = len(points)
    point_set = set(points)
    index = {m: i for i, m in enumerate(points)}
    alphas = exponents_upto(nvars, order)
    box = list(itertools.product(range(order + 1), repeat=nvars))
    betas = sorted({
        tuple(d + e for d, e in zip(diff, shift))
        for diff in weight_window(points)
        for shift in box
        if all(d + e >= 0 for d, e in zip(diff, shift))
    })
    columns = [(b, a) for b in betas for a in alphas]
    col_index = {key: i for i, key in enumerate(columns)}
    constraint = {}
    for m in points:
        for (b, a) in columns:
            f = falling_factorial(m, a)
            if not f:
                continue
            target = tuple(mi - ai + bi for mi, ai, bi in zip(m, a, b))
            if target in point_set:
                continue
            constraint.setdefault((m, target), [Fraction(0)] * len(columns))
            constraint[(m, target)][col_index[(b, a)]] += f
    kernel = nullspace(list(constraint.values()), len(columns))
    flat = []
    for vec in kernel:
        matrix = [[Fraction(0)] * dim for _ in range(dim)]
        nontrivial = False
        for (b, a), c in zip(columns, vec):
            if not c:
                continue
            for j, m in enumerate(points):
                f = falling_factorial(m, a)
                if not f:
                    continue
                target = tuple(mi - ai + bi for mi, ai, bi in zip(m, a, b))
                if target in point_set:
                    matrix[index[target]][j] += c * f
                    nontrivial = True
        if nontrivial:
            flat.append([e for row in matrix for e in row])
    return rank_exact(flat, dim * dim) if flat else 0


def preserving_operators_truncated(V, order, coeff_degree):
    """Operators of order <= `order` and coefficient degree <= `coeff_degree`
    preserving an arbitrary subspace V.

    Without a monomial basis there is no weight grading, so the coefficient
    degree must be truncated explicitly; the result is the full solution
    space of that finite slice, together with the rank of its image in
    End(V).  For monomial V and a large enough truncation this agrees with
    the weight-graded computation.
    """
    from .algebra import DifferentialOperator as Op

    nvars = V.nvars
    alphas = exponents_upto(nvars, order)
    betas = exponents_upto(nvars, coeff_degree)
    columns = [(b, a) for b in betas for a in alphas]

    images = {}
    universe = set()
    for j, p in enumerate(V.basis):
        for key in columns:
            image = op_apply(Op.term(key[0], key[1], 1, nvars), p)
            images[(j, key)] = image
            universe.update(image.support())
    universe.update(e for p in V.basis for e in p.support())
    universe = sorted(universe)
    col_of = {e: i for i, e in enumerate(universe)}

    basis_rows = []
    for p in V.basis:
        row = [Fraction(0)] * len(universe)
        for e, c in p.items():
            row[col_of[e]] = c
        basis_rows.append(row)
    checker = SpanChecker(basis_rows, len(universe))

    # constraints: for each basis element, the residual of its image off
    # span(V) must vanish coordinate by coordinate
    constraints = {}
    for (j, key), image in images.items():
        vec = [Fraction(0)] * len(universe)
        for e, c in image.items():
            vec[col_of[e]] = c
        residual = checker.residual(vec)
        k = columns.index(key)
        for coord, value in enumerate(residual):
            if value:
                row = constraints.setdefault((j, coord), [Fraction(0)] * len(columns))
                row[k] += value
    kernel = nullspace(list(constraints.values()), len(columns))

    ops = []
    for vec in kernel:
        terms = {key: c for key, c in zip(columns, vec) if c}
        ops.append(Op(nvars, terms))

    # image rank in End(V): write each preserved image in the basis of V
    from .linalg import rref

    _, pivots = rref(basis_rows, len(universe))
    flat = []
    for op in ops:
        matrix = []
        for p in V.basis:
            image = op_apply(op, p)
            vec = [Fraction(0)] * len(universe)
            for e, c in image.items():
                vec[col_of[e]] = c
            matrix.append(_coords_in_span(pivots, basis_rows, vec))
        flat.append([e for col in zip(*matrix) for e in col])
    rank = rank_exact(flat, V.dim ** 2) if flat else 0
    return ops, rank


def _coords_in_span(pivots, basis_rows, vector):
    """Coefficients expressing `vector` in the row basis (assumes membership).

    Projection onto the RREF pivot columns is injective on the row span, so
    it suffices to solve against those coordinates."""
    t = [vector[c] for c in pivots]
    u = [[row[c] for c in pivots] for row in basis_rows]
    return _solve_linear(u, t)


def _solve_linear(matrix_rows, rhs):
    """Solve s * M = rhs for s, with M square invertible (exact)."""
    n = len(matrix_rows)
    # transpose to ordinary column form: M^T s^T = rhs^T
    aug = [[Fraction(matrix_rows[j][i]) for j in range(n)] + [Fraction(rhs[i])]
           for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [e * inv for e in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# the worked generator families


def sl_generators(nvars, degree):
    """Order-<=1 generators preserving the full space of polynomials of
    total degree <= `degree` on affine n-space: every d_l, every x_k d_l,
    and -sum_i x_i x_k d_i + degree * x_k."""
    ops = []
    for l in range(nvars):
        ops.append(DifferentialOperator.partial(l, nvars))
    for k in range(nvars):
        xk = DifferentialOperator.multiplication(Polynomial.variable(k, nvars))
        for l in range(nvars):
            ops.append(xk * DifferentialOperator.partial(l, nvars))
    for k in range(nvars):
        xk_poly = Polynomial.variable(k, nvars)
        op = degree * DifferentialOperator.multiplication(xk_poly)
        for i in range(nvars):
            xi_xk = Polynomial.variable(i, nvars) * xk_poly
            op = op - DifferentialOperator.multiplication(xi_xk) * DifferentialOperator.partial(i, nvars)
        ops.append(op)
    return ops


def hirzebruch_generators(r, k, l):
    """The generator list for the operators preserving the Hirzebruch
    subspace span{x^i y^j : 0 <= i + rj <= k, 0 <= j <= l} (truncated case
    k - lr >= 0): d_x, x^j d_y (j = 0..r), x*pi, the composites
    d_x^j y (y d_y - l) pi (pi+1) ... (pi + r - j - 1) for j = 0..r, and the
    Euler operators x d_x, y d_y, with pi = x d_x + r y d_y - k.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if k - l * r < 0:
        raise ValueError(f"truncated case requires k - l*r >= 0, got {k - l * r}")
    nv = 2
    dx = DifferentialOperator.partial(0, nv)
    dy = DifferentialOperator.partial(1, nv)
    x = DifferentialOperator.multiplication(Polynomial.variable(0, nv))
    y = DifferentialOperator.multiplication(Polynomial.variable(1, nv))
    one = DifferentialOperator.identity(nv)
    x_dx = x * dx
    y_dy = y * dy
    pi = x_dx + r * y_dy - k * one
    nabla_y = y_dy - l * one

    ops = [dx]
    for j in range(r + 1):
        xj = one
        for _ in range(j):
            xj = xj * x
        ops.append(xj * dy)
    ops.append(x * pi)
    for j in range(r + 1):
        op = y * nabla_y
        for step in range(r - j):
            op = op * (pi + step * one)
        for _ in range(j):
            op = dx * op
        ops.append(op)
    ops.append(x_dx)
    ops.append(y_dy)
    return ops


# ---------------------------------------------------------------------------
# preservation checking for arbitrary operator lists


@dataclass(frozen=True)
class PreserveResult:
    operator: DifferentialOperator
    preserves: bool
    violating_index: int | None  # index into V.basis of the first violation

    def violator(self, V):
        return None if self.violating_index is None else V.basis[self.violating_index]


def operator_matrix(op, V):
    """Matrix of a V-preserving operator on the ordered basis of V
    (column j = coordinates of the image of basis element j)."""
    from .linalg import rref

    support = sorted({e for p in V.basis for e in p.support()})
    col_of = {e: i for i, e in enumerate(support)}
    basis_rows = []
    for p in V.basis:
        row = [Fraction(0)] * len(support)
        for e, c in p.items():
            row[col_of[e]] = c
        basis_rows.append(row)
    _, pivots = rref(basis_rows, len(support))
    matrix = [[Fraction(0)] * V.dim for _ in range(V.dim)]
    for j, p in enumerate(V.basis):
        image = op_apply(op, p)
        vec = [Fraction(0)] * len(support)
        for e, c in image.items():
            if e not in col_of:
                raise ValueError(f"operator does not preserve the subspace: {op}")
            vec[col_of[e]] = c
        for i, coeff in enumerate(_coords_in_span(pivots, basis_rows, vec)):
            matrix[i][j] = coeff
    return matrix


def preserve_check(ops, V):
    """Exact check that each operator maps span(V) into span(V); reports the
    first violating basis element otherwise."""
    support = sorted({e for p in V.basis for e in p.support()})
    col = {e: i for i, e in enumerate(support)}
    rows = []
    for p in V.basis:
        row = [Fraction(0)] * len(support)
        for e, c in p.items():
            row[col[e]] = c
        rows.append(row)
    checker = SpanChecker(rows, len(support))
    results = []
    for op in ops:
        if op.nvars != V.nvars:
            raise ValueError(f"operator in {op.nvars} variables applied to {V.nvars}-variable space")
        bad = None
        for i, p in enumerate(V.basis):
            image = op_apply(op, p)
            vec = [Fraction(0)] * len(support)
            outside = False
            for e, c in image.items():
                if e not in col:
                    outside = True
                    break
                vec[col[e]] = c
            if outside or not checker.contains(vec):
                bad = i
                break
        results.append(PreserveResult(op, bad is None, bad))
    return results


def all_preserve(ops, V):
    return all(res.preserves for res in preserve_check(ops, V))
