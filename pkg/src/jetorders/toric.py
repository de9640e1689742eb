"""Lattice polytopes and the order invariants of their toric completions.

A monomial subspace with exponent set P lives on the projective toric
variety of the polytope conv(P).  This module computes, purely from the
lattice data: smoothness (the basis condition at every vertex), bounded
very-ampleness (semigroup saturation), edge lengths s(P), the maximal
collinear count d^g(P), the generic injectivity order via the Hilbert
function of the point set, per-orbit injectivity orders via the
translate/slice recursion, and the toric jet orders n_surj / n1_surj.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .algebra import exponents_upto
from .jets import (
    GENERIC,
    RANDOM_TRIALS,
    SYMBOLIC_THRESHOLD,
    SubspaceV,
    generic_rank,
    jet_matrix,
)
from .linalg import rank_exact


class DegeneratePolytopeError(ValueError):
    """The polytope is not full-dimensional in its ambient lattice."""


class BasisConditionError(ValueError):
    """An operation requiring the smooth (basis) condition got a non-smooth polytope."""


class NonSaturatedInputError(ValueError):
    """An explicit point list misses lattice points of its own convex hull."""


class UnsupportedPolytopeError(ValueError):
    """Hull enumeration supports lattice rank <= 3 only."""


# ---------------------------------------------------------------------------
# small integer-vector helpers


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _primitive(v):
    """(primitive direction, positive integer length) of a nonzero vector."""
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return tuple(x // g for x in v), g


def _cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _affine_dim(points):
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank_exact([list(_sub(p, base)) for p in points[1:]])


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class Edge:
    endpoints: tuple  # (vertex, vertex), lexicographically ordered
    direction: tuple  # primitive direction from endpoints[0] to endpoints[1]
    length: int


@dataclass(frozen=True)
class Face:
    dim: int
    points: tuple  # lattice points of the face
    vertices: tuple  # vertices of P lying on the face
    spanning_vertex: tuple  # a vertex of P on the face
    directions: tuple  # primitive edge directions at spanning_vertex inside the face

    def label(self):
        if self.dim == 0:
            return f"vertex {self.spanning_vertex}"
        kind = "edge" if self.dim == 1 else f"dim-{self.dim} face"
        return f"{kind} {tuple(sorted(self.vertices))}"


class LatticePolytope:
    def __init__(self, nvars, points, vertices, edges, faces, facets):
        self.nvars = nvars
        self.points = tuple(sorted(points))
        self.vertices = tuple(sorted(vertices))
        self.edges = tuple(edges)
        self.faces = tuple(faces)
        self.facets = tuple(facets)  # supporting data for cone computations

    @property
    def dim(self):
        return _affine_dim(self.points)

    def __repr__(self):
        return f"LatticePolytope(nvars={self.nvars}, points={len(self.points)}, vertices={len(self.vertices)})"

    def edges_at(self, vertex):
        out = []
        for e in self.edges:
            if vertex == e.endpoints[0]:
                out.append((e, e.direction))
            elif vertex == e.endpoints[1]:
                out.append((e, tuple(-d for d in e.direction)))
        return out

    def vertex_directions(self, vertex):
        """Primitive edge directions leaving `vertex`, sorted for determinism."""
        return tuple(sorted(d for _, d in self.edges_at(vertex)))

    def codim1_faces(self):
        target = self.dim - 1
        return [f for f in self.faces if f.dim == target]

    def subspace(self):
        return SubspaceV.from_monomials(self.nvars, self.points)


# ---------------------------------------------------------------------------
# hull construction (exact, rank <= 3)


def _hull_2d(points):
    """Monotone chain; returns hull vertices in counter-clockwise order."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facets_from_supporting_planes(points, spanners):
    """Supporting hyperplanes spanned by point triples (ambient dim 3).

    Returns a list of (inward_normal, offset, facet_points) with
    <n, p> >= c for every point and equality exactly on the facet.
    """
    facets = {}
    for tri in itertools.combinations(spanners, 3):
        n = _cross3(_sub(tri[1], tri[0]), _sub(tri[2], tri[0]))
        if n == (0, 0, 0):
            continue
        n, _ = _primitive(n)
        c = _dot(n, tri[0])
        values = [_dot(n, p) - c for p in points]
        if all(v >= 0 for v in values):
            pass
        elif all(v <= 0 for v in values):
            n = tuple(-x for x in n)
            c = -c
            values = [-v for v in values]
        else:
            continue
        if (n, c) in facets:
            continue
        face_pts = tuple(sorted(p for p, v in zip(points, values) if v == 0))
        if _affine_dim(face_pts) == 2:
            facets[(n, c)] = face_pts
    return [(n, c, pts) for (n, c), pts in sorted(facets.items())]


def _segment_lattice_points(a, b):
    d, length = _primitive(_sub(b, a))
    return [tuple(x + t * y for x, y in zip(a, d)) for t in range(length + 1)]


def _enumerate_hull_points(vertices, inside):
    lo = [min(v[i] for v in vertices) for i in range(len(vertices[0]))]
    hi = [max(v[i] for v in vertices) for i in range(len(vertices[0]))]
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return [p for p in itertools.product(*ranges) if inside(p)]


def polytope_build(points=None, vertices=None, edges=None):
    """Build a LatticePolytope from a full point list and/or a vertex list.

    With only vertices, all lattice points of the hull are enumerated
    (lattice rank <= 3).  An explicit point list must contain every lattice
    point of its own convex hull; missing points are an error, never
    silently filled in.  Above lattice rank 3 hull enumeration is not
    attempted: points, vertices and edges (as endpoint pairs) must all be
    supplied explicitly.
    """
    if points is None and vertices is None:
        raise ValueError("need points or vertices")
    raw = [tuple(int(c) for c in p) for p in (points if points is not None else vertices)]
    if not raw:
        raise ValueError("empty polytope description")
    nvars = len(raw[0])
    if any(len(p) != nvars for p in raw):
        raise ValueError("inconsistent point dimensions")
    if any(c < 0 for p in raw for c in p):
        raise ValueError("lattice points must have non-negative coordinates (monomial exponents)")
    if points is not None and len(set(raw)) != len(raw):
        raise ValueError("duplicate lattice point")
    given_points = [tuple(p) for p in points] if points is not None else None
    given_vertices = [tuple(int(c) for c in v) for v in vertices] if vertices is not None else None

    seed_pts = sorted(set(given_points if given_points is not None else given_vertices))
    adim = _affine_dim(seed_pts)

    if adim == nvars and nvars > 3:
        return _polytope_from_explicit_data(nvars, given_points, given_vertices, edges)

    if adim == 0:
        vert = [seed_pts[0]]
        all_points = list(vert)
        edges, facets = [], []
    elif adim == 1:
        ends = _extremes_on_line(seed_pts)
        vert = sorted(ends)
        all_points = _segment_lattice_points(vert[0], vert[1])
        d, length = _primitive(_sub(vert[1], vert[0]))
        edges = [Edge((vert[0], vert[1]), d, length)]
        facets = []
    elif adim == nvars and nvars == 2:
        hull = _hull_2d(seed_pts)
        vert = hull

        def inside(p):
            k = len(hull)
            for i in range(k):
                a, b = hull[i], hull[(i + 1) % k]
                cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
                if cr < 0:
                    return False
            return True

        all_points = _enumerate_hull_points(hull, inside)
        edges = []
        k = len(hull)
        for i in range(k):
            a, b = hull[i], hull[(i + 1) % k]
            lo, hi = sorted((a, b))
            d, length = _primitive(_sub(hi, lo))
            edges.append(Edge((lo, hi), d, length))
        facets = []
    elif adim == nvars and nvars == 3:
        spanners = sorted(set(given_vertices)) if given_vertices is not None else seed_pts
        facet_data = _facets_from_supporting_planes(seed_pts, spanners)
        if not facet_data:
            raise UnsupportedPolytopeError("could not enumerate facets")

        def inside(p):
            return all(_dot(n, p) >= c for n, c, _ in facet_data)

        all_points = _enumerate_hull_points(seed_pts, inside)
        vert = []
        for p in seed_pts:
            normals = [n for n, c, _ in facet_data if _dot(n, p) == c]
            if len(normals) >= 3 and rank_exact([list(n) for n in normals]) == 3:
                vert.append(p)
        vert = sorted(vert)
        edge_set = {}
        for (n1, c1, pts1), (n2, c2, pts2) in itertools.combinations(facet_data, 2):
            common = sorted(set(pts1) & set(pts2))
            if len(common) >= 2 and _affine_dim(common) == 1:
                ends = _extremes_on_line(common)
                lo, hi = sorted(ends)
                d, length = _primitive(_sub(hi, lo))
                edge_set[(lo, hi)] = Edge((lo, hi), d, length)
        edges = [edge_set[k] for k in sorted(edge_set)]
        facets = facet_data
    else:
        raise UnsupportedPolytopeError(
            f"polytope of affine dimension {adim} in rank-{nvars} lattice is not supported"
        )

    all_points = sorted(set(all_points))
    if given_points is not None and sorted(set(given_points)) != all_points:
        missing = sorted(set(all_points) - set(given_points))
        raise NonSaturatedInputError(
            f"convex hull contains lattice points missing from the input: {missing}"
        )
    if given_vertices is not None and given_points is not None:
        if sorted(set(given_vertices)) != sorted(vert):
            raise ValueError("supplied vertices are not the extreme points of the point set")

    if adim == nvars and nvars == 3:
        # facet lattice points against the full point list
        facets = [(n, c, tuple(sorted(p for p in all_points if _dot(n, p) == c)))
                  for n, c, _ in facets]

    poly = LatticePolytope(nvars, all_points, vert, edges, (), facets)
    faces = _build_faces(poly, adim)
    return LatticePolytope(nvars, all_points, vert, edges, faces, poly.facets)


def _polytope_from_explicit_data(nvars, points, vertices, edge_pairs):
    """Lattice rank > 3: no hull enumeration; trust the supplied data.

    Edge records are derived from the endpoint pairs; facet (codimension 1)
    data is not representable, so the orbit operations that need it reject
    these polytopes.
    """
    if points is None or vertices is None or edge_pairs is None:
        raise UnsupportedPolytopeError(
            "lattice rank > 3 needs explicit points, vertices and edges"
        )
    points = sorted(set(points))
    vertices = sorted(set(tuple(v) for v in vertices))
    point_set = set(points)
    if not set(vertices) <= point_set:
        raise ValueError("vertices must be listed among the points")
    edges = []
    for a, b in edge_pairs:
        a, b = tuple(int(c) for c in a), tuple(int(c) for c in b)
        if a not in set(vertices) or b not in set(vertices):
            raise ValueError(f"edge endpoint not a vertex: {(a, b)}")
        lo, hi = sorted((a, b))
        d, length = _primitive(_sub(hi, lo))
        if any(p not in point_set for p in _segment_lattice_points(lo, hi)):
            raise NonSaturatedInputError(f"edge {(lo, hi)} passes through missing lattice points")
        edges.append(Edge((lo, hi), d, length))
    edges.sort(key=lambda e: e.endpoints)
    poly = LatticePolytope(nvars, points, vertices, edges, (), ())
    faces = [_face_record(poly, nvars, poly.points)]
    faces += [_face_record(poly, 1, _segment_lattice_points(*e.endpoints)) for e in edges]
    faces += [Face(0, (v,), (v,), v, ()) for v in vertices]
    return LatticePolytope(nvars, points, vertices, edges, faces, ())


def _extremes_on_line(collinear_points):
    base = collinear_points[0]
    ref = next(p for p in collinear_points if p != base)
    d, _ = _primitive(_sub(ref, base))
    keyed = sorted(collinear_points, key=lambda p: _dot(_sub(p, base), d))
    return keyed[0], keyed[-1]


def _face_record(poly, dim, face_points):
    face_points = tuple(sorted(face_points))
    vertices = tuple(sorted(set(face_points) & set(poly.vertices)))
    spanning = vertices[0]
    span = [list(_sub(p, spanning)) for p in face_points]
    dirs = []
    for _, d in poly.edges_at(spanning):
        if rank_exact(span + [list(d)]) == dim:
            dirs.append(d)
    return Face(dim, face_points, vertices, spanning, tuple(sorted(dirs)))


def _build_faces(poly, adim):
    faces = []
    if adim >= 1:
        faces.append(_face_record(poly, adim, poly.points))
    if adim >= 3:
        for n, c, pts in poly.facets:
            faces.append(_face_record(poly, 2, pts))
    if adim >= 2:
        for e in poly.edges:
            faces.append(_face_record(poly, 1, _segment_lattice_points(*e.endpoints)))
    for v in poly.vertices:
        faces.append(Face(0, (v,), (v,), v, ()))
    return faces


# ---------------------------------------------------------------------------
# smoothness, very ampleness, edge statistics


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    diagnostics: tuple  # (vertex, edge_count, |det| or None)

    def __bool__(self):
        return self.smooth

    def failing_vertices(self):
        return [v for v, k, d in self.diagnostics if k != len(v) or d != 1]


def smooth_check(P):
    """Basis condition: every vertex has exactly n edges whose primitive
    directions form a determinant +-1 lattice basis."""
    if P.dim != P.nvars:
        raise DegeneratePolytopeError(
            f"polytope has affine dimension {P.dim} < lattice rank {P.nvars}"
        )
    diags = []
    ok = True
    for v in P.vertices:
        dirs = P.vertex_directions(v)
        if len(dirs) != P.nvars:
            diags.append((v, len(dirs), None))
            ok = False
            continue
        det = abs(_det_int_matrix([list(d) for d in dirs]))
        diags.append((v, len(dirs), det))
        if det != 1:
            ok = False
    return SmoothnessReport(ok, tuple(diags))


def _det_int_matrix(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det_int_matrix(minor)
        total += term if j % 2 == 0 else -term
    return total


def _require_smooth(P):
    report = smooth_check(P)
    if not report.smooth:
        raise BasisConditionError(
            f"basis condition fails at vertex {report.failing_vertices()[0]}"
        )
    return report


def _vertex_cone_normals(P, vertex):
    """Inward normals of the tangent cone of P at a vertex."""
    if P.nvars == 1:
        dirs = [d for _, d in P.edges_at(vertex)]
        return [dirs[0]]
    if P.nvars == 2:
        hull = _hull_2d(P.vertices)
        k = len(hull)
        i = hull.index(vertex)
        normals = []
        for a, b in ((hull[i - 1], vertex), (vertex, hull[(i + 1) % k])):
            d = _sub(b, a)
            normals.append(_primitive((-d[1], d[0]))[0])
        return normals
    return [n for n, c, pts in P.facets if vertex in pts]


def very_ample_check(P, search_bound=10, use_smooth_shortcut=True):
    """Bounded saturation test of the vertex semigroups.

    Smooth polytopes short-circuit to True (each vertex semigroup is
    generated by a lattice basis).  Otherwise every lattice point of the
    tangent cone within the coordinate box of side `search_bound` must be
    reachable as a sum of generators {p - vertex}.
    """
    if P.dim != P.nvars:
        raise DegeneratePolytopeError("very-ampleness test needs a full-dimensional polytope")
    if use_smooth_shortcut and smooth_check(P).smooth:
        return True
    if P.nvars > 3 or (P.nvars == 3 and not P.facets):
        raise UnsupportedPolytopeError(
            "saturation scan needs facet data (lattice rank <= 3)"
        )
    for v in P.vertices:
        gens = [g for g in (_sub(p, v) for p in P.points) if any(g)]
        normals = _vertex_cone_normals(P, v)
        box = itertools.product(*[range(-search_bound, search_bound + 1)] * P.nvars)
        targets = {z for z in box if all(_dot(n, z) >= 0 for n in normals)}

        def level(z):
            return sum(_dot(n, z) for n in normals)

        max_level = max((level(z) for z in targets), default=0)
        reached = {(0,) * P.nvars}
        frontier = [(0,) * P.nvars]
        while frontier:
            nxt = []
            for z in frontier:
                for g in gens:
                    w = _add(z, g)
                    if w not in reached and level(w) <= max_level:
                        reached.add(w)
                        nxt.append(w)
            frontier = nxt
        if not targets <= reached:
            return False
    return True


@dataclass(frozen=True)
class EdgeStats:
    lengths: tuple  # (edge, length) pairs
    s: int  # minimal edge length s(P)


def edge_stats(P):
    if not P.edges:
        raise DegeneratePolytopeError("polytope has no edges")
    lengths = tuple((e, e.length) for e in P.edges)
    return EdgeStats(lengths, min(l for _, l in lengths))


def d_gonal(P):
    """Maximum number of collinear lattice points of P."""
    pts = P.points if isinstance(P, LatticePolytope) else tuple(sorted(set(map(tuple, P))))
    if len(pts) <= 1:
        return len(pts)
    best = 1
    seen = set()
    for a, b in itertools.combinations(pts, 2):
        d, _ = _primitive(_sub(b, a))
        anchor = min(_line_anchor(a, d), _line_anchor(b, d))
        key = (d, anchor)
        if key in seen:
            continue
        seen.add(key)
        count = sum(1 for p in pts if _collinear(a, d, p))
        best = max(best, count)
    return best


def _line_anchor(p, d):
    # canonical representative of the line through p with direction d
    t = None
    for pi, di in zip(p, d):
        if di:
            t = Fraction(pi, di)
            break
    return tuple(pi - t * di for pi, di in zip(p, d))


def _collinear(a, d, p):
    v = _sub(p, a)
    if not any(v):
        return True
    pv, _ = _primitive(v)
    return pv == d or pv == tuple(-x for x in d)


# ---------------------------------------------------------------------------
# Hilbert-function computation of the generic injectivity order


def lattice_coordinates(points):
    """Re-express a point set in a basis of the sublattice its differences
    generate.  Returns the list of coordinate tuples (rank r <= nvars)."""
    points = [tuple(p) for p in points]
    base = points[0]
    diffs = [list(_sub(p, base)) for p in points[1:] if p != base]
    basis = _lattice_row_basis(diffs)
    if not basis:
        return [() for _ in points]
    coords = []
    for p in points:
        coords.append(tuple(_solve_in_lattice_basis(basis, _sub(p, base))))
    return coords


def _lattice_row_basis(rows):
    """Row echelon basis (over Z) of the lattice generated by the rows."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    basis = []
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c]]
            if not nz:
                break
            if len(nz) == 1:
                i = nz[0]
                break
            nz.sort(key=lambda i: abs(m[i][c]))
            i, j = nz[0], nz[1]
            q = m[j][c] // m[i][c]
            m[j] = [a - q * b for a, b in zip(m[j], m[i])]
            if not any(m[j]):
                m.pop(j)
        nz = [i for i in range(r, len(m)) if m[i][c]]
        if not nz:
            continue
        i = nz[0]
        m[r], m[i] = m[i], m[r]
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        r += 1
        if r == len(m):
            break
    return m[:r]


def _solve_in_lattice_basis(basis, vector):
    """Coordinates of `vector` in an echelon lattice basis (exact)."""
    v = list(vector)
    coords = [0] * len(basis)
    for i, row in enumerate(basis):
        lead = next(j for j, x in enumerate(row) if x)
        if v[lead] % row[lead]:
            raise ValueError("vector not in the lattice spanned by the basis")
        q = v[lead] // row[lead]
        coords[i] = q
        v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        raise ValueError("vector not in the lattice spanned by the basis")
    return coords


@dataclass(frozen=True)
class HilbertResult:
    order: int
    profile: tuple  # rank W^0 < rank W^1 < ... = |P|

    def __int__(self):
        return self.order


def n_inj_hilbert(points):
    """Generic injectivity order of the monomial subspace on exponent set P.

    rank W^l is the rank of the evaluation matrix with rows p in P and
    columns the monomials of degree <= l, entry p^alpha; the order is the
    least l reaching |P|.  Points are first re-expressed in the sublattice
    they generate.
    """
    pts = [tuple(p) for p in (points.points if isinstance(points, LatticePolytope) else points)]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    coords = lattice_coordinates(pts)
    npts = len(pts)
    if npts == 1:
        return HilbertResult(0, (1,))
    rank = len(coords[0])
    profile = []
    l = 0
    while True:
        cols = exponents_upto(rank, l)
        rows = [[_int_power(q, a) for a in cols] for q in coords]
        r = rank_exact(rows, len(cols))
        if profile and r <= profile[-1] and r < npts:
            raise RuntimeError("Hilbert rank profile failed to increase")
        profile.append(r)
        if r == npts:
            return HilbertResult(l, tuple(profile))
        l += 1


def _int_power(q, alpha):
    out = 1
    for base, e in zip(q, alpha):
        if e:
            out *= base ** e
    return out


# ---------------------------------------------------------------------------
# per-orbit injectivity orders (translate/slice recursion)


def _integer_inverse_unimodular(cols):
    """Inverse of a unimodular integer matrix given by columns."""
    n = len(cols)
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    det = _det_int_matrix(rows)
    if det not in (1, -1):
        raise ValueError("matrix is not unimodular")
    inv = []
    for i in range(n):
        inv_row = []
        for j in range(n):
            minor = [r[:i] + r[i + 1:] for k, r in enumerate(rows) if k != j]
            cof = _det_int_matrix(minor) if minor else 1
            if (i + j) % 2:
                cof = -cof
            inv_row.append(cof * det)  # det is +-1 so this is division by det
        inv.append(inv_row)
    return inv


def vertex_chart(P, vertex, directions=None):
    """Coordinates of P - vertex in the basis at the vertex.

    Returns (chart point list aligned with P.points, direction tuple).
    Only valid under the basis condition."""
    if directions is None:
        directions = P.vertex_directions(vertex)
    if len(directions) != P.nvars:
        raise BasisConditionError(f"vertex {vertex} does not have {P.nvars} edges")
    inv = _integer_inverse_unimodular(list(directions))
    chart = []
    for p in P.points:
        dp = _sub(p, vertex)
        c = tuple(_dot(row, dp) for row in inv)
        if any(x < 0 for x in c):
            raise BasisConditionError(
                f"point {p} has negative coordinates in the basis at {vertex}"
            )
        chart.append(c)
    return chart, tuple(directions)


def chart_subspace(P, vertex, directions=None):
    chart, _ = vertex_chart(P, vertex, directions)
    return SubspaceV.from_monomials(P.nvars, chart)


def n_inj_face(P, face):
    """Injectivity order along the orbit of a face: the maximum over all
    translates H of the face's affine lattice of N_inj(H cap P) + d_H."""
    _require_smooth(P)
    if face not in P.faces:
        face = _find_face(P, face)
    vertex = face.spanning_vertex
    dirs = P.vertex_directions(vertex)
    chart, _ = vertex_chart(P, vertex, dirs)
    tangent = [i for i, d in enumerate(dirs) if d in face.directions]
    transverse = [i for i in range(P.nvars) if i not in tangent]
    slices = {}
    for c in chart:
        key = tuple(c[i] for i in transverse)
        slices.setdefault(key, []).append(tuple(c[i] for i in tangent))
    best = 0
    for key, slice_pts in slices.items():
        distance = sum(key)
        if slice_pts and slice_pts[0] == ():
            inner = 0
        else:
            inner = n_inj_hilbert(slice_pts).order
        best = max(best, inner + distance)
    return best


def _find_face(P, face_like):
    pts = tuple(sorted(tuple(p) for p in face_like))
    for f in P.faces:
        if f.points == pts or f.vertices == pts:
            return f
    raise ValueError(f"no face with points {pts}")


def n_inj_vertex_formula(P, vertex):
    """Prop-style vertex value: max coordinate sum of other vertices in the
    basis at the vertex."""
    _require_smooth(P)
    dirs = P.vertex_directions(vertex)
    inv = _integer_inverse_unimodular(list(dirs))
    best = 0
    for m in P.vertices:
        dp = _sub(m, vertex)
        best = max(best, sum(_dot(row, dp) for row in inv))
    return best


def n_inj_max(P):
    """Supremum of the injectivity order over the toric variety: the maximal
    lattice length between vertices, each measured in the basis at the
    source vertex.  Cross-checked against the translate recursion over all
    faces."""
    _require_smooth(P)
    by_vertex = max(n_inj_vertex_formula(P, v) for v in P.vertices)
    by_faces = max(n_inj_face(P, f) for f in P.faces)
    if by_vertex != by_faces:
        raise RuntimeError(
            f"vertex formula ({by_vertex}) and face recursion ({by_faces}) disagree"
        )
    return by_vertex


def n_surj_toric(P):
    """Toric jet order: the minimal edge length s(P) (smooth case)."""
    _require_smooth(P)
    return edge_stats(P).s


def n1_surj_by_face(P, seed=0, trials=RANDOM_TRIALS, symbolic_threshold=SYMBOLIC_THRESHOLD):
    """Surjectivity order at the generic point of each codimension-1 orbit."""
    _require_smooth(P)
    faces = P.codim1_faces()
    if not faces:
        raise UnsupportedPolytopeError(
            "codimension-1 face data is only available for lattice rank <= 3"
        )
    return {
        face: _face_generic_n_surj(P, face, seed, trials, symbolic_threshold)
        for face in faces
    }


def n1_surj_toric(P, seed=0, trials=RANDOM_TRIALS, symbolic_threshold=SYMBOLIC_THRESHOLD):
    """Largest n with the order-<=n Taylor maps surjective in codimension 1:
    the minimum over codimension-1 faces of the surjectivity order at the
    generic point of the face's orbit.

    In the chart at a vertex of the face the orbit is `transverse
    coordinate 0, tangent coordinates free`; the rank over the function
    field of the orbit is computed from the transverse-substituted symbolic
    jet matrix (scaling reduction / symbolic elimination / seeded random
    tangent evaluations, in that order of preference).
    """
    return min(n1_surj_by_face(P, seed, trials, symbolic_threshold).values())


def _face_generic_n_surj(P, face, seed, trials, symbolic_threshold):
    vertex = face.spanning_vertex
    dirs = P.vertex_directions(vertex)
    chart, _ = vertex_chart(P, vertex, dirs)
    V = SubspaceV.from_monomials(P.nvars, chart)
    tangent = [i for i, d in enumerate(dirs) if d in face.directions]
    transverse = [i for i in range(P.nvars) if i not in tangent]
    n = 0
    last_good = -1
    while True:
        J = jet_matrix(V, n, GENERIC)
        rows = []
        for row in J.entries:
            new_row = []
            for p in row:
                for t in transverse:
                    p = p.substitute_zero(t)
                new_row.append(p)
            rows.append(new_row)
        need = comb(n + P.nvars, P.nvars)
        res = generic_rank(rows, seed=seed, symbolic_threshold=symbolic_threshold, trials=trials)
        if res.value == need:
            last_good = n
            n += 1
        else:
            return last_good


# ---------------------------------------------------------------------------
# assembled report


@dataclass(frozen=True)
class ToricReport:
    smooth: bool
    very_ample: bool
    s: int | None
    d_gonal: int
    n_inj_generic: int
    hilbert_profile: tuple
    n_inj_by_face: tuple  # ((face label, value), ...) sorted
    n_inj_max: int | None
    n_surj: int | None
    n1_surj: int | None
    vertex_orders: tuple  # ((vertex, value), ...) by the vertex formula

    def to_dict(self):
        return {
            "smooth": self.smooth,
            "very_ample": self.very_ample,
            "s": self.s,
            "d_gonal": self.d_gonal,
            "n_inj_generic": self.n_inj_generic,
            "hilbert_profile": list(self.hilbert_profile),
            "n_inj_by_face": [[label, value] for label, value in self.n_inj_by_face],
            "n_inj_max": self.n_inj_max,
            "n_surj": self.n_surj,
            "n1_surj": self.n1_surj,
            "vertex_orders": [[str(v), value] for v, value in self.vertex_orders],
        }


def toric_report(P, seed=0, with_orders=True, very_ample_bound=10):
    """Full invariant report; orbit orders require the basis condition."""
    smooth = smooth_check(P) if P.dim == P.nvars else SmoothnessReport(False, ())
    hilbert = n_inj_hilbert(P.points)
    va = very_ample_check(P, very_ample_bound) if P.dim == P.nvars else False
    s = edge_stats(P).s if P.edges else None
    if with_orders:
        _require_smooth(P)
        faces = tuple(sorted((f.label(), n_inj_face(P, f)) for f in P.faces))
        nmax = n_inj_max(P)
        ns = n_surj_toric(P)
        try:
            n1 = n1_surj_toric(P, seed=seed)
        except UnsupportedPolytopeError:
            n1 = None  # explicit-data polytopes above rank 3 carry no facet data
        vertex_orders = tuple((v, n_inj_vertex_formula(P, v)) for v in P.vertices)
    else:
        faces, nmax, ns, n1, vertex_orders = (), None, None, None, ()
    return ToricReport(
        smooth=bool(smooth),
        very_ample=va,
        s=s,
        d_gonal=d_gonal(P),
        n_inj_generic=hilbert.order,
        hilbert_profile=hilbert.profile,
        n_inj_by_face=faces,
        n_inj_max=nmax,
        n_surj=ns,
        n1_surj=n1,
        vertex_orders=vertex_orders,
    )
