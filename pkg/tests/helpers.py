"""Shared generators for randomized test cases (all explicitly seeded)."""

from fractions import Fraction

from jetorders.algebra import Polynomial, exponents_upto
from jetorders.jets import DependentBasisError, SubspaceV
from jetorders.toric import polytope_build
from jetorders.verify import hirzebruch_points


def rational_point(rng, nvars, nonzero=True):
    pt = []
    for _ in range(nvars):
        num = rng.randint(1, 60) if nonzero else rng.randint(0, 60)
        pt.append(Fraction(num * rng.choice((-1, 1)), rng.randint(1, 9)))
    return tuple(pt)


def random_monomial_subspace(rng, nvars=None, max_size=6, box=4):
    nvars = nvars or rng.choice((1, 2))
    size = rng.randint(2, max_size)
    universe = exponents_upto(nvars, box)
    universe = [e for e in universe if all(x <= box for x in e)]
    points = rng.sample(universe, min(size, len(universe)))
    return SubspaceV.from_monomials(nvars, sorted(points))


def random_polynomial(rng, nvars, degree):
    terms = {}
    for e in exponents_upto(nvars, degree):
        if rng.random() < 0.4:
            terms[e] = Fraction(rng.randint(-5, 5))
    if not terms:
        terms[(0,) * nvars] = Fraction(1)
    return Polynomial(nvars, terms)


def random_subspace(rng, nvars=None, max_dim=5, degree=4):
    """Random subspace, roughly half monomial and half dense bases."""
    nvars = nvars or rng.choice((1, 2))
    if rng.random() < 0.5:
        return random_monomial_subspace(rng, nvars=nvars, max_size=max_dim, box=degree)
    dim = rng.randint(2, max_dim)
    for _ in range(40):
        basis = [random_polynomial(rng, nvars, degree) for _ in range(dim)]
        try:
            return SubspaceV(nvars, basis)
        except (DependentBasisError, ValueError):
            continue
    raise RuntimeError("could not draw an independent basis")


def random_smooth_polytope(rng):
    """Draw from families known to satisfy the basis condition."""
    kind = rng.choice(("segment", "rectangle", "simplex2", "hirzebruch", "box3"))
    if kind == "segment":
        m = rng.randint(1, 6)
        return polytope_build(points=[(i,) for i in range(m + 1)])
    if kind == "rectangle":
        a, b = rng.randint(1, 4), rng.randint(1, 4)
        return polytope_build(points=[(i, j) for i in range(a + 1) for j in range(b + 1)])
    if kind == "simplex2":
        m = rng.randint(1, 4)
        return polytope_build(points=[(i, j) for i in range(m + 1) for j in range(m + 1 - i)])
    if kind == "hirzebruch":
        # k > lr keeps all four vertices unimodular; k = lr collapses the top
        # edge to a singular triangle for r >= 2
        r = rng.randint(1, 3)
        l = rng.randint(1, 2)
        k = l * r + rng.randint(1, 3)
        return polytope_build(points=hirzebruch_points(r, k, l))
    a, b, c = (rng.randint(1, 2) for _ in range(3))
    return polytope_build(
        points=[(i, j, k) for i in range(a + 1) for j in range(b + 1) for k in range(c + 1)]
    )


def random_point_set(rng, nvars=2, box=4, max_size=8, min_size=2):
    universe = [e for e in exponents_upto(nvars, box * nvars) if all(x <= box for x in e)]
    size = rng.randint(min_size, min(max_size, len(universe)))
    return sorted(rng.sample(universe, size))
