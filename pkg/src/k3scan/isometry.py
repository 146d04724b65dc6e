"""Isometry testing for small hyperbolic lattices.

Cheap invariants (rank, determinant, Smith invariant factors, signature)
decide most non-isometric pairs outright.  When the invariants agree, both
Gram matrices are first put through a greedy unimodular reduction that
shrinks the basis norms, then a backtracking search looks for a basis map:
candidate images of each basis vector are enumerated with the
square-and-degree machinery against a fixed positive vector of the target,
with the degree cap deepened iteratively.  The search is complete at the
scale of the built-in catalog (rank <= 5, small determinants); a None after
the invariants agree means no map was found within the search bound.
"""

from __future__ import annotations

import itertools
from math import isqrt

from . import linalg
from .enumeration import classes_with_square_and_degree
from .lattice import GramLattice, bilinear, signature, square
from .linalg import Matrix, Vector, canonical_key, sign_normalize

_DEGREE_CAPS = (8, 16, 32, 64)


def _greedy_reduce(gram) -> tuple[Matrix, Matrix]:
    """Unimodular T with small-normed T*gram*T^T, by steepest descent.

    Repeatedly applies the single move b_i <- b_i + s*b_j that most reduces
    (sum |G_ii|, sum |G_ij|); terminates because the cost is a strictly
    decreasing non-negative integer.
    """
    n = len(gram)
    g = [list(row) for row in gram]
    t = linalg.identity(n)

    def cost(m):
        diag = sum(abs(m[i][i]) for i in range(n))
        off = sum(abs(m[i][j]) for i in range(n) for j in range(n) if i != j)
        return (diag, off)

    current = cost(g)
    while True:
        best = None
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for s in (1, -1):
                    trial = [row[:] for row in g]
                    for k in range(n):
                        trial[i][k] += s * g[j][k]
                    for k in range(n):
                        trial[k][i] += s * trial[k][j]
                    c = cost(trial)
                    if c < current and (best is None or c < best[0]):
                        best = (c, i, j, s, trial)
        if best is None:
            break
        current, i, j, s, g = best[0], best[1], best[2], best[3], best[4]
        for k in range(n):
            t[i][k] += s * t[j][k]
    return linalg.freeze_matrix(g), linalg.freeze_matrix(t)


def _integer_inverse(t) -> Matrix:
    inv = linalg.inverse_rational(t)
    return tuple(tuple(int(x) for x in row) for row in inv)


def _small_positive_vector(lat: GramLattice) -> Vector:
    """Deterministic interior probe: a vector of positive square from a small box."""
    best = None
    for radius in range(1, 6):
        for coords in itertools.product(range(-radius, radius + 1), repeat=lat.rank):
            if all(abs(c) < radius for c in coords):
                continue  # only the new shell of the box
            sq = square(lat, coords)
            if sq > 0:
                key = (sq, canonical_key(coords))
                if best is None or key < best[0]:
                    best = (key, tuple(coords))
        if best is not None:
            return best[1]
    raise ValueError("no positive-square vector in a small box")


def _candidates(lat: GramLattice, h: Vector, norm: int, cap: int) -> list[Vector]:
    """All vectors of the given square with |H.v| <= cap, both orientations."""
    h2 = square(lat, h)
    if norm > 0:
        cap = max(cap, isqrt(h2 * norm) + 1)
    out = list(classes_with_square_and_degree(lat, h, norm, 0))
    for k in range(1, cap + 1):
        for v in classes_with_square_and_degree(lat, h, norm, k):
            out.append(v)
            out.append(tuple(-x for x in v))
    return out


def isometry_small(l1: GramLattice, l2: GramLattice) -> Matrix | None:
    """A unimodular basis map U with U^T G2 U == G1, or None.

    Columns of U are the images in l2 of the basis vectors of l1.
    """
    if l1.rank != l2.rank or l1.rank > 5:
        return None
    if l1.gram == l2.gram:
        return tuple(tuple(int(i == j) for j in range(l1.rank)) for i in range(l1.rank))
    if l1.det() != l2.det():
        return None
    if linalg.invariant_factors(l1.gram) != linalg.invariant_factors(l2.gram):
        return None
    if signature(l1) != signature(l2):
        return None
    g1r, t1 = _greedy_reduce(l1.gram)
    g2r, t2 = _greedy_reduce(l2.gram)
    l2r = GramLattice(rank=l2.rank, gram=g2r)
    h2 = _small_positive_vector(l2r)
    for cap in _DEGREE_CAPS:
        found = _search(g1r, l2r, h2, cap)
        if found is not None:
            # Map the solution back through both reductions.
            w = linalg.mat_mul(linalg.transpose(t2), found)
            u = linalg.mat_mul(w, linalg.transpose(_integer_inverse(t1)))
            check = linalg.mat_mul(linalg.transpose(u), linalg.mat_mul(l2.gram, u))
            assert check == l1.gram
            return u
    return None


def _search(g1, l2: GramLattice, h2: Vector, cap: int) -> Matrix | None:
    rho = len(g1)
    pools = {}
    for i in range(rho):
        norm = g1[i][i]
        if norm not in pools:
            pools[norm] = _candidates(l2, h2, norm, cap)
    images: list[Vector] = []

    def extend(i: int):
        if i == rho:
            return True
        for v in pools[g1[i][i]]:
            if i == 0 and sign_normalize(v) != v:
                continue  # composing with -1 makes the first image canonical
            if all(bilinear(l2, v, images[j]) == g1[i][j] for j in range(i)):
                images.append(v)
                if extend(i + 1):
                    return True
                images.pop()
        return False

    if not extend(0):
        return None
    u = tuple(tuple(images[j][i] for j in range(rho)) for i in range(rho))
    # The map is automatically unimodular: equal determinants force det(U)^2 = 1.
    check = linalg.mat_mul(linalg.transpose(u), linalg.mat_mul(l2.gram, u))
    assert check == g1
    return u
