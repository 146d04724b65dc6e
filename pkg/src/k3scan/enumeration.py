"""Exact enumeration of lattice vectors with prescribed square and degree.

Two layers:

* `vectors_of_norm` enumerates all vectors of a given (non-positive) square in
  a negative definite lattice, by branch and bound on an exact rational
  Cholesky decomposition of the positive definite opposite form.

* `classes_with_square_and_degree` finds every class D with D^2 = d and
  H.D = k for an ample H, by projecting to the orthogonal complement of H,
  enumerating there, and lifting back, discarding non-integral lifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .lattice import GramLattice, bilinear, square
from .linalg import Vector, canonical_key


@dataclass
class EnumerationStats:
    """Debug counters; pass one in to observe the lifting step."""

    lifts_tried: int = 0
    lifts_discarded: int = 0


def _cholesky(q):
    """Decompose a positive definite rational matrix as sum d_i (x_i + sum u_ij x_j)^2.

    Returns (d, u) with d a list of positive Fractions and u strictly upper
    triangular.  Raises ValueError when the form is not positive definite.
    """
    n = len(q)
    a = [[Fraction(q[i][j]) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / d[i]
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= d[i] * u[i][k] * u[i][l]
    return d, u


def _scaled_form(q):
    """Integer branch-and-bound data for a positive definite rational form.

    Rewrites scale*Q(x) = sum_i t_i * (m_i*x_i + sum_{j>i} n_ij*x_j)^2 with all
    of t_i, m_i, n_ij integers, so the enumeration runs on plain ints.
    """
    d, u = _cholesky(q)
    n = len(d)
    mults = []
    nums = []
    for i in range(n):
        m = 1
        for j in range(i + 1, n):
            m = m * u[i][j].denominator // _gcd(m, u[i][j].denominator)
        mults.append(m)
        nums.append([int(u[i][j] * m) for j in range(n)])
    scale = 1
    for i in range(n):
        piece = d[i].denominator * mults[i] * mults[i]
        scale = scale * piece // _gcd(scale, piece)
    t = [int(d[i] * scale) // (mults[i] * mults[i]) for i in range(n)]
    return n, t, mults, nums, scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _isqrt(v: int) -> int:
    from math import isqrt

    return isqrt(v)


def _enumerate_equal(form, m: int):
    """All integer x with Q(x) == m, for the scaled form data and integer m >= 0."""
    n, t, mults, nums, scale = form
    if n == 0:
        return [()] if m == 0 else []
    out = []
    x = [0] * n

    def recurse(level: int, remaining: int):
        ti = t[level]
        mi = mults[level]
        row = nums[level]
        c = sum(row[j] * x[j] for j in range(level + 1, n))
        s = _isqrt(remaining // ti)
        lo = -((s + c) // mi)
        hi = (s - c) // mi
        if level == 0:
            for xi in range(lo, hi + 1):
                y = mi * xi + c
                if ti * y * y == remaining:
                    x[0] = xi
                    out.append(tuple(x))
            x[0] = 0
            return
        for xi in range(lo, hi + 1):
            y = mi * xi + c
            term = ti * y * y
            if term <= remaining:
                x[level] = xi
                recurse(level - 1, remaining - term)
        x[level] = 0

    recurse(n - 1, m * scale)
    return out


def _check_negative_definite(gram) -> None:
    n = len(gram)
    if not linalg.is_symmetric(gram):
        raise ValueError("Gram matrix must be symmetric")
    try:
        _cholesky([[-gram[i][j] for j in range(n)] for i in range(n)])
    except ValueError:
        raise ValueError("form is not negative definite") from None


def vectors_of_norm(neg_def_gram, n: int) -> list[Vector]:
    """Complete list of vectors v with v^T G v == n in a negative definite lattice.

    The list is duplicate-free, closed under negation and canonically ordered.
    n = 0 admits only the zero vector, which is excluded from the output.
    """
    gram = linalg.freeze_matrix(neg_def_gram)
    _check_negative_definite(gram)
    if n > 0:
        raise ValueError("a negative definite form takes no positive values")
    if n == 0:
        return []
    size = len(gram)
    form = _scaled_form([[-gram[i][j] for j in range(size)] for i in range(size)])
    sols = _enumerate_equal(form, -n)
    return sorted(sols, key=canonical_key)


@lru_cache(maxsize=None)
def _orthogonal_complement(lat: GramLattice, h: Vector):
    """Saturated basis of h^perp and the scaled form data of the opposite form."""
    w = linalg.mat_vec(lat.gram, h)
    kernel = linalg.integer_kernel_basis((w,))
    basis = tuple(kernel)  # columns: each a lattice vector orthogonal to h
    size = len(basis)
    k = [[sum(basis[a][i] * lat.gram[i][j] * basis[b][j]
              for i in range(lat.rank) for j in range(lat.rank))
          for b in range(size)] for a in range(size)]
    form = _scaled_form([[-k[i][j] for j in range(size)] for i in range(size)])
    return basis, form


def classes_with_square_and_degree(
    lat: GramLattice,
    h,
    d: int,
    k: int,
    stats: EnumerationStats | None = None,
) -> list[Vector]:
    """All classes D with D^2 = d and H.D = k, for H of positive square.

    Projects by D -> (H^2) D - (D.H) H into the negative definite complement
    of H, enumerates solutions of the projected norm there, and lifts back by
    s -> (s + k H)/H^2, discarding lifts outside the integral lattice.
    """
    h = lat.check_vector(h)
    h2 = square(lat, h)
    if h2 <= 0:
        raise ValueError("degree class must have positive square")
    if d % 2 != 0:
        raise ValueError("square must be even in an even lattice")
    if k < 0:
        raise ValueError("degree must be non-negative")
    target = h2 * h2 * d - k * k * h2
    if target > 0:
        return []
    basis, form = _orthogonal_complement(lat, h)
    if target == 0:
        coord_solutions = [tuple(0 for _ in basis)]
    else:
        coord_solutions = _enumerate_equal(form, -target)
    out = []
    for x in coord_solutions:
        s = [sum(basis[a][i] * x[a] for a in range(len(basis))) for i in range(lat.rank)]
        if stats is not None:
            stats.lifts_tried += 1
        lift = [si + k * hi for si, hi in zip(s, h)]
        if any(c % h2 != 0 for c in lift):
            if stats is not None:
                stats.lifts_discarded += 1
            continue
        cls = tuple(c // h2 for c in lift)
        # Defining equations re-checked post hoc.
        assert square(lat, cls) == d and bilinear(lat, h, cls) == k
        out.append(cls)
    return sorted(out, key=canonical_key)


def minus_two_classes_up_to_degree(lat: GramLattice, h, kmax: int) -> list[Vector]:
    """All (-2)-classes r with 0 < H.r <= kmax, ordered by (degree, canonical)."""
    out = []
    for k in range(1, kmax + 1):
        out.extend(classes_with_square_and_degree(lat, h, -2, k))
    return out
