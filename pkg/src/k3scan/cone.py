"""From (-2)-classes to (-2)-curves, nef tests, and the compact chamber.

The sieve walks the (-2)-classes in ascending degree against an interior
ample seed and keeps a class exactly when it pairs non-negatively with every
curve kept so far.  Once the resulting wall system closes up a compact
chamber (all rays have positive square), no further (-2)-class can pass the
filter, so the curve list is complete whatever the degree cutoff was.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .enumeration import classes_with_square_and_degree
from .errors import IncompleteSieveError, NonCompactChamberError, WallError
from .lattice import GramLattice, bilinear, square
from .linalg import Matrix, Vector, canonical_key


@dataclass(frozen=True)
class CurveSystem:
    lattice: GramLattice
    ample_seed: Vector
    curves: tuple[Vector, ...]
    gram_of_curves: Matrix

    def degrees(self) -> tuple[int, ...]:
        return tuple(bilinear(self.lattice, self.ample_seed, c) for c in self.curves)


@dataclass(frozen=True)
class ChamberVertex:
    coords: Vector
    square: int
    degree: int


@dataclass(frozen=True)
class ChamberDescription:
    vertices: tuple[ChamberVertex, ...]
    ell: Fraction

    @property
    def dmax_display(self) -> float:
        """arccosh(sqrt(ell)); for display only, never used in logic."""
        return math.acosh(math.sqrt(self.ell))


def hyperbolic_ell(lat: GramLattice, d, d2) -> Fraction:
    """ell(D, D') = (D.D')^2 / (D^2 D'^2), exactly; >= 1 by the Hodge index."""
    a = square(lat, d)
    b = square(lat, d2)
    if a <= 0 or b <= 0:
        raise ValueError("both classes must have positive square")
    return Fraction(bilinear(lat, d, d2) ** 2, a * b)


def is_nef(cs: CurveSystem, d) -> bool:
    """Non-negative square and non-negative degree on every curve."""
    return square(cs.lattice, d) >= 0 and all(
        bilinear(cs.lattice, d, c) >= 0 for c in cs.curves
    )


def is_ample(cs: CurveSystem, d) -> bool:
    """Positive square and strictly positive degree on every curve."""
    return square(cs.lattice, d) > 0 and all(
        bilinear(cs.lattice, d, c) > 0 for c in cs.curves
    )


def vinberg_sieve(lat: GramLattice, h, kmax: int) -> CurveSystem:
    """Sort the (-2)-curves among the (-2)-classes of degree at most kmax.

    Classes are processed in ascending degree (canonical order within a
    degree); r is accepted iff r.c >= 0 for every curve accepted before it.
    Raises WallError when the seed is orthogonal to some (-2)-class and
    IncompleteSieveError when kmax is hit before the chamber closes.
    """
    h = lat.check_vector(h)
    if square(lat, h) <= 0:
        raise ValueError("seed must have positive square")
    walls = classes_with_square_and_degree(lat, h, -2, 0)
    if walls:
        raise WallError(walls[0])
    accepted: list[Vector] = []
    for k in range(1, kmax + 1):
        for r in classes_with_square_and_degree(lat, h, -2, k):
            if all(bilinear(lat, r, c) >= 0 for c in accepted):
                accepted.append(r)
    gram = tuple(
        tuple(bilinear(lat, a, b) for b in accepted) for a in accepted
    )
    cs = CurveSystem(lattice=lat, ample_seed=h, curves=tuple(accepted), gram_of_curves=gram)
    _verify_closure(cs, kmax)
    return cs


def _verify_closure(cs: CurveSystem, kmax: int) -> None:
    if not cs.curves:
        raise IncompleteSieveError(f"no (-2)-curves found up to degree {kmax}")
    chamber = chamber_vertices(cs)
    # A compact chamber of dimension rho-1 has at least rho vertices and every
    # wall carries one; with that certificate in hand no further (-2)-class
    # can be non-negative on all curves, so the list is complete.
    if len(chamber.vertices) < cs.lattice.rank:
        raise IncompleteSieveError(
            f"chamber did not close at degree {kmax}: "
            f"only {len(chamber.vertices)} rays found"
        )
    supported = set()
    for vertex in chamber.vertices:
        for i, c in enumerate(cs.curves):
            if bilinear(cs.lattice, vertex.coords, c) == 0:
                supported.add(i)
    if len(supported) != len(cs.curves):
        missing = [i for i in range(len(cs.curves)) if i not in supported]
        raise IncompleteSieveError(
            f"chamber did not close at degree {kmax}: "
            f"curves {missing} support no vertex"
        )


def chamber_vertices(cs: CurveSystem) -> ChamberDescription:
    """Rays of the nef cone: primitive nef generators orthogonal to rho-1 curves.

    Every (rho-1)-subset of curves whose common orthogonal complement has rank
    one contributes a candidate; nef candidates must have positive square or
    the chamber is not compact (NonCompactChamberError).
    """
    lat = cs.lattice
    rho = lat.rank
    h = cs.ample_seed
    seen = set()
    vertices = []
    for subset in itertools.combinations(range(len(cs.curves)), rho - 1):
        rows = [linalg.mat_vec(lat.gram, cs.curves[i]) for i in subset]
        if linalg.rank(rows) != rho - 1:
            continue
        kernel = linalg.integer_kernel_basis(rows)
        assert len(kernel) == 1
        v = linalg.primitive_part(kernel[0])
        deg = bilinear(lat, h, v)
        if deg < 0:
            v = tuple(-x for x in v)
            deg = -deg
        if deg == 0:
            continue
        if v in seen:
            continue
        seen.add(v)
        if not all(bilinear(lat, v, c) >= 0 for c in cs.curves):
            continue
        sq = square(lat, v)
        if sq <= 0:
            raise NonCompactChamberError(
                f"nef ray {v} has square {sq}; the chamber is not compact"
            )
        vertices.append(ChamberVertex(coords=v, square=sq, degree=deg))
    vertices.sort(key=lambda vx: (vx.square, vx.degree, canonical_key(vx.coords)))
    h2 = square(lat, h)
    ell = max(
        (Fraction(vx.degree ** 2, h2 * vx.square) for vx in vertices),
        default=Fraction(1),
    )
    return ChamberDescription(vertices=tuple(vertices), ell=ell)
