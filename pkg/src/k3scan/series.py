"""Generating series of big-and-nef classes, counted by square.

The compact chamber gives the degree bound (H.D)^2 <= ell * H^2 * D^2, so for
each even square d the big-and-nef classes are exactly the nef results of the
square-and-degree enumeration over degrees 1..floor(sqrt(ell*H^2*d)).

theta counts primitive classes only, xi counts all of them; the two are tied
by xi(d) = sum over m^2 | d of theta(d/m^2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .cone import ChamberDescription, CurveSystem, is_nef
from .lattice import GramLattice, bilinear, is_primitive, square
from .linalg import Vector, canonical_key


@dataclass
class SeriesTable:
    kind: str  # "theta" or "xi"
    max_square: int
    coefficients: dict[int, int]

    def coefficient(self, d: int) -> int:
        return self.coefficients.get(d, 0)

    def as_polynomial(self, var: str = "T") -> str:
        terms = []
        for d in sorted(self.coefficients):
            c = self.coefficients[d]
            if c == 0:
                continue
            terms.append(f"{var}^{d}" if c == 1 else f"{c}{var}^{d}")
        return " + ".join(terms) if terms else "0"

    def factored_polynomial(self, var: str = "T") -> str | None:
        """The display form 'T^a + g(...)' when the tail has a common factor g > 1."""
        nonzero = [(d, c) for d, c in sorted(self.coefficients.items()) if c]
        if len(nonzero) < 2 or nonzero[0][1] != 1:
            return None
        g = 0
        for _, c in nonzero[1:]:
            g = _gcd(g, c)
        if g <= 1:
            return None
        tail = []
        for d, c in nonzero[1:]:
            q = c // g
            tail.append(f"{var}^{d}" if q == 1 else f"{q}{var}^{d}")
        return f"{var}^{nonzero[0][0]} + {g}(" + " + ".join(tail) + ")"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def degree_bound(lat: GramLattice, h, ell: Fraction, d: int) -> int:
    """Largest integer k with k^2 <= ell * H^2 * d, by exact rational comparison."""
    if d <= 0:
        raise ValueError("square must be positive")
    h2 = square(lat, h)
    if h2 <= 0:
        raise ValueError("degree class must have positive square")
    ell = Fraction(ell)
    if ell < 1:
        raise ValueError("chamber radius parameter must be >= 1")
    bound = ell * h2 * d
    return isqrt(bound.numerator * bound.denominator) // bound.denominator


@lru_cache(maxsize=None)
def _big_nef_of_square(cs: CurveSystem, ell: Fraction, d: int) -> tuple[Vector, ...]:
    from .enumeration import classes_with_square_and_degree

    lat = cs.lattice
    h = cs.ample_seed
    out = []
    for k in range(1, degree_bound(lat, h, ell, d) + 1):
        for cls in classes_with_square_and_degree(lat, h, d, k):
            if is_nef(cs, cls):
                out.append(cls)
    return tuple(sorted(out, key=lambda c: (bilinear(lat, h, c), canonical_key(c))))


def big_nef_classes_of_square(
    cs: CurveSystem, ch: ChamberDescription, d: int
) -> list[Vector]:
    """All big-and-nef classes of square d, complete by the chamber radius bound."""
    if d % 2 != 0 or d <= 0:
        raise ValueError("square must be a positive even integer")
    return list(_big_nef_of_square(cs, ch.ell, d))


def theta_series(cs: CurveSystem, ch: ChamberDescription, max_square: int) -> SeriesTable:
    """Counts of primitive big-and-nef classes for each even square up to max_square."""
    _check_max_square(max_square)
    coeffs = {}
    for d in range(2, max_square + 1, 2):
        classes = big_nef_classes_of_square(cs, ch, d)
        coeffs[d] = sum(1 for c in classes if is_primitive(c))
    return SeriesTable(kind="theta", max_square=max_square, coefficients=coeffs)


def xi_series(cs: CurveSystem, ch: ChamberDescription, max_square: int) -> SeriesTable:
    """Counts of all big-and-nef classes for each even square up to max_square."""
    _check_max_square(max_square)
    coeffs = {}
    for d in range(2, max_square + 1, 2):
        coeffs[d] = len(big_nef_classes_of_square(cs, ch, d))
    return SeriesTable(kind="xi", max_square=max_square, coefficients=coeffs)


def _check_max_square(max_square: int) -> None:
    if max_square < 2 or max_square % 2 != 0:
        raise ValueError("max_square must be an even integer >= 2")
