import random

from k3scan import linalg
from k3scan.isometry import isometry_small
from k3scan.lattice import (
    GramLattice,
    discriminant_group,
    isotropic_elements,
    overlattice_from_isotropic,
)


def test_identity_on_equal_grams(presets):
    s3 = presets["S3"].lattice
    u = isometry_small(s3, s3)
    assert u == tuple(tuple(int(i == j) for j in range(3)) for i in range(3))


def test_s2_overlattice_is_s5(presets):
    dg = discriminant_group(presets["S2"].lattice)
    over = overlattice_from_isotropic(dg, isotropic_elements(dg)[0])
    u = isometry_small(over, presets["S5"].lattice)
    assert u is not None
    check = linalg.mat_mul(
        linalg.transpose(u), linalg.mat_mul(presets["S5"].lattice.gram, u)
    )
    assert check == over.gram


def test_distinct_presets_not_isometric(presets):
    assert isometry_small(presets["S2"].lattice, presets["S3"].lattice) is None
    assert isometry_small(presets["S1"].lattice, presets["S2"].lattice) is None
    assert isometry_small(presets["L24"].lattice, presets["L27"].lattice) is None


def _random_unimodular(rng, n):
    m = linalg.identity(n)
    for _ in range(5):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        for k in range(n):
            m[i][k] += c * m[j][k]
    return m


def test_finds_map_for_rebased_lattices(presets):
    rng = random.Random(31)
    for name in ("S1", "S3", "S5", "L24", "L27"):
        lat = presets[name].lattice
        for _ in range(3):
            t = _random_unimodular(rng, lat.rank)
            conj = linalg.mat_mul(t, linalg.mat_mul(lat.gram, linalg.transpose(t)))
            other = GramLattice(rank=lat.rank, gram=conj)
            u = isometry_small(other, lat)
            assert u is not None
            check = linalg.mat_mul(linalg.transpose(u), linalg.mat_mul(lat.gram, u))
            assert check == other.gram


def test_rank_cap():
    big = GramLattice(
        6,
        [
            [2, 1, 0, 0, 0, 0],
            [1, -2, 0, 0, 0, 0],
            [0, 0, -2, 0, 0, 0],
            [0, 0, 0, -2, 0, 0],
            [0, 0, 0, 0, -2, 0],
            [0, 0, 0, 0, 0, -2],
        ],
    )
    assert isometry_small(big, big) is None  # above the supported rank
