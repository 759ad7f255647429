"""Gram validation, pairing arithmetic, reflections, and isometry algebra."""

import random

import pytest

from k3cone import (
    Degenerate,
    DimensionMismatch,
    Isometry,
    Lattice,
    NonPositiveAmple,
    NotAnIsometry,
    OddLattice,
    AmpleOnWall,
    WrongSignature,
    ZeroVector,
    primitive_ray,
    reflection_matrix,
    validate_problem,
)

from conftest import GRAM_P, GRAM_R, GRAM_U, random_even_hyperbolic


def test_desk_lattices_validate():
    for gram in (GRAM_U, GRAM_P, GRAM_R):
        lat = Lattice(gram)
        assert lat.rank == 2
        assert lat.gram == gram


def test_gram_must_be_square():
    with pytest.raises(DimensionMismatch):
        Lattice(((0, 1, 0), (1, 0, 0)))


def test_gram_must_be_symmetric():
    with pytest.raises(DimensionMismatch):
        Lattice(((0, 1), (2, 0)))


def test_gram_must_be_even():
    # odd diagonal entry
    with pytest.raises(OddLattice):
        Lattice(((1, 0), (0, -2)))


def test_signature_must_be_hyperbolic():
    with pytest.raises(WrongSignature):
        Lattice(((2, 0), (0, 2)))  # positive definite
    with pytest.raises(WrongSignature):
        Lattice(((-2, 0), (0, -2)))  # negative definite


def test_degenerate_gram_rejected():
    with pytest.raises((Degenerate, WrongSignature)):
        Lattice(((2, 2), (2, 2)))


def test_pairing_and_norm():
    lat = Lattice(GRAM_U)
    assert lat.pairing((1, 0), (0, 1)) == 1
    assert lat.pairing((2, 1), (2, 1)) == 4
    assert lat.norm((3, 5)) == 30
    lat_p = Lattice(GRAM_P)
    assert lat_p.norm((2, 1)) == 14
    assert lat_p.pairing((2, 1), (0, 1)) == -2


def test_pairing_is_symmetric_and_bilinear():
    rng = random.Random(11)
    lat = Lattice(GRAM_R)
    for _ in range(100):
        x = tuple(rng.randint(-9, 9) for _ in range(2))
        y = tuple(rng.randint(-9, 9) for _ in range(2))
        z = tuple(rng.randint(-9, 9) for _ in range(2))
        assert lat.pairing(x, y) == lat.pairing(y, x)
        xy = tuple(a + b for a, b in zip(x, y))
        assert lat.pairing(xy, z) == lat.pairing(x, z) + lat.pairing(y, z)


def test_pairing_rejects_wrong_length():
    lat = Lattice(GRAM_U)
    with pytest.raises(DimensionMismatch):
        lat.pairing((1, 0, 0), (0, 1))


def test_validate_problem_accepts_desk_data():
    lat, ample = validate_problem(GRAM_U, (2, 1))
    assert lat.norm(ample) == 4


def test_validate_problem_rejects_non_positive_ample():
    with pytest.raises(NonPositiveAmple):
        validate_problem(GRAM_U, (1, -1))
    with pytest.raises(NonPositiveAmple):
        validate_problem(GRAM_U, (0, 0))  # norm 0 counts as non-positive


def test_validate_problem_rejects_ample_on_wall():
    # (1, 1) in L_U pairs to zero with the root (-1, 1)
    with pytest.raises(AmpleOnWall):
        validate_problem(GRAM_U, (1, 1))


def test_reflection_matrix_desk_values():
    lat = Lattice(GRAM_U)
    assert reflection_matrix(lat, (-1, 1)) == ((0, 1), (1, 0))
    lat_p = Lattice(GRAM_P)
    assert reflection_matrix(lat_p, (2, 3)) == ((17, -12), (24, -17))


def test_reflection_rejects_non_root():
    lat = Lattice(GRAM_U)
    from k3cone import NotARoot

    with pytest.raises(NotARoot):
        reflection_matrix(lat, (1, 0))  # norm 0


def test_reflection_is_involution_and_isometry():
    """Randomized: s_d fixes norms, negates d, and squares to the identity."""
    rng = random.Random(23)
    for _ in range(20):
        got = random_even_hyperbolic(rng)
        if got is None:
            continue
        lat, ample = got
        # hunt for a root in a small box
        from k3cone import roots_up_to_degree

        roots = roots_up_to_degree(lat, ample, 3 * lat.norm(ample))
        for d in roots[:3]:
            m = reflection_matrix(lat, d)
            iso = Isometry(lat, m)
            assert iso.apply(d) == tuple(-c for c in d)
            assert iso.compose(iso).is_identity()
            for _ in range(10):
                x = tuple(rng.randint(-8, 8) for _ in range(lat.rank))
                assert lat.norm(iso.apply(x)) == lat.norm(x)


def test_isometry_rejects_bad_matrix():
    lat = Lattice(GRAM_U)
    with pytest.raises(NotAnIsometry):
        Isometry(lat, ((1, 1), (0, 1)))


def test_isometry_compose_inverse():
    lat = Lattice(GRAM_P)
    g = Isometry(lat, ((3, -2), (4, -3)))
    assert g.compose(g.inverse()).is_identity()
    # matrices act on column vectors; compose applies the right factor first
    r = Isometry(lat, ((17, -12), (24, -17)))
    x = (8, 11)
    assert g.compose(r).apply(x) == g.apply(r.apply(x))


def test_primitive_ray():
    assert primitive_ray((4, -6)) == (2, -3)
    assert primitive_ray((0, 5)) == (0, 1)
    assert primitive_ray((7,)) == (1,)
    with pytest.raises(ZeroVector):
        primitive_ray((0, 0))
