"""Chamber-preserving groups: verification, closure, descent, mod-p filters."""

import random

import pytest

import oracles as O
from k3cone import (
    BadPrime,
    DegenerateBasis,
    GeneratorRejected,
    Isometry,
    Lattice,
    SupersingularDatum,
    build_group,
    filter_preserving_K,
    nef_walls,
    orbit_descend,
    preserves_K,
    project_to_nef_group,
    search_isometries,
    search_nef_generators,
    verify_generator,
)

from conftest import AMPLE_P, AMPLE_R, AMPLE_U, GAMMA_P, GRAM_P, GRAM_R, GRAM_U, G_R, SWAP


@pytest.fixture(scope="module")
def latP():
    return Lattice(GRAM_P)


@pytest.fixture(scope="module")
def latR():
    return Lattice(GRAM_R)


# ---------------------------------------------------------------- verification


def test_verify_generator_accepts_gamma_P(latP):
    rep = verify_generator(latP, AMPLE_P, GAMMA_P)
    assert (rep.preserves_form, rep.preserves_component, rep.chamber_fixed) == (True, True, True)
    assert rep.walls_preserved is None  # no wall data supplied
    assert rep.ok


def test_verify_generator_checks_walls_when_nef_given(latP):
    nef = nef_walls(latP, AMPLE_P)
    rep = verify_generator(latP, AMPLE_P, GAMMA_P, nef)
    assert rep.walls_preserved is True
    assert rep.ok


def test_verify_generator_flags_chamber_breakers(latP):
    # an automorph of the form that moves H out of its chamber
    rep = verify_generator(latP, AMPLE_P, ((3, 2), (4, 3)))
    assert rep.preserves_form and rep.preserves_component
    assert not rep.chamber_fixed
    assert not rep.ok


def test_verify_generator_flags_component_flip():
    lat = Lattice(GRAM_U)
    rep = verify_generator(lat, AMPLE_U, ((-1, 0), (0, -1)))
    assert rep.preserves_form
    assert not rep.preserves_component
    assert not rep.ok


def test_verify_generator_flags_non_isometry(latP):
    rep = verify_generator(latP, AMPLE_P, ((1, 1), (0, 1)))
    assert not rep.preserves_form
    assert not rep.ok


def test_build_group_rejects_with_located_report(latP):
    with pytest.raises(GeneratorRejected) as exc:
        build_group(latP, AMPLE_P, [GAMMA_P, ((1, 1), (0, 1))])
    assert exc.value.index == 1
    assert not exc.value.report.preserves_form


def test_build_group_closes_under_inversion(latR):
    grp = build_group(latR, AMPLE_R, [G_R, SWAP])
    assert grp.matrices() == (G_R, SWAP, ((7, 1), (-1, 0)))
    assert grp.provenance == ("input[0]", "input[1]", "inverse(input[0])")


def test_build_group_drops_identity_and_duplicates(latP):
    grp = build_group(latP, AMPLE_P, [((1, 0), (0, 1)), GAMMA_P, GAMMA_P])
    # gamma_P is an involution, so no inverse entry appears either
    assert grp.matrices() == (GAMMA_P,)


def test_build_group_empty(latP):
    grp = build_group(latP, AMPLE_P, [])
    assert grp.matrices() == ()


# ---------------------------------------------------------------- descent and projection


def test_orbit_descend_desk_values(latP, latR):
    grpP = build_group(latP, AMPLE_P, [GAMMA_P])
    assert orbit_descend(latP, AMPLE_P, grpP, (4, 5)) == ((2, 1), (0,))
    grpR = build_group(latR, AMPLE_R, [G_R, SWAP])
    assert orbit_descend(latR, AMPLE_R, grpR, (-1, 8)) == ((1, 1), (2,))


def test_orbit_descend_word_replays(latP):
    grpP = build_group(latP, AMPLE_P, [GAMMA_P])
    rng = random.Random(3)
    mats = grpP.matrices()
    for _ in range(50):
        x = tuple(rng.randint(-9, 9) for _ in range(2))
        end, word = orbit_descend(latP, AMPLE_P, grpP, x)
        y = x
        for i in word:
            y = O.apply_matrix(mats[i], y)
        assert y == end
        # endpoint is a local minimum: no generator lowers the degree further
        for m in mats:
            assert latP.pairing(AMPLE_P, O.apply_matrix(m, end)) >= latP.pairing(AMPLE_P, end)


def test_project_to_nef_group_desk_value(latP):
    iso, word = project_to_nef_group(latP, AMPLE_P, ((3, 2), (4, 3)))
    assert iso.matrix == GAMMA_P
    assert word == ((2, 3),)
    assert iso.apply(AMPLE_P) == walk_fixed_point(latP, iso, AMPLE_P)


def walk_fixed_point(lat, iso, ample):
    """The image of H under a chamber-preserving isometry is H's chamber walk target."""
    image = iso.apply(ample)
    from k3cone import nef_test

    assert nef_test(lat, ample, image)
    return image


def test_project_already_nef_is_identity_word(latP):
    iso, word = project_to_nef_group(latP, AMPLE_P, GAMMA_P)
    assert iso.matrix == GAMMA_P
    assert word == ()


# ---------------------------------------------------------------- supersingular filter


def test_supersingular_datum_validates():
    with pytest.raises(BadPrime):
        SupersingularDatum(2, ((1, 0),))  # must be odd
    with pytest.raises(BadPrime):
        SupersingularDatum(9, ((1, 0),))
    with pytest.raises(BadPrime):
        SupersingularDatum(-3, ((1, 0),))
    with pytest.raises(DegenerateBasis):
        SupersingularDatum(3, ((1, 2), (2, 4)))  # dependent mod 3
    d = SupersingularDatum(7, ((8, -6),))
    assert d.basis == ((1, 1),)  # reduced mod p


def test_preserves_K_desk_values(latR):
    diag = SupersingularDatum(3, ((1, 1),))
    anti = SupersingularDatum(3, ((1, 0),))
    assert preserves_K(latR, diag, SWAP)
    assert not preserves_K(latR, anti, SWAP)
    # cross-check against the dense span oracle
    assert O.preserves_subspace_mod_p(3, ((1, 1),), SWAP)
    assert not O.preserves_subspace_mod_p(3, ((1, 0),), SWAP)


def test_preserves_K_matches_oracle_randomized(latR):
    rng = random.Random(29)
    grp = build_group(latR, AMPLE_R, [G_R, SWAP])
    for p in (3, 5, 7):
        for _ in range(20):
            basis = (tuple(rng.randint(0, p - 1) for _ in range(2)),)
            if all(c == 0 for c in basis[0]):
                continue
            datum = SupersingularDatum(p, basis)
            for m in grp.matrices():
                assert preserves_K(latR, datum, m) == O.preserves_subspace_mod_p(p, basis, m)


def test_filter_preserving_K_counts(latR):
    grp = build_group(latR, AMPLE_R, [G_R, SWAP])
    kept = filter_preserving_K(latR, grp, SupersingularDatum(3, ((1, 1),)))
    assert len(kept) == 3  # every generator fixes the diagonal line mod 3
    assert all(isinstance(g, Isometry) for g in kept)
    none = filter_preserving_K(latR, grp, SupersingularDatum(3, ((1, 0),)))
    assert none == ()


def test_identity_always_preserves_K(latR):
    datum = SupersingularDatum(5, ((1, 2),))
    assert preserves_K(latR, datum, ((1, 0), (0, 1)))


def test_kept_elements_closed_under_inverse(latR):
    """If g preserves the subspace so does g^-1 (finite-index subgroup law)."""
    grp = build_group(latR, AMPLE_R, [G_R, SWAP])
    datum = SupersingularDatum(3, ((1, 1),))
    kept = {g.matrix for g in filter_preserving_K(latR, grp, datum)}
    for g in filter_preserving_K(latR, grp, datum):
        assert preserves_K(latR, datum, g.inverse().matrix)


# ---------------------------------------------------------------- discovery searches


def test_search_isometries_P(latP):
    mats = search_isometries(latP, 4)
    assert len(mats) == 12
    assert ((1, 0), (0, 1)) in mats
    assert ((-1, 0), (0, -1)) in mats
    assert GAMMA_P in mats
    for m in mats:
        Isometry(latP, m)  # raises if any fails w^T G w = G


def test_search_nef_generators_desk_values(latP, latR):
    assert search_nef_generators(latP, AMPLE_P, 4) == (GAMMA_P,)
    assert search_nef_generators(Lattice(GRAM_U), AMPLE_U, 2) == ()
    found = search_nef_generators(latR, AMPLE_R, 7)
    assert G_R in found and SWAP in found
    assert len(found) == 5
    for m in found:
        assert verify_generator(latR, AMPLE_R, m).ok
