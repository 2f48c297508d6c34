from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from orbiconf import library
from orbiconf.covering import (common_cover_search, covering_translations, find_coverings,
                               lift_automorphism, project_automorphism, residue_map,
                               verify_covering)
from orbiconf.errors import CoveringError
from orbiconf.groups import Permutation, PermutationGroup, automorphism_group, is_automorphism

from conftest import definition_covering_ok


@pytest.fixture(scope="module")
def residue(mod14, fano, residue_14_7):
    return verify_covering(mod14, fano, residue_14_7)


def test_residue_map_is_degree_two(residue):
    assert residue.degree == 2
    assert residue.surjective_on_lines and residue.uniform_line_fibers
    assert residue.preserves_parameters
    assert all(len(f) == 2 for f in residue.fibers())


def test_identity_is_degree_one(fano):
    assert verify_covering(fano, fano, list(range(1, 8))).degree == 1


def test_polygon_covers():
    cm = verify_covering(library.polygon(12), library.hexagon(), residue_map(12, 6))
    assert cm.degree == 2


def test_mapping_accepted_as_dict(fano):
    assert verify_covering(fano, fano, {p: p for p in range(1, 8)}).degree == 1


def test_every_transposition_mutation_is_rejected(mod14, fano, residue_14_7):
    for i, j in itertools.combinations(range(14), 2):
        if residue_14_7[i] == residue_14_7[j]:
            continue
        mutated = list(residue_14_7)
        mutated[i], mutated[j] = mutated[j], mutated[i]
        with pytest.raises(CoveringError):
            verify_covering(mod14, fano, mutated)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 7), min_size=14, max_size=14))
def test_verifier_agrees_with_definition(images):
    mod14, fano = library.mod14(), library.fano()
    try:
        verify_covering(mod14, fano, images)
        accepted = True
    except CoveringError:
        accepted = False
    assert accepted == definition_covering_ok(mod14, fano, images)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_polygon_mutations_agree_with_definition(k):
    cover, base = library.polygon(12), library.polygon(12 // k)
    q = residue_map(12, base.n)
    for i, j in itertools.combinations(range(12), 2):
        r = list(q)
        r[i], r[j] = r[j], r[i]
        try:
            verify_covering(cover, base, r)
            accepted = True
        except CoveringError:
            accepted = False
        assert accepted == definition_covering_ok(cover, base, r)


def test_unequal_fibers_rejected(fano):
    with pytest.raises(CoveringError):
        verify_covering(library.polygon(6), library.triangle(), [1, 2, 3, 1, 2, 2])


def test_find_coverings_contains_residue(mod14, fano, residue_14_7):
    maps = find_coverings(mod14, fano)
    assert tuple(residue_14_7) in {m.point_map for m in maps}
    for m in maps:
        assert definition_covering_ok(mod14, fano, m.point_map)


def test_find_coverings_needs_equal_parameters(fano):
    assert find_coverings(fano, library.triangle()) == []


@pytest.mark.parametrize("n,k", [(6, 3), (8, 4), (9, 3)])
def test_find_coverings_matches_brute_force(n, k):
    cover, base = library.polygon(n), library.polygon(k)
    brute = {images for images in itertools.product(range(1, k + 1), repeat=n)
             if definition_covering_ok(cover, base, images)}
    found = {m.point_map for m in find_coverings(cover, base)}
    assert found == brute


def test_translations(residue):
    t = covering_translations(residue)
    assert t.order == 2
    for g in t:
        assert all(residue(g(p)) == residue(p) for p in range(1, 15))


def test_translations_trivial_and_cyclic(fano):
    assert covering_translations(verify_covering(fano, fano, list(range(1, 8)))).order == 1
    cm = verify_covering(library.polygon(12), library.square(), residue_map(12, 4))
    assert covering_translations(cm).order == 3


def test_projection(residue):
    rot = Permutation(tuple(x % 14 + 1 for x in range(1, 15)))
    rot2 = rot * rot
    assert project_automorphism(residue, rot2).order() == 7
    transl = rot ** 7
    assert project_automorphism(residue, transl).is_identity()
    assert project_automorphism(residue, Permutation.identity(14)).is_identity()


def test_projection_is_homomorphism(residue, mod14):
    aut = list(automorphism_group(mod14))
    for f in aut:
        for g in aut:
            pf, pg = project_automorphism(residue, f), project_automorphism(residue, g)
            assert project_automorphism(residue, f * g) == pf * pg


def test_reflection_does_not_lift(residue):
    refl = Permutation.from_cycles("(1 4)(3 5)", 7)
    assert is_automorphism(refl, library.fano())
    assert lift_automorphism(residue, refl) == []


def test_identity_lifts_to_translations(residue):
    lifts = lift_automorphism(residue, Permutation.identity(7))
    assert set(lifts) == set(covering_translations(residue))


def test_exactly_seven_lift(residue, fano):
    liftable = [g for g in automorphism_group(fano) if lift_automorphism(residue, g)]
    assert len(liftable) == 7
    group = PermutationGroup.generate(liftable)
    assert group.order == 7
    assert set(group) == set(liftable)
    for g in liftable:
        for f in lift_automorphism(residue, g):
            assert all(residue(f(p)) == g(residue(p)) for p in range(1, 15))


def test_composition():
    a = verify_covering(library.polygon(12), library.hexagon(), residue_map(12, 6))
    b = verify_covering(library.hexagon(), library.triangle(), residue_map(6, 3))
    comp = a.then(b)
    assert comp.degree == a.degree * b.degree == 4
    assert definition_covering_ok(comp.cover, comp.base, comp.point_map)
    with pytest.raises(ValueError):
        b.then(a)


def test_common_cover_square_hexagon():
    closed = common_cover_search(library.square(), library.hexagon(), 24)
    searched = common_cover_search(library.square(), library.hexagon(), 24, use_closed_form=False)
    for cc in (closed, searched):
        assert cc.status == "found"
        assert cc.cover.n == 12
        assert cc.first.degree == 3 and cc.second.degree == 2
    assert closed.method == "closed_form" and searched.method == "search"


def test_common_cover_of_isomorphic_inputs(fano):
    cc = common_cover_search(fano, fano, 7)
    assert cc.status == "found" and cc.cover.n == 7


def test_common_cover_bound_exhausted(fano):
    cc = common_cover_search(fano, library.mod21(), 20)
    assert cc.status == "bound_exhausted"
    with pytest.raises(ValueError):
        common_cover_search(fano, library.square(), 28)
