from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from orbiconf import library
from orbiconf.errors import ConfigurationError
from orbiconf.incidence import (Configuration, ConfigurationParams, IncidenceStructure, dual,
                                find_isomorphism, from_mod_notation, is_isomorphism, levi,
                                menger_edges, mod_notation_line_count, params, validate)

from conftest import levi_nx, nx_isomorphic


def test_fano_from_mod_notation(fano):
    assert len(fano.lines) == 7
    assert tuple(params(fano)) == (7, 7, 3, 3)
    assert fano.n * fano.s == fano.m * fano.t == 21


def test_pair_axiom_witness():
    report = validate(IncidenceStructure.from_lines([{1, 2}, {1, 2, 3}], 3))
    assert not report.pair_axiom
    assert report.pair_witness[:2] == (1, 2)
    assert not report.ok
    assert any("pair axiom" in v for v in report.violations())


def test_disjoint_triangles_not_connected():
    report = validate(IncidenceStructure.from_lines(
        [{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}], 6))
    assert report.pair_axiom
    assert not report.connected
    assert report.components == [[1, 2, 3], [4, 5, 6]]
    with pytest.raises(ConfigurationError):
        Configuration(report.structure)


def test_six_nine_example():
    c = library.k33()
    assert tuple(params(c)) == (6, 9, 3, 2)
    assert 6 * 3 == 9 * 2 == 18


def test_square_params():
    assert tuple(params(library.square())) == (4, 4, 2, 2)


def test_complete_graph_bounds_orientation():
    # Six points, every pair a line: s = 5, t = 2.
    c = Configuration.from_lines([(i, j) for i in range(1, 7) for j in range(i + 1, 7)], 6)
    assert tuple(c.params) == (6, 15, 5, 2)
    assert c.n >= c.s * (c.t - 1) + 1 and c.m >= c.t * (c.s - 1) + 1
    # The other orientation, t(s-1)+1 <= n, would reject it.
    assert not c.t * (c.s - 1) + 1 <= c.n


def test_params_type_rejects_bad_identity():
    with pytest.raises(ValueError):
        ConfigurationParams(7, 7, 3, 2)


def test_single_point_lines_rejected():
    report = validate(IncidenceStructure.from_lines([{1}], 1))
    assert not report.t_at_least_two
    assert not report.ok


def test_incidence_structure_invariants():
    with pytest.raises(ValueError):
        IncidenceStructure(3, (frozenset({1, 4}),))
    with pytest.raises(ValueError):
        IncidenceStructure(3, (frozenset(),))
    with pytest.raises(ValueError):
        IncidenceStructure(3, (frozenset({1, 2}), frozenset({2, 1})))


@given(st.integers(min_value=3, max_value=40))
def test_polygons_from_mod_notation(n):
    c = Configuration(from_mod_notation((1, 2), n))
    assert tuple(c.params) == (n, n, 2, 2)
    assert validate(c.structure).connected


def test_mod14_is_configuration(mod14):
    assert tuple(mod14.params) == (14, 14, 3, 3)


def test_mod_notation_dedupes():
    s = from_mod_notation((1, 3), 4)
    assert s.line_count == 2
    assert mod_notation_line_count((1, 3), 4) == (4, 2)
    with pytest.raises(ValueError):
        from_mod_notation((), 7)


def test_dual_of_fano_is_fano(fano):
    d = dual(fano)
    assert find_isomorphism(d, fano) is not None
    assert nx_isomorphic(d, fano)


def test_dual_of_six_nine():
    d = dual(library.k33())
    assert tuple(d.params) == (9, 6, 2, 3)


@pytest.mark.parametrize("name", sorted(library.bundled_configurations()))
def test_dual_is_involution(name):
    c = library.bundled_configurations()[name]
    assert find_isomorphism(dual(dual(c)), c) is not None


def test_levi_fano(fano):
    g = levi(fano)
    assert g.point_node_count == g.line_node_count == 7
    assert g.edge_count == 21
    assert all(g.degree_of_point(p) == 3 for p in range(1, 8))
    assert all(g.degree_of_line(j) == 3 for j in range(1, 8))
    assert g.is_plain()


@pytest.mark.parametrize("n", range(3, 13))
def test_levi_of_polygon_is_cycle(n):
    assert nx.is_isomorphic(levi_nx(library.polygon(n)), nx.cycle_graph(2 * n))


def test_menger_is_not_faithful():
    line = IncidenceStructure.from_lines([{1, 2, 3}], 3)
    triangle = IncidenceStructure.from_lines([{1, 2}, {2, 3}, {1, 3}], 3)
    assert menger_edges(line) == menger_edges(triangle)
    assert levi(line) != levi(triangle)


def test_levi_connectivity_matches_validate():
    split = IncidenceStructure.from_lines([{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}], 6)
    assert levi(split).is_connected() == validate(split).connected is False
    assert levi(library.fano()).is_connected()


@settings(max_examples=30, deadline=None)
@given(st.permutations(list(range(1, 8))))
def test_isomorphism_found_for_relabeled_fano(perm):
    fano = library.fano()
    relabeled = Configuration(fano.structure.image(perm))
    iso = find_isomorphism(fano, relabeled)
    assert iso is not None
    assert is_isomorphism(fano, relabeled, iso)


def test_isomorphism_absent_for_different_parameters(fano):
    assert find_isomorphism(fano, library.polygon(7)) is None


def test_isomorphism_agrees_with_networkx():
    rng = random.Random(7)
    cands = [Configuration(from_mod_notation(b, n)) for n in (13, 15, 16)
             for b in [(1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 7)]
             if validate(from_mod_notation(b, n)).ok]
    for a in cands:
        for b in cands:
            if a.n == b.n:
                perm = list(range(1, b.n + 1))
                rng.shuffle(perm)
                b2 = Configuration(b.structure.image(perm))
                assert (find_isomorphism(a, b2) is not None) == nx_isomorphic(a, b2)


@pytest.mark.parametrize("name", sorted(library.bundled_configurations()))
def test_identity_and_bounds(name):
    c = library.bundled_configurations()[name]
    assert c.n * c.s == c.m * c.t
    assert c.n >= c.s * (c.t - 1) + 1 and c.m >= c.t * (c.s - 1) + 1
