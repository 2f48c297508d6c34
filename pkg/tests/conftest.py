"""Shared fixtures and independent oracles.

The oracles deliberately avoid the package's own search code: automorphism
counts and isomorphism questions go through networkx graph matching on the
Levi graph, and coverings are checked straight from the definition.
"""

from __future__ import annotations

from collections import Counter

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from orbiconf import library


def levi_nx(structure) -> nx.Graph:
    structure = getattr(structure, "structure", structure)
    g = nx.Graph()
    for p in range(1, structure.point_count + 1):
        g.add_node(("p", p), kind="point")
    for j, line in enumerate(structure.lines, start=1):
        g.add_node(("l", j), kind="line")
        for p in line:
            g.add_edge(("p", p), ("l", j))
    return g


def _same_kind(a, b):
    return a["kind"] == b["kind"]


def nx_isomorphic(c1, c2) -> bool:
    return GraphMatcher(levi_nx(c1), levi_nx(c2), node_match=_same_kind).is_isomorphic()


def nx_automorphism_count(config) -> int:
    g = levi_nx(config)
    return sum(1 for _ in GraphMatcher(g, g, node_match=_same_kind).isomorphisms_iter())


def definition_covering_ok(cover, base, point_map) -> bool:
    """Fibers all the same size and every cover line maps onto a base line."""
    if len(point_map) != cover.n or cover.n % base.n:
        return False
    sizes = Counter(point_map)
    if set(sizes) != set(range(1, base.n + 1)) or len(set(sizes.values())) != 1:
        return False
    base_lines = set(base.lines)
    for line in cover.lines:
        image = [point_map[p - 1] for p in line]
        if len(set(image)) != len(image) or frozenset(image) not in base_lines:
            return False
    return True


@pytest.fixture(scope="session")
def fano():
    return library.fano()


@pytest.fixture(scope="session")
def mod14():
    return library.mod14()


@pytest.fixture(scope="session")
def residue_14_7():
    return [(x - 1) % 7 + 1 for x in range(1, 15)]


def oracle_quotient(config, group):
    """Quotient from first principles, keyed by the least point of each orbit.

    Point weights are stabilizer sizes counted element by element; line
    records are gathered per orbit of lines and merged when equal.
    Returns ``(weights, lines)`` with ``weights`` a dict and ``lines`` a
    sorted list of ``(record, Fraction d/b)``.
    """
    from fractions import Fraction

    elements = list(group)
    order = len(elements)
    rep = {p: min(g(p) for g in elements) for p in range(1, config.n + 1)}
    weights = {r: sum(1 for g in elements if g(r) == r) for r in set(rep.values())}
    line_set = list(config.lines)
    seen, merged = set(), {}
    for line in line_set:
        if line in seen:
            continue
        orbit = {frozenset(g(p) for p in line) for g in elements}
        seen |= orbit
        record = tuple(sorted(Counter(rep[p] for p in line).items()))
        merged[record] = merged.get(record, Fraction(0)) + Fraction(len(orbit), order)
    return weights, sorted(merged.items())


def package_quotient_keyed(result):
    """The package quotient relabelled by least orbit element, for comparison."""
    key = {i: min(block) for i, block in enumerate(result.point_orbits, start=1)}
    weights = {key[i]: a for i, a in enumerate(result.structure.weights, start=1)}
    lines = sorted((tuple(sorted((key[p], c) for p, c in l.incidences)), l.ratio)
                   for l in result.structure.lines)
    return weights, lines


class QuotientCatalog:
    """Structures bucketed by a cheap invariant; membership is up to orbi-isomorphism."""

    def __init__(self):
        self.buckets: dict = {}

    @staticmethod
    def key(structure):
        return (tuple(sorted(structure.weights)),
                tuple(sorted((l.b, l.d, tuple(sorted(c for _, c in l.incidences)))
                             for l in structure.lines)))

    def add(self, structure):
        bucket = self.buckets.setdefault(self.key(structure), [])
        if structure not in bucket:
            bucket.append(structure)

    def __contains__(self, structure):
        from orbiconf.orbi import orbi_isomorphic

        return any(orbi_isomorphic(structure, other) is not None
                   for other in self.buckets.get(self.key(structure), ()))


def dihedral_quotient_forms(max_k: int) -> QuotientCatalog:
    """Every quotient of a K-gon, 3 <= K <= max_k, by a
    subgroup of its dihedral group.

    Subgroups are written down directly: rotations <r^d> for d | K, and
    <r^d, r^j s> for 0 <= j < d with s the reflection x -> -x.  Quotients
    come from :func:`oracle_quotient`.
    """
    from orbiconf.groups import Permutation, PermutationGroup
    from orbiconf.incidence import Configuration, from_mod_notation
    from orbiconf.orbi import OrbiIncidenceStructure, OrbiLine

    forms = QuotientCatalog()
    for k in range(3, max_k + 1):
        poly = Configuration(from_mod_notation((1, 2), k))
        rot = lambda step: Permutation(tuple((x - 1 + step) % k + 1 for x in range(1, k + 1)))
        refl = lambda j: Permutation(tuple((j - (x - 1)) % k + 1 for x in range(1, k + 1)))
        for d in range(1, k + 1):
            if k % d:
                continue
            gens_list = [[rot(d)]] + [[rot(d), refl(j)] for j in range(d)]
            for gens in gens_list:
                weights, lines = oracle_quotient(poly, PermutationGroup.generate(gens, k))
                reps = sorted(weights)
                index = {r: i for i, r in enumerate(reps, start=1)}
                structure = OrbiIncidenceStructure(
                    tuple(weights[r] for r in reps),
                    tuple(OrbiLine(tuple((index[p], c) for p, c in rec), r.denominator, r.numerator)
                          for rec, r in lines))
                forms.add(structure)
    return forms


def dihedral_bound(structure) -> int:
    return max(4, 2 * sum(structure.weights))
