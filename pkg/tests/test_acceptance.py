"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS`` or ``FAIL`` line for its criterion straight
to the terminal, then fails normally if the criterion does not hold.  Run
this file directly to see only these lines:

    python tests/test_acceptance.py
"""

from __future__ import annotations

import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from orbiconf import library
from orbiconf.covering import (common_cover_search, covering_translations, lift_automorphism,
                               residue_map, verify_covering)
from orbiconf.goodbad import BAD, GOOD, classify_n2, enumerate_n2
from orbiconf.groups import (Permutation, PermutationGroup, automorphism_group, is_automorphism,
                             is_semiregular, line_permutation, orbit_divisibility_filter,
                             subgroups)
from orbiconf.incidence import find_isomorphism
from orbiconf.orbi import (Level, classify, orbi_dual, orbi_isomorphic, orbi_params, quotient,
                           verify_quotient_claims)
from orbiconf.primality import NOT_PRIME, PRIME, admissible_orders, is_prime

from conftest import (definition_covering_ok, dihedral_bound, dihedral_quotient_forms,
                      nx_automorphism_count)


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number: int, title: str):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            with capsys.disabled():
                print(f"\nFAIL criterion {number:2d}: {title} ({type(exc).__name__}: {exc})")
            raise
        with capsys.disabled():
            print(f"\nPASS criterion {number:2d}: {title} [{time.perf_counter() - start:.2f}s]")
    return run


def _subgroup_catalogue():
    """Every bundled configuration paired with each of its subgroups of order at most 24."""
    pairs = []
    for name, config in sorted(library.bundled_configurations().items()):
        for h in subgroups(automorphism_group(config), 24):
            pairs.append((name, config, h))
    return pairs


@pytest.fixture(scope="module")
def catalogue():
    return _subgroup_catalogue()


def test_criterion_01_fano_automorphisms(criterion, fano):
    with criterion(1, "|Aut(Fano)| = 168 in under 1 s"):
        start = time.perf_counter()
        order = automorphism_group(fano).order
        elapsed = time.perf_counter() - start
        assert order == 168
        assert elapsed < 1.0, f"took {elapsed:.3f}s"
        assert nx_automorphism_count(fano) == 168


def test_criterion_02_mod14_cyclic(criterion, mod14):
    with criterion(2, "|Aut({1,2,4} mod 14)| = 14, cyclic"):
        group = automorphism_group(mod14)
        assert group.order == 14
        gen = group.cyclic_generator()
        assert gen is not None
        assert len({gen ** k for k in range(14)}) == 14


def test_criterion_03_residue_covering(criterion, mod14, fano):
    with criterion(3, "residue map mod 14 -> Fano has degree 2 and 2 translations"):
        q = residue_map(14, 7)
        assert definition_covering_ok(mod14, fano, q)
        cm = verify_covering(mod14, fano, q)
        assert cm.degree == 2
        assert covering_translations(cm).order == 2


def test_criterion_04_lifting(criterion, mod14, fano):
    with criterion(4, "reflection (1 4)(3 5) does not lift; exactly 7 automorphisms lift"):
        cm = verify_covering(mod14, fano, residue_map(14, 7))
        refl = Permutation.from_cycles("(1 4)(3 5)", 7)
        assert is_automorphism(refl, fano)
        assert [p for p in (2, 6, 7) if refl(p) != p] == []
        assert lift_automorphism(cm, refl) == []
        lifting = [g for g in automorphism_group(fano) if lift_automorphism(cm, g)]
        assert len(lifting) == 7
        generated = PermutationGroup.generate(lifting, 7)
        assert set(generated) == set(lifting)
        assert all(g.is_identity() or g.cycle_type() == (7,) for g in lifting)


def test_criterion_05_primality(criterion, fano, mod14):
    with criterion(5, "Fano prime (fast path); mod-14 not prime, covers Fano, both methods"):
        for method, verdict in is_prime(fano).items():
            assert verdict.status == PRIME and verdict.reason == "order_fast_path", method
        assert admissible_orders(fano).fast_path
        for method, verdict in is_prime(mod14).items():
            assert verdict.status == NOT_PRIME, method
            base = verdict.covering.base
            assert find_isomorphism(base, fano) is not None, method
            verify_covering(mod14, base, verdict.covering.point_map)


def test_criterion_06_half_triangle_arithmetic(criterion):
    with criterion(6, "first worked orbiconfiguration: n = m = 3/2, s = t = 2 exactly"):
        p = orbi_params(library.half_triangle())
        assert p.n == Fraction(3, 2) and p.m == Fraction(3, 2)
        assert set(p.s) == {Fraction(2)} and set(p.t) == {Fraction(2)}
        assert all(type(x) is Fraction for x in (p.n, p.m, *p.s, *p.t))


def test_criterion_07_quotient_oracle(criterion, catalogue):
    with criterion(7, f"quotient claims over {len(catalogue)} (configuration, subgroup) pairs"):
        names = {name for name, _, _ in catalogue}
        assert {"fano", "mod14", "mod21"} | {f"{k}-gon" for k in range(3, 13)} <= names
        orbiconfigs = 0
        for name, config, h in catalogue:
            res = quotient(config, h)
            claims = verify_quotient_claims(config, h, res)
            assert claims.ok, (name, h.order, claims.details)
            p = orbi_params(res.structure)
            assert p.n * h.order == config.n and p.m * h.order == config.m
            if p.s_constant and p.t_constant:
                assert p.n * p.s[0] == p.m * p.t[0], (name, h.order)
            if classify(res.structure) is Level.ORBICONFIGURATION:
                orbiconfigs += 1
        # Point orbits may share several line orbits, so not every quotient qualifies.
        assert 0 < orbiconfigs <= len(catalogue)


def test_criterion_08_small_quotients(criterion):
    with criterion(8, "square / C2 is the bigon; triangle / C3 is the loop"):
        half_turn = PermutationGroup.generate([Permutation.from_cycles("(1 3)(2 4)", 4)])
        assert orbi_isomorphic(quotient(library.square(), half_turn).structure,
                               library.bigon()) is not None
        c3 = PermutationGroup.generate([Permutation.from_cycles("(1 2 3)", 3)])
        loop = quotient(library.triangle(), c3).structure
        assert loop.point_count == 1 and loop.line_count == 1
        assert loop.lines[0].incidences == ((1, 2),)
        assert orbi_isomorphic(loop, library.loop()) is not None


def test_criterion_09_self_dual(criterion):
    with criterion(9, "the half-triangle orbiconfiguration is self-dual"):
        oc = library.half_triangle()
        assert orbi_isomorphic(oc, orbi_dual(oc)) is not None


def test_criterion_10_derangement_structure(criterion, catalogue):
    checked = 0
    with criterion(10, "semiregular elements split into equal cycles on points and lines"):
        for name, config, h in catalogue:
            if h.order == 1 or not is_semiregular(h, config):
                continue
            for g in h:
                if g.is_identity():
                    continue
                k = g.order()
                assert g.cycle_type() == (k,) * (config.n // k), (name, str(g))
                lines = line_permutation(g, config)
                assert lines.cycle_type() == (k,) * (config.m // k), (name, str(g))
                checked += 1
        assert checked > 0


@pytest.fixture(scope="module")
def n2_slices():
    return {
        "all, points <= 4, a,b,d <= 4": enumerate_n2(4, 4),
        "connected, points <= 5, a,b,d <= 3": enumerate_n2(5, 3, connected=True),
        "connected, points <= 6, a,b,d <= 2": enumerate_n2(6, 2, connected=True),
        "all, total weight <= 6, points <= 4, a,b,d <= 6":
            enumerate_n2(4, 6, max_weight_sum=6),
    }


def test_criterion_11_n2_classification(criterion, n2_slices):
    total = sum(len(v) for v in n2_slices.values())
    with criterion(11, f"classify_n2 matches dihedral quotient enumeration on {total} classes"):
        bound = max(dihedral_bound(s) for v in n2_slices.values() for s in v)
        oracle = dihedral_quotient_forms(bound)
        for label, structures in n2_slices.items():
            for s in structures:
                verdict = classify_n2(s)
                expected = s in oracle
                assert (verdict.status == GOOD) == expected, (label, s)
                if expected:
                    assert verdict.verify(s)
        # Both ends of weight 2: good, witnessed by a hexagon and a vertex reflection.
        from orbiconf.orbi import OrbiIncidenceStructure, OrbiLine
        L = OrbiLine.of
        ends = OrbiIncidenceStructure((2, 1, 1, 2), (L([1, 2]), L([2, 3]), L([3, 4])))
        verdict = classify_n2(ends)
        assert verdict.status == GOOD and verdict.witness.n == 6
        # Every chain with an interior weight-2 point in the slices is bad.
        interior = 0
        for structures in n2_slices.values():
            for s in structures:
                if _has_interior_weight_two(s):
                    interior += 1
                    assert classify_n2(s).status == BAD
        assert interior > 0


def _has_interior_weight_two(s) -> bool:
    """Lines on two points form a simple path and an inner path vertex has weight 2."""
    edges = [tuple(sorted(l.support)) for l in s.lines if len(l.support) == 2]
    if s.point_count < 3 or len(edges) != s.point_count - 1:
        return False
    degree = {p: 0 for p in range(1, s.point_count + 1)}
    for x, y in edges:
        degree[x] += 1
        degree[y] += 1
    if max(degree.values()) > 2 or not s.is_connected():
        return False
    return any(degree[p] == 2 and s.weights[p - 1] == 2 for p in degree)


def test_criterion_12_common_cover(criterion):
    with criterion(12, "square and hexagon share the 12-gon (closed form = search)"):
        closed = common_cover_search(library.square(), library.hexagon(), 24)
        searched = common_cover_search(library.square(), library.hexagon(), 24,
                                       use_closed_form=False)
        for cc in (closed, searched):
            assert cc.status == "found" and tuple(cc.cover.params) == (12, 12, 2, 2)
            assert definition_covering_ok(cc.cover, library.square(), cc.first.point_map)
            assert definition_covering_ok(cc.cover, library.hexagon(), cc.second.point_map)
        assert find_isomorphism(closed.cover, searched.cover) is not None


def test_criterion_13_orbit_filter(criterion):
    with criterion(13, "orbit sizes {14, 7} reject candidate order 3"):
        assert not orbit_divisibility_filter([14, 7], 3)
        assert orbit_divisibility_filter([14, 7], 7)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
