from __future__ import annotations

import pytest

from orbiconf import library
from orbiconf.covering import verify_covering
from orbiconf.errors import ConfigurationError
from orbiconf.incidence import Configuration, IncidenceStructure, find_isomorphism
from orbiconf.primality import (INCONCLUSIVE, NOT_PRIME, PRIME, admissible_orders, fiber_sizes,
                                is_prime, is_prime_general, is_prime_regular)

from conftest import definition_covering_ok


def equal_partitions(items, k):
    """Every partition of ``items`` into blocks of size ``k``."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    from itertools import combinations
    for mates in combinations(rest, k - 1):
        remaining = [x for x in rest if x not in mates]
        for tail in equal_partitions(remaining, k):
            yield [(first, *mates)] + tail


def brute_force_covers(config) -> bool:
    """True when some equal-fiber partition gives a covering onto a configuration
    with at least three points and the same s and t."""
    n = config.n
    for k in range(2, n // 3 + 1):
        if n % k:
            continue
        for blocks in equal_partitions(list(range(1, n + 1)), k):
            images = [0] * n
            for i, block in enumerate(blocks, start=1):
                for p in block:
                    images[p - 1] = i
            lines = {frozenset(images[p - 1] for p in line) for line in config.lines}
            try:
                base = Configuration(IncidenceStructure(len(blocks), tuple(lines)))
            except (ConfigurationError, ValueError):
                continue
            if (base.s, base.t) == (config.s, config.t) and definition_covering_ok(config, base, images):
                return True
    return False


def odd_prime(n):
    return n > 2 and all(n % d for d in range(2, n))


def test_fano_fast_path(fano):
    orders = admissible_orders(fano)
    assert orders.fast_path and not orders
    for method in ("regular", "general"):
        verdict = is_prime(fano, method)[method]
        assert verdict.status == PRIME
        assert verdict.reason == "order_fast_path"


def test_mod14_admissible_orders(mod14):
    orders = admissible_orders(mod14)
    assert orders.orders == [2]
    assert "at_least_three_points" in orders.rejected[7]
    assert "point_bound" in orders.rejected[7]
    assert 14 in orders.rejected


def test_mod14_not_prime_both_methods(mod14, fano):
    result = is_prime(mod14)
    for verdict in result.values():
        assert verdict.status == NOT_PRIME
        cm = verdict.covering
        assert verify_covering(cm.cover, cm.base, cm.point_map).degree == 2
        assert find_isomorphism(cm.base, fano) is not None
    assert result["regular"].group.order == 2


def test_mod21_covers_fano(fano):
    verdict = is_prime_regular(library.mod21())
    assert verdict.status == NOT_PRIME
    assert verdict.covering.degree == 3
    assert find_isomorphism(verdict.covering.base, fano) is not None


def test_orbit_filter_rejects_order_three():
    # A 21-point configuration whose automorphism orbits have sizes 14 and 7.
    from orbiconf.groups import orbit_divisibility_filter
    assert not orbit_divisibility_filter([14, 7], 3)


@pytest.mark.parametrize("n", range(3, 13))
def test_polygons_against_brute_force(n):
    c = library.polygon(n)
    expected_prime = not brute_force_covers(c)
    assert expected_prime == (n in (3, 4) or odd_prime(n))
    for method, verdict in is_prime(c).items():
        assert verdict.status == (PRIME if expected_prime else NOT_PRIME), method


@pytest.mark.parametrize("name", ["fano", "mod14", "mod21", "6-gon", "9-gon", "12-gon"])
def test_certificates_reverify(name):
    c = library.bundled_configurations()[name]
    for verdict in is_prime(c).values():
        if verdict.status == NOT_PRIME:
            cm = verdict.covering
            verify_covering(cm.cover, cm.base, cm.point_map)
            assert cm.base.n >= 3 and cm.base.t >= 2
            assert (cm.base.s, cm.base.t) == (c.s, c.t)


@pytest.mark.parametrize("name", ["mod14", "mod21", "6-gon", "8-gon", "10-gon", "12-gon"])
def test_regular_not_prime_implies_general_not_prime(name):
    c = library.bundled_configurations()[name]
    if is_prime_regular(c).status == NOT_PRIME:
        assert is_prime_general(c).status == NOT_PRIME


def test_pappus_and_desargues_are_prime():
    # Nine and ten points leave no fiber size with at least three base points
    # satisfying the parameter bounds.
    for c in (library.pappus(), library.desargues()):
        assert fiber_sizes(c) == []
        assert {v.status for v in is_prime(c).values()} == {PRIME}


def test_twelve_gon_orders():
    assert admissible_orders(library.polygon(12)).orders == [2, 3, 4]


def test_budget_gives_inconclusive(mod14):
    verdict = is_prime_general(mod14, budget=5)
    assert verdict.status == INCONCLUSIVE and verdict.reason == "budget"
    assert "explored_fraction" in verdict.audit
    assert is_prime_regular(mod14, budget=1).status == INCONCLUSIVE


def test_unknown_method(fano):
    with pytest.raises(ValueError):
        is_prime(fano, "fast")
