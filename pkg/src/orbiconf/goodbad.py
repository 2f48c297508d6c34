"""Good and bad orbiconfigurations.

An orbiconfiguration ``X`` is called good here when some configuration ``C``
and some ``G <= Aut(C)`` have ``quotient(C, G)`` orbi-isomorphic to ``X``,
and bad when no such pair exists.  Group quotients are the only covering
construction available for orbiconfigurations, so this is the working
definition throughout.

For ``s = t = 2`` the covering configuration must be a polygon, and the
quotients of polygons by dihedral subgroups are known completely:

* rotations give smaller polygons, the bigon (two points joined by a
  doubled line) and the loop (one point on one line with ``c = 2``);
* a reflection folds a polygon into a chain whose ends are either a
  point of weight 2 on a single plain line (the axis passes through a
  vertex) or a line ``{x: 2}`` of weight 2 (the axis crosses an edge).

:func:`classify_n2` decides goodness for ``s = t = 2`` by building the
single candidate witness for each of these shapes and comparing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from math import gcd

from .covering import _mod_candidates, polygon
from .errors import BudgetExceeded, ConfigurationError, OrbiStructureError
from .groups import Permutation, PermutationGroup, automorphism_group, subgroups
from .incidence import Configuration, find_isomorphism
from .orbi import (Level, OrbiIncidenceStructure, OrbiLine, classify,
                   orbi_isomorphic, orbi_params, quotient)

GOOD = "good"
BAD = "bad"
INCONCLUSIVE = "inconclusive"

COVERING_NOTE = ("good means: orbi-isomorphic to quotient(C, G) for some configuration C "
                 "and subgroup G of Aut(C)")


@dataclass
class GoodBadVerdict:
    status: str
    reason: str | None = None
    witness: Configuration | None = None
    group: PermutationGroup | None = None
    isomorphism: tuple | None = None
    form: str | None = None
    bound: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=lambda: [COVERING_NOTE])

    def verify(self, target: OrbiIncidenceStructure) -> bool:
        """Recompute the witness quotient and compare it with ``target``."""
        if self.status != GOOD:
            return False
        return orbi_isomorphic(quotient(self.witness, self.group).structure, target) is not None

    def as_dict(self) -> dict:
        out = {"status": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.form:
            out["form"] = self.form
        if self.witness is not None:
            out["witness"] = str(self.witness.params)
            out["group_order"] = self.group.order
            out["generators"] = " ".join(str(g) for g in self.group.generators) or "()"
        out.update(self.bound)
        return out


def _structure(oc) -> OrbiIncidenceStructure:
    return getattr(oc, "structure", oc)


def integrality_check(oc) -> str | None:
    """A bad-reason when some s(i) or t(j) is not an integer >= 2, else ``None``.

    A quotient keeps the s and t of its cover, and a configuration has
    integer s, t >= 2, so such structures are never quotients.
    """
    p = orbi_params(_structure(oc))
    for name, values in (("s", p.s), ("t", p.t)):
        for k, v in enumerate(values, start=1):
            if v.denominator != 1:
                return f"integrality: {name}({k}) = {v} is not an integer"
            if v < 2:
                return f"integrality: {name}({k}) = {v} is less than 2"
    return None


def rotation(k: int, step: int = 1) -> Permutation:
    return Permutation(tuple((x - 1 + step) % k + 1 for x in range(1, k + 1)))


def vertex_reflection(k: int) -> Permutation:
    """Reflection of the k-gon fixing vertex 1."""
    return Permutation(tuple((1 - x) % k + 1 for x in range(1, k + 1)))


def edge_reflection(k: int) -> Permutation:
    """Reflection of the k-gon fixing the edge {1, 2}."""
    return Permutation(tuple((2 - x) % k + 1 for x in range(1, k + 1)))


def _n2_templates(points: int):
    """Candidate ``(form, k, generators)`` witnesses for a non-plain quotient on ``points`` points."""
    if points == 1:
        yield "loop", 3, [rotation(3)]
    if points == 2:
        yield "bigon", 4, [rotation(4, 2)]
    if points >= 3:
        k = 2 * (points - 1)
        yield "chain point-point", k, [vertex_reflection(k)]
    if points >= 2:
        k = 2 * points - 1
        yield "chain point-line", k, [vertex_reflection(k)]
        k = 2 * points
        yield "chain line-line", k, [edge_reflection(k)]


def _as_configuration(structure: OrbiIncidenceStructure) -> Configuration | None:
    if not structure.is_plain():
        return None
    try:
        return Configuration(structure.to_incidence_structure())
    except ConfigurationError:
        return None


def _require_orbiconfiguration(structure: OrbiIncidenceStructure):
    if classify(structure) != Level.ORBICONFIGURATION:
        raise OrbiStructureError(f"input is only an {classify(structure)}")
    defects = structure.defects()
    if defects:
        raise OrbiStructureError("; ".join(defects))


def classify_n2(oc) -> GoodBadVerdict:
    """Decide goodness of an orbiconfiguration with ``s = t = 2``."""
    structure = _structure(oc)
    _require_orbiconfiguration(structure)
    p = orbi_params(structure)
    if p.s[0] != 2 or p.t[0] != 2:
        raise OrbiStructureError(f"classify_n2 needs s = t = 2, got s = {p.s[0]}, t = {p.t[0]}")
    config = _as_configuration(structure)
    if config is not None:
        iso = orbi_isomorphic(quotient(config, PermutationGroup.trivial(config.n)).structure, structure)
        return GoodBadVerdict(GOOD, "n2_classification", config,
                              PermutationGroup.trivial(config.n), iso, form="polygon")
    if not structure.is_connected():
        return GoodBadVerdict(BAD, "n2_classification", form="disconnected")
    for form, k, gens in _n2_templates(structure.point_count):
        group = PermutationGroup.generate(gens, k)
        iso = orbi_isomorphic(quotient(polygon(k), group).structure, structure)
        if iso is not None:
            return GoodBadVerdict(GOOD, "n2_classification", polygon(k), group, iso, form=form)
    return GoodBadVerdict(BAD, "n2_classification", form="not a polygon quotient")


def _candidate_covers(points: int, s: int, t: int, families, catalog):
    if points < 3:
        return
    if "polygon" in families and s == t == 2:
        yield polygon(points)
        return
    seen: list[Configuration] = []
    if "mod" in families:
        for cand in _mod_candidates(points, s, t):
            if all(find_isomorphism(cand, other) is None for other in seen):
                seen.append(cand)
                yield cand
    if "catalog" in families:
        for cand in catalog:
            if (cand.n, cand.s, cand.t) == (points, s, t):
                yield cand


def good_search(oc, max_degree: int = 6, catalog=(), *, classify_fallback: bool = True,
                families=("polygon", "mod", "catalog"),
                budget: int | None = 10**6) -> GoodBadVerdict:
    """Look for a configuration and group whose quotient is ``oc``.

    Degrees ``k`` run from 1 to ``max_degree``; a degree is tried when
    ``k * n`` is an integer and every point weight divides ``k``.  Covers
    with ``k * n`` points come from the requested ``families``: polygons
    (when s = t = 2), single-base-line mod-notation families (when s = t)
    and the configurations in ``catalog``.  Without a witness the answer
    is bad only if a complete argument applies: the integrality test, or
    the ``s = t = 2`` classification when ``classify_fallback`` is set.
    """
    structure = _structure(oc)
    _require_orbiconfiguration(structure)
    reason = integrality_check(structure)
    if reason:
        return GoodBadVerdict(BAD, reason)
    p = orbi_params(structure)
    s, t = int(p.s[0]), int(p.t[0])
    config = _as_configuration(structure)
    if config is not None:
        trivial = PermutationGroup.trivial(config.n)
        iso = orbi_isomorphic(quotient(config, trivial).structure, structure)
        return GoodBadVerdict(GOOD, "search", config, trivial, iso, form="configuration")
    lcm_a = reduce(lambda x, y: x * y // gcd(x, y), structure.weights)
    tried = []
    exhausted = True
    for k in range(1, max_degree + 1):
        points = k * p.n
        if points.denominator != 1 or k % lcm_a:
            continue
        tried.append(k)
        for cand in _candidate_covers(int(points), s, t, families, catalog):
            try:
                aut = automorphism_group(cand, budget=budget)
                lattice = subgroups(aut, k)
            except BudgetExceeded:
                exhausted = False
                continue
            exhausted = exhausted and lattice.complete
            for group in lattice.of_order(k):
                iso = orbi_isomorphic(quotient(cand, group).structure, structure)
                if iso is not None:
                    return GoodBadVerdict(GOOD, "search", cand, group, iso, form="search",
                                          bound={"degree": k})
    bound = {"max_degree": max_degree, "degrees_tried": tried, "families": list(families),
             "complete_within_bound": exhausted}
    if classify_fallback and s == t == 2:
        verdict = classify_n2(structure)
        verdict.bound.update(bound)
        return verdict
    return GoodBadVerdict(INCONCLUSIVE, "bound_exhausted", bound=bound)


def _n2_line_types(weights, ratios):
    """Lines with t = 2 whose ratio keeps every endpoint's s at most 2."""
    n = len(weights)
    types = []
    for x in range(1, n + 1):
        for y in range(x, n + 1):
            for r in ratios:
                if x == y and 2 * weights[x - 1] * r <= 2:
                    types.append(OrbiLine(((x, 2),), r.denominator, r.numerator))
                elif x != y and max(weights[x - 1], weights[y - 1]) * r <= 2:
                    types.append(OrbiLine(((x, 1), (y, 1)), r.denominator, r.numerator))
    # Every line through p has its smallest point <= p, so p's s is final
    # once the types starting at p are decided.
    types.sort(key=lambda l: (min(l.support), l))
    return types


def _closed_off(p: int, n: int, chosen) -> bool:
    """True when the lines so far leave a component inside 1..p short of all points."""
    adj: dict[int, set[int]] = {}
    for line in chosen:
        pts = list(line.support)
        for x in pts:
            adj.setdefault(x, set()).update(pts)
    seen, stack = {p}, [p]
    while stack:
        for y in adj.get(stack.pop(), ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return max(seen) <= p and len(seen) < n


def _n2_structures(weights, ratios, connected=False):
    n = len(weights)
    types = _n2_line_types(weights, ratios)
    # Integer arithmetic: every s contribution is scaled by the lcm of the denominators.
    scale = reduce(lambda x, y: x * y // gcd(x, y), (r.denominator for r in ratios), 1)
    target = 2 * scale
    adds = [[(q, int(weights[q - 1] * c * line.ratio * scale)) for q, c in line.incidences]
            for line in types]
    starts = [min(line.support) for line in types]
    closes = {p: k for k, p in enumerate(starts)}
    # reach[k]: most that types k.. of the same starting point can still add to it.
    reach = [0] * (len(types) + 1)
    best: dict = {}
    for k in range(len(types) - 1, -1, -1):
        line, p = types[k], starts[k]
        if k + 1 < len(types) and starts[k + 1] != p:
            best = {}
        own = dict(adds[k])[p]
        best[line.support] = max(best.get(line.support, 0), own)
        reach[k] = sum(best.values())
    load = [0] * (n + 1)
    chosen: list[OrbiLine] = []
    # With t = 2 the support fixes the incidence record, so one line per support.
    pairs: set[frozenset] = set()

    def rec(k):
        if k > 0:
            p = starts[k - 1]
            if closes[p] == k - 1 and (load[p] != target
                                       or connected and _closed_off(p, n, chosen)):
                return
        if k < len(types) and load[starts[k]] + reach[k] < target:
            return
        if k == len(types):
            if all(load[q] == target for q in range(1, n + 1)):
                yield OrbiIncidenceStructure(tuple(weights), tuple(chosen))
            return
        yield from rec(k + 1)
        line = types[k]
        pair = line.support
        if pair in pairs:
            return
        add = adds[k]
        if any(load[q] + x > target for q, x in add):
            return
        for q, x in add:
            load[q] += x
        chosen.append(line)
        pairs.add(pair)
        yield from rec(k + 1)
        pairs.discard(pair)
        chosen.pop()
        for q, x in add:
            load[q] -= x

    yield from rec(0)


def _wl_invariant(structure: OrbiIncidenceStructure, intern: dict, rounds: int = 3) -> tuple:
    # Colour refinement with colours interned in a table shared across
    # structures, so the final colour multisets are comparable.
    n = structure.point_count
    inc = [dict(l.incidences) for l in structure.lines]
    colors = [intern.setdefault(("a", a), len(intern)) for a in structure.weights]
    for _ in range(rounds):
        sig = []
        for i in range(1, n + 1):
            nbr = tuple(sorted((l.b, l.d, inc[j - 1][i],
                                tuple(sorted((colors[q - 1], c) for q, c in l.incidences)))
                               for j in structure.lines_through[i] for l in (structure.lines[j - 1],)))
            sig.append((colors[i - 1], nbr))
        colors = [intern.setdefault(x, len(intern)) for x in sig]
    return tuple(sorted(colors))


def enumerate_n2(max_points: int = 4, max_weight: int = 4, *, connected: bool = False,
                 max_weight_sum: int | None = None) -> list[OrbiIncidenceStructure]:
    """Orbiconfigurations with s = t = 2, one per isomorphism class.

    Every structure with at most ``max_points`` points and all of a, b, d
    at most ``max_weight`` is represented; disconnected ones are skipped
    when ``connected`` is set, and ``max_weight_sum`` caps the total point
    weight.
    Only structures satisfying the gcd and b-or-d conditions are produced.
    """
    ratios = sorted({Fraction(d, b) for b in range(1, max_weight + 1)
                     for d in range(1, max_weight + 1) if b == 1 or d == 1})
    out = []
    intern: dict = {}
    for npts in range(1, max_points + 1):
        for weights in combinations_with_replacement(range(1, max_weight + 1), npts):
            if reduce(gcd, weights) != 1:
                continue
            if max_weight_sum is not None and sum(weights) > max_weight_sum:
                continue
            buckets: dict[tuple, list[OrbiIncidenceStructure]] = {}
            for structure in _n2_structures(weights, ratios, connected):
                bucket = buckets.setdefault(_wl_invariant(structure, intern), [])
                if all(orbi_isomorphic(structure, rep) is None for rep in bucket):
                    bucket.append(structure)
                    out.append(structure)
    return out
