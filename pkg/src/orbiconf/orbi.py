"""Orbi-incidence structures: weighted points and lines with exact parameters.

Point ``i`` carries a weight ``a(i)``; line ``j`` carries ``b(j)``, a
multiplicity ``d(j)`` and incidence multiplicities ``c(i, j)``.  The
aggregate parameters are exact rationals::

    n    = sum_i 1 / a(i)
    m    = sum_j d(j) / b(j)
    t(j) = sum_i c(i, j)
    s(i) = a(i) * sum_j c(i, j) * d(j) / b(j)

``t(j)`` deliberately has no ``d(j)`` factor: with it, the quotient of a
square by its half-turn would get t = 4 rather than the t = 2 of the square.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations, permutations, product
from math import factorial, gcd
from typing import Iterable, Mapping

from .errors import BudgetExceeded, OrbiStructureError
from .groups import Permutation, PermutationGroup, line_permutation, is_automorphism, orbits
from .incidence import Configuration, IncidenceStructure, LeviGraph

T_FORMULA_NOTE = "t(j) = sum_i c(i,j), without a d(j) factor"


@dataclass(frozen=True, order=True)
class OrbiLine:
    """A weighted line: ``incidences`` is a sorted tuple of ``(point, c)``."""

    incidences: tuple[tuple[int, int], ...]
    b: int = 1
    d: int = 1

    def __post_init__(self):
        inc = self.incidences
        if isinstance(inc, Mapping):
            inc = inc.items()
        inc = tuple(sorted((int(p), int(c)) for p, c in inc))
        object.__setattr__(self, "incidences", inc)
        if not inc:
            raise OrbiStructureError("a line needs at least one incident point")
        if len({p for p, _ in inc}) != len(inc):
            raise OrbiStructureError(f"repeated point on line {inc}")
        if any(c < 1 for _, c in inc):
            raise OrbiStructureError("stored incidence multiplicities must be >= 1")
        if self.b < 1 or self.d < 1:
            raise OrbiStructureError("b and d must be positive")

    @classmethod
    def of(cls, incidences: Mapping[int, int] | Iterable[int], b: int = 1, d: int = 1) -> OrbiLine:
        if not isinstance(incidences, Mapping):
            incidences = Counter(incidences)
        return cls(tuple(incidences.items()), b, d)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.incidences)

    def c(self, point: int) -> int:
        return dict(self.incidences).get(point, 0)

    @property
    def size(self) -> int:
        return sum(c for _, c in self.incidences)

    @property
    def ratio(self) -> Fraction:
        """The line's contribution d/b to m."""
        return Fraction(self.d, self.b)


@dataclass(frozen=True)
class OrbiIncidenceStructure:
    """Point weights ``a(1..n')`` and weighted lines.

    Construction rejects malformed data (non-positive weights, unknown
    points, two lines with identical records).  The gcd and b-or-d
    conditions are reported by :meth:`defects`, so quotients that break them
    can still be represented and inspected.
    """

    weights: tuple[int, ...]
    lines: tuple[OrbiLine, ...]

    def __post_init__(self):
        weights = tuple(int(a) for a in self.weights)
        lines = tuple(self.lines)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "lines", lines)
        if not weights:
            raise OrbiStructureError("no points")
        if any(a < 1 for a in weights):
            raise OrbiStructureError("point weights must be positive")
        for j, line in enumerate(lines, start=1):
            if not isinstance(line, OrbiLine):
                raise OrbiStructureError(f"line {j} is not an OrbiLine")
            for p, _ in line.incidences:
                if not 1 <= p <= len(weights):
                    raise OrbiStructureError(f"line {j} uses unknown point {p}")
        dup = [k for k, v in Counter(lines).items() if v > 1]
        if dup:
            raise OrbiStructureError(f"duplicate line record {dup[0]}; merge it via d")

    @classmethod
    def from_configuration(cls, config: Configuration | IncidenceStructure) -> OrbiIncidenceStructure:
        structure = config.structure if isinstance(config, Configuration) else config
        return cls((1,) * structure.point_count,
                   tuple(OrbiLine.of(dict.fromkeys(line, 1)) for line in structure.lines))

    @property
    def point_count(self) -> int:
        return len(self.weights)

    @property
    def line_count(self) -> int:
        return len(self.lines)

    def defects(self) -> list[str]:
        out = []
        g = reduce(gcd, self.weights)
        if g != 1:
            out.append(f"gcd: point weights share the factor {g}")
        for j, line in enumerate(self.lines, start=1):
            if line.b != 1 and line.d != 1:
                out.append(f"b_d: line {j} has b={line.b} and d={line.d}")
        return out

    def is_plain(self) -> bool:
        return (set(self.weights) == {1} and all(l.b == 1 and l.d == 1 for l in self.lines)
                and all(c == 1 for l in self.lines for _, c in l.incidences))

    def to_incidence_structure(self) -> IncidenceStructure:
        return IncidenceStructure(self.point_count, tuple(l.support for l in self.lines))

    def canonical(self) -> OrbiIncidenceStructure:
        """Lines sorted; point numbering unchanged."""
        return OrbiIncidenceStructure(self.weights, tuple(sorted(self.lines)))

    def relabel(self, point_images) -> OrbiIncidenceStructure:
        """Point ``i`` becomes ``point_images[i-1]``."""
        weights = [0] * self.point_count
        for i, a in enumerate(self.weights, start=1):
            weights[point_images[i - 1] - 1] = a
        lines = tuple(OrbiLine(tuple((point_images[p - 1], c) for p, c in l.incidences), l.b, l.d)
                      for l in self.lines)
        return OrbiIncidenceStructure(tuple(weights), lines)

    @cached_property
    def lines_through(self) -> tuple[tuple[int, ...], ...]:
        through: list[list[int]] = [[] for _ in range(self.point_count + 1)]
        for j, line in enumerate(self.lines, start=1):
            for p, _ in line.incidences:
                through[p].append(j)
        return tuple(tuple(x) for x in through)

    def is_connected(self) -> bool:
        seen = {1}
        stack = [1]
        while stack:
            p = stack.pop()
            for j in self.lines_through[p]:
                for q in self.lines[j - 1].support:
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
        return len(seen) == self.point_count


@dataclass(frozen=True)
class OrbiParams:
    n: Fraction
    m: Fraction
    s: tuple[Fraction, ...]
    t: tuple[Fraction, ...]
    notes: tuple[str, ...] = (T_FORMULA_NOTE,)

    @property
    def s_constant(self) -> bool:
        return len(set(self.s)) <= 1

    @property
    def t_constant(self) -> bool:
        return len(set(self.t)) <= 1


def orbi_params(structure: OrbiIncidenceStructure) -> OrbiParams:
    a = structure.weights
    n = sum((Fraction(1, x) for x in a), Fraction(0))
    m = sum((line.ratio for line in structure.lines), Fraction(0))
    t = tuple(Fraction(line.size) for line in structure.lines)
    s = [Fraction(0)] * structure.point_count
    for line in structure.lines:
        for p, c in line.incidences:
            s[p - 1] += c * line.ratio
    s = tuple(a[i] * s[i] for i in range(len(a)))
    return OrbiParams(n, m, s, t)


def pair_axiom_witness(structure: OrbiIncidenceStructure) -> tuple[int, int, int, int] | None:
    """``(p, q, j1, j2)`` for two distinct points sharing two distinct lines, else ``None``."""
    owner: dict[tuple[int, int], int] = {}
    for j, line in enumerate(structure.lines, start=1):
        for pair in combinations(sorted(line.support), 2):
            if pair in owner:
                return (*pair, owner[pair], j)
            owner[pair] = j
    return None


class Level(enum.IntEnum):
    STRUCTURE = 0
    GEOMETRY = 1
    ORBICONFIGURATION = 2

    def __str__(self):
        return {0: "orbi-incidence structure", 1: "orbi-incidence geometry",
                2: "orbiconfiguration"}[self.value]


def classify(structure: OrbiIncidenceStructure) -> Level:
    if pair_axiom_witness(structure) is not None:
        return Level.STRUCTURE
    p = orbi_params(structure)
    if p.s_constant and p.t_constant:
        return Level.ORBICONFIGURATION
    return Level.GEOMETRY


@dataclass(frozen=True)
class Orbiconfiguration:
    structure: OrbiIncidenceStructure
    n: Fraction
    m: Fraction
    s: Fraction
    t: Fraction

    @classmethod
    def of(cls, structure: OrbiIncidenceStructure) -> Orbiconfiguration:
        if pair_axiom_witness(structure) is not None:
            raise OrbiStructureError("pair axiom fails")
        p = orbi_params(structure)
        if not (p.s_constant and p.t_constant):
            raise OrbiStructureError("s or t is not constant")
        oc = cls(structure, p.n, p.m, p.s[0], p.t[0])
        assert oc.n * oc.s == oc.m * oc.t
        return oc


@dataclass
class QuotientResult:
    """A quotient together with where everything came from.

    ``point_map[p-1]`` is the quotient point of cover point ``p``;
    ``line_groups[j-1]`` lists the line orbits (indices into ``line_orbits``)
    merged into quotient line ``j``.
    """

    structure: OrbiIncidenceStructure
    group_order: int
    point_orbits: tuple[tuple[int, ...], ...]
    line_orbits: tuple[tuple[int, ...], ...]
    line_groups: tuple[tuple[int, ...], ...]
    point_map: tuple[int, ...]
    flags: list[str] = field(default_factory=list)

    @property
    def n(self) -> Fraction:
        return orbi_params(self.structure).n

    def normalized(self) -> OrbiIncidenceStructure:
        """Divide point weights by their gcd g and multiply line ratios by g."""
        return normalize(self.structure)


def normalize(structure: OrbiIncidenceStructure) -> OrbiIncidenceStructure:
    g = reduce(gcd, structure.weights)
    if g == 1:
        return structure
    lines = []
    for line in structure.lines:
        r = line.ratio * g
        lines.append(OrbiLine(line.incidences, r.denominator, r.numerator))
    return OrbiIncidenceStructure(tuple(a // g for a in structure.weights), tuple(lines))


def quotient(config: Configuration, group: PermutationGroup) -> QuotientResult:
    """Orbit space of ``config`` under ``group`` as an orbi-incidence structure.

    Points are the point orbits, with ``a = |G| / orbit size``.  Line orbits
    with the same incidence record are merged into one line whose
    ``d/b`` is ``(total lines merged) / |G|`` in lowest terms.  ``c`` counts
    the points of a point orbit on one representative line.

    ``flags`` reports merges of stabilized orbits (the split between b and d
    is then not recoverable), lines with both b and d above 1, and point
    weights with a common factor.
    """
    if group.degree != config.n or not all(is_automorphism(g, config) for g in group.generators):
        raise ValueError("group does not act on the configuration by automorphisms")
    G = group.order
    porbits = orbits(group, config, "points").blocks
    lorbits = orbits(group, config, "lines").blocks
    point_map = [0] * config.n
    for i, block in enumerate(porbits, start=1):
        for p in block:
            point_map[p - 1] = i
    weights = tuple(G // len(block) for block in porbits)

    records: dict[tuple, list[int]] = {}
    for k, block in enumerate(lorbits):
        rep = config.lines[block[0] - 1]
        record = tuple(sorted(Counter(point_map[p - 1] for p in rep).items()))
        records.setdefault(record, []).append(k)

    flags: list[str] = []
    lines, groups = [], []
    for record, members in records.items():
        total = sum(len(lorbits[k]) for k in members)
        ratio = Fraction(total, G)
        if len(members) > 1 and any(len(lorbits[k]) < G for k in members):
            flags.append(f"ambiguous_merge: line orbits {members} with stabilizers merged into d/b={ratio}")
        lines.append(OrbiLine(record, ratio.denominator, ratio.numerator))
        groups.append(tuple(members))
    structure = OrbiIncidenceStructure(weights, tuple(lines))
    flags += structure.defects()
    return QuotientResult(structure, G, porbits, lorbits, tuple(groups), tuple(point_map), flags)


@dataclass
class QuotientClaims:
    s_ok: bool
    t_ok: bool
    n_ok: bool
    m_ok: bool
    details: dict

    @property
    def ok(self) -> bool:
        return self.s_ok and self.t_ok and self.n_ok and self.m_ok


def verify_quotient_claims(config: Configuration, group: PermutationGroup,
                           result: QuotientResult) -> QuotientClaims:
    """Check s and t unchanged and n, m divided by |G|, as exact rationals."""
    p = orbi_params(result.structure)
    G = group.order
    return QuotientClaims(
        s_ok=all(x == config.s for x in p.s),
        t_ok=all(x == config.t for x in p.t),
        n_ok=p.n * G == config.n,
        m_ok=p.m * G == config.m,
        details={"n": p.n, "m": p.m, "s": p.s, "t": p.t, "order": G,
                 "cover": (config.n, config.m, config.s, config.t)},
    )


def quotient_configuration(result: QuotientResult, config: Configuration):
    """The covered configuration and covering map for a plain quotient.

    Returns ``None`` unless every weight and multiplicity is 1 and the
    quotient lines form a configuration.
    """
    from .covering import verify_covering
    from .errors import ConfigurationError, CoveringError

    if not result.structure.is_plain():
        return None
    try:
        base = Configuration(result.structure.to_incidence_structure())
        return base, verify_covering(config, base, result.point_map)
    except (ConfigurationError, CoveringError):
        return None


def orbi_dual(structure: OrbiIncidenceStructure) -> OrbiIncidenceStructure:
    """Exchange points and lines, carrying weights along.

    Line ``j`` becomes ``d(j)`` points of weight ``b(j)``; point ``i`` becomes
    a line of weight ``a(i)``.  The incidence multiplicity between them is
    ``c(i, j) * a(i) / b(j)``: the number of lines of the orbit of ``l_j``
    through one point over ``p_i``.  For plain data this is the usual dual.
    Dual lines with identical incidences merge with ``d/b`` equal to the sum
    of their ratios.
    """
    a = structure.weights
    new_weights: list[int] = []
    copies: list[list[int]] = []
    for line in structure.lines:
        start = len(new_weights) + 1
        new_weights += [line.b] * line.d
        copies.append(list(range(start, start + line.d)))
    merged: dict[tuple, Fraction] = {}
    for i in range(1, structure.point_count + 1):
        inc = []
        for j in structure.lines_through[i]:
            line = structure.lines[j - 1]
            c = Fraction(line.c(i) * a[i - 1], line.b)
            if c.denominator != 1:
                raise OrbiStructureError(
                    f"dual incidence of point {i} and line {j} is {c}, not an integer")
            inc += [(q, int(c)) for q in copies[j - 1]]
        key = tuple(sorted(inc))
        merged[key] = merged.get(key, Fraction(0)) + Fraction(1, a[i - 1])
    lines = []
    for inc, ratio in merged.items():
        if ratio.numerator != 1 and ratio.denominator != 1:
            raise OrbiStructureError(f"dual line {inc} would need d/b = {ratio}, with neither b nor d equal to 1")
        lines.append(OrbiLine(inc, ratio.denominator, ratio.numerator))
    return OrbiIncidenceStructure(tuple(new_weights), tuple(lines))


def _point_profiles(structure: OrbiIncidenceStructure) -> list[tuple]:
    local: list[list[tuple]] = [[] for _ in range(structure.point_count + 1)]
    for l in structure.lines:
        size, k = l.size, len(l.incidences)
        for p, c in l.incidences:
            local[p].append((l.b, l.d, c, size, k))
    return [(a, tuple(sorted(local[i]))) for i, a in enumerate(structure.weights, start=1)]


def _refined_colors(structure: OrbiIncidenceStructure) -> list[int]:
    # Colour refinement on points; isomorphisms preserve the final colours.
    prof = _point_profiles(structure)
    palette = {x: k for k, x in enumerate(sorted(set(prof)))}
    colors = [palette[x] for x in prof]
    while True:
        sig = []
        for i in range(1, structure.point_count + 1):
            nbr = sorted((l.b, l.d, l.c(i), tuple(sorted((colors[q - 1], c) for q, c in l.incidences)))
                         for l in (structure.lines[j - 1] for j in structure.lines_through[i]))
            sig.append((colors[i - 1], tuple(nbr)))
        palette = {x: k for k, x in enumerate(sorted(set(sig)))}
        new = [palette[x] for x in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _labelings(classes: list[list[int]], n: int, max_labelings: int):
    total = 1
    for block in classes:
        total *= factorial(len(block))
    if total > max_labelings:
        raise BudgetExceeded("canonical form", max_labelings, total)
    for choice in product(*(permutations(block) for block in classes)):
        img = [0] * (n + 1)
        label = 1
        for block in choice:
            for p in block:
                img[p] = label
                label += 1
        yield img


def orbi_isomorphic(o1: OrbiIncidenceStructure, o2: OrbiIncidenceStructure, *,
                    budget: int | None = None):
    """Weight-preserving bijections ``(point_map, line_map)`` from ``o1`` to ``o2``, or ``None``.

    Point ``i`` of ``o1`` goes to ``point_map[i-1]``; line ``j`` to ``line_map[j-1]``.
    """
    if (o1.point_count, o1.line_count) != (o2.point_count, o2.line_count):
        return None
    if sorted(o1.weights) != sorted(o2.weights):
        return None
    if sorted((l.b, l.d, tuple(sorted(c for _, c in l.incidences))) for l in o1.lines) != \
       sorted((l.b, l.d, tuple(sorted(c for _, c in l.incidences))) for l in o2.lines):
        return None
    prof1, prof2 = _point_profiles(o1), _point_profiles(o2)
    if sorted(prof1) != sorted(prof2):
        return None
    n = o1.point_count
    records2 = {(l.incidences, l.b, l.d): j for j, l in enumerate(o2.lines, start=1)}
    cand = [[q for q in range(1, n + 1) if prof2[q - 1] == prof1[p - 1]] for p in range(1, n + 1)]
    # Order points so each new one shares a line with an assigned one when possible.
    order, seen = [], set()
    for root in sorted(range(1, n + 1), key=lambda p: len(cand[p - 1])):
        if root in seen:
            continue
        stack = [root]
        seen.add(root)
        while stack:
            p = stack.pop(0)
            order.append(p)
            for j in o1.lines_through[p]:
                for q in sorted(o1.lines[j - 1].support):
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
    position = {p: k for k, p in enumerate(order)}
    # Lines become checkable once their last point (in search order) is placed.
    closes_at: dict[int, list[OrbiLine]] = {}
    for line in o1.lines:
        last = max(line.support, key=position.__getitem__)
        closes_at.setdefault(last, []).append(line)
    img = [0] * (n + 1)
    used = [False] * (n + 1)
    nodes = 0

    def extend(k: int) -> bool:
        nonlocal nodes
        if k == n:
            return True
        p = order[k]
        for q in cand[p - 1]:
            if used[q]:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded("orbi isomorphism search", budget, nodes)
            img[p] = q
            ok = all(
                (tuple(sorted((img[x], c) for x, c in line.incidences)), line.b, line.d) in records2
                for line in closes_at.get(p, ()))
            if ok:
                used[q] = True
                if extend(k + 1):
                    return True
                used[q] = False
            img[p] = 0
        return False

    if not extend(0):
        return None
    point_map = tuple(img[1:])
    line_map = tuple(records2[(tuple(sorted((point_map[x - 1], c) for x, c in l.incidences)), l.b, l.d)]
                     for l in o1.lines)
    return point_map, line_map


def orbi_canonical_form(structure: OrbiIncidenceStructure, max_labelings: int = 10**5) -> tuple:
    """A complete isomorphism invariant (exponential in tied colour classes)."""
    colors = _refined_colors(structure)
    n = structure.point_count
    classes: dict[int, list[int]] = {}
    for p in range(1, n + 1):
        classes.setdefault(colors[p - 1], []).append(p)
    best = None
    for img in _labelings([classes[k] for k in sorted(classes)], n, max_labelings):
        weights = [0] * n
        for p in range(1, n + 1):
            weights[img[p] - 1] = structure.weights[p - 1]
        lines = tuple(sorted((l.b, l.d, tuple(sorted((img[p], c) for p, c in l.incidences)))
                             for l in structure.lines))
        form = (tuple(weights), lines)
        if best is None or form < best:
            best = form
    return best


def orbi_levi(structure: OrbiIncidenceStructure) -> LeviGraph:
    """Levi graph with weights as labels, d-fold line copies and c-fold edges."""
    edges = tuple((p, j, c) for j, line in enumerate(structure.lines, start=1)
                  for p, c in line.incidences)
    return LeviGraph(structure.weights, tuple(l.b for l in structure.lines),
                     tuple(l.d for l in structure.lines), edges)


def levi_canonical_form(graph: LeviGraph, max_labelings: int = 10**5) -> tuple:
    """Isomorphism invariant of an annotated Levi graph.

    Line nodes are anonymous here: each copy of a line contributes one node
    described by its label and its edge multiset, so only the graph itself,
    not its grouping into lines, enters the form.
    """
    n = graph.point_node_count
    nbrs: dict[int, list[tuple[int, int]]] = {}
    for p, j, c in graph.edges:
        nbrs.setdefault(j, []).append((p, c))
    nodes = []
    for j, copies in enumerate(graph.line_copies, start=1):
        nodes += [(graph.line_weights[j - 1], tuple(sorted(nbrs.get(j, []))))] * copies
    by_weight: dict[int, list[int]] = {}
    for p in range(1, n + 1):
        by_weight.setdefault(graph.point_weights[p - 1], []).append(p)
    best = None
    for img in _labelings([by_weight[k] for k in sorted(by_weight)], n, max_labelings):
        form = (tuple(sorted(graph.point_weights)),
                tuple(sorted((w, tuple(sorted((img[p], c) for p, c in e))) for w, e in nodes)))
        if best is None or form < best:
            best = form
    return best


@dataclass
class LeviScanReport:
    max_points: int
    max_weight: int
    max_st: int
    structures: int
    orbi_classes: int
    levi_classes: int
    counterexample: tuple[OrbiIncidenceStructure, OrbiIncidenceStructure] | None
    complete: bool


def enumerate_orbiconfigurations(max_points: int, max_weight: int, max_st: int,
                                 *, limit: int | None = None) -> Iterable[OrbiIncidenceStructure]:
    """Orbiconfigurations with at most ``max_points`` points, every a, b, c, d
    at most ``max_weight`` and constant s, t at most ``max_st``.

    Point weights are listed in ascending order; other isomorphic copies
    are not removed.  Each incidence record is used by at most one line, the
    normal form produced by quotients (equal records merge into one line).
    """
    count = 0
    ratios = sorted({(b, d) for b in range(1, max_weight + 1) for d in range(1, max_weight + 1)
                     if b == 1 or d == 1})
    for npts in range(1, max_points + 1):
        for weights in product(range(1, max_weight + 1), repeat=npts):
            if list(weights) != sorted(weights) or reduce(gcd, weights) != 1:
                continue
            for t in range(1, max_st + 1):
                types = []
                for r in range(1, npts + 1):
                    for support in combinations(range(1, npts + 1), r):
                        for cs in product(range(1, max_weight + 1), repeat=r):
                            if sum(cs) != t:
                                continue
                            for b, d in ratios:
                                types.append(OrbiLine(tuple(zip(support, cs)), b, d))
                for structure in _choose_lines(weights, types, max_st):
                    count += 1
                    yield structure
                    if limit is not None and count >= limit:
                        return


def _choose_lines(weights, types, max_st):
    npts = len(weights)
    load = [Fraction(0)] * (npts + 1)
    pairs_used: set[tuple[int, int]] = set()
    records_used: set[tuple] = set()
    chosen: list[OrbiLine] = []
    cap = Fraction(max_st)

    def rec(k):
        if k == len(types):
            if not chosen:
                return
            s_vals = {weights[i - 1] * load[i] for i in range(1, npts + 1)}
            if len(s_vals) == 1 and 0 not in s_vals:
                yield OrbiIncidenceStructure(tuple(weights), tuple(chosen))
            return
        yield from rec(k + 1)
        line = types[k]
        pairs = list(combinations(sorted(line.support), 2))
        if line.incidences in records_used or any(pr in pairs_used for pr in pairs):
            return
        add = [(p, c * line.ratio) for p, c in line.incidences]
        if any(weights[p - 1] * (load[p] + x) > cap for p, x in add):
            return
        for p, x in add:
            load[p] += x
        pairs_used.update(pairs)
        records_used.add(line.incidences)
        chosen.append(line)
        yield from rec(k + 1)
        chosen.pop()
        records_used.discard(line.incidences)
        pairs_used.difference_update(pairs)
        for p, x in add:
            load[p] -= x

    yield from rec(0)


def levi_conjecture_scan(max_points: int = 3, max_weight: int = 2, max_st: int = 2, *,
                         limit: int | None = 200_000) -> LeviScanReport:
    """Search small orbiconfigurations for two that share an annotated Levi
    graph without being isomorphic.

    The bound covers every orbiconfiguration with at most ``max_points``
    points, all of a, b, c, d at most ``max_weight``, and constant s, t at
    most ``max_st``.
    """
    levi_to_orbi: dict[tuple, tuple] = {}
    witnesses: dict[tuple, OrbiIncidenceStructure] = {}
    orbi_forms = set()
    count = 0
    complete = True
    counterexample = None
    for structure in enumerate_orbiconfigurations(max_points, max_weight, max_st):
        if limit is not None and count >= limit:
            complete = False
            break
        count += 1
        of = orbi_canonical_form(structure)
        if of in orbi_forms:
            continue
        orbi_forms.add(of)
        lf = levi_canonical_form(orbi_levi(structure))
        if lf in levi_to_orbi and levi_to_orbi[lf] != of and counterexample is None:
            counterexample = (witnesses[lf], structure)
        levi_to_orbi.setdefault(lf, of)
        witnesses.setdefault(lf, structure)
    return LeviScanReport(max_points, max_weight, max_st, count, len(orbi_forms),
                          len(levi_to_orbi), counterexample, complete)
