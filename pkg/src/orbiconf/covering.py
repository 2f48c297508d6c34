"""Covering maps between configurations.

A covering ``q: cover -> base`` is a point map whose fibers all have the same
size (the degree), which sends every cover line bijectively onto a base
line.  Incidence is then preserved automatically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import lcm
from typing import Mapping, Sequence

from .errors import BudgetExceeded, ConfigurationError, CoveringError
from .groups import Permutation, PermutationGroup, is_automorphism, _small_generating_set
from .incidence import (Configuration, find_isomorphism, from_mod_notation,
                        iter_isomorphisms)


@dataclass(frozen=True)
class CoveringMap:
    cover: Configuration
    base: Configuration
    point_map: tuple[int, ...]
    line_map: tuple[int, ...]
    degree: int

    def __call__(self, p: int) -> int:
        return self.point_map[p - 1]

    def fiber(self, base_point: int) -> tuple[int, ...]:
        return tuple(p for p, x in enumerate(self.point_map, start=1) if x == base_point)

    def fibers(self) -> list[tuple[int, ...]]:
        return [self.fiber(x) for x in self.base.structure.points]

    def line_fiber(self, base_line: int) -> tuple[int, ...]:
        return tuple(j for j, x in enumerate(self.line_map, start=1) if x == base_line)

    @property
    def surjective_on_lines(self) -> bool:
        return set(self.line_map) == set(range(1, self.base.m + 1))

    @property
    def uniform_line_fibers(self) -> bool:
        sizes = {len(self.line_fiber(j)) for j in range(1, self.base.m + 1)}
        return len(sizes) == 1

    @property
    def preserves_parameters(self) -> bool:
        return (self.cover.s, self.cover.t) == (self.base.s, self.base.t)

    def then(self, other: CoveringMap) -> CoveringMap:
        """The composite ``other o self`` (first this map, then ``other``)."""
        if other.cover != self.base:
            raise ValueError("maps do not compose: base of the first is not the cover of the second")
        return verify_covering(self.cover, other.base, [other(x) for x in self.point_map])


def _as_point_map(point_map, n: int) -> tuple[int, ...]:
    if isinstance(point_map, Mapping):
        missing = [p for p in range(1, n + 1) if p not in point_map]
        if missing:
            raise CoveringError(f"point map is not total: point {missing[0]} has no image", missing[0])
        return tuple(int(point_map[p]) for p in range(1, n + 1))
    values = tuple(int(x) for x in point_map)
    if len(values) != n:
        raise CoveringError(f"point map has {len(values)} entries for {n} cover points")
    return values


def verify_covering(cover: Configuration, base: Configuration, point_map) -> CoveringMap:
    """Validate ``point_map`` (sequence indexed from point 1, or a mapping).

    Raises :class:`CoveringError` carrying a witness: a base point with the
    wrong fiber size, or a cover line whose image is not a base line.
    """
    values = _as_point_map(point_map, cover.n)
    for p, x in enumerate(values, start=1):
        if not 1 <= x <= base.n:
            raise CoveringError(f"point {p} maps to {x}, outside 1..{base.n}", p)
    if cover.n % base.n:
        raise CoveringError(f"degree {cover.n}/{base.n} is not an integer")
    degree = cover.n // base.n
    sizes = [0] * (base.n + 1)
    for x in values:
        sizes[x] += 1
    for x in base.structure.points:
        if sizes[x] != degree:
            raise CoveringError(f"fiber over base point {x} has {sizes[x]} points, expected {degree}", x)
    index = base.structure.line_index
    line_map = []
    for j, line in enumerate(cover.lines, start=1):
        image = [values[p - 1] for p in line]
        if len(set(image)) != len(image):
            raise CoveringError(f"cover line {j} is not mapped injectively", j)
        target = index.get(frozenset(image))
        if target is None:
            raise CoveringError(f"cover line {j} maps to {sorted(image)}, which is not a base line", j)
        line_map.append(target)
    return CoveringMap(cover, base, values, tuple(line_map), degree)


def find_coverings(cover: Configuration, base: Configuration, limit: int | None = None,
                   *, budget: int | None = None) -> list[CoveringMap]:
    """All coverings ``cover -> base`` in lexicographic order of the point map.

    Requires equal ``(s, t)`` and ``base.n | cover.n``; otherwise returns an
    empty list.  Points are assigned in index order with images tried in
    ascending order, pruning on fiber capacity, per-line injectivity and
    consistency of each partially mapped line with a single base line.
    """
    if (cover.s, cover.t) != (base.s, base.t) or cover.n % base.n:
        return []
    n = cover.n
    degree = n // base.n
    join_c = cover.structure.joining_line
    join_b = base.structure.joining_line
    neighbours = [[]] + [[r for r in range(1, p) if (p, r) in join_c] for p in range(1, n + 1)]
    img = [0] * (n + 1)
    load = [0] * (base.n + 1)
    line_map: dict[int, int] = {}
    results: list[CoveringMap] = []
    nodes = 0

    def extend(p: int) -> bool:
        nonlocal nodes
        if p > n:
            results.append(verify_covering(cover, base, img[1:]))
            return limit is not None and len(results) >= limit
        for x in base.structure.points:
            if load[x] == degree:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded("covering search", budget, nodes)
            added = []
            ok = True
            for r in neighbours[p]:
                lb = join_b.get((x, img[r]))
                if lb is None:
                    ok = False
                    break
                lc = join_c[p, r]
                cur = line_map.get(lc)
                if cur is None:
                    line_map[lc] = lb
                    added.append(lc)
                elif cur != lb:
                    ok = False
                    break
            if ok:
                img[p] = x
                load[x] += 1
                if extend(p + 1):
                    return True
                load[x] -= 1
                img[p] = 0
            for lc in added:
                del line_map[lc]
        return False

    extend(1)
    return results


def _fiber_candidates(cm: CoveringMap, base_images: Sequence[int]) -> list[tuple[int, ...]]:
    fibers = {x: cm.fiber(x) for x in cm.base.structure.points}
    return [fibers[base_images[cm(p) - 1]] for p in cm.cover.structure.points]


def covering_translations(cm: CoveringMap) -> PermutationGroup:
    """Automorphisms ``g`` of the cover with ``q o g == q``."""
    ident = tuple(cm.base.structure.points)
    elements = sorted(Permutation._trusted(img) for img in
                      iter_isomorphisms(cm.cover, cm.cover, candidates=_fiber_candidates(cm, ident)))
    gens = _small_generating_set(elements, cm.cover.n)
    return PermutationGroup(cm.cover.n, gens, frozenset(elements))


def lift_automorphism(cm: CoveringMap, g: Permutation) -> list[Permutation]:
    """Every cover automorphism ``f`` with ``q o f == g o q`` (empty if ``g`` does not lift)."""
    if not is_automorphism(g, cm.base):
        raise ValueError(f"{g} is not an automorphism of the base")
    cands = _fiber_candidates(cm, g.images)
    return sorted(Permutation._trusted(img) for img in
                  iter_isomorphisms(cm.cover, cm.cover, candidates=cands))


def project_automorphism(cm: CoveringMap, f: Permutation) -> Permutation | None:
    """The base automorphism ``q f q^-1`` when ``q o f`` is constant on fibers.

    This always succeeds when ``f`` commutes with the covering translations of
    a covering whose translations act transitively on fibers; otherwise the
    fiber condition is checked directly and ``None`` returned if it fails.
    """
    if not is_automorphism(f, cm.cover):
        raise ValueError(f"{f} is not an automorphism of the cover")
    images = [0] * cm.base.n
    for p in cm.cover.structure.points:
        x, y = cm(p), cm(f(p))
        if images[x - 1] == 0:
            images[x - 1] = y
        elif images[x - 1] != y:
            return None
    if sorted(images) != list(range(1, cm.base.n + 1)):
        return None
    g = Permutation(tuple(images))
    return g if is_automorphism(g, cm.base) else None


def commutes_with_translations(cm: CoveringMap, f: Permutation,
                               translations: PermutationGroup | None = None) -> bool:
    translations = translations or covering_translations(cm)
    return all(f * g == g * f for g in translations.generators)


@dataclass
class CommonCover:
    """Outcome of :func:`common_cover_search`.

    ``status`` is ``"found"``, ``"none"`` (proven not to exist) or
    ``"bound_exhausted"`` (nothing within the bound; existence undecided).
    """

    status: str
    cover: Configuration | None = None
    first: CoveringMap | None = None
    second: CoveringMap | None = None
    method: str = ""
    notes: list[str] = field(default_factory=list)


def polygon(k: int) -> Configuration:
    return Configuration(from_mod_notation((1, 2), k))


def residue_map(n_cover: int, n_base: int) -> list[int]:
    return [(x - 1) % n_base + 1 for x in range(1, n_cover + 1)]


def _mod_candidates(points: int, s: int, t: int):
    if s != t:
        return
    for rest in combinations(range(2, points + 1), t - 1):
        try:
            cand = Configuration(from_mod_notation((1,) + rest, points))
        except (ConfigurationError, ValueError):
            continue
        if (cand.m, cand.s, cand.t) == (points, s, t):
            yield cand


def common_cover_search(c1: Configuration, c2: Configuration, max_points: int, *,
                        use_closed_form: bool = True, budget: int | None = None) -> CommonCover:
    """Look for a configuration covering both ``c1`` and ``c2``.

    For two polygons (s = t = 2) the polygon on lcm(n1, n2) points with the
    residue maps is returned directly.  Otherwise candidate covers are the
    inputs themselves and the single-base-line mod-notation families on
    multiples of lcm(n1, n2) points, up to ``max_points``; a miss is reported
    as ``bound_exhausted``, never as nonexistence.
    """
    if (c1.s, c1.t) != (c2.s, c2.t):
        raise ValueError("common covers are searched only for equal (s, t)")
    iso = find_isomorphism(c1, c2)
    if iso is not None:
        ident = verify_covering(c1, c1, list(c1.structure.points))
        return CommonCover("found", c1, ident, verify_covering(c1, c2, iso), "isomorphic")
    s, t = c1.s, c1.t
    L = lcm(c1.n, c2.n)
    if use_closed_form and s == t == 2:
        cover = polygon(L)
        return CommonCover("found", cover, verify_covering(cover, c1, residue_map(L, c1.n)),
                           verify_covering(cover, c2, residue_map(L, c2.n)), "closed_form")
    for points in range(L, max_points + 1, L):
        candidates = [c for c in (c1, c2) if c.n == points]
        for cand in candidates + list(_mod_candidates(points, s, t)):
            first = find_coverings(cand, c1, limit=1, budget=budget)
            if not first:
                continue
            second = find_coverings(cand, c2, limit=1, budget=budget)
            if second:
                return CommonCover("found", cand, first[0], second[0], "search")
    notes = [f"no common cover among mod-notation candidates with at most {max_points} points"]
    if t == 2:
        notes.append("equal-degree regular graphs always have a common finite cover")
    return CommonCover("bound_exhausted", method="search", notes=notes)
