"""Permutations, materialized permutation groups and automorphism machinery.

Groups here are small enough to hold every element, so closure, orbit and
subgroup computations work directly on element sets.  An automorphism is
stored by its action on points; the action on lines is derived on demand.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded
from .incidence import Configuration, IncidenceStructure, iter_isomorphisms

DEFAULT_MAX_ORDER = 10**6
DEFAULT_NODE_BUDGET = 10**6


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``1..degree``; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, cycles: str | Iterable[Iterable[int]], degree: int) -> Permutation:
        """Build from cycle notation, e.g. ``"(1 4)(3 5)"`` or ``[[1, 4], [3, 5]]``."""
        if isinstance(cycles, str):
            text = cycles.strip()
            if re.sub(r"\(\s*[\d\s,]*\)", "", text).strip():
                raise ValueError(f"bad cycle notation: {cycles!r}")
            cycles = [[int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
                      for body in re.findall(r"\(([^)]*)\)", text)]
        images = list(range(1, degree + 1))
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for x in cyc:
                if not 1 <= x <= degree or x in seen:
                    raise ValueError(f"bad cycle entry {x} for degree {degree}")
                seen.add(x)
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                images[x - 1] = y
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition ``self * other``: apply ``other`` first."""
        s = self.images
        return Permutation._trusted(tuple(s[x - 1] for x in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation._trusted(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        out, seen = [], set()
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def order(self) -> int:
        k = 1
        for length in self.cycle_type():
            k = k * length // gcd(k, length)
        return k

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images, start=1) if x == i]

    def on_set(self, points: Iterable[int]) -> frozenset[int]:
        return frozenset(self.images[p - 1] for p in points)

    def __str__(self):
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


def line_permutation(perm: Permutation, structure: IncidenceStructure | Configuration) -> Permutation:
    """The induced permutation of line indices; ``ValueError`` if lines are not preserved."""
    if isinstance(structure, Configuration):
        structure = structure.structure
    index = structure.line_index
    out = []
    for j, line in enumerate(structure.lines, start=1):
        target = index.get(perm.on_set(line))
        if target is None:
            raise ValueError(f"{perm} sends line {j} to a non-line")
        out.append(target)
    return Permutation._trusted(tuple(out))


def is_automorphism(perm: Permutation, structure: IncidenceStructure | Configuration) -> bool:
    if isinstance(structure, Configuration):
        structure = structure.structure
    if perm.degree != structure.point_count:
        return False
    index = structure.line_index
    return all(perm.on_set(line) in index for line in structure.lines)


def _close(start: Iterable[Permutation], generators: Sequence[Permutation],
           max_order: int | None) -> set[Permutation] | None:
    elements = set(start)
    queue = deque(elements)
    while queue:
        x = queue.popleft()
        for g in generators:
            y = g * x
            if y not in elements:
                elements.add(y)
                if max_order is not None and len(elements) > max_order:
                    return None
                queue.append(y)
    return elements


@dataclass(frozen=True)
class PermutationGroup:
    """A finite permutation group with every element materialized."""

    degree: int
    generators: tuple[Permutation, ...]
    elements: frozenset[Permutation] = field(repr=False)

    @classmethod
    def generate(cls, generators: Iterable[Permutation], degree: int | None = None,
                 max_order: int = DEFAULT_MAX_ORDER) -> PermutationGroup:
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for the trivial group")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators act on different degrees")
        elements = _close([Permutation.identity(degree)], gens, max_order)
        if elements is None:
            raise BudgetExceeded("group closure", max_order)
        return cls(degree, gens, frozenset(elements))

    @classmethod
    def trivial(cls, degree: int) -> PermutationGroup:
        return cls(degree, (), frozenset([Permutation.identity(degree)]))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, perm) -> bool:
        return perm in self.elements

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.sorted_elements)

    @cached_property
    def sorted_elements(self) -> tuple[Permutation, ...]:
        return tuple(sorted(self.elements))

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_subgroup_of(self, other: PermutationGroup) -> bool:
        return self.elements <= other.elements

    def cyclic_generator(self) -> Permutation | None:
        """An element generating the whole group, if the group is cyclic."""
        for g in self.sorted_elements:
            if g.order() == self.order:
                return g
        return None

    def is_cyclic(self) -> bool:
        return self.cyclic_generator() is not None

    def __str__(self):
        gens = ", ".join(map(str, self.generators)) or "()"
        return f"<{gens}> of order {self.order}"


def _small_generating_set(elements: Sequence[Permutation], degree: int) -> tuple[Permutation, ...]:
    gens: list[Permutation] = []
    span = {Permutation.identity(degree)}
    target = len(elements)
    for g in elements:
        if len(span) == target:
            break
        if g not in span:
            gens.append(g)
            span = _close(span, gens, None)
    return tuple(gens)


def automorphism_group(config: Configuration, *, budget: int | None = DEFAULT_NODE_BUDGET,
                       max_order: int = DEFAULT_MAX_ORDER) -> PermutationGroup:
    """All point permutations of ``config`` that carry lines onto lines.

    Raises :class:`BudgetExceeded` when the search passes ``budget`` nodes or
    the group has more than ``max_order`` elements.
    """
    elements = []
    for images in iter_isomorphisms(config, config, budget=budget):
        elements.append(Permutation._trusted(images))
        if len(elements) > max_order:
            raise BudgetExceeded("automorphism group size", max_order)
    elements.sort()
    gens = _small_generating_set(elements, config.point_count)
    return PermutationGroup(config.point_count, gens, frozenset(elements))


@dataclass(frozen=True)
class OrbitPartition:
    domain: str  # "points" or "lines"
    blocks: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def transitive(self) -> bool:
        return len(self.blocks) == 1

    def block_of(self, x: int) -> int:
        """0-based index of the block holding ``x``."""
        for k, block in enumerate(self.blocks):
            if x in block:
                return k
        raise KeyError(x)


def _orbits_of(perms: Iterable[Permutation], size: int) -> tuple[tuple[int, ...], ...]:
    perms = list(perms)
    seen: set[int] = set()
    blocks = []
    for x in range(1, size + 1):
        if x in seen:
            continue
        block = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in perms:
                z = g(y)
                if z not in block:
                    block.add(z)
                    queue.append(z)
        seen |= block
        blocks.append(tuple(sorted(block)))
    return tuple(blocks)


def orbits(group: PermutationGroup, config: Configuration | IncidenceStructure,
           domain: str = "points") -> OrbitPartition:
    """Orbits of ``group`` on the points or on the lines of ``config``."""
    structure = config.structure if isinstance(config, Configuration) else config
    gens = group.generators or (group.identity,)
    if domain == "points":
        return OrbitPartition("points", _orbits_of(gens, structure.point_count))
    if domain == "lines":
        line_gens = [line_permutation(g, structure) for g in gens]
        return OrbitPartition("lines", _orbits_of(line_gens, structure.line_count))
    raise ValueError(f"unknown domain {domain!r}")


@dataclass
class SubgroupLattice:
    """Result of :func:`subgroups`; ``complete`` is False if a budget cut it short."""

    groups: list[PermutationGroup]
    complete: bool = True

    def __iter__(self):
        return iter(self.groups)

    def __len__(self):
        return len(self.groups)

    def __getitem__(self, k):
        return self.groups[k]

    def orders(self) -> list[int]:
        return [g.order for g in self.groups]

    def of_order(self, order: int) -> list[PermutationGroup]:
        return [g for g in self.groups if g.order == order]


def subgroups(group: PermutationGroup, max_order: int | None = None, *,
              max_subgroups: int | None = None) -> SubgroupLattice:
    """Every subgroup of ``group`` of order at most ``max_order``.

    Starts from the cyclic subgroups and repeatedly joins a known subgroup
    with one more cyclic generator, deduplicating on element sets.  Any
    subgroup is reached this way through a chain of smaller subgroups, so the
    enumeration is complete whenever it finishes within ``max_subgroups``.
    """
    cap = group.order if max_order is None else min(max_order, group.order)
    found: dict[frozenset[Permutation], PermutationGroup] = {}
    complete = True

    def add(elements: frozenset, gens: tuple) -> bool:
        nonlocal complete
        if elements in found:
            return False
        if max_subgroups is not None and len(found) >= max_subgroups:
            complete = False
            return False
        found[elements] = PermutationGroup(group.degree, gens, elements)
        return True

    cyclic_gens: list[Permutation] = []
    cyclic_seen: set[frozenset] = set()
    for g in group.sorted_elements:
        if g.order() > cap:
            continue
        elems = frozenset(_close([group.identity], [g], None))
        if elems not in cyclic_seen:
            cyclic_seen.add(elems)
            cyclic_gens.append(g)
            add(elems, () if g.is_identity() else (g,))

    queue = deque(found.values())
    while queue:
        h = queue.popleft()
        for g in cyclic_gens:
            if g in h.elements:
                continue
            gens = h.generators + (g,)
            elems = _close(h.elements, gens, cap)
            if elems is None:
                continue
            elems = frozenset(elems)
            if elems not in found and add(elems, gens):
                queue.append(found[elems])
        if not complete:
            break
    groups = sorted(found.values(), key=lambda h: (h.order, h.sorted_elements))
    return SubgroupLattice(groups, complete)


@dataclass(frozen=True)
class SemiregularityResult:
    semiregular: bool
    element: Permutation | None = None
    fixed_kind: str | None = None  # "point" or "line"
    fixed_index: int | None = None

    def __bool__(self):
        return self.semiregular


def is_semiregular(group: PermutationGroup, config: Configuration | IncidenceStructure) -> SemiregularityResult:
    """True iff no non-identity element fixes a point or a line."""
    structure = config.structure if isinstance(config, Configuration) else config
    for g in group.sorted_elements:
        if g.is_identity():
            continue
        fixed = g.fixed_points()
        if fixed:
            return SemiregularityResult(False, g, "point", fixed[0])
        fixed_lines = line_permutation(g, structure).fixed_points()
        if fixed_lines:
            return SemiregularityResult(False, g, "line", fixed_lines[0])
    return SemiregularityResult(True)


@dataclass
class CycleStructureReport:
    checked: int
    violations: list[tuple[Permutation, str, tuple[int, ...]]]

    @property
    def ok(self) -> bool:
        return not self.violations


def cycle_structure_check(group: PermutationGroup, config: Configuration | IncidenceStructure) -> CycleStructureReport:
    """Check that each non-identity element of order k is a product of k-cycles
    covering all points, and likewise on lines.

    A violation means the group cannot act semiregularly.
    """
    structure = config.structure if isinstance(config, Configuration) else config
    violations = []
    checked = 0
    for g in group.sorted_elements:
        if g.is_identity():
            continue
        checked += 1
        k = g.order()
        for kind, perm in (("points", g), ("lines", line_permutation(g, structure))):
            lengths = perm.cycle_type()
            if any(length != k for length in lengths):
                violations.append((g, kind, lengths))
    return CycleStructureReport(checked, violations)


def orbit_divisibility_filter(orbit_sizes: OrbitPartition | Iterable[int | OrbitPartition],
                              candidate_order: int) -> bool:
    """False when some orbit size shares no factor > 1 with ``candidate_order``.

    In that case a group of that order must fix something on the orbit, so no
    semiregular quotient of that order exists.
    """
    if candidate_order < 2:
        raise ValueError("candidate order must be at least 2")
    items = [orbit_sizes] if isinstance(orbit_sizes, OrbitPartition) else list(orbit_sizes)
    sizes: list[int] = []
    for item in items:
        sizes.extend(item.sizes if isinstance(item, OrbitPartition) else [int(item)])
    return all(gcd(k, candidate_order) > 1 for k in sizes)
