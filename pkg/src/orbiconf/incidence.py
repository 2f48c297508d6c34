"""Incidence structures and (n_s, m_t) configurations.

Points are numbered 1..n and a line is a set of point numbers.  A
:class:`Configuration` is an :class:`IncidenceStructure` that passed
:func:`validate`: any two points share at most one line, the structure is
connected, every point lies on ``s`` lines and every line carries ``t >= 2``
points.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import BudgetExceeded, ConfigurationError

IDENTITY_NOTE = "incidence count checked as n*s == m*t"
BOUNDS_NOTE = "bounds checked as n >= s(t-1)+1 and m >= t(s-1)+1"


@dataclass(frozen=True)
class IncidenceStructure:
    """Points ``1..point_count`` together with an ordered tuple of lines."""

    point_count: int
    lines: tuple[frozenset[int], ...]

    def __post_init__(self):
        lines = tuple(frozenset(int(p) for p in line) for line in self.lines)
        object.__setattr__(self, "lines", lines)
        if self.point_count < 1:
            raise ValueError("an incidence structure needs at least one point")
        seen: dict[frozenset[int], int] = {}
        for j, line in enumerate(lines, start=1):
            if not line:
                raise ValueError(f"line {j} is empty")
            bad = [p for p in line if not 1 <= p <= self.point_count]
            if bad:
                raise ValueError(f"line {j} uses point {min(bad)} outside 1..{self.point_count}")
            if line in seen:
                raise ValueError(f"lines {seen[line]} and {j} are equal as point sets")
            seen[line] = j

    @classmethod
    def from_lines(cls, lines: Iterable[Iterable[int]], point_count: int | None = None):
        lines = [frozenset(line) for line in lines]
        if point_count is None:
            point_count = max((max(line) for line in lines if line), default=0)
        return cls(point_count, tuple(lines))

    @property
    def line_count(self) -> int:
        return len(self.lines)

    @property
    def points(self) -> range:
        return range(1, self.point_count + 1)

    @cached_property
    def line_index(self) -> dict[frozenset[int], int]:
        """Map from a line (as a point set) to its 1-based index."""
        return {line: j for j, line in enumerate(self.lines, start=1)}

    @cached_property
    def lines_through(self) -> tuple[tuple[int, ...], ...]:
        """``lines_through[p]`` lists the indices of lines on point ``p`` (slot 0 unused)."""
        through: list[list[int]] = [[] for _ in range(self.point_count + 1)]
        for j, line in enumerate(self.lines, start=1):
            for p in line:
                through[p].append(j)
        return tuple(tuple(x) for x in through)

    @cached_property
    def joining_line(self) -> dict[tuple[int, int], int]:
        """Ordered point pair -> index of a line containing both (last one wins)."""
        join: dict[tuple[int, int], int] = {}
        for j, line in enumerate(self.lines, start=1):
            for p, q in combinations(sorted(line), 2):
                join[p, q] = j
                join[q, p] = j
        return join

    def canonical(self) -> IncidenceStructure:
        """The same structure with lines listed in lexicographic order."""
        return IncidenceStructure(self.point_count, tuple(sorted(self.lines, key=sorted)))

    def image(self, point_images: Sequence[int]) -> IncidenceStructure:
        """Relabel points: point ``p`` becomes ``point_images[p-1]``."""
        return IncidenceStructure(
            self.point_count,
            tuple(frozenset(point_images[p - 1] for p in line) for line in self.lines),
        )


@dataclass(frozen=True)
class ConfigurationParams:
    n: int
    m: int
    s: int
    t: int

    def __post_init__(self):
        if self.n * self.s != self.m * self.t:
            raise ValueError(f"n*s != m*t for {self}")
        if self.n < self.s * (self.t - 1) + 1 or self.m < self.t * (self.s - 1) + 1:
            raise ValueError(f"parameter bounds violated for {self}")

    def __iter__(self):
        return iter((self.n, self.m, self.s, self.t))

    def __str__(self):
        return f"({self.n}_{self.s}, {self.m}_{self.t})"


@dataclass
class ValidationReport:
    """Outcome of :func:`validate`; each axiom is judged independently."""

    structure: IncidenceStructure
    pair_witness: tuple[int, int, int, int] | None  # (p, q, line, other line)
    components: list[list[int]]
    point_degrees: tuple[int, ...]
    line_sizes: tuple[int, ...]
    notes: list[str] = field(default_factory=list)

    @property
    def pair_axiom(self) -> bool:
        return self.pair_witness is None

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def s_constant(self) -> bool:
        return len(set(self.point_degrees)) == 1

    @property
    def t_constant(self) -> bool:
        return len(set(self.line_sizes)) == 1

    @property
    def t_at_least_two(self) -> bool:
        return bool(self.line_sizes) and min(self.line_sizes) >= 2

    @property
    def ok(self) -> bool:
        return (self.pair_axiom and self.connected and self.s_constant
                and self.t_constant and self.t_at_least_two)

    @property
    def params(self) -> ConfigurationParams | None:
        if not self.ok:
            return None
        return ConfigurationParams(self.structure.point_count, self.structure.line_count,
                                   self.point_degrees[0], self.line_sizes[0])

    @property
    def configuration(self) -> Configuration | None:
        return Configuration(self.structure) if self.ok else None

    def violations(self) -> list[str]:
        out = []
        if not self.pair_axiom:
            p, q, j1, j2 = self.pair_witness
            out.append(f"pair axiom: points {p},{q} lie on lines {j1} and {j2}")
        if not self.connected:
            sizes = ", ".join(str(len(c)) for c in self.components)
            out.append(f"not connected: {len(self.components)} components of sizes {sizes}")
        if not self.s_constant:
            d = self.point_degrees
            lo, hi = d.index(min(d)) + 1, d.index(max(d)) + 1
            out.append(f"s not constant: point {lo} on {min(d)} lines, point {hi} on {max(d)}")
        if not self.t_constant:
            z = self.line_sizes
            lo, hi = z.index(min(z)) + 1, z.index(max(z)) + 1
            out.append(f"t not constant: line {lo} has {min(z)} points, line {hi} has {max(z)}")
        if self.line_sizes and min(self.line_sizes) < 2:
            out.append(f"t < 2: line {self.line_sizes.index(min(self.line_sizes)) + 1} has one point")
        return out


def _components(structure: IncidenceStructure) -> list[list[int]]:
    parent = list(range(structure.point_count + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for line in structure.lines:
        first, *rest = sorted(line)
        for p in rest:
            parent[find(p)] = find(first)
    groups: dict[int, list[int]] = {}
    for p in structure.points:
        groups.setdefault(find(p), []).append(p)
    return sorted(groups.values())


def validate(structure: IncidenceStructure) -> ValidationReport:
    """Check the configuration axioms and report every violation with a witness."""
    witness = None
    owner: dict[tuple[int, int], int] = {}
    for j, line in enumerate(structure.lines, start=1):
        for pair in combinations(sorted(line), 2):
            if pair in owner:
                if witness is None or (pair, owner[pair]) < (witness[:2], witness[2]):
                    witness = (*pair, owner[pair], j)
            else:
                owner[pair] = j
    report = ValidationReport(
        structure=structure,
        pair_witness=witness,
        components=_components(structure),
        point_degrees=tuple(len(x) for x in structure.lines_through[1:]),
        line_sizes=tuple(len(line) for line in structure.lines),
    )
    if report.ok:
        report.notes += [IDENTITY_NOTE, BOUNDS_NOTE]
    return report


@dataclass(frozen=True)
class Configuration:
    """A validated configuration.  Construction raises :class:`ConfigurationError`."""

    structure: IncidenceStructure
    params: ConfigurationParams = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        report = validate(self.structure)
        if not report.ok:
            raise ConfigurationError("; ".join(report.violations()), report)
        object.__setattr__(self, "params", report.params)

    @classmethod
    def from_lines(cls, lines: Iterable[Iterable[int]], point_count: int | None = None):
        return cls(IncidenceStructure.from_lines(lines, point_count))

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def s(self) -> int:
        return self.params.s

    @property
    def t(self) -> int:
        return self.params.t

    @property
    def lines(self) -> tuple[frozenset[int], ...]:
        return self.structure.lines

    @property
    def point_count(self) -> int:
        return self.structure.point_count

    def __str__(self):
        return f"{self.params} configuration"


def params(config: Configuration) -> ConfigurationParams:
    p = config.params
    assert p.n * p.s == p.m * p.t
    assert p.n >= p.s * (p.t - 1) + 1 and p.m >= p.t * (p.s - 1) + 1
    return p


def from_mod_notation(base_line: Iterable[int], modulus: int) -> IncidenceStructure:
    """Translate ``base_line`` through every residue mod ``modulus``.

    Residues are represented by 1..modulus.  Translates that coincide as sets
    are kept once; :func:`mod_notation_line_count` gives the raw count.
    """
    residues = [int(r) for r in base_line]
    base = sorted(set(residues))
    if not base:
        raise ValueError("base line is empty")
    if modulus < 3:
        raise ValueError("modulus must be at least 3")
    if len(base) != len(residues):
        raise ValueError("base line residues must be distinct")
    if base[0] < 1 or base[-1] > modulus:
        raise ValueError(f"residues must lie in 1..{modulus}")
    lines: list[frozenset[int]] = []
    seen = set()
    for k in range(modulus):
        line = frozenset((r - 1 + k) % modulus + 1 for r in base)
        if line not in seen:
            seen.add(line)
            lines.append(line)
    return IncidenceStructure(modulus, tuple(lines))


def mod_notation_line_count(base_line: Iterable[int], modulus: int) -> tuple[int, int]:
    """(raw translates, distinct lines) for a mod-notation family."""
    return modulus, from_mod_notation(base_line, modulus).line_count


def dual(config: Configuration) -> Configuration:
    """Swap points and lines: dual point ``j`` is line ``j``, dual line ``i`` is point ``i``."""
    through = config.structure.lines_through
    return Configuration(IncidenceStructure(
        config.m, tuple(frozenset(through[p]) for p in config.structure.points)))


@dataclass(frozen=True)
class LeviGraph:
    """Bipartite incidence graph, possibly annotated.

    Point node ``i`` carries ``point_weights[i-1]``; line ``j`` is drawn as
    ``line_copies[j-1]`` identical nodes, each carrying ``line_weights[j-1]``.
    ``edges`` holds ``(point, line, multiplicity)`` with 1-based indices and is
    repeated once per copy of the line.
    """

    point_weights: tuple[int, ...]
    line_weights: tuple[int, ...]
    line_copies: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]

    @property
    def point_node_count(self) -> int:
        return len(self.point_weights)

    @property
    def line_node_count(self) -> int:
        return sum(self.line_copies)

    @property
    def edge_count(self) -> int:
        return sum(mult * self.line_copies[j - 1] for _, j, mult in self.edges)

    def line_nodes(self) -> list[tuple[int, int]]:
        """Expanded line nodes as ``(line index, copy number)``."""
        return [(j, k) for j, d in enumerate(self.line_copies, start=1) for k in range(1, d + 1)]

    def degree_of_point(self, i: int) -> int:
        return sum(mult * self.line_copies[j - 1] for p, j, mult in self.edges if p == i)

    def degree_of_line(self, j: int) -> int:
        return sum(mult for _, l, mult in self.edges if l == j)

    def is_plain(self) -> bool:
        return (set(self.point_weights) <= {1} and set(self.line_weights) <= {1}
                and set(self.line_copies) <= {1} and all(e[2] == 1 for e in self.edges))

    def is_connected(self) -> bool:
        n = len(self.point_weights)
        if n == 0:
            return False
        adj: dict[tuple[str, int], set[tuple[str, int]]] = {}
        for p, j, _ in self.edges:
            adj.setdefault(("p", p), set()).add(("l", j))
            adj.setdefault(("l", j), set()).add(("p", p))
        nodes = {("p", i) for i in range(1, n + 1)} | {("l", j) for j in range(1, len(self.line_copies) + 1)}
        start = ("p", 1)
        seen = {start}
        queue = deque([start])
        while queue:
            for v in adj.get(queue.popleft(), ()):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen == nodes


def levi(structure: IncidenceStructure | Configuration) -> LeviGraph:
    if isinstance(structure, Configuration):
        structure = structure.structure
    edges = tuple((p, j, 1) for j, line in enumerate(structure.lines, start=1) for p in sorted(line))
    m = structure.line_count
    return LeviGraph((1,) * structure.point_count, (1,) * m, (1,) * m, edges)


def menger_edges(structure: IncidenceStructure | Configuration) -> Counter:
    """Collinearity graph edges ``(p, q)`` with ``p < q`` and their multiplicities.

    This graph is for display.  Different structures can share it, e.g. a
    single three-point line and a triangle of three two-point lines.
    """
    if isinstance(structure, Configuration):
        structure = structure.structure
    edges: Counter = Counter()
    for line in structure.lines:
        edges.update(combinations(sorted(line), 2))
    return edges


def _search_order(structure: IncidenceStructure) -> list[int]:
    # Breadth-first over collinearity so every new point meets an assigned one.
    order: list[int] = []
    seen = set()
    for root in structure.points:
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            p = queue.popleft()
            order.append(p)
            nbrs = sorted({q for j in structure.lines_through[p] for q in structure.lines[j - 1]})
            for q in nbrs:
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
    return order


def iter_isomorphisms(
    a: Configuration,
    b: Configuration,
    *,
    candidates: Mapping[int, Sequence[int]] | Sequence[Sequence[int]] | None = None,
    budget: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield point bijections ``a -> b`` carrying lines onto lines.

    Each result is a tuple whose entry ``p-1`` is the image of point ``p``.
    ``candidates`` optionally restricts the allowed images of each point
    (indexable by the 1-based point).  ``budget`` caps the number of search
    nodes and raises :class:`BudgetExceeded` when hit.

    The search assigns points in breadth-first collinearity order and keeps
    the partial line map consistent: collinear pairs must go to collinear
    pairs through a single, not yet used, image line, and non-collinear pairs
    to non-collinear pairs.
    """
    if tuple(a.params) != tuple(b.params):
        return
    sa, sb = a.structure, b.structure
    n = sa.point_count
    order = _search_order(sa)
    join_a, join_b = sa.joining_line, sb.joining_line
    if candidates is None:
        cand = [None] + [range(1, n + 1)] * n
    elif isinstance(candidates, Mapping):
        cand = [None] + [sorted(candidates.get(p, ())) for p in range(1, n + 1)]
    else:
        cand = [None] + [sorted(candidates[p - 1]) for p in range(1, n + 1)]
    img = [0] * (n + 1)
    used = [False] * (n + 1)
    line_map: dict[int, int] = {}
    lines_used: set[int] = set()
    nodes = 0

    def extend(depth: int) -> Iterator[tuple[int, ...]]:
        nonlocal nodes
        if depth == n:
            yield tuple(img[1:])
            return
        p = order[depth]
        for q in cand[p]:
            if used[q]:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded("isomorphism search", budget, nodes)
            added = []
            ok = True
            for r in order[:depth]:
                la = join_a.get((p, r))
                lb = join_b.get((q, img[r]))
                if la is None or lb is None:
                    if la is not lb:
                        ok = False
                        break
                    continue
                cur = line_map.get(la)
                if cur is None:
                    if lb in lines_used:
                        ok = False
                        break
                    line_map[la] = lb
                    lines_used.add(lb)
                    added.append(la)
                elif cur != lb:
                    ok = False
                    break
            if ok:
                used[q] = True
                img[p] = q
                yield from extend(depth + 1)
                used[q] = False
                img[p] = 0
            for la in added:
                lines_used.discard(line_map.pop(la))

    yield from extend(0)


def find_isomorphism(c1: Configuration, c2: Configuration, *, budget: int | None = None):
    """Some point bijection carrying the lines of ``c1`` onto those of ``c2``, or ``None``."""
    return next(iter_isomorphisms(c1, c2, budget=budget), None)


def is_isomorphism(c1: Configuration, c2: Configuration, point_images: Sequence[int]) -> bool:
    if c1.n != c2.n or c1.m != c2.m or sorted(point_images) != list(c2.structure.points):
        return False
    return set(c1.structure.image(point_images).lines) == set(c2.lines)
