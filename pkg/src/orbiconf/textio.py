"""Line-oriented text formats and a named workspace.

Four formats are understood, each identified by its first directive::

    configuration fano          orbiconfiguration half
    points 7                    point 1 a=2
    mod 7 : 1 2 4               point 2 a=1
    line 1 2 4                  line b=1 d=1 : 1 2
                                line b=2 d=1 : 2*2

    group rot                   cover mod14
    degree 4                    base fano
    order 2                     map 1 -> 1
    generator (1 3)(2 4)        map 8 -> 1

``#`` starts a comment.  Serialization is canonical: points ascending and
lines in lexicographic order, so that ``parse(serialize(x))`` reproduces
``x`` and re-serializing is byte-identical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .covering import CoveringMap, verify_covering
from .errors import ConfigurationError, OrbiStructureError, ParseError
from .groups import Permutation, PermutationGroup
from .incidence import Configuration, IncidenceStructure, validate
from .orbi import OrbiIncidenceStructure, OrbiLine

FORMATS = ("configuration", "orbiconfiguration", "group", "cover")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            head, _, rest = body.partition(" ")
            yield lineno, head, rest.strip()


def _ints(text: str, lineno: int, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split()]
    except ValueError:
        raise ParseError(f"{what}: expected integers, got {text!r}", lineno) from None


def _header(text: str, kind: str) -> tuple[str, list]:
    items = list(_lines(text))
    if not items:
        raise ParseError(f"empty {kind} file")
    lineno, head, rest = items[0]
    if head != kind:
        raise ParseError(f"expected '{kind} <name>', found {head!r}", lineno)
    if not rest or len(rest.split()) != 1:
        raise ParseError(f"'{kind}' takes exactly one name", lineno)
    return rest, items[1:]


def detect_format(text: str) -> str:
    for lineno, head, _ in _lines(text):
        if head in FORMATS:
            return head
        raise ParseError(f"unknown file type {head!r}; expected one of {', '.join(FORMATS)}", lineno)
    raise ParseError("empty file")


# configurations

@dataclass
class ParsedConfiguration:
    name: str
    structure: IncidenceStructure

    def configuration(self) -> Configuration:
        report = validate(self.structure)
        if not report.ok:
            raise ConfigurationError(f"{self.name}: " + "; ".join(report.violations()), report)
        return report.configuration


def parse_configuration(text: str) -> ParsedConfiguration:
    """Parse the configuration format into a (not yet validated) structure."""
    name, items = _header(text, "configuration")
    points = None
    lines: list[tuple[frozenset[int], int]] = []
    for lineno, head, rest in items:
        if head == "points":
            vals = _ints(rest, lineno, "points")
            if len(vals) != 1 or vals[0] < 1:
                raise ParseError("'points' takes one positive integer", lineno)
            if points is not None:
                raise ParseError("'points' given twice", lineno)
            points = vals[0]
        elif head == "line":
            pts = _ints(rest, lineno, "line")
            if not pts:
                raise ParseError("empty line", lineno)
            if len(set(pts)) != len(pts):
                raise ParseError(f"repeated point in line {pts}", lineno)
            lines.append((frozenset(pts), lineno))
        elif head == "mod":
            left, sep, right = rest.partition(":")
            if not sep:
                raise ParseError("expected 'mod <modulus> : <r1> <r2> ...'", lineno)
            mod = _ints(left, lineno, "mod")
            base = _ints(right, lineno, "mod")
            if len(mod) != 1 or mod[0] < 3:
                raise ParseError("modulus must be one integer >= 3", lineno)
            if not base or len(set(base)) != len(base) or not all(1 <= r <= mod[0] for r in base):
                raise ParseError(f"base residues must be distinct and in 1..{mod[0]}", lineno)
            if points is None:
                points = mod[0]
            elif points != mod[0]:
                raise ParseError(f"modulus {mod[0]} differs from 'points {points}'", lineno)
            expanded = dict.fromkeys(frozenset((r - 1 + k) % mod[0] + 1 for r in base)
                                     for k in range(mod[0]))
            lines += [(line, lineno) for line in expanded]
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if points is None:
        raise ParseError("missing 'points' (or a 'mod' line)")
    first: dict[frozenset[int], int] = {}
    for line, lineno in lines:
        if line in first:
            raise ParseError(f"duplicate line {sorted(line)}: lines {first[line]} and {lineno}", lineno)
        first[line] = lineno
        bad = [p for p in line if not 1 <= p <= points]
        if bad:
            raise ParseError(f"point {bad[0]} outside 1..{points}", lineno)
    return ParsedConfiguration(name, IncidenceStructure(points, tuple(l for l, _ in lines)))


def serialize_configuration(config: Configuration | IncidenceStructure, name: str) -> str:
    structure = config.structure if isinstance(config, Configuration) else config
    out = [f"configuration {name}", f"points {structure.point_count}"]
    out += ["line " + " ".join(map(str, line)) for line in sorted(sorted(l) for l in structure.lines)]
    return "\n".join(out) + "\n"


# orbiconfigurations

_POINT = re.compile(r"^(\S+)\s+a=(\d+)$")
_LINE = re.compile(r"^((?:[bd]=\d+\s*)*):(.*)$")


@dataclass
class ParsedOrbi:
    name: str
    structure: OrbiIncidenceStructure
    point_ids: tuple[str, ...]


def parse_orbiconfiguration(text: str) -> ParsedOrbi:
    name, items = _header(text, "orbiconfiguration")
    ids: dict[str, int] = {}
    weights: list[int] = []
    lines: list[OrbiLine] = []
    seen: dict[OrbiLine, int] = {}
    for lineno, head, rest in items:
        if head == "point":
            m = _POINT.match(rest)
            if not m:
                raise ParseError("expected 'point <id> a=<int>'", lineno)
            pid, a = m.group(1), int(m.group(2))
            if pid in ids:
                raise ParseError(f"point {pid!r} declared twice", lineno)
            if a < 1:
                raise ParseError("a must be positive", lineno)
            ids[pid] = len(ids) + 1
            weights.append(a)
        elif head == "line":
            m = _LINE.match(rest)
            if not m:
                raise ParseError("expected 'line b=<int> d=<int> : <pid>*<c> ...'", lineno)
            params = dict(kv.split("=") for kv in m.group(1).split())
            inc: dict[int, int] = {}
            for tok in m.group(2).split():
                pid, star, c = tok.partition("*")
                if pid not in ids:
                    raise ParseError(f"unknown point {pid!r}", lineno)
                if star and not c.isdigit():
                    raise ParseError(f"bad multiplicity in {tok!r}", lineno)
                if ids[pid] in inc:
                    raise ParseError(f"point {pid!r} listed twice on one line", lineno)
                inc[ids[pid]] = int(c) if star else 1
            try:
                line = OrbiLine.of(inc, int(params.get("b", 1)), int(params.get("d", 1)))
            except OrbiStructureError as exc:
                raise ParseError(str(exc), lineno) from None
            if line in seen:
                raise ParseError(f"duplicate line record: lines {seen[line]} and {lineno}", lineno)
            seen[line] = lineno
            lines.append(line)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    try:
        structure = OrbiIncidenceStructure(tuple(weights), tuple(lines))
    except OrbiStructureError as exc:
        raise ParseError(str(exc)) from None
    return ParsedOrbi(name, structure, tuple(ids))


def serialize_orbiconfiguration(structure: OrbiIncidenceStructure, name: str) -> str:
    out = [f"orbiconfiguration {name}"]
    out += [f"point {i} a={a}" for i, a in enumerate(structure.weights, start=1)]
    for line in sorted(structure.lines):
        inc = " ".join(f"{p}*{c}" if c != 1 else str(p) for p, c in line.incidences)
        out.append(f"line b={line.b} d={line.d} : {inc}")
    return "\n".join(out) + "\n"


# groups

@dataclass
class ParsedGroup:
    name: str
    group: PermutationGroup


def parse_group(text: str) -> ParsedGroup:
    name, items = _header(text, "group")
    degree = order = None
    gens: list[tuple[str, int]] = []
    for lineno, head, rest in items:
        if head == "degree":
            vals = _ints(rest, lineno, "degree")
            if len(vals) != 1 or vals[0] < 1:
                raise ParseError("'degree' takes one positive integer", lineno)
            degree = vals[0]
        elif head == "order":
            vals = _ints(rest, lineno, "order")
            if len(vals) != 1:
                raise ParseError("'order' takes one integer", lineno)
            order = (vals[0], lineno)
        elif head == "generator":
            gens.append((rest, lineno))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if degree is None:
        raise ParseError("missing 'degree'")
    perms = []
    for text_, lineno in gens:
        try:
            perms.append(Permutation.from_cycles(text_, degree))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    group = PermutationGroup.generate(perms, degree)
    if order is not None and order[0] != group.order:
        raise ParseError(f"declared order {order[0]} but the generators give {group.order}", order[1])
    return ParsedGroup(name, group)


def serialize_group(group: PermutationGroup, name: str) -> str:
    out = [f"group {name}", f"degree {group.degree}", f"order {group.order}"]
    out += [f"generator {g}" for g in group.generators]
    return "\n".join(out) + "\n"


# covering maps

@dataclass
class ParsedCover:
    cover: str
    base: str
    mapping: dict[int, int]


def parse_covering(text: str) -> ParsedCover:
    cover, items = _header(text, "cover")
    base = None
    mapping: dict[int, int] = {}
    for lineno, head, rest in items:
        if head == "base":
            if len(rest.split()) != 1:
                raise ParseError("'base' takes exactly one name", lineno)
            base = rest
        elif head == "map":
            m = re.match(r"^(\d+)\s*->\s*(\d+)$", rest)
            if not m:
                raise ParseError("expected 'map <cover_pt> -> <base_pt>'", lineno)
            x, y = int(m.group(1)), int(m.group(2))
            if x in mapping:
                raise ParseError(f"point {x} mapped twice", lineno)
            mapping[x] = y
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if base is None:
        raise ParseError("missing 'base'")
    return ParsedCover(cover, base, mapping)


def serialize_covering(cm: CoveringMap, cover_name: str, base_name: str) -> str:
    out = [f"cover {cover_name}", f"base {base_name}"]
    out += [f"map {p} -> {x}" for p, x in enumerate(cm.point_map, start=1)]
    return "\n".join(out) + "\n"


# verdict blocks

def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt(v) for v in value)
    return str(value).replace("\n", " ")


def key_value_block(data: dict) -> str:
    """``key=value`` lines in insertion order."""
    return "".join(f"{k}={_fmt(v)}\n" for k, v in data.items())


def parse_key_value_block(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        if line.strip():
            k, sep, v = line.partition("=")
            if not sep:
                raise ParseError(f"expected key=value, got {line!r}")
            out[k] = v
    return out


# workspace

@dataclass
class Workspace:
    """Named, validated objects loaded from files or added directly."""

    configurations: dict[str, Configuration] = field(default_factory=dict)
    orbiconfigurations: dict[str, OrbiIncidenceStructure] = field(default_factory=dict)
    groups: dict[str, PermutationGroup] = field(default_factory=dict)
    coverings: dict[str, CoveringMap] = field(default_factory=dict)

    def names(self) -> set[str]:
        return (set(self.configurations) | set(self.orbiconfigurations)
                | set(self.groups) | set(self.coverings))

    def _claim(self, name: str):
        if name in self.names():
            raise ValueError(f"name {name!r} already used in the workspace")

    def add(self, name: str, obj) -> None:
        self._claim(name)
        if isinstance(obj, Configuration):
            self.configurations[name] = obj
        elif isinstance(obj, OrbiIncidenceStructure):
            self.orbiconfigurations[name] = obj
        elif isinstance(obj, PermutationGroup):
            self.groups[name] = obj
        elif isinstance(obj, CoveringMap):
            self.coverings[name] = obj
        else:
            raise TypeError(f"cannot store {type(obj).__name__}")

    def get(self, name: str):
        for table in (self.configurations, self.orbiconfigurations, self.groups, self.coverings):
            if name in table:
                return table[name]
        raise KeyError(name)

    def load_text(self, text: str) -> str:
        """Parse, validate and store; returns the stored name."""
        kind = detect_format(text)
        if kind == "configuration":
            parsed = parse_configuration(text)
            self.add(parsed.name, parsed.configuration())
            return parsed.name
        if kind == "orbiconfiguration":
            parsed = parse_orbiconfiguration(text)
            self.add(parsed.name, parsed.structure)
            return parsed.name
        if kind == "group":
            parsed = parse_group(text)
            self.add(parsed.name, parsed.group)
            return parsed.name
        parsed = parse_covering(text)
        cm = verify_covering(self.configurations[parsed.cover], self.configurations[parsed.base],
                             parsed.mapping)
        name = f"{parsed.cover}->{parsed.base}"
        self.add(name, cm)
        return name

    def load(self, path: str | Path) -> str:
        return self.load_text(Path(path).read_text(encoding="utf-8"))


def read_configuration(path: str | Path) -> tuple[str, Configuration]:
    parsed = parse_configuration(Path(path).read_text(encoding="utf-8"))
    return parsed.name, parsed.configuration()


def read_orbiconfiguration(path: str | Path) -> tuple[str, OrbiIncidenceStructure]:
    parsed = parse_orbiconfiguration(Path(path).read_text(encoding="utf-8"))
    return parsed.name, parsed.structure


def read_group(path: str | Path) -> tuple[str, PermutationGroup]:
    parsed = parse_group(Path(path).read_text(encoding="utf-8"))
    return parsed.name, parsed.group
