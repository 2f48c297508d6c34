"""Small named structures used in examples and tests."""

from __future__ import annotations

from .covering import polygon
from .incidence import Configuration, from_mod_notation
from .orbi import OrbiIncidenceStructure, OrbiLine

__all__ = ["fano", "mod14", "mod21", "polygon", "triangle", "square", "hexagon",
           "k33", "pappus", "desargues", "half_triangle", "bigon", "loop", "bundled_configurations"]


def fano() -> Configuration:
    """The Fano plane, ``{1, 2, 4} mod 7``."""
    return Configuration(from_mod_notation((1, 2, 4), 7))


def mod14() -> Configuration:
    """``{1, 2, 4} mod 14``, a (14_3) configuration covering the Fano plane twice."""
    return Configuration(from_mod_notation((1, 2, 4), 14))


def mod21() -> Configuration:
    """``{1, 2, 4} mod 21``, a (21_3) configuration covering the Fano plane three times."""
    return Configuration(from_mod_notation((1, 2, 4), 21))


def triangle() -> Configuration:
    return polygon(3)


def square() -> Configuration:
    return polygon(4)


def hexagon() -> Configuration:
    return polygon(6)


def k33() -> Configuration:
    """Six points, nine lines of two points: the edges of K_{3,3}, a (6_3, 9_2) configuration."""
    return Configuration.from_lines([(i, j) for i in (1, 2, 3) for j in (4, 5, 6)], 6)


def pappus() -> Configuration:
    return Configuration.from_lines([
        (1, 2, 3), (4, 5, 6), (7, 8, 9), (1, 5, 9), (2, 6, 7),
        (3, 4, 8), (1, 6, 8), (2, 4, 9), (3, 5, 7)], 9)


def desargues() -> Configuration:
    return Configuration.from_lines([
        (1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6), (1, 7, 8),
        (2, 7, 9), (3, 8, 9), (4, 7, 10), (5, 8, 10), (6, 9, 10)], 10)


def half_triangle() -> OrbiIncidenceStructure:
    """The triangle folded by a reflection: a point of weight 2 on one plain line,
    and a point of weight 1 on that line and on a half-weight loop line."""
    return OrbiIncidenceStructure((2, 1), (OrbiLine.of({1: 1, 2: 1}), OrbiLine.of({2: 2}, b=2)))


def bigon() -> OrbiIncidenceStructure:
    """Two points joined by a line of multiplicity 2 (the square modulo its half-turn)."""
    return OrbiIncidenceStructure((1, 1), (OrbiLine.of({1: 1, 2: 1}, d=2),))


def loop() -> OrbiIncidenceStructure:
    """One point on one line with incidence multiplicity 2 (the triangle modulo its rotations)."""
    return OrbiIncidenceStructure((1,), (OrbiLine.of({1: 2}),))


def bundled_configurations() -> dict[str, Configuration]:
    """Polygons with 3 to 12 points, the Fano plane and its mod-14 and mod-21 covers."""
    out = {f"{k}-gon": polygon(k) for k in range(3, 13)}
    out.update({"fano": fano(), "mod14": mod14(), "mod21": mod21()})
    return out
